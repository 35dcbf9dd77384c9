"""Pure-Python piece-scan and sphere-enumeration kernel.

This is the fallback used when the compiled extension is unavailable; both
backends compute exactly the same functions and are cross-checked in the
test suite.  Letters are byte values 0..2r-1 with i+r the inverse of i.

A piece of a word w is a non-trivial subword occurring in at least two
distinct ways (forward or inverted, overlaps allowed).  Occurrence slots of
all candidate subwords are exactly the suffix positions of the two documents
w and w^-1, so the longest piece is the longest substring repeated across
those documents.
"""

from __future__ import annotations

BACKEND = "python"

_SEP = 0xFF

_inv_tables: dict[int, bytes] = {}


def _inv_table(rank: int) -> bytes:
    table = _inv_tables.get(rank)
    if table is None:
        table = bytes((i + rank) if i < rank else (i - rank) for i in range(2 * rank))
        table = table + bytes(range(2 * rank, 256))
        _inv_tables[rank] = table
    return table


def _inverse(letters: bytes, rank: int) -> bytes:
    return letters.translate(_inv_table(rank))[::-1]


def _has_repeat(fwd: bytes, inv: bytes, length: int) -> bool:
    """Is some substring of the given length visible at two distinct slots?"""
    seen = set()
    add = seen.add
    for doc in (fwd, inv):
        for p in range(len(doc) - length + 1):
            key = doc[p:p + length]
            if key in seen:
                return True
            add(key)
    return False


def piece_len(letters: bytes, rank: int) -> int:
    """Length of the longest piece of a reduced word (0 if none)."""
    n = len(letters)
    if n < 2:
        return 0
    inv = _inverse(letters, rank)
    # monotone in the length: a piece of length L yields one of length L-1
    best, lo, hi = 0, 1, n - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        if _has_repeat(letters, inv, mid):
            best = mid
            lo = mid + 1
        else:
            hi = mid - 1
    return best


def has_piece(letters: bytes, rank: int, min_len: int) -> bool:
    """Does the word have a piece of at least the given length?"""
    if min_len <= 0:
        return True
    n = len(letters)
    if min_len > n - 1:
        return False
    return _has_repeat(letters, _inverse(letters, rank), min_len)


def _first_allowed(blocked: int) -> int:
    # smallest letter index different from the blocked (cancelling) one
    return 1 if blocked == 0 else 0


def sphere_words(rank: int, n: int, prefix: bytes = b"") -> list[bytes]:
    """All reduced words of length n extending prefix, in lexicographic order."""
    out: list[bytes] = []
    for w in _iter_sphere(rank, n, prefix):
        out.append(bytes(w))
    return out


def sphere_scan(rank: int, n: int, min_piece: int,
                prefix: bytes = b"") -> tuple[int, int]:
    """Count reduced words of length n extending prefix, and how many of them
    have a piece of length >= min_piece."""
    count = hits = 0
    if min_piece <= 0:
        for w in _iter_sphere(rank, n, prefix):
            count += 1
        return count, count
    table = _inv_table(rank)
    for w in _iter_sphere(rank, n, prefix):
        count += 1
        fwd = bytes(w)
        if _has_repeat(fwd, fwd.translate(table)[::-1], min_piece):
            hits += 1
    return count, hits


def _iter_sphere(rank: int, n: int, prefix: bytes):
    """Odometer over reduced words of length n with the given reduced prefix.

    Yields an internal bytearray; callers must copy if they keep it.
    """
    k = 2 * rank
    lp = len(prefix)
    if lp > n:
        return
    inv = _inv_table(rank)
    w = bytearray(n)
    w[:lp] = prefix
    for pos in range(lp, n):
        w[pos] = _first_allowed(inv[w[pos - 1]] if pos > 0 else -1)
    while True:
        yield w
        pos = n - 1
        while pos >= lp:
            blocked = inv[w[pos - 1]] if pos > 0 else -1
            c = w[pos] + 1
            if c == blocked:
                c += 1
            if c < k:
                w[pos] = c
                for q in range(pos + 1, n):
                    w[q] = _first_allowed(inv[w[q - 1]])
                break
            pos -= 1
        else:
            return
