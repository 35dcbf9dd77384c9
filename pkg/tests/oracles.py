"""Independent brute-force oracles for the test suite.

Everything here works from first principles (exhaustive scans over raw byte
strings or explicit search), deliberately avoiding the library's optimized
code paths, so that library results can be checked against the definitions.
"""

from __future__ import annotations

from fractions import Fraction

from fgdef.words import Word


def inv_letter(c: int, rank: int) -> int:
    return c + rank if c < rank else c - rank


def invert_bytes(w: bytes, rank: int) -> bytes:
    return bytes(inv_letter(c, rank) for c in reversed(w))


def count_overlapping(hay: bytes, needle: bytes) -> int:
    count, start = 0, 0
    while True:
        i = hay.find(needle, start)
        if i < 0:
            return count
        count += 1
        start = i + 1


def occurrence_count(u: bytes, v: bytes, rank: int) -> int:
    """Occurrences of v in u, forward plus inverted, overlaps included."""
    return (count_overlapping(u, v)
            + count_overlapping(u, invert_bytes(v, rank)))


def piece_len_exhaustive(u: bytes, rank: int) -> int:
    """Longest piece by scanning every subword, longest first."""
    n = len(u)
    for length in range(n - 1, 0, -1):
        for p in range(n - length + 1):
            if occurrence_count(u, u[p:p + length], rank) >= 2:
                return length
    return 0


def tuple_piece_len_exhaustive(words: list[bytes], rank: int) -> int:
    """Longest subword with two distinct (word, position, orientation)
    occurrences anywhere in the tuple."""
    top = max((len(w) for w in words), default=0)
    for length in range(top, 0, -1):
        for u in words:
            for p in range(len(u) - length + 1):
                v = u[p:p + length]
                if sum(occurrence_count(w, v, rank) for w in words) >= 2:
                    return length
    return 0


def is_conjugate_search(u: Word, v: Word, max_conjugator: int) -> bool:
    """Plain search for c with c u c^-1 = v over all |c| <= max_conjugator."""
    alphabet = u.alphabet
    stack = [alphabet.identity]
    seen = set()
    while stack:
        c = stack.pop()
        if c.letters in seen:
            continue
        seen.add(c.letters)
        if c * u * c.inverse() == v:
            return True
        if len(c) < max_conjugator:
            for letter in range(alphabet.size):
                stack.append(c * Word._wrap(alphabet, bytes((letter,))))
    return False


def power_sum_linear_direct(z, n: int) -> Fraction:
    z = Fraction(z)
    return sum((Fraction(i) * z ** i for i in range(1, n + 1)), Fraction(0))


def power_sum_quadratic_direct(z, n: int) -> Fraction:
    z = Fraction(z)
    return sum((Fraction(i * i) * z ** i for i in range(1, n + 1)), Fraction(0))


def reduced_words(rank: int, length: int) -> list[bytes]:
    """All reduced words of the given length, lexicographic order."""
    out: list[bytes] = []

    def rec(prefix: list[int]):
        if len(prefix) == length:
            out.append(bytes(prefix))
            return
        for c in range(2 * rank):
            if prefix and c == inv_letter(prefix[-1], rank):
                continue
            prefix.append(c)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


def ball_words_brute(alphabet, max_len: int) -> list[Word]:
    out = []
    for n in range(max_len + 1):
        out.extend(Word._wrap(alphabet, w)
                   for w in reduced_words(alphabet.rank, n))
    return out


# -- generalized equations and cut equations -----------------------------------

def ge_solution_brute(ge, items: list[Word]) -> bool:
    """Direct transcription of the solution conditions: non-empty values, the
    full concatenation reduced as written, duals matching orientedly, and
    coefficient bases equal to their oriented labels."""
    rank = ge.alphabet.rank
    raw = [w.letters for w in items]
    if any(len(w) == 0 for w in raw):
        return False
    for a, b in zip(raw, raw[1:]):
        if inv_letter(a[-1], rank) == b[0]:
            return False

    def span(base) -> bytes:
        return b"".join(raw[base.left - 1:base.right - 1])

    def oriented(base) -> bytes:
        s = span(base)
        return s if base.eps == 1 else invert_bytes(s, rank)

    done = set()
    for base in ge.bases:
        if base.const is not None:
            label = base.const.letters if base.eps == 1 \
                else invert_bytes(base.const.letters, rank)
            if span(base) != label:
                return False
        elif base.name not in done:
            partner = next(b for b in ge.bases if b.name == base.dual)
            done.update((base.name, partner.name))
            if oriented(base) != oriented(partner):
                return False
    return True


def cut_graphical_brute(cut, beta: dict, alpha: dict) -> bool:
    """Direct transcription of the graphical-solution conditions."""
    rank = cut.alphabet.rank
    for value in alpha.values():
        if len(value) == 0:
            return False
    for itv in cut.intervals:
        segs = []
        for sym in itv.fm:
            if sym[0] == "var":
                segs.append(alpha[sym[1]].letters)
            elif sym[0] == "varinv":
                segs.append(invert_bytes(alpha[sym[1]].letters, rank))
            else:
                segs.append(sym[1].letters)
        for a, b in zip(segs, segs[1:]):
            if inv_letter(a[-1], rank) == b[0]:
                return False
        if b"".join(segs) != beta[itv.fx].letters:
            return False
    return True


def candidate_item_tuples(alphabet, count: int, max_item: int,
                          max_total: int):
    """Every tuple of non-empty words, each of length <= max_item, whose
    concatenation is reduced as written and of total length <= max_total:
    realized as all reduced words w with |w| <= max_total split into count
    non-empty parts of bounded size."""
    from itertools import combinations

    rank = alphabet.rank
    for total in range(count, max_total + 1):
        for w in reduced_words(rank, total):
            for cuts in combinations(range(1, total), count - 1):
                bounds = (0,) + cuts + (total,)
                if any(b - a > max_item for a, b in zip(bounds, bounds[1:])):
                    continue
                yield tuple(Word._wrap(alphabet, w[a:b])
                            for a, b in zip(bounds, bounds[1:]))


def match_single_var_brute(system, target: Word):
    """Brute-force matcher for one-coordinate, one-variable systems: try every
    non-empty value for the variable up to the target length.  Returns the
    set of values that satisfy all equations graphically plus the w_1 piece
    condition."""
    alphabet = target.alphabet
    rank = alphabet.rank
    good = []
    for length in range(1, len(target) + 1):
        for raw in reduced_words(rank, length):
            value = Word._wrap(alphabet, raw)
            ok = True
            for eqs in system.equations:
                for eq in eqs:
                    segs = []
                    for sym in eq:
                        if sym[0] == "y":
                            segs.append(raw)
                        elif sym[0] == "yinv":
                            segs.append(invert_bytes(raw, rank))
                        else:
                            segs.append(sym[1].letters)
                    if b"".join(segs) != target.letters:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for eqs in system.equations:
                    if any(sym[0] in ("y", "yinv") for sym in eqs[0]) and \
                            occurrence_count(target.letters, raw, rank) < 2:
                        ok = False
            if ok:
                good.append(value)
    return good
