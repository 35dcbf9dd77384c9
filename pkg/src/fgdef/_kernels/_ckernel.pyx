# cython: boundscheck=False, wraparound=False, nonecheck=False, cdivision=True
"""Compiled piece-scan and sphere-enumeration kernel.

Semantics are defined by the pure-Python twin in ``_pykernel``; the test
suite cross-checks the two backends word for word.  Longest pieces are found
as the maximal common extension over distinct suffix pairs of the document
buffer  w . SEP . w^-1.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize

from . import _pykernel

BACKEND = "c"

DEF MAXW = 4000   # longest word handled in the stack buffers


cdef inline int _invc(int c, int rank) noexcept nogil:
    return c + rank if c < rank else c - rank


cdef int _fill_docs(const unsigned char* w, int n, int rank,
                    unsigned char* buf) noexcept nogil:
    cdef int i
    cdef unsigned char c
    for i in range(n):
        buf[i] = w[i]
    buf[n] = 255
    for i in range(n):
        c = w[n - 1 - i]
        buf[n + 1 + i] = <unsigned char> _invc(c, rank)
    return 2 * n + 1


cdef int _scan_best(const unsigned char* s, int N, int stop_at) noexcept nogil:
    """Max LCP over suffix pairs at distance d >= 1; 255 is the separator.
    If stop_at > 0, return as soon as that length is witnessed."""
    cdef int best = 0, d, i, run
    for d in range(1, N):
        if N - d <= best:
            break
        run = 0
        for i in range(N - d - 1, -1, -1):
            if s[i] != 255 and s[i] == s[i + d]:
                run += 1
                if run > best:
                    best = run
                    if stop_at > 0 and best >= stop_at:
                        return best
            else:
                run = 0
    return best


def piece_len(bytes letters, int rank):
    """Length of the longest piece of a reduced word (0 if none)."""
    cdef int n = len(letters)
    if n < 2:
        return 0
    if n > MAXW:
        return _pykernel.piece_len(letters, rank)
    cdef unsigned char buf[2 * MAXW + 2]
    cdef const unsigned char* w = letters
    cdef int N = _fill_docs(w, n, rank, buf)
    return _scan_best(buf, N, 0)


def has_piece(bytes letters, int rank, int min_len):
    """Does the word have a piece of at least the given length?"""
    if min_len <= 0:
        return True
    cdef int n = len(letters)
    if min_len > n - 1:
        return False
    if n > MAXW:
        return _pykernel.has_piece(letters, rank, min_len)
    cdef unsigned char buf[2 * MAXW + 2]
    cdef const unsigned char* w = letters
    cdef int N = _fill_docs(w, n, rank, buf)
    return _scan_best(buf, N, min_len) >= min_len


def sphere_scan(int rank, int n, int min_piece, bytes prefix=b""):
    """(word count, piece-rich count) over reduced words of length n
    extending prefix, in lexicographic order."""
    cdef int lp = len(prefix)
    if n < 0 or n > MAXW or lp > n:
        return _pykernel.sphere_scan(rank, n, min_piece, prefix)
    cdef unsigned char w[MAXW + 1]
    cdef unsigned char buf[2 * MAXW + 2]
    cdef int k = 2 * rank
    cdef long long count = 0, hits = 0
    cdef int pos, q, c, blocked, N, found
    cdef int i
    for i in range(lp):
        w[i] = prefix[i]
    with nogil:
        for pos in range(lp, n):
            blocked = _invc(w[pos - 1], rank) if pos > 0 else -1
            w[pos] = 1 if blocked == 0 else 0
        while True:
            count += 1
            if min_piece <= 0:
                hits += 1
            elif min_piece <= n - 1:
                N = _fill_docs(w, n, rank, buf)
                if _scan_best(buf, N, min_piece) >= min_piece:
                    hits += 1
            pos = n - 1
            found = 0
            while pos >= lp:
                blocked = _invc(w[pos - 1], rank) if pos > 0 else -1
                c = w[pos] + 1
                if c == blocked:
                    c += 1
                if c < k:
                    w[pos] = <unsigned char> c
                    for q in range(pos + 1, n):
                        blocked = _invc(w[q - 1], rank)
                        w[q] = 1 if blocked == 0 else 0
                    found = 1
                    break
                pos -= 1
            if not found:
                break
    return count, hits


def sphere_words(int rank, int n, bytes prefix=b""):
    """All reduced words of length n extending prefix, lexicographic order."""
    cdef int lp = len(prefix)
    if n < 0 or n > MAXW or lp > n:
        return _pykernel.sphere_words(rank, n, prefix)
    cdef unsigned char w[MAXW + 1]
    cdef int k = 2 * rank
    cdef int pos, q, c, blocked
    cdef int i
    out = []
    for i in range(lp):
        w[i] = prefix[i]
    for pos in range(lp, n):
        blocked = _invc(w[pos - 1], rank) if pos > 0 else -1
        w[pos] = 1 if blocked == 0 else 0
    while True:
        out.append(PyBytes_FromStringAndSize(<char*> w, n))
        pos = n - 1
        while pos >= lp:
            blocked = _invc(w[pos - 1], rank) if pos > 0 else -1
            c = w[pos] + 1
            if c == blocked:
                c += 1
            if c < k:
                w[pos] = <unsigned char> c
                for q in range(pos + 1, n):
                    blocked = _invc(w[q - 1], rank)
                    w[q] = 1 if blocked == 0 else 0
                break
            pos -= 1
        else:
            return out
