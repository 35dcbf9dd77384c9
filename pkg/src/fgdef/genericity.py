"""Exact sphere/ball counts in free groups and density of piece-rich words.

All counts are exact integers and all densities exact rationals; floats
appear only at the CSV boundary.  Ball sizes include the identity, so
ball(r, n) = 1 + sum_{m<=n} k(k-1)^(m-1) with k = 2r.

The density table tracks, for threshold eps, the set of words whose longest
piece has length at least ceil(eps * |w|).  rho_n is the cumulative density
of that set in the ball of radius n; the per-sphere density is reported
alongside.  The fitted decay constant C1 is the maximum over rows of
rho_n * (k-1)^(eps n) / n^2, compared exactly via q-th powers (eps = p/q).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import _kernels
from .errors import InputError, ResourceLimitError
from .words import Alphabet, Word

DEFAULT_BUDGET = 10 ** 8
_PARALLEL_MIN_SPHERE = 20000


@dataclass(frozen=True)
class BallSpec:
    """Ball of a given radius in the Cayley graph of a rank-r free group."""
    rank: int
    radius: int

    def __post_init__(self):
        if self.rank < 2:
            raise InputError("genericity measurements need rank >= 2")
        if self.radius < 0:
            raise InputError("radius must be non-negative")

    @property
    def sphere_count(self) -> int:
        return sphere_count(self.rank, self.radius)

    @property
    def ball_size(self) -> int:
        return ball_size(self.rank, self.radius)


def _check_rank_radius(rank: int, n: int) -> None:
    if rank < 2:
        raise InputError("genericity measurements need rank >= 2")
    if n < 0:
        raise InputError("radius must be non-negative")


def sphere_count(rank: int, n: int) -> int:
    """Number of reduced words of length exactly n: k(k-1)^(n-1), k = 2r."""
    _check_rank_radius(rank, n)
    if n == 0:
        return 1
    k = 2 * rank
    return k * (k - 1) ** (n - 1)


def ball_size(rank: int, n: int) -> int:
    """Number of reduced words of length at most n, identity included."""
    _check_rank_radius(rank, n)
    k = 2 * rank
    return 1 + k * ((k - 1) ** n - 1) // (k - 2)


def _prefix_bytes(alphabet: Alphabet, prefix: str | Word) -> bytes:
    if isinstance(prefix, Word):
        return prefix.letters
    return alphabet.word(prefix).letters


def enumerate_sphere(rank: int, n: int, prefix: str | Word = "") -> Iterator[Word]:
    """Yield every reduced word of length n once, in lexicographic order
    (letter order a < b < ... < A < B < ...).  A prefix restricts the stream
    to its completions, which is how parallel consumers partition it."""
    _check_rank_radius(rank, n)
    alphabet = Alphabet(rank)
    start = _prefix_bytes(alphabet, prefix)
    for w in _kernels._pykernel._iter_sphere(rank, n, start):
        yield Word._wrap(alphabet, bytes(w))


def piece_threshold(eps: Fraction, n: int) -> int:
    """Piece-length threshold at word length n: ceil(eps * n)."""
    return math.ceil(Fraction(eps) * n)


def _check_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InputError(f"eps must lie in (0, 1], got {eps}")
    return eps


def count_piece_rich(rank: int, n: int, eps) -> int:
    """Exact number of length-n reduced words whose longest piece has
    length >= ceil(eps * n)."""
    eps = _check_eps(eps)
    _check_rank_radius(rank, n)
    _, hits = _kernels.sphere_scan(rank, n, piece_threshold(eps, n))
    return hits


# -- density table -----------------------------------------------------------

@dataclass(frozen=True)
class DensityRow:
    n: int
    sphere: int
    ball: int
    hits: int              # piece-rich words on the sphere of radius n
    cum_hits: int          # piece-rich words in the ball (identity included)
    rho: Fraction          # cumulative density cum_hits / ball
    rho_sphere: Fraction   # per-sphere density hits / sphere
    decreasing: bool       # rho strictly below the previous emitted row
    bound: float           # fitted decay bound C1 n^2 (k-1)^(-eps n)


@dataclass(frozen=True)
class DensityReport:
    rank: int
    eps: Fraction
    rows: tuple[DensityRow, ...]
    c1: float              # fitted constant, max over rows of rho (k-1)^(eps n)/n^2
    c1_pow: Fraction       # exact q-th power of C1 (q = eps.denominator)
    c1_argmax: int         # first n attaining the maximum


def shape_statistic_pow(rho: Fraction, rank: int, eps: Fraction, n: int) -> Fraction:
    """Exact q-th power of rho * (k-1)^(eps n) / n^2, with q = eps.denominator.

    Raising to the q-th power clears the irrational factor (k-1)^(eps n)
    for odd exponents, so rows can be compared exactly.
    """
    k = 2 * rank
    q, p = eps.denominator, eps.numerator
    return rho ** q * Fraction((k - 1) ** (n * p), n ** (2 * q))


def _scan_task(args) -> tuple[int, int]:
    rank, n, min_piece, prefix = args
    return _kernels.sphere_scan(rank, n, min_piece, prefix)


def _cached_hits_task(args) -> tuple[int, int]:
    rank, min_piece, lines = args
    alphabet = Alphabet(rank)
    count = hits = 0
    for line in lines:
        letters = alphabet.word(line).letters
        if len(letters) != len(line):
            raise InputError(f"cache contains a non-reduced word: {line!r}")
        count += 1
        if _kernels.has_piece(letters, rank, min_piece):
            hits += 1
    return count, hits


def _prefix_tasks(rank: int, n: int, min_piece: int, jobs: int):
    """Split the sphere into lexicographic blocks by reduced prefixes."""
    lp = 1
    while sphere_count(rank, min(lp, n)) < 4 * jobs and lp < n:
        lp += 1
    lp = min(lp, n)
    return [(rank, n, min_piece, prefix)
            for prefix in _kernels.sphere_words(rank, lp)]


def _sphere_hits(rank: int, n: int, min_piece: int, jobs: int,
                 cache_dir: str | None, executor) -> int:
    """Piece-rich count on one sphere, against the persistent word cache."""
    expected = sphere_count(rank, n)
    path = os.path.join(cache_dir, f"sphere_r{rank}_n{n}.txt") if cache_dir else None

    if path and os.path.exists(path):
        with open(path, "r", encoding="ascii") as fh:
            lines = fh.read().split()
        if len(lines) != expected:
            raise InputError(f"cache file {path} is corrupt: "
                             f"{len(lines)} words, expected {expected}")
        if executor is None or len(lines) < _PARALLEL_MIN_SPHERE:
            chunks = [lines]
        else:
            step = (len(lines) + jobs - 1) // jobs
            chunks = [lines[i:i + step] for i in range(0, len(lines), step)]
        tasks = [(rank, min_piece, chunk) for chunk in chunks]
        results = list(executor.map(_cached_hits_task, tasks)) if executor \
            else [_cached_hits_task(t) for t in tasks]
        return sum(h for _, h in results)

    if executor is None or expected < _PARALLEL_MIN_SPHERE:
        count, hits = _kernels.sphere_scan(rank, n, min_piece)
    else:
        tasks = _prefix_tasks(rank, n, min_piece, jobs)
        count = hits = 0
        for c, h in executor.map(_scan_task, tasks):
            count += c
            hits += h
    if count != expected:
        raise InputError(f"enumeration mismatch on sphere n={n}: "
                         f"{count} words, expected {expected}")

    if path:
        alphabet = Alphabet(rank)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="ascii") as fh:
            for letters in _kernels.sphere_words(rank, n):
                fh.write(str(Word._wrap(alphabet, letters)))
                fh.write("\n")
        os.replace(tmp, path)
    return hits


def density_report(rank: int, radii: Sequence[int], eps, *, jobs: int = 1,
                   cache_dir: str | None = None,
                   budget: int = DEFAULT_BUDGET) -> DensityReport:
    """Exact density table of the piece-rich set over the given radii.

    Cumulative densities need every sphere up to max(radii), so all of them
    are scanned; only the requested radii appear as rows.  Refuses (rather
    than truncating) when the enumeration would exceed the word budget.
    """
    eps = _check_eps(eps)
    radii = list(radii)
    if not radii:
        raise InputError("no radii requested")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise InputError("radii must be strictly increasing")
    _check_rank_radius(rank, radii[0])
    if radii[0] < 1:
        raise InputError("radii must be >= 1")
    nmax = radii[-1]
    if ball_size(rank, nmax) > budget:
        feasible = nmax
        while feasible > 0 and ball_size(rank, feasible) > budget:
            feasible -= 1
        raise ResourceLimitError(
            f"ball of radius {nmax} in rank {rank} has {ball_size(rank, nmax)} "
            f"words, beyond the budget of {budget}; largest feasible radius "
            f"is {feasible}")

    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)

    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        hits_by_n = {}
        for n in range(1, nmax + 1):
            hits_by_n[n] = _sphere_hits(rank, n, piece_threshold(eps, n),
                                        jobs, cache_dir, executor)
    finally:
        if executor is not None:
            executor.shutdown()

    wanted = set(radii)
    rows = []
    cum = 1  # the identity: longest piece 0 >= ceil(eps * 0)
    stats = []
    for n in range(1, nmax + 1):
        cum += hits_by_n[n]
        if n not in wanted:
            continue
        rho = Fraction(cum, ball_size(rank, n))
        rows.append((n, hits_by_n[n], cum, rho))
        stats.append((shape_statistic_pow(rho, rank, eps, n), n))

    c1_pow, c1_argmax = max(stats, key=lambda t: (t[0], -t[1]))
    c1 = float(c1_pow) ** (1.0 / eps.denominator)
    k = 2 * rank

    out = []
    prev_rho = None
    for n, hits, cum, rho in rows:
        bound = c1 * n * n * float(k - 1) ** (-float(eps) * n)
        out.append(DensityRow(
            n=n, sphere=sphere_count(rank, n), ball=ball_size(rank, n),
            hits=hits, cum_hits=cum, rho=rho,
            rho_sphere=Fraction(hits, sphere_count(rank, n)),
            decreasing=(prev_rho is not None and rho < prev_rho),
            bound=bound))
        prev_rho = rho
    return DensityReport(rank=rank, eps=eps, rows=tuple(out),
                         c1=c1, c1_pow=c1_pow, c1_argmax=c1_argmax)


def write_density_csv(report: DensityReport, fh) -> None:
    """CSV columns: n,sphere,ball,hits,rho_num,rho_den,bound (floats only in
    the bound column, 12 significant digits)."""
    fh.write("n,sphere,ball,hits,rho_num,rho_den,bound\n")
    for row in report.rows:
        fh.write(f"{row.n},{row.sphere},{row.ball},{row.hits},"
                 f"{row.rho.numerator},{row.rho.denominator},"
                 f"{row.bound:.12g}\n")


# -- closed-form power sums ---------------------------------------------------

def power_sum_linear(z, n: int) -> Fraction:
    """sum_{i=1..n} i z^i = z (1 - (n+1) z^n + n z^(n+1)) / (1-z)^2."""
    z = Fraction(z)
    if n < 1:
        raise InputError("power sums need n >= 1")
    if z == 1:
        raise InputError("z = 1 is singular for the closed form")
    return z * (1 - (n + 1) * z ** n + n * z ** (n + 1)) / (1 - z) ** 2


def power_sum_quadratic(z, n: int) -> Fraction:
    """sum_{i=1..n} i^2 z^i = z (1 + z - (n+1)^2 z^n + (2n^2+2n-1) z^(n+1)
    - n^2 z^(n+2)) / (1-z)^3."""
    z = Fraction(z)
    if n < 1:
        raise InputError("power sums need n >= 1")
    if z == 1:
        raise InputError("z = 1 is singular for the closed form")
    return z * (1 + z - (n + 1) ** 2 * z ** n
                + (2 * n * n + 2 * n - 1) * z ** (n + 1)
                - n * n * z ** (n + 2)) / (1 - z) ** 3
