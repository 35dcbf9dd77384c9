"""Cancellation-free parametrization systems and multipattern membership.

A pattern system constrains a tuple of m words: some coordinates are free
(ranging over the whole group), each bound coordinate j carries equations
p_j = w_tj(y_1..y_n) that must hold graphically, i.e. the right-hand side
concatenates without cancellation into exactly p_j.  Every variable takes a
non-empty value, every variable appears at least twice in the system, and
every variable occurring in the first equation w_1j of each coordinate must
take a value that is a piece of the matched tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernels
from .errors import InputError
from .pieces import _occurrences_across
from .words import Alphabet, Word

# equation symbols: ("y", index) | ("yinv", index) | ("const", Word),
# variable indices 1-based as in the JSON wire format
Symbol = tuple
Equation = tuple


@dataclass(frozen=True)
class PatternSystem:
    variables: tuple[str, ...]
    coordinates: int
    free: tuple[int, ...]                  # 1-based free coordinate numbers
    equations: tuple[tuple[Equation, ...], ...]  # per bound coordinate
    alphabet: Alphabet

    @property
    def bound_coordinates(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.coordinates + 1)
                     if j not in self.free)


@dataclass(frozen=True)
class MatchResult:
    assignment: dict[str, Word]
    piece_flags: dict[tuple[int, str], bool]   # (coordinate, variable) -> verified


def validate_pattern(system: PatternSystem) -> list[str]:
    """Structural violations (empty list when the system is well-formed)."""
    out: list[str] = []
    m = system.coordinates
    if m < 1:
        out.append("coordinate count must be >= 1")
    if len(set(system.variables)) != len(system.variables):
        out.append("duplicate variable names")
    for j in system.free:
        if not 1 <= j <= m:
            out.append(f"free coordinate {j} out of range")
    if len(set(system.free)) != len(system.free):
        out.append("duplicate free coordinates")
    bound = system.bound_coordinates
    if len(system.equations) != len(bound):
        out.append(f"expected equation lists for {len(bound)} bound "
                   f"coordinates, got {len(system.equations)}")
        return out

    occurrences = {i: 0 for i in range(1, len(system.variables) + 1)}
    inv = system.alphabet.inverse_letter
    for j, eqs in zip(bound, system.equations):
        if not eqs:
            out.append(f"coordinate {j} has no equations")
            continue
        if not eqs[0]:
            out.append(f"coordinate {j}: first equation is empty")
        for t, eq in enumerate(eqs, start=1):
            prev_const: Word | None = None
            for sym in eq:
                kind = sym[0]
                if kind in ("y", "yinv"):
                    i = sym[1]
                    if i not in occurrences:
                        out.append(f"coordinate {j}, equation {t}: "
                                   f"undeclared variable index {i}")
                    else:
                        occurrences[i] += 1
                    prev_const = None
                elif kind == "const":
                    word = sym[1]
                    if len(word) == 0:
                        out.append(f"coordinate {j}, equation {t}: "
                                   "empty constant")
                    elif prev_const is not None and \
                            prev_const.letters[-1] == inv(word.letters[0]):
                        out.append(f"coordinate {j}, equation {t}: forced "
                                   "cancellation between adjacent constants")
                    prev_const = word if len(word) else None
                else:
                    out.append(f"coordinate {j}, equation {t}: "
                               f"unknown symbol kind {kind!r}")
    for i, count in occurrences.items():
        if count < 2:
            out.append(f"variable {system.variables[i - 1]} occurs {count} "
                       "time(s); every variable must occur at least twice")
    return out


def _match_equation(eq: Equation, target: bytes, sym_idx: int, pos: int,
                    assignment: dict[int, Word], alphabet: Alphabet):
    """Backtrack over segmentations of target; shorter segments first, so the
    first full match is the lexicographically least boundary placement."""
    if sym_idx == len(eq):
        if pos == len(target):
            yield
        return
    sym = eq[sym_idx]
    kind = sym[0]
    remaining = len(target) - pos
    if kind == "const":
        seg = sym[1].letters
        if target[pos:pos + len(seg)] == seg:
            yield from _match_equation(eq, target, sym_idx + 1,
                                       pos + len(seg), assignment, alphabet)
        return
    i = sym[1]
    bound_value = assignment.get(i)
    if bound_value is not None:
        seg = bound_value.letters if kind == "y" \
            else bound_value.inverse().letters
        if target[pos:pos + len(seg)] == seg:
            yield from _match_equation(eq, target, sym_idx + 1,
                                       pos + len(seg), assignment, alphabet)
        return
    for seg_len in range(1, remaining + 1):
        seg = target[pos:pos + seg_len]
        value = Word._wrap(alphabet, seg)
        if kind == "yinv":
            value = value.inverse()
        assignment[i] = value
        yield from _match_equation(eq, target, sym_idx + 1, pos + seg_len,
                                   assignment, alphabet)
        del assignment[i]


def match_pattern(system: PatternSystem,
                  p: Sequence[Word]) -> MatchResult | None:
    """First assignment (in deterministic search order) making every equation
    hold graphically with non-empty values and the w_1 piece condition; None
    if there is none.  Exhaustive over boundary placements."""
    violations = validate_pattern(system)
    if violations:
        raise InputError("invalid pattern system: " + "; ".join(violations))
    p = tuple(p)
    if len(p) != system.coordinates:
        raise InputError(f"expected a {system.coordinates}-tuple, "
                         f"got {len(p)} words")
    for w in p:
        if w.alphabet.rank != system.alphabet.rank:
            raise InputError("tuple and system alphabets differ in rank")

    bound = system.bound_coordinates
    chain = [(j, eq) for j, eqs in zip(bound, system.equations) for eq in eqs]
    assignment: dict[int, Word] = {}

    def solve(idx: int):
        if idx == len(chain):
            yield
            return
        j, eq = chain[idx]
        target = p[j - 1].letters
        for _ in _match_equation(eq, target, 0, 0, assignment,
                                 system.alphabet):
            yield from solve(idx + 1)

    tuple_words = list(p)
    for _ in solve(0):
        flags: dict[tuple[int, str], bool] = {}
        ok = True
        for j, eqs in zip(bound, system.equations):
            for sym in eqs[0]:
                if sym[0] in ("y", "yinv"):
                    name = system.variables[sym[1] - 1]
                    good = len(_occurrences_across(tuple_words,
                                                   assignment[sym[1]])) >= 2
                    flags[(j, name)] = good
                    ok = ok and good
        if ok:
            named = {system.variables[i - 1]: w
                     for i, w in sorted(assignment.items())}
            return MatchResult(assignment=named, piece_flags=flags)
    return None


def member_of_multipattern(systems: Iterable[PatternSystem],
                           p: Sequence[Word]) -> bool:
    """Membership in a finite union of parametrized sets (empty union: no)."""
    return any(match_pattern(system, p) is not None for system in systems)


def pattern_ratio_bound(system: PatternSystem, j: int) -> Fraction:
    """Guaranteed longest-piece ratio threshold 1/m for coordinate j, where m
    is the symbol length of its first equation."""
    violations = validate_pattern(system)
    if violations:
        raise InputError("invalid pattern system: " + "; ".join(violations))
    bound = system.bound_coordinates
    if j not in bound:
        raise InputError(f"coordinate {j} is not a bound coordinate")
    eq = system.equations[bound.index(j)][0]
    return Fraction(1, len(eq))


@dataclass(frozen=True)
class NegligibilityReport:
    eps: Fraction
    strata: dict[int, tuple[int, int]]   # length -> (at_or_above, below)
    exceptions: tuple[Word, ...]         # below-threshold words, capped
    exception_cap: int
    truncated: bool

    @property
    def total_at_or_above(self) -> int:
        return sum(a for a, _ in self.strata.values())

    @property
    def total_below(self) -> int:
        return sum(b for _, b in self.strata.values())


def negligibility_report(words: Iterable[Word], eps,
                         exception_cap: int = 100) -> NegligibilityReport:
    """Classify a word stream by whether the longest-piece ratio reaches eps."""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise InputError(f"eps must lie in (0, 1], got {eps}")
    strata: dict[int, list[int]] = {}
    exceptions: list[Word] = []
    truncated = False
    for w in words:
        n = len(w)
        ratio = Fraction(_kernels.piece_len(w.letters, w.alphabet.rank), n) \
            if n else Fraction(0)
        cell = strata.setdefault(n, [0, 0])
        if ratio >= eps:
            cell[0] += 1
        else:
            cell[1] += 1
            if len(exceptions) < exception_cap:
                exceptions.append(w)
            else:
                truncated = True
    return NegligibilityReport(
        eps=eps,
        strata={n: (a, b) for n, (a, b) in sorted(strata.items())},
        exceptions=tuple(exceptions),
        exception_cap=exception_cap,
        truncated=truncated)


def witness_family(x: Word, y: Word, i: int) -> Word:
    """Reduced form of x y x y^2 x ... x y^i x for non-commuting x, y.

    These words have maximal piece ratio falling like 1/i, so the family
    eventually escapes every fixed piece-ratio threshold.
    """
    if i < 1:
        raise InputError("witness family index must be >= 1")
    if x * y == y * x:
        raise InputError("witness family needs non-commuting x, y")
    result = x
    block = x.alphabet.identity
    for _ in range(i):
        block = block * y
        result = result * block * x
    return result


# -- JSON wire format ---------------------------------------------------------

def _symbol_to_json(sym: Symbol):
    if sym[0] == "const":
        return ["const", str(sym[1])]
    return [sym[0], sym[1]]


def pattern_system_to_json(system: PatternSystem) -> dict:
    return {
        "rank": system.alphabet.rank,
        "variables": list(system.variables),
        "coordinates": system.coordinates,
        "free": list(system.free),
        "equations": [[[_symbol_to_json(sym) for sym in eq] for eq in eqs]
                      for eqs in system.equations],
    }


def _symbol_from_json(item, alphabet: Alphabet, n_vars: int) -> Symbol:
    if (not isinstance(item, (list, tuple)) or len(item) != 2
            or item[0] not in ("y", "yinv", "const")):
        raise InputError(f"malformed equation symbol {item!r}")
    kind, val = item
    if kind == "const":
        return ("const", alphabet.word(val))
    if not isinstance(val, int) or not 1 <= val <= n_vars:
        raise InputError(f"variable index {val!r} out of range")
    return (kind, val)


def load_pattern_system(obj: dict) -> PatternSystem:
    """Read a system from its JSON form.  ``equations`` is one list of
    equations per bound coordinate; for a single bound coordinate the outer
    nesting may be omitted."""
    try:
        variables = tuple(obj["variables"])
        m = obj["coordinates"]
        free = tuple(obj.get("free", ()))
        raw_eqs = obj["equations"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed pattern system: {exc}") from None
    alphabet = Alphabet(obj.get("rank", 2))
    if raw_eqs and raw_eqs[0] and isinstance(raw_eqs[0][0], (list, tuple)) \
            and raw_eqs[0][0] and isinstance(raw_eqs[0][0][0], str):
        raw_eqs = [raw_eqs]   # single-coordinate shorthand
    equations = tuple(
        tuple(tuple(_symbol_from_json(sym, alphabet, len(variables))
                    for sym in eq) for eq in eqs)
        for eqs in raw_eqs)
    return PatternSystem(variables=variables, coordinates=m, free=free,
                         equations=equations, alphabet=alphabet)
