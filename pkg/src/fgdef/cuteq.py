"""Cut equations over free groups and their generalized-equation sources.

A generalized equation places items h_1..h_rho on the boundary interval
[1, rho+1] and covers stretches of it with bases: dual pairs of variable
bases (mu, Delta(mu)) with orientations eps = +-1, and coefficient bases
carrying fixed words.  A solution assigns non-empty reduced words to the
items so that the whole interval concatenates without cancellation and every
base relation value(mu)^eps(mu) = value(Delta(mu))^eps(Delta(mu)) (resp.
= label for coefficient bases) holds letter for letter.

Cutting the interval along closed-section boundaries turns this into a cut
equation: every way of tiling a cut interval by items and bases becomes a
partition, a word over the item variables, one representative per dual pair,
and constants.  Solutions transfer back and forth between the two views;
the tests exercise that round trip exhaustively at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InputError
from .words import Alphabet, Word

# f_M symbols: ("var", name) | ("varinv", name) | ("const", Word); the
# expressing identities recorded by elimination additionally use
# ("param", name) | ("paraminv", name)
Symbol = tuple


@dataclass(frozen=True)
class Base:
    name: str
    left: int
    right: int
    eps: int
    dual: str | None = None
    const: Word | None = None


@dataclass(frozen=True)
class GeneralizedEquation:
    length: int                 # number of items; boundaries run 1..length+1
    bases: tuple[Base, ...]
    alphabet: Alphabet
    sections: tuple[int, ...] = ()   # closed-section boundary markers

    def __post_init__(self):
        rho = self.length
        if rho < 1:
            raise InputError("generalized equation needs at least one item")
        names = [b.name for b in self.bases]
        if len(set(names)) != len(names):
            raise InputError("duplicate base names")
        by_name = {b.name: b for b in self.bases}
        for b in self.bases:
            if not 1 <= b.left < b.right <= rho + 1:
                raise InputError(f"base {b.name}: endpoints {b.left},{b.right} "
                                 f"outside [1, {rho + 1}]")
            if b.eps not in (1, -1):
                raise InputError(f"base {b.name}: orientation must be +-1")
            if (b.dual is None) == (b.const is None):
                raise InputError(f"base {b.name}: needs exactly one of a dual "
                                 "partner or a constant label")
            if b.dual is not None:
                partner = by_name.get(b.dual)
                if partner is None or partner.name == b.name \
                        or partner.dual != b.name:
                    raise InputError(f"base {b.name}: duality is not a perfect "
                                     "matching")
        if not self.sections:
            markers = [1, rho + 1]
            for t in range(2, rho + 1):
                if not any(b.left < t < b.right for b in self.bases):
                    markers.append(t)
            object.__setattr__(self, "sections", tuple(sorted(set(markers))))
        else:
            s = self.sections
            if list(s) != sorted(set(s)) or s[0] != 1 or s[-1] != rho + 1:
                raise InputError("section markers must increase from 1 "
                                 f"to {rho + 1}")
            for b in self.bases:
                if any(b.left < t < b.right for t in s):
                    raise InputError(f"base {b.name} crosses a closed-section "
                                     "boundary")

    def item_names(self) -> tuple[str, ...]:
        return tuple(f"h{i}" for i in range(1, self.length + 1))

    def representatives(self) -> tuple[Base, ...]:
        """One base per dual pair, first-listed wins; deterministic."""
        chosen: dict[str, Base] = {}
        for b in self.bases:
            if b.dual is not None and b.dual not in chosen:
                chosen[b.name] = b
        return tuple(chosen.values())


def ge_check_solution(ge: GeneralizedEquation,
                      items: Sequence[Word]) -> bool:
    """Do the item values solve the generalized equation?  Requires non-empty
    values, a cancellation-free full concatenation, and every base relation
    to hold as words."""
    if len(items) != ge.length:
        raise InputError(f"expected {ge.length} item values, got {len(items)}")
    inv = ge.alphabet.inverse_letter
    for w in items:
        if len(w) == 0:
            return False
    for a, b in zip(items, items[1:]):
        if a.letters[-1] == inv(b.letters[0]):
            return False

    def span_value(base: Base) -> Word:
        letters = b"".join(w.letters for w in items[base.left - 1:base.right - 1])
        return Word._wrap(ge.alphabet, letters)

    by_name = {b.name: b for b in ge.bases}
    for b in ge.bases:
        if b.const is not None:
            expected = b.const if b.eps == 1 else b.const.inverse()
            if span_value(b) != expected:
                return False
    for b in ge.representatives():
        partner = by_name[b.dual]
        lhs = span_value(b) if b.eps == 1 else span_value(b).inverse()
        rhs = span_value(partner) if partner.eps == 1 \
            else span_value(partner).inverse()
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class Interval:
    fx: str
    fm: tuple[Symbol, ...]


@dataclass(frozen=True)
class CutEquation:
    params: tuple[str, ...]
    variables: tuple[str, ...]
    intervals: tuple[Interval, ...]
    alphabet: Alphabet

    def __post_init__(self):
        if set(self.params) & set(self.variables):
            raise InputError("parameter and variable names overlap")
        if len(set(self.params)) != len(self.params) \
                or len(set(self.variables)) != len(self.variables):
            raise InputError("duplicate parameter or variable names")
        declared = set(self.variables)
        inv = self.alphabet.inverse_letter
        for idx, itv in enumerate(self.intervals, start=1):
            if itv.fx not in self.params:
                raise InputError(f"interval {idx}: unknown parameter {itv.fx!r}")
            if not itv.fm:
                raise InputError(f"interval {idx}: empty partition word")
            prev = None
            for sym in itv.fm:
                kind = sym[0]
                if kind in ("var", "varinv"):
                    if sym[1] not in declared:
                        raise InputError(f"interval {idx}: unknown variable "
                                         f"{sym[1]!r}")
                elif kind == "const":
                    if len(sym[1]) == 0:
                        raise InputError(f"interval {idx}: empty constant")
                else:
                    raise InputError(f"interval {idx}: unknown symbol kind "
                                     f"{kind!r}")
                if prev is not None:
                    if {prev[0], kind} == {"var", "varinv"} \
                            and prev[1] == sym[1] and prev[0] != kind:
                        raise InputError(f"interval {idx}: partition word "
                                         "cancels as written")
                    if prev[0] == "const" and kind == "const" \
                            and prev[1].letters[-1] == inv(sym[1].letters[0]):
                        raise InputError(f"interval {idx}: adjacent constants "
                                         "cancel as written")
                prev = sym


def variable_occurrence_counts(cut: CutEquation) -> dict[str, int]:
    """Occurrences per variable across all partitions (inverted included)."""
    counts = {v: 0 for v in cut.variables}
    for itv in cut.intervals:
        for sym in itv.fm:
            if sym[0] in ("var", "varinv"):
                counts[sym[1]] += 1
    return counts


@dataclass(frozen=True)
class SolutionCheck:
    mode: str
    interval_ok: tuple[bool, ...]
    ok: bool


def check_solution(cut: CutEquation, beta: Mapping[str, Word],
                   alpha: Mapping[str, Word],
                   mode: str = "graphical") -> SolutionCheck:
    """Per-interval verdicts for a parameter assignment beta and variable
    assignment alpha.  Graphical mode demands non-empty variable values, a
    cancellation-free substitution, and letter-for-letter equality; group
    mode demands equality after free reduction only."""
    if mode not in ("graphical", "group"):
        raise InputError(f"unknown mode {mode!r}")
    for x in cut.params:
        if x not in beta:
            raise InputError(f"parameter {x!r} unassigned")
    for v in cut.variables:
        if v not in alpha:
            raise InputError(f"variable {v!r} unassigned")
        if mode == "graphical" and len(alpha[v]) == 0:
            raise InputError(f"variable {v!r} has an empty value")

    inv = cut.alphabet.inverse_letter
    verdicts = []
    for itv in cut.intervals:
        target = beta[itv.fx]
        parts = []
        for sym in itv.fm:
            if sym[0] == "var":
                parts.append(alpha[sym[1]])
            elif sym[0] == "varinv":
                parts.append(alpha[sym[1]].inverse())
            else:
                parts.append(sym[1])
        if mode == "group":
            value = cut.alphabet.identity
            for part in parts:
                value = value * part
            verdicts.append(value == target)
            continue
        graphical = True
        for a, b in zip(parts, parts[1:]):
            if a.letters and b.letters \
                    and a.letters[-1] == inv(b.letters[0]):
                graphical = False
                break
        if graphical:
            joined = b"".join(part.letters for part in parts)
            graphical = joined == target.letters
        verdicts.append(graphical)
    return SolutionCheck(mode=mode, interval_ok=tuple(verdicts),
                         ok=all(verdicts))


# -- construction from a generalized equation ---------------------------------

def _cut_intervals(ge: GeneralizedEquation,
                   markers: Sequence[int]) -> list[tuple[int, int]]:
    markers = list(markers)
    if markers != sorted(set(markers)):
        raise InputError("cut markers must be strictly increasing")
    if not markers or markers[0] != 1 or markers[-1] != ge.length + 1:
        raise InputError(f"cut markers must run from 1 to {ge.length + 1} "
                         "and cover the whole interval")
    for t in markers:
        if t not in ge.sections:
            raise InputError(f"cut marker {t} is not a closed-section "
                             "boundary")
    return list(zip(markers, markers[1:]))


def _tilings(ge: GeneralizedEquation, left: int, right: int):
    """All tilings of [left, right) by items and fully contained bases."""
    starts: dict[int, list] = {}
    for i in range(left, right):
        starts.setdefault(i, []).append(("item", i))
    for b in sorted(ge.bases, key=lambda b: (b.right, b.name)):
        if left <= b.left and b.right <= right:
            starts.setdefault(b.left, []).append(("base", b))

    out: list[tuple] = []

    def rec(pos: int, acc: list):
        if pos == right:
            out.append(tuple(acc))
            return
        for tile in starts.get(pos, ()):
            acc.append(tile)
            rec(tile[1] + 1 if tile[0] == "item" else tile[1].right, acc)
            acc.pop()

    rec(left, [])
    return out


def build_cut_equation(ge: GeneralizedEquation,
                       markers: Sequence[int]) -> CutEquation:
    """Cut equation whose partitions are all tilings of the cut intervals.

    Cut markers must lie on closed-section boundaries so that no base
    straddles two intervals; parameters are named x1, x2, ... left to right.
    """
    spans = _cut_intervals(ge, markers)
    reps = {b.name for b in ge.representatives()}

    def render(tile) -> Symbol:
        if tile[0] == "item":
            return ("var", f"h{tile[1]}")
        b = tile[1]
        if b.const is not None:
            return ("const", b.const if b.eps == 1 else b.const.inverse())
        rep = b.name if b.name in reps else b.dual
        return ("var" if b.eps == 1 else "varinv", rep)

    intervals = []
    for idx, (left, right) in enumerate(spans, start=1):
        for tiling in _tilings(ge, left, right):
            intervals.append(Interval(fx=f"x{idx}",
                                      fm=tuple(render(t) for t in tiling)))
    return CutEquation(
        params=tuple(f"x{i}" for i in range(1, len(spans) + 1)),
        variables=ge.item_names() + tuple(b.name for b in ge.representatives()),
        intervals=tuple(intervals),
        alphabet=ge.alphabet)


def induced_cut_solution(ge: GeneralizedEquation, markers: Sequence[int],
                         items: Sequence[Word]):
    """The canonical (beta, alpha) induced by a generalized-equation solution:
    each parameter gets its interval's item product, each item variable its
    own value, and each representative base its oriented span value."""
    if len(items) != ge.length:
        raise InputError(f"expected {ge.length} item values, got {len(items)}")
    spans = _cut_intervals(ge, markers)

    def segment(left: int, right: int) -> Word:
        value = ge.alphabet.identity
        for w in items[left - 1:right - 1]:
            value = value * w
        return value

    beta = {f"x{i}": segment(left, right)
            for i, (left, right) in enumerate(spans, start=1)}
    alpha = {f"h{i}": items[i - 1] for i in range(1, ge.length + 1)}
    for b in ge.representatives():
        value = segment(b.left, b.right)
        alpha[b.name] = value if b.eps == 1 else value.inverse()
    return beta, alpha


# -- single-occurrence elimination ---------------------------------------------

@dataclass(frozen=True)
class Removal:
    interval_index: int        # 1-based index into the original interval list
    variable: str
    identity: str              # schematic expressing identity, for the trace
    rhs: tuple[Symbol, ...]    # machine form of the right-hand side


@dataclass(frozen=True)
class EliminationTrace:
    removals: tuple[Removal, ...]
    unconstrained: tuple[str, ...]   # parameters whose partitions all vanished


def _invert_symbols(symbols: Sequence[Symbol]) -> tuple[Symbol, ...]:
    flip = {"var": "varinv", "varinv": "var",
            "param": "paraminv", "paraminv": "param"}
    out = []
    for sym in reversed(symbols):
        if sym[0] == "const":
            out.append(("const", sym[1].inverse()))
        else:
            out.append((flip[sym[0]], sym[1]))
    return tuple(out)


def _render_symbols(symbols: Sequence[Symbol]) -> str:
    bits = []
    for sym in symbols:
        if sym[0] == "const":
            bits.append(str(sym[1]))
        elif sym[0] in ("varinv", "paraminv"):
            bits.append(f"{sym[1]}^-1")
        else:
            bits.append(str(sym[1]))
    return " ".join(bits) if bits else "1"


def eliminate_single_occurrence(cut: CutEquation):
    """Repeatedly drop the partition holding a variable that occurs exactly
    once in the whole cut equation, expressing that variable in terms of the
    rest; deterministic order (lowest interval, then lowest variable index).

    Returns the reduced cut equation and the trace.  Parameters that lose
    every partition are flagged unconstrained: the remaining equations no
    longer restrict them at all.
    """
    var_order = {v: i for i, v in enumerate(cut.variables)}
    remaining: list[tuple[int, Interval]] = \
        [(idx, itv) for idx, itv in enumerate(cut.intervals, start=1)]
    removals: list[Removal] = []

    while True:
        counts: dict[str, int] = {}
        for _, itv in remaining:
            for sym in itv.fm:
                if sym[0] in ("var", "varinv"):
                    counts[sym[1]] = counts.get(sym[1], 0) + 1
        chosen = None
        for pos, (idx, itv) in enumerate(remaining):
            singles = {sym[1] for sym in itv.fm
                       if sym[0] in ("var", "varinv") and counts[sym[1]] == 1}
            if singles:
                chosen = (pos, idx, itv, min(singles, key=var_order.get))
                break
        if chosen is None:
            break
        pos, idx, itv, variable = chosen
        at = next(i for i, sym in enumerate(itv.fm)
                  if sym[0] in ("var", "varinv") and sym[1] == variable)
        prefix, suffix = itv.fm[:at], itv.fm[at + 1:]
        target: Symbol = ("param", itv.fx)
        if itv.fm[at][0] == "var":
            rhs = _invert_symbols(prefix) + (target,) + _invert_symbols(suffix)
        else:
            rhs = suffix + (("paraminv", itv.fx),) + prefix
        removals.append(Removal(
            interval_index=idx, variable=variable,
            identity=f"{variable} = {_render_symbols(rhs)}", rhs=rhs))
        del remaining[pos]

    live_params = {itv.fx for _, itv in remaining}
    had_params = {itv.fx for itv in cut.intervals}
    unconstrained = tuple(x for x in cut.params
                          if x in had_params and x not in live_params)
    reduced = CutEquation(params=cut.params, variables=cut.variables,
                          intervals=tuple(itv for _, itv in remaining),
                          alphabet=cut.alphabet)
    return reduced, EliminationTrace(removals=tuple(removals),
                                     unconstrained=unconstrained)


def evaluate_symbols(symbols: Sequence[Symbol], beta: Mapping[str, Word],
                     alpha: Mapping[str, Word], alphabet: Alphabet) -> Word:
    """Reduced value of a symbol word under the given assignments (used to
    replay expressing identities from an elimination trace)."""
    value = alphabet.identity
    for sym in symbols:
        if sym[0] == "const":
            part = sym[1]
        elif sym[0] == "var":
            part = alpha[sym[1]]
        elif sym[0] == "varinv":
            part = alpha[sym[1]].inverse()
        elif sym[0] == "param":
            part = beta[sym[1]]
        elif sym[0] == "paraminv":
            part = beta[sym[1]].inverse()
        else:
            raise InputError(f"unknown symbol kind {sym[0]!r}")
        value = value * part
    return value


def example_cut_equation() -> CutEquation:
    """A small worked example: one parameter p with five partitions over the
    items h1..h5 and two extra variables; the single-occurrence cascade
    removes every partition and leaves p unconstrained."""
    def var(*names):
        return tuple(("var", n) for n in names)

    return CutEquation(
        params=("p",),
        variables=("h1", "h2", "h3", "h4", "h5", "lambda", "mu"),
        intervals=(
            Interval(fx="p", fm=var("lambda", "mu", "lambda")),
            Interval(fx="p", fm=var("h1", "h2", "mu", "h5")),
            Interval(fx="p", fm=var("h1", "h2", "h3", "h4", "h5")),
            Interval(fx="p", fm=var("h1", "mu", "lambda")),
            Interval(fx="p", fm=var("h1", "h2", "h3", "lambda")),
        ),
        alphabet=Alphabet(2))


# -- JSON wire formats ---------------------------------------------------------

def _fm_symbol_to_json(sym: Symbol):
    if sym[0] == "const":
        return ["const", str(sym[1])]
    return [sym[0], sym[1]]


def cut_equation_to_json(cut: CutEquation) -> dict:
    return {
        "rank": cut.alphabet.rank,
        "params": list(cut.params),
        "vars": list(cut.variables),
        "intervals": [{"fx": itv.fx,
                       "fm": [_fm_symbol_to_json(sym) for sym in itv.fm]}
                      for itv in cut.intervals],
    }


def load_cut_equation(obj: dict) -> CutEquation:
    try:
        params = tuple(obj["params"])
        variables = tuple(obj["vars"])
        raw_intervals = obj["intervals"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed cut equation: {exc}") from None
    alphabet = Alphabet(obj.get("rank", 2))
    intervals = []
    for raw in raw_intervals:
        fm = []
        for item in raw.get("fm", ()):
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise InputError(f"malformed partition symbol {item!r}")
            kind, val = item
            if kind == "const":
                fm.append(("const", alphabet.word(val)))
            elif kind in ("var", "varinv"):
                fm.append((kind, val))
            else:
                raise InputError(f"unknown partition symbol kind {kind!r}")
        intervals.append(Interval(fx=raw.get("fx"), fm=tuple(fm)))
    return CutEquation(params=params, variables=variables,
                       intervals=tuple(intervals), alphabet=alphabet)


def generalized_equation_to_json(ge: GeneralizedEquation) -> dict:
    bases = []
    for b in ge.bases:
        entry = {"name": b.name, "left": b.left, "right": b.right,
                 "eps": b.eps}
        if b.dual is not None:
            entry["dual"] = b.dual
        else:
            entry["const"] = str(b.const)
        bases.append(entry)
    return {"rank": ge.alphabet.rank, "items": ge.length,
            "sections": list(ge.sections), "bases": bases}


def load_generalized_equation(obj: dict) -> GeneralizedEquation:
    try:
        length = obj["items"]
        raw_bases = obj.get("bases", [])
    except TypeError as exc:
        raise InputError(f"malformed generalized equation: {exc}") from None
    alphabet = Alphabet(obj.get("rank", 2))
    bases = []
    for raw in raw_bases:
        try:
            bases.append(Base(
                name=raw["name"], left=raw["left"], right=raw["right"],
                eps=raw["eps"], dual=raw.get("dual"),
                const=alphabet.word(raw["const"]) if "const" in raw else None))
        except KeyError as exc:
            raise InputError(f"base is missing field {exc}") from None
    return GeneralizedEquation(length=length, bases=tuple(bases),
                               alphabet=alphabet,
                               sections=tuple(obj.get("sections", ())))
