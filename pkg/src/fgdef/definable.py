"""Concrete definable-set machinery in free groups: the rank-2 basis test via
commutator conjugacy, primitivity by Whitehead descent, and the folding of a
finite equation system into a single equation with the same solution set.

The folding gadget is (x^2 a)^2 a^-2 = ((y b)^2 b^-2)^2 over two non-commuting
constants a, b; over a free group it admits only the trivial solution (the
exponent 2 suffices by the Lyndon-Schutzenberger theorem: x^2 y^2 z^2 = 1
forces pairwise commutation), which the test suite verifies exhaustively at
desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernels
from .errors import InputError, ResourceLimitError
from .words import Alphabet, Word, commutator

FOLD_EXPONENT = 2
DEFAULT_ASSIGNMENT_BUDGET = 10 ** 7


# -- bases and primitive elements in rank 2 ------------------------------------

def _require_rank2(alphabet: Alphabet) -> None:
    if alphabet.rank != 2:
        raise InputError("this criterion is specific to rank 2")


def is_basis_pair_f2(g: Word, h: Word) -> bool:
    """Nielsen's criterion: (g, h) is a basis of the rank-2 free group iff
    [g, h] is conjugate to [a, b] or to [b, a]."""
    _require_rank2(g.alphabet)
    _require_rank2(h.alphabet)
    a, b = g.alphabet.generators()
    c = commutator(g, h)
    return c.is_conjugate(commutator(a, b)) or c.is_conjugate(commutator(b, a))


_whitehead_cache: dict[int, list] = {}


def _whitehead_moves(alphabet: Alphabet) -> list:
    """Non-inner rank-2 Whitehead automorphisms of the second kind, as
    letter-image tables: the multiplier v is fixed and the other generator x
    maps to one of xv, v^-1 x, v^-1 x v."""
    moves = _whitehead_cache.get(alphabet.rank)
    if moves is not None:
        return moves
    moves = []
    for v_letter in range(alphabet.size):
        v_gen = v_letter % alphabet.rank
        for x_gen in range(alphabet.rank):
            if x_gen == v_gen:
                continue
            v = Word._wrap(alphabet, bytes((v_letter,)))
            x = alphabet.generator(x_gen)
            for image in (x * v, v.inverse() * x, v.inverse() * x * v):
                table = {i: Word._wrap(alphabet, bytes((i,)))
                         for i in range(alphabet.size)}
                table[x_gen] = image
                table[alphabet.inverse_letter(x_gen)] = image.inverse()
                moves.append(table)
    _whitehead_cache[alphabet.rank] = moves
    return moves


def _apply_letter_map(w: Word, table: dict[int, Word]) -> Word:
    out = w.alphabet.identity
    for letter in w.letters:
        out = out * table[letter]
    return out


def is_primitive_f2(w: Word) -> bool:
    """Is w part of some basis?  Decided by greedy Whitehead descent on the
    cyclic length: a non-minimal orbit element always admits a strictly
    length-reducing Whitehead automorphism, and the orbit of a generator
    bottoms out at cyclic length 1."""
    _require_rank2(w.alphabet)
    core, _ = w.cyclic_reduce()
    if len(core) == 0:
        return False
    moves = _whitehead_moves(w.alphabet)
    improved = True
    while improved and len(core) > 1:
        improved = False
        for table in moves:
            candidate, _ = _apply_letter_map(core, table).cyclic_reduce()
            if len(candidate) < len(core):
                core = candidate
                improved = True
                break
    return len(core) == 1


def nielsen_neighbors(g: Word, h: Word) -> tuple[tuple[Word, Word], ...]:
    """Images of the pair under one elementary Nielsen move: swap, inversion
    of a component, or multiplication of one component by the other."""
    return (
        (h, g),
        (g.inverse(), h),
        (g, h.inverse()),
        (g * h, h),
        (h * g, h),
        (g, h * g),
        (g, g * h),
    )


# -- equations in variables and constants ---------------------------------------

# atoms: ("v", name, sign) for variables, ("c", letter_index) for constants
Atom = tuple


def _invert_atom(atom: Atom, alphabet: Alphabet) -> Atom:
    if atom[0] == "v":
        return ("v", atom[1], -atom[2])
    return ("c", alphabet.inverse_letter(atom[1]))


def _cancels(a: Atom, b: Atom, alphabet: Alphabet) -> bool:
    if a[0] == "v" and b[0] == "v":
        return a[1] == b[1] and a[2] == -b[2]
    if a[0] == "c" and b[0] == "c":
        return b[1] == alphabet.inverse_letter(a[1])
    return False


@dataclass(frozen=True)
class EquationExpr:
    """A word in variables, inverted variables, and constant letters, kept
    syntactically reduced; E = 1 is the equation it denotes."""
    atoms: tuple[Atom, ...]
    alphabet: Alphabet

    @classmethod
    def make(cls, alphabet: Alphabet, atoms: Iterable[Atom]) -> EquationExpr:
        out: list[Atom] = []
        for atom in atoms:
            if out and _cancels(out[-1], atom, alphabet):
                out.pop()
            else:
                out.append(atom)
        return cls(atoms=tuple(out), alphabet=alphabet)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted({a[1] for a in self.atoms if a[0] == "v"}))

    def __mul__(self, other: EquationExpr) -> EquationExpr:
        return EquationExpr.make(self.alphabet, self.atoms + other.atoms)

    def inverse(self) -> EquationExpr:
        return EquationExpr.make(
            self.alphabet,
            tuple(_invert_atom(a, self.alphabet) for a in reversed(self.atoms)))

    def __pow__(self, n: int) -> EquationExpr:
        if n < 0:
            return self.inverse() ** (-n)
        out = EquationExpr.make(self.alphabet, ())
        for _ in range(n):
            out = out * self
        return out

    def substitute(self, mapping: dict[str, EquationExpr]) -> EquationExpr:
        pieces: list[Atom] = []
        for atom in self.atoms:
            if atom[0] == "v" and atom[1] in mapping:
                expr = mapping[atom[1]]
                if atom[2] < 0:
                    expr = expr.inverse()
                pieces.extend(expr.atoms)
            else:
                pieces.append(atom)
        return EquationExpr.make(self.alphabet, pieces)

    def evaluate(self, assignment: dict[str, Word]) -> Word:
        value = self.alphabet.identity
        for atom in self.atoms:
            if atom[0] == "c":
                part = Word._wrap(self.alphabet, bytes((atom[1],)))
            else:
                try:
                    part = assignment[atom[1]]
                except KeyError:
                    raise InputError(f"variable {atom[1]!r} unassigned") from None
                if atom[2] < 0:
                    part = part.inverse()
            value = value * part
        return value

    def __str__(self) -> str:
        bits = []
        for atom in self.atoms:
            if atom[0] == "c":
                bits.append(self.alphabet.symbol(atom[1]))
            elif atom[2] > 0:
                bits.append("$" + atom[1])
            else:
                bits.append("$" + atom[1].upper())
        return "".join(bits) if bits else "1"


def parse_equation(text: str, alphabet: Alphabet) -> EquationExpr:
    """Word syntax with $-prefixed variables: "$x$y$X$Y" is the commutator of
    the variables x and y; "$Xa" is x^-1 a.  Plain letters are constants."""
    atoms: list[Atom] = []
    i = 0
    text = text.strip()
    if text == "1":
        text = ""
    while i < len(text):
        ch = text[i]
        if ch == "$":
            if i + 1 >= len(text) or not text[i + 1].isalpha():
                raise InputError("'$' must be followed by a variable letter")
            name = text[i + 1]
            atoms.append(("v", name.lower(), 1 if name.islower() else -1))
            i += 2
        else:
            atoms.append(("c", alphabet.index(ch)))
            i += 1
    return EquationExpr.make(alphabet, atoms)


def variable(name: str, alphabet: Alphabet) -> EquationExpr:
    return EquationExpr.make(alphabet, (("v", name.lower(), 1),))


def _fold_pair(s1: EquationExpr, s2: EquationExpr) -> EquationExpr:
    alphabet = s1.alphabet
    n = FOLD_EXPONENT
    a = EquationExpr.make(alphabet, (("c", 0),))
    b = EquationExpr.make(alphabet, (("c", 1),))
    lhs = (s1 ** n * a) ** n * a ** (-n)
    rhs = ((s2 * b) ** n * b ** (-n)) ** n
    return lhs * rhs.inverse()


def combine_system_to_single(eqs: Sequence[EquationExpr]) -> EquationExpr:
    """One equation whose solution set equals the conjunction of the system:
    fold the list pairwise through the two-constant gadget."""
    eqs = list(eqs)
    if not eqs:
        raise InputError("cannot combine an empty system")
    alphabet = eqs[0].alphabet
    if alphabet.rank < 2:
        raise InputError("combining needs two non-commuting constants "
                         "(rank >= 2)")
    if any(e.alphabet.rank != alphabet.rank for e in eqs):
        raise InputError("equations come from alphabets of different rank")
    combined = eqs[0]
    for nxt in eqs[1:]:
        combined = _fold_pair(combined, nxt)
    return combined


def ball_words(alphabet: Alphabet, max_len: int) -> list[Word]:
    """All reduced words of length <= max_len, by length then lexicographic."""
    out = []
    for n in range(max_len + 1):
        for letters in _kernels.sphere_words(alphabet.rank, n):
            out.append(Word._wrap(alphabet, letters))
    return out


def check_trivial_only(eq: EquationExpr, max_len: int,
                       budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> bool:
    """Exhaustively search variable values of length <= max_len: true iff the
    all-identity assignment is the only solution in that range."""
    if max_len < 1:
        raise InputError("max_len must be >= 1")
    names = eq.variables
    candidates = ball_words(eq.alphabet, max_len)
    total = len(candidates) ** len(names)
    if total > budget:
        raise ResourceLimitError(
            f"{total} assignments exceed the budget of {budget}")
    assignment: dict[str, Word] = {}

    def rec(idx: int) -> bool:
        if idx == len(names):
            if len(eq.evaluate(assignment)) == 0:
                return all(len(w) == 0 for w in assignment.values())
            return True
        for w in candidates:
            assignment[names[idx]] = w
            if not rec(idx + 1):
                return False
        del assignment[names[idx]]
        return True

    return rec(0)
