"""Exact arithmetic in a free group of finite rank.

Words are freely reduced sequences over a ranked alphabet.  Generators print
as lowercase letters a, b, c, ..., their formal inverses as the corresponding
uppercase letters, and the identity as "1".  Internally a word is a ``bytes``
object over letter indices 0..2r-1: index i < r is the i-th generator and
index r+i its inverse.  Everything is immutable, so words can be shared
freely between threads or processes.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import InputError

MAX_RANK = 26


class Alphabet:
    """The 2r letters of a rank-r free group, with the inverse involution."""

    __slots__ = ("rank", "_inverse_table")

    def __init__(self, rank: int):
        if not isinstance(rank, int) or not 1 <= rank <= MAX_RANK:
            raise InputError(f"rank must be an integer in [1, {MAX_RANK}], got {rank!r}")
        self.rank = rank
        table = bytearray(range(256))
        for i in range(2 * rank):
            table[i] = (i + rank) if i < rank else (i - rank)
        self._inverse_table = bytes(table)

    @property
    def size(self) -> int:
        """Number of letters, k = 2r."""
        return 2 * self.rank

    def inverse_letter(self, index: int) -> int:
        return index + self.rank if index < self.rank else index - self.rank

    def symbol(self, index: int) -> str:
        if not 0 <= index < 2 * self.rank:
            raise InputError(f"letter index {index} out of range for rank {self.rank}")
        if index < self.rank:
            return chr(ord("a") + index)
        return chr(ord("A") + index - self.rank)

    def index(self, symbol: str) -> int:
        code = ord(symbol) if len(symbol) == 1 else -1
        if ord("a") <= code < ord("a") + self.rank:
            return code - ord("a")
        if ord("A") <= code < ord("A") + self.rank:
            return code - ord("A") + self.rank
        raise InputError(f"unknown letter {symbol!r} for rank {self.rank}")

    @property
    def identity(self) -> Word:
        return Word(self)

    def word(self, text: str) -> Word:
        """Parse a word from its textual form, freely reducing it ("1" = identity)."""
        if text == "1" or text == "":
            return Word(self)
        return Word(self, (self.index(ch) for ch in text))

    def generator(self, i: int) -> Word:
        if not 0 <= i < self.rank:
            raise InputError(f"no generator {i} in rank {self.rank}")
        return Word._wrap(self, bytes((i,)))

    def generators(self) -> tuple[Word, ...]:
        return tuple(self.generator(i) for i in range(self.rank))

    def invert_bytes(self, letters: bytes) -> bytes:
        """Letterwise inverse of a raw byte string (does not reverse it)."""
        return letters.translate(self._inverse_table)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and other.rank == self.rank

    def __hash__(self) -> int:
        return hash(("Alphabet", self.rank))

    def __repr__(self) -> str:
        return f"Alphabet(rank={self.rank})"


def _reduce(alphabet: Alphabet, raw: Iterable[int]) -> bytes:
    """Free reduction of a raw letter-index sequence (stack scan)."""
    k = alphabet.size
    inv = alphabet.inverse_letter
    out: list[int] = []
    for c in raw:
        if not 0 <= c < k:
            raise InputError(f"letter index {c} out of range for rank {alphabet.rank}")
        if out and out[-1] == inv(c):
            out.pop()
        else:
            out.append(c)
    return bytes(out)


class Word:
    """A freely reduced word; a value type with structural equality."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: Alphabet, raw: Iterable[int] = ()):
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "letters", _reduce(alphabet, raw))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def _wrap(cls, alphabet: Alphabet, letters: bytes) -> Word:
        """Wrap an already-reduced byte string without re-checking it."""
        w = object.__new__(cls)
        object.__setattr__(w, "alphabet", alphabet)
        object.__setattr__(w, "letters", letters)
        return w

    # -- basic protocol ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Word)
                and other.alphabet.rank == self.alphabet.rank
                and other.letters == self.letters)

    def __hash__(self) -> int:
        return hash((self.alphabet.rank, self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(self.alphabet.symbol(c) for c in self.letters)

    def __repr__(self) -> str:
        return f"Word({self})"

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word._wrap(self.alphabet, self.letters[i])
        return self.letters[i]

    # -- group operations ---------------------------------------------------

    def _check_same_alphabet(self, other: Word) -> None:
        if self.alphabet.rank != other.alphabet.rank:
            raise InputError("words come from alphabets of different rank")

    def __mul__(self, other: Word) -> Word:
        """Product with free reduction; only boundary letters can cancel."""
        self._check_same_alphabet(other)
        a, b = self.letters, other.letters
        inv = self.alphabet.inverse_letter
        i, j = len(a), 0
        while i > 0 and j < len(b) and a[i - 1] == inv(b[j]):
            i -= 1
            j += 1
        return Word._wrap(self.alphabet, a[:i] + b[j:])

    def inverse(self) -> Word:
        return Word._wrap(self.alphabet,
                          self.alphabet.invert_bytes(self.letters)[::-1])

    def __invert__(self) -> Word:
        return self.inverse()

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return self.inverse() ** (-n)
        result = Word._wrap(self.alphabet, b"")
        for _ in range(n):
            result = result * self
        return result

    def conjugate_by(self, c: Word) -> Word:
        """c * self * c^-1."""
        return c * self * c.inverse()

    def cyclic_reduce(self) -> tuple[Word, Word]:
        """Split self = conjugator * core * conjugator^-1 with core cyclically reduced."""
        letters = self.letters
        inv = self.alphabet.inverse_letter
        i, j = 0, len(letters)
        while j - i >= 2 and letters[i] == inv(letters[j - 1]):
            i += 1
            j -= 1
        return (Word._wrap(self.alphabet, letters[i:j]),
                Word._wrap(self.alphabet, letters[:i]))

    def is_cyclically_reduced(self) -> bool:
        letters = self.letters
        if len(letters) < 2:
            return True
        return letters[0] != self.alphabet.inverse_letter(letters[-1])

    def is_conjugate(self, other: Word) -> bool:
        """Conjugacy test: cyclically reduced cores must be rotations of each other."""
        self._check_same_alphabet(other)
        core_u, _ = self.cyclic_reduce()
        core_v, _ = other.cyclic_reduce()
        if len(core_u) != len(core_v):
            return False
        if not core_u.letters:
            return True
        return core_v.letters in core_u.letters + core_u.letters

    def exponent_sums(self) -> tuple[int, ...]:
        """Image in the abelianization: one signed letter count per generator."""
        sums = [0] * self.alphabet.rank
        for c in self.letters:
            if c < self.alphabet.rank:
                sums[c] += 1
            else:
                sums[c - self.alphabet.rank] -= 1
        return tuple(sums)


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()
