"""Piece detection: subwords occurring in at least two distinct ways.

An occurrence of v in u is a triple (word index, position, orientation);
orientation "inverted" means v^-1 appears at that position.  Overlapping
occurrences count, and a forward plus an inverted occurrence at different
positions counts.  The longest-piece scan is kernel-accelerated for single
words; the exhaustive-subword oracle in the test suite pins its semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _kernels
from .errors import InputError
from .words import Word

_SEP = 0xFF


@dataclass(frozen=True)
class Occurrence:
    word_index: int
    position: int
    inverted: bool


@dataclass(frozen=True)
class PieceReport:
    """Longest-piece statistics of a word or tuple of words.

    ratio is piece length over the length of the component holding the
    first witness occurrence (0 when there is no piece).
    """
    length: int
    witness: tuple[Word, Occurrence, Occurrence] | None
    ratio: Fraction


def _occurrences_across(words: Sequence[Word], v: Word) -> list[Occurrence]:
    target = v.letters
    target_inv = v.inverse().letters
    L = len(target)
    out: list[Occurrence] = []
    for idx, w in enumerate(words):
        letters = w.letters
        for p in range(len(letters) - L + 1):
            seg = letters[p:p + L]
            if seg == target:
                out.append(Occurrence(idx, p, False))
            if seg == target_inv:
                out.append(Occurrence(idx, p, True))
    return out


def occurrences(u: Word, v: Word) -> list[Occurrence]:
    """All occurrences of v (or v^-1) as a contiguous subword of u."""
    if len(v) == 0:
        raise InputError("pieces are non-trivial: v must be non-empty")
    if u.alphabet.rank != v.alphabet.rank:
        raise InputError("words come from alphabets of different rank")
    return _occurrences_across([u], v)


def is_piece(u: Word, v: Word) -> bool:
    return len(occurrences(u, v)) >= 2


def _tuple_repeat(docs: list[bytes], length: int) -> bool:
    seen: set[bytes] = set()
    add = seen.add
    for doc in docs:
        for p in range(len(doc) - length + 1):
            key = doc[p:p + length]
            if key in seen:
                return True
            add(key)
    return False


def _tuple_piece_len(words: Sequence[Word]) -> int:
    docs = []
    for w in words:
        docs.append(w.letters)
        docs.append(w.inverse().letters)
    if len(words) == 1:
        hi = len(words[0]) - 1
    else:
        hi = max(len(w) for w in words)
    best, lo = 0, 1
    while lo <= hi:
        mid = (lo + hi) // 2
        if _tuple_repeat(docs, mid):
            best = mid
            lo = mid + 1
        else:
            hi = mid - 1
    return best


def _find_witness(words: Sequence[Word], length: int):
    """First (by scan order) subword of the given length with two occurrences."""
    for idx, w in enumerate(words):
        for p in range(len(w) - length + 1):
            v = w[p:p + length]
            occs = _occurrences_across(words, v)
            if len(occs) >= 2:
                return v, occs[0], occs[1]
    return None


def _report(words: Sequence[Word], length: int) -> PieceReport:
    if length == 0:
        return PieceReport(0, None, Fraction(0))
    witness = _find_witness(words, length)
    assert witness is not None
    component = words[witness[1].word_index]
    return PieceReport(length, witness, Fraction(length, len(component)))


def longest_piece(u: Word) -> PieceReport:
    """Longest piece of a single word (length 0, no witness, if none)."""
    length = _kernels.piece_len(u.letters, u.alphabet.rank)
    return _report([u], length)


def longest_piece_tuple(words: Sequence[Word]) -> PieceReport:
    """Longest subword occurring two distinct ways anywhere in the tuple."""
    words = list(words)
    if not words:
        raise InputError("longest_piece_tuple needs a non-empty tuple")
    ranks = {w.alphabet.rank for w in words}
    if len(ranks) != 1:
        raise InputError("tuple components come from alphabets of different rank")
    if len(words) == 1:
        return longest_piece(words[0])
    return _report(words, _tuple_piece_len(words))
