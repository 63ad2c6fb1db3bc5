"""
Braid words over the Artin presentation of B_n and their left Garside normal form.

A braid on n strands is written as a word in σ_1, ..., σ_{n-1} and their inverses. Letters are
pairs ``(i, sign)`` with 1-based generator index ``i`` and ``sign`` in {+1, -1}; the empty word is
the identity braid.

Equality of braids is decided by the left-greedy normal form Δ^d · s_1 ⋯ s_k, where Δ is the
half twist and each s_j is a simple braid, i.e. a positive braid in which every pair of strands
crosses at most once. Simple braids are in bijection with permutations, so the factors are stored
as :class:`Permutation` values.

Permutation convention: ``images`` is the list obtained by starting from (1, ..., n) and swapping
the entries in positions i, i+1 for each letter σ_i^{±1} read left to right. The map
``k -> images[k-1]`` sends σ_1σ_2 in B_3 to the cycle 1→2→3→1, and the image of a product is the
composition ``perm(a) ∘ perm(b)``.
"""

from __future__ import annotations

import dataclasses
import functools
from typing import Iterable, Sequence

from .errors import InvalidInputError

Letter = tuple[int, int]


@dataclasses.dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidInputError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int) -> Permutation:
        """The transposition (i, i+1) on n letters."""
        return cls(_swap_positions(tuple(range(1, n + 1)), i))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def compose(self, other: Permutation) -> Permutation:
        """Return ``self ∘ other`` (apply ``other`` first)."""
        if self.size != other.size:
            raise InvalidInputError("permutations act on different sets")
        return Permutation(_compose(self.images, other.images))

    def inverse(self) -> Permutation:
        return Permutation(_inverse(self.images))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.size + 1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles including fixed points, each starting at its smallest element."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cycle = []
            k = start
            while k not in seen:
                seen.add(k)
                cycle.append(k)
                k = self(k)
            out.append(tuple(cycle))
        return out

    def length(self) -> int:
        """Number of inversions, equal to the letter count of the corresponding simple braid."""
        p = self.images
        return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])


def _swap_positions(p: tuple[int, ...], i: int) -> tuple[int, ...]:
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple(q)


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[x - 1] for x in b)


def _inverse(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for k, x in enumerate(a, start=1):
        inv[x - 1] = k
    return tuple(inv)


@dataclasses.dataclass(frozen=True)
class BraidWord:
    strand_count: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if self.strand_count < 1:
            raise InvalidInputError(f"strand count must be >= 1, got {self.strand_count}")
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        for i, s in letters:
            if not 1 <= i <= self.strand_count - 1:
                raise InvalidInputError(
                    f"generator index {i} out of range for {self.strand_count} strands")
            if s not in (1, -1):
                raise InvalidInputError(f"letter sign must be +1 or -1, got {s}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, n: int) -> BraidWord:
        return cls(n, ())

    @classmethod
    def from_signed(cls, n: int, signed: Iterable[int]) -> BraidWord:
        """Build from signed indices, e.g. ``[1, 2, -1]`` for σ_1σ_2σ_1^{-1}."""
        letters = []
        for x in signed:
            x = int(x)
            if x == 0:
                raise InvalidInputError("generator index 0 is not allowed")
            letters.append((abs(x), 1 if x > 0 else -1))
        return cls(n, tuple(letters))

    @classmethod
    def parse(cls, text: str, n: int) -> BraidWord:
        """Parse whitespace-separated signed integers such as ``"1 2 -1"``."""
        try:
            signed = [int(tok) for tok in text.split()]
        except ValueError as exc:
            raise InvalidInputError(f"cannot parse braid word {text!r}: {exc}") from None
        return cls.from_signed(n, signed)

    def signed(self) -> list[int]:
        return [i * s for i, s in self.letters]

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.signed())

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return compose(self, other)

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else invert(self)
        return BraidWord(self.strand_count, base.letters * abs(k))


def compose(w1: BraidWord, w2: BraidWord) -> BraidWord:
    if w1.strand_count != w2.strand_count:
        raise InvalidInputError(
            f"strand count mismatch: {w1.strand_count} vs {w2.strand_count}")
    return BraidWord(w1.strand_count, w1.letters + w2.letters)


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(w.strand_count, tuple((i, -s) for i, s in reversed(w.letters)))


def underlying_permutation(w: BraidWord) -> Permutation:
    p = tuple(range(1, w.strand_count + 1))
    for i, _ in w.letters:
        p = _swap_positions(p, i)
    return Permutation(p)


@dataclasses.dataclass(frozen=True)
class GarsideForm:
    """Left normal form Δ^delta_power · factors[0] ⋯ factors[-1]."""

    strand_count: int
    delta_power: int
    factors: tuple[Permutation, ...] = ()

    def to_word(self) -> BraidWord:
        """A word representing this braid; its normal form is ``self`` again."""
        n = self.strand_count
        delta = _reduced_word(_delta(n))
        if self.delta_power >= 0:
            letters = [(i, 1) for i in delta] * self.delta_power
        else:
            letters = [(i, -1) for i in reversed(delta)] * -self.delta_power
        for f in self.factors:
            letters.extend((i, 1) for i in _reduced_word(f.images))
        return BraidWord(n, tuple(letters))

    def canonical_length(self) -> int:
        return len(self.factors)

    def as_key(self) -> tuple:
        return (self.strand_count, self.delta_power, tuple(f.images for f in self.factors))


def _delta(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def _reduced_word(p: Sequence[int]) -> list[int]:
    """Positive generator indices of a reduced word for the simple braid with permutation ``p``."""
    q = list(p)
    word: list[int] = []
    while True:
        for i in range(len(q) - 1):
            if q[i] > q[i + 1]:
                q[i], q[i + 1] = q[i + 1], q[i]
                word.append(i + 1)
                break
        else:
            return word[::-1]


def _right_descents(a: tuple[int, ...]) -> set[int]:
    return {i for i in range(1, len(a)) if a[i - 1] > a[i]}


def _left_descents(b: tuple[int, ...]) -> set[int]:
    pos = _inverse(b)
    return {i for i in range(1, len(b)) if pos[i] < pos[i - 1]}


def _left_weight(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # Slide generators from the front of b onto a until every left descent of b is a right
    # descent of a. a·σ_i stays simple exactly when i is not already a right descent of a.
    while True:
        movable = _left_descents(b) - _right_descents(a)
        if not movable:
            return a, b
        i = min(movable)
        a = _swap_positions(a, i)
        # b = σ_i · b'  =>  perm(b') = s_i ∘ perm(b): swap the values i and i+1 in b.
        b = tuple(i + 1 if x == i else i if x == i + 1 else x for x in b)


@functools.lru_cache(maxsize=65536)
def _normal_form(n: int, letters: tuple[Letter, ...]) -> tuple[int, tuple[tuple[int, ...], ...]]:
    delta = _delta(n)
    ident = tuple(range(1, n + 1))
    power = 0
    # σ_i^{-1} = Δ^{-1} · (Δσ_i^{-1}); moving Δ^{-1} left past y turns y into ΔyΔ^{-1}. Conjugation
    # by Δ commutes with left-weighting, so factors are kept untwisted and flipped once at the end.
    twisted = False
    factors: list[tuple[int, ...]] = []
    for i, s in letters:
        if s > 0:
            x = _swap_positions(ident, i)
        else:
            twisted = not twisted
            power -= 1
            x = _swap_positions(delta, i)
        if twisted:
            x = _compose(delta, _compose(x, delta))
        # right-multiply a left-weighted sequence by a simple x: one sweep from the right
        factors.append(x)
        for k in range(len(factors) - 2, -1, -1):
            a, b = _left_weight(factors[k], factors[k + 1])
            if a == factors[k]:
                break
            factors[k], factors[k + 1] = a, b
        if factors[-1] == ident:
            factors.pop()
    if twisted:
        factors = [_compose(delta, _compose(f, delta)) for f in factors]
    lo = 0
    while lo < len(factors) and factors[lo] == delta:
        lo += 1
    return power + lo, tuple(factors[lo:])


def garside_normal_form(w: BraidWord) -> GarsideForm:
    power, factors = _normal_form(w.strand_count, w.letters)
    return GarsideForm(w.strand_count, power, tuple(Permutation(f) for f in factors))


def words_equal(w1: BraidWord, w2: BraidWord) -> bool:
    if w1.strand_count != w2.strand_count:
        raise InvalidInputError(
            f"strand count mismatch: {w1.strand_count} vs {w2.strand_count}")
    return _normal_form(w1.strand_count, w1.letters) == _normal_form(w2.strand_count, w2.letters)


def canonical_word(w: BraidWord) -> BraidWord:
    """The word read off the normal form; equal braids give identical words."""
    return garside_normal_form(w).to_word()


def generators(n: int) -> list[BraidWord]:
    return [BraidWord(n, ((i, 1),)) for i in range(1, n)]


def half_twist(n: int) -> BraidWord:
    return GarsideForm(n, 1).to_word()
