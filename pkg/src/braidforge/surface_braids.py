"""
Braided surfaces as branched-cover monodromy: braid systems, the Hurwitz action and its orbits,
boundary braids, braid representations of loops and Riemann–Hurwitz bookkeeping.

A braid system (β_1, ..., β_n) in B_m^n lists the local monodromies around the n branch points of
an m-sheeted braided surface over a disc. Each β_k is a band generator w σ_i^{±1} w^{-1}; entries
are stored in that form so the band-generator condition holds by construction.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from typing import Sequence

from .braids import (
    BraidWord,
    Permutation,
    canonical_word,
    compose,
    garside_normal_form,
    invert,
    underlying_permutation,
)
from .errors import InvalidInputError


@dataclasses.dataclass(frozen=True)
class BandGenerator:
    conjugator: BraidWord
    index: int
    sign: int = 1

    def __post_init__(self) -> None:
        if not 1 <= self.index <= self.conjugator.strand_count - 1:
            raise InvalidInputError(
                f"band index {self.index} out of range for {self.conjugator.strand_count} strands")
        if self.sign not in (1, -1):
            raise InvalidInputError(f"band sign must be +1 or -1, got {self.sign}")

    @property
    def strand_count(self) -> int:
        return self.conjugator.strand_count

    def as_word(self) -> BraidWord:
        w = self.conjugator
        return BraidWord(w.strand_count, w.letters + ((self.index, self.sign),) + invert(w).letters)

    def conjugated_by(self, w: BraidWord) -> BandGenerator:
        """The band generator w β w^{-1}, with its conjugator canonicalised."""
        return BandGenerator(canonical_word(compose(w, self.conjugator)), self.index, self.sign)

    def key(self) -> tuple:
        return garside_normal_form(self.as_word()).as_key()


@dataclasses.dataclass(frozen=True)
class BraidSystem:
    degree: int
    entries: tuple[BandGenerator, ...] = ()

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise InvalidInputError("degree must be >= 1")
        object.__setattr__(self, "entries", tuple(self.entries))
        for e in self.entries:
            if e.strand_count != self.degree:
                raise InvalidInputError(
                    f"entry on {e.strand_count} strands in a degree-{self.degree} system")

    def __len__(self) -> int:
        return len(self.entries)

    def key(self) -> tuple:
        """Canonical key: the normal forms of the expanded entries."""
        return tuple(e.key() for e in self.entries)

    @classmethod
    def parse(cls, text: str) -> BraidSystem:
        """Parse ``degree m`` followed by lines ``conjugator-word | index sign``."""
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise InvalidInputError("empty braid-system file")
        head = lines[0].split()
        if len(head) != 2 or head[0] != "degree":
            raise InvalidInputError(f"expected 'degree m' on the first line, got {lines[0]!r}")
        try:
            m = int(head[1])
        except ValueError:
            raise InvalidInputError(f"bad degree {head[1]!r}") from None
        entries = []
        for ln in lines[1:]:
            if ln.count("|") != 1:
                raise InvalidInputError(f"expected 'conjugator | index sign', got {ln!r}")
            conj_text, band_text = ln.split("|")
            band = band_text.split()
            if len(band) != 2:
                raise InvalidInputError(f"expected 'index sign' after '|', got {band_text!r}")
            try:
                index, sign = int(band[0]), int(band[1])
            except ValueError:
                raise InvalidInputError(f"bad band data {band_text!r}") from None
            entries.append(BandGenerator(BraidWord.parse(conj_text, m), index, sign))
        return cls(m, tuple(entries))

    def dumps(self) -> str:
        lines = [f"degree {self.degree}"]
        for e in self.entries:
            lines.append(f"{e.conjugator} | {e.index} {e.sign}".strip())
        return "\n".join(lines) + "\n"


@dataclasses.dataclass(frozen=True)
class CoverReport:
    degree: int
    base_euler: int
    branch_count: int
    cover_euler: int
    transitive: bool
    notes: tuple[str, ...] = ()


@dataclasses.dataclass(frozen=True)
class MultisectionSpec:
    sections: int
    cone_order: int

    def __post_init__(self) -> None:
        if self.sections < 1:
            raise InvalidInputError(f"need at least one section, got {self.sections}")
        if self.cone_order < 2:
            raise InvalidInputError(f"cone order must be >= 2, got {self.cone_order}")


@dataclasses.dataclass(frozen=True)
class OrbitResult:
    size: int
    truncated: bool
    keys: frozenset


def standard_braid_system(m: int) -> BraidSystem:
    """(σ_1, ..., σ_{m-1}): the standard braided surface of degree m with m - 1 branch points."""
    if m < 2:
        raise InvalidInputError(f"degree must be >= 2, got {m}")
    ident = BraidWord.identity(m)
    return BraidSystem(m, tuple(BandGenerator(ident, i, 1) for i in range(1, m)))


def boundary_braid(bs: BraidSystem) -> BraidWord:
    letters: tuple = ()
    for e in bs.entries:
        letters += e.as_word().letters
    return BraidWord(bs.degree, letters)


def hurwitz_act(i: int, bs: BraidSystem, inverse: bool = False) -> BraidSystem:
    """Apply the Hurwitz move σ_i (or σ_i^{-1} when ``inverse``) to a braid system.

    σ_i:      (.., β_i, β_{i+1}, ..) -> (.., β_i β_{i+1} β_i^{-1}, β_i, ..)
    σ_i^{-1}: (.., β_i, β_{i+1}, ..) -> (.., β_{i+1}, β_{i+1}^{-1} β_i β_{i+1}, ..)
    """
    n = len(bs.entries)
    if not 1 <= i <= n - 1:
        raise InvalidInputError(f"Hurwitz index {i} out of range for a system of length {n}")
    entries = list(bs.entries)
    a, b = entries[i - 1], entries[i]
    if inverse:
        entries[i - 1], entries[i] = b, a.conjugated_by(invert(b.as_word()))
    else:
        entries[i - 1], entries[i] = b.conjugated_by(a.as_word()), a
    return BraidSystem(bs.degree, tuple(entries))


def hurwitz_orbit(bs: BraidSystem, cap: int = 100_000) -> OrbitResult:
    """Breadth-first closure of ``bs`` under all Hurwitz moves and their inverses.

    Stops with ``truncated=True`` once more than ``cap`` distinct systems have been found.
    """
    if cap <= 0:
        raise InvalidInputError("cap must be positive")
    start = bs.key()
    seen = {start}
    queue = deque([bs])
    n = len(bs.entries)
    while queue:
        current = queue.popleft()
        for i in range(1, n):
            for inverse in (False, True):
                nxt = hurwitz_act(i, current, inverse)
                key = nxt.key()
                if key in seen:
                    continue
                if len(seen) >= cap:
                    return OrbitResult(len(seen), True, frozenset(seen))
                seen.add(key)
                queue.append(nxt)
    return OrbitResult(len(seen), False, frozenset(seen))


def orbit_size_formula(n: int) -> int:
    """Hurwitz orbit size (n+1)^{n-1} of the standard system (σ_1, ..., σ_n)."""
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    return (n + 1) ** (n - 1)


def braid_representation(bs: BraidSystem, loop: Sequence[int]) -> BraidWord:
    """Image of a loop γ_{k1}^{±1} γ_{k2}^{±1} ⋯ (signed 1-based indices) under ρ_S."""
    letters: tuple = ()
    for k in loop:
        if k == 0 or abs(k) > len(bs.entries):
            raise InvalidInputError(f"loop index {k} out of range for {len(bs.entries)} entries")
        w = bs.entries[abs(k) - 1].as_word()
        letters += (w if k > 0 else invert(w)).letters
    return BraidWord(bs.degree, letters)


def _transitive(degree: int, perms: Sequence[Permutation]) -> bool:
    parent = list(range(degree + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for k in range(1, degree + 1):
            parent[find(k)] = find(p(k))
    return len({find(k) for k in range(1, degree + 1)}) == 1


def monodromy_report(bs: BraidSystem, base_euler: int) -> CoverReport:
    """Riemann–Hurwitz data for the simple branched cover described by ``bs``.

    Every band generator is one simple branch point, so χ(S) = m·χ(Σ) - n.
    """
    perms = [underlying_permutation(e.as_word()) for e in bs.entries]
    notes = []
    if base_euler <= 0:
        notes.append("relation unchecked: base of positive genus")
    elif base_euler == 2:
        total = underlying_permutation(boundary_braid(bs))
        if not total.is_identity():
            notes.append("boundary monodromy is not trivial; no closed cover over the sphere")
    elif base_euler != 1:
        notes.append(f"base Euler characteristic {base_euler} is not that of a disc or closed surface")
    n = len(bs.entries)
    return CoverReport(
        degree=bs.degree, base_euler=base_euler, branch_count=n,
        cover_euler=bs.degree * base_euler - n,
        transitive=_transitive(bs.degree, perms), notes=tuple(notes))


def multisection_degree(ms: MultisectionSpec) -> int:
    """Sheets of the branched cover cut out by an ℓ-fold multisection of the ν-orbifold normal bundle."""
    return ms.sections * ms.cone_order


def multisection_braid_system(ms: MultisectionSpec) -> BraidSystem:
    """The standard braided surface of degree ℓν."""
    return standard_braid_system(multisection_degree(ms))
