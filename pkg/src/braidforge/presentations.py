"""
Finite group presentations: C-group checks, abelianization, orbifold quotients and the wreath
products G ≀ S_n that describe configuration braid groups of manifolds of dimension >= 3.

Words are tuples of nonzero signed generator indices, ``(1, 2, -1, -3)`` meaning x1 x2 x1^-1 x3^-1.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Iterable, Sequence

from .braids import Permutation
from .errors import InvalidInputError, UnsupportedGroupError

Word = tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: tuple[Word, ...] = ()

    def __post_init__(self) -> None:
        if self.generator_count < 0:
            raise InvalidInputError("generator count must be non-negative")
        rels = tuple(tuple(int(x) for x in r) for r in self.relators)
        for r in rels:
            _check_word(r, self.generator_count)
        object.__setattr__(self, "relators", rels)

    @classmethod
    def parse(cls, text: str) -> GroupPresentation:
        """First non-blank line: generator count. Each further line: one relator."""
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise InvalidInputError("empty presentation")
        try:
            count = int(lines[0])
            relators = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
        except ValueError as exc:
            raise InvalidInputError(f"malformed presentation: {exc}") from None
        return cls(count, tuple(relators))

    def dumps(self) -> str:
        body = [str(self.generator_count)]
        body.extend(" ".join(str(x) for x in r) for r in self.relators)
        return "\n".join(body) + "\n"

    def exponent_matrix(self) -> list[list[int]]:
        """Relator-by-generator matrix of exponent sums."""
        rows = []
        for r in self.relators:
            row = [0] * self.generator_count
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows


def _check_word(word: Sequence[int], generator_count: int) -> None:
    for x in word:
        if x == 0 or abs(x) > generator_count:
            raise InvalidInputError(
                f"letter {x} does not name one of {generator_count} generators")


@dataclasses.dataclass(frozen=True)
class AbelianizationResult:
    free_rank: int
    torsion_coefficients: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        tors = tuple(int(d) for d in self.torsion_coefficients)
        if self.free_rank < 0 or any(d < 2 for d in tors):
            raise InvalidInputError("invalid abelian invariants")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise InvalidInputError(f"torsion coefficients must form a divisibility chain: {tors}")
        object.__setattr__(self, "torsion_coefficients", tors)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion_coefficients)
        return " + ".join(parts) if parts else "0"


def smith_diagonal(matrix: Sequence[Sequence[int]], cols: int) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, each dividing the next."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]

        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # a remainder is smaller than the pivot: promote it and start over
                i, j = min(
                    [(i, t) for i in range(t + 1, rows) if a[i][t]]
                    + [(t, j) for j in range(t + 1, cols) if a[t][j]],
                    key=lambda ij: abs(a[ij[0]][ij[1]]))
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            # the pivot must divide every remaining entry
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def abelianization(p: GroupPresentation) -> AbelianizationResult:
    diag = smith_diagonal(p.exponent_matrix(), p.generator_count)
    return AbelianizationResult(
        free_rank=p.generator_count - len(diag),
        torsion_coefficients=tuple(d for d in diag if d > 1))


def validate_c_group(p: GroupPresentation) -> bool:
    """True iff every relator reads x_a x_b x_a^-1 x_c^-1 for some generators a, b, c."""
    for r in p.relators:
        if len(r) != 4:
            return False
        a, b, a_inv, c_inv = r
        if a <= 0 or b <= 0 or a_inv != -a or c_inv >= 0:
            return False
    return True


def orbifold_quotient(p: GroupPresentation, loops: Sequence[Sequence[int]],
                      exponents: Sequence[int]) -> GroupPresentation:
    """Add the relators loop_j^{ν_j}, killing the cone-point meridians' powers."""
    if len(loops) != len(exponents):
        raise InvalidInputError(
            f"{len(loops)} loops but {len(exponents)} exponents")
    extra = []
    for loop, nu in zip(loops, exponents):
        loop = tuple(int(x) for x in loop)
        _check_word(loop, p.generator_count)
        if int(nu) < 2:
            raise InvalidInputError(f"cone exponents must be >= 2, got {nu}")
        extra.append(loop * int(nu))
    return GroupPresentation(p.generator_count, p.relators + tuple(extra))


@dataclasses.dataclass(frozen=True)
class WreathGroupSpec:
    """G ≀ S_n with G cyclic; ``base_order`` None stands for the infinite cyclic group."""

    base_order: int | None
    copies: int
    report: str = ""

    def __post_init__(self) -> None:
        if self.base_order is not None and self.base_order < 1:
            raise InvalidInputError("base order must be >= 1")
        if self.copies < 1:
            raise InvalidInputError("number of copies must be >= 1")

    @property
    def order(self) -> int | float:
        if self.base_order is None:
            return math.inf
        return self.base_order ** self.copies * math.factorial(self.copies)

    @property
    def name(self) -> str:
        n = self.copies
        if self.base_order is None:
            return f"Z wr S_{n}"
        if self.base_order == 1:
            return f"S_{n}"
        return f"Z/{self.base_order} wr S_{n}"


@dataclasses.dataclass(frozen=True)
class WreathElement:
    labels: tuple[int, ...]
    perm: Permutation

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if len(self.labels) != self.perm.size:
            raise InvalidInputError("labels and permutation sizes differ")


def configuration_braid_group(pi1: AbelianizationResult | int | None, n: int) -> WreathGroupSpec:
    """Braid group of n points in X (dim X >= 3) as π1(X) ≀ S_n, for cyclic π1(X).

    ``pi1`` is either the abelian invariants of a group known to be cyclic, an integer order ν
    (1 for the trivial group) or ``None`` for Z.
    """
    if isinstance(pi1, AbelianizationResult):
        if pi1.free_rank == 1 and not pi1.torsion_coefficients:
            order = None
        elif pi1.free_rank == 0 and len(pi1.torsion_coefficients) <= 1:
            order = pi1.torsion_coefficients[0] if pi1.torsion_coefficients else 1
        else:
            raise UnsupportedGroupError(
                f"fundamental group {pi1} is not cyclic; only cyclic groups are supported")
    else:
        order = pi1
    base = "Z" if order is None else ("1" if order == 1 else f"Z/{order}")
    report = (f"pi_1(F_{n}) = {base}^{n}; 1 -> {base}^{n} -> B_{n} -> S_{n} -> 1; "
              f"pi_2(Conf_{n}) = pi_2(X)^{n}")
    return WreathGroupSpec(order, n, report)


def _check_element(x: WreathElement, spec: WreathGroupSpec) -> None:
    if len(x.labels) != spec.copies:
        raise InvalidInputError(
            f"element has {len(x.labels)} labels, group has {spec.copies} copies")


def _reduce(v: int, spec: WreathGroupSpec) -> int:
    return v if spec.base_order is None else v % spec.base_order


def wreath_identity(spec: WreathGroupSpec) -> WreathElement:
    return WreathElement((0,) * spec.copies, Permutation.identity(spec.copies))


def wreath_multiply(a: WreathElement, b: WreathElement, spec: WreathGroupSpec) -> WreathElement:
    """(f, π)(g, σ) = (f + π·g, π∘σ) with (π·g)_i = g_{π^{-1}(i)}."""
    _check_element(a, spec)
    _check_element(b, spec)
    pinv = a.perm.inverse()
    labels = tuple(_reduce(a.labels[i] + b.labels[pinv(i + 1) - 1], spec)
                   for i in range(spec.copies))
    return WreathElement(labels, a.perm.compose(b.perm))


def wreath_inverse(a: WreathElement, spec: WreathGroupSpec) -> WreathElement:
    _check_element(a, spec)
    # (f, π)^{-1} = (-π^{-1}·f, π^{-1}); (π^{-1}·f)_i = f_{π(i)}
    labels = tuple(_reduce(-a.labels[a.perm(i + 1) - 1], spec) for i in range(spec.copies))
    return WreathElement(labels, a.perm.inverse())


def c_group(generator_count: int, triples: Iterable[Sequence[int]]) -> GroupPresentation:
    """Presentation with one relator x_a x_b x_a^-1 x_c^-1 per triple (a, b, c)."""
    return GroupPresentation(generator_count, tuple((a, b, -a, -c) for a, b, c in triples))
