"""
Temperley–Lieb diagram algebra TL_n(A), the Kauffman-bracket images of braid generators and the
link-pattern (cup diagram) modules on which the Jones representations act.

A diagram on n strands has 2n boundary points: top points 0..n-1 from left to right and bottom
points n..2n-1 from left to right. ``match[k]`` is the partner of point k. The product ``x * y``
stacks x on top of y, so that x·y acts on a module element v as x(y(v)).

Coefficients may be complex numbers (a specialised A) or :class:`LaurentPoly` values (A kept as
a formal variable). With loop value δ = -A² - A⁻² the Kauffman map σ_i -> A + A⁻¹e_i respects
all braid relations.
"""

from __future__ import annotations

import cmath
import dataclasses
import math
import re
from typing import Any, Iterator, Mapping, Union

from .errors import InvalidInputError


@dataclasses.dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in A, stored as sorted (exponent, coefficient) pairs."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> LaurentPoly:
        return cls(tuple(sorted((e, c) for e, c in d.items() if c)))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls.from_dict({exponent: coeff})

    @classmethod
    def coerce(cls, x: Any) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.monomial(0, x)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: Any) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: Any) -> LaurentPoly:
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Any) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Any) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only unit monomials are invertible")
            (e, c), = self.terms
            return LaurentPoly.monomial(e * k, c ** -k)
        out = LaurentPoly.monomial(0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def evaluate(self, a: complex) -> complex:
        return sum(c * a ** e for e, c in self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*A^{e}" for e, c in self.terms)


A = LaurentPoly.monomial(1)

Scalar = Union[complex, LaurentPoly]


@dataclasses.dataclass(frozen=True)
class TLParams:
    """Specialisation of A to a point on the unit circle."""

    a_value: complex

    def __post_init__(self) -> None:
        a = complex(self.a_value)
        if abs(abs(a) - 1) > 1e-12:
            raise InvalidInputError(f"|A| must be 1, got |A| = {abs(a)}")
        object.__setattr__(self, "a_value", a)

    @classmethod
    def from_angle(cls, theta: float) -> TLParams:
        return cls(cmath.exp(1j * theta))

    @property
    def a(self) -> complex:
        return self.a_value

    @property
    def a_inv(self) -> complex:
        return self.a_value.conjugate()

    @property
    def loop_value(self) -> float:
        return (-(self.a ** 2) - self.a_inv ** 2).real

    @property
    def delta(self) -> float:
        return self.loop_value

    @property
    def q(self) -> complex:
        """Hecke parameter A⁻⁴."""
        return self.a_inv ** 4


@dataclasses.dataclass(frozen=True)
class SymbolicParams:
    """A kept as a formal variable; coefficients are exact Laurent polynomials."""

    @property
    def a(self) -> LaurentPoly:
        return A

    @property
    def a_inv(self) -> LaurentPoly:
        return LaurentPoly.monomial(-1)

    @property
    def delta(self) -> LaurentPoly:
        return LaurentPoly.from_dict({2: -1, -2: -1})


DEFAULT_PARAMS = TLParams.from_angle(2 * math.pi / 5)


def parse_angle(text: str) -> float:
    """Parse an angle like ``2pi/5``, ``-pi/5``, ``0.4pi`` or plain radians ``1.2566``."""
    s = text.replace(" ", "").replace("π", "pi").lower()
    m = re.fullmatch(r"([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\*?pi(?:/([+-]?\d+(?:\.\d*)?))?", s)
    if m:
        coeff = m.group(1)
        if coeff in ("", "+"):
            num = 1.0
        elif coeff == "-":
            num = -1.0
        else:
            num = float(coeff)
        den = float(m.group(2)) if m.group(2) else 1.0
        if den == 0:
            raise InvalidInputError(f"zero denominator in angle {text!r}")
        return num * math.pi / den
    try:
        return float(s)
    except ValueError:
        raise InvalidInputError(f"cannot parse angle {text!r}") from None


# --- diagrams -----------------------------------------------------------------

def _boundary_position(k: int, n: int) -> int:
    # cyclic order around the rectangle: top left-to-right, then bottom right-to-left
    return k if k < n else 3 * n - 1 - k


@dataclasses.dataclass(frozen=True)
class PlanarDiagram:
    n: int
    match: tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(int(x) for x in self.match)
        object.__setattr__(self, "match", m)
        if len(m) != 2 * self.n:
            raise InvalidInputError(f"a diagram on {self.n} strands has {2 * self.n} points")
        for k, j in enumerate(m):
            if not 0 <= j < 2 * self.n or j == k or m[j] != k:
                raise InvalidInputError(f"not a perfect matching: {m}")
        chords = [tuple(sorted((_boundary_position(k, self.n), _boundary_position(j, self.n))))
                  for k, j in enumerate(m) if k < j]
        for (a, b) in chords:
            for (c, d) in chords:
                if a < c < b < d:
                    raise InvalidInputError(f"crossing pairs in {m}")

    @classmethod
    def identity(cls, n: int) -> PlanarDiagram:
        return cls(n, tuple(list(range(n, 2 * n)) + list(range(n))))

    @classmethod
    def e(cls, i: int, n: int) -> PlanarDiagram:
        """The generator e_i: cup joining i, i+1 at the top and at the bottom (1-based i)."""
        if not 1 <= i <= n - 1:
            raise InvalidInputError(f"generator e_{i} out of range for TL_{n}")
        m = list(cls.identity(n).match)
        t, b = i - 1, n + i - 1
        m[t], m[t + 1] = t + 1, t
        m[b], m[b + 1] = b + 1, b
        return cls(n, tuple(m))

    def through_strands(self) -> int:
        return sum(1 for k in range(self.n) if self.match[k] >= self.n)


def compose_diagrams(x: PlanarDiagram, y: PlanarDiagram) -> tuple[PlanarDiagram, int]:
    """Stack x over y. Returns the resulting diagram and the number of closed loops."""
    n = x.n
    result = [-1] * (2 * n)
    visited = [False] * n

    def walk(diagram_is_x: bool, point: int) -> int:
        while True:
            if diagram_is_x:
                q = x.match[point]
                if q < n:
                    return q
                visited[q - n] = True
                diagram_is_x, point = False, q - n
            else:
                q = y.match[point]
                if q >= n:
                    return q
                visited[q] = True
                diagram_is_x, point = True, n + q

    for k in range(n):
        if result[k] < 0:
            end = walk(True, k)
            result[k] = end
            result[end] = k
    for k in range(n, 2 * n):
        if result[k] < 0:
            end = walk(False, k)
            result[k] = end
            result[end] = k

    loops = 0
    for start in range(n):
        if visited[start]:
            continue
        loops += 1
        mid = start
        while not visited[mid]:
            visited[mid] = True
            nxt = y.match[mid]          # a y-cap joining two middle points
            visited[nxt] = True
            mid = x.match[n + nxt] - n  # an x-cup back to the middle
    return PlanarDiagram(n, tuple(result)), loops


# --- algebra elements ---------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class TLElement:
    strand_count: int
    terms: Mapping[PlanarDiagram, Scalar]

    def __post_init__(self) -> None:
        pruned = {d: c for d, c in self.terms.items() if c != 0}
        for d in pruned:
            if d.n != self.strand_count:
                raise InvalidInputError("diagram strand count differs from element")
        object.__setattr__(self, "terms", pruned)

    @classmethod
    def identity(cls, n: int, one: Scalar = 1) -> TLElement:
        return cls(n, {PlanarDiagram.identity(n): one})

    @classmethod
    def generator(cls, i: int, n: int, one: Scalar = 1) -> TLElement:
        return cls(n, {PlanarDiagram.e(i, n): one})

    def __add__(self, other: TLElement) -> TLElement:
        _check_same(self, other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d[k] + c if k in d else c
        return TLElement(self.strand_count, d)

    def scale(self, c: Scalar) -> TLElement:
        return TLElement(self.strand_count, {d: c * v for d, v in self.terms.items()})

    def __sub__(self, other: TLElement) -> TLElement:
        return self + other.scale(-1)

    def is_close(self, other: TLElement, tol: float = 1e-12) -> bool:
        diff = self - other
        return all(abs(c) <= tol for c in diff.terms.values())

    def __iter__(self) -> Iterator[tuple[PlanarDiagram, Scalar]]:
        return iter(self.terms.items())


def _check_same(x: TLElement, y: TLElement) -> None:
    if x.strand_count != y.strand_count:
        raise InvalidInputError(f"strand count mismatch: {x.strand_count} vs {y.strand_count}")


def tl_multiply(x: TLElement, y: TLElement, params: TLParams | SymbolicParams) -> TLElement:
    _check_same(x, y)
    delta = params.delta
    out: dict[PlanarDiagram, Scalar] = {}
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            d, loops = compose_diagrams(dx, dy)
            c = cx * cy * delta ** loops if loops else cx * cy
            out[d] = out[d] + c if d in out else c
    return TLElement(x.strand_count, out)


def kauffman_sigma(i: int, n: int, params: TLParams | SymbolicParams, sign: int = 1) -> TLElement:
    """σ_i -> A·1 + A⁻¹·e_i and σ_i⁻¹ -> A⁻¹·1 + A·e_i."""
    if sign not in (1, -1):
        raise InvalidInputError("sign must be +1 or -1")
    if not 1 <= i <= n - 1:
        raise InvalidInputError(f"σ_{i} out of range for B_{n}")
    a, a_inv = (params.a, params.a_inv) if sign > 0 else (params.a_inv, params.a)
    return TLElement(n, {PlanarDiagram.identity(n): a, PlanarDiagram.e(i, n): a_inv})


def kauffman_word(word, params: TLParams | SymbolicParams) -> TLElement:
    """Image of a :class:`~braidforge.braids.BraidWord` in TL_n."""
    n = word.strand_count
    one = 1 if isinstance(params, TLParams) else LaurentPoly.monomial(0)
    out = TLElement.identity(n, one)
    for i, s in word.letters:
        out = tl_multiply(out, kauffman_sigma(i, n, params, s), params)
    return out


# --- link-pattern modules -----------------------------------------------------

LinkState = tuple[int, ...]  # partner index per point, -1 for a through strand


def link_pattern_module(n: int, p: int) -> list[LinkState]:
    """Noncrossing cup configurations on n points with p through strands not nested in cups."""
    if n < 1 or p < 0 or p > n or (n - p) % 2:
        raise InvalidInputError(f"no link-pattern module with n={n}, p={p}")
    out: list[LinkState] = []

    def build(k: int, state: list[int], stack: list[int], through: int) -> None:
        remaining = n - k
        if remaining < len(stack) + (p - through):
            return
        if k == n:
            if not stack and through == p:
                out.append(tuple(state))
            return
        if stack:
            j = stack.pop()
            state[j], state[k] = k, j
            build(k + 1, state, stack, through)
            state[j] = state[k] = -1
            stack.append(j)
        stack.append(k)
        build(k + 1, state, stack, through)
        stack.pop()
        if not stack and through < p:
            build(k + 1, state, stack, through + 1)

    build(0, [-1] * n, [], 0)
    return sorted(out)


def act_on_state(d: PlanarDiagram, v: LinkState) -> tuple[LinkState, int] | None:
    """Place d on top of the cup state v. Returns (state, closed loops), or None when two
    through strands get joined (the result lies in a smaller module and is zero here)."""
    n = d.n
    result = [-1] * n
    visited = [False] * n
    through_in = sum(1 for x in v if x < 0)
    through_out = 0
    for k in range(n):
        if result[k] != -1:
            continue
        point = k
        while True:
            q = d.match[point]
            if q < n:
                result[k], result[q] = q, k
                break
            b = q - n
            visited[b] = True
            partner = v[b]
            if partner < 0:
                result[k] = -2  # through strand, fixed below
                through_out += 1
                break
            visited[partner] = True
            point = n + partner
    if through_out != through_in:
        return None
    loops = 0
    for start in range(n):
        if visited[start]:
            continue
        loops += 1
        b = start
        while not visited[b]:
            visited[b] = True
            partner = v[b]
            visited[partner] = True
            b = d.match[n + partner] - n
    return tuple(-1 if x == -2 else x for x in result), loops


def pairing(v: LinkState, w: LinkState) -> tuple[bool, int]:
    """Glue v to the mirror image of w. Returns (through strands matched across, loops)."""
    n = len(v)
    seen = [False] * n
    for start in range(n):
        if v[start] >= 0 or seen[start]:
            continue
        b = start
        while True:
            seen[b] = True
            q = w[b]
            if q < 0:
                break
            seen[q] = True
            b = v[q]
            if b < 0:
                return False, 0
    loops = 0
    for start in range(n):
        if seen[start]:
            continue
        loops += 1
        b = start
        while not seen[b]:
            seen[b] = True
            q = w[b]
            seen[q] = True
            b = v[q]
    return True, loops
