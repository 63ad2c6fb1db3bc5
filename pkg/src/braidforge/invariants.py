"""
Topological characteristic numbers of a 4-orbifold (M, Σ) whose singular set is a surface Σ
with cone angle 2π/ν, the topological Einstein-metric obstructions and connected sums.

Everything is exact: inputs are integers, outputs are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import dataclasses
import json
import logging
from fractions import Fraction
from typing import Any, Mapping

from .errors import InvalidInputError

log = logging.getLogger(__name__)

GEOMETRY_FIELDS = ("euler_M", "signature_M", "euler_Sigma", "self_intersection", "cone_order",
                   "sigma_orientable")


@dataclasses.dataclass(frozen=True)
class OrbifoldGeometry:
    euler_M: int
    signature_M: int
    euler_Sigma: int
    self_intersection: int
    cone_order: int
    sigma_orientable: bool = True

    def __post_init__(self) -> None:
        for name in GEOMETRY_FIELDS[:-1]:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidInputError(f"{name} must be an integer, got {value!r}")
        if not isinstance(self.sigma_orientable, bool):
            raise InvalidInputError("sigma_orientable must be a boolean")
        if self.cone_order < 2:
            raise InvalidInputError(f"cone_order must be >= 2, got {self.cone_order}")
        if self.sigma_orientable and (self.euler_Sigma > 2 or self.euler_Sigma % 2):
            raise InvalidInputError(
                f"an orientable closed surface has even Euler characteristic <= 2, "
                f"got {self.euler_Sigma}")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> OrbifoldGeometry:
        missing = [k for k in GEOMETRY_FIELDS[:-1] if k not in data]
        if missing:
            raise InvalidInputError(f"missing fields: {', '.join(missing)}")
        unknown = sorted(set(data) - set(GEOMETRY_FIELDS))
        if unknown:
            raise InvalidInputError(f"unknown fields: {', '.join(unknown)}")
        return cls(**{k: data[k] for k in GEOMETRY_FIELDS if k in data})

    @classmethod
    def from_json(cls, text: str) -> OrbifoldGeometry:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise InvalidInputError("geometry JSON must be an object")
        return cls.from_mapping(data)

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


def _cone_factor(g: OrbifoldGeometry) -> Fraction:
    return 1 - Fraction(1, g.cone_order)


def chi_orb(g: OrbifoldGeometry) -> Fraction:
    return g.euler_M - _cone_factor(g) * g.euler_Sigma


def tau_orb(g: OrbifoldGeometry) -> Fraction:
    return g.signature_M - Fraction(1, 3) * (1 - Fraction(1, g.cone_order ** 2)) * g.self_intersection


def index_K(g: OrbifoldGeometry) -> Fraction:
    """Index of the deformation complex of the edge-cone metric (topological side)."""
    return (Fraction(15 * g.euler_M - 29 * g.signature_M, 2)
            - 4 * g.euler_Sigma + 4 * g.self_intersection)


def satake_normal_euler(g: OrbifoldGeometry) -> Fraction:
    """Satake Euler number of the orbifold normal bundle: [Σ]² averaged over the Z/ν stabilizer."""
    return Fraction(g.self_intersection, g.cone_order)


def einstein_obstruction(g: OrbifoldGeometry) -> tuple[bool, bool]:
    """Check 2χ ± 3τ >= (1 - 1/ν)(2χ(Σ) ± (1 + 1/ν)[Σ]²) for both signs.

    ``True`` means the necessary condition for an Einstein edge-cone metric holds.
    """
    nu = Fraction(g.cone_order)
    results = []
    for sign in (1, -1):
        lhs = 2 * g.euler_M + sign * 3 * g.signature_M
        rhs = (1 - 1 / nu) * (2 * g.euler_Sigma + sign * (1 + 1 / nu) * g.self_intersection)
        results.append(lhs >= rhs)
    return results[0], results[1]


def seiberg_witten_excluded(c1_term_square: Fraction | int, omega_pairing: Fraction | int,
                            blowups: int) -> bool:
    """Whether M # ℓ·(-CP²) is excluded from carrying an Einstein edge-cone metric.

    ``c1_term_square`` and ``omega_pairing`` are (c1(M) - (1 - 1/ν)[Σ])² and its pairing with
    the symplectic class.
    """
    if blowups < 0:
        raise InvalidInputError("number of blow-ups must be >= 0")
    return Fraction(omega_pairing) < 0 and blowups >= Fraction(c1_term_square) / 3


def connected_sum(g1: OrbifoldGeometry, g2: OrbifoldGeometry) -> OrbifoldGeometry:
    if g1.cone_order != g2.cone_order:
        raise InvalidInputError(
            f"connected sum needs equal cone angles, got ν={g1.cone_order} and ν={g2.cone_order}")
    return OrbifoldGeometry(
        euler_M=g1.euler_M + g2.euler_M - 2,
        signature_M=g1.signature_M + g2.signature_M,
        euler_Sigma=g1.euler_Sigma + g2.euler_Sigma - 2,
        self_intersection=g1.self_intersection + g2.self_intersection,
        cone_order=g1.cone_order,
        sigma_orientable=g1.sigma_orientable and g2.sigma_orientable,
    )


@dataclasses.dataclass(frozen=True)
class InvariantReport:
    chi_orb: Fraction
    tau_orb: Fraction
    index_K: Fraction
    satake_normal_euler: Fraction
    einstein_plus_ok: bool
    einstein_minus_ok: bool
    warnings: tuple[str, ...] = ()

    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if isinstance(value, Fraction):
                value = str(value)
            elif isinstance(value, tuple):
                value = list(value)
            out[f.name] = value
        return out


def invariant_report(g: OrbifoldGeometry) -> InvariantReport:
    plus_ok, minus_ok = einstein_obstruction(g)
    index = index_K(g)
    warnings = []
    if index.denominator != 1:
        warnings.append(f"index_K = {index} is not an integer (15χ - 29τ is odd)")
    if not g.sigma_orientable:
        warnings.append("index_K evaluated unchanged for a non-orientable Σ")
    for w in warnings:
        log.warning(w)
    return InvariantReport(chi_orb(g), tau_orb(g), index, satake_normal_euler(g),
                           plus_ok, minus_ok, tuple(warnings))


def neutral_geometry(cone_order: int) -> OrbifoldGeometry:
    """(S⁴, unknotted S²): the unit for connected sum."""
    return OrbifoldGeometry(2, 0, 2, 0, cone_order, True)
