"""
Jones representations: Kauffman-bracket images of braid generators acting on a link-pattern
module of TL_n(A), and their unitarisation at unit-circle values of A.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

import numpy as np

from .braids import BraidWord
from .errors import InvalidInputError, NotUnitarizableError
from .temperley_lieb import (
    PlanarDiagram,
    TLParams,
    act_on_state,
    link_pattern_module,
    pairing,
)

UNITARY_TOL = 1e-10


@dataclasses.dataclass(frozen=True, eq=False)
class RepMatrices:
    strand_count: int
    through_strands: int
    dimension: int
    sigma_images: tuple[np.ndarray, ...]
    unitary: bool
    a_value: complex

    def __post_init__(self) -> None:
        for m in self.sigma_images:
            m.setflags(write=False)
        inverses = tuple(np.linalg.inv(m) for m in self.sigma_images)
        for m in inverses:
            m.setflags(write=False)
        object.__setattr__(self, "_inverses", inverses)

    def image(self, i: int, sign: int = 1) -> np.ndarray:
        """ρ(σ_i^{sign})."""
        if not 1 <= i <= self.strand_count - 1:
            raise InvalidInputError(f"σ_{i} out of range for B_{self.strand_count}")
        return self.sigma_images[i - 1] if sign > 0 else self._inverses[i - 1]  # type: ignore[attr-defined]

    def braid_residual(self) -> float:
        """Largest operator-norm violation of the Artin relations."""
        worst = 0.0
        s = self.sigma_images
        for a in range(len(s)):
            for b in range(a + 1, len(s)):
                if b == a + 1:
                    r = s[a] @ s[b] @ s[a] - s[b] @ s[a] @ s[b]
                else:
                    r = s[a] @ s[b] - s[b] @ s[a]
                worst = max(worst, float(np.linalg.norm(r, 2)))
        return worst

    def unitarity_residual(self) -> float:
        eye = np.eye(self.dimension)
        if not self.sigma_images:
            return 0.0
        return max(float(np.linalg.norm(m.conj().T @ m - eye, 2)) for m in self.sigma_images)


def tl_generator_matrix(i: int, n: int, basis: Sequence[tuple[int, ...]], delta: float) -> np.ndarray:
    """Matrix of e_i on the link-pattern basis (columns are images of basis vectors)."""
    index = {v: k for k, v in enumerate(basis)}
    e = PlanarDiagram.e(i, n)
    out = np.zeros((len(basis), len(basis)))
    for col, v in enumerate(basis):
        res = act_on_state(e, v)
        if res is not None:
            state, loops = res
            out[index[state], col] += delta ** loops
    return out


def gram_matrix(n: int, p: int, delta: float) -> np.ndarray:
    """Markov-trace pairing ⟨v, w⟩ = δ^{loops} when through strands match across, else 0."""
    basis = link_pattern_module(n, p)
    g = np.zeros((len(basis), len(basis)))
    for r, v in enumerate(basis):
        for c, w in enumerate(basis):
            ok, loops = pairing(v, w)
            if ok:
                g[r, c] = delta ** loops
    return g


def rep_matrices(n: int, p: int, params: TLParams) -> RepMatrices:
    """ρ(σ_i) = A·1 + A⁻¹·ρ(e_i) on the module with n points and p through strands."""
    basis = link_pattern_module(n, p)
    d = len(basis)
    eye = np.eye(d, dtype=complex)
    images = []
    for i in range(1, n):
        e = tl_generator_matrix(i, n, basis, params.delta)
        images.append(params.a * eye + params.a_inv * e)
    return RepMatrices(n, p, d, tuple(images), unitary=False, a_value=params.a)


def unitarize(rm: RepMatrices, params: TLParams) -> RepMatrices:
    """Conjugate by the square root of the Gram matrix, making every ρ(σ_i) unitary."""
    g = gram_matrix(rm.strand_count, rm.through_strands, params.delta)
    evals, evecs = np.linalg.eigh(g)
    if evals.size and evals.min() <= 1e-12 * max(1.0, float(abs(evals).max())):
        raise NotUnitarizableError(
            f"not unitarizable at this parameter: Gram matrix eigenvalues {evals.tolist()}")
    root = evecs @ np.diag(np.sqrt(evals)) @ evecs.T
    root_inv = evecs @ np.diag(1 / np.sqrt(evals)) @ evecs.T
    images = tuple(root @ m @ root_inv for m in rm.sigma_images)
    out = RepMatrices(rm.strand_count, rm.through_strands, rm.dimension, images,
                      unitary=True, a_value=rm.a_value)
    residual = out.unitarity_residual()
    if residual > UNITARY_TOL:
        raise NotUnitarizableError(f"unitarisation residual {residual:.3g} exceeds tolerance")
    return out


def jones_representation(n: int = 3, p: int = 1, params: TLParams | None = None) -> RepMatrices:
    """Unitary Jones representation; defaults to B_3 on the 2-dimensional module at A = e^{2πi/5}."""
    from .temperley_lieb import DEFAULT_PARAMS

    params = params or DEFAULT_PARAMS
    return unitarize(rep_matrices(n, p, params), params)


def rep_of_word(w: BraidWord, rm: RepMatrices) -> np.ndarray:
    if w.strand_count != rm.strand_count:
        raise InvalidInputError(
            f"word on {w.strand_count} strands, representation of B_{rm.strand_count}")
    out = np.eye(rm.dimension, dtype=complex)
    for i, s in w.letters:
        out = out @ rm.image(i, s)
    return out
