"""
Brute-force braid-word synthesis against a unitary Jones representation.

Words are explored level by level in shortlex order over the letters σ_1, σ_1⁻¹, σ_2, σ_2⁻¹, ...
Only freely reduced words are generated, and with deduplication on, a word is dropped when its
matrix (rounded to a 1e-8 grid) already appeared at an earlier or equal position. Every word that
is dropped has a shortlex-smaller word with the same image, so nothing reachable is lost.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import json
import logging
import math
import os
from typing import Any, Iterator, Literal, Sequence

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import unitary_group

from .braids import BraidWord
from .errors import DomainError, InvalidInputError
from .jones import RepMatrices, rep_of_word

log = logging.getLogger(__name__)

GATE_UNITARY_TOL = 1e-10
DEDUPE_GRID = 1e-8
_OPERAND_TOL = 1e-8
_TIE_SLACK = 1e-12


@dataclasses.dataclass(frozen=True, eq=False)
class TargetGate:
    matrix: np.ndarray
    name: str = "custom"

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise InvalidInputError(f"gate matrix must be square, got shape {m.shape}")
        residual = float(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]), 2))
        if residual > GATE_UNITARY_TOL:
            raise InvalidInputError(f"gate matrix is not unitary (residual {residual:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, d: int = 2) -> TargetGate:
        return cls(np.eye(d), "identity")

    @classmethod
    def from_pairs(cls, rows: Sequence[Sequence[Sequence[float]]], name: str = "custom") -> TargetGate:
        """Row-major matrix given as ``[[[re, im], ...], ...]``."""
        try:
            m = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows])
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"matrix entries must be [re, im] pairs: {exc}") from None
        return cls(m, name)

    @classmethod
    def from_json(cls, text: str) -> TargetGate:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"invalid JSON: {exc}") from None
        if isinstance(data, dict):
            if "matrix" not in data:
                raise InvalidInputError("gate file needs a 'matrix' field")
            return cls.from_pairs(data["matrix"], str(data.get("name", "custom")))
        return cls.from_pairs(data)

    def to_pairs(self) -> list[list[list[float]]]:
        return [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]

    @classmethod
    def haar(cls, d: int, seed: int) -> TargetGate:
        return cls(unitary_group.rvs(d, random_state=np.random.default_rng(seed)), f"haar-{seed}")


_S = 1 / math.sqrt(2)
PAULI_X = TargetGate(np.array([[0, 1], [1, 0]]), "x")
PAULI_Z = TargetGate(np.array([[1, 0], [0, -1]]), "z")
HADAMARD = TargetGate(np.array([[_S, _S], [_S, -_S]]), "h")
# Two-qubit target; compiling it needs a higher braid-group sector and is not attempted here.
CNOT = TargetGate(np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]), "cnot")
NAMED_GATES = {"x": PAULI_X, "z": PAULI_Z, "h": HADAMARD, "i": TargetGate.identity(2)}


@dataclasses.dataclass(frozen=True)
class SearchConfig:
    max_depth: int = 12
    tolerance: float = 1e-10
    beam_width: int | None = None
    strategy: Literal["exhaustive", "meet-in-middle"] = "exhaustive"
    dedupe: bool = True

    def __post_init__(self) -> None:
        if self.max_depth < 0:
            raise InvalidInputError(f"max_depth must be >= 0, got {self.max_depth}")
        if not self.tolerance > 0:
            raise InvalidInputError(f"tolerance must be positive, got {self.tolerance}")
        if self.beam_width is not None and self.beam_width < 1:
            raise InvalidInputError(f"beam_width must be >= 1, got {self.beam_width}")
        if self.strategy not in ("exhaustive", "meet-in-middle"):
            raise InvalidInputError(f"unknown strategy {self.strategy!r}")


@dataclasses.dataclass(frozen=True)
class CompilationResult:
    word: BraidWord
    achieved_distance: float
    nodes_explored: int
    depth_reached: int

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "word": self.word.signed(),
            "strands": self.word.strand_count,
            "length": len(self.word),
            "achieved_distance": self.achieved_distance,
            "nodes_explored": self.nodes_explored,
            "depth_reached": self.depth_reached,
        }


@dataclasses.dataclass(frozen=True)
class ProbeStatistics:
    depth: int
    seed: int
    sample_count: int
    minimum: float
    median: float
    maximum: float
    distances: tuple[float, ...]

    def to_json_dict(self) -> dict[str, Any]:
        return {"depth": self.depth, "seed": self.seed, "sample_count": self.sample_count,
                "min": self.minimum, "median": self.median, "max": self.maximum}


# --- distance -------------------------------------------------------------------

def _check_operand(m: np.ndarray, label: str) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"{label} must be a square matrix, got shape {m.shape}")
    residual = float(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]), 2))
    if residual > _OPERAND_TOL:
        raise InvalidInputError(f"{label} is not unitary (residual {residual:.3g})")


def _spread_distance(eigenvalues: np.ndarray) -> np.ndarray:
    # Eigenvalues of U†V lie on the unit circle; the best global phase sits at the middle of the
    # shortest arc containing all of them, and the operator distance is the chord to either end.
    phases = np.sort(np.angle(eigenvalues), axis=-1)
    gaps = np.diff(phases, axis=-1)
    wrap = 2 * np.pi - (phases[..., -1] - phases[..., 0])
    widest = np.maximum(gaps.max(axis=-1, initial=0.0), wrap)
    arc = np.clip(2 * np.pi - widest, 0.0, None)
    return 2 * np.sin(arc / 4)


def projective_distance(u: np.ndarray, v: np.ndarray) -> float:
    """min over φ of ‖U − e^{iφ}V‖ in operator norm."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise InvalidInputError(f"dimension mismatch: {u.shape} vs {v.shape}")
    _check_operand(u, "U")
    _check_operand(v, "V")
    return float(_spread_distance(np.linalg.eigvals(u.conj().T @ v)))


def _batch_distance(target: np.ndarray, stack: np.ndarray) -> np.ndarray:
    return _spread_distance(np.linalg.eigvals(target.conj().T[None, :, :] @ stack))


def _closeness(target: np.ndarray, stack: np.ndarray) -> np.ndarray:
    """|tr(T†M)|: larger is closer, and monotone in the distance when d = 2."""
    return np.abs(np.einsum("ji,nji->n", target.conj(), stack))


# --- enumeration ----------------------------------------------------------------

@dataclasses.dataclass
class _Level:
    matrices: np.ndarray
    parent: np.ndarray
    letter: np.ndarray  # signed generator index of the last letter, 0 at the root


class _WordTree:
    """Levels of freely reduced words in shortlex order with parent pointers."""

    def __init__(self, rm: RepMatrices, dedupe: bool) -> None:
        if not rm.unitary:
            raise DomainError("compilation needs a unitary representation")
        self.rm = rm
        self.dedupe = dedupe
        self.letters = [s * i for i in range(1, rm.strand_count) for s in (1, -1)]
        self.gens = np.stack([rm.image(abs(g), 1 if g > 0 else -1) for g in self.letters]) \
            if self.letters else np.zeros((0, rm.dimension, rm.dimension), dtype=complex)
        root = np.eye(rm.dimension, dtype=complex)[None]
        self.levels = [_Level(root, np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64))]
        self._seen: set[bytes] = set()
        if dedupe:
            self._seen.update(self._keys(root))

    @staticmethod
    def _keys(stack: np.ndarray) -> list[bytes]:
        flat = stack.reshape(len(stack), -1)
        grid = np.round(np.concatenate([flat.real, flat.imag], axis=1) / DEDUPE_GRID)
        grid = (grid + 0.0).astype(np.int64)
        return [row.tobytes() for row in grid]

    def grow(self, keep: np.ndarray | None = None) -> _Level:
        """Append the next level, expanding only parents listed in ``keep`` (all by default)."""
        prev = self.levels[-1]
        parents = np.arange(len(prev.matrices)) if keep is None else np.sort(keep)
        if len(self.letters) == 0 or len(parents) == 0:
            level = _Level(np.zeros((0,) + prev.matrices.shape[1:], dtype=complex),
                           np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))
            self.levels.append(level)
            return level
        letters = np.array(self.letters)
        products = np.einsum("pij,gjk->pgik", prev.matrices[parents], self.gens)
        allowed = prev.letter[parents][:, None] != -letters[None, :]
        p_idx, g_idx = np.nonzero(allowed)
        mats = products[p_idx, g_idx]
        parent = parents[p_idx]
        letter = letters[g_idx]
        if self.dedupe:
            keep_mask = np.zeros(len(mats), dtype=bool)
            for k, key in enumerate(self._keys(mats)):
                if key not in self._seen:
                    self._seen.add(key)
                    keep_mask[k] = True
            mats, parent, letter = mats[keep_mask], parent[keep_mask], letter[keep_mask]
        level = _Level(mats, parent, letter)
        self.levels.append(level)
        return level

    def word(self, depth: int, index: int) -> BraidWord:
        signed = []
        for d in range(depth, 0, -1):
            level = self.levels[d]
            signed.append(int(level.letter[index]))
            index = int(level.parent[index])
        return BraidWord.from_signed(self.rm.strand_count, reversed(signed))

    def up_to(self, depth: int) -> None:
        while len(self.levels) <= depth:
            self.grow()

    def all_matrices(self, depth: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
        self.up_to(depth)
        mats = np.concatenate([lv.matrices for lv in self.levels[: depth + 1]])
        index = [(d, k) for d in range(depth + 1) for k in range(len(self.levels[d].matrices))]
        return mats, index


def enumerate_level(rm: RepMatrices, depth: int, dedupe: bool = False) -> Iterator[tuple[BraidWord, np.ndarray]]:
    """Freely reduced words of exactly ``depth`` letters in shortlex order, with their images."""
    tree = _WordTree(rm, dedupe)
    tree.up_to(depth)
    level = tree.levels[depth]
    for k in range(len(level.matrices)):
        yield tree.word(depth, k), level.matrices[k]


def words_near(rm: RepMatrices, depth: int, target: np.ndarray, tol: float,
               dedupe: bool = False) -> list[BraidWord]:
    """Words of exactly ``depth`` letters whose image is within ``tol`` of ``target``."""
    tree = _WordTree(rm, dedupe)
    tree.up_to(depth)
    level = tree.levels[depth]
    if len(level.matrices) == 0:
        return []
    hits = np.nonzero(_batch_distance(np.asarray(target, dtype=complex), level.matrices) <= tol)[0]
    return [tree.word(depth, int(k)) for k in hits]


def _pick(target: np.ndarray, stack: np.ndarray) -> tuple[int, float]:
    """Index of the closest matrix (first one on ties) and its exact distance."""
    close = _closeness(target, stack)
    top = close.max()
    candidates = np.nonzero(close >= top - _TIE_SLACK)[0]
    dist = _batch_distance(target, stack[candidates])
    best = int(np.argmin(dist))
    return int(candidates[best]), float(dist[best])


def _check_compile_inputs(target: TargetGate, rm: RepMatrices) -> None:
    if not rm.unitary:
        raise DomainError("compilation needs a unitary representation")
    if rm.dimension != target.dimension:
        raise InvalidInputError(
            f"dimension mismatch: target is {target.dimension}x{target.dimension}, "
            f"representation has dimension {rm.dimension}")


def _finish(target: TargetGate, rm: RepMatrices, word: BraidWord, nodes: int, depth: int) -> CompilationResult:
    # the reported distance is recomputed from the word itself
    achieved = projective_distance(rep_of_word(word, rm), target.matrix)
    return CompilationResult(word, achieved, nodes, depth)


def compile_gate(target: TargetGate, rm: RepMatrices, cfg: SearchConfig | None = None) -> CompilationResult:
    """Best braid word for ``target`` within the search budget of ``cfg``."""
    cfg = cfg or SearchConfig()
    _check_compile_inputs(target, rm)
    if cfg.strategy == "meet-in-middle":
        return _compile_meet_in_middle(target, rm, cfg)
    t = target.matrix
    tree = _WordTree(rm, cfg.dedupe)
    best = (0, 0)
    best_distance = float(_batch_distance(t, tree.levels[0].matrices)[0])
    nodes = 1
    depth = 0
    keep = None
    while best_distance > cfg.tolerance and depth < cfg.max_depth:
        level = tree.grow(keep)
        depth += 1
        nodes += len(level.matrices)
        if len(level.matrices) == 0:
            break
        k, dist = _pick(t, level.matrices)
        if dist < best_distance:
            best, best_distance = (depth, k), dist
        keep = None
        if cfg.beam_width is not None and len(level.matrices) > cfg.beam_width:
            order = np.argsort(-_closeness(t, level.matrices), kind="stable")
            keep = order[: cfg.beam_width]
    log.debug("explored %d nodes to depth %d", nodes, depth)
    return _finish(target, rm, tree.word(*best), nodes, depth)


def _su2_quaternions(stack: np.ndarray) -> np.ndarray:
    det = stack[:, 0, 0] * stack[:, 1, 1] - stack[:, 0, 1] * stack[:, 1, 0]
    special = stack / np.sqrt(det)[:, None, None]
    a, b = special[:, 0, 0], special[:, 1, 0]
    return np.stack([a.real, a.imag, b.real, b.imag], axis=1)


def _compile_meet_in_middle(target: TargetGate, rm: RepMatrices, cfg: SearchConfig) -> CompilationResult:
    # Split W = L·R with |L| <= ceil(D/2), |R| <= floor(D/2); L should approximate T·R†. For unit
    # quaternions of the SU(2) lifts, |tr(U†V)| = 2|⟨q_U, q_V⟩|, so the nearest point among ±q_L
    # in R^4 is the closest left factor.
    if rm.dimension != 2:
        raise DomainError("meet-in-the-middle search is restricted to d=2")
    t = target.matrix
    tree = _WordTree(rm, cfg.dedupe)
    left_depth = (cfg.max_depth + 1) // 2
    right_depth = cfg.max_depth - left_depth
    left, left_index = tree.all_matrices(left_depth)
    right, right_index = tree.all_matrices(right_depth)
    q = _su2_quaternions(left)
    kd = cKDTree(np.concatenate([q, -q]))
    wanted = t[None, :, :] @ np.conj(np.transpose(right, (0, 2, 1)))
    _, hits = kd.query(_su2_quaternions(wanted))
    hits = hits % len(left)
    products = left[hits] @ right
    r, dist = _pick(t, products)
    l_word = tree.word(*left_index[hits[r]])
    r_word = tree.word(*right_index[r])
    word = _free_reduce(l_word * r_word)
    return _finish(target, rm, word, len(left) + len(right), cfg.max_depth)


def _free_reduce(w: BraidWord) -> BraidWord:
    stack: list[tuple[int, int]] = []
    for i, s in w.letters:
        if stack and stack[-1] == (i, -s):
            stack.pop()
        else:
            stack.append((i, s))
    return BraidWord(w.strand_count, tuple(stack))


def _thread_count() -> int:
    raw = os.environ.get("BRAIDFORGE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidInputError(f"BRAIDFORGE_THREADS must be an integer, got {raw!r}") from None


def density_probe(rm: RepMatrices, sample_count: int, depth: int, seed: int,
                  dedupe: bool = True) -> ProbeStatistics:
    """Best distances to ``sample_count`` seeded Haar-random targets using words of length <= depth."""
    if rm.dimension != 2:
        raise DomainError(f"probe restricted to d=2, representation has dimension {rm.dimension}")
    if not rm.unitary:
        raise DomainError("density probe needs a unitary representation")
    if sample_count < 1:
        raise InvalidInputError("sample_count must be >= 1")
    if depth < 0:
        raise InvalidInputError("depth must be >= 0")
    targets = unitary_group.rvs(2, size=sample_count, random_state=np.random.default_rng(seed))
    targets = np.asarray(targets).reshape(sample_count, 2, 2)
    tree = _WordTree(rm, dedupe)
    stack, _ = tree.all_matrices(depth)

    def one(t: np.ndarray) -> float:
        return _pick(t, stack)[1]

    with concurrent.futures.ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        distances = tuple(pool.map(one, targets))
    arr = np.array(distances)
    return ProbeStatistics(depth, seed, sample_count, float(arr.min()), float(np.median(arr)),
                           float(arr.max()), distances)
