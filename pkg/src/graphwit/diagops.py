"""Calculus of graph-diagonal operators and states.

Conventions: graph-basis index a has qubit i at bit i (LSB = qubit 0).  The
dual representation links the 2^n diagonal entries d and the 2^n stabilizer
coefficients c through the unnormalized Walsh-Hadamard transform,
d = WHT(c), c = WHT(d) / 2^n.  Partial transposition is a per-coefficient
sign flip in c-space, so operators stay graph-diagonal under any PT.
"""

from __future__ import annotations

import concurrent.futures
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import UsageError
from .graphs import Bipartition, Graph, enumerate_bipartitions
from .stabilizer import pt_sign_vector, y_bit_table

NONNEG_TOL = 1e-9  # absolute; LP solver tolerance dominates


def wht_forward(c: np.ndarray) -> np.ndarray:
    """Unnormalized WHT: d_a = sum_x c_x (-1)^popcount(a & x).  O(n 2^n)."""
    c = np.asarray(c, dtype=float)
    if c.ndim != 1 or c.size & (c.size - 1):
        raise UsageError("WHT input length must be a power of two")
    return _kernels.wht_inplace(c.copy())


def wht_inverse(d: np.ndarray) -> np.ndarray:
    """Inverse transform, including the 2^-n factor."""
    out = wht_forward(d)
    out /= out.size
    return out


@dataclass
class DiagonalOperator:
    """Graph-diagonal Hermitian operator with lazily linked dual storage."""

    graph: Graph
    _diag: np.ndarray | None = None
    _stab: np.ndarray | None = None
    exact_diag: list[Fraction] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self._diag is None and self._stab is None:
            raise UsageError("need diagonal entries or stabilizer coefficients")
        for v in (self._diag, self._stab):
            if v is not None and v.shape != (1 << self.graph.n,):
                raise UsageError("entry count must be 2^n")

    @classmethod
    def from_diag(cls, graph: Graph, diag, exact=None) -> "DiagonalOperator":
        return cls(graph, _diag=np.asarray(diag, dtype=float), exact_diag=exact)

    @classmethod
    def from_stab(cls, graph: Graph, coeffs) -> "DiagonalOperator":
        return cls(graph, _stab=np.asarray(coeffs, dtype=float))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def diag(self) -> np.ndarray:
        if self._diag is None:
            self._diag = wht_forward(self._stab)
        return self._diag

    @property
    def stab(self) -> np.ndarray:
        if self._stab is None:
            self._stab = wht_inverse(self._diag)
        return self._stab

    def trace(self) -> float:
        return float(self.diag.sum())

    def min_diag_entry(self) -> float:
        return float(self.diag.min())

    def is_nonneg(self, tol: float = NONNEG_TOL) -> bool:
        return self.min_diag_entry() >= -tol

    def expectation(self, state: "GraphDiagonalState") -> float:
        if state.graph != self.graph:
            raise UsageError("operator and state live on different graphs")
        return float(self.diag @ state.probs)

    def partial_transpose(self, part: Bipartition) -> "DiagonalOperator":
        """Sign-flip the stabilizer coefficients indexed by Y-parity on M."""
        if part.n != self.n:
            raise UsageError("bipartition size mismatch")
        return DiagonalOperator.from_stab(self.graph, self.stab * pt_sign_vector(self.graph, part))

    def to_json(self) -> dict:
        out = {"n": self.n, "graph": self.graph.to_json(), "diag": self.diag.tolist()}
        exact = self.exact_rationals()
        if exact is not None:
            out["diag_exact"] = [f"{f.numerator}/{f.denominator}" for f in exact]
        return out

    def exact_rationals(self) -> list[Fraction] | None:
        """Exact dyadic entries when the constructor produced them."""
        if self.exact_diag is not None:
            return list(self.exact_diag)
        if self._diag is None:
            return None
        fracs = []
        for v in self._diag:
            f = Fraction(float(v)).limit_denominator(1 << 24)
            if float(f) != float(v) or f.denominator & (f.denominator - 1):
                return None
            fracs.append(f)
        return fracs


@dataclass
class GraphDiagonalState:
    """Probability vector over the graph basis (a graph-diagonal density matrix)."""

    graph: Graph
    probs: np.ndarray

    def __post_init__(self):
        self.probs = np.asarray(self.probs, dtype=float)
        if self.probs.shape != (1 << self.graph.n,):
            raise UsageError("probability vector must have 2^n entries")
        if self.probs.min() < -1e-12:
            raise UsageError(f"negative probability {self.probs.min()}")
        if abs(self.probs.sum() - 1.0) > 1e-12:
            raise UsageError(f"probabilities sum to {self.probs.sum()}, not 1")

    @property
    def n(self) -> int:
        return self.graph.n

    def to_operator(self) -> DiagonalOperator:
        return DiagonalOperator.from_diag(self.graph, self.probs)

    def to_json(self) -> dict:
        return {"n": self.n, "graph": self.graph.to_json(), "diag": self.probs.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "GraphDiagonalState":
        g = Graph.from_json(obj["graph"])
        probs = obj.get("diag", obj.get("probs"))
        return cls(g, np.asarray(probs, dtype=float))


def pure_graph_state(g: Graph) -> GraphDiagonalState:
    p = np.zeros(1 << g.n)
    p[0] = 1.0
    return GraphDiagonalState(g, p)


def white_noise_state(g: Graph, p: float) -> GraphDiagonalState:
    """(1-p)|G><G| + p * identity / 2^n, as a graph-basis probability vector."""
    if not 0.0 <= p <= 1.0:
        raise UsageError(f"noise level {p} outside [0, 1]")
    N = 1 << g.n
    probs = np.full(N, p / N)
    probs[0] += 1.0 - p
    return GraphDiagonalState(g, probs)


def operator_from_json(obj: dict) -> DiagonalOperator:
    g = Graph.from_json(obj["graph"])
    if "diag" in obj:
        op = DiagonalOperator.from_diag(g, np.asarray(obj["diag"], dtype=float))
        if "stab" in obj:
            c = np.asarray(obj["stab"], dtype=float)
            if np.abs(wht_forward(c) - op.diag).max() > 1e-9:
                raise UsageError("diag and stab entries disagree")
            op._stab = c
        return op
    if "stab" in obj:
        return DiagonalOperator.from_stab(g, np.asarray(obj["stab"], dtype=float))
    raise UsageError("operator JSON needs 'diag' or 'stab'")


# ---------------------------------------------------------------------------
# Bipartition sweeps
# ---------------------------------------------------------------------------


def default_jobs() -> int:
    return max(1, os.cpu_count() or 1)


def pt_positivity_sweep(
    op: DiagonalOperator,
    tol: float = NONNEG_TOL,
    sample: int | None = None,
    seed: int = 0,
    jobs: int | None = None,
) -> list[tuple[int, float, bool]]:
    """Minimum PT-diagonal entry for every canonical bipartition mask.

    Returns (mask, min_entry, pass) per bipartition; `sample` restricts the
    sweep to a seeded random subset.  Workers share the read-only coefficient
    vector; each owns its transformed copy.
    """
    n = op.n
    parts = enumerate_bipartitions(n)
    masks = np.array([p.mask for p in parts], dtype=np.int64)
    if sample is not None and sample < masks.size:
        rng = np.random.default_rng(seed)
        masks = masks[np.sort(rng.choice(masks.size, size=sample, replace=False))]
    c = np.ascontiguousarray(op.stab)
    y = np.ascontiguousarray(y_bit_table(op.graph))
    jobs = jobs or default_jobs()
    out = np.empty(masks.size)
    if jobs <= 1 or masks.size < 64:
        _kernels.pt_sweep_min(c, y, masks, out)
    else:
        chunks = np.array_split(np.arange(masks.size), jobs * 4)
        chunks = [ch for ch in chunks if ch.size]

        def run(ch):
            _kernels.pt_sweep_min(c, y, np.ascontiguousarray(masks[ch]), out[ch[0]:ch[-1] + 1])

        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as ex:
            list(ex.map(run, chunks))
    return [(int(m), float(v), bool(v >= -tol)) for m, v in zip(masks, out)]


def is_fully_ppt_diag(op: DiagonalOperator, tol: float = NONNEG_TOL, **kw) -> bool:
    return all(ok for _, _, ok in pt_positivity_sweep(op, tol, **kw))
