"""Linear programming: optimal graph-diagonal witnesses, PPT-mixture tests,
decomposability certification, and the multipartite entanglement monotone.

The solver is a dense bounded-variable primal simplex on an explicit tableau:
two-phase when no starting basis is known, Devex pricing with a Bland
anti-cycling fallback, and a tiny deterministic right-hand-side perturbation
against degenerate stalling (removed again when reporting solutions).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .diagops import DiagonalOperator, GraphDiagonalState, white_noise_state
from .errors import CapExceededError, UsageError, VerificationError
from .graphs import Bipartition, Graph, enumerate_bipartitions
from .stabilizer import pt_sign_vector
from .witnesses import WitnessRecord

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9
MAX_ITER = 10**6
PERTURB = 4e-10

MAX_LP_PPT = 12
MAX_LP_DECOMPOSABLE = 8
MAX_LP_MONOTONE = 8
MAX_LP_CERTIFY = 12


@dataclass
class LPProblem:
    """min objective . x  subject to  rows . x = rhs,  lower <= x <= upper.

    Equality rows are (indices, coefficients, rhs) triples; bounds default to
    x >= 0.  Lower bounds may be 0 or -inf, uppers +inf or finite.
    """

    num_vars: int
    objective: np.ndarray
    rows: list[tuple[np.ndarray, np.ndarray, float]] = field(default_factory=list)
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        a = np.zeros((len(self.rows), self.num_vars))
        b = np.zeros(len(self.rows))
        for r, (idx, coef, rhs) in enumerate(self.rows):
            a[r, np.asarray(idx, dtype=int)] = coef
            b[r] = rhs
        return a, b


@dataclass
class LPSolution:
    status: str  # optimal | infeasible | unbounded | iteration_limit
    value: float
    primal: np.ndarray | None
    iterations: int


class DenseSimplex:
    """Bounded-variable primal simplex on a dense tableau.

    Construct with (A, b, lower, upper), then either `set_basis` (a known
    feasible basis) or `phase1` (artificial variables), then `run(c)`.
    `run` may be called again with a new objective to warm-restart.
    """

    NB_LOWER, NB_UPPER, BASIC, NB_FREE = 0, 1, 2, 3

    def __init__(self, A, b, lower=None, upper=None, seed: int = 7):
        self.A = np.ascontiguousarray(A, dtype=float)
        self.b = np.asarray(b, dtype=float).copy()
        self.m, self.nv = self.A.shape
        self.lower = (
            np.zeros(self.nv) if lower is None else np.asarray(lower, dtype=float).copy()
        )
        self.upper = (
            np.full(self.nv, np.inf) if upper is None else np.asarray(upper, dtype=float).copy()
        )
        rng = np.random.default_rng(seed)
        self.pert = PERTURB * (1.0 + rng.random(self.m))
        self.iterations = 0
        self.T = None

    # -- construction of a starting point ------------------------------------

    def set_basis(self, basis):
        """Start from a known feasible basis (columns forming invertible B)."""
        basis = np.asarray(basis, dtype=np.int64)
        binv = np.linalg.inv(self.A[:, basis])
        self.T = np.ascontiguousarray(binv @ self.A)
        self.basis = basis.copy()
        self.status = np.full(self.nv, self.NB_LOWER, dtype=np.int8)
        self.status[np.isinf(self.lower)] = self.NB_FREE
        self.status[basis] = self.BASIC
        xn = self._nonbasic_values()
        self.xB = binv @ (self.b - self.A @ xn)
        self.dpert = binv @ self.pert
        self.xB += self.dpert
        if (self.xB < self.lower[basis] - FEAS_TOL).any() or (
            self.xB > self.upper[basis] + FEAS_TOL
        ).any():
            raise UsageError("provided basis is not feasible")

    def _nonbasic_value(self, j: int) -> float:
        if self.status[j] == self.NB_UPPER:
            return float(self.upper[j])
        lo = self.lower[j]
        return float(lo) if np.isfinite(lo) else 0.0

    def _nonbasic_values(self) -> np.ndarray:
        xn = np.where(np.isfinite(self.lower), self.lower, 0.0)
        at_up = self.status == self.NB_UPPER
        xn[at_up] = self.upper[at_up]
        xn[self.basis] = 0.0
        return xn

    def phase1(self) -> str:
        """Feasibility via artificial variables; leaves a feasible basis."""
        xn0 = np.where(np.isfinite(self.lower), self.lower, 0.0)
        rhs = self.b - self.A @ xn0
        flip = np.where(rhs < 0, -1.0, 1.0)
        aug = np.hstack([self.A * flip[:, None], np.eye(self.m)])
        self.A = np.ascontiguousarray(aug)
        self.b = self.b * flip
        self.pert = np.abs(self.pert)
        art = np.arange(self.nv, self.nv + self.m)
        self.lower = np.concatenate([self.lower, np.zeros(self.m)])
        self.upper = np.concatenate([self.upper, np.full(self.m, np.inf)])
        self.T = self.A.copy()
        self.basis = art.copy()
        self.status = np.full(self.nv + self.m, self.NB_LOWER, dtype=np.int8)
        self.status[np.isinf(self.lower)] = self.NB_FREE
        self.status[art] = self.BASIC
        self.xB = (rhs * flip).copy()
        self.dpert = self.pert.copy()
        self.xB += self.dpert
        c1 = np.concatenate([np.zeros(self.nv), np.ones(self.m)])
        st = self._iterate(c1)
        if st != "optimal":
            return st
        if float(c1 @ self.x(exact=True, padded=True)) > 1e-7:
            return "infeasible"
        self._drive_out_artificials(art)
        return "optimal"

    def _drive_out_artificials(self, art):
        art_set = set(int(a) for a in art)
        keep_rows = np.ones(self.m, dtype=bool)
        for r in range(self.m):
            j = int(self.basis[r])
            if j not in art_set:
                continue
            row = self.T[r, : self.nv]
            cand = np.nonzero(np.abs(row) > PIVOT_TOL)[0]
            cand = [k for k in cand if self.status[k] != self.BASIC]
            if cand:
                k = int(cand[0])
                # degenerate swap: the artificial sits at ~0 (perturbation
                # level), so the entering variable moves by theta ~ 0
                theta = self.xB[r] / self.T[r, k]
                val_k = self._nonbasic_value(k)
                self.xB -= theta * self.T[:, k]
                self._pivot(r, k, val_k + theta)
            else:
                keep_rows[r] = False  # redundant constraint
        if not keep_rows.all():
            self.T = np.ascontiguousarray(self.T[keep_rows])
            self.xB = self.xB[keep_rows]
            self.dpert = self.dpert[keep_rows]
            self.basis = self.basis[keep_rows]
            self.m = self.T.shape[0]
        # drop artificial columns
        self.T = np.ascontiguousarray(self.T[:, : self.nv])
        self.A = np.ascontiguousarray(self.A[:, : self.nv])
        self.lower = self.lower[: self.nv]
        self.upper = self.upper[: self.nv]
        self.status = self.status[: self.nv]

    # -- the simplex core -----------------------------------------------------

    def run(self, c) -> str:
        if self.T is None:
            raise UsageError("call set_basis or phase1 first")
        return self._iterate(np.asarray(c, dtype=float))

    def _iterate(self, c) -> str:
        T = self.T
        z = c - c[self.basis] @ T
        z[self.basis] = 0.0
        self.c = c
        gamma = np.ones(z.size)
        movable = self.upper > self.lower  # pinned variables never enter
        stall = 0
        bland = False
        nb_low = self.NB_LOWER
        nb_up = self.NB_UPPER
        nb_free = self.NB_FREE
        for _ in range(MAX_ITER):
            self.iterations += 1
            viol = np.where(
                movable
                & ((self.status == nb_low) | (self.status == nb_free))
                & (z < -FEAS_TOL),
                -z,
                0.0,
            )
            np.maximum(
                viol,
                np.where(
                    movable
                    & ((self.status == nb_up) | (self.status == nb_free))
                    & (z > FEAS_TOL),
                    z,
                    0.0,
                ),
                out=viol,
            )
            if not viol.any():
                return "optimal"
            if bland:
                j = int(np.nonzero(viol > 0.0)[0][0])
            else:
                j = int(np.argmax(viol * viol / gamma))
            sigma = 1.0 if z[j] < 0 else -1.0
            col = T[:, j] * sigma
            span = self.upper[j] - self.lower[j]
            theta = span
            leave = -1
            if self.m:
                with np.errstate(divide="ignore", invalid="ignore"):
                    down = np.where(
                        col > PIVOT_TOL, (self.xB - self.lower[self.basis]) / col, np.inf
                    )
                    up = np.where(
                        col < -PIVOT_TOL, (self.xB - self.upper[self.basis]) / col, np.inf
                    )
                ratios = np.minimum(down, up)
                np.maximum(ratios, 0.0, out=ratios)
                rmin = ratios.min()
                if rmin < theta:
                    theta = rmin
                    cand = np.nonzero(ratios <= rmin + 1e-12)[0]
                    if bland:  # Bland: least leaving variable index
                        leave = int(cand[np.argmin(self.basis[cand])])
                    else:  # largest pivot among ties, for stability
                        leave = int(cand[np.argmax(np.abs(col[cand]))])
            if not np.isfinite(theta):
                return "unbounded"
            if theta > 0.0:
                self.xB -= theta * col
                stall = 0
                bland = False
            else:
                stall += 1
                if stall > 500:
                    bland = True
            if leave < 0:
                # entering variable runs to its other bound
                self.status[j] = nb_up if self.status[j] == nb_low else nb_low
            else:
                base = self.lower[j] if sigma > 0 else self.upper[j]
                enter_val = (base if np.isfinite(base) else 0.0) + sigma * theta
                gamma = self._pivot(
                    leave, j, enter_val, to_upper=col[leave] < 0,
                    gamma_in=gamma[j], gamma=gamma,
                )
                zj = z[j]
                z -= zj * T[leave]
                z[j] = 0.0
        return "iteration_limit"

    def _pivot(self, r, j, enter_val, to_upper=False, gamma_in=1.0, gamma=None):
        T = self.T
        piv = T[r, j]
        jout = int(self.basis[r])
        col = T[:, j].copy()
        if to_upper and np.isfinite(self.upper[jout]):
            self.status[jout] = self.NB_UPPER
        elif np.isinf(self.lower[jout]):
            self.status[jout] = self.NB_FREE
        else:
            self.status[jout] = self.NB_LOWER
        row = _kernels.pivot_update(T, r, j)
        dp = self.dpert[r] / piv
        self.dpert -= col * dp
        self.dpert[r] = dp
        self.xB[r] = enter_val
        self.basis[r] = j
        self.status[j] = self.BASIC
        if gamma is not None:
            gq = max(gamma_in / (piv * piv), 1.0)
            np.maximum(gamma, np.asarray(row) ** 2 * gq, out=gamma)
            gamma[jout] = gq
            if gq > 1e12:
                gamma[:] = 1.0
            return gamma
        return None

    # -- solution extraction ---------------------------------------------------

    def x(self, exact: bool = True, padded: bool = False) -> np.ndarray:
        size = self.status.size
        out = np.where(
            self.status == self.NB_UPPER,
            np.where(np.isfinite(self.upper), self.upper, 0.0),
            np.where(np.isfinite(self.lower), self.lower, 0.0),
        )
        xb = self.xB - self.dpert if exact else self.xB
        out[self.basis] = xb
        if padded or size == self.nv:
            return out
        return out[: self.nv]

    def value(self) -> float:
        return float(self.c[: self.status.size] @ self.x(padded=True))


def simplex_solve(problem: LPProblem) -> LPSolution:
    """Two-phase dense simplex over the generic problem description."""
    a, b = problem.dense()
    sx = DenseSimplex(a, b, problem.lower, problem.upper)
    st = sx.phase1()
    if st != "optimal":
        return LPSolution(st if st == "infeasible" else st, np.nan, None, sx.iterations)
    c = np.asarray(problem.objective, dtype=float)
    st = sx.run(c)
    if st != "optimal":
        return LPSolution(st, np.nan, None, sx.iterations)
    x = sx.x()
    value = float(c @ x)
    resid = np.abs(a @ x - b).max() if len(problem.rows) else 0.0
    if resid > FEAS_TOL * 10:
        raise VerificationError(f"simplex equality residual {resid} too large")
    return LPSolution("optimal", value, x, sx.iterations)


# ---------------------------------------------------------------------------
# Witness optimization
# ---------------------------------------------------------------------------


def _phi_matrix(g: Graph, part: Bipartition) -> np.ndarray:
    """Dense matrix of the diagonal partial-transpose map for one cut."""
    n = g.n
    N = 1 << n
    a = np.arange(N, dtype=np.uint64)
    h = 1.0 - 2.0 * (np.bitwise_count(a[:, None] & a[None, :]) & np.uint64(1)).astype(float)
    return (h * pt_sign_vector(g, part)[None, :]) @ h / N


class WitnessLP:
    """The witness-search LP over graph-diagonal operators.

    Fully decomposable mode: variables p^M, q^M >= 0 per canonical cut M with
    the shared witness eliminated as w = p^1 + Phi_1 q^1; rows force all cuts
    to agree, one row fixes tr(W) = 1.  Fully PPT mode fixes every p^M = 0 by
    upper bound.  Monotone mode drops the trace row and boxes all variables
    into [0, 1].
    """

    def __init__(self, g: Graph, mode: str = "fully_decomposable"):
        caps = {
            "fully_decomposable": MAX_LP_DECOMPOSABLE,
            "fully_ppt": MAX_LP_PPT,
            "monotone": MAX_LP_MONOTONE,
        }
        if mode not in caps:
            raise UsageError(f"unknown witness LP mode {mode!r}")
        if g.n > caps[mode]:
            raise CapExceededError(f"{mode} LP capped at n = {caps[mode]}, got n = {g.n}")
        if g.n < 2:
            raise UsageError("witness LPs need at least 2 qubits")
        self.g = g
        self.mode = mode
        self.n = g.n
        self.N = 1 << g.n
        self.parts = enumerate_bipartitions(g.n)
        self.K = len(self.parts)
        self.phis = [_phi_matrix(g, p) for p in self.parts]
        self._build()

    def _build(self):
        N, K = self.N, self.K
        trace_row = 1 if self.mode != "monotone" else 0
        m = (K - 1) * N + trace_row
        nv = 2 * K * N
        A = np.zeros((m, nv))
        eye = np.eye(N)
        for j in range(1, K):
            r = (j - 1) * N
            A[r:r + N, 2 * j * N:(2 * j + 1) * N] = eye
            A[r:r + N, (2 * j + 1) * N:(2 * j + 2) * N] = self.phis[j]
            A[r:r + N, 0:N] -= eye
            A[r:r + N, N:2 * N] -= self.phis[0]
        b = np.zeros(m)
        if trace_row:
            A[-1, 0:N] = 1.0
            A[-1, N:2 * N] = 1.0  # column sums of Phi are all 1
            b[-1] = 1.0
        lower = np.zeros(nv)
        upper = np.full(nv, np.inf)
        if self.mode == "monotone":
            upper[:] = 1.0
        elif self.mode == "fully_ppt":
            for j in range(K):  # pin p^M = 0
                upper[2 * j * N:(2 * j + 1) * N] = 0.0
        basis = [2 * j * N + a for j in range(1, K) for a in range(N)]
        if trace_row:
            basis.append(0 if self.mode != "fully_ppt" else N)
        self.sx = DenseSimplex(A, b, lower, upper)
        self._A, self._b = A, b
        self._started = False
        self._basis0 = basis

    def _objective(self, s: np.ndarray) -> np.ndarray:
        c = np.zeros(2 * self.K * self.N)
        c[0:self.N] = s
        c[self.N:2 * self.N] = self.phis[0] @ s
        return c

    def solve(self, state: GraphDiagonalState) -> tuple[float, np.ndarray, str]:
        """Returns (optimal value, witness diagonal w, status)."""
        if state.graph != self.g:
            raise UsageError("state graph differs from LP graph")
        c = self._objective(state.probs)
        if not self._started:
            if self.mode == "fully_ppt":
                st = self.sx.phase1()
                if st != "optimal":
                    return np.nan, None, st
            else:
                self.sx.set_basis(self._basis0)
            self._started = True
        st = self.sx.run(c)
        if st != "optimal":
            return np.nan, None, st
        x = self.sx.x()
        w = x[0:self.N] + self.phis[0] @ x[self.N:2 * self.N]
        return float(c @ x), w, st

    def per_cut_parts(self) -> list[tuple[int, np.ndarray, np.ndarray]]:
        """(mask, P_M diagonal, Q_M diagonal) for the last solved witness."""
        x = self.sx.x()
        out = []
        for j, part in enumerate(self.parts):
            p = x[2 * j * self.N:(2 * j + 1) * self.N]
            q = x[(2 * j + 1) * self.N:(2 * j + 2) * self.N]
            out.append((part.mask, p.copy(), q.copy()))
        return out


def optimal_witness(
    state: GraphDiagonalState, mode: str = "fully_decomposable"
) -> tuple[WitnessRecord, float]:
    """Most-negative graph-diagonal witness of the class on `state`, trace 1.

    A negative value proves the state is no PPT mixture, hence genuinely
    multipartite entangled.
    """
    lp = WitnessLP(state.graph, mode)
    value, w, st = lp.solve(state)
    if st != "optimal":
        raise VerificationError(f"witness LP ended with status {st}")
    op = DiagonalOperator.from_diag(state.graph, w)
    rec = WitnessRecord(op, "lp_optimal")
    rec.verified = "decomposable_certified" if mode == "fully_decomposable" else "ppt_checked"
    return rec, value


def is_ppt_mixture(state: GraphDiagonalState, mode: str = "fully_decomposable") -> bool:
    lp = WitnessLP(state.graph, mode)
    value, _, st = lp.solve(state)
    if st != "optimal":
        raise VerificationError(f"witness LP ended with status {st}")
    return value >= -FEAS_TOL


def detection_threshold(
    g: Graph, mode: str = "fully_decomposable", bisect_iters: int = 8, bracket: float = 1e-4
) -> tuple[float, WitnessRecord]:
    """White-noise level where the LP value crosses zero for graph `g`.

    Solves once on the pure state; the affine structure of the value in the
    noise level predicts the threshold, which bisection then confirms against
    re-solves (warm-started, so each probe costs a few pivots).
    """
    lp = WitnessLP(g, mode)
    pure = white_noise_state(g, 0.0)
    value, w, st = lp.solve(pure)
    if st != "optimal":
        raise VerificationError(f"witness LP ended with status {st}")
    rec = WitnessRecord(DiagonalOperator.from_diag(g, w), "lp_optimal")
    w0 = value
    if w0 >= 0:
        return 0.0, rec
    predict = w0 / (w0 - 1.0 / (1 << g.n))

    def lp_value(p: float) -> float:
        v, _, s = lp.solve(white_noise_state(g, p))
        if s != "optimal":
            raise VerificationError(f"witness LP ended with status {s}")
        return v

    lo = max(predict - bracket, 0.0)
    hi = min(predict + bracket, 1.0)
    while lo > 0.0 and lp_value(lo) >= 0.0:
        lo = max(lo - bracket, 0.0)
        bracket *= 2
    while hi < 1.0 and lp_value(hi) < -FEAS_TOL:
        hi = min(hi + bracket, 1.0)
        bracket *= 2
    for _ in range(bisect_iters):
        mid = 0.5 * (lo + hi)
        if lp_value(mid) < -FEAS_TOL:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), rec


def certify_decomposable(rec: WitnessRecord) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """Per-cut diagonal certificates (P_M, Q_M) with W = P_M + Phi_M Q_M.

    Raises VerificationError naming the first failing cut when the witness is
    not fully decomposable.
    """
    g = rec.graph
    if g.n > MAX_LP_CERTIFY:
        raise CapExceededError(f"certification capped at n = {MAX_LP_CERTIFY}")
    N = 1 << g.n
    w = rec.op.diag
    out = {}
    for part in enumerate_bipartitions(g.n):
        phi = _phi_matrix(g, part)
        A = np.hstack([np.eye(N), phi])
        sx = DenseSimplex(A, w)
        st = sx.phase1()
        if st != "optimal" or float(np.abs(A @ sx.x() - w).max()) > 1e-7:
            raise VerificationError(
                f"witness is not fully decomposable: no certificate for mask {part.mask:#x}"
            )
        x = sx.x()
        out[part.mask] = (np.maximum(x[:N], 0.0), np.maximum(x[N:], 0.0))
    return out


def monotone_n(state: GraphDiagonalState) -> tuple[float, WitnessRecord]:
    """Entanglement monotone: -min tr(W rho) over box-normalized decomposable
    witnesses; 0 on biseparable states, 1/2 on connected graph states."""
    lp = WitnessLP(state.graph, "monotone")
    value, w, st = lp.solve(state)
    if st != "optimal":
        raise VerificationError(f"monotone LP ended with status {st}")
    rec = WitnessRecord(DiagonalOperator.from_diag(state.graph, w), "lp_optimal")
    rec.tolerance = None  # box normalization, tolerance formula not meaningful
    rec.tolerance_exact = None
    return max(0.0, -value), rec
