"""Independent brute-force oracle: dense matrices, partial transposes,
eigenvalues, Schmidt coefficients, negativity.

Everything here works in the computational basis with explicit complex
matrices, deliberately sharing no code with the fast diagonal path.  Sizes
are capped: matrices at 8 qubits, state vectors at 12.
"""

from __future__ import annotations

import numpy as np

from .errors import CapExceededError, UsageError
from .graphs import Bipartition, Graph
from .stabilizer import PauliWord

MAX_DENSE_MATRIX = 8
MAX_DENSE_VECTOR = 12
HERM_TOL = 1e-12


def _check_cap(n: int, cap: int, what: str):
    if n > cap:
        raise CapExceededError(f"{what} capped at n = {cap}, got {n}")


def _check_hermitian(mat: np.ndarray) -> np.ndarray:
    if np.abs(mat - mat.conj().T).max() > HERM_TOL:
        raise UsageError("matrix is not Hermitian")
    return mat


def materialize_graph_state(g: Graph) -> np.ndarray:
    """|G> = prod CZ |+...+>: amplitudes (-1)^(edge form) / 2^(n/2)."""
    _check_cap(g.n, MAX_DENSE_VECTOR, "state vectors")
    v = np.arange(1 << g.n, dtype=np.uint64)
    phase = np.zeros(1 << g.n, dtype=np.int64)
    for i, j in g.edges:
        phase += (((v >> np.uint64(i)) & np.uint64(1)) * ((v >> np.uint64(j)) & np.uint64(1))).astype(np.int64)
    amp = (1.0 - 2.0 * (phase & 1)) / np.sqrt(1 << g.n)
    return amp.astype(complex)


def materialize_basis_vector(g: Graph, a: int) -> np.ndarray:
    """|a> = prod_k Z_k^{a_k} |G>: computational phases (-1)^popcount(v & a)."""
    if not 0 <= a < (1 << g.n):
        raise UsageError(f"basis index {a} out of range")
    base = materialize_graph_state(g)
    v = np.arange(1 << g.n, dtype=np.uint64)
    sign = 1.0 - 2.0 * (np.bitwise_count(v & np.uint64(a)) & np.uint64(1)).astype(float)
    return base * sign


def materialize_pauli(word: PauliWord) -> np.ndarray:
    """Dense matrix of i^t (X-then-Z per qubit); asserts Hermiticity."""
    _check_cap(word.n, MAX_DENSE_MATRIX, "dense operators")
    N = 1 << word.n
    c = np.arange(N, dtype=np.uint64)
    rows = c ^ np.uint64(word.x_mask)
    signs = 1.0 - 2.0 * (np.bitwise_count(c & np.uint64(word.z_mask)) & np.uint64(1)).astype(float)
    mat = np.zeros((N, N), dtype=complex)
    mat[rows, c] = (1j ** word.phase_power) * signs
    return _check_hermitian(mat)


def materialize_diag_op(op) -> np.ndarray:
    """Sum_a d_a |a><a| via materialized graph-basis vectors."""
    g = op.graph
    _check_cap(g.n, MAX_DENSE_MATRIX, "dense operators")
    N = 1 << g.n
    # all basis vectors at once: column a = signed copy of |G>
    base = materialize_graph_state(g)
    v = np.arange(N, dtype=np.uint64)
    signs = 1.0 - 2.0 * (np.bitwise_count(v[:, None] & v[None, :]) & np.uint64(1)).astype(float)
    vecs = base[:, None] * signs  # [:, a] = |a>
    return (vecs * op.diag[None, :]) @ vecs.conj().T


def dense_partial_transpose(mat: np.ndarray, part: Bipartition) -> np.ndarray:
    """Index swap of the M-subsystem in the computational basis."""
    N = mat.shape[0]
    n = N.bit_length() - 1
    if part.n != n:
        raise UsageError("bipartition size mismatch")
    m = part.mask
    idx = np.arange(N)
    rows = (idx[:, None] & ~m) | (idx[None, :] & m)
    cols = (idx[None, :] & ~m) | (idx[:, None] & m)
    return mat[rows, cols]


def hermitian_eigenvalues(mat: np.ndarray, check_residual: bool = False) -> np.ndarray:
    """Ascending spectrum of a Hermitian matrix (LAPACK backend)."""
    if mat.shape[0] > (1 << MAX_DENSE_MATRIX):
        raise CapExceededError("eigensolver capped at dim 256")
    _check_hermitian(mat)
    if check_residual:
        vals, vecs = np.linalg.eigh(mat)
        scale = max(1.0, np.abs(mat).max())
        resid = np.abs(mat @ vecs - vecs * vals[None, :]).max()
        if resid > 1e-9 * scale:
            raise UsageError(f"eigen residual {resid} too large")
        return vals
    return np.linalg.eigvalsh(mat)


def min_eigenvalue(mat: np.ndarray) -> float:
    return float(hermitian_eigenvalues(mat)[0])


def negativity(rho: np.ndarray, part: Bipartition) -> float:
    """Sum of |negative eigenvalues| of rho^{T_M}; requires a valid state."""
    _check_hermitian(rho)
    vals = hermitian_eigenvalues(rho)
    if vals[0] < -1e-9 or abs(vals.sum() - 1.0) > 1e-9:
        raise UsageError("input is not a density matrix")
    pt_vals = hermitian_eigenvalues(dense_partial_transpose(rho, part))
    return float(-pt_vals[pt_vals < 0].sum())


def schmidt_coefficients(vec: np.ndarray, part: Bipartition) -> np.ndarray:
    """Descending Schmidt coefficients across M | complement(M).

    Uses the Gram-matrix route: eigenvalues of the reduced density matrix of
    the smaller side, square-rooted.
    """
    N = vec.shape[0]
    n = N.bit_length() - 1
    _check_cap(n, MAX_DENSE_VECTOR, "Schmidt decompositions")
    members = part.members()
    rest = [q for q in range(n) if q not in members]
    if len(members) > len(rest):
        members, rest = rest, members
    dm = 1 << len(members)
    dr = 1 << len(rest)
    resh = np.zeros((dm, dr), dtype=complex)
    idx = np.arange(N, dtype=np.uint64)
    im = np.zeros(N, dtype=np.int64)
    for k, q in enumerate(members):
        im |= (((idx >> np.uint64(q)) & np.uint64(1)) << np.uint64(k)).astype(np.int64)
    ir = np.zeros(N, dtype=np.int64)
    for k, q in enumerate(rest):
        ir |= (((idx >> np.uint64(q)) & np.uint64(1)) << np.uint64(k)).astype(np.int64)
    resh[im, ir] = vec
    gram = resh @ resh.conj().T
    vals = np.linalg.eigvalsh(gram)
    vals = np.clip(vals, 0.0, None)
    return np.sqrt(vals[::-1])


# ---------------------------------------------------------------------------
# Witness verification and lemma-style property helpers
# ---------------------------------------------------------------------------

PSD_TOL = 1e-9


def verify_witness(rec, mode: str, certificates=None, parts=None) -> dict:
    """Dense per-bipartition verification report.

    mode='fully_ppt_dense': min eigenvalue of W^{T_M} >= -tol for every cut.
    mode='decomposable_with_certs': P_M >= 0 and (W - P_M)^{T_M} >= 0 given
    certificates (a dict mask -> PTCertificate or mask -> diag array).
    """
    from .graphs import enumerate_bipartitions

    g = rec.graph
    _check_cap(g.n, MAX_DENSE_MATRIX, "dense verification")
    wd = materialize_diag_op(rec.op)
    parts = parts if parts is not None else enumerate_bipartitions(g.n)
    scale = max(1.0, np.abs(rec.op.diag).max())
    report = {"mode": mode, "per_M": [], "pass": True}
    for part in parts:
        if mode == "fully_ppt_dense":
            ev = min_eigenvalue(dense_partial_transpose(wd, part))
        elif mode == "decomposable_with_certs":
            if certificates is None or part.mask not in certificates:
                raise UsageError(f"missing certificate for mask {part.mask}")
            cert = certificates[part.mask]
            pdiag = cert if isinstance(cert, np.ndarray) else cert.diag(g.n)
            if pdiag.min() < -PSD_TOL:
                report["per_M"].append({"mask": part.mask, "min_eig": float(pdiag.min()), "pass": False})
                report["pass"] = False
                continue
            from .diagops import DiagonalOperator

            pd = materialize_diag_op(DiagonalOperator.from_diag(g, pdiag))
            ev = min_eigenvalue(dense_partial_transpose(wd - pd, part))
        else:
            raise UsageError(f"unknown verification mode {mode!r}")
        ok = ev >= -PSD_TOL * scale
        report["per_M"].append({"mask": part.mask, "min_eig": ev, "pass": bool(ok)})
        report["pass"] &= ok
    return report


def pt_matrix_element(g: Graph, a: int, c: int, part: Bipartition) -> float:
    """<c| (|a><a|)^{T_M} |c> computed densely."""
    va = materialize_basis_vector(g, a)
    vc = materialize_basis_vector(g, c)
    pt = dense_partial_transpose(np.outer(va, va.conj()), part)
    return float(np.real(vc.conj() @ pt @ vc))


def flip_pair_pt_deviation(g: Graph, a: int, k: int) -> float:
    """Max deviation of (|a><a| + |c><c|)^{T_k} from itself, c = neighborhood flip."""
    c = a ^ g.neighbor_masks[k]
    va = materialize_basis_vector(g, a)
    vc = materialize_basis_vector(g, c)
    op = np.outer(va, va.conj()) + np.outer(vc, vc.conj())
    pt = dense_partial_transpose(op, Bipartition(1 << k, g.n))
    return float(np.abs(pt - op).max())


def single_qubit_pt_overlap(g: Graph, a: int, q: int) -> float:
    """<a| (|G><G|)^{T_q} |a> computed densely (vanishing-condition helper)."""
    vg = materialize_graph_state(g)
    va = materialize_basis_vector(g, a)
    pt = dense_partial_transpose(np.outer(vg, vg.conj()), Bipartition(1 << q, g.n))
    return float(np.real(va.conj() @ pt @ va))
