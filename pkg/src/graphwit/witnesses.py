"""Analytic witness constructions, tolerance formulas, and PT certificates.

All constructions produce graph-diagonal operators normalized so the pure
graph state has overlap -1/2; LP-optimal witnesses (see lp.py) use trace 1
instead.  `method` strings are part of the JSON/CLI interface.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .diagops import DiagonalOperator, wht_forward
from .errors import PreconditionError, UsageError
from .graphs import (
    Bipartition,
    BSet,
    Graph,
    catalog_entry,
    delete_intra_partition_edges,
    grid_graph,
    is_valid_bset,
    linear_graph,
)

METHODS = (
    "projector",
    "lemma3",
    "lemma4_min",
    "lemma5_ppt",
    "lemma6_min",
    "torus",
    "two_setting",
    "two_setting_improved",
    "catalog",
    "lp_optimal",
)

VERIFIED_STATES = ("unverified", "ppt_checked", "decomposable_certified")


@dataclass
class WitnessRecord:
    """A witness diagonal plus construction metadata and verification status."""

    op: DiagonalOperator
    method: str
    bsets: list[tuple[int, ...]] = field(default_factory=list)
    tolerance: float | None = None
    tolerance_exact: Fraction | None = None
    verified: str = "unverified"

    def __post_init__(self):
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")
        if self.tolerance is None:
            try:
                self.tolerance, self.tolerance_exact = white_noise_tolerance(self.op)
            except UsageError:
                pass

    @property
    def graph(self) -> Graph:
        return self.op.graph

    @property
    def n(self) -> int:
        return self.op.n

    def to_json(self) -> dict:
        out = self.op.to_json()
        out["method"] = self.method
        out["bsets"] = [list(b) for b in self.bsets]
        out["tolerance"] = self.tolerance
        if self.tolerance_exact is not None:
            out["tolerance_exact"] = str(self.tolerance_exact)
        out["verified"] = self.verified
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "WitnessRecord":
        from .diagops import operator_from_json

        op = operator_from_json(obj)
        rec = cls(
            op,
            obj.get("method", "lp_optimal"),
            [tuple(b) for b in obj.get("bsets", [])],
            tolerance=obj.get("tolerance"),
            verified=obj.get("verified", "unverified"),
        )
        te = obj.get("tolerance_exact")
        if te:
            rec.tolerance_exact = Fraction(te)
        return rec


def white_noise_tolerance(op: DiagonalOperator) -> tuple[float, Fraction | None]:
    """Largest white-noise fraction still detected by the witness.

    p_tol = [1 - tr(W) / (2^n <G|W|G>)]^{-1}; exact as a rational when the
    diagonal entries are known exactly (dyadic floats reconstruct losslessly).
    """
    d0 = float(op.diag[0])
    if d0 >= 0:
        raise UsageError("witness does not detect the pure graph state (<G|W|G> >= 0)")
    N = 1 << op.n
    exact = op.exact_rationals()
    if exact is not None:
        frac = 1 / (1 - sum(exact) / (N * exact[0]))
        return float(frac), frac
    return 1.0 / (1.0 - op.trace() / (N * d0)), None


def bset_witness_tolerance(n: int, b: int) -> tuple[Fraction, float]:
    """Closed-form tolerance of the one-B-set decomposable witness, plus the
    required-fidelity approximation b * 2^-b for large n."""
    if b < 2:
        raise UsageError("closed form needs |B| >= 2")
    if b > n:
        raise UsageError("|B| cannot exceed n")
    p = 1 / (1 - Fraction(2) ** (-n + 1) + Fraction(2) ** (-b) * (b + 1))
    return p, float(b) * 2.0 ** (-b)


def _require_connected(g: Graph):
    if not g.is_connected():
        raise PreconditionError("analytic constructions need a connected graph")


def _bset_counts(g: Graph, members) -> np.ndarray:
    """m_B(a): number of set bits of index a inside B, for all 2^n indices."""
    mask = np.uint64(sum(1 << v for v in members))
    a = np.arange(1 << g.n, dtype=np.uint64)
    return np.bitwise_count(a & mask).astype(np.int64)


def _projector_diag(n: int) -> np.ndarray:
    d = np.full(1 << n, 0.5)
    d[0] = -0.5
    return d


def projector_witness(g: Graph) -> WitnessRecord:
    """W = 1/2 - |G><G| in the graph basis."""
    _require_connected(g)
    op = DiagonalOperator.from_diag(g, _projector_diag(g.n))
    return WitnessRecord(op, "projector")


def _as_bset(g: Graph, members) -> BSet:
    return members if isinstance(members, BSet) else BSet(g, members)


def bset_witness(g: Graph, members) -> WitnessRecord:
    """Fully decomposable witness from one distance-3 independent subset B.

    Subtracts 1/2 from the projector witness wherever the basis index has at
    least two excitations inside B.  With |B| < 2 nothing can be subtracted
    and the projector witness is returned with a warning.
    """
    _require_connected(g)
    b = _as_bset(g, members)
    if len(b) < 2:
        warnings.warn("B-set smaller than 2 adds no terms; returning projector witness")
        rec = projector_witness(g)
        rec.bsets = [b.members]
        return rec
    m = _bset_counts(g, b.members)
    d = _projector_diag(g.n) - 0.5 * (m >= 2)
    op = DiagonalOperator.from_diag(g, d)
    return WitnessRecord(op, "lemma3", [b.members])


def bset_ppt_witness(g: Graph, members) -> WitnessRecord:
    """Fully PPT witness from one subset B: tier 1/2 - 2^-m at m >= 2 excitations."""
    _require_connected(g)
    b = _as_bset(g, members)
    if len(b) < 2:
        warnings.warn("B-set smaller than 2 adds no terms; returning projector witness")
        rec = projector_witness(g)
        rec.bsets = [b.members]
        return rec
    d = _projector_diag(g.n) - _ppt_correction(g, b.members)
    op = DiagonalOperator.from_diag(g, d)
    return WitnessRecord(op, "lemma5_ppt", [b.members])


def _ppt_correction(g: Graph, members) -> np.ndarray:
    m = _bset_counts(g, members)
    return np.where(m >= 2, 0.5 - np.power(2.0, -m.astype(float)), 0.0)


def _check_combination(g: Graph, bsets: list[tuple[int, ...]], mode: str):
    """Raise PreconditionError on the first qubit pair violating the rules."""
    nb = g.neighbor_masks
    if mode == "lemma4":
        # across different subsets: identical neighborhoods, or disjoint
        # neighborhoods and not adjacent
        for i in range(len(bsets)):
            for k in range(i + 1, len(bsets)):
                for u in bsets[i]:
                    for v in bsets[k]:
                        if u == v or nb[u] == nb[v]:
                            continue
                        if nb[u] & nb[v]:
                            raise PreconditionError(
                                f"qubits {u} and {v} from different subsets share a "
                                "neighbor without having equal neighborhoods",
                                detail=(u, v),
                            )
                        if (nb[u] >> v) & 1:
                            raise PreconditionError(
                                f"qubits {u} and {v} from different subsets are adjacent",
                                detail=(u, v),
                            )
    else:  # lemma6: union must be pairwise non-adjacent
        union = sorted({q for b in bsets for q in b})
        for idx, u in enumerate(union):
            for v in union[idx + 1:]:
                if (nb[u] >> v) & 1:
                    raise PreconditionError(
                        f"qubits {u} and {v} in the union are neighbors", detail=(u, v)
                    )


def combine_min(records: list[WitnessRecord], mode: str, force: bool = False) -> WitnessRecord:
    """Elementwise minimum of compatible witnesses; better than each input.

    mode='lemma4' combines decomposable one-subset witnesses, mode='lemma6'
    combines fully PPT ones.  Precondition checks are strict; `force` downgrades
    a violation to a warning and an 'unverified' record.
    """
    if mode not in ("lemma4", "lemma6"):
        raise UsageError(f"unknown combination mode {mode!r}")
    if len(records) < 2:
        raise UsageError("need at least two witnesses to combine")
    g = records[0].graph
    if any(r.graph != g for r in records):
        raise UsageError("witnesses to combine must share one graph")
    want = "lemma3" if mode == "lemma4" else "lemma5_ppt"
    if any(r.method != want for r in records):
        raise UsageError(f"mode {mode} combines only method={want!r} inputs")
    bsets = [b for r in records for b in r.bsets]
    ok = True
    try:
        _check_combination(g, bsets, mode)
    except PreconditionError:
        if not force:
            raise
        ok = False
        warnings.warn("combination precondition violated; result marked unverified")
    d = np.minimum.reduce([r.op.diag for r in records])
    op = DiagonalOperator.from_diag(g, d)
    rec = WitnessRecord(op, "lemma4_min" if mode == "lemma4" else "lemma6_min", bsets)
    if not ok:
        rec.verified = "unverified"
    return rec


# ---------------------------------------------------------------------------
# Torus and two-setting constructions
# ---------------------------------------------------------------------------


def _torus_side(g: Graph) -> int:
    side = round(g.n ** 0.5)
    if side * side != g.n or side < 3:
        raise PreconditionError("torus witness needs a periodic square grid, side >= 3")
    if g.edges != grid_graph(side, side, periodic=True).edges:
        raise PreconditionError(
            "graph is not the row-major periodic grid this construction expects"
        )
    return side


def torus_diagonal_sets(side: int) -> tuple[list[int], list[int]]:
    """Bitmasks of the two families of wrap-around diagonals of the torus."""
    slash = [
        sum(1 << (r * side + ((r - j) % side)) for r in range(side))
        for j in range(side)
    ]
    backslash = [
        sum(1 << (r * side + ((j - r) % side)) for r in range(side))
        for j in range(side)
    ]
    return slash, backslash


def torus_witness(g: Graph) -> WitnessRecord:
    """Fully PPT witness for the periodic square grid built from diagonal pairs.

    Subtracts 1/4 at indices with odd parity on some pair of qubit-disjoint
    crossing diagonals.  For odd side lengths no disjoint pair exists and the
    correction is empty.
    """
    side = _torus_side(g)
    slash, backslash = torus_diagonal_sets(side)
    a = np.arange(1 << g.n, dtype=np.uint64)
    par_s = [(np.bitwise_count(a & np.uint64(m)) & np.uint64(1)).astype(bool) for m in slash]
    par_b = [(np.bitwise_count(a & np.uint64(m)) & np.uint64(1)).astype(bool) for m in backslash]
    hit = np.zeros(1 << g.n, dtype=bool)
    for i in range(side):
        for j in range(side):
            if slash[i] & backslash[j]:
                continue
            hit |= par_s[i] & par_b[j]
    d = _projector_diag(g.n) - 0.25 * hit
    return WitnessRecord(DiagonalOperator.from_diag(g, d), "torus")


def _require_path(g: Graph) -> int:
    if g.edges != linear_graph(g.n).edges:
        raise PreconditionError("two-setting constructions expect the path graph")
    return g.n


def two_setting_witness(g: Graph) -> WitnessRecord:
    """3/2 - (product of odd-site projectors + product of even-site projectors).

    Measurable with two local settings.  Not a PPT witness itself; its terms
    are transposition-invariant.
    """
    n = _require_path(g)
    a = np.arange(1 << n, dtype=np.uint64)
    odd_mask = np.uint64(sum(1 << q for q in range(0, n, 2)))
    even_mask = np.uint64(sum(1 << q for q in range(1, n, 2)))
    d = 1.5 - ((a & odd_mask) == 0) - ((a & even_mask) == 0)
    return WitnessRecord(DiagonalOperator.from_diag(g, d), "two_setting")


def default_alternating_bsets(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Spacing-4 subsets of the odd sites of a path: {0,4,8,...} and {2,6,10,...}."""
    return tuple(range(0, n, 4)), tuple(range(2, n, 4))


def two_setting_improved(g: Graph, b1=None, b2=None) -> WitnessRecord:
    """Two-setting witness minus the combined PPT-correction of two subsets."""
    n = _require_path(g)
    d1, d2 = default_alternating_bsets(n)
    b1 = tuple(b1) if b1 is not None else d1
    b2 = tuple(b2) if b2 is not None else d2
    for b, start in ((b1, 0), (b2, 2)):
        if len(b) < 2:
            raise PreconditionError(f"subset {b} too small; need >= 2 members")
        if tuple(sorted(b)) != tuple(range(start, start + 4 * len(b), 4)) or max(b) >= n:
            raise PreconditionError(
                f"subset {b} is not the spacing-4 pattern starting at site {start + 1}"
            )
        if not is_valid_bset(g, b):
            raise PreconditionError(f"subset {b} is not a valid B-set")
    base = two_setting_witness(g).op.diag
    corr = np.maximum(_ppt_correction(g, b1), _ppt_correction(g, b2))
    op = DiagonalOperator.from_diag(g, base - corr)
    return WitnessRecord(op, "two_setting_improved", [tuple(b1), tuple(b2)])


# ---------------------------------------------------------------------------
# Shipped catalog witnesses
# ---------------------------------------------------------------------------


def catalog_witness(gid: int) -> WitnessRecord:
    """The shipped optimal witness for catalog graph `gid` (1..19)."""
    e = catalog_entry(gid)
    g = Graph(e["n"], [tuple(t) for t in e["edges"]])
    values = e["witness_diag"]
    exact = None
    if all("/" in s or "." not in s for s in values):
        exact = [Fraction(s) for s in values]
    d = np.array([float(Fraction(s)) if "/" in s else float(s) for s in values])
    op = DiagonalOperator.from_diag(g, d, exact=exact)
    rec = WitnessRecord(op, "catalog")
    if e["tolerance_approximate"]:
        # tabulated constants are rounded to three decimals; the tolerance is
        # only as accurate as they are
        rec.tolerance_exact = None
    return rec


# ---------------------------------------------------------------------------
# PT certificates (the positive parts P_M of W = P_M + Q_M^{T_M})
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PTCertificate:
    """Positive graph-diagonal part certifying decomposability across one cut.

    `indices` lists graph-basis projectors (of the original graph G; the
    bipartite-reduced graph gprime shares its basis labels) summing to P_M.
    An empty set encodes P_M = 0.
    """

    part: Bipartition
    indices: frozenset[int]
    gprime: Graph

    def diag(self, n: int) -> np.ndarray:
        d = np.zeros(1 << n)
        for a in self.indices:
            d[a] = 1.0
        return d


def _pm_indices(gprime: Graph, members) -> frozenset[int]:
    """Index-set algorithm: union XOR-orbits of neighborhood flips, drop the
    last contributing member and the zero index."""
    nb = gprime.neighbor_masks
    steps = [v for v in sorted(members) if nb[v]]
    if len(steps) <= 1:
        return frozenset()
    s = {0}
    for v in steps[:-1]:
        flip = nb[v]
        s |= {t ^ flip for t in s}
    s.discard(0)
    return frozenset(s)


def pt_certificate(g: Graph, members, part: Bipartition) -> PTCertificate:
    """Certificate for the one-subset decomposable witness across cut `part`."""
    b = _as_bset(g, members)
    part = part.canonical()
    gprime = delete_intra_partition_edges(g, part)
    return PTCertificate(part, _pm_indices(gprime, b.members), gprime)


def _aligned_subsets(g: Graph, bsets) -> list[set[int]]:
    """Pad subsets so every neighborhood class is represented in each of them."""
    nb = g.neighbor_masks
    sets = [set(b) for b in bsets]
    changed = True
    while changed:
        changed = False
        for i, src in enumerate(sets):
            for beta in list(src):
                for k, dst in enumerate(sets):
                    if k != i and not any(nb[x] == nb[beta] for x in dst):
                        dst.add(beta)
                        changed = True
    return sets


def combination_pt_certificate(g: Graph, bsets, part: Bipartition) -> PTCertificate:
    """Certificate for a minimum-combined witness: one member per neighborhood
    class when the class sits on a single side of the cut, two otherwise."""
    part = part.canonical()
    nb = g.neighbor_masks
    sets = _aligned_subsets(g, bsets)
    classes: dict[int, set[int]] = {}
    for s in sets:
        for q in s:
            classes.setdefault(nb[q], set()).add(q)
    members = []
    for qubits in classes.values():
        side_m = sorted(q for q in qubits if (part.mask >> q) & 1)
        side_c = sorted(q for q in qubits if not (part.mask >> q) & 1)
        if side_m and side_c:
            members += [side_m[0], side_c[0]]
        else:
            members.append((side_m or side_c)[0])
    gprime = delete_intra_partition_edges(g, part)
    return PTCertificate(part, _pm_indices(gprime, sorted(members)), gprime)


def record_certificate(rec: WitnessRecord, part: Bipartition) -> PTCertificate:
    """Dispatch to the right certificate construction for an analytic record."""
    if rec.method == "lemma3":
        return pt_certificate(rec.graph, rec.bsets[0], part)
    if rec.method == "lemma4_min":
        return combination_pt_certificate(rec.graph, rec.bsets, part)
    raise UsageError(f"no analytic certificate for method {rec.method!r}")


def certificate_residuals(rec: WitnessRecord, parts=None) -> list[tuple[int, float]]:
    """Per-cut minimum of the (W - P_M) PT diagonal; >= -tol certifies W."""
    from .graphs import enumerate_bipartitions
    from .stabilizer import pt_sign_vector

    parts = parts if parts is not None else enumerate_bipartitions(rec.n)
    out = []
    N = 1 << rec.n
    for part in parts:
        cert = record_certificate(rec, part)
        resid = rec.op.diag - cert.diag(rec.n)
        c = wht_forward(resid)
        c *= pt_sign_vector(rec.graph, part)
        q = wht_forward(c)
        q /= N
        out.append((part.mask, float(q.min())))
    return out
