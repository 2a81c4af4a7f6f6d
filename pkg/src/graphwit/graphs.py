"""Graphs, named graph families, bipartitions, and B-set validity checks.

Vertices are 0-based everywhere in the library and in JSON files; the CLI
converts to and from the 1-based convention used in the literature.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations

from .errors import CapExceededError, UsageError

MAX_QUBITS = 24


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1; immutable after construction."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges):
        if not 1 <= n:
            raise UsageError(f"vertex count must be >= 1, got {n}")
        if n > MAX_QUBITS:
            raise CapExceededError(f"n = {n} exceeds the {MAX_QUBITS}-qubit cap")
        norm = set()
        for i, j in edges:
            if i == j:
                raise UsageError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise UsageError(f"edge ({i},{j}) out of range for n={n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Per-vertex adjacency bitmasks (cached)."""
        cached = self.__dict__.get("_nb")
        if cached is None:
            nb = [0] * self.n
            for i, j in self.edges:
                nb[i] |= 1 << j
                nb[j] |= 1 << i
            cached = tuple(nb)
            self.__dict__["_nb"] = cached
        return cached

    def neighborhood(self, i: int) -> set[int]:
        self._check_vertex(i)
        m = self.neighbor_masks[i]
        return {k for k in range(self.n) if (m >> k) & 1}

    def closed_neighborhood(self, i: int) -> set[int]:
        """N(i) together with i itself."""
        return self.neighborhood(i) | {i}

    def degree(self, i: int) -> int:
        self._check_vertex(i)
        return bin(self.neighbor_masks[i]).count("1")

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        nb = self.neighbor_masks
        seen = 1
        stack = [0]
        while stack:
            v = stack.pop()
            new = nb[v] & ~seen
            while new:
                low = new & -new
                seen |= low
                stack.append(low.bit_length() - 1)
                new ^= low
        return seen == (1 << self.n) - 1

    def _check_vertex(self, i: int):
        if not 0 <= i < self.n:
            raise UsageError(f"vertex {i} out of range for n={self.n}")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Graph":
        try:
            return cls(int(obj["n"]), [tuple(e) for e in obj["edges"]])
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed graph JSON: {exc}") from exc


def local_complement(g: Graph, i: int) -> Graph:
    """Toggle all edges among the neighbors of vertex i."""
    g._check_vertex(i)
    nbrs = sorted(g.neighborhood(i))
    edges = set(g.edges)
    for a, b in combinations(nbrs, 2):
        e = (a, b)
        if e in edges:
            edges.remove(e)
        else:
            edges.add(e)
    return Graph(g.n, edges)


def delete_intra_partition_edges(g: Graph, part: "Bipartition") -> Graph:
    """Keep only edges crossing the bipartition; the result is bipartite."""
    m = part.mask
    kept = [(i, j) for i, j in g.edges if ((m >> i) & 1) != ((m >> j) & 1)]
    return Graph(g.n, kept)


@dataclass(frozen=True)
class Bipartition:
    """A strict nonempty subset M of the qubits, stored as a bitmask.

    The canonical representative of {M, complement(M)} excludes qubit 0, so
    enumeration yields exactly 2^(n-1) - 1 distinct bipartitions.
    """

    mask: int
    n: int

    def __post_init__(self):
        if not 0 < self.mask < (1 << self.n) - 1 or self.mask < 0:
            raise UsageError(
                f"bipartition mask {self.mask:#b} is not a strict nonempty subset"
            )

    def canonical(self) -> "Bipartition":
        if self.mask & 1:
            return Bipartition(((1 << self.n) - 1) ^ self.mask, self.n)
        return self

    def complement(self) -> "Bipartition":
        return Bipartition(((1 << self.n) - 1) ^ self.mask, self.n)

    def members(self) -> list[int]:
        return [q for q in range(self.n) if (self.mask >> q) & 1]

    def size(self) -> int:
        return bin(self.mask).count("1")


def enumerate_bipartitions(n: int) -> list[Bipartition]:
    """All canonical bipartitions (qubit 0 never in M): 2^(n-1) - 1 of them."""
    if n < 2:
        return []
    return [Bipartition(m << 1, n) for m in range(1, 1 << (n - 1))]


@dataclass(frozen=True)
class BSet:
    """Qubits pairwise at graph distance >= 3: not adjacent, no shared neighbor."""

    members: tuple[int, ...]
    graph: Graph = field(repr=False)

    def __init__(self, graph: Graph, members):
        mem = tuple(sorted(members))
        if len(set(mem)) != len(mem):
            raise UsageError(f"duplicate members in B-set {mem}")
        for v in mem:
            graph._check_vertex(v)
        bad = _bset_violation(graph, mem)
        if bad is not None:
            raise UsageError(
                f"B-set {mem} invalid: qubits {bad[0]} and {bad[1]} are "
                f"{'adjacent' if bad[2] else 'sharing a neighbor'}"
            )
        object.__setattr__(self, "members", mem)
        object.__setattr__(self, "graph", graph)

    def mask(self) -> int:
        return sum(1 << v for v in self.members)

    def __len__(self):
        return len(self.members)


def _bset_violation(g: Graph, members) -> tuple[int, int, bool] | None:
    nb = g.neighbor_masks
    for a, b in combinations(members, 2):
        if (nb[a] >> b) & 1:
            return (a, b, True)
        if nb[a] & nb[b]:
            return (a, b, False)
    return None


def is_valid_bset(g: Graph, members) -> bool:
    mem = list(members)
    if len(set(mem)) != len(mem):
        raise UsageError(f"duplicate members in {mem}")
    for v in mem:
        g._check_vertex(v)
    return _bset_violation(g, mem) is None


def enumerate_bsets(g: Graph, max_results: int = 64) -> list[BSet]:
    """All inclusion-maximal valid B-sets, largest first, then lexicographic.

    Branch-and-bound over the conflict graph (u ~ v iff distance <= 2); fine
    for n <= 24 on the sparse graphs used here.
    """
    nb = g.neighbor_masks
    conflict = [0] * g.n
    for u in range(g.n):
        c = nb[u]
        for v in range(g.n):
            if v != u and (nb[u] & nb[v] or (nb[u] >> v) & 1):
                c |= 1 << v
        conflict[u] = c & ~(1 << u)

    results: list[tuple[int, ...]] = []
    full = (1 << g.n) - 1

    def grow(current: int, candidates: int, excluded: int):
        if not candidates and not excluded:
            results.append(tuple(v for v in range(g.n) if (current >> v) & 1))
            return
        # Bron-Kerbosch pivot: most non-conflicting candidates
        pool = candidates | excluded
        pivot = max(
            (v for v in range(g.n) if (pool >> v) & 1),
            key=lambda v: bin(candidates & ~conflict[v]).count("1"),
        )
        branch = candidates & (conflict[pivot] | (1 << pivot))
        while branch:
            low = branch & -branch
            v = low.bit_length() - 1
            grow(
                current | low,
                candidates & ~conflict[v] & ~low,
                excluded & ~conflict[v] & ~low,
            )
            candidates &= ~low
            excluded |= low
            branch ^= low
        return

    grow(0, full, 0)
    uniq = sorted(set(results), key=lambda t: (-len(t), t))
    return [BSet(g, t) for t in uniq[:max_results]]


# ---------------------------------------------------------------------------
# Named families and the shipped catalog
# ---------------------------------------------------------------------------


def linear_graph(n: int) -> Graph:
    if n < 1:
        raise UsageError("linear(n) needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def ring_graph(n: int) -> Graph:
    if n < 3:
        raise UsageError("ring(n) needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Hub at vertex 0; the graph of the n-qubit GHZ state."""
    if n < 1:
        raise UsageError("star(n) needs n >= 1")
    return Graph(n, [(0, k) for k in range(1, n)])


def grid_graph(w: int, h: int, periodic: bool = False) -> Graph:
    """Row-major w x h grid; periodic wraps both directions (torus)."""
    if w < 2 or h < 2:
        raise UsageError("grid needs both sides >= 2")
    edges = set()
    for r in range(h):
        for c in range(w):
            q = r * w + c
            if c + 1 < w:
                edges.add((q, q + 1))
            elif periodic and w > 2:
                edges.add((r * w, q))
            if r + 1 < h:
                edges.add((q, q + w))
            elif periodic and h > 2:
                edges.add((c, q))
    return Graph(w * h, edges)


def make_named(family: str, *params: int, periodic: bool = False) -> Graph:
    """Construct a named graph: catalog(id), linear(n), ring(n), star(n), grid(w,h)."""
    family = family.lower()
    if family == "catalog":
        (gid,) = params
        return catalog_graph(gid)
    if family == "linear":
        (n,) = params
        return linear_graph(n)
    if family == "ring":
        (n,) = params
        return ring_graph(n)
    if family == "star":
        (n,) = params
        return star_graph(n)
    if family == "grid":
        w, h = params
        return grid_graph(w, h, periodic)
    raise UsageError(f"unknown graph family {family!r}")


def _load_catalog() -> dict[int, dict]:
    text = resources.files("graphwit.data").joinpath("catalog.json").read_text()
    entries = json.loads(text)
    return {e["id"]: e for e in entries}


_CATALOG_CACHE: dict[int, dict] | None = None


def catalog_entries() -> dict[int, dict]:
    global _CATALOG_CACHE
    if _CATALOG_CACHE is None:
        _CATALOG_CACHE = _load_catalog()
    return _CATALOG_CACHE


def catalog_entry(gid: int) -> dict:
    entries = catalog_entries()
    if gid not in entries:
        raise UsageError(f"catalog id {gid} out of range 1..{len(entries)}")
    return entries[gid]


def catalog_graph(gid: int) -> Graph:
    e = catalog_entry(gid)
    return Graph(e["n"], [tuple(t) for t in e["edges"]])


def catalog_reference_tolerance(gid: int) -> tuple[float, Fraction | None]:
    """Reference white-noise tolerance: (float value, exact fraction or None)."""
    e = catalog_entry(gid)
    ref = e["reference_tolerance"]
    if "/" in ref:
        fr = Fraction(ref)
        return float(fr), fr
    return float(ref), None
