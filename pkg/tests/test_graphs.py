import json

import pytest

from graphwit.errors import CapExceededError, UsageError
from graphwit.graphs import (
    Bipartition,
    BSet,
    Graph,
    catalog_entries,
    catalog_graph,
    delete_intra_partition_edges,
    enumerate_bipartitions,
    enumerate_bsets,
    grid_graph,
    is_valid_bset,
    linear_graph,
    local_complement,
    make_named,
    ring_graph,
    star_graph,
)


def test_graph_normalizes_edges():
    g = Graph(3, [(2, 0), (0, 2), (1, 2)])
    assert g.sorted_edges() == [(0, 2), (1, 2)]


def test_graph_rejects_bad_edges():
    with pytest.raises(UsageError):
        Graph(3, [(0, 0)])
    with pytest.raises(UsageError):
        Graph(3, [(0, 3)])
    with pytest.raises(UsageError):
        Graph(0, [])
    with pytest.raises(CapExceededError):
        Graph(25, [])


def test_connectivity():
    assert linear_graph(5).is_connected()
    assert not Graph(3, [(0, 1)]).is_connected()
    assert Graph(1, []).is_connected()


def test_named_families():
    assert star_graph(4).sorted_edges() == [(0, 1), (0, 2), (0, 3)]
    assert linear_graph(2).sorted_edges() == [(0, 1)]
    torus = make_named("grid", 4, 4, periodic=True)
    assert all(torus.degree(q) == 4 for q in range(16))
    assert sorted(torus.neighborhood(0)) == [1, 3, 4, 12]
    assert ring_graph(4).sorted_edges() == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_named_family_errors():
    with pytest.raises(UsageError):
        make_named("butterfly", 4)
    with pytest.raises(UsageError):
        make_named("grid", 1, 5)
    with pytest.raises(UsageError):
        ring_graph(2)
    with pytest.raises(UsageError):
        linear_graph(0)


def test_neighborhoods():
    assert linear_graph(4).neighborhood(1) == {0, 2}
    assert star_graph(4).neighborhood(0) == {1, 2, 3}
    assert linear_graph(4).closed_neighborhood(1) == {0, 1, 2}
    with pytest.raises(UsageError):
        linear_graph(4).neighborhood(4)


def test_local_complement_path3():
    g = local_complement(linear_graph(3), 1)
    assert g.sorted_edges() == [(0, 1), (0, 2), (1, 2)]


def test_local_complement_star_hub_gives_complete_graph():
    g = local_complement(star_graph(4), 0)
    assert len(g.edges) == 6


@pytest.mark.parametrize("seed", range(5))
def test_local_complement_involution(seed, random_graph):
    g = random_graph()
    for v in range(g.n):
        assert local_complement(local_complement(g, v), v) == g


def test_delete_intra_partition_edges():
    ring4 = ring_graph(4)
    part = Bipartition(0b0101, 4)
    assert delete_intra_partition_edges(ring4, part) == ring4
    g = delete_intra_partition_edges(linear_graph(3), Bipartition(0b011, 3))
    assert g.sorted_edges() == [(1, 2)]
    k3 = Graph(3, [(0, 1), (0, 2), (1, 2)])
    g = delete_intra_partition_edges(k3, Bipartition(0b001, 3))
    assert g.sorted_edges() == [(0, 1), (0, 2)]


def test_delete_intra_partition_is_bipartite(random_graph):
    g = random_graph(6)
    part = Bipartition(0b010110, 6)
    gp = delete_intra_partition_edges(g, part)
    for i, j in gp.edges:
        assert ((part.mask >> i) & 1) != ((part.mask >> j) & 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_bipartition_enumeration_count(n):
    parts = enumerate_bipartitions(n)
    assert len(parts) == 2 ** (n - 1) - 1
    assert len({p.mask for p in parts}) == len(parts)
    for p in parts:
        assert not p.mask & 1  # canonical: qubit 0 stays out of M
        assert p.canonical() == p
        assert p.complement().canonical() == p


def test_bipartition_validation():
    with pytest.raises(UsageError):
        Bipartition(0, 3)
    with pytest.raises(UsageError):
        Bipartition(0b111, 3)
    assert Bipartition(0b101, 3).canonical().mask == 0b010


def test_bset_examples():
    cl7 = linear_graph(7)
    assert is_valid_bset(cl7, [0, 3, 6])
    assert not is_valid_bset(cl7, [0, 2])  # share neighbor 1
    star = star_graph(5)
    assert not is_valid_bset(star, [1, 2])  # leaves share the hub
    with pytest.raises(UsageError):
        is_valid_bset(cl7, [0, 0])
    with pytest.raises(UsageError):
        BSet(cl7, [0, 2])


def test_enumerate_bsets_path7():
    sets = enumerate_bsets(linear_graph(7))
    assert sets[0].members == (0, 3, 6)  # unique maximum-size set comes first
    for b in sets:
        assert is_valid_bset(b.graph, b.members)


def test_enumerate_bsets_star():
    sets = enumerate_bsets(star_graph(5))
    assert all(len(b) == 1 for b in sets)
    assert len(sets) == 5


def test_enumerate_bsets_grid44():
    sets = enumerate_bsets(grid_graph(4, 4), max_results=512)
    assert (0, 3, 9, 15) in [b.members for b in sets]


def test_enumerate_bsets_maximality(random_graph):
    g = random_graph(6)
    for b in enumerate_bsets(g, max_results=16):
        others = set(range(g.n)) - set(b.members)
        for v in others:
            assert not is_valid_bset(g, list(b.members) + [v])


def test_catalog_entries_complete():
    entries = catalog_entries()
    assert sorted(entries) == list(range(1, 20))
    for gid, e in entries.items():
        g = catalog_graph(gid)
        assert g.n == e["n"]
        assert g.is_connected()
        assert len(e["witness_diag"]) == 1 << e["n"]


def test_catalog_known_shapes():
    assert catalog_graph(9) == star_graph(6)
    assert catalog_graph(14) == linear_graph(6)
    assert catalog_graph(18) == ring_graph(6)
    with pytest.raises(UsageError):
        catalog_graph(20)


def test_graph_json_roundtrip(random_graph):
    g = random_graph()
    blob = json.dumps(g.to_json())
    assert Graph.from_json(json.loads(blob)) == g
    with pytest.raises(UsageError):
        Graph.from_json({"n": 3})
