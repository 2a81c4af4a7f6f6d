import numpy as np
import pytest

from graphwit.dense import materialize_basis_vector, materialize_pauli
from graphwit.errors import GraphwitError
from graphwit.graphs import Bipartition, Graph, enumerate_bipartitions, linear_graph, star_graph
from graphwit.stabilizer import (
    PauliWord,
    eigenvalue_on_basis,
    flip_mask,
    generator_word,
    identity_word,
    pt_sign,
    pt_sign_vector,
    stab_element,
    y_bit_table,
)


def test_generator_words():
    w = generator_word(linear_graph(3), 1)
    assert (w.x_mask, w.z_mask, w.phase_power) == (0b010, 0b101, 0)
    lone = generator_word(Graph(2, []), 0)
    assert (lone.x_mask, lone.z_mask) == (0b01, 0)
    hub = generator_word(star_graph(4), 0)
    assert (hub.x_mask, hub.z_mask) == (0b0001, 0b1110)


def test_identity_element():
    g = linear_graph(4)
    w = stab_element(g, 0)
    assert w == identity_word(4)


def test_elements_are_hermitian_with_real_sign(random_graph):
    g = random_graph(5)
    for x in range(1 << g.n):
        w = stab_element(g, x)
        assert w.phase_power in (0, 2)
        assert w.is_hermitian()
        assert w.sign in (-1, 1)
        # squares to the identity with phase +1
        sq = w * w
        assert (sq.x_mask, sq.z_mask, sq.phase_power) == (0, 0, 0)


def test_group_law(random_graph, rng):
    g = random_graph(6)
    for _ in range(25):
        x1, x2 = rng.integers(0, 1 << g.n, 2)
        assert stab_element(g, int(x1)) * stab_element(g, int(x2)) == stab_element(
            g, int(x1 ^ x2)
        )


def test_bell_double_generator_is_yy():
    g = Graph(2, [(0, 1)])
    w = stab_element(g, 0b11)
    dense = materialize_pauli(w)
    yy = np.kron(
        np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]])
    )  # qubit 0 is the least-significant factor
    assert np.abs(dense - yy).max() < 1e-15
    # matches the product of the two generator matrices
    prod = materialize_pauli(generator_word(g, 0)) @ materialize_pauli(generator_word(g, 1))
    assert np.abs(dense - prod).max() < 1e-15


def test_disjoint_supports_no_phase():
    g = linear_graph(4)
    w = stab_element(g, 0b1001)
    assert w.phase_power == 0
    assert w.y_mask() == 0


def test_eigenvalue_law_dense():
    g = linear_graph(4)
    for x in range(16):
        dense = materialize_pauli(stab_element(g, x))
        for a in (0, 3, 9, 15):
            vec = materialize_basis_vector(g, a)
            lam = eigenvalue_on_basis(x, a)
            assert np.abs(dense @ vec - lam * vec).max() < 1e-12


def test_materialized_words_match_tracked_form(random_graph):
    g = random_graph(4)
    for x in range(1 << g.n):
        w = stab_element(g, x)
        dense = materialize_pauli(w)
        assert np.abs(dense @ dense - np.eye(1 << g.n)).max() < 1e-12


def test_pt_sign_examples():
    g = linear_graph(4)
    any_part = Bipartition(0b0010, 4)
    assert pt_sign(g, 0, any_part) == 1
    bell = Graph(2, [(0, 1)])
    assert pt_sign(bell, 0b11, Bipartition(0b01, 2)) == -1
    # X Z Z X contains no Y: invariant for every cut
    for part in enumerate_bipartitions(4):
        assert pt_sign(g, 0b1001, part) == 1


def test_pt_sign_matches_dense_transpose(random_graph):
    g = random_graph(4)
    n = g.n
    for x in range(1 << n):
        dense = materialize_pauli(stab_element(g, x))
        for part in enumerate_bipartitions(n):
            from graphwit.dense import dense_partial_transpose

            pt = dense_partial_transpose(dense, part)
            s = pt_sign(g, x, part)
            assert np.abs(pt - s * dense).max() < 1e-12


def test_pt_sign_complement_symmetry(random_graph):
    g = random_graph(5)
    for part in enumerate_bipartitions(g.n):
        comp = part.complement()
        for x in range(0, 1 << g.n, 3):
            assert pt_sign(g, x, part) == pt_sign(g, x, comp)


def test_pt_sign_vector_consistent(random_graph):
    g = random_graph(5)
    part = Bipartition(0b00110, 5)
    vec = pt_sign_vector(g, part)
    for x in range(1 << g.n):
        assert vec[x] == pt_sign(g, x, part)


def test_y_bit_table(random_graph):
    g = random_graph(4)
    y = y_bit_table(g)
    for x in range(1 << g.n):
        w = stab_element(g, x)
        for q in range(g.n):
            assert y[q, x] == ((w.y_mask() >> q) & 1)


def test_flip_masks():
    g4 = star_graph(4)
    zbit, nbr = flip_mask(g4, 2)
    assert zbit == 0b0100
    assert flip_mask(g4, 0)[1] == 0b1110  # hub flip touches all leaves
    assert flip_mask(g4, 1)[1] == 0b0001  # leaf flip touches the hub only
    a = 0b1010
    assert a ^ zbit == 0b1110


def test_word_multiplication_raises_on_mismatch():
    with pytest.raises(GraphwitError):
        identity_word(2) * identity_word(3)
    with pytest.raises(GraphwitError):
        PauliWord(2, 0b01, 0b01, 1).sign
