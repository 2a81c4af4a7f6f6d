import numpy as np
import pytest

from graphwit.dense import (
    dense_partial_transpose,
    hermitian_eigenvalues,
    materialize_basis_vector,
    materialize_diag_op,
    materialize_graph_state,
    materialize_pauli,
    min_eigenvalue,
    negativity,
    schmidt_coefficients,
    verify_witness,
)
from graphwit.diagops import DiagonalOperator, white_noise_state
from graphwit.errors import CapExceededError, UsageError
from graphwit.graphs import Bipartition, Graph, enumerate_bipartitions, linear_graph
from graphwit.stabilizer import generator_word, stab_element
from graphwit.witnesses import bset_ppt_witness, projector_witness

BELL = Graph(2, [(0, 1)])


def test_bell_state_amplitudes():
    v = materialize_graph_state(BELL)
    assert np.allclose(v, np.array([1, 1, 1, -1]) / 2)


def test_edgeless_state_uniform():
    v = materialize_graph_state(Graph(3, []))
    assert np.allclose(v, np.full(8, 8**-0.5))


def test_basis_orthonormality(rng):
    g = linear_graph(5)
    for _ in range(20):
        a, b = rng.integers(0, 32, 2)
        va = materialize_basis_vector(g, int(a))
        vb = materialize_basis_vector(g, int(b))
        want = 1.0 if a == b else 0.0
        assert abs(va.conj() @ vb - want) < 1e-12


def test_generator_eigenrelation(random_graph):
    g = random_graph(4)
    for a in range(1 << g.n):
        va = materialize_basis_vector(g, a)
        for i in range(g.n):
            gi = materialize_pauli(generator_word(g, i))
            lam = -1.0 if (a >> i) & 1 else 1.0
            assert np.abs(gi @ va - lam * va).max() < 1e-12


def test_materialize_pauli_examples():
    ident = materialize_pauli(stab_element(linear_graph(2), 0))
    assert np.array_equal(ident, np.eye(4))
    g1 = materialize_pauli(generator_word(linear_graph(3), 1))
    x = np.array([[0, 1], [1, 0]])
    z = np.diag([1, -1])
    # qubit 0 is the least-significant tensor factor
    assert np.abs(g1 - np.kron(z, np.kron(x, z))).max() < 1e-15


def test_materialize_pauli_rejects_imaginary_phase():
    from graphwit.stabilizer import PauliWord

    with pytest.raises(UsageError):
        materialize_pauli(PauliWord(2, 0b01, 0b00, 1))


def test_materialize_diag_op():
    g = linear_graph(3)
    ident = materialize_diag_op(DiagonalOperator.from_diag(g, np.ones(8)))
    assert np.abs(ident - np.eye(8)).max() < 1e-12
    proj = projector_witness(g)
    vals = hermitian_eigenvalues(materialize_diag_op(proj.op))
    assert abs(vals[0] + 0.5) < 1e-12
    assert np.abs(vals[1:] - 0.5).max() < 1e-12
    # diagonal elements in the graph basis round-trip
    for a in (0, 3, 5):
        va = materialize_basis_vector(g, a)
        got = va.conj() @ materialize_diag_op(proj.op) @ va
        assert abs(got - proj.op.diag[a]) < 1e-12


def test_dense_pt_examples():
    ident = np.eye(4, dtype=complex)
    part = Bipartition(0b01, 2)
    assert np.array_equal(dense_partial_transpose(ident, part), ident)
    bellproj = materialize_diag_op(
        DiagonalOperator.from_diag(BELL, np.array([1.0, 0, 0, 0]))
    )
    vals = hermitian_eigenvalues(dense_partial_transpose(bellproj, part))
    assert np.allclose(vals, [-0.5, 0.5, 0.5, 0.5])
    twice = dense_partial_transpose(dense_partial_transpose(bellproj, part), part)
    assert np.abs(twice - bellproj).max() < 1e-15


def test_dense_pt_agrees_with_diag_path(random_graph, rng):
    g = random_graph(4)
    op = DiagonalOperator.from_diag(g, rng.standard_normal(1 << g.n))
    dense = materialize_diag_op(op)
    for part in enumerate_bipartitions(g.n):
        a = dense_partial_transpose(dense, part)
        b = materialize_diag_op(op.partial_transpose(part))
        assert np.abs(a - b).max() < 1e-12


def test_eigensolver_examples():
    assert np.allclose(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    assert np.allclose(hermitian_eigenvalues(x, check_residual=True), [-1, 1])
    with pytest.raises(UsageError):
        hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(CapExceededError):
        hermitian_eigenvalues(np.eye(512))
    assert min_eigenvalue(np.diag([3.0, -2.0])) == -2.0


def test_negativity_examples():
    part = Bipartition(0b01, 2)
    bellproj = materialize_diag_op(
        DiagonalOperator.from_diag(BELL, np.array([1.0, 0, 0, 0]))
    )
    assert abs(negativity(bellproj, part) - 0.5) < 1e-12
    mixed = np.eye(4) / 4
    assert negativity(mixed, part) == 0.0
    at_threshold = materialize_diag_op(white_noise_state(BELL, 2 / 3).to_operator())
    assert abs(negativity(at_threshold, part)) <= 1e-9
    with pytest.raises(UsageError):
        negativity(np.diag([2.0, 0, 0, 0]), part)


def test_schmidt_examples():
    lam = schmidt_coefficients(materialize_graph_state(BELL), Bipartition(0b01, 2))
    assert np.allclose(lam, [2**-0.5, 2**-0.5])
    product = np.zeros(4, dtype=complex)
    product[0] = 1.0
    lam = schmidt_coefficients(product, Bipartition(0b01, 2))
    assert np.allclose(lam, [1.0, 0.0])


def test_schmidt_uses_smaller_side():
    g = linear_graph(6)
    v = materialize_graph_state(g)
    lam = schmidt_coefficients(v, Bipartition(0b111110, 6))
    assert lam.shape == (2,)
    assert abs((lam**2).sum() - 1.0) < 1e-12


def test_verify_witness_ppt():
    rec = bset_ppt_witness(linear_graph(5), [0, 4])
    rep = verify_witness(rec, "fully_ppt_dense")
    assert rep["pass"]
    assert len(rep["per_M"]) == 15


def test_verify_witness_flags_broken_operator():
    g = linear_graph(3)
    d = np.full(8, 0.5)
    d[0] = -1.5  # over-subtracted projector: not a decomposable witness
    from graphwit.witnesses import WitnessRecord

    rec = WitnessRecord(DiagonalOperator.from_diag(g, d), "lp_optimal")
    rep = verify_witness(rec, "fully_ppt_dense")
    assert not rep["pass"]
    assert any(r["min_eig"] < -1e-6 for r in rep["per_M"])


def test_verify_witness_needs_certificates():
    rec = bset_ppt_witness(linear_graph(5), [0, 4])
    with pytest.raises(UsageError):
        verify_witness(rec, "decomposable_with_certs")
    with pytest.raises(UsageError):
        verify_witness(rec, "sideways")


@pytest.mark.parametrize("gid", [1, 2, 4, 6, 8])
def test_projector_pt_spectrum_bounds(gid):
    # partial transposes of the projector witness stay between 0 and 1
    from graphwit.graphs import catalog_graph

    g = catalog_graph(gid)
    rec = projector_witness(g)
    dense = materialize_diag_op(rec.op)
    for part in enumerate_bipartitions(g.n):
        vals = hermitian_eigenvalues(dense_partial_transpose(dense, part))
        assert vals[0] >= -1e-12
        assert vals[-1] <= 1.0 + 1e-12
