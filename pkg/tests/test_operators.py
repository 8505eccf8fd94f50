import numpy as np
import pytest
from numpy.testing import assert_allclose

from rlab.complexes import CoverMap, build_complex
from rlab.errors import DimensionOutOfRange, IndexConstraintViolated, InvalidParams, NotACover
from rlab.generators import complete, cycle, petersen, torus_triangulation
from rlab.operators import (
    BasisKind,
    ChainBasis,
    ChainOperator,
    OperatorFamily,
    adjacency,
    boundary,
    chain_identity_defect,
    coboundary,
    edge_adjacency,
    export_operator,
    laplacian,
    load_operator,
    orientation_direct_sum,
    pushforward,
    verify_naturality,
)
from rlab.operators.catalog import named_family, parse_operator_names
from rlab.spectra import random_lift


def eigenvalues(op) -> np.ndarray:
    return np.sort(np.linalg.eigvalsh(op.dense()))


def double_cover_of_triangle() -> CoverMap:
    return CoverMap.checked([v % 3 for v in range(6)], cycle(6), cycle(3))


def test_boundary_of_boundary_vanishes() -> None:
    """
    δ_{i+1}δ_i = 0 holds exactly, over the integers, on closed surfaces and
    on a solid tetrahedron.
    """
    torus = torus_triangulation(3, 4)
    assert chain_identity_defect(torus, 0) == 0
    tetrahedron = build_complex([[0, 1, 2, 3]])
    assert chain_identity_defect(tetrahedron, 0) == 0
    assert chain_identity_defect(tetrahedron, 1) == 0


def test_coboundary_signs() -> None:
    X = build_complex([[0, 1, 2]])
    delta = coboundary(X, 1).dense().real
    # faces of (0,1,2): (1,2) with +1, (0,2) with −1, (0,1) with +1
    assert_allclose(delta, [[1, -1, 1]])
    with pytest.raises(DimensionOutOfRange):
        coboundary(X, 2)


def test_boundary_is_adjoint_of_coboundary() -> None:
    X = torus_triangulation(3, 3)
    assert_allclose(boundary(X, 1).dense(), coboundary(X, 0).dense().conj().T)
    assert boundary(X, 2).source == ChainBasis.of(X, 2, BasisKind.FORMS)


def test_vertex_laplacian_of_triangle() -> None:
    """
    Δ_0 on K_3 is the graph Laplacian with spectrum {0, 3, 3}; the lower
    Laplacian vanishes on vertices.
    """
    X = complete(3)
    assert_allclose(eigenvalues(laplacian(X, 0)), [0, 3, 3], atol=1e-12)
    assert laplacian(X, 0, "down").norm() == 0
    with pytest.raises(InvalidParams):
        laplacian(X, 0, "sideways")


def test_laplacians_are_self_adjoint_and_nonnegative() -> None:
    X = torus_triangulation(3, 3)
    for i in range(3):
        op = laplacian(X, i)
        assert op.is_self_adjoint()
        assert eigenvalues(op)[0] > -1e-9
    # two harmonic 1-forms on the torus
    values = eigenvalues(laplacian(X, 1))
    assert int(np.sum(np.abs(values) < 1e-9)) == 2


def test_vertex_adjacency_of_k4() -> None:
    assert_allclose(eigenvalues(adjacency(complete(4), 0)), [-1, -1, -1, 3], atol=1e-12)


def test_adjacency_join_defaults_to_next_dimension() -> None:
    X = torus_triangulation(3, 3)
    default = adjacency(X, 1, None)
    assert default.label == adjacency(X, 1, 2).label
    assert (default.matrix != adjacency(X, 1).matrix).nnz == 0


def test_adjacency_index_constraint() -> None:
    X = build_complex([[0, 1, 2]])
    with pytest.raises(IndexConstraintViolated):
        adjacency(X, 0, 2)
    with pytest.raises(IndexConstraintViolated):
        adjacency(X, 1, 1)
    with pytest.raises(DimensionOutOfRange):
        adjacency(cycle(4), 1, 2)


def test_edge_adjacency_through_triangles() -> None:
    """
    a_{1;2} on a single triangle joins every pair of its edges: K_3 spectrum.
    """
    X = build_complex([[0, 1, 2]])
    assert_allclose(eigenvalues(adjacency(X, 1, 2)), [-1, -1, 2], atol=1e-12)


def test_line_graph_of_k4() -> None:
    """
    The line graph of K_4 is the octahedron: μ + k − 2 for μ in {3, −1, −1, −1}
    plus −2 with multiplicity |E| − |V| = 2.
    """
    values = eigenvalues(edge_adjacency(complete(4)))
    assert_allclose(values, [-2, -2, 0, 0, 0, 4], atol=1e-12)


def test_pushforward_along_double_cover() -> None:
    f = double_cover_of_triangle()
    push = pushforward(f, 0, BasisKind.ANTIFORMS)
    assert push.shape == (3, 6)
    assert_allclose(push.dense().real.sum(axis=1), [2, 2, 2])
    # edge (2, 3) of C_6 maps to (0, 2) reversed
    forms = pushforward(f, 1, BasisKind.FORMS)
    column = forms.source.index((2, 3))
    assert forms.dense()[forms.target.index((0, 2)), column] == -1
    with pytest.raises(NotACover):
        pushforward(CoverMap(complete(4), cycle(3), (0, 1, 2, 0)), 0)


@pytest.mark.parametrize(
    "constructor",
    [
        lambda X, i: adjacency(X, i),
        lambda X, i: laplacian(X, i),
        lambda X, i: coboundary(X, i),
        lambda X, i: edge_adjacency(X),
    ],
)
def test_naturality_under_covers(constructor) -> None:
    f = double_cover_of_triangle()
    assert verify_naturality(constructor, f, 0)


@pytest.mark.parametrize("seed", range(10))
def test_naturality_rejects_a_corrupted_operator(seed) -> None:
    """
    Adding 1 to one diagonal entry of the cover's adjacency breaks
    f_* ∘ a_X = a_Y ∘ f_*, while the untouched operator still passes.
    """
    lift = random_lift(petersen(), 2, seed=seed)
    f = lift.projection

    def corrupted(X, i):
        op = adjacency(X, i)
        if X is not f.source:
            return op
        matrix = op.matrix.tolil()
        matrix[0, 0] += 1.0
        return ChainOperator(op.source, op.target, matrix, op.label)

    assert verify_naturality(lambda X, i: adjacency(X, i), f, 0)
    assert not verify_naturality(corrupted, f, 0)


def test_orientation_direct_sum_spectrum() -> None:
    """
    A ⊕ B on Ω_1^± has the union of the spectra of A on Ω_1⁺ and B on Ω_1⁻.
    """
    X = torus_triangulation(3, 3)
    plus = edge_adjacency(X)
    minus = laplacian(X, 1)
    combined = orientation_direct_sum(plus, minus)
    assert combined.source.kind == BasisKind.FULL
    assert combined.shape == (54, 54)
    expected = np.sort(np.concatenate([eigenvalues(plus), eigenvalues(minus)]))
    assert_allclose(eigenvalues(combined), expected, atol=1e-9)
    with pytest.raises(InvalidParams):
        orientation_direct_sum(adjacency(cycle(4), 0), laplacian(cycle(4), 0))


def test_operator_family_records_defects() -> None:
    X = build_complex([[0, 1], [1, 2], [0, 2], [2, 3]])
    commuting = named_family(["laplacian-up", "laplacian-down"], torus_triangulation(3, 3), 1)
    assert commuting.commuting
    mixed = named_family(parse_operator_names("adjacency,laplacian"), X)
    assert not mixed.commuting
    assert max(mixed.commutator_defects.values()) > 0
    assert isinstance(mixed, OperatorFamily)
    assert [op.label for op in mixed.operators] == ["a0;1", "Δ0"]


def test_export_round_trip(tmp_path) -> None:
    op = laplacian(cycle(5), 1)
    matrix_path, sidecar = export_operator(op, tmp_path / "lap")
    assert matrix_path.suffix == ".mtx"
    assert sidecar.name == "lap.basis.json"
    loaded = load_operator(matrix_path)
    assert loaded.source == op.source
    assert loaded.label == op.label
    assert_allclose(loaded.dense(), op.dense())


def random_complex(seed: int):
    """A random complex on at most 8 vertices with cells of up to 4 vertices."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 9))
    cells = [rng.choice(n, size=min(n, int(rng.integers(2, 5))), replace=False) for _ in range(int(rng.integers(2, 7)))]
    used = sorted({int(v) for cell in cells for v in cell})
    relabel = {v: k for k, v in enumerate(used)}
    return build_complex([[relabel[int(v)] for v in cell] for cell in cells], require_connected=False)


@pytest.mark.parametrize("seed", range(200))
def test_chain_identities_on_random_complexes(seed) -> None:
    """
    δδ = 0 exactly and ⟨δφ, ψ⟩ = ⟨φ, ∂ψ⟩ with the Gram factor 2 on forms,
    including dimension 0.
    """
    X = random_complex(seed)
    rng = np.random.default_rng(1000 + seed)
    for i in range(X.dimension):
        if i + 1 < X.dimension:
            assert chain_identity_defect(X, i) == 0
        delta = coboundary(X, i)
        phi = rng.standard_normal(delta.source.size) + 1j * rng.standard_normal(delta.source.size)
        psi = rng.standard_normal(delta.target.size) + 1j * rng.standard_normal(delta.target.size)
        left = delta.target.inner(delta(phi), psi)
        right = delta.source.inner(phi, boundary(X, i + 1)(psi))
        assert abs(left - right) <= 1e-12 * max(1.0, abs(left))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_complete_graph_closed_form(k) -> None:
    values = eigenvalues(adjacency(complete(k + 1), 0))
    assert_allclose(values, [-1] * k + [k], atol=1e-8)


@pytest.mark.parametrize("n", [3, 8, 17, 64])
def test_cycle_closed_form(n) -> None:
    expected = np.sort(2 * np.cos(2 * np.pi * np.arange(n) / n))
    assert_allclose(eigenvalues(adjacency(cycle(n), 0)), expected, atol=1e-8)


def test_vertex_laplacian_is_degree_minus_adjacency() -> None:
    X = build_complex([[0, 1], [1, 2], [0, 2], [2, 3], [3, 4]])
    A = adjacency(X, 0).dense()
    degrees = np.diag([len(X.neighbors[v]) for v in range(X.n_vertices)])
    assert_allclose(laplacian(X, 0).dense(), degrees - A)
