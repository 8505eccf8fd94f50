from math import cos, pi, sqrt
from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.spatial import cKDTree

from rlab.building import hecke_family, load_colored_complex, regular_tree_ball
from rlab.complexes import CoverMap, GroupAction, build_complex, induced_cover, quotient_by_action
from rlab.errors import ArityMismatch, DimensionUnsupported, InvalidParams, NotACover, NotCommuting, UnsupportedKind
from rlab.generators import (
    circulant_translation,
    complete,
    complete_multipartite,
    cycle,
    petersen,
    prism,
    random_regular,
    torus_triangulation,
    tripartite_circulant,
)
from rlab.operators import adjacency, edge_adjacency, laplacian, verify_naturality
from rlab.operators.catalog import named_family
from rlab.spectra import (
    ReferenceSpectrum,
    SpectrumSet,
    alon_boppana_scan,
    cover_monotonicity_check,
    direct_sum_spectrum_check,
    empirical_reference,
    extreme_eigenvalues,
    girth,
    injectivity_radius,
    joint_eigenvalues,
    joint_spectrum,
    match_multisets,
    parse_reference,
    per_operator_spectra,
    random_lift,
    ramanujan_verdict,
    reference_spectrum,
    reference_trivial_points,
    sample_torus_points,
    trivial_spectrum,
)

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "circulant_quotient_d3.json"


def vertex_adjacency(X):
    return adjacency(X, 0)


def verdict_for(X, reference):
    return ramanujan_verdict(joint_spectrum(vertex_adjacency(X)), trivial_spectrum(X), reference)


def test_cycle_spectrum() -> None:
    """
    C_6 has adjacency spectrum 2cos(2πj/6): {−2, −1, −1, 1, 1, 2}.
    """
    spectrum = joint_spectrum(vertex_adjacency(cycle(6)))
    assert spectrum.arity == 1
    assert spectrum.self_adjoint
    assert_allclose(spectrum.points[:, 0].real, [-2, -1, -1, 1, 1, 2], atol=1e-12)
    assert spectrum.multiset(6) == [((-2 + 0j,), 1), ((-1 + 0j,), 2), ((1 + 0j,), 2), ((2 + 0j,), 1)]


def test_joint_eigenvalues_of_shift_and_its_square() -> None:
    """
    The cyclic shift and its square commute; their joint spectrum is
    (ζ^j, ζ^{2j}) for j in Z/3.
    """
    shift = np.roll(np.eye(3), 1, axis=0)
    points = SpectrumSet(joint_eigenvalues([shift, shift @ shift])).points
    zeta = np.exp(2j * np.pi / 3)
    expected = SpectrumSet(np.array([[zeta**j, zeta ** (2 * j)] for j in range(3)]))
    assert match_multisets(SpectrumSet(points), expected)


def test_non_commuting_matrices_are_rejected() -> None:
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    b = np.array([[1.0, 0.0], [0.0, -1.0]])
    with pytest.raises(NotCommuting):
        joint_eigenvalues([a, b])


def test_projection_matches_single_operator_spectra() -> None:
    """
    Each coordinate of a joint spectrum is the spectrum of that operator.
    """
    family = named_family(["laplacian-up", "laplacian-down"], cycle(5), 0)
    spectrum = joint_spectrum(family)
    for k, alone in enumerate(per_operator_spectra(family)):
        assert match_multisets(spectrum.project(k), alone)


def test_extreme_eigenvalues_by_lanczos() -> None:
    X = random_regular(60, 3, seed=1)
    top = extreme_eigenvalues(adjacency(X, 0), k=2, which="LA")
    assert top[0] == pytest.approx(3.0)
    assert top[1] < 3.0


@pytest.mark.parametrize(
    "X, k",
    [(complete(4), 3), (petersen(), 3), (cycle(7), 2), (cycle(10), 2)],
)
def test_classic_ramanujan_graphs(X, k) -> None:
    verdict = verdict_for(X, ReferenceSpectrum.tree(k))
    assert verdict.ramanujan
    assert verdict.counts["violating"] == 0
    assert verdict.counts["trivial"] >= 1


def test_lift_of_prism_violates() -> None:
    """
    The prism C_20 × K_2 has the eigenvalue 2cos(π/10) + 1 > 2√2, and every
    lift keeps the spectrum of its base, so no 2-lift is Ramanujan.
    """
    base = prism(20)
    eigenvalue = 2 * cos(pi / 10) + 1
    assert eigenvalue > 2 * sqrt(2)
    lift = random_lift(base, 2, seed=3)
    assert lift.cover.n_vertices == 80
    verdict = verdict_for(lift.cover, ReferenceSpectrum.tree(3))
    assert not verdict.ramanujan
    violations = verdict.violations()
    assert np.any(np.abs(violations[:, 0] - eigenvalue) < 1e-8)


def test_lifts_are_reproducible() -> None:
    first = random_lift(complete(4), 2, seed=11)
    second = random_lift(complete(4), 2, seed=11)
    assert first.permutations == second.permutations
    assert first.cover.maximal_cells() == second.cover.maximal_cells()
    assert first.projection.vertex_map == tuple(v // 2 for v in range(8))


def test_lift_rejects_two_dimensional_input() -> None:
    with pytest.raises(DimensionUnsupported):
        random_lift(torus_triangulation(3, 3), 2)
    with pytest.raises(InvalidParams):
        random_lift(cycle(4), 0)


def test_direct_sum_spectrum() -> None:
    """
    The spectrum of C_3 ⊔ C_4 is the union of both spectra; building a
    different operator on the union is caught.
    """
    assert direct_sum_spectrum_check(cycle(3), cycle(4), vertex_adjacency)
    assert not direct_sum_spectrum_check(
        cycle(3), cycle(4), vertex_adjacency, union_constructor=lambda X: laplacian(X, 0)
    )


def test_trivial_spectra_of_graphs() -> None:
    assert_allclose(trivial_spectrum(cycle(6)).points[:, 0].real, [-2, 2])
    assert_allclose(trivial_spectrum(complete(4)).points[:, 0].real, [3])
    assert trivial_spectrum(cycle(6)).source == "bipartition"


def test_trivial_spectrum_of_tripartite_complex() -> None:
    """
    Collapsing K_{7,7,7} onto its parts gives (7ζ^j, 7ζ^{2j}), which are
    also the trivial points of the q = 2 building.
    """
    colored = complete_multipartite(7, 3)
    trivial = trivial_spectrum(colored)
    zeta = np.exp(2j * np.pi / 3)
    expected = SpectrumSet(np.array([[7 * zeta**j, 7 * zeta ** (2 * j)] for j in range(3)]))
    assert len(trivial.points) == 3
    assert match_multisets(SpectrumSet(trivial.points), expected)
    cover_points = SpectrumSet(reference_trivial_points(ReferenceSpectrum.building(2, 3)))
    assert match_multisets(cover_points, expected)


def test_tripartite_complex_is_ramanujan() -> None:
    colored = complete_multipartite(7, 3)
    spectrum = joint_spectrum(hecke_family(colored))
    assert len(spectrum) == 21
    verdict = ramanujan_verdict(spectrum, trivial_spectrum(colored), ReferenceSpectrum.building(2, 3))
    assert verdict.ramanujan
    assert verdict.counts == {"trivial": 3, "covered": 18, "violating": 0}


def test_fixture_trivial_points_lie_in_spectrum() -> None:
    colored = load_colored_complex(FIXTURE)
    spectrum = joint_spectrum(hecke_family(colored))
    trivial = trivial_spectrum(colored)
    assert trivial.arity == 2
    assert trivial.contained_in(spectrum)


def test_fixture_is_ramanujan_against_building() -> None:
    """
    Expected behavior: against the d = 3, q = 2 building every nontrivial
    point of the quotient fixture is covered.
    """
    colored = load_colored_complex(FIXTURE)
    family = hecke_family(colored)
    reference = ReferenceSpectrum.building(2, 3)
    assert reference.describe() == "building:d=3,q=2"
    verdict = ramanujan_verdict(joint_spectrum(family), trivial_spectrum(colored), reference)
    assert verdict.ramanujan
    assert verdict.counts == {"trivial": 3, "covered": 18, "violating": 0}


def test_interval_references() -> None:
    tree = ReferenceSpectrum.tree(3)
    assert tree.contains([2.8])
    assert not tree.contains([2.9])
    assert tree.distance([1j]) == pytest.approx(1.0)
    edges = ReferenceSpectrum.tree_edges(3)
    assert edges.contains([-2.0])
    assert edges.contains([3.8])
    assert not edges.contains([3.9])
    assert_allclose(reference_trivial_points(edges), [[4]])


def test_line_graph_of_petersen_against_edge_reference() -> None:
    spectrum = joint_spectrum(edge_adjacency(petersen()))
    verdict = ramanujan_verdict(spectrum, None, ReferenceSpectrum.tree_edges(3))
    assert verdict.ramanujan


def test_torus_reference_membership() -> None:
    """
    Sampled torus points are accepted; a far point is certified outside
    without optimization; (0, 0) is the image of the cube roots of unity.
    """
    building = ReferenceSpectrum.building(2, 3)
    for point in sample_torus_points(2, 3, 5, np.random.default_rng(4)):
        assert building.contains(point)
    assert building.contains([0, 0])
    assert building.distance([10, 10]) > 1.0
    assert not building.contains([0, 7])


def test_building_reference_for_trees() -> None:
    reference = ReferenceSpectrum.building(3, 2)
    assert reference.arity == 1
    assert reference.contains([2 * sqrt(3)])
    assert not reference.contains([3.5])


def test_parse_reference() -> None:
    assert parse_reference("tree:k=4").describe() == "tree:k=4"
    building = parse_reference("building:q=2,d=3")
    assert building.arity == 2
    assert parse_reference("building:q=2,d=2,r=2").params == {"k": 5}
    with pytest.raises(UnsupportedKind):
        parse_reference("sphere:k=3")
    with pytest.raises(InvalidParams):
        parse_reference("tree:k")


def test_reference_spectrum_by_kind() -> None:
    assert reference_spectrum("tree", {"k": 3}).contains([2 * sqrt(2)])
    assert reference_spectrum("building", {"q": 3, "d": 2, "r": 2}).params == {"k": 10}
    cloud = reference_spectrum("explicit", points=[0.0, 1.0])
    assert cloud.empirical
    assert cloud.arity == 1
    with pytest.raises(InvalidParams):
        reference_spectrum("building", {"q": 2, "d": 3, "r": 2})
    with pytest.raises(UnsupportedKind):
        reference_spectrum("sphere", {"k": 3})


def test_direct_sum_reference() -> None:
    combined = ReferenceSpectrum.direct_sum(ReferenceSpectrum.tree(3), ReferenceSpectrum.tree(4))
    assert combined.arity == 2
    assert combined.contains([2.0, 0.0])
    assert combined.contains([0.0, 3.4])
    assert not combined.contains([2.0, 3.4])


def test_arity_mismatch() -> None:
    with pytest.raises(ArityMismatch):
        ramanujan_verdict(SpectrumSet([1.0, 2.0]), None, ReferenceSpectrum.building(2, 3))


def test_empirical_reference_is_flagged() -> None:
    colored = regular_tree_ball(3, 4)
    op = adjacency(colored.complex, 0)
    reference = empirical_reference(op, sorted(colored.ball.interior))
    assert reference.empirical
    verdict = ramanujan_verdict(joint_spectrum(vertex_adjacency(cycle(6))), None, reference, tol=10.0)
    assert verdict.empirical_reference
    assert any("empirical" in w for w in verdict.warnings)


def test_cover_monotonicity() -> None:
    """
    The base spectrum sits inside the cover spectrum with multiplicity.
    """
    double = CoverMap.checked([v % 3 for v in range(6)], cycle(6), cycle(3))
    assert cover_monotonicity_check(double, vertex_adjacency)
    assert cover_monotonicity_check((cycle(5), cycle(5), list(range(5))), vertex_adjacency)
    X = cycle(12)
    rotation = lambda step: GroupAction.of([[(v + step) % 12 for v in range(12)]])
    nested = (quotient_by_action(X, rotation(6)), quotient_by_action(X, rotation(3)))
    assert cover_monotonicity_check(nested, lambda Y: laplacian(Y, 0))
    with pytest.raises(NotACover):
        cover_monotonicity_check((complete(4), cycle(3), [0, 1, 2, 0]), vertex_adjacency)


def test_girth_and_injectivity_radius() -> None:
    assert girth(cycle(9)) == 9
    assert injectivity_radius(cycle(9)) == 4
    assert girth(petersen()) == 5
    assert girth(complete(4)) == 3
    tree = regular_tree_ball(3, 2).complex
    assert girth(tree) is None
    assert injectivity_radius(tree) == 4


def test_cycle_scan_decreases() -> None:
    members = [cycle(8), cycle(32), cycle(128)]
    report = alon_boppana_scan(members, vertex_adjacency, ReferenceSpectrum.tree(2), samples=500)
    assert report.strictly_decreasing
    assert report.monotone
    assert [row.injectivity_radius for row in report.rows()] == [3, 15, 63]
    assert not report.warnings


def test_random_regular_scan() -> None:
    """
    Random 4-regular graphs of growing size cover [−2√3, 2√3] ever more
    densely.
    """
    members = [random_regular(n, 4, seed=5) for n in (100, 400, 1600)]
    report = alon_boppana_scan(members, vertex_adjacency, ReferenceSpectrum.tree(4), threads=2)
    assert report.strictly_decreasing
    assert report.epsilons[-1] <= 0.3
    assert report.samples == 2000


def test_single_member_scan_warns() -> None:
    report = alon_boppana_scan([cycle(6)], vertex_adjacency, ReferenceSpectrum.tree(2), samples=50)
    assert report.warnings


def test_bipartite_trivial_points() -> None:
    """K_{3,3} is bipartite and 3-regular: trivial points {−3, 3}."""
    edges = [(u, v) for u in range(3) for v in range(3, 6)]
    trivial = trivial_spectrum(build_complex(edges))
    assert_allclose(trivial.points[:, 0], [-3, 3], atol=1e-12)


@pytest.mark.parametrize(
    "first, second",
    [(cycle(3), cycle(4)), (complete(4), petersen()), (cycle(5), cycle(5)), (prism(4), complete(3))],
)
def test_direct_sum_law_for_pairs(first, second) -> None:
    assert direct_sum_spectrum_check(first, second, vertex_adjacency)
    assert direct_sum_spectrum_check(first, second, lambda X: laplacian(X, 0))


def test_naturality_along_random_lifts() -> None:
    lift = random_lift(petersen(), 3, seed=2)
    assert verify_naturality(lambda X, i: adjacency(X, i), lift.projection, 0)
    assert cover_monotonicity_check(lift.projection, vertex_adjacency)


@pytest.mark.parametrize("X", [petersen(), random_lift(prism(20), 2, seed=3).cover])
def test_combined_family_verdict(X) -> None:
    """
    Vertices and edges together are Ramanujan exactly when each is: the
    spectrum (λ, 0) ∪ (0, μ) is checked against the sum of both references.
    """
    vertices = joint_spectrum(vertex_adjacency(X))
    edges = joint_spectrum(edge_adjacency(X))
    tree, tree_edges = ReferenceSpectrum.tree(3), ReferenceSpectrum.tree_edges(3)
    separate = ramanujan_verdict(vertices, None, tree).ramanujan and ramanujan_verdict(edges, None, tree_edges).ramanujan
    combined = ramanujan_verdict(vertices.direct_sum(edges), None, ReferenceSpectrum.direct_sum(tree, tree_edges))
    assert combined.ramanujan == separate


@pytest.mark.parametrize("q", [2, 3])
def test_torus_membership_is_sound(q) -> None:
    """
    Forward: images of random torus points are accepted. Backward: points
    far from a dense sample of the image are rejected.
    """
    building = ReferenceSpectrum.building(q, 3)
    rng = np.random.default_rng(q)
    for point in sample_torus_points(q, 3, 1000, rng):
        assert building.distance(point) <= 1e-6

    dense = sample_torus_points(q, 3, 40000, rng)
    tree = cKDTree(np.concatenate([dense.real, dense.imag], axis=1))
    scale = 3 * q
    candidates = rng.uniform(-scale, scale, size=(1000, 2)) + 1j * rng.uniform(-scale, scale, size=(1000, 2))
    gaps, _ = tree.query(np.concatenate([candidates.real, candidates.imag], axis=1))
    far = candidates[gaps >= 0.5]
    assert len(far) > 500
    for point in far:
        assert not building.contains(point)


@pytest.mark.parametrize("seed", range(20))
def test_direct_sum_law_on_random_pairs(seed) -> None:
    first = random_regular(8 + 2 * (seed % 4), 3, seed=seed)
    second = cycle(3 + seed % 6) if seed % 2 else random_regular(6 + 2 * (seed % 3), 4, seed=seed + 100)
    assert direct_sum_spectrum_check(first, second, vertex_adjacency)


NATURALITY_BASES = [complete(4), petersen(), cycle(5), prism(4), complete(5)]


@pytest.mark.parametrize("seed", range(50))
def test_naturality_and_monotonicity_on_random_lifts(seed) -> None:
    """
    Expected behavior:
        - adjacency and the vertex Laplacian commute with the pushforward
        - the base spectrum embeds in the cover spectrum
    """
    base = NATURALITY_BASES[seed % len(NATURALITY_BASES)]
    lift = random_lift(base, 2 + seed % 2, seed=seed)
    assert verify_naturality(lambda X, i: adjacency(X, i), lift.projection, 0)
    assert verify_naturality(lambda X, i: laplacian(X, i), lift.projection, 0)
    assert cover_monotonicity_check(lift.projection, vertex_adjacency)


def nested_translations(seed):
    """
    A complex X with translation groups Γ′ ≤ Γ of index 2.

    Γ is generated by a shift of s ≥ 3 inside every block and Γ′ by a shift
    of 2s, so every nonidentity element moves each vertex at least 3 steps.
    """
    kind = seed % 4
    s = 3 + (seed // 4) % 2
    t = 1 + (seed // 8) % 3
    n = 2 * s * t
    if kind == 0:
        X, blocks = cycle(n), 1
    elif kind == 1:
        X, blocks = prism(n), 2
    elif kind == 2:
        X, blocks = torus_triangulation(3, n), 3
    else:
        # shifts {0, 1}: same-color vertices at distance 2 differ by ±1
        n = 6 * t
        X, blocks, s = tripartite_circulant(n, [0, 1]).complex, 3, 3
    return X, circulant_translation(n, 2 * s, blocks), circulant_translation(n, s, blocks)


@pytest.mark.parametrize("seed", range(50))
def test_nested_quotients_form_natural_covers(seed) -> None:
    """
    Expected behavior:
        - |Γ\\X(i)| · |Γ| = |X(i)| for both groups and every i
        - Γ′\\X -> Γ\\X is a cover commuting with adjacency and the Laplacian
        - the spectrum of Γ\\X embeds in that of Γ′\\X
    """
    X, fine_action, coarse_action = nested_translations(seed)
    fine = quotient_by_action(X, fine_action)
    coarse = quotient_by_action(X, coarse_action)
    assert coarse.group_order == 2 * fine.group_order
    for result in (fine, coarse):
        for i, level in enumerate(X.cells):
            assert len(result.quotient.cells[i]) * result.group_order == len(level)

    cover = induced_cover(fine, coarse)
    assert cover.source is fine.quotient
    assert verify_naturality(lambda Y, i: adjacency(Y, i), cover, 0)
    assert verify_naturality(lambda Y, i: laplacian(Y, i), cover, 0)
    assert cover_monotonicity_check((fine, coarse), vertex_adjacency)
