import json
from pathlib import Path

import networkx as nx
import numpy as np
import pytest
from numpy.testing import assert_allclose

from rlab.building import (
    LatticeClass,
    LocalFieldParams,
    ball_size_bound,
    building_ball,
    canonicalize,
    colored_from_complex,
    colored_quotient,
    gaussian_binomial,
    hecke_family,
    interior_degree,
    load_colored_complex,
    neighbors,
    regular_tree_ball,
    save_colored_complex,
    subspaces,
)
from rlab.complexes import GroupAction, is_admissible_subgroup
from rlab.errors import BudgetExceeded, ColoringInconsistent, FileFormatError, InvalidParams, SingularMatrix
from rlab.generators import circulant_translation, complete_multipartite, cycle, tripartite_circulant

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "circulant_quotient_d3.json"


@pytest.mark.parametrize(
    "n, k, q, expected",
    [(3, 1, 2, 7), (3, 2, 2, 7), (4, 2, 2, 35), (2, 1, 3, 4), (3, 0, 5, 1), (3, 4, 2, 0)],
)
def test_gaussian_binomial(n, k, q, expected) -> None:
    assert gaussian_binomial(n, k, q) == expected


def test_field_parameters() -> None:
    assert interior_degree(LocalFieldParams(2, 3)) == 14
    assert interior_degree(LocalFieldParams(3, 2)) == 4
    assert interior_degree(LocalFieldParams(2, 2, r=2)) == 5
    with pytest.raises(InvalidParams):
        LocalFieldParams(6, 2)
    with pytest.raises(InvalidParams):
        LocalFieldParams(2, 3, r=2)


def test_subspace_enumeration() -> None:
    GF = LocalFieldParams(2, 3).field
    assert len(subspaces(GF, 3, 1)) == 7
    assert len(subspaces(GF, 3, 2)) == 7


def test_canonical_form_is_homothety_invariant() -> None:
    """
    t·I and I describe the same vertex; diag(t, 1) is a vertex of color 1.
    """
    params = LocalFieldParams(2, 2)
    scaled = canonicalize([[[0, 1], 0], [0, [0, 1]]], params)
    assert scaled == LatticeClass.base(2)
    assert scaled.offset == 1
    assert canonicalize([[[0, 1], 0], [0, 1]], params).color == 1
    with pytest.raises(SingularMatrix):
        canonicalize([[1, 1], [1, 1]], params)


def test_negative_entries_over_extension_fields() -> None:
    """
    Over GF(4) a negative integer names the additive inverse, which is the
    element itself in characteristic 2; it is not reduced mod 4.
    """
    params = LocalFieldParams(4, 2)
    plus = canonicalize([[[0, 1], 1], [0, 1]], params)
    assert canonicalize([[[0, 1], -1], [0, 1]], params) == plus
    assert canonicalize([[[0, 1], -3], [0, 1]], params) == canonicalize([[[0, 1], 3], [0, 1]], params)
    assert canonicalize([[[0, 1], 3], [0, 1]], params) != plus
    with pytest.raises(InvalidParams):
        canonicalize([[[0, 1], 5], [0, 1]], params)
    # prime fields still reduce mod q
    prime = LocalFieldParams(3, 2)
    assert canonicalize([[[0, 1], -1], [0, 1]], prime) == canonicalize([[[0, 1], 2], [0, 1]], prime)


def test_neighbour_colors() -> None:
    """
    The base vertex of the d = 3, q = 2 building has 7 neighbours of each
    nonzero color: dim W = 1 gives color 2, dim W = 2 gives color 1.
    """
    params = LocalFieldParams(2, 3)
    found = list(neighbors(LatticeClass.base(3), params, 2))
    assert len(found) == 14
    assert len({vertex.key for vertex, _ in found}) == 14
    for vertex, k in found:
        assert vertex.color == (3 - k) % 3


def test_tree_ball_sizes() -> None:
    """
    The building of PGL_2 over F_2((t)) is the 3-regular tree; its radius-2
    ball has 1 + 3 + 6 vertices and no cycles.
    """
    colored = building_ball(LocalFieldParams(2, 2), 2)
    X = colored.complex
    assert X.n_vertices == 10
    assert nx.is_tree(X.skeleton())
    assert X.skeleton().degree[0] == 3
    assert colored.ball.frontier == set(range(4, 10))
    assert ball_size_bound(3, 2) == 10


def test_division_algebra_ball_is_a_tree() -> None:
    colored = building_ball(LocalFieldParams(2, 2, r=2), 1)
    assert colored.complex.n_vertices == 6
    assert nx.is_tree(colored.complex.skeleton())


def test_building_ball_radius_one() -> None:
    """
    Around the base vertex of the d = 3, q = 2 building: 14 neighbours split
    7/7 by color, and the 21 incident point-line pairs of the Fano plane
    give the edges and triangles among them.
    """
    colored = building_ball(LocalFieldParams(2, 3), 1)
    X = colored.complex
    assert X.f_vector == [15, 35, 21]
    colors = [colored.vertex_colors[v] for v in X.neighbors[0]]
    assert colors.count(1) == 7 and colors.count(2) == 7
    assert colored.ball.interior == {0}
    assert colored.boundary_affected


def test_budget_guard() -> None:
    with pytest.raises(BudgetExceeded):
        building_ball(LocalFieldParams(2, 3), 6, budget=1000)
    with pytest.raises(BudgetExceeded):
        regular_tree_ball(5, 10, budget=100)


def test_fixture_is_valid() -> None:
    """
    The shipped d = 3 fixture has the colored degrees of the q = 2 building:
    every vertex sees 7 neighbours of each other color.
    """
    colored = load_colored_complex(FIXTURE)
    assert colored.d == 3
    assert colored.complex.f_vector == [21, 147, 112]
    family = hecke_family(colored)
    assert family.adjoint_pairs_exact
    assert family.commuting
    assert family.checked_rows is None
    for i in (1, 2):
        rows = np.asarray(family[i].matrix.sum(axis=1)).ravel().real
        assert_allclose(rows, 7)


def test_fixture_is_the_quotient_of_a_circulant_cover() -> None:
    """
    Regenerate the fixture: the circulant on Z/14 with shifts 0..6 modulo the
    translation by 7, an admissible color-preserving action of order 2.
    """
    cover = tripartite_circulant(14, range(7))
    action = circulant_translation(14, 7)
    assert cover.complex.f_vector == [42, 294, 224]
    assert is_admissible_subgroup(cover.complex, action)

    quotient, result = colored_quotient(cover, action)

    shipped = load_colored_complex(FIXTURE)
    assert result.group_order == 2
    assert [set(level) for level in quotient.complex.cells] == [set(level) for level in shipped.complex.cells]
    assert quotient.vertex_colors == shipped.vertex_colors
    assert quotient.edge_colors == shipped.edge_colors
    for i in range(3):
        assert len(cover.complex.cells[i]) == result.group_order * len(quotient.complex.cells[i])


def test_colored_quotient_rejects_color_changing_actions() -> None:
    cover = tripartite_circulant(14, range(7))
    rotate_colors = GroupAction.of([[(v + 14) % 42 for v in range(42)]])
    with pytest.raises(ColoringInconsistent):
        colored_quotient(cover, rotate_colors)


def test_corrupted_edge_color_is_named(tmp_path) -> None:
    """
    Changing the color of one directed edge breaks antisymmetry, and the
    loader names that edge.
    """
    payload = json.loads(FIXTURE.read_text())
    assert payload["edge_colors"][0] == [0, 7, 1]
    payload["edge_colors"][0] = [0, 7, 2]
    path = tmp_path / "corrupted.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(ColoringInconsistent) as excinfo:
        load_colored_complex(path)
    assert excinfo.value.edge == (0, 7)
    assert str(path) in str(excinfo.value)


def test_missing_modulus(tmp_path) -> None:
    path = tmp_path / "plain.json"
    path.write_text(json.dumps({"maximal_cells": [[0, 1], [1, 2], [0, 2]]}))
    with pytest.raises(FileFormatError):
        load_colored_complex(path)


def test_colored_round_trip(tmp_path) -> None:
    colored = building_ball(LocalFieldParams(2, 2), 2)
    path = save_colored_complex(colored, tmp_path / "ball.json")
    loaded = load_colored_complex(path)
    assert loaded.complex.f_vector == colored.complex.f_vector
    assert loaded.vertex_colors == colored.vertex_colors
    assert loaded.edge_colors == colored.edge_colors
    assert loaded.ball == colored.ball


def test_vertex_colors_must_match_edges() -> None:
    with pytest.raises(ColoringInconsistent):
        colored_from_complex(cycle(3), 3, [0, 0, 1])


def test_hecke_operators_of_tripartite_complex() -> None:
    """
    On K_{7,7,7} colored by part, a_1 sends each part to the next one with
    all 49 edges; a_1* = a_2 and the pair commutes.
    """
    family = hecke_family(complete_multipartite(7, 3))
    assert family.adjoint_pairs_exact
    assert family.commuting
    assert family.family.normal
    rows = np.asarray(family[1].matrix.sum(axis=1)).ravel().real
    assert_allclose(rows, 7)


def test_hecke_on_ball_checks_core_rows() -> None:
    colored = building_ball(LocalFieldParams(2, 2), 3)
    family = hecke_family(colored)
    assert family.boundary_affected
    assert family.checked_rows == {v for v, n in enumerate(colored.ball.distance) if n <= 1}
    assert family.warnings


def test_building_ball_radius_two() -> None:
    """
    Radius-2 ball of the d = 3, q = 2 building.

    Expected behavior:
        - every vertex within distance 1 of the base has degree 14, split 7/7 by color offset
        - a_1 and a_2 are exact adjoints of each other
        - the family commutes on the rows that see the whole 2-step neighbourhood
    """
    colored = building_ball(LocalFieldParams(2, 3), 2)
    X = colored.complex
    for v, n in enumerate(colored.ball.distance):
        if n > 1:
            continue
        offsets = [(colored.vertex_colors[w] - colored.vertex_colors[v]) % 3 for w in X.neighbors[v]]
        assert len(offsets) == 14
        assert offsets.count(1) == 7 and offsets.count(2) == 7

    family = hecke_family(colored)
    assert family.adjoint_pairs_exact
    assert family.checked_rows == {0}
    assert family.commuting
