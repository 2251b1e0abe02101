import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from replicube import core

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
mu_vals = st.floats(min_value=core.MU_MIN, max_value=core.MU_MAX,
                    allow_nan=False)


def test_family_matrix_entries():
    g = core.build_family_matrix(0.0)
    assert np.array_equal(g.payoff[0], [0, 14, -10, 10, -2, 2])
    assert core.build_family_matrix(10.0).payoff[0, 0] == 10.0
    for mu in (-20.0, 0.0, 7.3):
        p = core.build_family_matrix(mu).payoff
        assert np.all(p[[1, 3, 5]] == 0.0)


def test_prism_vertices_are_fixed():
    g = core.build_family_matrix(-5.0)
    for bits in range(8):
        p = [(bits >> k) & 1 for k in range(3)]
        v = core.general_vector_field(g, core.embed(p))
        assert np.max(np.abs(v)) == 0.0


def test_interior_equilibrium_is_fixed():
    from replicube.equilibria import interior_location
    g = core.build_family_matrix(0.0)
    s = core.embed(interior_location(0.0))
    assert np.max(np.abs(core.general_vector_field(g, s))) < 1e-12


@settings(max_examples=50, deadline=None)
@given(mu_vals, unit, unit, unit)
def test_simplex_mass_conserved(mu, x, y, z):
    g = core.build_family_matrix(mu)
    v = core.general_vector_field(g, core.embed((x, y, z)))
    for k in range(3):
        assert abs(v[2 * k] + v[2 * k + 1]) < 1e-12


@settings(max_examples=50, deadline=None)
@given(mu_vals, unit, unit, unit)
def test_general_field_projects_to_cube_field(mu, x, y, z):
    g = core.build_family_matrix(mu)
    v6 = core.general_vector_field(g, core.embed((x, y, z)))
    v3 = core.cube_vector_field(mu, (x, y, z))
    assert np.max(np.abs(np.array([v6[1], v6[3], v6[5]]) - v3)) < 1e-12


def test_cube_field_value():
    v = core.cube_vector_field(0.0, (0.5, 0.5, 0.5))
    assert np.allclose(v, [-1.75, 0.0, 0.875], atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(mu_vals, unit, unit)
def test_faces_are_invariant(mu, a, b):
    for k in range(3):
        for val in (0.0, 1.0):
            p = [a, b, b]
            p[k] = val
            assert core.cube_vector_field(mu, p)[k] == 0.0


@settings(max_examples=30, deadline=None)
@given(unit, unit, unit)
def test_embed_project_roundtrip(x, y, z):
    assert np.allclose(core.project(core.embed((x, y, z))), (x, y, z),
                       atol=1e-15)


def test_embed_vertex_convention():
    assert np.array_equal(core.embed((0, 0, 0)), [1, 0, 1, 0, 1, 0])
    assert np.array_equal(core.embed((1, 1, 1)), [0, 1, 0, 1, 0, 1])


def test_project_rejects_bad_states():
    with pytest.raises(ValueError):
        core.project(np.ones(6))          # blocks don't sum to 1
    with pytest.raises(ValueError):
        core.project(np.ones(4) * 0.5)    # wrong shape


@settings(max_examples=40, deadline=None)
@given(mu_vals, unit, unit, unit)
def test_jacobian_matches_finite_differences(mu, x, y, z):
    p = np.array([x, y, z])
    jac = core.cube_jacobian(mu, p)
    h = 1e-6
    for j in range(3):
        dp = np.zeros(3)
        dp[j] = h
        col = (core.cube_vector_field(mu, p + dp)
               - core.cube_vector_field(mu, p - dp)) / (2 * h)
        assert np.max(np.abs(jac[:, j] - col)) < 1e-6


def test_jacobian_at_origin_vertex():
    mu = 2.5
    jac = core.cube_jacobian(mu, (0.0, 0.0, 0.0))
    assert np.allclose(jac, np.diag([12 - mu, -10.0, 27.0]))


def test_jacobian_face_row_structure():
    jac = core.cube_jacobian(1.0, (0.0, 0.3, 0.7))
    assert jac[0, 1] == 0.0 and jac[0, 2] == 0.0
    assert jac[0, 0] == 12 - 1.0 - 20 * 0.3 - 4 * 0.7


def test_game_dimension_validation():
    with pytest.raises(ValueError):
        core.PolymatrixGame([2, 2], np.zeros((6, 6)))
    g = core.build_family_matrix(0.0)
    with pytest.raises(ValueError):
        core.general_vector_field(g, np.ones(5))


def test_game_file_roundtrip(tmp_path):
    path = tmp_path / "game.txt"
    path.write_text(
        "groups = [2, 2, 2]\n"
        "payoff =\n"
        "0 14 -10 10 -2 2\n"
        "0 0 0 0 0 0\n"
        "10 -10 2 -2 -2 2\n"
        "0 0 0 0 0 0\n"
        "-25 29 0 -11 -2 2\n"
        "0 0 0 0 0 0\n")
    g = core.load_game(path)
    assert g.group_sizes == [2, 2, 2]
    assert np.array_equal(g.payoff, core.build_family_matrix(0.0).payoff)


def test_game_file_rejects_bad_dimensions(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("groups = [2, 2]\npayoff =\n1 2 3 4\n1 2 3 4\n")
    with pytest.raises(ValueError):
        core.load_game(path)
