from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rootstrata.core_roots import RootSystemError, all_specs, build_root_system, weight
from rootstrata.polytope import (
    FaceError,
    c_constant,
    dilation_gauge,
    dominant_membership,
    extremal_roots,
    extremal_subsets,
    face_certificate,
    face_product,
    in_convex_hull,
    is_extremal,
    min_dilation_lp,
    min_dilation_oracle,
    min_dilation_via_subsystem,
    o_vector,
    orthogonal_components,
    project_to_wall,
    projected_alpha_weights,
    projection_dimension,
    r_alpha,
    standard_face,
    standard_face_orbit_check,
    wall_fundamental_weight,
)
from rootstrata.strata import level_stratum
from strategies import root_systems

NAMES = [str(s) for s in all_specs(8)]


# ---------------------------------------------------------------- extremal subsets and faces


def test_extremal_examples():
    assert extremal_roots(build_root_system("A3")) == [0, 1, 2]
    # the affine node hangs off alpha_8 in E8 and off the long root in G2
    assert extremal_roots(build_root_system("E8")) == [0, 1]
    assert extremal_roots(build_root_system("G2")) == [0]
    assert extremal_roots(build_root_system("B3")) == [0, 2]
    assert frozenset() in extremal_subsets(build_root_system("A2"), 2)
    assert not is_extremal(build_root_system("D4"), {1})


def test_standard_face_examples():
    a2 = build_root_system("A2")
    face = standard_face(a2, {0})
    assert set(face.vertices) == {(1, 0), (1, 1)}
    assert face.dimension == 1
    assert face.to_json()["I"] == [1]
    whole = standard_face(a2, set())
    assert len(whole.vertices) == 6 and whole.dimension == 2
    with pytest.raises(FaceError):
        standard_face(build_root_system("D4"), {1})


def test_face_product_orthogonal_pair():
    a3 = build_root_system("A3")
    face = face_product(a3, [((0,), (0,)), ((2,), (2,))])
    assert set(face.vertices) == {(1, 0, 0), (0, 0, 1)}
    assert face.dimension == 1
    assert face_certificate(a3, face)
    empty = face_product(a3, [((0,), None), ((2,), (2,))])
    assert empty.vertices == ((0, 0, 1),) and empty.dimension == 0


def test_o_vector_pairs_to_one_with_marks():
    for name in ("E6", "F4", "G2", "C4"):
        rs = build_root_system(name)
        for j in extremal_roots(rs):
            o = o_vector(rs, range(rs.rank), j)
            assert rs.pair(rs.highest_root, o) == 1


@pytest.mark.parametrize("name", NAMES)
def test_face_certificates(name):
    rs = build_root_system(name)
    for I in extremal_subsets(rs, 2):
        if not I:
            continue
        face = standard_face(rs, I)
        assert face_certificate(rs, face)
        assert face.dimension == rs.rank - len(I)
        assert dilation_gauge(rs, face.barycenter).r_min <= 1


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_standard_face_orbit(name):
    rs = build_root_system(name)
    for I in extremal_subsets(rs, rs.rank):
        if I:
            assert standard_face_orbit_check(rs, I)


def test_standard_face_orbit_rank_guard():
    with pytest.raises(RootSystemError):
        standard_face_orbit_check(build_root_system("A5"), {0})


# ---------------------------------------------------------------- membership


def test_dominant_membership_examples():
    a1 = build_root_system("A1")
    assert dominant_membership(a1, (0,), 0)
    assert dominant_membership(a1, (F(1, 2),), F(1, 2))
    assert not dominant_membership(a1, (F(1, 2),), F(1, 3))
    a2 = build_root_system("A2")
    cert = dilation_gauge(a2, a2.highest_root)
    assert cert.r_min == 1
    assert dominant_membership(a2, a2.highest_root, 1)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_membership_matches_lp(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        x = weight(rs, i)
        r = dilation_gauge(rs, x).r_min
        from rootstrata.weyl_orbits import orbit

        images = orbit(rs, range(rs.rank), x).elements
        scaled = [tuple(r * c for c in v) for v in rs.roots]
        assert all(in_convex_hull(scaled, y) for y in images)
        shrunk = [tuple(r * F(9, 10) * c for c in v) for v in rs.roots]
        assert not in_convex_hull(shrunk, x)


def test_in_convex_hull_basic():
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert in_convex_hull(square, (F(1, 2), F(1, 2)))
    assert not in_convex_hull(square, (2, 0))
    assert not in_convex_hull([], (0, 0))


# ---------------------------------------------------------------- projection to the wall


def test_project_to_wall_examples():
    a2 = build_root_system("A2")
    assert project_to_wall(a2, 0, (1, 0)) == (0, F(-1, 2))
    assert project_to_wall(a2, 0, (0, 1)) == (0, 1)
    from rootstrata.core_roots import coweight

    assert project_to_wall(a2, 0, coweight(a2, 0)) == (0, 0)


def test_projected_alpha_examples():
    for n in range(3, 9):
        assert projected_alpha_weights(build_root_system(f"C{n}"), n - 1) == {n - 2: -2}
    assert projected_alpha_weights(build_root_system("G2"), 1) == {0: -3}
    assert projected_alpha_weights(build_root_system("A5"), 0) == {1: -1}
    assert projected_alpha_weights(build_root_system("E8"), 7) == {6: -1}


@pytest.mark.parametrize("name", NAMES)
def test_projected_alpha_reconstructs_projection(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        total = [F(0)] * rs.rank
        for eps, c in projected_alpha_weights(rs, i).items():
            w = wall_fundamental_weight(rs, i, eps)
            total = [a + c * b for a, b in zip(total, w)]
        assert tuple(total) == project_to_wall(rs, i, rs.simple_roots[i])


@settings(max_examples=100, deadline=None)
@given(root_systems(), st.data())
def test_project_to_wall_properties(rs, data):
    i = data.draw(st.integers(0, rs.rank - 1))
    v = tuple(F(x, 2) for x in data.draw(st.lists(st.integers(-6, 6), min_size=rs.rank, max_size=rs.rank)))
    p = project_to_wall(rs, i, v)
    assert project_to_wall(rs, i, p) == p
    assert p[i] == 0 or rs.rank == 1
    fixed = tuple(0 if k == i else v[k] for k in range(rs.rank))
    assert project_to_wall(rs, i, fixed) == fixed


# ---------------------------------------------------------------- constants and dilations


def test_c_constant_table():
    for n in range(1, 9):
        for i in range(1, n + 1):
            assert c_constant("A", n, i - 1) == F(i * (n + 1 - i), n + 1)
    for n in range(2, 9):
        assert c_constant("B", n, 0) == 1
        assert c_constant("B", n, n - 1) == F(n, 4)
    for n in range(3, 9):
        assert c_constant("C", n, 0) == F(1, 2)
        assert c_constant("C", n, n - 1) == F(n, 2)
    for n in range(4, 9):
        assert c_constant("D", n, 0) == 1
        assert c_constant("D", n, n - 1) == F(n, 4)
    assert c_constant("E", 6, 5) == F(4, 3)
    assert c_constant("E", 7, 6) == F(3, 2)
    with pytest.raises(RootSystemError):
        c_constant("A", 3, 5)


def test_r_alpha_values():
    f4, g2, e8 = (build_root_system(n) for n in ("F4", "G2", "E8"))
    assert [r_alpha(f4, i) for i in range(4)] == [F(3, 2), F(11, 6), F(7, 6), F(3, 4)]
    assert [r_alpha(g2, i) for i in range(2)] == [F(1, 2), F(3, 2)]
    assert r_alpha(e8, 7) == F(3, 2)
    assert r_alpha(build_root_system("A1"), 0) == 0


@pytest.mark.parametrize("name", NAMES)
def test_r_alpha_below_two(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        r = r_alpha(rs, i)
        assert r < 2
        assert r > 0 or rs.rank == 1


@pytest.mark.parametrize("name", [n for n in NAMES if build_root_system(n).rank <= 6])
def test_formula_matches_oracle(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        assert min_dilation_oracle(rs, i, 1).r_min == r_alpha(rs, i)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3", "A4", "B4", "C4", "D4", "F4"])
def test_oracle_matches_lp(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        for k in range(1, rs.marks[i] + 1):
            assert min_dilation_lp(rs, i, k) == min_dilation_oracle(rs, i, k).r_min


@pytest.mark.parametrize("name", ["B3", "C4", "F4", "G2", "E6", "E7"])
def test_higher_levels(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        for k in range(2, rs.marks[i] + 1):
            assert min_dilation_oracle(rs, i, k).r_min <= min_dilation_via_subsystem(rs, i, k)
            assert min_dilation_oracle(rs, i, k).r_min < 2


def test_level_out_of_range():
    with pytest.raises(RootSystemError):
        min_dilation_oracle(build_root_system("G2"), 0, 4)
    with pytest.raises(RootSystemError):
        projection_dimension(build_root_system("G2"), 0, 0)


# ---------------------------------------------------------------- dimensions and orthogonality


@pytest.mark.parametrize("name", NAMES)
def test_projection_dimension_level_one(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        assert projection_dimension(rs, i, 1) == rs.rank - 1


def test_projection_dimension_rank_two():
    from rootstrata._linalg import affine_rank

    for name in ("A2", "B2", "G2"):
        rs = build_root_system(name)
        for i in range(2):
            for k in range(1, rs.marks[i] + 1):
                roots = level_stratum(rs, i, k).roots
                # a slice holding a single root is a point
                expected = 0 if len(roots) == 1 else 1
                assert projection_dimension(rs, i, k) == expected == affine_rank(roots)
    assert projection_dimension(build_root_system("G2"), 0, 3) == 1


@pytest.mark.parametrize("name", ["F4", "E6", "E7", "E8", "B5", "C5", "D6"])
def test_orthogonality_constant_on_longest(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        for k in range(1, rs.marks[i] + 1):
            roots = level_stratum(rs, i, k).roots
            top = max(rs.norm(r) for r in roots)
            patterns = {orthogonal_components(rs, i, r) for r in roots if rs.norm(r) == top}
            assert len(patterns) == 1
