from itertools import combinations

import pytest
from hypothesis import given, settings

from rootstrata.core_roots import RootSystemError, all_specs, build_root_system
from rootstrata.strata import (
    StratumError,
    dominant_in_stratum,
    lacing_criterion,
    length_profile,
    level_stratum,
    short_witness,
    stratum,
    z_stratum,
    z_stratum_basis,
)
from strategies import nontrivial_pairs

NAMES = [str(s) for s in all_specs(8)]
SMALL = [n for n in NAMES if build_root_system(n).rank <= 4]


# ---------------------------------------------------------------- examples


def test_stratum_examples():
    b2, a2, g2 = (build_root_system(n) for n in ("B2", "A2", "G2"))
    st_ = stratum(b2, {0}, (1, 1))
    assert st_.roots == ((1, 0), (1, 1), (1, 2))
    assert (st_.min_root, st_.max_root) == ((1, 0), (1, 2))
    level0 = stratum(a2, {0}, (0, 1))
    assert set(level0.roots) == {(0, 1), (0, -1)} and level0.min_root is None
    top = stratum(g2, {0}, (3, 2))
    assert top.roots == ((3, 1), (3, 2)) and all(g2.is_long(r) for r in top.roots)


def test_stratum_errors():
    b2 = build_root_system("B2")
    with pytest.raises(RootSystemError):
        stratum(b2, {0}, (2, 0))
    with pytest.raises(RootSystemError):
        stratum(b2, {5}, (1, 0))


def _g2_type(k):
    g2 = build_root_system("G2")
    beta = next(r for r in g2.positive_roots if r[0] == k)
    if k == 0:
        return sorted(c.name for c in z_stratum_basis(g2, {1}, (0, 1)).components), beta
    return sorted(c.name for c in z_stratum_basis(g2, {0}, beta).components), beta


def test_g2_z_strata_types():
    g2 = build_root_system("G2")
    # alpha_1 is the short simple root, with mark 3
    assert g2.marks[0] == 3
    assert z_stratum(g2, {0}, (0, 1)) == {(0, 1), (0, -1)}
    assert _g2_type(1)[0] == ["G2"]
    assert _g2_type(2)[0] == ["A1", "A1"]
    assert _g2_type(3)[0] == ["A2"]
    assert len(z_stratum(g2, {0}, (3, 1))) == 6
    assert all(g2.is_long(r) for r in z_stratum(g2, {0}, (3, 1)))
    basis = z_stratum_basis(g2, {0}, (3, 1), "min")
    assert basis.gamma == (3, 1) and basis.rest == (1,)


def test_level_one_gives_whole_system():
    for name in ("B3", "F4", "E6"):
        rs = build_root_system(name)
        for i in range(rs.rank):
            beta = next(r for r in rs.positive_roots if r[i] == 1)
            assert z_stratum(rs, {i}, beta) == rs.root_set


def test_basis_examples():
    b2 = build_root_system("B2")
    basis = z_stratum_basis(b2, {0}, (1, 0))
    assert basis.gamma == (1, 0) and [c.name for c in basis.components] == ["B2"]
    b3 = build_root_system("B3")
    basis = z_stratum_basis(b3, {2}, (0, 1, 1), "max")
    assert basis.gamma == tuple(-c for c in stratum(b3, {2}, (0, 1, 1)).max_root)
    with pytest.raises(StratumError):
        z_stratum_basis(b2, {0}, (0, 1))
    with pytest.raises(ValueError):
        z_stratum_basis(b2, {0}, (1, 0), "middle")


def test_dominant_examples():
    b2 = build_root_system("B2")
    assert dominant_in_stratum(b2, {0}, (1, 0)) == [(1, 2), (1, 1)]
    a3 = build_root_system("A3")
    assert dominant_in_stratum(a3, {1}, (0, 1, 0)) == [(1, 1, 1)]


def test_length_profile_examples():
    b2, g2 = build_root_system("B2"), build_root_system("G2")
    assert length_profile(b2, {0}, (1, 0)) == "mixed"
    # level-1 roots for the short alpha_1 of G2 are alpha_1 and alpha_1 + alpha_2
    assert stratum(g2, {0}, (1, 0)).roots == ((1, 0), (1, 1))
    assert length_profile(g2, {0}, (1, 0)) == "short-only"
    assert length_profile(build_root_system("E6"), {3}, (0, 1, 1, 1, 0, 0)) == "long-only"


def test_lacing_examples():
    f4 = build_root_system("F4")
    beta = next(r for r in f4.positive_roots if r[3] == 1)
    assert not lacing_criterion(f4, {3}, beta)
    assert length_profile(f4, {3}, beta) == "short-only"
    assert lacing_criterion(f4, {3}, f4.highest_root)
    assert lacing_criterion(f4, {0, 1}, f4.highest_root)


def test_short_witness_examples():
    assert short_witness(build_root_system("B3"), (1, 1, 1)) == 2
    assert short_witness(build_root_system("G2"), (1, 1)) == 0
    assert short_witness(build_root_system("F4"), (1, 2, 3, 2)) == 2
    with pytest.raises(RootSystemError):
        short_witness(build_root_system("A3"), (1, 1, 1))
    with pytest.raises(RootSystemError):
        short_witness(build_root_system("B3"), (0, 1, 1))


def test_level_stratum_examples():
    b2, g2 = build_root_system("B2"), build_root_system("G2")
    assert level_stratum(b2, 0, 1).roots == ((1, 0), (1, 1), (1, 2))
    assert level_stratum(g2, 0, 3).roots == ((3, 1), (3, 2))
    assert set(level_stratum(b2, 0, 0).roots) == {(0, 1), (0, -1)}
    with pytest.raises(RootSystemError):
        level_stratum(g2, 0, 4)


@pytest.mark.parametrize("name", ["B3", "F4", "G2", "E6"])
def test_levels_partition(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        parts = [set(level_stratum(rs, i, k).roots) for k in range(-rs.marks[i], rs.marks[i] + 1) if k]
        union = set().union(*parts)
        assert sum(map(len, parts)) == len(union)
        assert union == {r for r in rs.roots if r[i]}


def test_max_short():
    b2 = build_root_system("B2")
    assert stratum(b2, {0}, (1, 0)).max_short == (1, 1)


# ---------------------------------------------------------------- exhaustive, small rank


@pytest.mark.parametrize("name", SMALL)
def test_profile_exhaustive(name):
    rs = build_root_system(name)
    for size in range(1, rs.rank + 1):
        for S in combinations(range(rs.rank), size):
            for beta in rs.roots:
                if not any(beta[i] for i in S):
                    continue
                st_ = stratum(rs, S, beta)
                profile = length_profile(rs, S, beta)
                assert profile == st_.lengths_present
                assert lacing_criterion(rs, S, beta) == (profile != "short-only")
                lo, hi = st_.min_root, st_.max_root
                assert st_.roots == tuple(r for r in rs.roots
                                          if all(a <= b for a, b in zip(lo, r))
                                          and all(a <= b for a, b in zip(r, hi)))


# ---------------------------------------------------------------- properties


@settings(max_examples=200, deadline=None)
@given(nontrivial_pairs())
def test_stratum_properties(case):
    rs, S, beta = case
    st_ = stratum(rs, S, beta)
    assert beta in st_.roots
    assert all(all(r[i] == beta[i] for i in S) for r in st_.roots)
    top = max(rs.norm(r) for r in st_.roots)
    assert rs.norm(st_.min_root) == rs.norm(st_.max_root) == top
    for side in ("min", "max"):
        basis = z_stratum_basis(rs, S, beta, side)
        for r in z_stratum(rs, S, beta):
            coords = basis.coordinates(rs, r, S)
            assert all(c >= 0 for c in coords) or all(c <= 0 for c in coords)
    dom = dominant_in_stratum(rs, S, beta)
    assert dom[0] == st_.max_root
    assert len(dom) == len({rs.norm(r) for r in st_.roots})


@settings(max_examples=100, deadline=None)
@given(nontrivial_pairs())
def test_z_stratum_is_closed(case):
    rs, S, beta = case
    sub = z_stratum(rs, S, beta)
    for x in sub:
        for y in sub:
            c = 2 * rs.pair(y, x) / rs.norm(x)
            assert tuple(b - c * a for a, b in zip(x, y)) in sub
