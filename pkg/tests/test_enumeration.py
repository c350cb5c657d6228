import pytest
from hypothesis import given, settings, strategies as st

from rootstrata.core_roots import all_specs, build_root_system
from rootstrata.enumeration import (
    EnumerationError,
    PeelingSequence,
    count_report,
    coxeter_identity_check,
    coxeter_identity_sides,
    is_leaf,
    iterando_sum,
    leaf_support_brute,
    leaf_support_count,
    level1_same_length_brute,
    level1_same_length_count,
    positive_roots_of_length,
    valid_peeling_sequences,
)
from strategies import root_systems

NAMES = [str(s) for s in all_specs(8)]
CLASSICAL = [n for n in NAMES if n[0] in "ABCD"]


def test_level1_examples():
    for n in range(1, 9):
        assert level1_same_length_count(build_root_system(f"A{n}"), 0) == n
    assert level1_same_length_count(build_root_system("B2"), 0) == 2
    e8 = build_root_system("E8")
    assert level1_same_length_count(e8, 7) == 56 == level1_same_length_brute(e8, 7)


@pytest.mark.parametrize("name", NAMES)
def test_level1_formula_matches_brute(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        assert level1_same_length_count(rs, i) == level1_same_length_brute(rs, i)


def test_leaf_support_examples():
    assert leaf_support_count(build_root_system("B3"), 2) == 3
    assert leaf_support_count(build_root_system("C3"), 2) == 3
    assert leaf_support_count(build_root_system("A5"), 0) == 5


@pytest.mark.parametrize("name", CLASSICAL)
def test_leaf_support_matches_brute(name):
    rs = build_root_system(name)
    for i in range(rs.rank):
        if is_leaf(rs, i):
            assert leaf_support_count(rs, i) == leaf_support_brute(rs, i)


def test_leaf_support_gates():
    with pytest.raises(EnumerationError):
        leaf_support_count(build_root_system("A4"), 1)
    with pytest.raises(EnumerationError):
        leaf_support_count(build_root_system("E6"), 0)
    f4 = build_root_system("F4")
    assert leaf_support_count(f4, 0, diagnostic=True) == level1_same_length_count(f4, 0)


def test_coxeter_examples():
    assert coxeter_identity_sides(build_root_system("A3"), 0) == (6, 6)
    assert coxeter_identity_sides(build_root_system("D4"), 0) == (12, 12)
    assert coxeter_identity_sides(build_root_system("A2"), 0) == (4, 4)
    assert coxeter_identity_sides(build_root_system("A1"), 0) == (2, 2)
    with pytest.raises(EnumerationError):
        coxeter_identity_check(build_root_system("B3"), 0)
    with pytest.raises(EnumerationError):
        coxeter_identity_check(build_root_system("D5"), 2)


@pytest.mark.parametrize("name", [n for n in NAMES if n[0] in "AD"])
def test_coxeter_identity_all_leaves(name):
    rs = build_root_system(name)
    assert all(coxeter_identity_check(rs, i) for i in range(rs.rank) if is_leaf(rs, i))


# ---------------------------------------------------------------- peeling


def test_peeling_examples():
    g2 = build_root_system("G2")
    (seq,) = valid_peeling_sequences(g2, "short")
    assert iterando_sum(g2, seq, diagnostic=True) == seq.steps[0].ratio(g2)
    a3 = build_root_system("A3")
    seqs = valid_peeling_sequences(a3, "long")
    assert {s.order[0] for s in seqs} == {0, 2}
    assert {iterando_sum(a3, s) for s in seqs} == {6}
    assert valid_peeling_sequences(a3, "short") == []


def test_e6_peeling_depends_on_order():
    e6 = build_root_system("E6")
    seqs = valid_peeling_sequences(e6, "long")
    by_start = {}
    for s in seqs:
        by_start.setdefault(s.order[0], set()).add(iterando_sum(e6, s, diagnostic=True))
    assert by_start[1] == {35}
    assert by_start[0] == by_start[5] == {36}
    assert positive_roots_of_length(e6, "long") == 36
    with pytest.raises(EnumerationError):
        iterando_sum(e6, seqs[0])


@pytest.mark.parametrize("name", CLASSICAL)
def test_iterando_sequence_independent(name):
    rs = build_root_system(name)
    for t in ("long", "short"):
        seqs = valid_peeling_sequences(rs, t)
        if rs.lacing > 1:
            assert len(seqs) == 1
        totals = {iterando_sum(rs, s) for s in seqs}
        assert totals <= {positive_roots_of_length(rs, t)}


@pytest.mark.parametrize("name,t,count", [("B5", "short", 5), ("C5", "long", 5), ("A6", "long", 21)])
def test_iterando_examples(name, t, count):
    rs = build_root_system(name)
    (total,) = {iterando_sum(rs, s) for s in valid_peeling_sequences(rs, t)}
    assert total == count


def test_peeling_build_validates():
    a3 = build_root_system("A3")
    PeelingSequence.build(a3, "long", [0, 1, 2])
    with pytest.raises(EnumerationError):
        PeelingSequence.build(a3, "long", [1, 0, 2])
    with pytest.raises(ValueError):
        valid_peeling_sequences(a3, "medium")


def test_count_report_shape():
    report = count_report(build_root_system("B3"), 2)
    assert report == {"system": "B3", "alpha": 3, "formula": 3, "brute": 3, "match": True}


@settings(max_examples=60, deadline=None)
@given(root_systems(max_rank=7), st.data())
def test_peeling_invariants(rs, data):
    t = data.draw(st.sampled_from(["long", "short"]))
    seqs = valid_peeling_sequences(rs, t)
    if not seqs:
        return
    seq = data.draw(st.sampled_from(seqs))
    remaining = set(range(rs.rank))
    for step in seq.steps:
        assert step.leaf in remaining and is_leaf_in(rs, step.leaf, remaining)
        remaining.discard(step.leaf)
    assert seq.to_json()["order"] == [i + 1 for i in seq.order]


def is_leaf_in(rs, i, vertices):
    return sum(1 for j in vertices if j != i and rs.cartan[i][j]) <= 1
