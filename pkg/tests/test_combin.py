from __future__ import annotations

import pytest

import oracles
from qsw.combin import (
    DEFECT,
    PatternError,
    cutting_map,
    defect_interval,
    defect_set,
    dims_B,
    dims_D,
    format_pattern,
    link_patterns,
    multiindices_up_to,
    n_of,
    parse_pattern,
    pattern_of,
    special_link_patterns,
    valenced_link_patterns,
    walk_compare,
    walk_of,
    walks_over,
)


def test_defect_interval():
    assert defect_interval(1, 1) == [0, 2]
    assert defect_interval(3, 2) == [1, 3, 5]
    assert defect_interval(0, 4) == [4]


def test_walks():
    assert set(walks_over((1, 1))) == {(1, 0), (1, 2)}
    assert sum(1 for w in walks_over((3, 2, 2)) if w[-1] == 3) == 3
    assert len(walks_over((1, 1, 1, 1))) == 6 == sum(dims_D((1, 1, 1, 1)).values())


def test_walks_match_oracle():
    for mi in multiindices_up_to(6):
        assert sorted(walks_over(mi)) == sorted(oracles.walks(mi))


def test_dims_D_examples():
    assert dims_D((1, 1, 1)) == {1: 2, 3: 1}
    D = dims_D((3, 2, 2))
    assert sum((s + 1) * d for s, d in D.items()) == 36
    for s in range(5):
        assert dims_D((s,)) == {s: 1}


def test_dims_B():
    assert dims_B((1, 1))[0] == 1
    for t in range(5):
        assert dims_B((t,)) == {t: 1}
    for mi in multiindices_up_to(8):
        B, D = dims_B(mi), dims_D(mi)
        assert all(B.get(s, 0) >= d for s, d in D.items())


def test_link_patterns_small():
    pats = link_patterns(2)
    assert {format_pattern(p) for p in pats} == {"||", "()"}
    assert len(link_patterns(4, 0)) == 2
    assert len(link_patterns(6, 0)) == oracles.catalan(3) == 5


def test_link_patterns_match_bruteforce():
    for n in range(1, 9):
        ours = sorted(p.partner for p in link_patterns(n))
        brute = sorted(tuple(DEFECT if x == -1 else x for x in p) for p in oracles.planar_patterns(n))
        assert ours == brute


def test_valenced_counts():
    assert len(valenced_link_patterns((3, 2, 2), 3)) == 3
    assert [p.s for p in valenced_link_patterns((4,))] == [4]
    for mi in multiindices_up_to(7):
        for s, d in dims_D(mi).items():
            assert len(valenced_link_patterns(mi, s)) == d == oracles.valenced_count(mi, s)


def test_walk_of():
    assert walk_of(parse_pattern("(())")) == (1, 2, 1, 0)
    assert walk_of(parse_pattern("||||")) == (1, 2, 3, 4)
    for n in range(1, 9):
        for p in link_patterns(n):
            w = walk_of(p)
            assert pattern_of(w, (1,) * n).base == p


def test_walk_compare():
    assert walk_compare((1, 0), (1, 0)) == "equal"
    assert walk_compare((1, 0), (1, 2)) == "less"
    assert walk_compare((1, 2, 1, 0), (1, 0, 1, 2)) == "incomparable"


def test_cutting_map():
    a = parse_pattern("()")
    assert cutting_map(1, a) == a
    assert cutting_map(2, parse_pattern("()|")) == parse_pattern("|()")
    with pytest.raises(PatternError):
        cutting_map(1, parse_pattern("||"))


def test_special_patterns():
    assert special_link_patterns((2,), 0) == []
    assert special_link_patterns((1, 1), 0) + special_link_patterns((1, 1), 2) == link_patterns(2, 0) + link_patterns(2, 2)
    for s, d in dims_D((2, 1, 1)).items():
        assert len(special_link_patterns((2, 1, 1), s)) == d


def test_pattern_grammar():
    p = parse_pattern("(())||")
    assert p.links() == [(0, 3), (1, 2)] and p.defects() == [4, 5]
    with pytest.raises(PatternError, match="defect at positive depth"):
        parse_pattern("(|)")
    with pytest.raises(PatternError, match="position"):
        parse_pattern("(()")
    with pytest.raises(PatternError, match="stray"):
        parse_pattern("(x)")
    for n in range(1, 9):
        for p in link_patterns(n):
            assert parse_pattern(format_pattern(p)) == p


def test_counting_identity_up_to_8():
    for mi in multiindices_up_to(8):
        D = dims_D(mi)
        prod = 1
        for s in mi:
            prod *= s + 1
        assert sum((s + 1) * d for s, d in D.items()) == prod
        assert set(D) <= set(defect_set(mi))
        assert n_of(mi) == sum(mi)
