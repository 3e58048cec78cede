from itertools import product
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mcg_presentation import (
    Ai, B, Bi, Cij, DegenerateSignature, IntersectionClass, build_configuration, cyclic_index,
    enumerate_generators, enumerate_good_triples, intersection_class, is_good_triple, make_signature,
    parse_curve, validate_configuration, wajnryb_subset,
)
from mcg_presentation.surface import boundary_curve, configuration_from_json

GRID = [(g, n) for g in range(1, 5) for n in range(0, 4) if 2 * g + n - 2 >= 1]


def test_signature_fields():
    s = make_signature(2, 0)
    assert (s.g, s.n, s.N) == (2, 0, 2)
    s = make_signature(1, 1)
    assert (s.g, s.n, s.N) == (1, 1, 1)


@pytest.mark.parametrize("g,n", [(1, 0), (0, 3), (2, -1)])
def test_degenerate_signatures(g, n):
    with pytest.raises(DegenerateSignature):
        make_signature(g, n)


def test_cyclic_index_examples():
    assert cyclic_index(make_signature(2, 1), 4) == 1
    assert cyclic_index(make_signature(2, 0), 3) == 1
    assert cyclic_index(make_signature(3, 0), 4) == 4


@given(st.sampled_from(GRID), st.integers(-50, 50))
def test_cyclic_index_periodic(gn, m):
    sig = make_signature(*gn)
    assert cyclic_index(sig, m + sig.N) == cyclic_index(sig, m)
    assert cyclic_index(sig, m) == ((m - 1) % sig.N) + 1


def test_generator_lists():
    assert enumerate_generators(make_signature(2, 0)) == [B(), Bi(1), Ai(1), Ai(2), Cij(1, 2), Cij(2, 1)]
    assert enumerate_generators(make_signature(1, 1)) == [B(), Ai(1)]
    assert len(enumerate_generators(make_signature(2, 1))) == 11


@pytest.mark.parametrize("g,n", [(g, n) for g in range(1, 6) for n in range(6) if 2 * g + n - 2 >= 1])
def test_generator_count_formula(g, n):
    sig = make_signature(g, n)
    N = sig.N
    gens = enumerate_generators(sig)
    assert len(gens) == 1 + (g - 1) + N + N * (N - 1)
    assert len(set(gens)) == len(gens)


def test_wajnryb_subset():
    assert wajnryb_subset(make_signature(2, 0)) == [Ai(1), B(), Ai(2), Bi(1), Cij(1, 2)]
    assert wajnryb_subset(make_signature(1, 1)) == [Ai(1), B()]
    assert wajnryb_subset(make_signature(2, 1)) == [Ai(1), B(), Ai(2), Bi(1), Cij(1, 2)]


def test_good_triple_examples():
    sig = make_signature(3, 0)
    assert not is_good_triple(sig, 1, 1, 1)
    assert is_good_triple(sig, 1, 2, 1)
    assert not is_good_triple(sig, 1, 3, 2)


def _brute_good(N):
    out = []
    for i, j, k in product(range(1, N + 1), repeat=3):
        if i == j == k:
            continue
        # some cyclic rotation is non-decreasing
        rots = [(i, j, k), (j, k, i), (k, i, j)]
        if any(a <= b <= c for a, b, c in rots):
            out.append((i, j, k))
    return out


@pytest.mark.parametrize("N", range(1, 9))
def test_good_triple_count(N):
    sig = make_signature(1, N)   # N = n for g = 1
    got = enumerate_good_triples(sig)
    assert sorted(got) == sorted(_brute_good(N))
    assert len(got) == 3 * (comb(N + 2, 3) - N)


def test_good_triple_small_counts():
    assert len(enumerate_good_triples(make_signature(2, 0))) == 6
    assert len(enumerate_good_triples(make_signature(2, 1))) == 21
    assert enumerate_good_triples(make_signature(1, 1)) == []


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
def test_good_triple_rotation_invariant(i, j, k):
    sig = make_signature(1, 6)
    assert is_good_triple(sig, i, j, k) == is_good_triple(sig, j, k, i) == is_good_triple(sig, k, i, j)


def test_intersection_examples():
    c = build_configuration(make_signature(2, 0))
    assert intersection_class(c, Ai(1), Ai(2)) is IntersectionClass.ZERO
    assert intersection_class(c, B(), Ai(1)) is IntersectionClass.ONE
    assert intersection_class(c, Ai(1), B()) is IntersectionClass.ONE
    c4 = build_configuration(make_signature(3, 0))
    assert intersection_class(c4, Cij(1, 3), Cij(2, 4)) is IntersectionClass.MANY


@pytest.mark.parametrize("g,n", GRID)
def test_shipped_configuration_valid(g, n):
    c = build_configuration(make_signature(g, n))
    rep = validate_configuration(c)
    assert rep.ok, rep.violations[:5]
    om = c.pairing_matrix
    assert np.array_equal(om, -om.T)
    # class matches pairing for every pair, checked directly
    gens = enumerate_generators(c.signature)
    for a, x in enumerate(gens):
        for y in gens[a + 1:]:
            cls, p = c.intersection_class(x, y), c.pairing(x, y)
            if cls is IntersectionClass.ONE:
                assert abs(p) == 1
            elif cls is IntersectionClass.ZERO:
                assert p == 0


@pytest.mark.parametrize("g,n", [gn for gn in GRID if gn[1] >= 1 and 2 * gn[0] + gn[1] - 2 >= 2])
def test_boundary_curves_are_inert(g, n):
    sig = make_signature(g, n)
    c = build_configuration(sig)
    for i in range(1, n + 1):
        d = boundary_curve(sig, i)
        assert not np.any(c.pairing_matrix @ c.homology[d])
        for y in enumerate_generators(sig):
            if y != d:
                assert c.intersection_class(d, y) is IntersectionClass.ZERO


def test_fault_braid_pair_forced_zero():
    c = build_configuration(make_signature(2, 0)).with_class(B(), Ai(1), IntersectionClass.ZERO)
    rep = validate_configuration(c)
    assert not rep.ok
    assert any("b" in v and "a1" in v for v in rep.violations)
    # the 2x2 reason: transvections with pairing +-1 do not commute
    from mcg_presentation.homology import transvection_from_class
    om = np.array([[0, -1], [1, 0]])
    Ta = transvection_from_class(np.array([1, 0]), om)
    Tb = transvection_from_class(np.array([0, 1]), om)
    assert not np.array_equal(Ta @ Tb, Tb @ Ta)


def test_fault_boundary_pairing():
    sig = make_signature(2, 1)
    c = build_configuration(sig)
    d = boundary_curve(sig, 1)
    bad = c.with_homology(d, c.homology[d] + c.homology[B()])
    rep = validate_configuration(bad, check_relations=False)
    assert any("boundary" in v for v in rep.violations)


@pytest.mark.parametrize("g,n", GRID)
def test_configuration_json_roundtrip(g, n):
    c = build_configuration(make_signature(g, n))
    assert configuration_from_json(c.to_json()) == c


def test_parse_curve():
    assert parse_curve("c2_4") == Cij(2, 4) == parse_curve("c_2_4")
    assert parse_curve("b3") == Bi(3)
    assert parse_curve("b") == B()
    with pytest.raises(ValueError):
        parse_curve("q7")
    with pytest.raises(ValueError):
        Cij(2, 2)
