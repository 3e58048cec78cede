import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mcg_presentation import (
    Ai, B, Cij, Equation, build_configuration, check_equation, check_presentation, conjugate, evaluate,
    lantern_relations, make_signature, parse_word, presentation, star_lemma_identities, transvection,
)
from mcg_presentation.homology import transvection_from_class
from mcg_presentation.morphisms import random_word
from mcg_presentation.surface import boundary_curve, enumerate_generators
from mcg_presentation.words import EMPTY

W = parse_word
GRID = [(g, n) for g in range(1, 5) for n in range(0, 4) if 2 * g + n - 2 >= 1]


def slow_evaluate(config, w):
    """Product of full transvection matrices with python ints, leftmost letter outermost."""
    r = config.signature.rank
    M = sympy.eye(r)
    for l in w:
        M = M * sympy.Matrix(transvection(config, l.gen, l.exp).tolist())
    return M


def test_toy_lattice():
    om = np.array([[0, 1], [-1, 0]])
    Ta = transvection_from_class([1, 0], om)
    Tb = transvection_from_class([0, 1], om)
    P = Ta @ Tb
    assert np.array_equal(P @ P @ P, -np.eye(2, dtype=int))
    assert np.array_equal(Ta @ Tb @ Ta, Tb @ Ta @ Tb)


@pytest.mark.parametrize("g,n", GRID)
def test_transvection_unipotent(g, n):
    c = build_configuration(make_signature(g, n))
    I = np.eye(c.signature.rank, dtype=np.int64)
    for x in c.generators:
        M = transvection(c, x)
        assert np.array_equal((M - I) @ (M - I), 0 * I)
        assert np.array_equal(M @ transvection(c, x, -1), I)


def test_boundary_curve_acts_trivially():
    sig = make_signature(2, 2)
    c = build_configuration(sig)
    d = boundary_curve(sig, 1)
    assert np.array_equal(transvection(c, d), np.eye(sig.rank, dtype=np.int64))


def test_evaluate_basic():
    c = build_configuration(make_signature(2, 1))
    I = np.eye(c.signature.rank, dtype=np.int64)
    assert np.array_equal(evaluate(c, EMPTY), I)
    w = W("a1 b c1_2 b1' a3")
    assert np.array_equal(evaluate(c, w * w.inverse()), I)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GRID[:10]), st.integers(0, 2 ** 31))
def test_evaluate_matches_slow_product(gn, seed):
    c = build_configuration(make_signature(*gn))
    rng = random.Random(seed)
    w = random_word(c.generators, 12, rng)
    assert sympy.Matrix(evaluate(c, w).tolist()) == slow_evaluate(c, w)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_evaluate_functorial(seed):
    c = build_configuration(make_signature(3, 1))
    rng = random.Random(seed)
    y, x = random_word(c.generators, 8, rng), random_word(c.generators, 8, rng)
    lhs = evaluate(c, conjugate(y, x))
    rhs = evaluate(c, y) @ evaluate(c, x) @ evaluate(c, y.inverse())
    assert np.array_equal(lhs, rhs)
    assert round(abs(np.linalg.det(evaluate(c, y).astype(float)))) == 1


def test_long_words_switch_to_exact_ints():
    c = build_configuration(make_signature(2, 0))
    w = W("a1 b'") ** 40 * W("b1 a2'") ** 40   # hyperbolic, entries grow
    M = evaluate(c, w)
    assert M.dtype == object
    assert sympy.Matrix(M.tolist()) == slow_evaluate(c, w)


def test_check_equation_examples():
    c20 = build_configuration(make_signature(2, 0))
    pres = presentation(c20.signature)
    assert check_equation(c20, pres.relation("E_{1,1,2}"))
    assert not check_equation(c20, Equation(W("a1"), W("b")))
    from mcg_presentation import lantern_relation
    c30 = build_configuration(make_signature(3, 0))
    assert check_equation(c30, lantern_relation(c30.signature, 1, 2, 4))


@pytest.mark.parametrize("g,n", [(2, 0), (3, 1)])
def test_check_presentation_shipped(g, n):
    rep = check_presentation(build_configuration(make_signature(g, n)))
    assert rep.ok and len(rep.results) > 0


def test_check_presentation_fault_injection():
    c = build_configuration(make_signature(3, 1))
    bad = c.with_homology(Ai(2), np.zeros(c.signature.rank, dtype=np.int64))
    rep = check_presentation(bad)
    assert not rep.ok
    assert rep.failures


@pytest.mark.parametrize("g,n", [(2, 1), (3, 0)])
def test_braid_compatibility_on_matrices(g, n):
    c = build_configuration(make_signature(g, n))
    gens = enumerate_generators(c.signature)
    for p, x in enumerate(gens):
        for y in gens[p + 1:]:
            X, Y = transvection(c, x), transvection(c, y)
            pr = c.pairing(x, y)
            if abs(pr) == 1:
                assert np.array_equal(X @ Y @ X, Y @ X @ Y)
            elif pr == 0:
                assert np.array_equal(X @ Y, Y @ X)


@pytest.mark.parametrize("g,n", [(2, 0), (2, 2), (3, 1)])
def test_lanterns_and_star_lemma(g, n):
    sig = make_signature(g, n)
    c = build_configuration(sig)
    for eq in lantern_relations(sig) + star_lemma_identities(sig):
        assert check_equation(c, eq), eq.name


def test_report_json():
    rep = check_presentation(build_configuration(make_signature(1, 1)))
    d = rep.to_dict()
    assert d["ok"] and d["total"] == 1 and d["failures"] == []
