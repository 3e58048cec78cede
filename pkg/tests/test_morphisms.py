import numpy as np
import pytest

from mcg_presentation import (
    Ai, B, Cij, DegenerateTarget, apply_gen_map, build_configuration, check_equation, collapse_matrix,
    g2_generator_map, kernel_generators, make_signature, parse_word, transvection, verify_gen_map,
    wajnryb_relators,
)
from mcg_presentation.morphisms import genmap_from_json, wajnryb_words
from mcg_presentation.surface import boundary_curve
from mcg_presentation.words import EMPTY

W = parse_word
MAP_GRID = [(g, n) for g in range(1, 5) for n in range(1, 4) if 2 * g + n - 3 >= 1]


def test_g2_table_examples():
    m = g2_generator_map(make_signature(2, 2))
    assert m.target == make_signature(2, 1)
    assert m.table[Cij(4, 2)] == W("c1_2")
    assert m.table[Cij(1, 4)] == W("a1 b a1") ** 4
    assert m.table[Cij(4, 1)] == EMPTY
    assert m.table[Ai(4)] == W("a1")
    assert m.table[B()] == W("b")
    with pytest.raises(DegenerateTarget):
        g2_generator_map(make_signature(1, 1))
    with pytest.raises(DegenerateTarget):
        g2_generator_map(make_signature(3, 0))


def test_apply_examples():
    sig = make_signature(2, 2)
    m = g2_generator_map(sig)
    assert apply_gen_map(m, W("c4_1")) == EMPTY
    assert apply_gen_map(m, W("a1 a4'")) == EMPTY
    assert apply_gen_map(m, EMPTY) == EMPTY
    assert m(W("c2_4 b")) == W("c2_1 b")


def test_genmap_json_roundtrip():
    m = g2_generator_map(make_signature(3, 2))
    assert genmap_from_json(m.to_json()) == m
    with pytest.raises(ValueError):
        genmap_from_json('{"format": "other"}')


def test_kernel_examples():
    sig = make_signature(2, 2)
    k = kernel_generators(sig)
    assert k.x[0] == W("a1 a4'")
    assert k.x[1] == W("b a1 a4' b'")
    assert k.d_n == W("c4_1")
    k13 = kernel_generators(make_signature(1, 3))
    assert len(k13.x) == 3
    assert k13.x[2] == W("a2 b a1 a3' b' a2'")


@pytest.mark.parametrize("g,n", MAP_GRID)
def test_kernel_maps_to_identity(g, n):
    sig = make_signature(g, n)
    m = g2_generator_map(sig)
    fam = kernel_generators(sig)
    # the defining chain runs to x_{2g-1} = b_{g-1}(x_{2g-2}) even when n = 1
    want = n if g == 1 else 2 * g + max(n - 2, 0)
    assert len(fam.x) == want
    for w in fam.all():
        assert apply_gen_map(m, w) == EMPTY


def test_collapse_matrix_conventions():
    sig = make_signature(2, 2)
    P = collapse_matrix(sig)
    src = build_configuration(sig)
    d = boundary_curve(sig, sig.n)
    assert d == Cij(4, 1)
    assert not np.any(P @ src.homology[d])
    assert np.array_equal(P @ transvection(src, d), P)
    for k in range(2 * sig.g):
        e = np.zeros(sig.rank, dtype=np.int64)
        e[k] = 1
        assert list(P @ e) == [1 if t == k else 0 for t in range(P.shape[0])]


@pytest.mark.parametrize("g,n", MAP_GRID)
def test_verify_g2(g, n):
    rep = verify_gen_map(g2_generator_map(make_signature(g, n)))
    assert rep.ok, rep.failures[:5]
    assert sum(k.startswith("square:") for k in rep.results) == 100


def test_fault_injection_needs_word_route():
    sig = make_signature(2, 2)
    bad = g2_generator_map(sig).with_image(Cij(1, 4), EMPTY)
    rep = verify_gen_map(bad, words=10)
    # (a1 b a1)^4 is a boundary-parallel twist in the target: homology cannot see it
    assert not any(k.startswith("oracle:") for k in rep.failures)
    assert "derive:E_{1,1,4}" in rep.failures
    assert all(k.startswith("derive:") for k in rep.failures)


def test_fault_injection_visible_to_oracle():
    bad = g2_generator_map(make_signature(2, 2)).with_image(Ai(2), W("b"))
    rep = verify_gen_map(bad, words=20, derive=False)
    assert any(k.startswith("oracle:") for k in rep.failures)
    assert any(k.startswith("square:") for k in rep.failures)


def test_wajnryb_relators_by_genus():
    assert wajnryb_relators(make_signature(1, 2)) == []
    (ii,) = wajnryb_relators(make_signature(2, 1))
    theta = wajnryb_words(make_signature(2, 1))["theta"]
    assert ii.lhs == W("a1 b a2") ** 4 and ii.rhs == W("c1_2") * theta
    assert [r.name for r in wajnryb_relators(make_signature(3, 1))] == ["Wajnryb.II", "Wajnryb.III"]


@pytest.mark.parametrize("g,n", [(2, 0), (2, 1), (3, 0), (3, 1), (4, 1)])
def test_wajnryb_relators_pass_oracle(g, n):
    sig = make_signature(g, n)
    c = build_configuration(sig)
    for eq in wajnryb_relators(sig):
        assert check_equation(c, eq), eq.name
