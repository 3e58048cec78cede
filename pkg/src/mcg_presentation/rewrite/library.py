"""The shipped derivation scripts, generated per signature.

Each script transcribes one printed computation; lines justified by "(T)"
become "= WORD" (a braid bridge), lines justified by a relation or an
earlier lemma become "= WORD by NAME".  Templates are instantiated only for
the index values that later scripts actually cite, plus every triple over
{1, 2}, which keeps a full replay fast.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from ..surface import SurfaceSignature, cyclic_index, is_good_triple
from .dsl import parse_scripts
from .engine import DerivationScript


def _a(i):
    return f"a{i}"


def _c(i, j):
    return "" if i == j else f"c{i}_{j}"


# ---------------------------------------------------------------- etoile

def etoile_i(i, j) -> str:
    ai, aj = _a(i), _a(j)
    return f"""
script etoile.i.a[{i},{j}]
note a_i X2 = X2 a_j, the printed chain of (i)
let X2 = b {ai} {aj} b
claim {ai} X2 = X2 {aj}
  = {ai} b {ai} {aj} b
  = b {ai} b {aj} b
  = b {ai} {aj} b {aj}
end

script etoile.i.b[{i},{j}]
note a_j X2 = X2 a_i, "in the same way"
let X2 = b {ai} {aj} b
claim {aj} X2 = X2 {ai}
  = {aj} b {aj} {ai} b
  = b {aj} b {ai} b
  = b {aj} {ai} b {ai}
  = b {ai} {aj} b {ai}
end

script etoile.i.12[{i},{j}]
note X1 X2 = X2 X1
depends etoile.i.a[{i},{j}] etoile.i.b[{i},{j}]
let X1 = {ai} {aj}
let X2 = b X1 b
claim X1 X2 = X2 X1
  = {ai} X2 {ai} by etoile.i.b[{i},{j}]
  = X2 {aj} {ai} by etoile.i.a[{i},{j}]
  = X2 X1
end
"""


def etoile_ijk(i, j, k) -> str:
    ai, aj, ak = _a(i), _a(j), _a(k)
    return f"""
script etoile.i.13[{i},{j},{k}]
note X1 X3 = X3 X1, since X1 commutes with a_k and X2
depends etoile.i.12[{i},{j}]
let X1 = {ai} {aj}
let X2 = b X1 b
let X3 = {ak} X2 {ak}
claim X1 X3 = X3 X1
  = {ak} X1 X2 {ak}
  = {ak} X2 X1 {ak} by etoile.i.12[{i},{j}]
  = X3 X1
end

script etoile.i.b3[{i},{j},{k}]
note b(X3) = X3
let X2 = b {ai} {aj} b
let X3 = {ak} X2 {ak}
claim [b | X3] = X3
  = b {ak} b {ai} {aj} b {ak} b'
  = {ak} b {ak} {ai} {aj} b {ak} b'
  = {ak} b {ak} {ai} {aj} {ak}' b {ak}
  = X3
end

script etoile.i.23[{i},{j},{k}]
note X2 X3 = X3 X2, from b(X3) = X3 and X1 X3 = X3 X1
depends etoile.i.b3[{i},{j},{k}] etoile.i.13[{i},{j},{k}]
let X1 = {ai} {aj}
let X2 = b X1 b
let X3 = {ak} X2 {ak}
claim X2 X3 = X3 X2
  = b X1 X3 b' b b by etoile.i.b3[{i},{j},{k}]
  = b X3 X1 b by etoile.i.13[{i},{j},{k}]
  = X3 b X1 b by etoile.i.b3[{i},{j},{k}]
end

script etoile.ii[{i},{j},{k}]
note (a_i a_j a_k b)^3 = X1 X2 X3
depends etoile.i.23[{i},{j},{k}]
let X1 = {ai} {aj}
let X2 = b X1 b
let X3 = {ak} X2 {ak}
claim ({ai} {aj} {ak} b)^3 = X1 X2 X3
  = {ai} {aj} {ak} b {ai} {aj} {ak} b {ak} {ai} {aj} b
  = {ai} {aj} {ak} b {ai} {aj} b {ak} b {ai} {aj} b
  = X1 X3 X2
  = X1 X2 X3 by etoile.i.23[{i},{j},{k}]
end
"""


def etoile_iii(i, j) -> str:
    ai, aj = _a(i), _a(j)
    return f"""
script etoile.iii.a[{i},{j}]
note (a_i a_i a_j b)^3 = X1^2 X2^2 = (a_i a_j b)^4
depends etoile.ii[{i},{j},{i}] etoile.i.b[{i},{j}] etoile.i.12[{i},{j}]
let X1 = {ai} {aj}
let X2 = b X1 b
claim ({ai} {ai} {aj} b)^3 = ({ai} {aj} b)^4
  = ({ai} {aj} {ai} b)^3
  = X1 X2 {ai} X2 {ai} by etoile.ii[{i},{j},{i}]
  = X1 X2 {ai} {aj} X2 by etoile.i.b[{i},{j}]
  = X1 X2 X1 X2
  = X1 X1 X2 X2 by etoile.i.12[{i},{j}]
  = X1 X2 X1 X2 by etoile.i.12[{i},{j}]
end

script etoile.iii.b[{i},{j}]
note (a_i a_j b)^4 = (a_i b a_j)^4; the printed line drops letters, so this
note goes through (i) instead, with (a_i b a_j)^4 = a_i X2 X1 X2 a_j
depends etoile.i.a[{i},{j}] etoile.i.b[{i},{j}] etoile.i.12[{i},{j}]
let X1 = {ai} {aj}
let X2 = b X1 b
claim ({ai} {aj} b)^4 = ({ai} b {aj})^4
  = X1 X2 X1 X2
  = X1 X2 X2 X1 by etoile.i.12[{i},{j}]
  = X1 X2 {aj} X2 {aj} by etoile.i.b[{i},{j}]
  = X1 {ai} X2 X2 {aj} by etoile.i.a[{i},{j}]
  = {ai} X1 X2 X2 {aj}
  = {ai} X2 X1 X2 {aj} by etoile.i.12[{i},{j}]
  = ({ai} b {aj})^4
end
"""


def etoile_scripts(pairs: Iterable[Tuple[int, int]], triples: Iterable[Tuple[int, int, int]],
                   iii: Iterable[Tuple[int, int]]) -> str:
    out = [etoile_i(i, j) for i, j in sorted(set(pairs))]
    out += [etoile_ijk(*t) for t in sorted(set(triples))]
    out += [etoile_iii(i, j) for i, j in sorted(set(iii))]
    return "".join(out)


# ---------------------------------------------------------------- lantern

def lantern_needs(i, j, k):
    """(pairs, triples, iii) of etoile instances cited by the lantern proof."""
    return [(i, k), (k, i)], [(i, k, j), (k, i, k)], [(k, i)]


def lantern(i, j, k) -> str:
    """Both forms of the lantern for a triple of distinct indices.

    The proof multiplies E_{i,j,k} against E_{i,k,k}, rewritten through
    the star lemma with X1 = a_i a_k, X = b a_i a_k b, X3 = a_j X a_j.
    """
    ai, aj, ak = _a(i), _a(j), _a(k)
    cij, cjk, cki, cik = _c(i, j), _c(j, k), _c(k, i), _c(i, k)
    E1, E2 = f"E_{{{i},{j},{k}}}", f"E_{{{i},{k},{k}}}"
    name = f"L_{{{i},{j},{k}}}"
    return f"""
script {name}
note lantern from E_{{i,j,k}} and E_{{i,k,k}}
depends etoile.ii[{i},{k},{j}] etoile.i.23[{i},{k},{j}] etoile.iii.a[{k},{i}] etoile.i.a[{i},{k}] etoile.i.b[{i},{k}] etoile.i.12[{i},{k}]
let X1 = {ai} {ak}
let X = b {ai} {ak} b
let X3 = {aj} X {aj}
claim {ai} {cij} {cjk} {ak} = {cik} X3 X'
  insert 3 {cki} => {ai} {cij} {cjk} {cki} {cki}' {ak}
  apply {E1} at 1 => {ai} ({ai} {aj} {ak} b)^3 {cki}' {ak}
  = {ai} ({ai} {ak} {aj} b)^3 {cki}' {ak}
  = {ai} X1 X X3 {cki}' {ak} by etoile.ii[{i},{k},{j}]
  = {ai} X1 X {aj} X {ak} {aj} {cki}'
  = {ai} X1 X {aj} {ai} X {aj} {cki}' by etoile.i.a[{i},{k}]
  = {ai} X1 X {ai} X3 {cki}'
  = {ai} X1 {ak} X X3 {cki}' by etoile.i.b[{i},{k}]
  = X1 X1 X X3 X X' {cki}'
  = X1 X1 X X X3 X' {cki}' by etoile.i.23[{i},{k},{j}]
  = X1 X X1 X X3 X' {cki}' by etoile.i.12[{i},{k}]
  = ({ak} {ai} b)^4 X3 X' {cki}'
  = ({ak} {ak} {ai} b)^3 X3 X' {cki}' by etoile.iii.a[{k},{i}]
  = ({ai} {ak} {ak} b)^3 X3 X' {cki}'
  = {cik} {cki} X3 X' {cki}' by {E2}
  = {cik} X3 X'
end

script {name}.alt
note the second printed form, X3 X^-1 = X^-1 X3
depends {name} etoile.i.23[{i},{k},{j}]
let X = b {ai} {ak} b
let X3 = {aj} X {aj}
claim {ai} {cij} {cjk} {ak} = {cik} X' X3
  = {cik} X3 X' by {name}
  = {cik} X' X X3 X' by etoile.i.23[{i},{k},{j}]
  = {cik} X' X3
end
"""


# ---------------------------------------------------------- lemma on a_k

def lemma_ak(i, k) -> str:
    """a_k = b a_{2i} b_i a_{2i-1} b c_{2i,2i-1}^-1 a_{2i} c_{2i,k} (b_i)."""
    ai, ap, ak, bi = _a(2 * i), _a(2 * i - 1), _a(k), f"b{i}"
    C, D, E = _c(2 * i, 2 * i - 1), _c(2 * i, k), _c(k, 2 * i - 1)
    lant = f"L_{{{2 * i},{k},{2 * i - 1}}}.alt"
    return f"""
script lemma.ak[{i},{k}]
note a_k as a conjugate of b_i, through the lantern L_{{2i,k,2i-1}}
depends {lant}
let X = b {ai} {ap} b
let Y = b {ai} {bi} {ap} b {C}' {ai} {D}
claim [Y | {bi}] = {ak}
  apply {lant} => b {ai} {bi} {ap} b X' {ak} X {ak} {ap}' {E}' {bi} {D}' {ai}' {C} b' {ap}' {bi}' {ai}' b'
  apply {lant} => [b {ai} {bi} {ap} b X' {ak} X {ak} {ap}' {E}' | {bi}]
  = [b {ai} {bi} {ap} b X' {ak} X | {bi}]
  = [b {ai} {bi} {ai}' b' {ak} X | {bi}]
  = [b {bi}' {ai} {bi} {ak} b {ak}' {bi}' | {ai}]
  = [b {ak} {bi}' | b]
  = [b b' | {ak}]
end
"""


# ------------------------------------------------------------ Psi(theta)

PSI_THETA = """
script psi.theta
note Psi(theta) = c_{2,1}, which with E_{1,2,2} gives relation (II)
constraint g >= 2
depends etoile.ii[1,1,2]
claim [b1 a2 b a1 a1 b a2 b1 | c1_2] = c2_1
  = [b1 a2 b a1 a1 b a2 c1_2' | b1]
  = [b1 a2 b a1 a1 b a2 (a1 a1 a2 b)^-3 c2_1 | b1] by E_{1,1,2}
  = [b1 b' a1' a1' b' a1' a1' c2_1 | b1] by etoile.ii[1,1,2]
  = [b1 b1' | c2_1]
  = c2_1
end
"""


# -------------------------------------------- conjugation by h, genus >= 3

WAJNRYB_H = """
script wajnryb.h.a1
note h(a_1) = a_2
constraint g >= 3
let H = b2 a4 c4_1' b2' b a2 a1 b b1 c1_2 a2 b1
claim [H | a1] = a2
  = [b2 a4 c4_1' b2' b a2 a1 a1' | b]
  = [b2 a4 c4_1' b2' b b' | a2]
  = a2
end

script wajnryb.h.c12
note h(c_{1,2}) = a_1
constraint g >= 3
let H = b2 a4 c4_1' b2' b a2 a1 b b1 c1_2 a2 b1
claim [H | c1_2] = a1
  = [b2 a4 c4_1' b2' b a2 a1 b b1 c1_2 a2 c1_2' | b1]
  = [b2 a4 c4_1' b2' b a2 a1 b b1 b1' | a2]
  = [b2 a4 c4_1' b2' b a2 a1 a2' | b]
  = [b2 a4 c4_1' b2' b b' | a1]
  = a1
end

script wajnryb.h.a4
note h(a_4) = c_{2,4}, through E_{1,2,4}
constraint g >= 3
let H = b2 a4 c4_1' b2' b a2 a1 b b1 c1_2 a2 b1
claim [H | a4] = c2_4
  = [b2 a4 c4_1' b2' b a2 a1 b | a4]
  = [b2 a4 (a1' a2' a4' b')^3 c1_2 c2_4 b2' b a2 a1 b | a4] by E_{1,2,4}
  = [b2 c2_4 a1' a2' b' a1' a2' a4' b' a1' a2' a4' b' b2' b a2 a1 b | a4]
  = [b2 c2_4 a1' a2' b' a1' a2' b' a4' b' b2' b | a4]
  = [b2 c2_4 a1' a2' b' a1' a2' b' a4' a4 | b2]
  = [b2 c2_4 | b2]
  = c2_4
end

script wajnryb.h.a2
note h(a_2) = c_{1,2}
constraint g >= 3
let H = b2 a4 c4_1' b2' b a2 a1 b b1 c1_2 a2 b1
claim [H | a2] = c1_2
  = [b2 a4 c4_1' b2' b a2 a1 b b1 c1_2 a2 a2' | b1]
  = [b2 a4 c4_1' b2' b a2 a1 b b1 b1' | c1_2]
  = c1_2
end

script wajnryb.h.b
note h(b) = b_1, by the braid relations
constraint g >= 3
let H = b2 a4 c4_1' b2' b a2 a1 b b1 c1_2 a2 b1
claim [H | b] = b1
  = [b2 a4 c4_1' b2' b a2 a1 b b1 b' | a2]
  = [b2 a4 c4_1' b2' b a2 a2' | b1]
  = b1
end

script wajnryb.h.m
note h X^-1 (a_2) = m, from the images of a_1, a_4, a_2 and b
constraint g >= 3
depends wajnryb.h.a1 wajnryb.h.a4 wajnryb.h.a2 wajnryb.h.b
let H = b2 a4 c4_1' b2' b a2 a1 b b1 c1_2 a2 b1
let X = b a1 a4 b
let Bp = [H | b']
let A4p = [H | a4']
let A1p = [H | a1']
claim [H X' | a2] = [b1' a2' c2_4' b1' | c1_2]
  = [H X' H' | [H | a2]]
  apply wajnryb.h.a2 => [H X' H' | c1_2]
  = [Bp A4p A1p Bp | c1_2]
  apply wajnryb.h.b => b1' A4p A1p Bp c1_2 Bp' A1p' A4p' Bp'
  apply wajnryb.h.b => b1' A4p A1p b1' c1_2 Bp' A1p' A4p' Bp'
  apply wajnryb.h.b => b1' A4p A1p b1' c1_2 b1 A1p' A4p' Bp'
  apply wajnryb.h.b => [b1' A4p A1p b1' | c1_2]
  apply wajnryb.h.a4 => b1' c2_4' A1p b1' c1_2 b1 A1p' A4p' b1
  apply wajnryb.h.a4 => [b1' c2_4' A1p b1' | c1_2]
  apply wajnryb.h.a1 => b1' c2_4' a2' b1' c1_2 b1 A1p' c2_4 b1
  apply wajnryb.h.a1 => [b1' c2_4' a2' b1' | c1_2]
  = [b1' a2' c2_4' b1' | c1_2]
end
"""


# ------------------------------------------------- kernel of g2, cases 1, 2

def kernel_cases(N, extra: Sequence[int]) -> str:
    """Case 1 and Case 2 of the normality proof; x0 = a_1 a_N^-1, x1 = b(x0)."""
    aN = _a(N)
    head = f"""let X0 = a1 {aN}'
let X1 = [b | X0]"""
    out = f"""
script kernel.case1.bbar
note b^-1(x0) = x0 x1^-1 x0
constraint n >= 1 and N >= 2
{head}
claim X0 X1' X0 = [b' | X0]
  = a1 {aN}' b {aN} a1' b' a1 {aN}'
  = a1 b {aN} b' b a1' b' {aN}'
  = b' a1 b b' {aN}' b
end

script kernel.case2.a1
note a_1(x1) = x1 x0^-1
constraint n >= 1 and N >= 2
{head}
claim [a1 | X1] = X1 X0'
  = a1 b a1 {aN}' b' a1'
  = b a1 b {aN}' b' a1'
  = b a1 {aN}' b' {aN} a1'
end

script kernel.case2.a1bar
note a_1^-1(x1) = x1 x0
constraint n >= 1 and N >= 2
{head}
claim [a1' | X1] = X1 X0
  = a1' b a1 {aN}' b' a1
  = b a1 b' {aN}' b' a1
  = b a1 {aN}' b' {aN}' a1
  = X1 X0
end

script kernel.case2.aN
note a_N(x1) = x0^-1 x1
constraint n >= 1 and N >= 2
{head}
claim [{aN} | X1] = X0' X1
  = {aN} b a1 {aN}' b' {aN}'
  = {aN} b a1 b' {aN}' b'
  = {aN} a1' b a1 {aN}' b'
end

script kernel.case2.aNbar
note a_N^-1(x1) = x0 x1
constraint n >= 1 and N >= 2
{head}
claim [{aN}' | X1] = X0 X1
  = {aN}' b a1 {aN}' b' {aN}
  = {aN}' b a1 b {aN}' b'
  = {aN}' a1 b a1 {aN}' b'
  = X0 X1
end

script kernel.case2.bbar
note b^-1(x1) = x0
constraint n >= 1 and N >= 2
{head}
claim [b' | X1] = X0
end

script kernel.case2.b
note b(x1) = x1 x0^-1 x1
constraint n >= 1 and N >= 2
{head}
claim X1 X0' X1 = [b | X1]
  = b a1 {aN}' b' a1' {aN} b a1 {aN}' b'
  = b {aN}' b' a1' b b' {aN} b a1 b'
  = b b {aN}' b' b a1 b' b'
  = [b | X1]
end
"""
    for i in extra:
        ai = _a(i)
        out += f"""
script kernel.case2.a[{i}]
note a_i(x1) = x_i is a definition; a_i^-1(x1) = x1 x_i^-1 x1
constraint n >= 1 and N >= 2
depends kernel.case1.bbar
{head}
let Xi = [{ai} | X1]
claim X1 Xi' X1 = [{ai}' | X1]
  = b X0 b' {ai} b X0' b' {ai}' b X0 b'
  = b X0 {ai} b {ai}' X0' {ai} b' {ai}' X0 b'
  = b {ai} X0 b X0' b' X0 {ai}' b' by kernel.case1.bbar
  = b {ai} X0 X1' X0 {ai}' b'
  = b {ai} b' X0 b {ai}' b' by kernel.case1.bbar
  = {ai}' b {ai} X0 {ai}' b' {ai}
  = [{ai}' | X1]
end
"""
    return out


# ------------------------------------------------------------- assembly

def _ak_targets(sig: SurfaceSignature) -> List[Tuple[int, int]]:
    """(i, k) for the a_k lemma: the first two cylinders, k just past them."""
    N = sig.leg_count
    out = []
    for i in range(1, min(sig.genus, 3)):
        k = 2 * i + 1 if 2 * i + 1 <= N else 1
        if k not in (2 * i - 1, 2 * i):
            out.append((i, k))
    return out


def shipped_text(sig: SurfaceSignature) -> str:
    """Script source for every shipped derivation that makes sense at sig."""
    g, n, N = sig.genus, sig.boundary_count, sig.leg_count
    small = [x for x in (1, 2) if x <= N]
    pairs: Set[Tuple[int, int]] = {(i, j) for i in small for j in small}
    triples: Set[Tuple[int, int, int]] = {(i, j, k) for i in small for j in small for k in small}
    iii: Set[Tuple[int, int]] = set(pairs)

    lanterns = []
    if N >= 4:
        lanterns.append((1, 2, 4))
    for i, k in _ak_targets(sig):
        lanterns.append((2 * i, k, 2 * i - 1))
    for t in lanterns:
        p, tr, ii = lantern_needs(*t)
        pairs.update(p)
        triples.update(tr)
        iii.update(ii)
    # closure: iii needs ii[i,j,i]; every triple needs its leading pair
    for i, j in list(iii):
        triples.add((i, j, i))
    for i, j, _ in list(triples):
        pairs.add((i, j))

    parts = [etoile_scripts(pairs, triples, iii)]
    parts += [lantern(*t) for t in dict.fromkeys(lanterns)]
    parts += [lemma_ak(i, k) for i, k in _ak_targets(sig)]
    if g >= 2:
        parts.append(PSI_THETA)
    if g >= 3:
        parts.append(WAJNRYB_H)
    if n >= 1 and N >= 2:
        extra = [i for i in [2] + list(range(2 * g, N)) if 2 <= i <= N - 1]
        parts.append(kernel_cases(N, list(dict.fromkeys(extra))))
    return "".join(parts)


def shipped_scripts(sig: SurfaceSignature) -> List[DerivationScript]:
    """The shipped scripts for sig, in dependency order."""
    return parse_scripts(shipped_text(sig))
