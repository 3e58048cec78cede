"""The capping map g2, its kernel generators and the Wajnryb relator words.

g2 : G_{g,n} -> G_{g,n-1} forgets the last leg.  Nothing here builds a
quotient group; relation images are checked twice, once through homology of
the target and once by asking the rewrite engine for a derivation in the
target presentation.  The second route matters: (a1 b a1)^4 acts trivially
on homology, so the oracle alone cannot tell it from the empty word.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .homology import Report, evaluate, matrices_equal
from .presentation import Equation, Presentation, RelationKind, presentation
from .surface import (
    Ai, B, Bi, Cij, CurveConfiguration, CurveId, DegenerateSignature, SurfaceSignature,
    build_configuration, enumerate_generators, make_signature, parse_curve,
)
from .words import EMPTY, Letter, Word, conjugate, letter, parse_word, reduce

GENMAP_FORMAT = "mcg-genmap/1"


class DegenerateTarget(ValueError):
    pass


@dataclass(frozen=True)
class GenMap:
    source: SurfaceSignature
    target: SurfaceSignature
    table: Dict[CurveId, Word] = field(default_factory=dict)

    def __call__(self, w) -> Word:
        return apply_gen_map(self, w)

    def with_image(self, gen: CurveId, w: Word) -> "GenMap":
        """Copy with one image replaced (used for fault injection)."""
        t = dict(self.table)
        t[gen] = Word(w)
        return GenMap(self.source, self.target, t)

    def to_dict(self) -> dict:
        return {
            "format": GENMAP_FORMAT,
            "source": [self.source.genus, self.source.boundary_count],
            "target": [self.target.genus, self.target.boundary_count],
            "table": [[x.name, _tokens(w)] for x, w in sorted(self.table.items(), key=lambda kv: kv[0].sort_key)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def __eq__(self, other):
        return (isinstance(other, GenMap) and self.source == other.source and self.target == other.target
                and {k: tuple(v) for k, v in self.table.items()} == {k: tuple(v) for k, v in other.table.items()})

    def __hash__(self):
        return hash((self.source, self.target))


def _tokens(w: Word) -> List[str]:
    return [l.gen.name + ("'" if l.exp < 0 else "") for l in w]


def genmap_from_dict(d: dict) -> GenMap:
    if d.get("format") != GENMAP_FORMAT:
        raise ValueError(f"not a {GENMAP_FORMAT} document")
    table = {parse_curve(name): parse_word(" ".join(toks)) for name, toks in d["table"]}
    return GenMap(make_signature(*d["source"]), make_signature(*d["target"]), table)


def genmap_from_json(text: str) -> GenMap:
    return genmap_from_dict(json.loads(text))


# ------------------------------------------------------------------- g2

def g2_generator_map(sig: SurfaceSignature) -> GenMap:
    """The printed table for g2 (primes dropped: images are target words)."""
    g, n, N = sig.genus, sig.boundary_count, sig.leg_count
    if n < 1:
        raise DegenerateTarget(f"g2 needs n >= 1, got {sig}")
    try:
        tgt = make_signature(g, n - 1)
    except DegenerateSignature as e:
        raise DegenerateTarget(f"target of g2 on {sig} is degenerate: {e}") from None
    a1, b = letter(Ai(1)), letter(B())
    table: Dict[CurveId, Word] = {}
    for x in enumerate_generators(sig):
        if x.kind == "b":
            img = b
        elif x.kind == "bi":
            img = letter(Bi(x.i))
        elif x.kind == "a":
            img = a1 if x.i == N else letter(Ai(x.i))
        else:
            i, j = x.i, x.j
            if i != N and j != N:
                img = letter(Cij(i, j))
            elif j == N and i != 1:
                img = letter(Cij(i, 1))
            elif i == N and j != 1:
                img = letter(Cij(1, j))
            elif i == 1:                  # c_{1,N}
                img = (a1 * b * a1) ** 4
            else:                         # c_{N,1}
                img = EMPTY
        table[x] = Word(img)
    return GenMap(sig, tgt, table)


def apply_gen_map(m: GenMap, w) -> Word:
    """Letterwise substitution, then free reduction."""
    out = []
    for l in w:
        img = m.table[l.gen]
        out.extend(img if l.exp > 0 else img.inverse())
    return reduce(out)


def collapse_matrix(sig: SurfaceSignature) -> np.ndarray:
    """Homology shadow of capping the last boundary: target rank x source rank.

    Handle classes go to themselves, d_i to d'_i for i <= n-2, and d_{n-1}
    (the leg that becomes last) to minus the sum of the remaining d'.
    """
    g, n = sig.genus, sig.boundary_count
    if n < 1:
        raise DegenerateTarget(f"collapse needs n >= 1, got {sig}")
    r_src = sig.rank
    r_tgt = 2 * g + max(n - 2, 0)
    P = np.zeros((r_tgt, r_src), dtype=np.int64)
    for k in range(2 * g):
        P[k, k] = 1
    for i in range(1, n - 1):
        P[2 * g + i - 1, 2 * g + i - 1] = 1
    if n >= 2:
        P[2 * g:, 2 * g + n - 2] = -1
    return P


# -------------------------------------------------------------- kernel

@dataclass(frozen=True)
class KernelFamily:
    x: Tuple[Word, ...]
    d_n: Word

    def all(self) -> List[Word]:
        return list(self.x) + [self.d_n]


def kernel_generators(sig: SurfaceSignature) -> KernelFamily:
    """x_0, ..., x_{N-1} and d_n = c_{N,1}; for g = 1 this is x_0, ..., x_{n-1}."""
    g, n, N = sig.genus, sig.boundary_count, sig.leg_count
    if n < 1 or N < 2:
        raise DegenerateTarget(f"kernel of g2 needs n >= 1 and a non-degenerate target, got {sig}")
    a = lambda i: letter(Ai(i))
    x = [reduce(a(1) * a(N).inverse())]
    x.append(conjugate(letter(B()), x[0]))
    if N > 2:
        x.append(conjugate(a(2), x[1]))
    if g >= 2:
        x.append(conjugate(letter(Bi(1)), x[2]))
        for i in range(2, g):
            x.append(conjugate(letter(Cij(2 * i - 2, 2 * i)), x[2 * i - 1]))
            x.append(conjugate(letter(Bi(i)), x[2 * i]))
    for k in range(max(2 * g, 3), N):
        x.append(conjugate(a(k), x[1]))
    return KernelFamily(tuple(x), letter(Cij(N, 1)))


# ------------------------------------------------------------ Wajnryb

def wajnryb_words(sig: SurfaceSignature) -> Dict[str, Word]:
    """Psi images of the auxiliary elements of relations (II) and (III)."""
    P = parse_word
    out: Dict[str, Word] = {}
    if sig.genus >= 2:
        out["theta"] = conjugate(P("b1 a2 b a1 a1 b a2 b1"), P("c1_2"))
    if sig.genus >= 3:
        t1, t2 = P("b a1 a2 b"), P("b1 a2 c2_4 b1")
        c12 = P("c1_2")
        omega = conjugate(P("a1' b' a2' b1'"), c12)
        sigma = conjugate(P("c2_4' b2'") * t2.inverse(), c12)
        phi = conjugate(P("b2 c2_4 b1 a2 b") * sigma, omega)
        m = conjugate(P("b1' a2' c2_4' b1'"), c12)
        out.update(t1=t1, t2=t2, omega=omega, sigma=sigma, phi=phi, m=m,
                   l=conjugate(P("b' a1' a2' b'"), m))
    return out


def wajnryb_relators(sig: SurfaceSignature) -> List[Equation]:
    """Relations (II) (g >= 2) and (III) (g >= 3) written over the twist generators."""
    P = parse_word
    w = wajnryb_words(sig)
    out = []
    if "theta" in w:
        out.append(Equation(P("a1 b a2") ** 4, P("c1_2") * w["theta"], RelationKind.DERIVED, "Wajnryb.II"))
    if "phi" in w:
        t1, t2, c12 = w["t1"], w["t2"], P("c1_2")
        lhs = P("a2 a1") * w["phi"] * P("c2_4")
        rhs = t1.inverse() * t2.inverse() * c12 * t2 * t1 * t2.inverse() * c12 * t2 * c12
        out.append(Equation(lhs, rhs, RelationKind.DERIVED, "Wajnryb.III"))
    return out


# -------------------------------------------------------- verification

def random_word(gens: Sequence[CurveId], max_len: int, rng: random.Random) -> Word:
    k = rng.randint(0, max_len)
    return Word(Letter(rng.choice(gens), rng.choice((1, -1))) for _ in range(k))


class _TargetProver:
    """Derivations of relation images inside the target presentation."""

    def __init__(self, tgt_pres: Presentation, tgt_config: CurveConfiguration, budget: int):
        from .rewrite.engine import Library, run_scripts
        from .rewrite.library import etoile_scripts

        self.lib = Library(tgt_pres, tgt_config)
        self.budget = budget
        # the star-lemma identities at index 1 carry E_{1,1,N} across
        run_scripts(self.lib, self._parse(etoile_scripts([(1, 1)], [(1, 1, 1)], [(1, 1)])))
        self.lemmas = [n for n in self.lib.proven if n.startswith("etoile.iii")]
        self.by_gen: Dict[CurveId, List[str]] = {}
        self.gens_of = {}
        self.known = set()
        for r in tgt_pres.relations:
            self.known.add((reduce(r.lhs), reduce(r.rhs)))
            self.known.add((reduce(r.rhs), reduce(r.lhs)))
            if r.kind is RelationKind.BRAID:
                continue
            self.gens_of[r.name] = set(r.generators())

    @staticmethod
    def _parse(text):
        from .rewrite.dsl import parse_scripts
        return parse_scripts(text)

    def derivable(self, lhs: Word, rhs: Word) -> bool:
        from .rewrite.engine import auto_braid_bridge

        lhs, rhs = reduce(lhs), reduce(rhs)
        if lhs == rhs or (lhs, rhs) in self.known:
            return True
        gens = set(lhs.generators()) | set(rhs.generators())
        using = [n for n, gs in self.gens_of.items() if gs <= gens] + self.lemmas
        return auto_braid_bridge(self.lib, lhs, rhs, self.budget, tuple(sorted(using))) is not None


def verify_gen_map(m: GenMap, source_config: Optional[CurveConfiguration] = None,
                   target_config: Optional[CurveConfiguration] = None, *, words: int = 100,
                   max_len: int = 20, seed: int = 0, derive: bool = True, budget: int = 20000) -> Report:
    """Check that m carries relations to relations.

    Entries: "oracle:NAME" (homology of the two image sides agree),
    "derive:NAME" (the image equation has a derivation in the target),
    "square:k" (P M_src(w) = M_tgt(m(w)) P on random word k).
    """
    src = source_config or build_configuration(m.source)
    tgt = target_config or build_configuration(m.target)
    src_pres = presentation(m.source, src)
    rep = Report(f"map {m.source} -> {m.target}")
    prover = _TargetProver(presentation(m.target, tgt), tgt, budget) if derive else None
    for eq in src_pres.relations:
        L, R = apply_gen_map(m, eq.lhs), apply_gen_map(m, eq.rhs)
        rep.results[f"oracle:{eq.name}"] = matrices_equal(evaluate(tgt, L), evaluate(tgt, R))
        if prover is not None:
            ok = prover.derivable(L, R)
            rep.results[f"derive:{eq.name}"] = ok
            if not ok:
                rep.details[f"derive:{eq.name}"] = f"{L} = {R}"
    if m.source.boundary_count >= 1 and m.target.rank == collapse_matrix(m.source).shape[0]:
        P = collapse_matrix(m.source)
        rng = random.Random(seed)
        gens = list(src_pres.generators)
        for k in range(words):
            w = random_word(gens, max_len, rng)
            lhs = P @ evaluate(src, w)
            rhs = evaluate(tgt, apply_gen_map(m, w)) @ P
            rep.results[f"square:{k}"] = matrices_equal(lhs, rhs)
            if not rep.results[f"square:{k}"]:
                rep.details[f"square:{k}"] = str(w)
    return rep
