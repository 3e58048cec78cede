"""The relation set of the presentation and a few derived relation schemas."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .surface import (
    Ai, B, Cij, CurveConfiguration, CurveId, IntersectionClass, SurfaceSignature,
    build_configuration, cyclic_index, enumerate_generators, enumerate_good_triples,
    is_good_triple, make_signature, parse_curve,
)
from .words import EMPTY, Letter, Word, letter, parse_word, reduce


class RelationKind(enum.Enum):
    HANDLE = "Handle"
    BRAID = "Braid"
    STAR = "Star"
    DERIVED = "Derived"


class BadTriple(ValueError):
    pass


class UnsupportedFormat(ValueError):
    pass


@dataclass(frozen=True)
class Equation:
    lhs: Word
    rhs: Word
    kind: RelationKind = RelationKind.DERIVED
    name: str = ""

    def relator(self) -> Word:
        return self.lhs * self.rhs.inverse()

    def generators(self):
        return self.lhs.generators() | self.rhs.generators()

    def same_as(self, other: "Equation") -> bool:
        """Equal as an equation of words, either way round."""
        return ((self.lhs, self.rhs) == (other.lhs, other.rhs)
                or (self.lhs, self.rhs) == (other.rhs, other.lhs))

    def __str__(self):
        return f"{self.name}: {self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    signature: SurfaceSignature
    generators: Tuple[CurveId, ...]
    relations: Tuple[Equation, ...]
    include_handles: bool = True

    def relation(self, name: str) -> Equation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)

    def by_kind(self, kind: RelationKind) -> List[Equation]:
        return [r for r in self.relations if r.kind is kind]

    def __str__(self):
        return export(self, "plain")


def _c(sig, i, j) -> Word:
    """c_{i,j} as a word, with c_{l,l} = 1."""
    i, j = cyclic_index(sig, i), cyclic_index(sig, j)
    return EMPTY if i == j else letter(Cij(i, j))


def _a(sig, i) -> Word:
    return letter(Ai(cyclic_index(sig, i)))


_b = letter(B())


def handle_relations(sig: SurfaceSignature) -> List[Equation]:
    return [Equation(_c(sig, 2 * i, 2 * i + 1), _c(sig, 2 * i - 1, 2 * i), RelationKind.HANDLE, f"A_{i}")
            for i in range(1, sig.genus)]


def braid_relations(sig: SurfaceSignature, config: Optional[CurveConfiguration] = None) -> List[Equation]:
    config = config or build_configuration(sig)
    gens = enumerate_generators(sig)
    out = []
    for p, x in enumerate(gens):
        X = letter(x)
        for y in gens[p + 1:]:
            cls = config.intersection_class(x, y)
            if cls is IntersectionClass.MANY:
                continue
            Y = letter(y)
            name = f"T_{{{x.name},{y.name}}}"
            if cls is IntersectionClass.ZERO:
                out.append(Equation(X * Y, Y * X, RelationKind.BRAID, name))
            else:
                # written later-generator first: (1,1) gives a1 b a1 = b a1 b
                out.append(Equation(Y * X * Y, X * Y * X, RelationKind.BRAID, name))
    return out


def star_word(sig, i, j, k) -> Word:
    return (_a(sig, i) * _a(sig, j) * _a(sig, k) * _b) ** 3


def star_relation(sig: SurfaceSignature, i: int, j: int, k: int) -> Equation:
    lhs = _c(sig, i, j) * _c(sig, j, k) * _c(sig, k, i)
    return Equation(lhs, star_word(sig, i, j, k), RelationKind.STAR, f"E_{{{i},{j},{k}}}")


def star_relations(sig: SurfaceSignature) -> List[Equation]:
    return [star_relation(sig, *t) for t in enumerate_good_triples(sig)]


def handle_substitution(sig: SurfaceSignature) -> Dict[CurveId, CurveId]:
    """c_{2i,2i+1} -> c_{2i-1,2i}, the elimination that makes (A) redundant."""
    out = {}
    for i in range(1, sig.genus):
        src = Cij(cyclic_index(sig, 2 * i), cyclic_index(sig, 2 * i + 1))
        out[src] = Cij(cyclic_index(sig, 2 * i - 1), cyclic_index(sig, 2 * i))
    return out


def substitute(w: Word, table: Dict[CurveId, CurveId]) -> Word:
    return Word(Letter(table.get(l.gen, l.gen), l.exp) for l in w)


def presentation(sig: SurfaceSignature, config: Optional[CurveConfiguration] = None,
                 include_handles: bool = True) -> Presentation:
    config = config or build_configuration(sig)
    gens = enumerate_generators(sig)
    rels = braid_relations(sig, config) + star_relations(sig)
    if include_handles:
        rels = handle_relations(sig) + rels
    else:
        sub = handle_substitution(sig)
        gens = [c for c in gens if c not in sub]
        new = []
        for r in rels:
            lhs, rhs = substitute(r.lhs, sub), substitute(r.rhs, sub)
            if lhs != rhs:
                new.append(Equation(lhs, rhs, r.kind, r.name))
        rels = new
    return Presentation(sig, tuple(gens), tuple(rels), include_handles)


# --------------------------------------------------------- derived schemas

def star_lemma_words(i: int, j: int, k: int, sig: Optional[SurfaceSignature] = None):
    """X1 = a_i a_j, X2 = b X1 b, X3 = a_k X2 a_k."""
    a = (lambda m: _a(sig, m)) if sig else (lambda m: letter(Ai(m)))
    x1 = a(i) * a(j)
    x2 = _b * x1 * _b
    x3 = a(k) * x2 * a(k)
    return x1, x2, x3


def lantern_x(sig, i, k) -> Word:
    return _b * _a(sig, i) * _a(sig, k) * _b


def lantern_relation(sig: SurfaceSignature, i: int, j: int, k: int) -> Equation:
    """a_i c_ij c_jk a_k = c_ik a_j X a_j X^-1 with X = b a_i a_k b."""
    N = sig.leg_count
    if not all(1 <= t <= N for t in (i, j, k)) or not is_good_triple(sig, i, j, k):
        raise BadTriple(f"({i},{j},{k}) is not a good triple for N={N}")
    X = lantern_x(sig, i, k)
    lhs = _a(sig, i) * _c(sig, i, j) * _c(sig, j, k) * _a(sig, k)
    rhs = _c(sig, i, k) * _a(sig, j) * X * _a(sig, j) * X.inverse()
    return Equation(lhs, rhs, RelationKind.DERIVED, f"L_{{{i},{j},{k}}}")


def lantern_relations(sig: SurfaceSignature) -> List[Equation]:
    return [lantern_relation(sig, *t) for t in enumerate_good_triples(sig)]


def star_lemma_identities(sig: SurfaceSignature) -> List[Equation]:
    """(a_i a_j a_k b)^3 = X1 X2 X3 and (a_i a_j b)^4 = (a_i b a_j)^4 over all index triples."""
    N = sig.leg_count
    out = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            lhs4 = (_a(sig, i) * _a(sig, j) * _b) ** 4
            rhs4 = (_a(sig, i) * _b * _a(sig, j)) ** 4
            out.append(Equation(lhs4, rhs4, RelationKind.DERIVED, f"etoile.iv[{i},{j}]"))
            for k in range(1, N + 1):
                x1, x2, x3 = star_lemma_words(i, j, k, sig)
                out.append(Equation(star_word(sig, i, j, k), x1 * x2 * x3, RelationKind.DERIVED,
                                    f"etoile.X[{i},{j},{k}]"))
    return out


# ----------------------------------------------------------------- export

def _tok(l: Letter) -> str:
    return str(l)


def _algebra_relator(w: Word) -> str:
    if not w:
        return "One(F)"
    return "*".join(l.gen.name + ("^-1" if l.exp < 0 else "") for l in w)


def presentation_to_dict(pres: Presentation) -> dict:
    sig = pres.signature
    return {
        "format": "mcg-presentation/1",
        "signature": {"g": sig.genus, "n": sig.boundary_count, "N": sig.leg_count},
        "include_handles": pres.include_handles,
        "generators": [c.name for c in pres.generators],
        "relations": [{"name": r.name, "kind": r.kind.value,
                       "lhs": [_tok(l) for l in r.lhs], "rhs": [_tok(l) for l in r.rhs]}
                      for r in pres.relations],
    }


def presentation_from_dict(d: dict) -> Presentation:
    sig = make_signature(d["signature"]["g"], d["signature"]["n"])
    gens = tuple(parse_curve(x) for x in d["generators"])
    rels = tuple(Equation(parse_word(" ".join(r["lhs"])), parse_word(" ".join(r["rhs"])),
                          RelationKind(r["kind"]), r["name"]) for r in d["relations"])
    return Presentation(sig, gens, rels, bool(d.get("include_handles", True)))


def presentation_from_json(text: str) -> Presentation:
    return presentation_from_dict(json.loads(text))


FORMATS = ("plain", "gap-style", "magma-style", "json")


def export(pres: Presentation, format: str = "plain") -> str:
    names = [c.name for c in pres.generators]
    if format == "plain":
        lines = [f"# presentation for signature {pres.signature}"]
        lines += [f"gen {x}" for x in names]
        lines += [f"rel {r.name} [{r.kind.value}]: {r.lhs} = {r.rhs}" for r in pres.relations]
        return "\n".join(lines) + "\n"
    if format == "gap-style":
        lines = ["F := FreeGroup(" + ", ".join(f'"{x}"' for x in names) + ");;"]
        lines += [f"{x} := F.{p + 1};;" for p, x in enumerate(names)]
        rels = [_algebra_relator(r.relator()) for r in pres.relations]
        lines.append("rels := [\n  " + ",\n  ".join(rels) + "\n];;")
        lines.append("G := F / rels;;")
        return "\n".join(lines) + "\n"
    if format == "magma-style":
        rels = [_algebra_relator(r.relator()).replace("One(F)", "1") for r in pres.relations]
        gl = ",".join(names)
        return f"G<{gl}> := Group<{gl} |\n  " + ",\n  ".join(rels) + "\n>;\n"
    if format == "json":
        return json.dumps(presentation_to_dict(pres), indent=1) + "\n"
    raise UnsupportedFormat(f"unknown format {format!r}; choose from {', '.join(FORMATS)}")
