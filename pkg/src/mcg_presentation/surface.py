"""Combinatorial model of the curve family on a surface of signature (g, n).

The surface is built from a torus with N = 2g+n-2 holes.  The curves
alpha_1..alpha_N are parallel and cut the torus into N annuli, each annulus
holding one hole; hole l lies between alpha_l and alpha_{l+1} (cyclically).
beta crosses every alpha once.  Holes 2i-1 and 2i are joined by a cylinder
for 1 <= i <= g-1, which produces the extra genus; the curve beta_i runs from
hole 2i-1 to hole 2i across alpha_{2i} and closes up through that cylinder.
The remaining holes 2g-1..N are the boundary components.  gamma_{i,j}
encircles the holes i, i+1, ..., j-1 (indices mod N).

Everything else in this module (intersection classes and homology classes)
is read off that picture.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np


class DegenerateSignature(ValueError):
    """Raised for (g, n) with g < 1 or N = 2g+n-2 < 1."""


@dataclass(frozen=True, order=True)
class SurfaceSignature:
    genus: int
    boundary_count: int

    @property
    def leg_count(self) -> int:
        return 2 * self.genus + self.boundary_count - 2

    # short aliases, used all over the place
    @property
    def g(self) -> int:
        return self.genus

    @property
    def n(self) -> int:
        return self.boundary_count

    @property
    def N(self) -> int:
        return self.leg_count

    @property
    def rank(self) -> int:
        """Rank of H_1 of the surface."""
        return 2 * self.genus + max(self.boundary_count - 1, 0)

    def __str__(self):
        return f"({self.genus},{self.boundary_count})"


def make_signature(g: int, n: int) -> SurfaceSignature:
    g, n = int(g), int(n)
    if g < 1:
        raise DegenerateSignature(f"genus must be at least 1, got g={g}")
    if n < 0:
        raise DegenerateSignature(f"boundary count must be nonnegative, got n={n}")
    if 2 * g + n - 2 < 1:
        raise DegenerateSignature(
            f"signature ({g},{n}) has N = 2g+n-2 = {2 * g + n - 2}; no a/c generators exist")
    return SurfaceSignature(g, n)


def cyclic_index(sig: SurfaceSignature, m: int) -> int:
    """Representative of m modulo N in {1..N}."""
    return (m - 1) % sig.leg_count + 1


# ---------------------------------------------------------------- curves

_KIND_ORDER = {"b": 0, "bi": 1, "a": 2, "c": 3}


@dataclass(frozen=True)
class CurveId:
    """One curve of the family, hence one twist generator.

    kind is "b" (beta), "bi" (beta_i), "a" (alpha_i) or "c" (gamma_{i,j}).
    """
    kind: str
    i: int = 0
    j: int = 0

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.kind == "c" and self.i == self.j:
            raise ValueError("gamma_{i,j} needs i != j")

    @property
    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.i, self.j)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    @property
    def name(self) -> str:
        if self.kind == "b":
            return "b"
        if self.kind == "bi":
            return f"b{self.i}"
        if self.kind == "a":
            return f"a{self.i}"
        return f"c{self.i}_{self.j}"

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"CurveId({self.name})"


def B() -> CurveId:
    return CurveId("b")


def Bi(i: int) -> CurveId:
    return CurveId("bi", i)


def Ai(i: int) -> CurveId:
    return CurveId("a", i)


def Cij(i: int, j: int) -> CurveId:
    return CurveId("c", i, j)


def parse_curve(token: str) -> CurveId:
    """Parse a generator name: b, b1, a3, c2_4 (c_2_4 is accepted too)."""
    t = token.strip()
    try:
        if t == "b":
            return B()
        if t.startswith("c"):
            body = t[1:].lstrip("_")
            i, j = body.split("_")
            return Cij(int(i), int(j))
        if t.startswith("b"):
            return Bi(int(t[1:]))
        if t.startswith("a"):
            return Ai(int(t[1:]))
    except ValueError:
        pass
    raise ValueError(f"cannot parse generator name {token!r}")


def curve_in_signature(sig: SurfaceSignature, c: CurveId) -> bool:
    N = sig.leg_count
    if c.kind == "b":
        return True
    if c.kind == "bi":
        return 1 <= c.i <= sig.genus - 1
    if c.kind == "a":
        return 1 <= c.i <= N
    return 1 <= c.i <= N and 1 <= c.j <= N and c.i != c.j


def enumerate_generators(sig: SurfaceSignature) -> List[CurveId]:
    N = sig.leg_count
    gens = [B()]
    gens += [Bi(i) for i in range(1, sig.genus)]
    gens += [Ai(i) for i in range(1, N + 1)]
    gens += [Cij(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if i != j]
    return gens


def boundary_curve(sig: SurfaceSignature, i: int) -> Optional[CurveId]:
    """delta_i = gamma_{2g-2+i, 2g-1+i}, indices cyclic.

    None when N = 1, where the formula gives c_{1,1} = 1.
    """
    g = sig.genus
    i, j = cyclic_index(sig, 2 * g - 2 + i), cyclic_index(sig, 2 * g - 1 + i)
    return None if i == j else Cij(i, j)


def wajnryb_subset(sig: SurfaceSignature) -> List[CurveId]:
    g, n = sig.genus, sig.boundary_count
    out = [Ai(1), B()]
    if g >= 2:
        out += [Ai(2), Bi(1)]
        for i in range(2, g):
            out += [Cij(2 * i - 2, 2 * i), Bi(i)]
        out.append(Cij(1, 2))
    out += [Ai(k) for k in range(2 * g, 2 * g + n - 1)]
    out += [boundary_curve(sig, i) for i in range(1, n)]
    # for g = 1 the alpha segment starts at a2 and a1 is already listed
    seen, uniq = set(), []
    for c in out:
        if c not in seen:
            seen.add(c)
            uniq.append(c)
    return uniq


# ---------------------------------------------------------- good triples

def is_good_triple(sig: SurfaceSignature, i: int, j: int, k: int) -> bool:
    if i == j == k:
        return False
    return (i <= j <= k) or (j <= k <= i) or (k <= i <= j)


def enumerate_good_triples(sig: SurfaceSignature) -> List[Tuple[int, int, int]]:
    r = range(1, sig.leg_count + 1)
    return [t for t in product(r, r, r) if is_good_triple(sig, *t)]


# ------------------------------------------------------ intersection data

class IntersectionClass(enum.Enum):
    ZERO = "Zero"
    ONE = "One"
    MANY = "Many"

    def __str__(self):
        return self.value


def hole_set(sig: SurfaceSignature, i: int, j: int) -> frozenset:
    """Holes enclosed by gamma_{i,j}: i, i+1, ..., j-1 (cyclic)."""
    N = sig.leg_count
    out, l = [], i
    while l != j:
        out.append(l)
        l = l % N + 1
    return frozenset(out)


def _geometric_class(sig: SurfaceSignature, x: CurveId, y: CurveId) -> IntersectionClass:
    Z, O, M = IntersectionClass.ZERO, IntersectionClass.ONE, IntersectionClass.MANY
    if _KIND_ORDER[x.kind] > _KIND_ORDER[y.kind]:
        x, y = y, x
    if x.kind == "b":
        return O if y.kind == "a" else Z
    if x.kind == "bi":
        if y.kind == "bi":
            return Z
        if y.kind == "a":
            return O if y.i == 2 * x.i else Z
        s = hole_set(sig, y.i, y.j)
        return O if ((2 * x.i - 1) in s) != ((2 * x.i) in s) else Z
    if x.kind == "a":
        if y.kind == "a":
            return Z
        # alpha_k cuts gamma_{i,j} iff it separates two of its holes
        s = hole_set(sig, y.i, y.j)
        return M if (x.i in s and x.i != y.i) else Z
    s, t = hole_set(sig, x.i, x.j), hole_set(sig, y.i, y.j)
    if not (s & t) or s <= t or t <= s:
        return Z
    return M


# ------------------------------------------------------------- homology

def _basis_labels(sig: SurfaceSignature) -> List[str]:
    labels = ["beta", "alpha1"]
    for i in range(1, sig.genus):
        labels += [f"e{i}", f"f{i}"]
    labels += [f"d{i}" for i in range(1, sig.boundary_count)]
    return labels


def _hole_class(sig: SurfaceSignature, l: int) -> np.ndarray:
    g, n = sig.genus, sig.boundary_count
    v = np.zeros(sig.rank, dtype=np.int64)
    if l <= 2 * g - 2:
        h = (l + 1) // 2
        v[2 * h] = 1 if l % 2 else -1
    else:
        i = l - (2 * g - 2)
        if i < n:
            v[2 * g + i - 1] = 1
        else:
            # the last boundary is minus the sum of the others
            v[2 * g:] = -1
    return v


def _curve_class(sig: SurfaceSignature, c: CurveId) -> np.ndarray:
    v = np.zeros(sig.rank, dtype=np.int64)
    if c.kind == "b":
        v[0] = 1
    elif c.kind == "bi":
        v[2 * c.i + 1] = 1
    elif c.kind == "a":
        v[1] = 1
        for l in range(1, c.i):
            v += _hole_class(sig, l)
    else:
        for l in hole_set(sig, c.i, c.j):
            v += _hole_class(sig, l)
    return v


def _pairing(sig: SurfaceSignature) -> np.ndarray:
    r = sig.rank
    om = np.zeros((r, r), dtype=np.int64)
    om[1, 0], om[0, 1] = 1, -1          # <alpha1, beta> = 1
    for i in range(1, sig.genus):
        om[2 * i, 2 * i + 1], om[2 * i + 1, 2 * i] = 1, -1   # <e_i, f_i> = 1
    return om


# ---------------------------------------------------------- configuration

def _pair_key(x: CurveId, y: CurveId):
    return (x, y) if x.sort_key <= y.sort_key else (y, x)


@dataclass(frozen=True)
class CurveConfiguration:
    signature: SurfaceSignature
    pairing_matrix: np.ndarray
    homology: Dict[CurveId, np.ndarray]
    # sparse: only pairs whose class is not Zero
    intersection_table: Dict[Tuple[CurveId, CurveId], IntersectionClass] = field(default_factory=dict)

    def intersection_class(self, x: CurveId, y: CurveId) -> IntersectionClass:
        return self.intersection_table.get(_pair_key(x, y), IntersectionClass.ZERO)

    def pairing(self, u, v) -> int:
        """<u, v> for curves or raw vectors."""
        if isinstance(u, CurveId):
            u = self.homology[u]
        if isinstance(v, CurveId):
            v = self.homology[v]
        return int(np.asarray(u) @ self.pairing_matrix @ np.asarray(v))

    @property
    def generators(self) -> List[CurveId]:
        return enumerate_generators(self.signature)

    # the configuration is an immutable value; copies are how faults get injected
    def with_class(self, x: CurveId, y: CurveId, cls: IntersectionClass) -> "CurveConfiguration":
        table = dict(self.intersection_table)
        key = _pair_key(x, y)
        if cls is IntersectionClass.ZERO:
            table.pop(key, None)
        else:
            table[key] = cls
        return CurveConfiguration(self.signature, self.pairing_matrix, self.homology, table)

    def with_homology(self, c: CurveId, vec) -> "CurveConfiguration":
        hom = dict(self.homology)
        hom[c] = np.asarray(vec, dtype=np.int64)
        return CurveConfiguration(self.signature, self.pairing_matrix, hom, self.intersection_table)

    def __eq__(self, other):
        if not isinstance(other, CurveConfiguration):
            return NotImplemented
        return (self.signature == other.signature
                and np.array_equal(self.pairing_matrix, other.pairing_matrix)
                and self.homology.keys() == other.homology.keys()
                and all(np.array_equal(v, other.homology[k]) for k, v in self.homology.items())
                and self.intersection_table == other.intersection_table)

    __hash__ = None

    def to_json(self) -> str:
        return json.dumps(configuration_to_dict(self), indent=1)


_CONFIG_CACHE: Dict[SurfaceSignature, CurveConfiguration] = {}


def build_configuration(sig: SurfaceSignature) -> CurveConfiguration:
    """The shipped configuration asset for sig (cached)."""
    if sig in _CONFIG_CACHE:
        return _CONFIG_CACHE[sig]
    gens = enumerate_generators(sig)
    homology = {c: _curve_class(sig, c) for c in gens}
    for v in homology.values():
        v.setflags(write=False)
    table = {}
    for a_idx, x in enumerate(gens):
        for y in gens[a_idx + 1:]:
            cls = _geometric_class(sig, x, y)
            if cls is not IntersectionClass.ZERO:
                table[(x, y)] = cls
    om = _pairing(sig)
    om.setflags(write=False)
    cfg = CurveConfiguration(sig, om, homology, table)
    _CONFIG_CACHE[sig] = cfg
    return cfg


def configuration(g: int, n: int) -> CurveConfiguration:
    return build_configuration(make_signature(g, n))


def intersection_class(config: CurveConfiguration, x: CurveId, y: CurveId) -> IntersectionClass:
    return config.intersection_class(x, y)


# ------------------------------------------------------------ validation

@dataclass
class ValidationReport:
    signature: SurfaceSignature
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_configuration(config: CurveConfiguration, check_relations: bool = True) -> ValidationReport:
    sig = config.signature
    rep = ValidationReport(sig)
    om = config.pairing_matrix
    if not np.array_equal(om, -om.T):
        rep.violations.append("pairing matrix is not skew-symmetric")
    gens = enumerate_generators(sig)
    for c in gens:
        if c not in config.homology:
            rep.violations.append(f"no homology class for {c}")
    if rep.violations:
        return rep

    Z, O = IntersectionClass.ZERO, IntersectionClass.ONE
    for a_idx, x in enumerate(gens):
        for y in gens[a_idx + 1:]:
            cls = config.intersection_class(x, y)
            p = config.pairing(x, y)
            if cls is O and abs(p) != 1:
                rep.violations.append(f"class One but pairing {p} for ({x},{y})")
            elif cls is Z and p != 0:
                rep.violations.append(f"class Zero but pairing {p} for ({x},{y})")

    for i in range(1, sig.boundary_count + 1):
        d = boundary_curve(sig, i)
        if d is None:
            continue
        for y in gens:
            if y != d and config.intersection_class(d, y) is not Z:
                rep.violations.append(f"boundary {d} meets {y}")
        vec = config.homology[d]
        if np.any(om @ vec):
            rep.violations.append(f"boundary class of {d} pairs nontrivially")

    chain = wajnryb_subset(sig)
    # the chain part is the prefix before the extra alphas and boundaries
    g = sig.genus
    chain_len = 2 if g == 1 else 2 * g + 1
    # a1 b a2 b1 c24 b2 ... b_{g-1} with c12 hanging off b1 (it meets only b1)
    links = set()
    core = chain[:chain_len - (0 if g == 1 else 1)]
    for u, v in zip(core, core[1:]):
        links.add(_pair_key(u, v))
    if g >= 2:
        links.add(_pair_key(Cij(1, 2), Bi(1)))
    for k in range(2 * g, 2 * g + sig.boundary_count - 1):
        # extra alphas hang off b like a1 does
        links.add(_pair_key(Ai(k), B()))
    for a_idx, u in enumerate(chain):
        for v in chain[a_idx + 1:]:
            want = O if _pair_key(u, v) in links else Z
            got = config.intersection_class(u, v)
            if got is not want:
                rep.violations.append(f"chain pair ({u},{v}) has class {got}, expected {want}")

    if check_relations:
        from .homology import check_presentation
        res = check_presentation(config)
        for name, ok in res.results.items():
            if not ok:
                rep.violations.append(f"relation {name} fails the homology oracle")
    return rep


# ------------------------------------------------------------------ json

def configuration_to_dict(config: CurveConfiguration) -> dict:
    sig = config.signature
    gens = enumerate_generators(sig)
    return {
        "format": "mcg-configuration/1",
        "signature": {"g": sig.genus, "n": sig.boundary_count, "N": sig.leg_count},
        "basis": _basis_labels(sig),
        "pairing": [[int(x) for x in row] for row in config.pairing_matrix],
        "homology": {c.name: [int(x) for x in config.homology[c]] for c in gens if c in config.homology},
        "intersections": [[x.name, y.name, cls.value]
                          for (x, y), cls in sorted(config.intersection_table.items(),
                                                    key=lambda kv: (kv[0][0].sort_key, kv[0][1].sort_key))],
    }


def configuration_from_dict(d: dict) -> CurveConfiguration:
    sig = make_signature(d["signature"]["g"], d["signature"]["n"])
    om = np.array(d["pairing"], dtype=np.int64).reshape(sig.rank, sig.rank)
    hom = {parse_curve(k): np.array(v, dtype=np.int64) for k, v in d["homology"].items()}
    table = {}
    for x, y, cls in d["intersections"]:
        table[_pair_key(parse_curve(x), parse_curve(y))] = IntersectionClass(cls)
    return CurveConfiguration(sig, om, hom, table)


def configuration_from_json(text: str) -> CurveConfiguration:
    return configuration_from_dict(json.loads(text))
