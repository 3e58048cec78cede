"""Replay of equational derivations inside the free group modulo relations.

A derivation starts from claim.lhs and transforms the current word one step
at a time.  Each step is either a free-group identity (cancel/insert) or an
instance of a known equation, so the image of the word in G_{g,n} never
changes.  A script succeeds when the final word freely reduces to claim.rhs.
"""
from __future__ import annotations

import ast
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..homology import Report, check_equation
from ..presentation import Equation, Presentation, RelationKind
from ..surface import CurveConfiguration, IntersectionClass, SurfaceSignature, build_configuration
from ..words import EMPTY, Letter, Word, reduce
from .search import BridgeSearch, Codec, invert, relator_pieces

DEFAULT_BUDGET = 100_000


# ----------------------------------------------------------------- errors

class ScriptError(Exception):
    pass


class StepMismatch(ScriptError):
    def __init__(self, index: int, expected, actual, message: str = ""):
        self.index, self.expected, self.actual = index, expected, actual
        super().__init__(f"step {index}: {message or 'mismatch'}\n  expected: {expected}\n  actual:   {actual}")


class UnresolvedName(ScriptError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unresolved equation name {name!r}")


class BudgetExceeded(ScriptError):
    def __init__(self, index: int, budget: int, start=None, target=None):
        self.index, self.budget = index, budget
        super().__init__(f"step {index}: no braid bridge within budget {budget}\n  from: {start}\n  to:   {target}")


class ScriptSyntaxError(ScriptError):
    pass


# ------------------------------------------------------------------ steps

@dataclass(frozen=True)
class FreeCancel:
    position: int
    expected: Optional[Word] = None


@dataclass(frozen=True)
class FreeInsert:
    """Insert w w^-1 at position (w is usually one letter)."""
    position: int
    word: Word
    expected: Optional[Word] = None


@dataclass(frozen=True)
class ApplyEquation:
    """Replace an occurrence of one side of an equation by the other.

    Without length, forward means lhs -> rhs and backward rhs -> lhs.  With
    length L the step uses a piece of the cyclic relator lhs rhs^-1 (its
    inverse when backward) rotated left by rotation: the first L letters u
    are replaced by the inverse v of the remaining ones, which is valid since
    u v^-1 = 1.  position None asks the checker to look for an occurrence
    giving the expected word.
    """
    name: str
    position: Optional[int] = None
    direction: str = "fwd"
    length: Optional[int] = None
    rotation: int = 0
    expected: Optional[Word] = None


@dataclass(frozen=True)
class AutoBraid:
    """Bridge to the expected word with braid moves (and pieces of `using`)."""
    budget: int = DEFAULT_BUDGET
    using: Tuple[str, ...] = ()
    expected: Optional[Word] = None


Step = Union[FreeCancel, FreeInsert, ApplyEquation, AutoBraid]


@dataclass(frozen=True)
class DerivationScript:
    name: str
    claim: Equation
    steps: Tuple[Step, ...] = ()
    constraint: str = "True"
    dependencies: Tuple[str, ...] = ()
    note: str = ""

    def admits(self, sig: SurfaceSignature) -> bool:
        return eval_constraint(self.constraint, sig)


@dataclass
class CheckResult:
    script: str
    ok: bool
    final: Optional[Word] = None
    error: Optional[ScriptError] = None
    primitive_steps: List[Step] = field(default_factory=list)

    def __bool__(self):
        return self.ok


# ------------------------------------------------------------- constraints

_ALLOWED = (ast.Expression, ast.Compare, ast.BoolOp, ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name,
            ast.Load, ast.And, ast.Or, ast.Not, ast.Add, ast.Sub, ast.Mult, ast.Mod, ast.USub,
            ast.Eq, ast.NotEq, ast.Lt, ast.LtE, ast.Gt, ast.GtE)


def eval_constraint(expr: str, sig: SurfaceSignature) -> bool:
    """Evaluate a predicate over g, n, N such as "N >= 4 and n == 1"."""
    tree = ast.parse(expr.strip() or "True", mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ScriptSyntaxError(f"constraint {expr!r}: {type(node).__name__} not allowed")
        if isinstance(node, ast.Name) and node.id not in ("g", "n", "N", "True", "False"):
            raise ScriptSyntaxError(f"constraint {expr!r}: unknown name {node.id}")
    env = {"g": sig.genus, "n": sig.boundary_count, "N": sig.leg_count, "True": True, "False": False}
    return bool(eval(compile(tree, "<constraint>", "eval"), {"__builtins__": {}}, env))


# ----------------------------------------------------------------- library

class Library:
    """Relations of a presentation plus the equations proven so far."""

    def __init__(self, pres: Presentation, config: Optional[CurveConfiguration] = None):
        self.pres = pres
        self.config = config or build_configuration(pres.signature)
        self.relations: Dict[str, Equation] = {r.name: r for r in pres.relations}
        self.proven: Dict[str, Equation] = {}
        self._codec = None
        self._searches: Dict[Tuple[str, ...], BridgeSearch] = {}
        self._pieces: Dict[tuple, tuple] = {}
        self._rules: Dict[str, tuple] = {}

    def __contains__(self, name):
        return name in self.relations or name in self.proven

    def lookup(self, name: str) -> Equation:
        if name in self.proven:
            return self.proven[name]
        if name in self.relations:
            return self.relations[name]
        raise UnresolvedName(name)

    def add(self, eq: Equation) -> None:
        old = self.proven.get(eq.name)
        if old is not None:
            if (old.lhs, old.rhs) != (eq.lhs, eq.rhs):
                raise ScriptError(f"{eq.name} already proven with a different statement")
            return
        self.proven[eq.name] = eq

    def equations(self) -> List[Equation]:
        return list(self.proven.values())

    # -- machinery shared by steps
    @property
    def codec(self) -> Codec:
        if self._codec is None:
            self._codec = Codec(self.config, self.pres.generators)
        return self._codec

    def commutation_name(self, x, y) -> str:
        a, b = sorted((x, y), key=lambda c: c.sort_key)
        name = f"T_{{{a.name},{b.name}}}"
        if name not in self.relations:
            raise UnresolvedName(name)
        return name

    def search(self, using: Sequence[str] = ()) -> BridgeSearch:
        key = tuple(sorted(set(using)))
        s = self._searches.get(key)
        if s is None:
            rules = []
            for r in self.pres.relations:
                if r.kind is RelationKind.BRAID and len(r.lhs) == 3:
                    rules += self._rules_of(r)
            for name in key:
                rules += self._rules_of(self.lookup(name))
            s = BridgeSearch(self.codec, rules)
            self._searches[key] = s
        return s

    def _rules_of(self, eq: Equation):
        hit = self._rules.get(eq.name)
        if hit is None or hit[0] != (eq.lhs, eq.rhs):
            hit = ((eq.lhs, eq.rhs), relator_pieces(self.codec.encode(eq.relator()), eq.name))
            self._rules[eq.name] = hit
        return hit[1]

    def find_piece(self, name: str, u: Word, v: Word) -> Tuple[str, int, int]:
        """(direction, rotation, length) of a piece of `name` that maps u to v."""
        key = (name, u, v)
        hit = self._pieces.get(key)
        if hit is None:
            R = self.lookup(name).relator()
            L = len(u)
            for direction in ("fwd", "bwd"):
                for rot in range(max(len(R), 1)):
                    pu, pv = _piece(R, direction, rot, L)
                    if pu == u and pv == v:
                        hit = (direction, rot, L)
                        break
                if hit:
                    break
            if hit is None:
                raise ScriptError(f"{u} -> {v} is not a piece of {name}")
            self._pieces[key] = hit
        return hit


def _piece(R: Word, direction: str, rotation: int, length: int) -> Tuple[Word, Word]:
    if direction == "bwd":
        R = R.inverse()
    n = len(R)
    if n:
        rotation %= n
    C = R[rotation:] * R[:rotation]
    if not 0 <= length <= n:
        raise ScriptError(f"piece length {length} out of range for relator of length {n}")
    return C[:length], C[length:].inverse()


def step_sides(lib: Library, st: ApplyEquation) -> Tuple[Word, Word]:
    eq = lib.lookup(st.name)
    if st.direction not in ("fwd", "bwd"):
        raise ScriptError(f"direction must be fwd or bwd, got {st.direction!r}")
    if st.length is None:
        return (eq.lhs, eq.rhs) if st.direction == "fwd" else (eq.rhs, eq.lhs)
    return _piece(eq.relator(), st.direction, st.rotation, st.length)


# ----------------------------------------------------------------- checker

def _occurrences(w: Word, u: Word):
    n, m = len(w), len(u)
    for p in range(n - m + 1):
        if w[p:p + m] == u:
            yield p


def _apply_at(w: Word, p: int, u: Word, v: Word) -> Optional[Word]:
    if p < 0 or w[p:p + len(u)] != u:
        return None
    return w[:p] * v * w[p + len(u):]


def _search_apply(lib: Library, w: Word, st: ApplyEquation, index: int) -> Tuple[Word, ApplyEquation]:
    """Find where (and which way) an equation applies to give st.expected."""
    target = reduce(st.expected)
    eq = lib.lookup(st.name)
    if st.length is not None:
        u, v = step_sides(lib, st)
        cands = [(st.direction, None, u, v)]
    else:
        cands = [("fwd", None, eq.lhs, eq.rhs), ("bwd", None, eq.rhs, eq.lhs)]
        R = eq.relator()
        for direction in ("fwd", "bwd"):
            for rot in range(len(R)):
                for L in range(len(R), 0, -1):
                    u, v = _piece(R, direction, rot, L)
                    cands.append((direction, (rot, L), u, v))
    positions = [st.position] if st.position is not None else None
    for direction, piece, u, v in cands:
        for p in (positions if positions is not None else _occurrences(w, u)):
            new = _apply_at(w, p, u, v)
            if new is not None and reduce(new) == target:
                if piece is None and st.length is None:
                    found = replace(st, position=p, direction=direction)
                elif piece is None:
                    found = replace(st, position=p)
                else:
                    found = replace(st, position=p, direction=direction, rotation=piece[0], length=piece[1])
                return new, found
    raise StepMismatch(index, st.expected, w, f"{st.name} does not apply to give the expected word")


def _moves_to_steps(lib: Library, search: BridgeSearch, start: Word, moves) -> List[Step]:
    codec = lib.codec
    cur = list(codec.encode(start))
    out: List[Step] = []
    for mv in moves:
        kind, p = mv[0], mv[1]
        if kind == "swap":
            x, y = codec.decode(cur[p:p + 2])
            name = lib.commutation_name(x.gen, y.gen)
            d, r, L = lib.find_piece(name, Word([x, y]), Word([y, x]))
            out.append(ApplyEquation(name, p, d, L, r))
            cur[p], cur[p + 1] = cur[p + 1], cur[p]
        elif kind == "cancel":
            out.append(FreeCancel(p))
            del cur[p:p + 2]
        elif kind == "insert":
            out.append(FreeInsert(p, codec.decode([mv[2]])))
            cur[p:p] = [mv[2], mv[2] ^ 1]
        else:
            rule = search.rules[mv[2]]
            if kind == "piece":
                u, v = rule.u, rule.v
                out.append(ApplyEquation(rule.name, p, rule.direction, rule.length, rule.rotation))
            else:
                u, v = rule.v, rule.u
                d, r, L = lib.find_piece(rule.name, codec.decode(u), codec.decode(v))
                out.append(ApplyEquation(rule.name, p, d, L, r))
            cur[p:p + len(u)] = list(v)
    return out


def auto_braid_bridge(pres_or_lib, src: Word, dst: Word, budget: int = DEFAULT_BUDGET,
                      using: Sequence[str] = ()) -> Optional[List[Step]]:
    """Explicit steps turning src into dst by braid moves, or None within budget."""
    lib = pres_or_lib if isinstance(pres_or_lib, Library) else Library(pres_or_lib)
    if src == dst:
        return []
    search = lib.search(using)
    codec = lib.codec
    moves = search.search(codec.encode(src), codec.encode(dst), budget)
    if moves is None:
        return None
    return _moves_to_steps(lib, search, src, moves)


def apply_step(lib: Library, w: Word, st: Step, index: int = 0) -> Tuple[Word, List[Step]]:
    """Apply one step; returns the new word and the primitive steps it expanded to."""
    if isinstance(st, FreeCancel):
        p = st.position
        if not (0 <= p < len(w) - 1) or w[p].gen != w[p + 1].gen or w[p].exp != -w[p + 1].exp:
            raise StepMismatch(index, f"inverse pair at {p}", w, "nothing to cancel")
        new = w[:p] * w[p + 2:]
        prim = [FreeCancel(p)]
    elif isinstance(st, FreeInsert):
        p = st.position
        if not 0 <= p <= len(w):
            raise StepMismatch(index, f"position in 0..{len(w)}", w, "insert position out of range")
        new = w[:p] * st.word * st.word.inverse() * w[p:]
        prim = [FreeInsert(p, st.word)]
    elif isinstance(st, ApplyEquation):
        if st.position is None:
            if st.expected is None:
                raise StepMismatch(index, "an expected word", w, "apply without position needs => word")
            new, found = _search_apply(lib, w, st, index)
        else:
            u, v = step_sides(lib, st)
            new = _apply_at(w, st.position, u, v)
            if new is None:
                raise StepMismatch(index, f"{u} at position {st.position}", w,
                                   f"{st.name} does not match")
            found = st
        prim = [replace(found, expected=None)]
    elif isinstance(st, AutoBraid):
        if st.expected is None:
            raise StepMismatch(index, "an expected word", w, "auto needs => word")
        steps = auto_braid_bridge(lib, w, st.expected, st.budget, st.using)
        if steps is None:
            raise BudgetExceeded(index, st.budget, w, st.expected)
        new = w
        for k, s in enumerate(steps):
            new, _ = apply_step(lib, new, s, index)
        prim = steps
    else:
        raise ScriptError(f"unknown step {st!r}")
    if st.expected is not None:
        if reduce(new) != reduce(st.expected):
            raise StepMismatch(index, st.expected, new)
        new = st.expected
    return new, prim


def check_script(pres_or_lib, library_or_script=None, script: Optional[DerivationScript] = None) -> CheckResult:
    """check_script(pres, library, script) or check_script(library, script)."""
    if script is None:
        lib, script = pres_or_lib, library_or_script
    else:
        lib = library_or_script if library_or_script is not None else Library(pres_or_lib)
    if not isinstance(lib, Library):
        raise TypeError("expected a Library")
    res = CheckResult(script.name, False)
    try:
        for dep in script.dependencies:
            lib.lookup(dep)
        w = script.claim.lhs
        for k, st in enumerate(script.steps):
            w, prim = apply_step(lib, w, st, k)
            res.primitive_steps += prim
        res.final = w
        if reduce(w) != reduce(script.claim.rhs):
            raise StepMismatch(len(script.steps), script.claim.rhs, w, "final word differs from the claim")
    except ScriptError as e:
        res.error = e
        return res
    res.ok = True
    lib.add(Equation(script.claim.lhs, script.claim.rhs, RelationKind.DERIVED, script.name))
    return res


def splice(script: DerivationScript, result: CheckResult) -> DerivationScript:
    """The same derivation written with primitive steps only."""
    return replace(script, steps=tuple(result.primitive_steps))


def run_scripts(lib: Library, scripts: Iterable[DerivationScript]) -> List[CheckResult]:
    out = []
    for s in scripts:
        if not s.admits(lib.pres.signature):
            continue
        out.append(check_script(lib, s))
    return out


def verify_library(config: CurveConfiguration, library) -> Report:
    """Cross-check every proven equation against the homology oracle."""
    eqs = library.equations() if isinstance(library, Library) else list(library)
    rep = Report(f"library {config.signature}")
    for eq in eqs:
        rep.results[eq.name] = check_equation(config, eq)
    return rep
