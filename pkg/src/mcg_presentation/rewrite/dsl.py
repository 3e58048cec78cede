"""Text format for derivation scripts (grammar version mcg-script/1).

    # comment
    script NAME
    constraint EXPR            predicate over g, n, N (default True)
    depends NAME ...           scripts that must be proven first
    let MACRO = WORD           MACRO starts with an upper-case letter
    claim WORD = WORD
    STEP ...
    end

Steps, one per line, each optionally followed by "=> WORD" (the expected
result, compared up to free reduction; the written word becomes the current
word, so later positions refer to it):

    cancel P
    insert P WORD              inserts WORD WORD^-1 at P
    apply NAME [at P] [fwd|bwd] [len L] [rot R]
    auto [budget B] [using NAME ...]
    = WORD [by NAME ...]       shorthand for: auto using NAME ... => WORD

Words: generator tokens (b, b1, a3, c2_4), macros, "1" for the empty word,
groups "( ... )", suffix "'" (inverse) and "^k" on tokens, macros and groups,
and "[ Y | X ]" for the conjugate Y X Y^-1.  Positions are 0-based letter
indices.
"""
from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from ..presentation import Equation, RelationKind
from ..words import EMPTY, Word, parse_word
from .engine import (
    DEFAULT_BUDGET, ApplyEquation, AutoBraid, DerivationScript, FreeCancel, FreeInsert,
    ScriptSyntaxError, Step,
)

GRAMMAR_VERSION = "mcg-script/1"

_TOK = re.compile(r"\s*(\(|\)|\[|\]|\||\^-?\d+|'|[A-Za-z_][A-Za-z0-9_]*|1)")
_GEN = re.compile(r"^(b|b\d+|a\d+|c_?\d+_\d+)$")


class _WordParser:
    def __init__(self, text: str, macros: Dict[str, Word]):
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOK.match(text, pos)
            if not m:
                raise ScriptSyntaxError(f"cannot read word at {text[pos:]!r}")
            self.toks.append(m.group(1))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0
        self.macros = macros

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise ScriptSyntaxError(f"expected {want or 'a token'}, got {t!r}")
        self.i += 1
        return t

    def sequence(self, stop=()) -> Word:
        out = EMPTY
        while self.peek() is not None and self.peek() not in stop:
            out = out * self.factor()
        return out

    def factor(self) -> Word:
        t = self.take()
        if t == "(":
            w = self.sequence(stop=(")",))
            self.take(")")
        elif t == "[":
            y = self.sequence(stop=("|",))
            self.take("|")
            x = self.sequence(stop=("]",))
            self.take("]")
            w = y * x * y.inverse()
        elif t == "1":
            w = EMPTY
        elif t in self.macros:
            w = self.macros[t]
        elif _GEN.match(t):
            w = parse_word(t)
        else:
            raise ScriptSyntaxError(f"unknown word token {t!r}")
        while self.peek() is not None and (self.peek() == "'" or self.peek().startswith("^")):
            s = self.take()
            w = w.inverse() if s == "'" else w ** int(s[1:])
        return w


def parse_script_word(text: str, macros: Optional[Dict[str, Word]] = None) -> Word:
    p = _WordParser(text, macros or {})
    w = p.sequence()
    if p.peek() is not None:
        raise ScriptSyntaxError(f"unexpected {p.peek()!r} in word {text!r}")
    return w


def _split_expected(rest: str) -> Tuple[str, Optional[str]]:
    if "=>" in rest:
        a, b = rest.split("=>", 1)
        return a.strip(), b.strip()
    return rest.strip(), None


def _parse_step(line: str, macros, lineno: int) -> Step:
    if line.startswith("="):
        body = line[1:].strip()
        using: Tuple[str, ...] = ()
        m = re.search(r"\bby\b", body)
        if m:
            using = tuple(body[m.end():].split())
            body = body[:m.start()]
        return AutoBraid(DEFAULT_BUDGET, using, parse_script_word(body, macros))
    head, exp_text = _split_expected(line)
    expected = parse_script_word(exp_text, macros) if exp_text is not None else None
    parts = head.split()
    kw = parts[0]
    try:
        if kw == "cancel":
            return FreeCancel(int(parts[1]), expected)
        if kw == "insert":
            return FreeInsert(int(parts[1]), parse_script_word(" ".join(parts[2:]), macros), expected)
        if kw == "apply":
            name = parts[1]
            pos, direction, length, rot = None, "fwd", None, 0
            k = 2
            while k < len(parts):
                if parts[k] == "at":
                    pos = int(parts[k + 1]); k += 2
                elif parts[k] in ("fwd", "bwd"):
                    direction = parts[k]; k += 1
                elif parts[k] == "len":
                    length = int(parts[k + 1]); k += 2
                elif parts[k] == "rot":
                    rot = int(parts[k + 1]); k += 2
                else:
                    raise ScriptSyntaxError(f"line {lineno}: unknown apply option {parts[k]!r}")
            return ApplyEquation(name, pos, direction, length, rot, expected)
        if kw == "auto":
            budget, using = DEFAULT_BUDGET, []
            k = 1
            while k < len(parts):
                if parts[k] == "budget":
                    budget = int(parts[k + 1]); k += 2
                elif parts[k] == "using":
                    using = parts[k + 1:]; break
                else:
                    raise ScriptSyntaxError(f"line {lineno}: unknown auto option {parts[k]!r}")
            return AutoBraid(budget, tuple(using), expected)
    except (IndexError, ValueError) as e:
        raise ScriptSyntaxError(f"line {lineno}: cannot parse step {line!r}: {e}") from None
    raise ScriptSyntaxError(f"line {lineno}: unknown step {kw!r}")


def parse_scripts(text: str) -> List[DerivationScript]:
    scripts = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if cur is None:
            if not line.startswith("script "):
                raise ScriptSyntaxError(f"line {lineno}: expected 'script NAME', got {line!r}")
            cur = {"name": line.split(None, 1)[1].strip(), "constraint": "True", "deps": [],
                   "macros": {}, "claim": None, "steps": [], "note": ""}
            continue
        kw = line.split(None, 1)[0]
        rest = line[len(kw):].strip()
        if kw == "end":
            if cur["claim"] is None:
                raise ScriptSyntaxError(f"line {lineno}: script {cur['name']} has no claim")
            scripts.append(DerivationScript(cur["name"], cur["claim"], tuple(cur["steps"]), cur["constraint"],
                                            tuple(cur["deps"]), cur["note"]))
            cur = None
        elif kw == "constraint":
            cur["constraint"] = rest
        elif kw == "depends":
            cur["deps"] += rest.split()
        elif kw == "note":
            cur["note"] = (cur["note"] + " " + rest).strip()
        elif kw == "let":
            name, _, body = rest.partition("=")
            name = name.strip()
            if not re.match(r"^[A-Z][A-Za-z0-9_]*$", name):
                raise ScriptSyntaxError(f"line {lineno}: macro names start with an upper-case letter")
            cur["macros"][name] = parse_script_word(body, cur["macros"])
        elif kw == "claim":
            if rest.count("=") != 1:
                raise ScriptSyntaxError(f"line {lineno}: claim needs exactly one '='")
            a, b = rest.split("=")
            cur["claim"] = Equation(parse_script_word(a, cur["macros"]), parse_script_word(b, cur["macros"]),
                                    RelationKind.DERIVED, cur["name"])
        else:
            if cur["claim"] is None:
                raise ScriptSyntaxError(f"line {lineno}: step before claim")
            cur["steps"].append(_parse_step(line, cur["macros"], lineno))
    if cur is not None:
        raise ScriptSyntaxError(f"script {cur['name']} is missing 'end'")
    return scripts


def parse_script(text: str) -> DerivationScript:
    out = parse_scripts(text)
    if len(out) != 1:
        raise ScriptSyntaxError(f"expected one script, found {len(out)}")
    return out[0]


def _w(w: Word) -> str:
    return str(w) if w else "1"


def format_step(st: Step) -> str:
    tail = f" => {_w(st.expected)}" if st.expected is not None else ""
    if isinstance(st, FreeCancel):
        return f"cancel {st.position}{tail}"
    if isinstance(st, FreeInsert):
        return f"insert {st.position} {_w(st.word)}{tail}"
    if isinstance(st, ApplyEquation):
        s = f"apply {st.name}"
        if st.position is not None:
            s += f" at {st.position}"
        s += f" {st.direction}"
        if st.length is not None:
            s += f" len {st.length} rot {st.rotation}"
        return s + tail
    if isinstance(st, AutoBraid):
        s = "auto"
        if st.budget != DEFAULT_BUDGET:
            s += f" budget {st.budget}"
        if st.using:
            s += " using " + " ".join(st.using)
        return s + tail
    raise TypeError(st)


def format_script(s: DerivationScript) -> str:
    lines = [f"script {s.name}"]
    if s.note:
        lines.append(f"note {s.note}")
    if s.constraint != "True":
        lines.append(f"constraint {s.constraint}")
    if s.dependencies:
        lines.append("depends " + " ".join(s.dependencies))
    lines.append(f"claim {_w(s.claim.lhs)} = {_w(s.claim.rhs)}")
    lines += ["  " + format_step(st) for st in s.steps]
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_scripts(scripts) -> str:
    return f"# {GRAMMAR_VERSION}\n\n" + "\n".join(format_script(s) for s in scripts)
