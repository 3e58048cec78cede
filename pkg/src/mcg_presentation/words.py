"""Letters and words over the twist generators.

A word is an immutable tuple of Letters; nothing is reduced implicitly, so
positions in derivation scripts keep their meaning.
"""
from __future__ import annotations

import re
from typing import Iterable, NamedTuple

from .surface import CurveId, parse_curve


class Letter(NamedTuple):
    gen: CurveId
    exp: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.exp)

    def __str__(self):
        return self.gen.name + ("'" if self.exp < 0 else "")


class Word(tuple):
    """Sequence of Letters.  w * v concatenates, ~w inverts."""

    def __new__(cls, letters: Iterable = ()):
        items = []
        for x in letters:
            if isinstance(x, Letter):
                items.append(x)
            elif isinstance(x, CurveId):
                items.append(Letter(x, 1))
            else:
                gen, e = x
                if e not in (1, -1):
                    raise ValueError(f"exponent must be +1 or -1, got {e}")
                items.append(Letter(gen, e))
        return super().__new__(cls, items)

    def __mul__(self, other):
        if isinstance(other, int):
            return Word(tuple.__mul__(self, other))
        return Word(tuple.__add__(self, Word(other)))

    __add__ = __mul__

    def __rmul__(self, other):
        if isinstance(other, int):
            return Word(tuple.__mul__(self, other))
        return Word(other) * self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Word(tuple.__mul__(self, k))

    def __getitem__(self, item):
        r = tuple.__getitem__(self, item)
        return Word(r) if isinstance(item, slice) else r

    def inverse(self) -> "Word":
        return Word(l.inverse() for l in reversed(self))

    __invert__ = inverse

    def generators(self):
        return {l.gen for l in self}

    def __str__(self):
        return " ".join(str(l) for l in self) if self else "1"

    def __repr__(self):
        return f"Word({str(self)!r})"


EMPTY = Word()


def letter(gen: CurveId, exp: int = 1) -> Word:
    return Word([Letter(gen, exp)])


def reduce(w: Iterable) -> Word:
    """Free reduction (stack based, so one pass suffices)."""
    stack = []
    for l in Word(w):
        if stack and stack[-1].gen == l.gen and stack[-1].exp == -l.exp:
            stack.pop()
        else:
            stack.append(l)
    return Word(stack)


def is_reduced(w: Word) -> bool:
    return all(not (x.gen == y.gen and x.exp == -y.exp) for x, y in zip(w, w[1:]))


def conjugate(y, x) -> Word:
    """y(x) = y x y^-1, reduced."""
    y, x = Word(y), Word(x)
    return reduce(y * x * y.inverse())


_TOKEN = re.compile(r"^(b|b\d+|a\d+|c_?\d+_\d+)('*)$")


def parse_word(text: str) -> Word:
    """Whitespace separated tokens b, b1, a3, c2_4; a trailing ' inverts.

    "1" and the empty string are the empty word.
    """
    letters = []
    for tok in text.replace(",", " ").split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        exp = -1 if len(m.group(2)) % 2 else 1
        letters.append(Letter(parse_curve(m.group(1)), exp))
    return Word(letters)


W = parse_word


def exponent_sums(w: Word) -> dict:
    out = {}
    for l in w:
        out[l.gen] = out.get(l.gen, 0) + l.exp
    return out
