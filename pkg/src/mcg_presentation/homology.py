"""Homology shadow of the twist generators.

Each twist acts on H_1 of the surface by the transvection x -> x + <x,c> c.
Equal words have equal matrices, so the representation is a necessary
condition for a relation to hold.  It is far from sufficient: separating
curves and boundary curves act trivially.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

import numpy as np

from .surface import CurveConfiguration, CurveId
from .words import Word

# past this size int64 products could overflow, so switch to python ints
_SAFE = 2 ** 40


def transvection_from_class(vec, pairing, exp: int = 1) -> np.ndarray:
    """Matrix of x -> x + exp * <x, c> c, acting on column vectors."""
    c = np.asarray(vec, dtype=np.int64)
    om = np.asarray(pairing, dtype=np.int64)
    row = om @ c               # <x, c> = x^T om c = row . x
    return np.eye(len(c), dtype=np.int64) + exp * np.outer(c, row)


def transvection(config: CurveConfiguration, c: CurveId, exp: int = 1) -> np.ndarray:
    return transvection_from_class(config.homology[c], config.pairing_matrix, exp)


class _Rank1:
    """Per-configuration cache of (c, row) so that M T_c = M + (M c) row."""

    def __init__(self, config: CurveConfiguration):
        self.config = config
        self.vecs = {}
        om = config.pairing_matrix
        for cur, v in config.homology.items():
            self.vecs[cur] = (np.asarray(v, dtype=np.int64), om @ v)


_CACHE: Dict[int, _Rank1] = {}


def _rank1(config: CurveConfiguration) -> _Rank1:
    r = _CACHE.get(id(config))
    if r is None or r.config is not config:
        r = _Rank1(config)
        _CACHE[id(config)] = r
    return r


def evaluate(config: CurveConfiguration, w: Iterable) -> np.ndarray:
    """Matrix of a word; the rightmost letter acts first."""
    data = _rank1(config).vecs
    M = np.eye(config.signature.rank, dtype=np.int64)
    big = False
    for l in Word(w):
        c, row = data[l.gen]
        if big:
            c, row = c.astype(object), row.astype(object)
        M = M + np.outer(M @ c, row) * l.exp
        if not big and np.abs(M).max() > _SAFE:
            M = M.astype(object)
            big = True
    return M


def matrices_equal(A, B) -> bool:
    return bool(np.array_equal(np.asarray(A, dtype=object), np.asarray(B, dtype=object)))


def check_equation(config: CurveConfiguration, eq) -> bool:
    return matrices_equal(evaluate(config, eq.lhs), evaluate(config, eq.rhs))


def check_words(config: CurveConfiguration, u, v) -> bool:
    return matrices_equal(evaluate(config, u), evaluate(config, v))


@dataclass
class Report:
    """Per-item pass/fail results."""
    title: str
    results: Dict[str, bool] = field(default_factory=dict)
    details: Dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    @property
    def failures(self) -> List[str]:
        return [k for k, v in self.results.items() if not v]

    def __bool__(self):
        return self.ok

    def merge(self, other: "Report") -> "Report":
        self.results.update(other.results)
        self.details.update(other.details)
        return self

    def to_dict(self) -> dict:
        return {"format": "mcg-report/1", "title": self.title, "ok": self.ok,
                "passed": sum(self.results.values()), "total": len(self.results),
                "failures": self.failures,
                "results": self.results, "details": self.details}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def summary(self) -> str:
        return f"{self.title}: {sum(self.results.values())}/{len(self.results)} passed"


def check_relations(config: CurveConfiguration, relations, title: str = "relations") -> Report:
    rep = Report(title)
    for r in relations:
        rep.results[r.name] = check_equation(config, r)
    return rep


def check_presentation(config: CurveConfiguration, include_handles: bool = True) -> Report:
    from .presentation import presentation
    pres = presentation(config.signature, config, include_handles)
    return check_relations(config, pres.relations, f"presentation {config.signature}")
