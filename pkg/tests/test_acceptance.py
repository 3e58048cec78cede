"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with
    pytest tests/test_acceptance.py -v
or as a script (python3 tests/test_acceptance.py) for just the eight lines.
"""
from __future__ import annotations

import random
import sys
import time
from math import comb

import numpy as np
import sympy

from mcg_presentation import (
    RelationKind, abelian_invariants, build_configuration, check_equation, check_presentation,
    g2_generator_map, kernel_generators, lantern_relations, make_signature, parse_word, presentation,
    presentation_from_json, smith_normal_form, star_lemma_identities, verify_gen_map,
)
from mcg_presentation.morphisms import apply_gen_map
from mcg_presentation.presentation import export
from mcg_presentation.rewrite import shipped_scripts
from mcg_presentation.rewrite.engine import Library, run_scripts, verify_library
from mcg_presentation.surface import configuration_from_json

GRID = [(g, n) for g in range(1, 5) for n in range(0, 4) if 2 * g + n - 2 >= 1]
LINES = {}


def emit(k: int, ok: bool, what: str, seconds: float, limit=None):
    tail = f"{seconds:.2f}s" + (f" (limit {limit}s)" if limit else "")
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {what}  [{tail}]"
    LINES[k] = line
    if __name__ == "__main__":
        print(line, flush=True)


def _count_oracle(g, n):
    N = 2 * g + n - 2
    return 1 + (g - 1) + N + N * (N - 1), g - 1, 3 * (comb(N + 2, 3) - N)


def test_criterion_1_shape():
    t = time.perf_counter()
    checks = []
    for gn in [(2, 1), (2, 0)]:
        p = presentation(make_signature(*gn))
        got = (len(p.generators), len(p.by_kind(RelationKind.HANDLE)), len(p.by_kind(RelationKind.STAR)))
        checks.append(got == _count_oracle(*gn))
    checks.append(_count_oracle(2, 1) == (11, 1, 21) and _count_oracle(2, 0)[::2] == (6, 6))
    p = presentation(make_signature(1, 1))
    checks.append([c.name for c in p.generators] == ["b", "a1"]
                  and [(r.lhs, r.rhs) for r in p.relations] == [(parse_word("a1 b a1"), parse_word("b a1 b"))])
    dt = time.perf_counter() - t
    ok = all(checks) and dt < 1
    emit(1, ok, "presentation shape (2,1): 11/1/21, (2,0): 6/6, (1,1) exact", dt, 1)
    assert ok


def test_criterion_2_oracle_consistency():
    t = time.perf_counter()
    total, bad = 0, []
    for gn in GRID:
        rep = check_presentation(build_configuration(make_signature(*gn)))
        total += len(rep.results)
        bad += [f"{gn}:{x}" for x in rep.failures]
    dt = time.perf_counter() - t
    ok = not bad and dt < 30
    emit(2, ok, f"(A),(T),(E) under the homology oracle: {total - len(bad)}/{total} over {len(GRID)} signatures", dt, 30)
    assert ok, bad[:5]


def test_criterion_3_derived_identities():
    t = time.perf_counter()
    total, bad = 0, []
    for gn in GRID:
        sig = make_signature(*gn)
        cfg = build_configuration(sig)
        for eq in lantern_relations(sig) + star_lemma_identities(sig):
            total += 1
            if not check_equation(cfg, eq):
                bad.append(f"{gn}:{eq.name}")
    dt = time.perf_counter() - t
    ok = not bad and dt < 30
    emit(3, ok, f"lanterns and star-lemma identities: {total - len(bad)}/{total}", dt, 30)
    assert ok, bad[:5]


EXPECTED_H1 = {(1, 1): (1, ()), (2, 0): (0, (10,)), (2, 1): (0, (10,)), (2, 2): (0, (10,)),
               (3, 0): (0, ()), (3, 1): (0, ()), (4, 0): (0, ())}


def test_criterion_4_abelianization():
    t = time.perf_counter()
    bad = []
    for gn, want in EXPECTED_H1.items():
        inv = abelian_invariants(presentation(make_signature(*gn)))
        if (inv.free_rank, inv.torsion) != want:
            bad.append(f"{gn}: {inv}")
    dt = time.perf_counter() - t
    ok = not bad
    emit(4, ok, "abelianization (1,1)=Z, (2,0..2)=Z/10, (3,0),(3,1),(4,0)=0", dt)
    assert ok, bad


def test_criterion_5_script_replay():
    t = time.perf_counter()
    sig = make_signature(3, 1)
    lib = Library(presentation(sig))
    scripts = shipped_scripts(sig)
    res = run_scripts(lib, scripts)
    failed = [r.script for r in res if not r.ok]
    oracle = verify_library(lib.config, lib)
    names = {s.name for s in scripts}
    required = ["etoile.i.a[1,2]", "etoile.ii[1,1,2]", "etoile.iii.a[1,2]", "etoile.iii.b[1,2]", "L_{1,2,4}",
                "lemma.ak[1,3]", "psi.theta", "wajnryb.h.a1", "wajnryb.h.c12", "wajnryb.h.a2", "wajnryb.h.b",
                "wajnryb.h.m", "kernel.case1.bbar", "kernel.case2.a1", "kernel.case2.b"]
    missing = [x for x in required if x not in names]
    dt = time.perf_counter() - t
    ok = not failed and oracle.ok and not missing and len(res) == len(scripts) and dt < 10
    emit(5, ok, f"script replay at (3,1): {len(res) - len(failed)}/{len(res)} checked, "
                f"{len(oracle.results) - len(oracle.failures)} claims pass the oracle", dt, 10)
    assert ok, (failed[:5], oracle.failures[:5], missing)


def test_criterion_6_g2():
    t = time.perf_counter()
    bad, checked = [], 0
    for gn in GRID:
        sig = make_signature(*gn)
        if sig.n < 1 or sig.N < 2:
            continue
        m = g2_generator_map(sig)
        rep = verify_gen_map(m, words=100, max_len=20, seed=gn[0] * 10 + gn[1])
        checked += 1
        bad += [f"{gn}:{x}" for x in rep.failures]
        bad += [f"{gn}:kernel" for w in kernel_generators(sig).all() if apply_gen_map(m, w)]
    dt = time.perf_counter() - t
    ok = not bad and dt < 10
    emit(6, ok, f"g2 relation images, commuting square, kernel on {checked} signatures", dt, 10)
    assert ok, bad[:5]


def _det(M):
    return sympy.Matrix(M.tolist()).det(method="bareiss")


def test_criterion_7_snf():
    t = time.perf_counter()
    rng = random.Random(20261016)
    bad = 0
    for _ in range(1000):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        U, D, V = smith_normal_form(M)
        prod = U.dot(np.array(M, dtype=object)).dot(V)
        diag = [D[i, i] for i in range(min(m, n))]
        off = any(D[i, j] != 0 for i in range(m) for j in range(n) if i != j)
        chain = all((a == 0 and b == 0) or (a != 0 and b % a == 0) for a, b in zip(diag, diag[1:]))
        if not np.array_equal(prod, D) or off or not chain or abs(_det(U)) != 1 or abs(_det(V)) != 1:
            bad += 1
    dt = time.perf_counter() - t
    ok = bad == 0 and dt < 10
    emit(7, ok, f"SNF on 1000 random matrices up to 8x8: {1000 - bad}/1000", dt, 10)
    assert ok


def test_criterion_8_roundtrip():
    t = time.perf_counter()
    bad = []
    for gn in GRID:
        sig = make_signature(*gn)
        cfg = build_configuration(sig)
        for handles in (True, False):
            p = presentation(sig, include_handles=handles)
            if presentation_from_json(export(p, "json")) != p:
                bad.append(f"{gn}:pres:{handles}")
        if configuration_from_json(cfg.to_json()) != cfg:
            bad.append(f"{gn}:config")
    dt = time.perf_counter() - t
    ok = not bad
    emit(8, ok, f"json round-trip of presentations and configurations on {len(GRID)} signatures", dt)
    assert ok, bad


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for f in tests:
        try:
            f()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
