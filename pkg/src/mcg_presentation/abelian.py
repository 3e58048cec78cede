"""Exponent-sum matrices and Smith normal form over the integers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .presentation import Presentation
from .words import exponent_sums


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __str__(self):
        parts = ["Z"] * min(self.free_rank, 1)
        if self.free_rank > 1:
            parts = [f"Z^{self.free_rank}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


def relation_matrix(pres: Presentation) -> np.ndarray:
    """Row r, column c: exponent sum of generator c in relator lhs rhs^-1 of relation r."""
    col = {c: p for p, c in enumerate(pres.generators)}
    M = np.zeros((len(pres.relations), len(pres.generators)), dtype=object)
    for r, eq in enumerate(pres.relations):
        for gen, e in exponent_sums(eq.relator()).items():
            M[r, col[gen]] += e
    return M


def _identity(n):
    I = np.zeros((n, n), dtype=object)
    for i in range(n):
        I[i, i] = 1
    return I


def smith_normal_form(M) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (U, D, V) with U M V = D, U and V unimodular, d1 | d2 | ...

    Plain elimination with the smallest nonzero entry (in absolute value) as
    pivot.  Python integers throughout, so nothing can overflow.
    """
    A = np.array(M, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    A = np.array([[int(x) for x in row] for row in A], dtype=object).reshape(A.shape)
    m, n = A.shape
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        if i != j:
            A[[i, j], :] = A[[j, i], :]
            U[[i, j], :] = U[[j, i], :]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]

    t = 0
    while t < min(m, n):
        sub = A[t:, t:]
        nz = [(abs(sub[i, j]), i, j) for i in range(m - t) for j in range(n - t) if sub[i, j] != 0]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(t, t + pi)
        swap_cols(t, t + pj)
        while True:
            p = A[t, t]
            done = True
            for i in range(t + 1, m):
                q = A[i, t] // p
                if q:
                    A[i, :] -= q * A[t, :]
                    U[i, :] -= q * U[t, :]
            for j in range(t + 1, n):
                q = A[t, j] // p
                if q:
                    A[:, j] -= q * A[:, t]
                    V[:, j] -= q * V[:, t]
            # remainders smaller than the pivot become the new pivot
            rest = [(abs(A[i, t]), i, t) for i in range(t + 1, m) if A[i, t] != 0]
            rest += [(abs(A[t, j]), t, j) for j in range(t + 1, n) if A[t, j] != 0]
            if rest:
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility: fold any row not divisible by the pivot into row t
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i, j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                A[t, :] += A[bad, :]
                U[t, :] += U[bad, :]
                continue
            break
        if A[t, t] < 0:
            A[t, :] *= -1
            U[t, :] *= -1
        t += 1
    return U, A, V


def invariant_factors(M) -> List[int]:
    _, D, _ = smith_normal_form(M)
    k = min(D.shape) if D.size else 0
    return [int(D[i, i]) for i in range(k) if D[i, i] != 0]


def abelian_invariants(pres: Presentation) -> AbelianInvariants:
    M = relation_matrix(pres)
    ngen = len(pres.generators)
    if M.shape[0] == 0:
        return AbelianInvariants(ngen, ())
    d = invariant_factors(M)
    return AbelianInvariants(ngen - len(d), tuple(x for x in d if x > 1))
