"""Breadth-first bridging between words using braid moves.

Words are handled as tuples of small ints (letter codes) and compared in a
normal form: free cancellation up to commutation, then the lexicographically
least ordering of the resulting trace.  Disjoint-curve commutations are thus
free; the search itself only spends moves on pieces of relators (braid
relators, plus any extra equations the caller allows).

Every move found here is replayed later as explicit primitive steps
(adjacent swaps, cancellations, relator pieces), so the search does not
need to be trusted.
"""
from __future__ import annotations

import heapq
from bisect import bisect_left, bisect_right
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..surface import CurveConfiguration, CurveId, IntersectionClass, enumerate_generators
from ..words import Letter, Word

Codes = Tuple[int, ...]


class Codec:
    """Letter <-> int coding plus the commutation graph of a configuration."""

    def __init__(self, config: CurveConfiguration, generators: Optional[Sequence[CurveId]] = None):
        self.config = config
        self.gens = list(generators) if generators is not None else enumerate_generators(config.signature)
        self.index = {c: k for k, c in enumerate(self.gens)}
        n = len(self.gens)
        # dep[k]: bitmask of generators that do not commute with generator k (k included)
        self.dep = [0] * n
        for a in range(n):
            m = 1 << a
            for b in range(n):
                if b != a and config.intersection_class(self.gens[a], self.gens[b]) is not IntersectionClass.ZERO:
                    m |= 1 << b
            self.dep[a] = m

    def encode(self, w) -> Codes:
        return tuple(2 * self.index[l.gen] + (0 if l.exp > 0 else 1) for l in w)

    def decode(self, codes) -> Word:
        return Word(Letter(self.gens[c >> 1], -1 if c & 1 else 1) for c in codes)

    def commute(self, c1: int, c2: int) -> bool:
        return not (self.dep[c1 >> 1] >> (c2 >> 1)) & 1


def invert(codes) -> Codes:
    return tuple(c ^ 1 for c in reversed(codes))


# ------------------------------------------------------------------ moves
# A primitive move on a code word, in the form the checker understands:
#   ("swap", p)              letters p, p+1 commute and are exchanged
#   ("cancel", p)            letters p, p+1 are inverse and are removed
#   ("insert", p, code)      code, code^1 are inserted at p
#   ("piece", p, rule_id)    rule u -> v applied at p (u occupies p..p+|u|-1)

def _apply(w: list, mv) -> None:
    kind = mv[0]
    p = mv[1]
    if kind == "swap":
        w[p], w[p + 1] = w[p + 1], w[p]
    elif kind == "cancel":
        del w[p:p + 2]
    elif kind == "insert":
        w[p:p] = [mv[2], mv[2] ^ 1]
    else:
        raise ValueError(kind)


def _bubble(w: list, order: List[int], out: list) -> None:
    """Permute w into [w[i] for i in order] by adjacent swaps, recording them."""
    perm = list(order)
    n = len(perm)
    # insertion sort on target ranks; each exchanged pair changes relative order
    rank = [0] * n
    for r, i in enumerate(perm):
        rank[i] = r
    cur = list(range(n))
    for i in range(1, n):
        j = i
        while j > 0 and rank[cur[j - 1]] > rank[cur[j]]:
            cur[j - 1], cur[j] = cur[j], cur[j - 1]
            out.append(("swap", j - 1))
            w[j - 1], w[j] = w[j], w[j - 1]
            j -= 1


class Normalizer:
    def __init__(self, codec: Codec):
        self.codec = codec
        self.dep = codec.dep
        self._cache: Dict[Codes, Codes] = {}

    def _find_cancel(self, w):
        dep = self.dep
        n = len(w)
        for i in range(n):
            gi = w[i] >> 1
            di = dep[gi]
            for j in range(i + 1, n):
                gj = w[j] >> 1
                if gj == gi:
                    if w[j] == w[i] ^ 1:
                        return i, j
                    break
                if (di >> gj) & 1:
                    break
        return None

    def _lex_order(self, w) -> List[int]:
        dep = self.dep
        n = len(w)
        indeg = [0] * n
        succ = [[] for _ in range(n)]
        for i in range(n):
            di = dep[w[i] >> 1]
            for j in range(i + 1, n):
                if (di >> (w[j] >> 1)) & 1:
                    succ[i].append(j)
                    indeg[j] += 1
        heap = [(w[i], i) for i in range(n) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, i = heapq.heappop(heap)
            order.append(i)
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, (w[j], j))
        return order

    def normal(self, w) -> Codes:
        key = tuple(w)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        cur = list(w)
        while True:
            pr = self._find_cancel(cur)
            if pr is None:
                break
            i, j = pr
            del cur[j]
            del cur[i]
        order = self._lex_order(cur)
        res = tuple(cur[i] for i in order)
        if len(self._cache) > 200000:
            self._cache.clear()
        self._cache[key] = res
        return res

    def normal_with_moves(self, w) -> Tuple[Codes, list]:
        cur = list(w)
        moves = []
        while True:
            pr = self._find_cancel(cur)
            if pr is None:
                break
            i, j = pr
            for q in range(j, i + 1, -1):
                moves.append(("swap", q - 1))
                cur[q - 1], cur[q] = cur[q], cur[q - 1]
            moves.append(("cancel", i))
            del cur[i:i + 2]
        _bubble(cur, self._lex_order(cur), moves)
        return tuple(cur), moves


@dataclass(frozen=True)
class Rule:
    u: Codes
    v: Codes
    name: str        # equation name in the environment
    direction: str   # "fwd" or "bwd"
    rotation: int
    length: int


def relator_pieces(codes: Codes, name: str, min_len: Optional[int] = None) -> List[Rule]:
    """All pieces u -> v of the cyclic relator with |u| >= |v| (or |u| >= min_len)."""
    out = []
    n = len(codes)
    if n == 0:
        return out
    for direction, R in (("fwd", tuple(codes)), ("bwd", invert(codes))):
        for r in range(n):
            C = R[r:] + R[:r]
            lo = (n + 1) // 2 if min_len is None else min_len
            for L in range(max(lo, 1), n + 1):
                out.append(Rule(C[:L], invert(C[L:]), name, direction, r, L))
    return out


class BridgeSearch:
    """Bidirectional BFS between normal forms."""

    def __init__(self, codec: Codec, rules: Sequence[Rule]):
        self.codec = codec
        self.norm = Normalizer(codec)
        seen = set()
        self.rules: List[Rule] = []
        for r in rules:
            key = (r.u, r.v)
            if key in seen or r.u == r.v:
                continue
            seen.add(key)
            self.rules.append(r)
        dep = codec.dep
        self.pred = []
        self.need = []        # (code, multiplicity) of each u, for a cheap pre-check
        self.by_first = defaultdict(list)
        for k, r in enumerate(self.rules):
            # pred masks are built on first use; most rules never get that far
            self.pred.append(None)
            cnt: Dict[int, int] = {}
            for x in r.u:
                cnt[x] = cnt.get(x, 0) + 1
            self.need.append(tuple(cnt.items()))
            used, firsts = 0, {}
            for m, x in enumerate(r.u):
                if not dep[x >> 1] & used and x not in firsts:
                    firsts[x] = m
                used |= 1 << (x >> 1)
            for x, m in firsts.items():
                self.by_first[x].append((k, m))

    def _pred(self, k: int) -> List[int]:
        """pred[m]: bitmask of earlier positions of u whose letters do not commute with u[m]."""
        pm = self.pred[k]
        if pm is None:
            dep = self.codec.dep
            pm = []
            at: Dict[int, int] = {}     # generator -> positions seen so far
            for m, x in enumerate(self.rules[k].u):
                mask = 0
                d = dep[x >> 1]
                for h, bits in at.items():
                    if d >> h & 1:
                        mask |= bits
                pm.append(mask)
                at[x >> 1] = at.get(x >> 1, 0) | 1 << m
            self.pred[k] = pm
        return pm

    # -- one move
    def _arrangement(self, w: Codes, match: Sequence[int]):
        """Order of positions bringing the matched letters together (in the
        order given by match, which lists them as they occur in u), or None."""
        srt = sorted(match)
        dep = self.codec.dep
        p, q = srt[0], srt[-1]
        S = set(srt)
        left_mask = 0
        D = set()
        for t in range(p, q + 1):
            g = w[t] >> 1
            if t in S:
                left_mask |= 1 << g
            elif dep[g] & left_mask:
                D.add(t)
                left_mask |= 1 << g
        right_mask = 0
        for t in range(q, p - 1, -1):
            g = w[t] >> 1
            if t in S:
                right_mask |= 1 << g
            elif dep[g] & right_mask:
                if t in D:
                    return None
                right_mask |= 1 << g
        between = [t for t in range(p, q + 1) if t not in S]
        Lp = [t for t in between if t not in D]
        Rp = [t for t in between if t in D]
        return Lp + list(match) + Rp

    def _match(self, w: Codes, pos, k: int, m0: int, p: int, cap: int = 400) -> Optional[List[int]]:
        """A convex match of u (rule k) with u[m0] at position p, or None.

        Letters of u are matched in increasing position, each one a letter of
        u whose non-commuting predecessors in u are already matched, so u is
        matched up to commutation.  Unmatched letters in between go left if
        they commute with everything matched so far, otherwise right; a letter
        of u depending on one that goes right is blocked here and at every
        later occurrence.  Returns the positions listed in u order.
        """
        for x, c in self.need[k]:
            lst = pos.get(x)
            if lst is None or len(lst) - bisect_left(lst, p) < c:
                return None
        dep = self.codec.dep
        u = self.rules[k].u
        pred = self._pred(k)
        n = len(u)
        full = (1 << n) - 1
        slots = [0] * n
        slots[m0] = p
        stack = [(1 << m0, p, 1 << (w[p] >> 1), 0, slots)]
        pops = 0
        while stack and pops < cap:
            used, last, left, right, sl = stack.pop()
            pops += 1
            if used == full:
                return sl
            seen = set()
            cands = []
            for m in range(n):
                if used >> m & 1 or pred[m] & ~used or u[m] in seen:
                    continue
                seen.add(u[m])
                lst = pos.get(u[m])
                if not lst:
                    continue
                g = u[m] >> 1
                L, R = left, right
                t0 = last + 1
                for t in lst[bisect_right(lst, last):]:
                    for s_ in range(t0, t):
                        h = w[s_] >> 1
                        if dep[h] & L:
                            R |= 1 << h
                            L |= 1 << h
                    t0 = t
                    if dep[g] & R:
                        break
                    nsl = list(sl)
                    nsl[m] = t
                    cands.append((t, (used | 1 << m, t, L | (1 << g), R, nsl)))
            cands.sort(key=lambda c: -c[0])
            stack.extend(c for _, c in cands)
        return None

    def successors(self, w: Codes):
        pos = defaultdict(list)
        for t, c in enumerate(w):
            pos[c].append(t)
        for c in list(pos):
            for k, m0 in self.by_first.get(c, ()):
                u = self.rules[k].u
                for p in pos[c]:
                    match = self._match(w, pos, k, m0, p) if len(u) > 1 else [p]
                    if match is None:
                        continue
                    arr = self._arrangement(w, match) if len(u) > 1 else [p]
                    if arr is None:
                        continue
                    seg = [w[t] for t in arr]
                    start = min(arr)
                    new = list(w[:start]) + seg + list(w[max(arr) + 1:])
                    upos = start + arr.index(match[0])
                    new[upos:upos + len(u)] = list(self.rules[k].v)
                    yield self.norm.normal(new), (k, tuple(match))

    def explicit(self, w: Codes, move) -> Tuple[Codes, list]:
        """Replay one search move on the normal form w as primitive moves."""
        k, match = move
        rule = self.rules[k]
        cur = list(w)
        moves = []
        if len(match) > 1:
            arr = self._arrangement(w, match)
            start, stop = min(arr), max(arr)
            order = list(range(start)) + arr + list(range(stop + 1, len(cur)))
            _bubble(cur, order, moves)
            upos = start + arr.index(match[0])
        else:
            upos = match[0]
        assert tuple(cur[upos:upos + len(rule.u)]) == rule.u
        moves.append(("piece", upos, k))
        cur[upos:upos + len(rule.u)] = list(rule.v)
        nf, more = self.norm.normal_with_moves(cur)
        return nf, moves + more

    def search(self, src: Codes, dst: Codes, budget: int = 100000):
        """Primitive move list turning src into dst, or None if the budget runs out."""
        s0, pre = self.norm.normal_with_moves(src)
        t0, post = self.norm.normal_with_moves(dst)
        if s0 == t0:
            return pre + _invert_moves(list(dst), post, self)
        parents = [{s0: None}, {t0: None}]
        frontier = [[s0], [t0]]
        visited = 2
        meet = None
        while (frontier[0] or frontier[1]) and meet is None:
            # expand the smaller side; a side whose valley is exhausted stops
            if not frontier[1] or (frontier[0] and len(frontier[0]) <= len(frontier[1])):
                side = 0
            else:
                side = 1
            other = parents[1 - side]
            nxt = []
            for w in frontier[side]:
                for child, mv in self.successors(w):
                    if child in parents[side]:
                        continue
                    parents[side][child] = (w, mv)
                    visited += 1
                    if child in other:
                        meet = child
                        break
                    nxt.append(child)
                    if visited >= budget:
                        return None
                if meet is not None:
                    break
            frontier[side] = nxt
        if meet is None:
            return None
        # forward half: s0 -> meet
        chain = []
        x = meet
        while parents[0][x] is not None:
            w, mv = parents[0][x]
            chain.append((w, mv))
            x = w
        chain.reverse()
        moves = list(pre)
        for w, mv in chain:
            _, ms = self.explicit(w, mv)
            moves += ms
        # backward half: replay t0 -> meet, then invert it
        seq = []
        path = []
        x = meet
        while parents[1][x] is not None:
            w, mv = parents[1][x]
            path.append((w, mv))
            x = w
        path.reverse()              # t0 -> meet
        for w, mv in path:
            _, ms = self.explicit(w, mv)
            seq.append((w, ms))
        # undo: meet -> t0
        for w, ms in reversed(seq):
            moves += _invert_moves(list(w), ms, self)
        # and finally t0 -> dst
        moves += _invert_moves(list(dst), post, self)
        return moves


def _invert_moves(start: list, moves: list, search: "BridgeSearch") -> list:
    """Given moves taking start to end, return moves taking end back to start."""
    states = []
    cur = list(start)
    for mv in moves:
        states.append(list(cur))
        _apply_any(cur, mv, search)
    inv = []
    for before, mv in zip(reversed(states), reversed(moves)):
        kind, p = mv[0], mv[1]
        if kind == "swap":
            inv.append(("swap", p))
        elif kind == "cancel":
            inv.append(("insert", p, before[p]))
        elif kind == "insert":
            inv.append(("cancel", p))
        else:
            inv.append(("unpiece", p, mv[2]))
    return inv


def _apply_any(w: list, mv, search: "BridgeSearch") -> None:
    if mv[0] == "piece":
        r = search.rules[mv[2]]
        w[mv[1]:mv[1] + len(r.u)] = list(r.v)
    elif mv[0] == "unpiece":
        r = search.rules[mv[2]]
        w[mv[1]:mv[1] + len(r.v)] = list(r.u)
    else:
        _apply(w, mv)
