"""Exact game values for tiny boards.

Full minimax over the claim tree: the builder (Avoider) maximizes the hitting
round, the opponent (Enforcer) minimizes it, and "never" (board exhausted
without the property) sits above every finite round in the order. Hitting is
evaluated immediately after each builder move, exactly like the engine.

Memoization keys on the claim map, canonicalized by exhaustive vertex
permutation when symmetry is on (sound for n <= 7 where n! <= 5040). The
claim map alone determines whose turn it is and the round, so nothing else
enters the key. Assumes a monotone property detector: a reachable position
never already has the property, so anchored hit checks are sound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .engine import BUILDER, GameRules, GameState, OPPONENT, UNCLAIMED
from .graphs import edge_index, edge_pairs, num_edges

NEVER = math.inf


class BudgetExhausted(Exception):
    """The node budget ran out before the value was determined."""


@dataclass
class SolveResult:
    value: str  # "exact" | "never" | "unknown"
    t: Optional[int]  # hitting round when value == "exact"
    nodes: int
    best_move: Optional[tuple]  # an optimal first move, when known


def _perm_edge_tables(n: int):
    """For each vertex permutation p, the edge-id relabeling table:
    table[j] = id of (p(u), p(v)) where (u,v) = edge j."""
    pairs = edge_pairs(n)
    tables = []
    for p in itertools.permutations(range(n)):
        tbl = []
        for u, v in pairs:
            pu, pv = p[u], p[v]
            if pu > pv:
                pu, pv = pv, pu
            tbl.append(edge_index(pu, pv, n))
        tables.append(tuple(tbl))
    return tables


_TABLE_CACHE: dict = {}


def canonical_claims(claims, n: int) -> bytes:
    """Minimum claim-map encoding over all vertex permutations."""
    if n not in _TABLE_CACHE:
        if n > 7:
            raise ValueError("exhaustive canonicalization limited to n <= 7")
        _TABLE_CACHE[n] = _perm_edge_tables(n)
    get = claims.__getitem__
    return min(bytes(map(get, tbl)) for tbl in _TABLE_CACHE[n])


class _Search:
    def __init__(self, rules: GameRules, budget: Optional[int], symmetry: bool):
        self.n = rules.n
        self.prop = rules.prop
        self.first = rules.first_mover
        self.budget = budget
        self.symmetry = symmetry
        self.pairs = edge_pairs(self.n)
        self.m = num_edges(self.n)
        self.claims = bytearray(self.m)
        self.adj = [0] * self.n  # builder's graph only
        self.counts = {BUILDER: 0, OPPONENT: 0}
        self.nodes = 0
        self.memo = {}

    def _turn(self) -> int:
        second = OPPONENT if self.first == BUILDER else BUILDER
        return self.first if self.counts[self.first] == self.counts[second] else second

    def _hit(self, u: int, v: int) -> bool:
        return self.prop.hit_after_masks(self.n, self.adj, u, v)

    def value(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExhausted()
        claimed = self.counts[BUILDER] + self.counts[OPPONENT]
        if claimed == self.m:
            return NEVER
        key = None
        if self.symmetry:
            key = canonical_claims(self.claims, self.n)
            if key in self.memo:
                return self.memo[key]
        turn = self._turn()
        best = -1 if turn == BUILDER else NEVER
        for eid in range(self.m):
            if self.claims[eid] != UNCLAIMED:
                continue
            u, v = self.pairs[eid]
            self.claims[eid] = turn
            self.counts[turn] += 1
            if turn == BUILDER:
                self.adj[u] |= 1 << v
                self.adj[v] |= 1 << u
                if self._hit(u, v):
                    val = self.counts[BUILDER]
                else:
                    val = self.value()
                self.adj[u] &= ~(1 << v)
                self.adj[v] &= ~(1 << u)
                if val > best:
                    best = val
            else:
                val = self.value()
                if val < best:
                    best = val
            self.counts[turn] -= 1
            self.claims[eid] = UNCLAIMED
        if key is not None:
            self.memo[key] = best
        return best

    def root_moves(self, turn: int):
        """(value, edge) per legal move at the current position, edge-id order."""
        out = []
        for eid in range(self.m):
            if self.claims[eid] != UNCLAIMED:
                continue
            u, v = self.pairs[eid]
            self.claims[eid] = turn
            self.counts[turn] += 1
            if turn == BUILDER:
                self.adj[u] |= 1 << v
                self.adj[v] |= 1 << u
                val = self.counts[BUILDER] if self._hit(u, v) else self.value()
                self.adj[u] &= ~(1 << v)
                self.adj[v] &= ~(1 << u)
            else:
                val = self.value()
            self.counts[turn] -= 1
            self.claims[eid] = UNCLAIMED
            out.append((val, (u, v)))
        return out


def solve_tau(
    rules: GameRules, budget: Optional[int] = None, symmetry: bool = True
) -> SolveResult:
    """Exact minimax value of the game from the empty board.

    Returns Exact(t) as value="exact", t=t; value="never" if the builder can
    exhaust the board without the property; value="unknown" when the node
    budget runs out.
    """
    if symmetry and rules.n > 7:
        raise ValueError("symmetry canonicalization supports n <= 7")
    search = _Search(rules, budget, symmetry)
    try:
        scored = search.root_moves(search._turn())
    except BudgetExhausted:
        return SolveResult("unknown", None, search.nodes, None)
    turn = rules.first_mover
    if turn == BUILDER:
        val = max(v for v, _ in scored)
    else:
        val = min(v for v, _ in scored)
    move = next(e for v, e in scored if v == val)
    if val == NEVER:
        return SolveResult("never", None, search.nodes, move)
    return SolveResult("exact", int(val), search.nodes, move)


def best_move(
    state: GameState, player: int, budget: Optional[int] = None, symmetry: bool = True
):
    """A move achieving the minimax value for `player` at `state`; ties break
    to the minimum edge id."""
    if state.whose_turn() != player:
        raise ValueError("not this player's turn")
    search = _Search(state.rules, budget, symmetry)
    for eid, c in enumerate(state.claims):
        c = int(c)
        if c != UNCLAIMED:
            search.claims[eid] = c
            search.counts[c] += 1
            if c == BUILDER:
                u, v = search.pairs[eid]
                search.adj[u] |= 1 << v
                search.adj[v] |= 1 << u
    scored = search.root_moves(player)
    if player == BUILDER:
        target = max(v for v, _ in scored)
    else:
        target = min(v for v, _ in scored)
    return next(e for v, e in scored if v == target)
