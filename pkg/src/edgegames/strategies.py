"""Move-selection policies.

The cluster-avoiding lower-bound strategy, a discrepancy-greedy
pseudo-randomizing opponent, and two baselines (seeded-random and
first-available). Descriptor DSL for the CLI:

    turan:<parts>    cross-cluster avoider
    jumbleg:<eps>    discrepancy-greedy opponent
    random[:<seed>]  uniform over unclaimed edges
    first            lowest edge id

Seeded strategies carry their own stream; use `fork(seed)` to get an
independent per-match instance before concurrent play.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

import numpy as np

from .engine import GameState, UNCLAIMED, _endpoints
from .graphs import edge_of


class Strategy:
    descriptor = "?"
    last_note: Optional[str] = None

    def next_move(self, state: GameState, player: int):
        raise NotImplementedError

    def fork(self, seed) -> "Strategy":
        """Per-match instance; deterministic strategies just return self."""
        return self


class FirstAvailableStrategy(Strategy):
    descriptor = "first"

    def next_move(self, state, player):
        free = np.flatnonzero(state.claims == UNCLAIMED)
        if len(free) == 0:
            raise RuntimeError("no moves left")
        return edge_of(int(free[0]), state.n)


class RandomStrategy(Strategy):
    """Uniform choice among unclaimed edges from a seeded stream."""

    def __init__(self, seed: Optional[int] = None):
        self.seed = seed
        self.descriptor = "random" if seed is None else "random:%d" % seed
        self._rng = random.Random(seed)

    def fork(self, seed):
        return RandomStrategy(self.seed if self.seed is not None else seed)

    def next_move(self, state, player):
        free = np.flatnonzero(state.claims == UNCLAIMED)
        if len(free) == 0:
            raise RuntimeError("no moves left")
        return edge_of(int(free[self._rng.randrange(len(free))]), state.n)


class TuranAvoiderStrategy(Strategy):
    """Round-robin clusters; claims only cross-cluster edges while any remain.

    While in the cross phase the claimed graph respects the cluster partition
    and so stays (parts)-colorable. Once cross edges run out it falls back to
    the lowest unclaimed edge id and flags the move for the transcript.
    """

    def __init__(self, parts: int):
        if parts < 1:
            raise ValueError("parts must be >= 1")
        self.parts = parts
        self.descriptor = "turan:%d" % parts
        self._cross_ids = {}  # n -> ndarray of cross-cluster edge ids

    def _cross(self, n: int):
        if n not in self._cross_ids:
            u_idx, v_idx = _endpoints(n)
            self._cross_ids[n] = np.flatnonzero(u_idx % self.parts != v_idx % self.parts)
        return self._cross_ids[n]

    def next_move(self, state, player):
        cross = self._cross(state.n)
        free_cross = cross[state.claims[cross] == UNCLAIMED]
        if len(free_cross):
            self.last_note = None
            return edge_of(int(free_cross[0]), state.n)
        free = np.flatnonzero(state.claims == UNCLAIMED)
        if len(free) == 0:
            raise RuntimeError("no moves left")
        self.last_note = "fallback"
        return edge_of(int(free[0]), state.n)


class JumbleGStrategy(Strategy):
    """Discrepancy-greedy pseudo-randomizer.

    Among unclaimed edges (u,v), picks one maximizing
    (d_A(u) - d_E(u)) + (d_A(v) - d_E(v)) where d_A/d_E are the current
    builder/opponent degrees; ties go to the minimum edge id. Deterministic,
    and a pure function of the claim map.
    """

    def __init__(self, eps):
        eps = Fraction(eps) if not isinstance(eps, Fraction) else eps
        if not 0 < eps < Fraction(1, 2):
            raise ValueError("eps must lie in (0, 1/2)")
        self.eps = eps
        self.descriptor = "jumbleg:%s" % eps

    def next_move(self, state, player):
        # favor edges whose endpoints the other player leads on; for the
        # enforcer this is the spec'd (d_A(u)-d_E(u)) + (d_A(v)-d_E(v)) key
        other = 3 - player  # BUILDER=1, OPPONENT=2
        diff = state.deg[other] - state.deg[player]
        u_idx, v_idx = _endpoints(state.n)
        key = diff[u_idx] + diff[v_idx]
        free = state.claims == UNCLAIMED
        if not free.any():
            raise RuntimeError("no moves left")
        key = np.where(free, key, np.iinfo(np.int64).min)
        return edge_of(int(np.argmax(key)), state.n)


def default_monitor_eps(n: int) -> float:
    """Reporting eps: min(0.1, theorem threshold); the threshold itself is
    vacuous (> 1/2) at desk scale."""
    from .regularity import jumbleg_eps_threshold

    return min(0.1, jumbleg_eps_threshold(n))


def parse_strategy(descriptor: str) -> Strategy:
    """Parse the strategy DSL."""
    if descriptor == "first":
        return FirstAvailableStrategy()
    if descriptor == "random":
        return RandomStrategy()
    if descriptor.startswith("random:"):
        return RandomStrategy(int(descriptor.split(":", 1)[1]))
    if descriptor.startswith("turan:"):
        return TuranAvoiderStrategy(int(descriptor.split(":", 1)[1]))
    if descriptor.startswith("jumbleg:"):
        return JumbleGStrategy(Fraction(descriptor.split(":", 1)[1]))
    raise ValueError("unknown strategy descriptor: %r" % descriptor)
