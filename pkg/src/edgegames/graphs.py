"""Bitset graphs on labelled vertices, K_n edge indexing, and Turan machinery.

Vertices are 0-indexed integers. Vertex sets are plain Python ints used as
bitmasks, so set algebra is `&`, `|`, `~` and cardinality is `int.bit_count()`.
All densities are exact `Fraction`s; no floats enter any threshold comparison.
"""

from __future__ import annotations

import itertools
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bit positions of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph: n vertices, one adjacency bitmask per vertex."""

    n: int
    adj: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length mismatch")
        full = (1 << self.n) - 1
        for u in range(self.n):
            row = self.adj[u]
            if row & ~full:
                raise ValueError("adjacency bit out of range")
            if row >> u & 1:
                raise ValueError("self loop at vertex %d" % u)
        for u in range(self.n):
            for v in bits(self.adj[u]):
                if not self.adj[v] >> u & 1:
                    raise ValueError("asymmetric adjacency at (%d,%d)" % (u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self):
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(self.degree(u) for u in range(self.n))


def graph_from_edges(n: int, edges) -> Graph:
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ValueError("invalid edge (%r,%r) for n=%d" % (u, v, n))
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << u) for u in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return graph_from_edges(n, [(u, (u + 1) % n) for u in range(n)])


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(u, u + 1) for u in range(n - 1)])


def complete_multipartite(sizes) -> Graph:
    """Complete multipartite graph; parts are consecutive blocks of vertices."""
    sizes = list(sizes)
    if any(s < 0 for s in sizes):
        raise ValueError("negative part size")
    n = sum(sizes)
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    return graph_from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]]
    )


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph_from_edges(10, outer + spokes + inner)


# ---------------------------------------------------------------------------
# Edge indexing for K_n: lexicographic bijection (u,v), u<v  <->  {0..C(n,2)-1}
# ---------------------------------------------------------------------------

def num_edges(n: int) -> int:
    return n * (n - 1) // 2


def edge_index(u: int, v: int, n: int) -> int:
    if not (0 <= u < v < n):
        raise ValueError("invalid edge (%r,%r) for n=%d" % (u, v, n))
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def edge_of(i: int, n: int):
    """Inverse of edge_index."""
    if not 0 <= i < num_edges(n):
        raise ValueError("edge id %d out of range for n=%d" % (i, n))
    u = 0
    row = n - 1
    while i >= row:
        i -= row
        u += 1
        row -= 1
    return (u, u + 1 + i)


def edge_pairs(n: int):
    """All edges of K_n in edge_index order."""
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


# ---------------------------------------------------------------------------
# Counting and density
# ---------------------------------------------------------------------------

def edges_between(G: Graph, S: int, T: int) -> int:
    """e_G(S,T): edges with one endpoint in S, the other in T (disjoint masks)."""
    if S & T:
        raise ValueError("S and T overlap")
    return sum((G.adj[u] & T).bit_count() for u in bits(S))


def density(G: Graph, A: int, B: int) -> Fraction:
    """d(A,B) = e(A,B) / (|A||B|), exact."""
    if A & B:
        raise ValueError("A and B overlap")
    a, b = A.bit_count(), B.bit_count()
    if a == 0 or b == 0:
        raise ValueError("empty side")
    return Fraction(edges_between(G, A, B), a * b)


# ---------------------------------------------------------------------------
# Subgraph / induced-subgraph search (backtracking, degree pruning)
# ---------------------------------------------------------------------------

def _embed_order(F: Graph):
    """Order F's vertices so each (after the first) touches a placed one if possible."""
    if F.n == 0:
        return []
    remaining = set(range(F.n))
    start = max(remaining, key=F.degree)
    order = [start]
    remaining.remove(start)
    placed = 1 << start
    while remaining:
        nxt = max(
            remaining,
            key=lambda w: ((F.adj[w] & placed).bit_count(), F.degree(w)),
        )
        order.append(nxt)
        remaining.remove(nxt)
        placed |= 1 << nxt
    return order


def _find_embedding(G: Graph, F: Graph, induced: bool) -> Optional[tuple]:
    if F.n > G.n:
        return None
    if F.n == 0:
        return ()
    order = _embed_order(F)
    image = [-1] * F.n

    def backtrack(pos: int, used: int):
        if pos == len(order):
            return True
        fv = order[pos]
        need = F.degree(fv)
        for gv in range(G.n):
            if used >> gv & 1:
                continue
            if not induced and G.degree(gv) < need:
                continue
            ok = True
            for prev in order[:pos]:
                fe = F.adj[fv] >> prev & 1
                ge = G.adj[gv] >> image[prev] & 1
                if induced:
                    if fe != ge:
                        ok = False
                        break
                elif fe and not ge:
                    ok = False
                    break
            if ok:
                image[fv] = gv
                if backtrack(pos + 1, used | 1 << gv):
                    return True
                image[fv] = -1
        return False

    if backtrack(0, 0):
        return tuple(image)
    return None


def contains_subgraph(G: Graph, F: Graph) -> Optional[tuple]:
    """Injective map V(F)->V(G) preserving edges, or None."""
    return _find_embedding(G, F, induced=False)


def contains_induced(G: Graph, F: Graph) -> Optional[tuple]:
    """Injective map preserving both edges and non-edges, or None."""
    return _find_embedding(G, F, induced=True)


def contains_subgraph_with_edge(G: Graph, F: Graph, u: int, v: int) -> Optional[tuple]:
    """A copy of F in G using edge (u,v), or None.

    Sound as a full containment check only when G minus that edge is known to
    be F-free (the in-game incremental case for monotone detectors).
    """
    if F.n == 0 or F.n > G.n:
        return contains_subgraph(G, F)
    for a in range(F.n):
        for b in bits(F.adj[a]):
            for gu, gv in ((u, v), (v, u)):
                image = [-1] * F.n
                image[a], image[b] = gu, gv
                rest = [w for w in range(F.n) if w not in (a, b)]
                if _anchored(G, F, image, rest, (1 << gu) | (1 << gv)):
                    return tuple(image)
    return None


def _anchored(G: Graph, F: Graph, image, rest, used):
    if not rest:
        return True
    fv = rest[0]
    need = F.degree(fv)
    for gv in range(G.n):
        if used >> gv & 1 or G.degree(gv) < need:
            continue
        if all(
            not (F.adj[fv] >> w & 1) or (G.adj[gv] >> image[w] & 1)
            for w in range(F.n)
            if image[w] >= 0
        ):
            image[fv] = gv
            if _anchored(G, F, image, rest[1:], used | 1 << gv):
                return True
            image[fv] = -1
    return False


# ---------------------------------------------------------------------------
# Colorability
# ---------------------------------------------------------------------------

def greedy_coloring(G: Graph) -> list:
    """Greedy coloring in degree-descending order; an upper-bound witness."""
    colors = [-1] * G.n
    for u in sorted(range(G.n), key=G.degree, reverse=True):
        taken = {colors[v] for v in bits(G.adj[u]) if colors[v] >= 0}
        c = 0
        while c in taken:
            c += 1
        colors[u] = c
    return colors


def k_coloring(G: Graph, k: int) -> Optional[list]:
    """A proper coloring with at most k colors, or None (exact branch and bound)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if G.n == 0:
        return []
    greedy = greedy_coloring(G)
    if max(greedy) + 1 <= k:
        return greedy
    order = sorted(range(G.n), key=G.degree, reverse=True)
    colors = [-1] * G.n

    def backtrack(pos: int, used: int):
        if pos == G.n:
            return True
        u = order[pos]
        # symmetry break: allow at most one brand-new color
        limit = min(k, used + 1)
        taken = {colors[v] for v in bits(G.adj[u]) if colors[v] >= 0}
        for c in range(limit):
            if c in taken:
                continue
            colors[u] = c
            if backtrack(pos + 1, max(used, c + 1)):
                return True
            colors[u] = -1
        return False

    if backtrack(0, 0):
        return list(colors)
    return None


def is_k_colorable(G: Graph, k: int) -> bool:
    return k_coloring(G, k) is not None


def chromatic_number(G: Graph) -> int:
    if G.n == 0:
        return 0
    for k in itertools.count(1):
        if is_k_colorable(G, k):
            return k


# ---------------------------------------------------------------------------
# Turan machinery
# ---------------------------------------------------------------------------

def turan_number(n: int, k: int) -> int:
    """t(n,k): max edges in an n-vertex graph with no K_{k+1} (closed formula)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    q = Fraction(n, k)
    t = (
        Fraction(k - 1, k) * n * n / 2
        - Fraction(k, 2) * (math.ceil(q) - q) * (q - math.floor(q))
    )
    assert t.denominator == 1, "Turan formula must be integral"
    return int(t)


def turan_graph(n: int, k: int) -> Graph:
    """Balanced complete k-partite graph; vertex i lives in part i mod k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return graph_from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if u % k != v % k]
    )


def theorem_bounds(n: int, k: int):
    """Family-variant bounds: (floor(t(n,k-1)/2), (k-2)/(k-1) * n^2/4).

    The upper value is the leading term only; any o(n^2) slack is a reporting
    parameter of the caller, not computed here.
    """
    if k < 3:
        raise ValueError("family variant needs k >= 3")
    lower = turan_number(n, k - 1) // 2
    upper_main = Fraction(k - 2, k - 1) * n * n / 4
    return lower, upper_main


def nc_theorem_bounds(n: int, k: int):
    """Non-k-colorability bounds: (floor(t(n,k)/2), (k-1)/k * n^2/4)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lower = turan_number(n, k) // 2
    upper_main = Fraction(k - 1, k) * n * n / 4
    return lower, upper_main


# ---------------------------------------------------------------------------
# Text format and named generators
# ---------------------------------------------------------------------------

def graph_from_text(text: str) -> Graph:
    """Parse `n m` then m lines `u v` (0-indexed, u < v)."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError("expected %d edge lines, got %d" % (m, len(lines) - 1))
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError("malformed edge line: %r" % ln)
        u, v = int(parts[0]), int(parts[1])
        if not u < v:
            raise ValueError("edge must have u < v: %r" % ln)
        edges.append((u, v))
    return graph_from_edges(n, edges)


def graph_to_text(G: Graph) -> str:
    edges = G.edges()
    lines = ["%d %d" % (G.n, len(edges))]
    lines.extend("%d %d" % e for e in edges)
    return "\n".join(lines) + "\n"


def graph_from_name(name: str) -> Graph:
    """Named generators: K<n>, C<n>, P<n>, Kpartite:<s1>,<s2>,..., petersen."""
    if name == "petersen":
        return petersen_graph()
    m = re.fullmatch(r"K(\d+)", name)
    if m:
        return complete_graph(int(m.group(1)))
    m = re.fullmatch(r"C(\d+)", name)
    if m:
        return cycle_graph(int(m.group(1)))
    m = re.fullmatch(r"P(\d+)", name)
    if m:
        return path_graph(int(m.group(1)))
    m = re.fullmatch(r"Kpartite:([\d,]+)", name)
    if m:
        return complete_multipartite(int(s) for s in m.group(1).split(","))
    raise ValueError("unknown graph name: %r" % name)


def load_graph(spec: str) -> Graph:
    """A named generator, or a path to a graph text file."""
    if os.path.exists(spec):
        with open(spec) as fh:
            return graph_from_text(fh.read())
    return graph_from_name(spec)
