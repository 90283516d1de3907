"""Canonical labelling of small graphs by refinement and individualization.

Used to deduplicate generated Gallai trees.  Exact for any n, but only fast
for the small, fairly asymmetric graphs it is meant for (n <= 12).
"""

from __future__ import annotations

from .errors import CapacityError
from .graph import Graph, bits, popcount

CANON_LIMIT = 12


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement, splitting cells in a label-independent order."""
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple(popcount(adj[v] & m) for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                split = True
            out.extend(groups[s] for s in sorted(groups))
        cells = out
        if not split:
            return cells


def _certificate(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    return tuple(sum(1 << pos[u] for u in bits(adj[v])) for v in order)


class _Orbits:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def canonical_labeling(g: Graph, limit: int = CANON_LIMIT) -> list[int]:
    """Vertex order such that isomorphic graphs get identical relabelled adjacency."""
    if g.n > limit:
        raise CapacityError(f"canonical labelling is limited to {limit} vertices, got {g.n}")
    if g.n == 0:
        return []
    adj = g.adj
    best: list = [None, None]  # certificate, order
    automorphisms: list[list[int]] = []

    def search(cells: list[list[int]], fixed: list[int]) -> None:
        cells = _refine(adj, cells)
        if len(cells) == g.n:
            order = [c[0] for c in cells]
            cert = _certificate(adj, order)
            if best[0] is None or cert > best[0]:
                best[0], best[1] = cert, order
            elif cert == best[0]:
                # same certificate twice: the two orders differ by an automorphism
                ref = best[1]
                perm = [0] * g.n
                for a, b in zip(ref, order):
                    perm[a] = b
                automorphisms.append(perm)
            return
        idx = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        target = cells[idx]
        explored: list[int] = []
        for v in target:
            # skip v if an automorphism fixing the current prefix maps an explored child to it
            orbits = _Orbits(g.n)
            for perm in automorphisms:
                if all(perm[x] == x for x in fixed):
                    for x in range(g.n):
                        orbits.union(x, perm[x])
            if any(orbits.find(u) == orbits.find(v) for u in explored):
                continue
            explored.append(v)
            rest = [u for u in target if u != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1 :], fixed + [v])

    search([list(range(g.n))], [])
    return best[1]


def canonical_form(g: Graph, limit: int = CANON_LIMIT) -> tuple[int, tuple[int, ...]]:
    """Hashable isomorphism invariant that is complete: equal iff isomorphic."""
    order = canonical_labeling(g, limit)
    return g.n, _certificate(g.adj, order)


def canonical_relabel(g: Graph, limit: int = CANON_LIMIT) -> tuple[Graph, list[int]]:
    """Canonical copy of ``g`` plus the order: its vertex i is ``order[i]`` in ``g``."""
    order = canonical_labeling(g, limit)
    return Graph(g.n, _certificate(g.adj, order)), order


def canonical_graph(g: Graph, limit: int = CANON_LIMIT) -> Graph:
    n, adj = canonical_form(g, limit)
    return Graph(n, adj)
