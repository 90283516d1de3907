"""Bitset graphs and the exact solvers everything else is built on.

A :class:`Graph` stores one neighbourhood bitmask per vertex, so vertex sets
are plain ``int`` masks throughout the package.  Vertices are ``0..n-1`` and
``n`` is capped at :data:`MAX_VERTICES`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import CapacityError

MAX_VERTICES = 64

# Size knobs for the exponential solvers.  Every acceptance experiment stays
# at n <= 12, so these are generous.
CHROMATIC_LIMIT = 20
INDEPENDENCE_LIMIT = 40


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with bitset adjacency."""

    n: int
    adj: tuple[int, ...]
    edge_count: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"graphs are limited to {MAX_VERTICES} vertices, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        total = 0
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
            total += popcount(nb)
        object.__setattr__(self, "edge_count", total // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in bits(self.adj[v] & ((1 << v) - 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(a) for a in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def induced_subgraph(self, vertices: int | Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Return ``G[vertices]`` relabelled to ``0..len-1`` and the map back to ``G``."""
        mask = vertices if isinstance(vertices, int) else mask_of(vertices)
        keep = tuple(bits(mask))
        index = {v: i for i, v in enumerate(keep)}
        adj = tuple(mask_of(index[u] for u in bits(self.adj[v] & mask)) for v in keep)
        return Graph(len(keep), adj), keep

    def delete_edge(self, u: int, v: int) -> Graph:
        if not self.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def delete_vertex(self, v: int) -> Graph:
        return self.induced_subgraph(self.vertex_mask & ~(1 << v))[0]

    def edges_within(self, mask: int) -> int:
        return sum(popcount(self.adj[v] & mask) for v in bits(mask)) // 2

    def edges_between(self, a: int, b: int) -> int:
        """Number of edges with one end in ``a`` and the other in ``b`` (disjoint masks)."""
        return sum(popcount(self.adj[v] & b) for v in bits(a))

    def component_masks(self) -> list[int]:
        seen = 0
        out = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.component_masks()) == 1


# -- named graphs -----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def wheel_graph(rim: int) -> Graph:
    """Cycle on ``rim`` vertices ``0..rim-1`` plus a hub ``rim`` joined to all of them."""
    return Graph.from_edges(rim + 1, [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def bowtie_graph() -> Graph:
    """Two triangles sharing vertex 0."""
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def disjoint_union(a: Graph, b: Graph) -> Graph:
    shift = a.n
    return Graph(a.n + b.n, a.adj + tuple(nb << shift for nb in b.adj))


# -- degrees -----------------------------------------------------------------

@dataclass(frozen=True)
class DegreeProfile:
    k: int
    degrees: tuple[int, ...]
    min_degree: int
    max_degree: int
    average_degree: Fraction
    low_set: frozenset[int]
    high_set: frozenset[int]


def degree_profile(g: Graph, k: int) -> DegreeProfile:
    """Exact degree statistics with the low set ``{v : d(v) = k-1}``.

    The average degree of the empty graph is reported as 0.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    degs = tuple(g.degrees())
    low = frozenset(v for v, d in enumerate(degs) if d == k - 1)
    avg = Fraction(2 * g.edge_count, g.n) if g.n else Fraction(0)
    return DegreeProfile(
        k=k,
        degrees=degs,
        min_degree=min(degs, default=0),
        max_degree=max(degs, default=0),
        average_degree=avg,
        low_set=low,
        high_set=frozenset(range(g.n)) - low,
    )


def components(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    """Connected components as induced subgraphs, ordered by smallest vertex."""
    return [g.induced_subgraph(m) for m in g.component_masks()]


# -- blocks ------------------------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (maximal 2-connected pieces, bridges, or an isolated vertex).

    ``incidence[i]`` holds the cutvertices lying in ``blocks[i]``; together
    they describe the block-cut tree.
    """

    blocks: tuple[frozenset[int], ...]
    cutvertices: frozenset[int]
    incidence: tuple[frozenset[int], ...]

    def endblocks(self) -> list[int]:
        """Indices of leaf blocks in the block-cut tree."""
        return [i for i, cuts in enumerate(self.incidence) if len(cuts) <= 1]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Hopcroft-Tarjan biconnected components of a connected graph."""
    if not g.is_connected():
        raise ValueError("block_decomposition expects a connected graph")
    if g.n == 1:
        return BlockDecomposition((frozenset({0}),), frozenset(), (frozenset(),))

    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    timer = 0

    disc[0] = low[0] = timer
    timer += 1
    root_children = 0
    stack = [(0, -1, iter(g.neighbors(0)))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for u in it:
            if disc[u] == -1:
                edge_stack.append((v, u))
                disc[u] = low[u] = timer
                timer += 1
                stack.append((u, v, iter(g.neighbors(u))))
                advanced = True
                break
            if u != parent and disc[u] < disc[v]:
                edge_stack.append((v, u))
                low[v] = min(low[v], disc[u])
        if advanced:
            continue
        stack.pop()
        if parent == -1:
            continue
        low[parent] = min(low[parent], low[v])
        if low[v] >= disc[parent]:
            if stack[-1][1] == -1:
                root_children += 1
            else:
                cuts.add(parent)
            block: set[int] = set()
            while True:
                a, b = edge_stack.pop()
                block.update((a, b))
                if (a, b) == (parent, v):
                    break
            blocks.append(frozenset(block))
    if root_children > 1:
        cuts.add(0)

    blocks.sort(key=lambda b: sorted(b))
    cutset = frozenset(cuts)
    return BlockDecomposition(tuple(blocks), cutset, tuple(b & cutset for b in blocks))


# -- chromatic number --------------------------------------------------------

def _greedy_clique(g: Graph) -> int:
    best = 0
    for start in range(g.n):
        clique, cand = 1, g.adj[start]
        while cand:
            v = max(bits(cand), key=lambda u: popcount(g.adj[u] & cand))
            clique += 1
            cand &= g.adj[v]
        best = max(best, clique)
    return best


def _dsatur(g: Graph) -> list[int]:
    colors = [-1] * g.n
    seen = [0] * g.n
    degs = g.degrees()
    for _ in range(g.n):
        v = max((u for u in range(g.n) if colors[u] < 0), key=lambda u: (popcount(seen[u]), degs[u]))
        c = 0
        while seen[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in bits(g.adj[v]):
            seen[u] |= 1 << c
    return colors


def k_coloring(g: Graph, k: int) -> list[int] | None:
    """A proper coloring with colors ``0..k-1``, or ``None`` if none exists.

    Vertices are picked by saturation and a new color is only tried once, in
    first-use order, which removes the k! color permutations.
    """
    colors = [-1] * g.n
    degs = g.degrees()

    def extend(done: int, used: int) -> bool:
        if done == g.n:
            return True
        best, best_key = -1, (-1, -1)
        for v in range(g.n):
            if colors[v] < 0:
                sat = len({colors[u] for u in bits(g.adj[v]) if colors[u] >= 0})
                if (sat, degs[v]) > best_key:
                    best, best_key = v, (sat, degs[v])
        v = best
        forbidden = {colors[u] for u in bits(g.adj[v])}
        for c in range(min(used + 1, k)):
            if c in forbidden:
                continue
            colors[v] = c
            if extend(done + 1, max(used, c + 1)):
                return True
        colors[v] = -1
        return False

    return colors if extend(0, 0) else None


def chromatic_number(g: Graph, limit: int = CHROMATIC_LIMIT) -> int:
    if g.n > limit:
        raise CapacityError(f"chromatic_number is limited to {limit} vertices, got {g.n}")
    if g.n == 0:
        return 0
    lo = _greedy_clique(g)
    hi = max(_dsatur(g)) + 1
    for k in range(lo, hi):
        if k_coloring(g, k) is not None:
            return k
    return hi


# -- independent sets --------------------------------------------------------

def maximum_independent_set(g: Graph, limit: int = INDEPENDENCE_LIMIT) -> int:
    """Mask of a maximum independent set, by branch and bound on bitsets."""
    if g.n > limit:
        raise CapacityError(f"independence_number is limited to {limit} vertices, got {g.n}")
    adj = g.adj
    best = [-1, 0]

    def search(cand: int, chosen: int, size: int) -> None:
        if size + popcount(cand) <= best[0]:
            return
        if not cand:
            best[0], best[1] = size, chosen
            return
        # a vertex of degree <= 1 inside cand lies in some maximum set
        pick, pick_deg = -1, -1
        for v in bits(cand):
            d = popcount(adj[v] & cand)
            if d <= 1:
                search(cand & ~adj[v] & ~(1 << v), chosen | 1 << v, size + 1)
                return
            if d > pick_deg:
                pick, pick_deg = v, d
        search(cand & ~adj[pick] & ~(1 << pick), chosen | 1 << pick, size + 1)
        search(cand & ~(1 << pick), chosen, size)

    search(g.vertex_mask, 0, 0)
    return best[1]


def independence_number(g: Graph, limit: int = INDEPENDENCE_LIMIT) -> int:
    return popcount(maximum_independent_set(g, limit))


def maximum_weight_independent_set(
    g: Graph, weights: list[int], candidates: int | None = None, limit: int = INDEPENDENCE_LIMIT
) -> tuple[int, int]:
    """Best ``(weight, mask)`` over independent sets inside ``candidates``.

    Weights must be nonnegative.  The bound is the weight already chosen plus
    the total weight still available.  Ties keep the first set found, which
    is maximal because inclusion is explored first.
    """
    if g.n > limit:
        raise CapacityError(f"independent-set search is limited to {limit} vertices, got {g.n}")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    adj = g.adj
    cand0 = g.vertex_mask if candidates is None else candidates
    best = [-1, 0]

    def search(cand: int, chosen: int, value: int) -> None:
        if value + sum(weights[v] for v in bits(cand)) <= best[0]:
            return
        # vertices with no neighbour left in cand can always be taken
        free = 0
        for v in bits(cand):
            if not adj[v] & cand:
                free |= 1 << v
        if free:
            chosen |= free
            value += sum(weights[v] for v in bits(free))
            cand &= ~free
        if not cand:
            if value > best[0]:
                best[0], best[1] = value, chosen
            return
        v = max(bits(cand), key=lambda u: (weights[u], popcount(adj[u] & cand)))
        search(cand & ~adj[v] & ~(1 << v), chosen | 1 << v, value + weights[v])
        search(cand & ~(1 << v), chosen, value)

    search(cand0, 0, 0)
    return best[0], best[1]
