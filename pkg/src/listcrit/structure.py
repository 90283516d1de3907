"""Gallai trees, beta_k, the maximum independent cover number, and the
structural inequalities checked on list-critical graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .canon import CANON_LIMIT, canonical_form
from .errors import CapacityError, PreconditionError
from .graph import (
    Graph,
    bits,
    block_decomposition,
    independence_number,
    mask_of,
    maximum_independent_set,
    maximum_weight_independent_set,
)

_RELATIONS = {
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
}


def fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class InequalityCheck:
    """``lhs <relation> rhs`` evaluated exactly."""

    name: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    note: str = ""

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    @property
    def tight(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "lhs": fraction_text(self.lhs),
            "relation": self.relation,
            "rhs": fraction_text(self.rhs),
            "holds": self.holds,
            "tight": self.tight,
        }
        if self.note:
            out["note"] = self.note
        return out


# -- Gallai trees -----------------------------------------------------------

@dataclass(frozen=True)
class GallaiCertificate:
    is_gallai: bool
    offending_block: frozenset[int] | None = None


def classify_block(g: Graph, block: frozenset[int]) -> str:
    """``"complete"``, ``"odd_cycle"`` or ``"other"`` for a block of ``g``."""
    mask = mask_of(block)
    b = len(block)
    m = g.edges_within(mask)
    if m == b * (b - 1) // 2:
        return "complete"
    # a 2-connected graph with as many edges as vertices is a cycle
    if b % 2 == 1 and m == b:
        return "odd_cycle"
    return "other"


def is_gallai_tree(g: Graph) -> GallaiCertificate:
    if not g.is_connected():
        raise ValueError("is_gallai_tree expects a connected, nonempty graph")
    for block in block_decomposition(g).blocks:
        if classify_block(g, block) == "other":
            return GallaiCertificate(False, block)
    return GallaiCertificate(True)


def _attach(t: Graph, x: int, block_size: int, cycle: bool) -> Graph:
    """Glue a new ``K_b`` (or ``C_b``) onto ``t`` at vertex ``x``."""
    n = t.n
    new = [x] + list(range(n, n + block_size - 1))
    edges = t.edges()
    if cycle:
        edges += [(new[i], new[(i + 1) % block_size]) for i in range(block_size)]
    else:
        edges += [(new[i], new[j]) for i in range(block_size) for j in range(i + 1, block_size)]
    return Graph.from_edges(n + block_size - 1, edges)


def enumerate_gallai_trees(n_max: int, max_degree: int) -> Iterator[Graph]:
    """All Gallai trees with at most ``n_max`` vertices and maximum degree
    at most ``max_degree``, one per isomorphism class, in canonical labelling.

    Every Gallai tree with two or more blocks arises from a smaller one by
    gluing an endblock onto a single vertex, so growing from ``K1`` one
    block at a time and deduplicating by canonical form is complete.
    Output is ordered by order, then canonical form.
    """
    if n_max > CANON_LIMIT:
        raise CapacityError(f"enumerate_gallai_trees is limited to n_max <= {CANON_LIMIT}")
    if n_max < 1:
        return
    levels: dict[int, dict[tuple, Graph]] = {n: {} for n in range(1, n_max + 1)}
    k1 = Graph(1, (0,))
    levels[1][canonical_form(k1)] = k1
    for n in range(1, n_max + 1):
        for form in sorted(levels[n]):
            t = levels[n][form]
            yield Graph(*form)
            degs = t.degrees()
            for x in range(n):
                for b in range(2, n_max - n + 2):
                    shapes = [False] + ([True] if b >= 5 and b % 2 == 1 else [])
                    for cycle in shapes:
                        gain = 2 if cycle else b - 1
                        if degs[x] + gain > max_degree or gain > max_degree:
                            continue
                        child = _attach(t, x, b, cycle)
                        levels[child.n].setdefault(canonical_form(child), child)
        del levels[n]


def beta(g: Graph, k: int) -> int:
    """Independence number of ``g`` induced on its vertices of degree ``k-1``."""
    low = mask_of(v for v in range(g.n) if g.degree(v) == k - 1)
    if not low:
        return 0
    return independence_number(g.induced_subgraph(low)[0])


def check_gallai_tree_bound(t: Graph, k: int) -> InequalityCheck:
    """Evaluate ``2||T|| <= (k-2)|T| + 2 beta_k(T)`` for a Gallai tree.

    Raises PreconditionError for inputs outside the hypothesis (k < 4,
    not a Gallai tree, a vertex of degree >= k, or T = K_k).  A returned
    check that does not hold is a counterexample, not an error.
    """
    if k < 4:
        raise PreconditionError("the Gallai-tree inequality needs k >= 4")
    if not t.is_connected() or not is_gallai_tree(t).is_gallai:
        raise PreconditionError("input is not a Gallai tree")
    if t.max_degree() > k - 1:
        raise PreconditionError(f"maximum degree {t.max_degree()} exceeds k-1 = {k - 1}")
    if t.n == k and t.is_complete():
        raise PreconditionError("T = K_k is excluded")
    return InequalityCheck("gallai_tree_bound", 2 * t.edge_count, "<=", (k - 2) * t.n + 2 * beta(t, k))


# -- independent covers -----------------------------------------------------

@dataclass(frozen=True)
class MicWitness:
    value: int
    independent_set: frozenset[int]


def _cover_search(g: Graph, candidates: int) -> MicWitness:
    # for independent I the edges from I to V - I number sum of d(v), v in I
    value, chosen = maximum_weight_independent_set(g, g.degrees(), candidates)
    return MicWitness(value, frozenset(bits(chosen)))


def mic(g: Graph) -> MicWitness:
    """Maximum over independent sets I of the number of edges between I and V - I."""
    return _cover_search(g, g.vertex_mask)


def restricted_M(g: Graph, h_set) -> MicWitness:
    """Like :func:`mic` but only over independent sets inside ``h_set``."""
    mask = h_set if isinstance(h_set, int) else mask_of(h_set)
    if mask & ~g.vertex_mask:
        raise ValueError("h_set contains vertices outside the graph")
    return _cover_search(g, mask)


def check_kernel_magic(g: Graph, k: int) -> InequalityCheck:
    """``2||G|| >= (k-2)|G| + mic(G) + 1``.  The caller certifies criticality."""
    return InequalityCheck("kernel_magic", 2 * g.edge_count, ">=", (k - 2) * g.n + mic(g).value + 1)


def check_gallai_structure(g: Graph, k: int) -> tuple[bool, frozenset[int] | None]:
    """Whether every component of ``G[{v : d(v) = k-1}]`` is a Gallai tree.

    Returns ``(ok, offending component)``, the component in ``g``'s labels.
    """
    low = mask_of(v for v in range(g.n) if g.degree(v) == k - 1)
    sub, keep = g.induced_subgraph(low)
    for comp in sub.component_masks():
        piece, inner = sub.induced_subgraph(comp)
        if not is_gallai_tree(piece).is_gallai:
            return False, frozenset(keep[i] for i in inner)
    return True, None


@dataclass(frozen=True)
class MicComposition:
    """How a cover witness inside H and an independent set of low vertices combine."""

    check: InequalityCheck
    m_witness: MicWitness
    low_witness: frozenset[int]
    combined_set: frozenset[int]
    combined_value: int
    union_independent: bool


def check_mic_composition(g: Graph, k: int) -> MicComposition:
    """Test ``mic(G) >= M + (k-1) beta(L)`` against the exact mic.

    ``L`` is the set of degree-(k-1) vertices, ``H`` the rest, and ``M`` the
    best cover by an independent subset of ``H``.  The two witnesses are also
    merged: when their union is not independent, low vertices adjacent to
    the H-witness are dropped, and the honest crossing count of that merged
    set is reported alongside.
    """
    low = mask_of(v for v in range(g.n) if g.degree(v) == k - 1)
    high = g.vertex_mask & ~low
    m_wit = restricted_M(g, high)
    sub, keep = g.induced_subgraph(low)
    low_set = frozenset(keep[i] for i in bits(maximum_independent_set(sub))) if low else frozenset()
    m_mask = mask_of(m_wit.independent_set)
    near = 0
    for v in m_wit.independent_set:
        near |= g.adj[v]
    union_independent = not (mask_of(low_set) & near)
    merged = m_mask | (mask_of(low_set) & ~near)
    merged_value = sum(g.degree(v) for v in bits(merged))
    check = InequalityCheck("mic_composition", mic(g).value, ">=", m_wit.value + (k - 1) * len(low_set))
    return MicComposition(check, m_wit, low_set, frozenset(bits(merged)), merged_value, union_independent)
