"""List coloring, f-choosability and f-paintability, decided exactly.

Conventions
-----------
A size function ``f`` is either an int (constant) or one entry per vertex.
Colors are small nonnegative integers; internally a list is a bitmask.

Why the searches are finite and why the pruning is safe
--------------------------------------------------------
*Universe cap.*  Renaming colors does not change colorability, so an
assignment can be relabelled to use colors ``0..U-1`` where ``U`` is the
number of distinct colors it uses, and ``U <= sum(f)``.  Relabelling colors
in order of first use along the vertex order gives one representative per
renaming class; :func:`canonical_assignments` enumerates exactly those.

*Degree reduction.*  If ``f(v) > d(v)`` then ``v`` can always be colored
last, so ``G`` is f-choosable iff ``G - v`` is.  The same holds for
paintability: Painter colors ``v`` whenever it is marked and no neighbour is
colored that round, which can fail at most ``d(v)`` times.

*Private colors.*  If a bad assignment ``L`` gives ``v`` a color that no
neighbour's list contains, then ``L`` restricted to ``G - v`` is already bad
(any coloring of ``G - v`` extends by that color).  Hence ``G`` is not
f-choosable iff some ``G - v`` is not, or a bad assignment exists in which
every color of every list also occurs in a neighbour's list.  The search
checks all ``G - v`` recursively (memoised) and then enumerates only
private-free assignments.  Every color then occurs in at least two lists, so
such an assignment uses at most ``sum(f) // 2`` colors.

*Shortcuts.*  Nested lists ``{0..f(v)-1}`` settle every graph with
chromatic number above ``min f``.  On the other side, a nonzero
coefficient of the graph polynomial below ``f`` proves choosability (see
:func:`_polynomial_certificate`).  Neither can produce a wrong verdict:
each only ends the search with an answer it has proved.

The verdict therefore matches the unpruned definition; the tests compare it
against a brute-force oracle over every canonical assignment.

Online version
--------------
The game is the standard Lister/Painter game from the literature; the
recursion below is that definition, nothing new.  ``G`` is f-paintable iff it is empty, or every
``f(v) >= 1`` and for every nonempty marked set ``S`` Painter has an
independent ``I`` inside ``S`` such that ``G - I`` is paintable with ``f``
lowered by one on ``S - I``.  Painter may always take ``I`` maximal in
``G[S]``, because deleting a vertex never helps Lister.

Witnesses are reproducible run to run, but callers should treat *which* bad
assignment is returned as unspecified: only its badness is guaranteed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .canon import CANON_LIMIT, canonical_relabel
from .errors import CapacityError
from .graph import Graph, bits, popcount

CHOOSABILITY_LIMIT = 10
PAINTABILITY_LIMIT = 9


def size_vector(g: Graph, f: int | Sequence[int]) -> tuple[int, ...]:
    if isinstance(f, int):
        vec = (f,) * g.n
    else:
        vec = tuple(f)
        if len(vec) != g.n:
            raise ValueError(f"size function has {len(vec)} entries for {g.n} vertices")
    if any(x < 0 for x in vec):
        raise ValueError("list sizes must be nonnegative")
    return vec


@dataclass(frozen=True)
class ListAssignment:
    """One color list per vertex, colors drawn from ``0..universe-1``."""

    lists: tuple[frozenset[int], ...]
    universe: int

    def __post_init__(self):
        for v, lst in enumerate(self.lists):
            for c in lst:
                if not 0 <= c < self.universe:
                    raise ValueError(f"color {c} at vertex {v} is outside 0..{self.universe - 1}")

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]]) -> ListAssignment:
        frozen = tuple(frozenset(lst) for lst in lists)
        universe = max((max(lst) for lst in frozen if lst), default=-1) + 1
        return cls(frozen, universe)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> ListAssignment:
        # compact the labels so the universe is exactly the colors used
        used = sorted(set().union(*(set(bits(m)) for m in masks))) if masks else []
        relabel = {c: i for i, c in enumerate(used)}
        return cls(tuple(frozenset(relabel[c] for c in bits(m)) for m in masks), len(used))

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(lst) for lst in self.lists)

    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << c for c in lst) for lst in self.lists)

    def to_json(self) -> list[list[int]]:
        return [sorted(lst) for lst in self.lists]


def _list_coloring_masks(adj: Sequence[int], lists: Sequence[int]) -> list[int] | None:
    n = len(adj)
    colors = [-1] * n

    def extend(todo: int) -> bool:
        if not todo:
            return True
        # most constrained vertex first
        best, best_avail, best_count = -1, 0, 99
        for v in bits(todo):
            taken = 0
            for u in bits(adj[v] & ~todo):
                taken |= 1 << colors[u]
            avail = lists[v] & ~taken
            cnt = popcount(avail)
            if cnt < best_count:
                best, best_avail, best_count = v, avail, cnt
                if cnt == 0:
                    return False
        for c in bits(best_avail):
            colors[best] = c
            if extend(todo & ~(1 << best)):
                return True
        colors[best] = -1
        return False

    return colors if extend((1 << n) - 1) else None


def list_coloring(g: Graph, la: ListAssignment) -> list[int] | None:
    """A proper coloring with ``c(v)`` in ``la.lists[v]``, or ``None``."""
    if len(la.lists) != g.n:
        raise ValueError("list assignment does not cover every vertex")
    return _list_coloring_masks(g.adj, la.masks())


def is_colorable_with_lists(g: Graph, la: ListAssignment) -> bool:
    return list_coloring(g, la) is not None


def canonical_assignments(g: Graph, f: int | Sequence[int]) -> Iterator[ListAssignment]:
    """Every list assignment with ``|L(v)| = f(v)``, one per color renaming.

    Colors are introduced in first-use order along vertices ``0..n-1``: the
    list of ``v`` is some subset of the colors already used plus the next
    unused ones.  Reused colors are tried largest-subset first, so the
    first assignment yielded gives every vertex the same initial colors.
    """
    fv = size_vector(g, f)
    if any(x < 1 for x in fv):
        raise ValueError("canonical_assignments needs f(v) >= 1")
    n = g.n
    current: list[frozenset[int]] = []

    def walk(v: int, used: int) -> Iterator[ListAssignment]:
        if v == n:
            yield ListAssignment(tuple(current), used)
            return
        need = fv[v]
        for s in range(min(need, used), -1, -1):
            fresh = frozenset(range(used, used + need - s))
            for old in combinations(range(used), s):
                current.append(frozenset(old) | fresh)
                yield from walk(v + 1, used + need - s)
                current.pop()

    yield from walk(0, 0)


@dataclass(frozen=True)
class ChoosabilityVerdict:
    choosable: bool
    witness: ListAssignment | None = None


# -- choosability search ------------------------------------------------------

def _fill_fresh(n: int, fv: Sequence[int], known: dict[int, int]) -> list[int]:
    """Complete a partial list assignment by giving missing vertices new colors."""
    top = max((m.bit_length() for m in known.values()), default=0)
    out = []
    for v in range(n):
        if v in known:
            out.append(known[v])
        else:
            out.append(((1 << fv[v]) - 1) << top)
            top += fv[v]
    return out


def _degree_core(adj: Sequence[int], fv: Sequence[int], mask: int) -> int:
    changed = True
    while changed:
        changed = False
        for v in bits(mask):
            if fv[v] > popcount(adj[v] & mask):
                mask &= ~(1 << v)
                changed = True
    return mask


def _polynomial_certificate(g: Graph, fv: Sequence[int]) -> bool:
    """True when the graph polynomial prod_{uv} (x_u - x_v) has a nonzero
    coefficient on some monomial with every exponent below f(v).

    That proves f-choosability (Combinatorial Nullstellensatz), so it can
    only cut the search short on the choosable side.  The expansion drops
    any term whose exponent at v reaches f(v), which keeps the state count
    at most prod f(v).
    """
    edges = g.edges()
    if len(edges) > sum(f - 1 for f in fv):
        return False
    terms: dict[tuple[int, ...], int] = {tuple([0] * g.n): 1}
    for u, v in edges:
        nxt: dict[tuple[int, ...], int] = {}
        for t, c in terms.items():
            for w, sign in ((u, 1), (v, -1)):
                if t[w] + 1 < fv[w]:
                    s = t[:w] + (t[w] + 1,) + t[w + 1 :]
                    nxt[s] = nxt.get(s, 0) + sign * c
        terms = {t: c for t, c in nxt.items() if c}
        if not terms:
            return False
    return True


def _bad_assignment(g: Graph, fv: tuple[int, ...]) -> tuple[int, ...] | None:
    """Lists (as bitmasks) admitting no proper coloring, or None if f-choosable.

    With constant f the answer only depends on the isomorphism class, so
    the search runs on the canonical copy and shares one cache entry
    between all relabellings (criticality checks produce many).
    """
    if g.n <= CANON_LIMIT and len(set(fv)) == 1:
        canon, order = canonical_relabel(g)
        inner = _bad_search(canon, fv)
        if inner is None:
            return None
        out = [0] * g.n
        for i, v in enumerate(order):
            out[v] = inner[i]
        return tuple(out)
    return _bad_search(g, fv)


@lru_cache(maxsize=1 << 16)
def _bad_search(g: Graph, fv: tuple[int, ...]) -> tuple[int, ...] | None:
    n = g.n
    if n == 0:
        return None
    for v in range(n):
        if fv[v] == 0:
            return tuple(_fill_fresh(n, fv, {v: 0}))

    core = _degree_core(g.adj, fv, g.vertex_mask)
    if core != g.vertex_mask:
        if not core:
            return None
        sub, keep = g.induced_subgraph(core)
        inner = _bad_assignment(sub, tuple(fv[v] for v in keep))
        if inner is None:
            return None
        return tuple(_fill_fresh(n, fv, {keep[i]: m for i, m in enumerate(inner)}))

    # nested lists {0..f(v)-1}: catches every graph with chi > min f cheaply
    nested = [(1 << fv[v]) - 1 for v in range(n)]
    if _list_coloring_masks(g.adj, nested) is None:
        return tuple(nested)

    if _polynomial_certificate(g, fv):
        return None

    for v in range(n):
        sub, keep = g.induced_subgraph(g.vertex_mask & ~(1 << v))
        inner = _bad_assignment(sub, tuple(fv[u] for u in keep))
        if inner is not None:
            return tuple(_fill_fresh(n, fv, {keep[i]: m for i, m in enumerate(inner)}))

    return _private_free_search(g, fv)


def _search_order(g: Graph) -> list[int]:
    """Vertex order keeping the active frontier small.

    Minimises the sum of ``3 ** |frontier|`` over prefixes by a DP over
    vertex subsets (the frontier of a prefix depends only on the prefix as a
    set), which tracks the size of the colorings kept by the search.
    """
    n = g.n
    full = g.vertex_mask
    adj = g.adj

    def frontier(done: int) -> int:
        return sum(1 for v in bits(done) if adj[v] & ~done & full)

    cost = {full: 0}
    choice: dict[int, int] = {}
    for size in range(n - 1, -1, -1):
        for done in _subsets_of_size(n, size):
            best = None
            for v in bits(full & ~done):
                nxt = done | 1 << v
                c = 3 ** frontier(nxt) + cost[nxt]
                if best is None or c < best:
                    best, choice[done] = c, v
            cost[done] = best
    order, done = [], 0
    while done != full:
        v = choice[done]
        order.append(v)
        done |= 1 << v
    return order


def _subsets_of_size(n: int, size: int) -> Iterator[int]:
    for combo in combinations(range(n), size):
        yield sum(1 << v for v in combo)


def _symmetric_classes(live: list[int], lists, unc, colorings) -> list[list[int]]:
    """Partition live colors into classes on which every permutation fixes the state."""
    k = len(lists)
    groups: dict[tuple, list[int]] = {}
    for c in live:
        groups.setdefault(tuple((lists[j] >> c & 1, unc[j] >> c & 1) for j in range(k)), []).append(c)
    classes = []
    for group in groups.values():
        if len(group) == 1:
            classes.append(group)
            continue
        parent = {c: c for c in group}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for a, b in combinations(group, 2):
            if find(a) == find(b):
                continue
            swap = {a: b, b: a}
            if all(tuple(swap.get(c, c) for c in phi) in colorings for phi in colorings):
                parent[find(b)] = find(a)
        merged: dict[int, list[int]] = {}
        for c in group:
            merged.setdefault(find(c), []).append(c)
        classes.extend(merged.values())
    return classes


def _class_choices(classes: list[list[int]], need: int, allowed: int) -> Iterator[int]:
    """Masks taking ``need`` colors within ``allowed``, one per class-count pattern."""
    classes = [[c for c in cl if allowed >> c & 1] for cl in classes]
    classes = [cl for cl in classes if cl]

    def rec(i: int, need: int, acc: int) -> Iterator[int]:
        if need == 0:
            yield acc
            return
        if i == len(classes):
            return
        cl = classes[i]
        for r in range(min(need, len(cl)), -1, -1):
            m = acc
            for c in cl[:r]:
                m |= 1 << c
            yield from rec(i + 1, need - r, m)

    yield from rec(0, need, 0)


def _private_free_search(g: Graph, fv: tuple[int, ...]) -> tuple[int, ...] | None:
    """Look for a bad assignment in which no list has a private color.

    Vertices are assigned lists one at a time.  The state after a prefix
    keeps, for the *active* vertices (assigned, with an unassigned
    neighbour), their lists, the colors of their lists not yet seen in a
    neighbour's list, and the set of colorings of the active vertices that
    extend to a proper list coloring of the whole prefix.  Colors outside the
    active lists behave exactly like unused ones, so the state is keyed up to
    a relabelling of the live colors and dead ends are memoised.

    Cutoff: if some surviving coloring leaves the unassigned vertices ``R``
    choosable with sizes ``f(w) - |colors on w's assigned neighbours|``,
    that coloring extends whatever lists ``R`` gets, so no bad completion
    exists below this node.
    """
    n = g.n
    adj = g.adj
    order = _search_order(g)
    pos = {v: i for i, v in enumerate(order)}
    last_nbr = [max(pos[u] for u in bits(adj[v])) for v in order]
    rest_graph = [g.induced_subgraph(sum(1 << v for v in order[i:])) for i in range(n + 1)]
    assigned = [0] * n
    failed: set[tuple] = set()

    def state_key(i, lists, unc, colorings):
        live = 0
        for m in lists:
            live |= m
        k = len(lists)
        sig = sorted(bits(live), key=lambda c: (tuple((lists[j] >> c & 1, unc[j] >> c & 1) for j in range(k)), c))
        relabel = {c: r for r, c in enumerate(sig)}

        def rl(m):
            out = 0
            for c in bits(m):
                out |= 1 << relabel[c]
            return out

        return (
            i,
            tuple(rl(m) for m in lists),
            tuple(rl(m) for m in unc),
            tuple(sorted(tuple(relabel[c] for c in phi) for phi in colorings)),
        )

    def remainder_always_colorable(i, active, colorings) -> bool:
        sub, keep = rest_graph[i]
        nbr_idx = [[j for j, u in enumerate(active) if adj[w] >> u & 1] for w in keep]
        reduced = set()
        for phi in colorings:
            vec = []
            for w, idx in zip(keep, nbr_idx):
                seen = 0
                for j in idx:
                    seen |= 1 << phi[j]
                vec.append(max(fv[w] - popcount(seen), 0))
            reduced.add(tuple(vec))
        # only undominated vectors need checking
        tops = [a for a in reduced if not any(b != a and all(x <= y for x, y in zip(a, b)) for b in reduced)]
        return any(_bad_assignment(sub, vec) is None for vec in tops)

    def step(i, active, lists, unc, colorings, next_color) -> bool:
        v = order[i]
        f = fv[v]
        earlier = [j for j, u in enumerate(active) if adj[v] >> u & 1]
        cover = 0
        live = 0
        for j, m in enumerate(lists):
            live |= m
            if adj[v] >> active[j] & 1:
                cover |= m
        has_future = last_nbr[i] > i
        leaving = [j for j, u in enumerate(active) if last_nbr[pos[u]] == i]
        stay = [j for j in range(len(active)) if last_nbr[pos[active[j]]] != i]
        new_active = tuple(active[j] for j in stay) + ((v,) if has_future else ())

        # colorings grouped by the colors they put on v's assigned neighbours
        by_taken: dict[int, set[tuple[int, ...]]] = {}
        for phi in colorings:
            taken = 0
            for j in earlier:
                taken |= 1 << phi[j]
            by_taken.setdefault(taken, set()).add(tuple(phi[j] for j in stay))

        classes = _symmetric_classes(list(bits(live)), lists, unc, colorings)
        if has_future:
            choices = (
                (reused, f - s)
                for s in range(min(f, popcount(live)), -1, -1)
                for reused in _class_choices(classes, s, live)
            )
        else:
            choices = ((reused, 0) for reused in _class_choices(classes, f, cover))

        for reused, fresh in choices:
            lst = reused | ((1 << fresh) - 1) << next_color

            new_unc = list(unc)
            for j in earlier:
                new_unc[j] &= ~lst
            if any(new_unc[j] for j in leaving):
                continue

            new_col = set()
            for taken, bases in by_taken.items():
                avail = lst & ~taken
                if not avail:
                    continue
                if has_future:
                    for c in bits(avail):
                        new_col.update(base + (c,) for base in bases)
                else:
                    new_col.update(bases)

            assigned[v] = lst
            if not new_col:
                return True
            if i == n - 1:
                continue
            nl = tuple(lists[j] for j in stay) + ((lst,) if has_future else ())
            nu = tuple(new_unc[j] for j in stay) + ((lst & ~cover,) if has_future else ())
            key = state_key(i + 1, nl, nu, new_col)
            if key in failed:
                continue
            if not remainder_always_colorable(i + 1, new_active, new_col):
                if step(i + 1, new_active, nl, nu, new_col, next_color + fresh):
                    return True
            failed.add(key)
        return False

    if step(0, (), (), (), {()}, 0):
        return tuple(assigned)
    return None


def is_choosable(g: Graph, f: int | Sequence[int], limit: int = CHOOSABILITY_LIMIT) -> ChoosabilityVerdict:
    """Decide f-choosability, returning a bad list assignment when there is one.

    Cost grows steeply with ``sum(f)``: f=2 is instant up to the limit and
    most f=3 graphs on seven vertices take milliseconds, but a dense
    3-chromatic graph whose polynomial certificate fails can need minutes
    (the join of three independent vertices with 2K2 is the slowest on
    seven vertices), and n=10 with f=3 can take far longer.
    """
    if g.n > limit:
        raise CapacityError(f"is_choosable is limited to {limit} vertices, got {g.n}")
    fv = size_vector(g, f)
    bad = _bad_assignment(g, fv)
    if bad is None:
        return ChoosabilityVerdict(True)
    witness = ListAssignment.from_masks(bad)
    assert witness.sizes() == fv and not is_colorable_with_lists(g, witness)
    return ChoosabilityVerdict(False, witness)


# -- paintability ------------------------------------------------------------

def _maximal_independent_sets(adj: Sequence[int], within: int) -> Iterator[int]:
    """Maximal independent subsets of ``G[within]`` (Bron-Kerbosch on the complement)."""

    def rec(chosen: int, cand: int, excl: int) -> Iterator[int]:
        if not cand and not excl:
            yield chosen
            return
        # pivot: every maximal set avoiding the pivot contains one of its neighbours
        pivot = max(bits(cand | excl), key=lambda u: popcount(adj[u] & cand))
        for v in bits(cand & (adj[pivot] | 1 << pivot)):
            closed = adj[v] | 1 << v
            yield from rec(chosen | 1 << v, cand & ~closed, excl & ~closed)
            cand &= ~(1 << v)
            excl |= 1 << v

    yield from rec(0, within, 0)


def is_paintable(g: Graph, f: int | Sequence[int], limit: int = PAINTABILITY_LIMIT) -> bool:
    """Decide f-paintability by exhaustive Lister/Painter game search."""
    if g.n > limit:
        raise CapacityError(f"is_paintable is limited to {limit} vertices, got {g.n}")
    fv = size_vector(g, f)
    return _paintable(g.adj, g.vertex_mask, fv)


@lru_cache(maxsize=1 << 18)
def _paintable(adj: tuple[int, ...], mask: int, fv: tuple[int, ...]) -> bool:
    mask = _degree_core(adj, fv, mask)
    if not mask:
        return True
    if any(fv[v] == 0 for v in bits(mask)):
        return False
    key_f = tuple(fv[v] if mask >> v & 1 else 0 for v in range(len(fv)))
    if key_f != fv:
        return _paintable(adj, mask, key_f)

    marked = mask
    while marked:
        painter_ok = False
        for ind in sorted(_maximal_independent_sets(adj, marked), key=lambda m: -popcount(m)):
            nf = list(fv)
            for v in bits(marked & ~ind):
                nf[v] -= 1
            if _paintable(adj, mask & ~ind, tuple(nf)):
                painter_ok = True
                break
        if not painter_ok:
            return False
        marked = (marked - 1) & mask
    return True
