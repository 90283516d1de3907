"""Certify k-critical, k-list-critical and online k-list-critical graphs.

"Every proper subgraph is (k-1)-colorable" only needs single-edge deletions
(plus deletions of isolated vertices): each property is monotone under
taking subgraphs, and every proper subgraph sits inside ``G - e`` for some
edge ``e`` or inside ``G - v`` for an isolated vertex ``v``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import graph6
from .choosability import CHOOSABILITY_LIMIT, PAINTABILITY_LIMIT, ListAssignment, is_choosable, is_paintable
from .errors import CapacityError
from .graph import CHROMATIC_LIMIT, Graph, chromatic_number


class Kind(str, enum.Enum):
    CHROMATIC = "chromatic"
    LIST = "list"
    ONLINE = "online"


class FailureReason(str, enum.Enum):
    COLORABLE_ITSELF = "colorable_itself"
    SOME_SUBGRAPH_NOT_COLORABLE = "some_subgraph_not_colorable"
    MIN_DEGREE_TOO_LOW = "min_degree_too_low"


@dataclass(frozen=True)
class CriticalityReport:
    kind: Kind
    k: int
    verdict: bool
    failure_reason: FailureReason | None = None
    witness_edge: tuple[int, int] | None = None
    bad_assignment: ListAssignment | None = None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.value, "k": self.k, "verdict": self.verdict}
        if self.failure_reason is not None:
            out["failure_reason"] = self.failure_reason.value
        if self.witness_edge is not None:
            out["witness_edge"] = list(self.witness_edge)
        if self.bad_assignment is not None:
            out["bad_assignment"] = self.bad_assignment.to_json()
        return out


def _proper_pieces(g: Graph) -> Iterator[tuple[tuple[int, int] | None, Graph]]:
    """Maximal proper subgraphs: each ``G - e``, and ``G - v`` for isolated ``v``."""
    for u, v in g.edges():
        yield (u, v), g.delete_edge(u, v)
    if g.n > 1:
        for v in range(g.n):
            if not g.adj[v]:
                yield None, g.delete_vertex(v)


def _decide(g: Graph, k: int, kind: Kind, colorable) -> CriticalityReport:
    """Shared skeleton; ``colorable(h)`` answers (k-1)-colorability in the relevant sense."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if g.n and g.min_degree() < k - 1:
        return CriticalityReport(kind, k, False, FailureReason.MIN_DEGREE_TOO_LOW)
    ok, bad = colorable(g)
    if ok:
        return CriticalityReport(kind, k, False, FailureReason.COLORABLE_ITSELF)
    for edge, piece in _proper_pieces(g):
        if not colorable(piece)[0]:
            return CriticalityReport(kind, k, False, FailureReason.SOME_SUBGRAPH_NOT_COLORABLE, edge, bad)
    report = CriticalityReport(kind, k, True, bad_assignment=bad)
    assert g.min_degree() >= k - 1
    return report


def is_k_critical(g: Graph, k: int, limit: int = CHROMATIC_LIMIT) -> CriticalityReport:
    """chi(G) = k and every proper subgraph is (k-1)-colorable."""
    if g.n > limit:
        raise CapacityError(f"is_k_critical is limited to {limit} vertices, got {g.n}")
    return _decide(g, k, Kind.CHROMATIC, lambda h: (chromatic_number(h, limit) <= k - 1, None))


def is_k_list_critical(g: Graph, k: int, limit: int = CHOOSABILITY_LIMIT) -> CriticalityReport:
    """Not (k-1)-choosable while every proper subgraph is."""
    if g.n > limit:
        raise CapacityError(f"is_k_list_critical is limited to {limit} vertices, got {g.n}")

    def colorable(h: Graph):
        verdict = is_choosable(h, k - 1, limit)
        return verdict.choosable, verdict.witness

    return _decide(g, k, Kind.LIST, colorable)


def is_online_k_list_critical(g: Graph, k: int, limit: int = PAINTABILITY_LIMIT) -> CriticalityReport:
    """Not (k-1)-paintable while every proper subgraph is."""
    if g.n > limit:
        raise CapacityError(f"is_online_k_list_critical is limited to {limit} vertices, got {g.n}")
    return _decide(g, k, Kind.ONLINE, lambda h: (is_paintable(h, k - 1, limit), None))


DECIDERS = {
    Kind.CHROMATIC: is_k_critical,
    Kind.LIST: is_k_list_critical,
    Kind.ONLINE: is_online_k_list_critical,
}


def certify(g: Graph, kind: Kind | str, k: int, limit: int | None = None) -> CriticalityReport:
    decider = DECIDERS[Kind(kind)]
    return decider(g, k) if limit is None else decider(g, k, limit)


def annotate_line(index: int, text: str, parsed, kind: Kind | str, k: int, limit: int | None = None) -> dict:
    """One output record of :func:`filter_stream` for an already-decoded line."""
    kind = Kind(kind)
    record: dict = {"index": index, "graph6": text, "kind": kind.value, "k": k}
    if isinstance(parsed, Exception):
        record["error"] = str(parsed)
        return record
    try:
        report = certify(parsed, kind, k, limit)
    except CapacityError as exc:
        record.update(verdict=None, skipped="capacity", detail=str(exc))
        return record
    record.update(report.to_dict())
    return record


def _annotate_job(job) -> dict:
    return annotate_line(*job)


def filter_stream(
    lines: Iterable[str], kind: Kind | str, k: int, limit: int | None = None, mapper=map
) -> Iterator[dict]:
    """Annotate each graph6 line with its criticality verdict, in input order.

    ``index`` is the 1-based line number.  Malformed lines produce a record
    with an ``error`` field; graphs over the solver limit produce
    ``skipped: "capacity"``.  Nothing is dropped silently.  ``mapper`` can
    be swapped for an order-preserving parallel map.
    """
    jobs = ((lineno, text, parsed, Kind(kind), k, limit) for lineno, text, parsed in graph6.read_lines(lines))
    yield from mapper(_annotate_job, jobs)
