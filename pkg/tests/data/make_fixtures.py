"""Regenerate the graph6 fixture streams from the networkx graph atlas.

The atlas lists every graph on at most seven vertices up to isomorphism,
so it serves as the external enumerator.  Run from this directory:

    python make_fixtures.py
"""

from __future__ import annotations

from pathlib import Path

import networkx as nx

HERE = Path(__file__).parent


def g6(g) -> str:
    return nx.to_graph6_bytes(g, header=False).decode("ascii").strip()


def write(name: str, graphs) -> None:
    lines = [g6(g) for g in graphs]
    (HERE / name).write_text("\n".join(lines) + "\n", encoding="ascii")
    print(f"{name}: {len(lines)} graphs")


def main() -> None:
    atlas = nx.graph_atlas_g()
    nonempty = [g for g in atlas if g.number_of_nodes() >= 1]
    write("order4_all.g6", [g for g in atlas if g.number_of_nodes() == 4])
    write("upto5_all.g6", [g for g in nonempty if g.number_of_nodes() <= 5])
    write("upto6_all.g6", [g for g in nonempty if g.number_of_nodes() <= 6])
    write("upto7_all.g6", nonempty)
    write(
        "upto7_connected_mindeg3.g6",
        [
            g
            for g in nonempty
            if g.number_of_nodes() >= 4 and nx.is_connected(g) and min(d for _, d in g.degree()) >= 3
        ],
    )


if __name__ == "__main__":
    main()
