"""Headerless graph6 encoding, bit-compatible with nauty's ``geng`` output.

Layout: a size field, then the upper triangle ``x(0,1), x(0,2), x(1,2),
x(0,3), ...`` packed six bits per byte, most significant bit first, each
byte offset by 63 and the last one zero-padded.  Sizes up to 62 take one
byte ``n + 63``; 63 and 64 take ``~`` followed by three 6-bit groups.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import CapacityError, Graph6Error
from .graph import MAX_VERTICES, Graph


def _body_length(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def encode(g: Graph) -> str:
    n = g.n
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 encoding supports n <= {MAX_VERTICES}")
    if n <= 62:
        out = [chr(n + 63)]
    else:
        out = ["~"] + [chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0)]
    acc = nbits = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def decode(text: str) -> Graph:
    """Parse one graph6 line (a trailing newline is tolerated)."""
    text = text.rstrip("\r\n")
    if not text:
        raise Graph6Error("empty graph6 string", 0)
    for pos, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside the graph6 range 63..126", pos)
    vals = [ord(ch) - 63 for ch in text]
    if vals[0] < 63:
        n, start = vals[0], 1
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated extended size field", len(vals))
        if vals[1] == 63:
            raise Graph6Error("8-byte size fields are beyond the supported range", 1)
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        if n < 63:
            raise Graph6Error("extended size field used for n < 63", 1)
        start = 4
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 string encodes n={n}, above the {MAX_VERTICES}-vertex limit")
    need = _body_length(n)
    have = len(vals) - start
    if have < need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, found {have}", len(vals))
    if have > need:
        raise Graph6Error("trailing bytes after graph data", start + need)

    adj = [0] * n
    pos = start
    bit = 5
    for j in range(1, n):
        for i in range(j):
            if vals[pos] >> bit & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit -= 1
            if bit < 0:
                bit, pos = 5, pos + 1
    if bit != 5 and vals[pos] & ((1 << (bit + 1)) - 1):
        raise Graph6Error("nonzero padding bits", pos)
    return Graph(n, tuple(adj))


def read_lines(lines: Iterable[str]) -> Iterator[tuple[int, str, Graph | Exception]]:
    """Decode a stream, yielding ``(line_number, text, graph_or_error)``.

    Line numbers start at 1.  Blank lines are skipped; bad lines yield the
    exception instead of stopping the stream.
    """
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        try:
            yield lineno, text, decode(text)
        except (Graph6Error, CapacityError) as exc:
            yield lineno, text, exc
