"""graph6 encoding of simple graphs.

Format: an order field followed by the upper triangle of the adjacency
matrix in column-major order (``(0,1), (0,2), (1,2), (0,3), ...``), packed
into 6-bit groups, each written as ``chr(63 + value)``.
"""
from __future__ import annotations

from typing import Iterable, Iterator, TextIO

import numpy as np

from .errors import Graph6Error, ModeError
from .graph_core import Multigraph

HEADER = ">>graph6<<"


def _encode_order(n: int) -> str:
    if n < 0:
        raise Graph6Error("negative order")
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error(f"order {n} too large for graph6")


def emit_graph6(g: Multigraph) -> str:
    if not g.is_simple():
        raise ModeError("graph6 encodes simple graphs only")
    n = g.n
    a = g.adj
    bits = [int(a[i, j]) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return _encode_order(n) + body


def _decode_order(s: str) -> tuple[int, int]:
    def val(i):
        if i >= len(s):
            raise Graph6Error("truncated order field", i)
        v = ord(s[i]) - 63
        if not 0 <= v <= 63:
            raise Graph6Error(f"invalid character {s[i]!r}", i)
        return v

    if not s:
        raise Graph6Error("empty graph6 string", 0)
    if s[0] != "~":
        return val(0), 1
    if len(s) > 1 and s[1] == "~":
        n = 0
        for i in range(2, 8):
            n = (n << 6) | val(i)
        return n, 8
    n = 0
    for i in range(1, 4):
        n = (n << 6) | val(i)
    return n, 4


def parse_graph6(line: str) -> Multigraph:
    s = line.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    n, start = _decode_order(s)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[start:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data characters for n={n}, got {len(body)}",
                          start + min(len(body), need))
    bits = []
    for k, ch in enumerate(body):
        v = ord(ch) - 63
        if not 0 <= v <= 63:
            raise Graph6Error(f"invalid character {ch!r}", start + k)
        bits.extend((v >> sh) & 1 for sh in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("non-zero padding bits", len(s) - 1)
    a = np.zeros((n, n), dtype=np.int64)
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                a[i, j] = a[j, i] = 1
            k += 1
    return Multigraph(a)


def iter_graph6_lines(lines: Iterable[str]) -> Iterator[str]:
    """Yield data lines, skipping blanks and ``>>`` comment lines."""
    for line in lines:
        line = line.strip()
        if not line or line == HEADER or (line.startswith(">>") and not line.startswith(HEADER)):
            continue
        yield line


def read_graph6_file(fh: TextIO) -> Iterator[str]:
    yield from iter_graph6_lines(fh)
