"""Simple graphs and digon multigraphs, apex-join families, Q-matrix assembly.

Every graph is a :class:`Multigraph`: an immutable symmetric matrix of edge
multiplicities in {0, 1, 2} with zero diagonal.  Multiplicity 2 encodes a
digon (two parallel edges), which counts twice towards the degree of each
endpoint.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ModeError

MAX_MULTIPLICITY = 2


class Multigraph:
    """Undirected graph with edge multiplicities 0, 1 or 2 and no loops.

    Parameters
    ----------
    adj : array_like
        Square symmetric integer matrix of edge multiplicities.

    Instances are immutable and hashable, so they can be used as dict keys
    and shared freely between threads.
    """

    __slots__ = ("_adj", "_hash")

    def __init__(self, adj):
        a = np.array(adj, dtype=np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError(f"adjacency must be square, got shape {a.shape}")
        if np.any(np.diag(a) != 0):
            raise DomainError("loops are not supported (non-zero diagonal)")
        if not np.array_equal(a, a.T):
            raise DomainError("adjacency must be symmetric")
        if a.size and (a.min() < 0 or a.max() > MAX_MULTIPLICITY):
            raise DomainError("edge multiplicities must lie in {0, 1, 2}")
        a = a.astype(np.int8)
        a.flags.writeable = False
        self._adj = a
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Multigraph":
        """Build from an edge list; repeated pairs raise the multiplicity."""
        a = np.zeros((n, n), dtype=np.int64)
        for u, v in edges:
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            a[u, v] += 1
            a[v, u] += 1
        return cls(a)

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def m(self) -> int:
        """Number of edges, counting a digon as two."""
        return int(self._adj.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1, dtype=np.int64)

    def degree(self, v: int) -> int:
        return int(self._adj[v].sum())

    def is_simple(self) -> bool:
        return self.n == 0 or int(self._adj.max()) <= 1

    def edges(self) -> list[tuple[int, int]]:
        """Distinct vertex pairs ``(u, v)`` with ``u < v`` and multiplicity > 0."""
        iu, ju = np.nonzero(np.triu(self._adj))
        return [(int(u), int(v)) for u, v in zip(iu, ju)]

    def neighbors(self, v: int) -> list[int]:
        return [int(u) for u in np.nonzero(self._adj[v])[0]]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self._adj.tobytes()))
        return self._hash

    def __repr__(self):
        kind = "Graph" if self.is_simple() else "Multigraph"
        return f"{kind}(n={self.n}, m={self.m})"


def build_atom(kind: str, size: int) -> Multigraph:
    """Return ``C_size``, ``P_size``, ``K_size`` or the edgeless graph.

    A cycle of size 2 is the digon ``[[0, 2], [2, 0]]``.
    """
    if not isinstance(size, (int, np.integer)) or size < 1:
        raise DomainError(f"size must be a positive integer, got {size!r}")
    a = np.zeros((size, size), dtype=np.int64)
    if kind == "cycle":
        if size < 2:
            raise DomainError("a cycle needs at least 2 vertices")
        if size == 2:
            a[0, 1] = a[1, 0] = 2
        else:
            for i in range(size):
                j = (i + 1) % size
                a[i, j] = a[j, i] = 1
    elif kind == "path":
        for i in range(size - 1):
            a[i, i + 1] = a[i + 1, i] = 1
    elif kind == "complete":
        a[:] = 1
        np.fill_diagonal(a, 0)
    elif kind == "empty":
        pass
    else:
        raise DomainError(f"unknown atom kind {kind!r}")
    return Multigraph(a)


def disjoint_union(a: Multigraph, b: Multigraph) -> Multigraph:
    n = a.n + b.n
    out = np.zeros((n, n), dtype=np.int64)
    out[: a.n, : a.n] = a.adj
    out[a.n :, a.n :] = b.adj
    return Multigraph(out)


def union_all(parts: Sequence[Multigraph]) -> Multigraph:
    n = sum(p.n for p in parts)
    out = np.zeros((n, n), dtype=np.int64)
    k = 0
    for p in parts:
        out[k : k + p.n, k : k + p.n] = p.adj
        k += p.n
    return Multigraph(out)


def apex_join(g: Multigraph) -> Multigraph:
    """``K1 ∨ g``; the new vertex gets index ``g.n`` (last)."""
    n = g.n + 1
    out = np.zeros((n, n), dtype=np.int64)
    out[:-1, :-1] = g.adj
    out[-1, :-1] = 1
    out[:-1, -1] = 1
    return Multigraph(out)


@dataclass(frozen=True)
class ApexFamily:
    """Symbolic ``K1 ∨ (C_{s_1} ∪ ... ∪ C_{s_t} ∪ P_{l_1} ∪ ... ∪ P_{l_r})``.

    ``cycles`` holds the cycle lengths (2 means a digon) and ``paths`` the
    path orders (2 means a ``K2`` component).  Order is significant: it fixes
    the vertex numbering of :func:`realize`.
    """

    cycles: tuple[int, ...] = ()
    paths: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(int(s) for s in self.cycles))
        object.__setattr__(self, "paths", tuple(int(l) for l in self.paths))
        if any(s < 2 for s in self.cycles):
            raise DomainError(f"cycle lengths must be >= 2, got {self.cycles}")
        if any(l < 2 for l in self.paths):
            raise DomainError(f"path orders must be >= 2, got {self.paths}")

    @property
    def n(self) -> int:
        return 1 + sum(self.cycles) + sum(self.paths)

    @property
    def q(self) -> int:
        """Number of ``K2`` components."""
        return sum(1 for l in self.paths if l == 2)

    @property
    def t(self) -> int:
        return len(self.cycles)

    @property
    def m(self) -> int:
        return sum(self.cycles) + sum(l - 1 for l in self.paths) + self.n - 1

    @property
    def has_digons(self) -> bool:
        return any(s == 2 for s in self.cycles)

    def canonical(self) -> "ApexFamily":
        """Same graph up to isomorphism, with components sorted descending."""
        return ApexFamily(tuple(sorted(self.cycles, reverse=True)),
                          tuple(sorted(self.paths, reverse=True)))

    @classmethod
    def matching(cls, cycles: Sequence[int], q: int) -> "ApexFamily":
        """``K1 ∨ (cycles ∪ qK2)``, the matching families."""
        return cls(tuple(cycles), (2,) * q)

    def __str__(self):
        from .familyspec import format_family

        return format_family(self)


def realize(fam: ApexFamily, *, multigraph: bool = False) -> Multigraph:
    """Build the graph of ``fam``.

    Vertex order: path vertices (each path in its natural order, paths in
    declaration order), then cycle vertices, then the apex.
    """
    if fam.has_digons and not multigraph:
        raise ModeError("family contains digons; pass multigraph=True")
    parts = [build_atom("path", l) for l in fam.paths]
    parts += [build_atom("cycle", s) for s in fam.cycles]
    base = union_all(parts) if parts else Multigraph(np.zeros((0, 0)))
    return apex_join(base)


def q_matrix(g: Multigraph) -> np.ndarray:
    """Signless Laplacian ``D + A`` as an int64 array."""
    a = g.adj.astype(np.int64)
    return a + np.diag(a.sum(axis=1))


def delete_edge(g: Multigraph, u: int, v: int) -> Multigraph:
    """Remove one copy of the edge ``uv`` (a digon becomes a single edge)."""
    n = g.n
    if not (0 <= u < n and 0 <= v < n) or u == v:
        raise DomainError(f"bad vertex pair ({u}, {v}) for n={n}")
    if g.adj[u, v] < 1:
        raise DomainError(f"no edge between {u} and {v}")
    a = g.adj.astype(np.int64)
    a[u, v] -= 1
    a[v, u] -= 1
    return Multigraph(a)


def delete_vertex(g: Multigraph, v: int) -> Multigraph:
    if not 0 <= v < g.n:
        raise DomainError(f"vertex {v} out of range for n={g.n}")
    keep = [i for i in range(g.n) if i != v]
    return Multigraph(g.adj[np.ix_(keep, keep)])


def add_edge(g: Multigraph, u: int, v: int) -> Multigraph:
    a = g.adj.astype(np.int64)
    a[u, v] += 1
    a[v, u] += 1
    return Multigraph(a)


def triangle_count(g: Multigraph) -> int:
    """Number of triangles, ``trace(A^3) / 6``; simple graphs only."""
    if not g.is_simple():
        raise ModeError("triangle counting requires a simple graph")
    a = g.adj.astype(np.int64)
    return int(np.trace(a @ a @ a)) // 6


def max_degree_vertex(g: Multigraph) -> int:
    """Lowest-indexed vertex of maximum degree."""
    if g.n == 0:
        raise DomainError("empty graph has no maximum-degree vertex")
    return int(np.argmax(g.degrees()))


def degree_histogram(g: Multigraph, exclude_max: bool = False) -> dict[int, int]:
    """Map degree -> number of vertices, optionally skipping one max-degree vertex."""
    deg = [int(d) for d in g.degrees()]
    if exclude_max:
        del deg[max_degree_vertex(g)]
    return dict(sorted(Counter(deg).items()))
