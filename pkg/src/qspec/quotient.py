"""Quotient matrices of vertex partitions and eigenvalue lifting."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, PreconditionError
from .graph_core import ApexFamily
from .numeric import DEFAULT_TOL, COMPARE_TOL, sym_eigen, _irreducible


@dataclass(frozen=True)
class QuotientMatrix:
    parts: tuple[tuple[int, ...], ...]
    N: tuple[tuple[Fraction, ...], ...]
    equitable: bool

    @property
    def k(self) -> int:
        return len(self.parts)

    def as_array(self, dtype=float) -> np.ndarray:
        if dtype is int:
            if any(x.denominator != 1 for row in self.N for x in row):
                raise DomainError("quotient matrix has non-integer entries")
            return np.array([[int(x) for x in row] for row in self.N], dtype=np.int64)
        return np.array([[float(x) for x in row] for row in self.N], dtype=dtype)


def _check_partition(parts: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    cells = tuple(tuple(int(v) for v in cell) for cell in parts)
    if any(len(c) == 0 for c in cells):
        raise DomainError("partition cells must be non-empty")
    flat = [v for c in cells for v in c]
    if sorted(flat) != list(range(n)):
        raise DomainError("cells must be disjoint and cover every vertex exactly once")
    return cells


def quotient_matrix(M, parts: Sequence[Sequence[int]]) -> QuotientMatrix:
    """Average block row sums; ``equitable`` iff every block has constant row sums."""
    a = np.asarray(M)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("matrix must be square")
    cells = _check_partition(parts, a.shape[0])
    rows = []
    equitable = True
    for ci in cells:
        row = []
        for cj in cells:
            sums = [int(s) for s in a[np.ix_(ci, cj)].sum(axis=1)]
            if len(set(sums)) > 1:
                equitable = False
            row.append(Fraction(sum(sums), len(sums)))
        rows.append(tuple(row))
    return QuotientMatrix(cells, tuple(rows), equitable)


def matching_quotient(n: int, q: int) -> np.ndarray:
    """3x3 quotient of ``K1 ∨ (cycles ∪ qK2)`` for cells apex / cycles / matching."""
    return np.array([[n - 1, n - 1 - 2 * q, 2 * q],
                     [1, 5, 0],
                     [1, 0, 3]], dtype=np.int64)


def p3_matrix(n: int, q: int) -> np.ndarray:
    """5x5 quotient of ``K1 ∨ (P3 ∪ cycles ∪ qK2)``.

    Cells: apex, cycle vertices, the two ends of P3, the middle of P3,
    the matching vertices.
    """
    return np.array([[n - 1, n - 2 * q - 4, 2, 1, 2 * q],
                     [1, 5, 0, 0, 0],
                     [1, 0, 2, 1, 0],
                     [1, 0, 2, 3, 0],
                     [1, 0, 0, 0, 3]], dtype=np.int64)


def family_blocks(fam: ApexFamily) -> tuple[list[list[int]], list[list[int]], int]:
    """Vertex indices of each path, each cycle, and the apex in ``realize(fam)``."""
    k = 0
    paths = []
    for l in fam.paths:
        paths.append(list(range(k, k + l)))
        k += l
    cycles = []
    for s in fam.cycles:
        cycles.append(list(range(k, k + s)))
        k += s
    return paths, cycles, k


def matching_partition(fam: ApexFamily) -> list[list[int]]:
    """Cells apex / cycle vertices / K2 vertices (empty cells dropped)."""
    if any(l != 2 for l in fam.paths):
        raise DomainError("every path must be a K2 component")
    paths, cycles, apex = family_blocks(fam)
    cells = [[apex], [v for c in cycles for v in c], [v for p in paths for v in p]]
    return [c for c in cells if c]


def p3_partition(fam: ApexFamily) -> list[list[int]]:
    """Cells apex / cycles / P3 ends / P3 middle / K2 vertices (empty cells dropped)."""
    if sorted(l for l in fam.paths if l != 2) != [3]:
        raise DomainError("family must contain exactly one P3 and otherwise only K2 paths")
    paths, cycles, apex = family_blocks(fam)
    p3 = next(p for p in paths if len(p) == 3)
    k2 = [v for p in paths if len(p) == 2 for v in p]
    cells = [[apex], [v for c in cycles for v in c], [p3[0], p3[2]], [p3[1]], k2]
    return [c for c in cells if c]


@dataclass
class LiftReport:
    quotient_eigenvalues: list[float]
    matched: list[tuple[float, float | None]]
    top_quotient: float
    top_host: float
    tol: float

    @property
    def all_found(self) -> bool:
        return all(h is not None for _, h in self.matched)

    @property
    def tops_coincide(self) -> bool:
        return abs(self.top_quotient - self.top_host) <= self.tol

    @property
    def ok(self) -> bool:
        return self.all_found and self.tops_coincide


def lift_check(M, qm: QuotientMatrix, tol: float = COMPARE_TOL) -> LiftReport:
    """Check that every quotient eigenvalue is a host eigenvalue and the tops agree.

    Matching is greedy over descending order; each host eigenvalue can be
    consumed once, so multiplicities are respected.
    """
    if not qm.equitable:
        raise PreconditionError("quotient matrix is not equitable")
    a = np.asarray(M, dtype=float)
    if np.any(a < 0):
        raise PreconditionError("matrix has negative entries")
    if a.shape[0] > 1 and not _irreducible(a - np.diag(np.diag(a))):
        raise PreconditionError("matrix is reducible")
    host = list(sym_eigen(a, DEFAULT_TOL, vectors=False).values)
    quot = sorted((float(x.real) for x in np.linalg.eigvals(qm.as_array())), reverse=True)
    used = [False] * len(host)
    matched = []
    for lam in quot:
        hit = None
        for i, h in enumerate(host):
            if not used[i] and abs(h - lam) <= tol:
                used[i] = True
                hit = h
                break
        matched.append((lam, hit))
    return LiftReport(quot, matched, quot[0], host[0], tol)
