"""Q-spectral moments and the degree-count systems they induce.

For a simple graph with degrees ``d_i``, ``m`` edges and ``c3`` triangles::

    T1 = 2m,   T2 = Σd² + 2m,   T3 = 6·c3 + Σd³ + 3Σd².

Two Q-cospectral graphs share T1..T3, which pins down how many non-apex
vertices have each degree once the maximum degree is fixed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import ModeError
from .graph_core import Multigraph, max_degree_vertex, triangle_count


@dataclass(frozen=True)
class MomentProfile:
    n: int
    m: int
    degree_sums: tuple[int, int, int]  # Σd, Σd², Σd³
    triangles: int
    T1: int
    T2: int
    T3: int
    max_degree: int

    def moments(self) -> tuple[int, int, int]:
        return (self.T1, self.T2, self.T3)


def moments_combinatorial(g: Multigraph) -> MomentProfile:
    if not g.is_simple():
        raise ModeError("moment identities need a simple graph")
    d = [int(x) for x in g.degrees()]
    s1, s2, s3 = sum(d), sum(x * x for x in d), sum(x ** 3 for x in d)
    c3 = triangle_count(g)
    return MomentProfile(
        n=g.n, m=g.m, degree_sums=(s1, s2, s3), triangles=c3,
        T1=2 * g.m, T2=s2 + 2 * g.m, T3=6 * c3 + s3 + 3 * s2,
        max_degree=max(d, default=0),
    )


def moments_spectral(values, k_max: int = 3) -> list[float]:
    """Power sums ``Σ σ_i^k`` for ``k = 1..k_max``."""
    v = np.asarray(getattr(values, "values", values), dtype=float)
    return [float(np.sum(v ** k)) for k in range(1, k_max + 1)]


@dataclass(frozen=True)
class DegreeCounts:
    """Counts of non-apex vertices of degree 1..4 and the implied triangle count."""

    n1: int
    n2: int
    n3: int
    n4: int
    triangles: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n1, self.n2, self.n3, self.n4)


def degree_count_system(target: MomentProfile, d1: int):
    """Affine solution of the first three moment equations in terms of ``ñ4``.

    Unknowns are ``ñ1..ñ4``, the numbers of degree-1..4 vertices other than
    the maximum-degree vertex (whose degree is ``d1``).  Equal order, T1 and
    T2 give three equations; solving for ``ñ1, ñ2, ñ3`` returns rationals
    ``(base, slope)`` with ``ñ_k = base_k + slope_k·ñ4``.
    """
    rhs = [
        Fraction(target.n - 1),
        Fraction(target.degree_sums[0] - d1),
        Fraction(target.degree_sums[1] - d1 * d1),
    ]
    # columns for ñ1, ñ2, ñ3; ñ4 moved to the right-hand side with powers of 4
    a = [[Fraction(k ** p) for k in (1, 2, 3)] for p in range(3)]
    c4 = [Fraction(4 ** p) for p in range(3)]
    base = _solve3(a, rhs)
    slope = _solve3(a, [-x for x in c4])
    return base, slope


def _solve3(a, b):
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(3):
        piv = next(r for r in range(col, 3) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        for r in range(3):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][3] / m[i][i] for i in range(3)]


def solve_degree_counts(target: MomentProfile, d1_candidate: int,
                        triangles_H: Optional[int] = None) -> list[DegreeCounts]:
    """All non-negative integer degree counts consistent with ``target``'s moments.

    The first three equations leave one free unknown (``ñ4``); every
    admissible value is tried and the T3 equation then yields the triangle
    count of the hypothetical cospectral mate.  When ``triangles_H`` is
    given, solutions with a different triangle count are discarded.  An
    empty list means the system is infeasible.
    """
    base, slope = degree_count_system(target, d1_candidate)
    sols = []
    for n4 in range(target.n):
        vals = [b + s * n4 for b, s in zip(base, slope)] + [Fraction(n4)]
        if any(v < 0 or v.denominator != 1 for v in vals):
            continue
        counts = [int(v) for v in vals]
        cube = sum(c * k ** 3 for c, k in zip(counts, (1, 2, 3, 4))) + d1_candidate ** 3
        six_c3 = target.T3 - 3 * target.degree_sums[1] - cube
        if six_c3 < 0 or six_c3 % 6:
            continue
        c3 = six_c3 // 6
        if triangles_H is not None and c3 != triangles_H:
            continue
        sols.append(DegreeCounts(*counts, triangles=c3))
    return sols


def non_apex_histogram(g: Multigraph) -> tuple[int, int, int, int]:
    """Counts of degree 1..4 among vertices other than the max-degree one."""
    skip = max_degree_vertex(g)
    deg = [int(x) for i, x in enumerate(g.degrees()) if i != skip]
    return tuple(deg.count(k) for k in (1, 2, 3, 4))
