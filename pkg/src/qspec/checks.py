"""Executable inequality and structure checks on Q-spectra.

Strict inequalities are checked with a separation margin of ``10*tol``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, VerificationError
from .exact import (char_poly, exact_multiplicity, largest_root_bracket, narrow_bracket,
                    sturm_sequence)
from .graph_core import ApexFamily, Multigraph, delete_edge, q_matrix, realize
from .numeric import COMPARE_TOL, DEFAULT_TOL, perron_vector, q_spectrum, sym_eigen

MARGIN_FACTOR = 10


def interlacing_check(g: Multigraph, e: tuple[int, int], tol: float = COMPARE_TOL,
                      *, other: Multigraph | None = None) -> bool:
    """``σ1(G) ≥ σ1(G-e) ≥ σ2(G) ≥ ... ≥ σn(G) ≥ σn(G-e) ≥ 0`` within tol.

    ``other`` replaces ``G - e`` in the comparison; it exists so negative
    controls can feed in a graph that is not an edge deletion of ``g``.
    """
    if g.n < 3:
        raise DomainError("interlacing needs n >= 3")
    u, v = e
    h = delete_edge(g, u, v) if other is None else other
    big = q_spectrum(g).values
    small = q_spectrum(h).values
    if len(big) != len(small):
        return False
    chain = np.empty(2 * len(big))
    chain[0::2] = big
    chain[1::2] = small
    return bool(np.all(np.diff(chain) <= tol) and chain[-1] >= -tol)


def principal_bound_check(g: Multigraph, X: Sequence[int], qvals: Sequence[float],
                          tol: float = COMPARE_TOL) -> bool:
    """``λ_i(diag(qvals) + A(G[X])) ≤ σ_i(G)`` for ``i = 1..|X|``."""
    X = [int(x) for x in X]
    if len(X) != len(qvals) or len(set(X)) != len(X):
        raise DomainError("X must be distinct vertices, one qval per vertex")
    deg = g.degrees()
    for x, qv in zip(X, qvals):
        if not 0 <= x < g.n:
            raise DomainError(f"vertex {x} out of range")
        if not 0 <= qv <= deg[x]:
            raise DomainError(f"qval {qv} outside [0, deg({x})={deg[x]}]")
    sub = g.adj[np.ix_(X, X)].astype(float) + np.diag(np.asarray(qvals, dtype=float))
    lam = sym_eigen(sub, DEFAULT_TOL, vectors=False).values
    sigma = q_spectrum(g).values[: len(X)]
    return bool(np.all(lam <= sigma + tol))


def _path_entries(fam: ApexFamily, tol: float) -> tuple[int, np.ndarray]:
    if not fam.paths:
        raise DomainError("family has no path component")
    g = realize(fam, multigraph=True)
    _, alpha = perron_vector(q_matrix(g), min(tol, DEFAULT_TOL))
    l = fam.paths[0]
    return l, alpha[:l]


def perron_symmetry_check(fam: ApexFamily, tol: float = 1e-9) -> bool:
    """Shape of the Perron vector along the first path ``u_1 ... u_l``.

    (i) mirror symmetry for l >= 2; (ii) ``α_i ≠ α_{i-2}`` for l >= 6;
    (iii) ``α_i ≠ α_{i+1}`` for l >= 4; (iv) ``α_1 < α_2`` for l >= 3.
    Inequalities need a gap above ``10*tol``.
    """
    l, a = _path_entries(fam, tol)
    margin = MARGIN_FACTOR * tol
    half = l // 2
    ok = all(abs(a[i] - a[l - 1 - i]) <= tol for i in range(half))
    if l >= 6:
        ok &= all(abs(a[i - 1] - a[i - 3]) > margin for i in range(3, half + 1))
    if l >= 4:
        ok &= all(abs(a[i - 1] - a[i]) > margin for i in range(1, half))
    if l >= 3:
        ok &= bool(a[1] - a[0] > margin)
    return bool(ok)


def rewire_family(fam: ApexFamily, path_index: int, s: int) -> ApexFamily:
    """Replace ``P_l`` (at ``path_index``) by ``C_s ∪ P_{l-s}``."""
    if not 0 <= path_index < len(fam.paths):
        raise DomainError(f"no path at index {path_index}")
    l = fam.paths[path_index]
    if not ((l >= 5 and 3 <= s <= l - 2) or (l == 4 and s == 2)):
        raise DomainError(f"rewiring needs 3 <= s <= l-2 (l >= 5) or l = 4, s = 2; got l={l}, s={s}")
    paths = list(fam.paths)
    paths[path_index] = l - s
    return ApexFamily((s,) + fam.cycles, tuple(paths))


def rewiring_compare(fam: ApexFamily, path_index: int, s: int,
                     tol: float = 1e-9) -> tuple[float, float]:
    """``(σ1 before, σ1 after)`` for the path-to-cycle rewiring.

    Raises :class:`VerificationError` unless σ1 grows by more than tol.
    """
    after_fam = rewire_family(fam, path_index, s)
    before = q_spectrum(realize(fam, multigraph=True)).largest
    after = q_spectrum(realize(after_fam, multigraph=True)).largest
    if not after - before > tol:
        raise VerificationError(
            f"σ1 did not increase: {before!r} -> {after!r} for {fam} (path {path_index}, s={s})")
    return before, after


def rewiring_gap_exact(fam: ApexFamily, path_index: int, s: int,
                       max_bits: int = 256) -> Fraction:
    """Certified lower bound on ``σ1(after) - σ1(before)`` for the rewiring.

    Both largest roots are bracketed by Sturm bisection and narrowed until
    the brackets separate, so a positive result proves the strict increase
    in exact arithmetic however small the gap is.  Raises
    :class:`VerificationError` if the brackets still overlap at width
    ``2**-max_bits``.
    """
    after_fam = rewire_family(fam, path_index, s)
    p0 = char_poly(q_matrix(realize(fam, multigraph=True)))
    p1 = char_poly(q_matrix(realize(after_fam, multigraph=True)))
    s0, s1 = sturm_sequence(p0), sturm_sequence(p1)
    est0 = q_spectrum(realize(fam, multigraph=True)).largest
    est1 = q_spectrum(realize(after_fam, multigraph=True)).largest
    b0 = largest_root_bracket(p0, estimate=est0, _seq=s0)
    b1 = largest_root_bracket(p1, estimate=est1, _seq=s1)
    bits = 20
    while b1.lo < b0.hi:
        if b1.hi <= b0.lo:
            raise VerificationError(f"σ1 decreased for {fam} (path {path_index}, s={s})")
        bits += 16
        if bits > max_bits:
            raise VerificationError(
                f"σ1 brackets still overlap at width 2**-{max_bits} for {fam} (path {path_index}, s={s})")
        width = Fraction(1, 2 ** bits)
        b0 = narrow_bracket(p0, b0, width, _seq=s0)
        b1 = narrow_bracket(p1, b1, width, _seq=s1)
    return b1.lo - b0.hi


def shared_leaf_mul_check(F: Multigraph, leaves: Sequence[int], hub: int) -> bool:
    """``mul(1) ≥ s - 1`` when s leaves all have ``hub`` as their only neighbour."""
    for u in leaves:
        if F.neighbors(u) != [hub] or F.adj[u, hub] != 1:
            raise DomainError(f"vertex {u} does not have {hub} as its unique neighbour")
    return exact_multiplicity(q_matrix(F), 1) >= len(leaves) - 1


@dataclass
class BoundReport:
    """Outcome of the degree-bound implications on one graph.

    Each entry of ``results`` is ``None`` when the hypothesis does
    not hold (nothing is asserted), else the truth of its conclusion.
    """

    n: int
    d1: int
    d2: int
    dn: int
    sigma1: float
    sigma2: float
    sigman: float
    results: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.results.values())


def degree_bound_check(g: Multigraph, tol: float = COMPARE_TOL) -> BoundReport:
    spec = q_spectrum(g).values
    deg = sorted((int(d) for d in g.degrees()), reverse=True)
    n = g.n
    s1, s2, sn = float(spec[0]), float(spec[1]) if n > 1 else 0.0, float(spec[-1])
    d1, d2, dn = deg[0], deg[1] if n > 1 else 0, deg[-1]
    rep = BoundReport(n, d1, d2, dn, s1, s2, sn)

    hyp = n >= 12 and s1 > n + tol and 5 >= s2 - tol and sn > tol
    rep.results["connected_d1_d2"] = (
        (g.is_connected() and d1 >= n - 3 and d2 <= 4) if hyp else None)

    hyp = g.is_connected() and d2 <= 4 and ((d1 >= 8 > dn >= 2) or (d1 >= 11 and dn == 1))
    rep.results["sigma1_le_d1_plus_3"] = (s1 <= d1 + 3 + tol) if hyp else None
    return rep
