"""Explicit Q-spectra of ``K1 ∨ (C_{s_1} ∪ ... ∪ C_{s_t} ∪ qK2)`` and relatives.

The three "main" eigenvalues are the roots of the cubic
``x^3 - (n+7)x^2 + (7n+8)x - 12n + 4q + 12``; the rest of the spectrum is
``1^(q), 3^(q-1), 5^(t-1)`` and ``3 + 2cos(2jπ/s_i)`` for each cycle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, VerificationError
from .exact import CharPoly, RootInterval, char_poly, isolate_roots, refine_root, sturm_count
from .graph_core import ApexFamily, q_matrix, realize
from .numeric import DEFAULT_TOL, q_spectrum
from .quotient import p3_partition, quotient_matrix

ROOT_TOL = 1e-12


def cubic_coeffs(n: int, q: int) -> CharPoly:
    return CharPoly((1, -(n + 7), 7 * n + 8, -12 * n + 4 * q + 12))


def p3_quintic(n: int, q: int) -> CharPoly:
    """Characteristic polynomial of the 5x5 quotient for ``K1 ∨ (P3 ∪ cycles ∪ qK2)``."""
    return CharPoly((1, -(n + 12), 12 * n + 47, 4 * q - 51 * n - 52,
                     88 * n - 20 * q - 48, 16 * q - 48 * n + 72))


def _require_matching_family(fam: ApexFamily, *, min_cycle: int) -> None:
    if fam.t < 1:
        raise DomainError("family needs at least one cycle")
    if any(s < min_cycle for s in fam.cycles):
        raise DomainError(f"cycle lengths must be >= {min_cycle}, got {fam.cycles}")
    if any(l != 2 for l in fam.paths):
        raise DomainError("every path must be a K2 component")
    if fam.q < 1:
        raise DomainError("family needs q >= 1 copies of K2")


def cubic_brackets(n: int, q: int) -> tuple[RootInterval, RootInterval, RootInterval]:
    """Certify one cubic root in each of (n, n+2), (3, 5), (1, 3).

    Each interval is checked by a Sturm count of exactly one distinct root
    and non-vanishing of the cubic at both endpoints, so the roots are
    strictly inside.  Raises :class:`VerificationError` otherwise.
    """
    p = cubic_coeffs(n, q)
    out = []
    for lo, hi in ((n, n + 2), (3, 5), (1, 3)):
        count = sturm_count(p, lo, hi)
        if count != 1 or p(lo) == 0 or p(hi) == 0:
            raise VerificationError(
                f"cubic for (n={n}, q={q}) has {count} roots in ({lo}, {hi})")
        out.append(RootInterval(Fraction(lo), Fraction(hi), 1))
    return tuple(out)


@dataclass(frozen=True)
class ClosedSpectrum:
    n: int
    q: int
    t: int
    cubic_roots: tuple[float, float, float]
    fixed_parts: dict = field(compare=False)
    cosine_parts: tuple[float, ...] = ()

    def annotated(self) -> list[tuple[float, str]]:
        """``(eigenvalue, origin)`` pairs sorted by eigenvalue, descending."""
        rows = [(lam, "cubic") for lam in self.cubic_roots]
        for value, mult in self.fixed_parts.items():
            rows += [(float(value), "fixed")] * mult
        rows += [(c, "cosine") for c in self.cosine_parts]
        return sorted(rows, key=lambda r: -r[0])

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.annotated()])

    def __len__(self):
        return self.n


def cosine_parts(cycles) -> list[float]:
    return [3 + 2 * math.cos(2 * j * math.pi / s) for s in cycles for j in range(1, s)]


def matching_spectrum(fam: ApexFamily) -> ClosedSpectrum:
    """Full Q-spectrum of ``K1 ∨ (cycles ∪ qK2)`` with t, q >= 1 and cycles >= 3."""
    _require_matching_family(fam, min_cycle=3)
    n, q, t = fam.n, fam.q, fam.t
    p = cubic_coeffs(n, q)
    roots = tuple(refine_root(p, b, ROOT_TOL) for b in cubic_brackets(n, q))
    fixed = {1: q, 3: q - 1, 5: t - 1}
    spec = ClosedSpectrum(n, q, t, roots, fixed, tuple(cosine_parts(fam.cycles)))
    if len(spec.annotated()) != n:
        raise VerificationError("closed-form spectrum has the wrong size")
    return spec


def mul_one_formula(fam: ApexFamily) -> int:
    """Multiplicity of eigenvalue 1: q plus the number of even cycles."""
    _require_matching_family(fam, min_cycle=3)
    return fam.q + sum(1 for s in fam.cycles if s % 2 == 0)


def largest_root(p) -> float:
    brackets = isolate_roots(p)
    return refine_root(p, brackets[-1], ROOT_TOL)


def sigma1_family(fam: ApexFamily) -> float:
    """Largest Q-eigenvalue of ``K1 ∨ (cycles ∪ qK2)``; digons (C2) allowed.

    Depends only on ``(n, q)``, not on how the cycle vertices are split.
    """
    _require_matching_family(fam, min_cycle=2)
    return largest_root(cubic_coeffs(fam.n, fam.q))


def p3_quotient_poly(fam: ApexFamily) -> CharPoly:
    """Characteristic polynomial of the equitable quotient for a P3 family.

    Cells that would be empty (no cycles, or q = 0) are dropped, which gives
    the reduced quotient for the degenerate cases.
    """
    g = realize(fam, multigraph=True)
    qm = quotient_matrix(q_matrix(g), p3_partition(fam))
    if not qm.equitable:
        raise VerificationError("P3 partition is not equitable")
    return char_poly(qm.as_array(int))


def sigma_n_below_one(fam: ApexFamily, tol: float = DEFAULT_TOL) -> bool:
    """Certify that the least Q-eigenvalue of a P3 family is below 1.

    The certificate is a Sturm count showing a quotient eigenvalue in
    (0, 1); the numeric spectrum must agree.
    """
    if any(s < 2 for s in fam.cycles):
        raise DomainError("cycle lengths must be >= 2")
    p = p3_quotient_poly(fam)
    certified = p(1) != 0 and sturm_count(p, 0, 1) >= 1
    numeric = q_spectrum(realize(fam, multigraph=True), tol).smallest < 1
    return bool(certified and numeric)


def matching_eigenvectors(fam: ApexFamily, roots=None) -> list[tuple[float, np.ndarray]]:
    """Eigenvector certificates for ``K1 ∨ (cycles ∪ qK2)``.

    Returns ``(eigenvalue, vector)`` pairs for the three cubic roots, the
    ``t - 1`` vectors for eigenvalue 5 and the vectors for 1 and 3 supported
    on the K2 components.  Vertex order follows :func:`realize`.
    """
    _require_matching_family(fam, min_cycle=3)
    n, q = fam.n, fam.q
    if roots is None:
        roots = matching_spectrum(fam).cubic_roots
    out = []
    for lam in roots:
        v = np.concatenate([np.full(2 * q, lam - 5), np.full(n - 2 * q - 1, lam - 3),
                            [(lam - 3) * (lam - 5)]])
        out.append((lam, v))
    start = 2 * q
    offsets = []
    for s in fam.cycles:
        offsets.append((start, start + s))
        start += s
    s1 = fam.cycles[0]
    a0, b0 = offsets[0]
    for j in range(1, fam.t):
        v = np.zeros(n)
        v[a0:b0] = -fam.cycles[j]
        a, b = offsets[j]
        v[a:b] = s1
        out.append((5.0, v))
    for j in range(q):
        v = np.zeros(n)
        v[2 * j], v[2 * j + 1] = 1, -1
        out.append((1.0, v))
    for j in range(q - 1):
        v = np.zeros(n)
        v[2 * j: 2 * j + 2] = 1
        v[2 * j + 2: 2 * j + 4] = -1
        out.append((3.0, v))
    return out
