"""Exact characteristic polynomials, Sturm root counting and exact ranks.

All arithmetic here is over Python integers and :class:`fractions.Fraction`;
nothing in this module touches floating point except the value returned by
:func:`refine_root`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .errors import DomainError, PreconditionError

Rational = int | Fraction


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial, coefficients from leading to constant term."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs or coeffs[0] != 1:
            raise DomainError("characteristic polynomial must be monic")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def as_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]


@dataclass(frozen=True)
class RootInterval:
    """Half-open interval ``(lo, hi]`` holding ``count`` distinct real roots."""

    lo: Fraction
    hi: Fraction
    count: int

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if not lo < hi:
            raise DomainError(f"empty interval ({lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)


def _as_int_matrix(M) -> list[list[int]]:
    rows = [list(r) for r in np.asarray(M, dtype=object)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("matrix must be square")
    out = []
    for r in rows:
        row = []
        for x in r:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise DomainError("matrix entries must be integers")
                x = x.numerator
            if int(x) != x:
                raise DomainError("matrix entries must be integers")
            row.append(int(x))
        out.append(row)
    return out


def char_poly(M) -> CharPoly:
    """``det(xI - M)`` by the Faddeev-LeVerrier recurrence over the integers.

    With ``B_0 = 0``: ``B_k = M B_{k-1} + c_{k-1} I`` and
    ``c_k = -trace(M B_k) / k``; every division is exact for integer M.
    """
    rows = _as_int_matrix(M)
    n = len(rows)
    if n == 0:
        return CharPoly((1,))
    nz = [[(j, a) for j, a in enumerate(r) if a] for r in rows]

    def times_m(B):
        out = np.zeros((n, n), dtype=object)
        for i, row in enumerate(nz):
            if not row:
                continue
            j0, a0 = row[0]
            acc = B[j0] * a0
            for j, a in row[1:]:
                acc = acc + B[j] * a
            out[i] = acc
        return out

    coeffs = [1]
    MB = np.zeros((n, n), dtype=object)  # M @ B_0
    for k in range(1, n + 1):
        B = MB
        for i in range(n):
            B[i, i] += coeffs[-1]
        MB = times_m(B)
        tr = sum(MB[i, i] for i in range(n))
        c, rem = divmod(-tr, k)
        if rem:
            raise ArithmeticError("Faddeev-LeVerrier division was not exact")
        coeffs.append(int(c))
    return CharPoly(tuple(coeffs))


def det_bareiss(M) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    a = _as_int_matrix(M)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def integer_rank(M) -> int:
    """Rank over the rationals of an integer matrix (fraction-free elimination)."""
    a = _as_int_matrix(M)
    n = len(a)
    ncols = len(a[0]) if n else 0
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, n) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        p = a[row][col]
        for r in range(row + 1, n):
            f = a[r][col]
            ar, ap = a[r], a[row]
            for j in range(col, ncols):
                ar[j] = (ar[j] * p - f * ap[j]) // prev
        prev = p
        row += 1
        rank += 1
        if row == n:
            break
    return rank


def exact_multiplicity(M, lam: int) -> int:
    """Multiplicity of the integer eigenvalue ``lam`` of symmetric integer M."""
    a = _as_int_matrix(M)
    n = len(a)
    lam = int(lam)
    for i in range(n):
        a[i][i] -= lam
    return n - integer_rank(a)


# --- polynomial helpers over Q (coefficients leading-first) -----------------

def _strip(p: list) -> list:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _deriv(p: Sequence) -> list:
    d = len(p) - 1
    return _strip([c * (d - i) for i, c in enumerate(p[:-1])]) if d > 0 else [0]


def _rem(a: Sequence, b: Sequence) -> list:
    a = [Fraction(c) for c in a]
    b = _strip([Fraction(c) for c in b])
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    while len(a) >= len(b) and a != [0]:
        f = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = _strip(a[1:]) if len(a) > 1 else [Fraction(0)]
    return _strip(a) if a else [Fraction(0)]


def _quo(a: Sequence, b: Sequence) -> list:
    a = [Fraction(c) for c in a]
    b = _strip([Fraction(c) for c in b])
    q = []
    while len(a) >= len(b):
        f = a[0] / b[0]
        q.append(f)
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = a[1:]
    return _strip(q) if q else [Fraction(0)]


def _gcd(a: Sequence, b: Sequence) -> list:
    a, b = _strip(list(a)), _strip(list(b))
    while b != [0]:
        a, b = b, _rem(a, b)
    return [c / a[0] for c in a]


def _eval(p: Sequence, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def _coeff_list(p) -> list:
    coeffs = list(p.coeffs) if isinstance(p, CharPoly) else list(p)
    coeffs = _strip([Fraction(c) for c in coeffs])
    if coeffs == [0]:
        raise DomainError("zero polynomial")
    return coeffs


def squarefree_part(p) -> list[Fraction]:
    c = _coeff_list(p)
    if len(c) == 1:
        return c
    return _quo(c, _gcd(c, _deriv(c)))


def _primitive(p: Sequence) -> list[int]:
    """Positive rational multiple of ``p`` with coprime integer coefficients."""
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def sturm_sequence(p) -> list[list[int]]:
    """Sturm chain of the square-free part of ``p``.

    Each member is rescaled by a positive constant to primitive integer
    coefficients; signs, and so sign variations, are unchanged.
    """
    f0 = squarefree_part(p)
    seq = [f0]
    if len(f0) > 1:
        seq.append(_deriv(f0))
        while len(seq[-1]) > 1:
            r = _rem(seq[-2], seq[-1])
            if r == [0]:
                break
            seq.append([-c for c in r])
    return [_primitive(f) for f in seq]


def _variations(seq, x) -> int:
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    signs = []
    for f in seq:
        # homogeneous Horner: Σ c_i a^(d-i) b^i has the sign of f(a/b)
        acc = 0
        bp = 1
        for c in f:
            acc = acc * a + c * bp
            bp *= b
        if acc != 0:
            signs.append(acc > 0)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(p, lo: Rational, hi: Rational, *, _seq=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise DomainError(f"need lo < hi, got ({lo}, {hi}]")
    seq = _seq if _seq is not None else sturm_sequence(p)
    return _variations(seq, lo) - _variations(seq, hi)


def root_bound(p) -> Fraction:
    """Cauchy bound: every root has absolute value below the returned value."""
    c = _coeff_list(p)
    lead = abs(c[0])
    return 1 + max((abs(x) / lead for x in c[1:]), default=Fraction(0))


def narrow_bracket(p, bracket: RootInterval, width: Rational, *, _seq=None) -> RootInterval:
    """Bisect a one-root bracket with Sturm counts until it is at most ``width`` wide."""
    width = Fraction(width)
    if width <= 0:
        raise DomainError("width must be positive")
    seq = _seq if _seq is not None else sturm_sequence(p)
    lo, hi = bracket.lo, bracket.hi
    v_lo, v_hi = _variations(seq, lo), _variations(seq, hi)
    if v_lo - v_hi != 1:
        raise PreconditionError(
            f"bracket ({lo}, {hi}] holds {v_lo - v_hi} distinct roots, expected 1")
    while hi - lo > width:
        mid = (lo + hi) / 2
        v_mid = _variations(seq, mid)
        if v_lo - v_mid == 1:
            hi, v_hi = mid, v_mid
        else:
            lo, v_lo = mid, v_mid
    return RootInterval(lo, hi, 1)


def refine_root(p, bracket: RootInterval, tol: float) -> float:
    """Midpoint of ``bracket`` narrowed to width <= tol."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    r = narrow_bracket(p, bracket, Fraction(tol))
    return float((r.lo + r.hi) / 2)


def isolate_roots(p, lo: Rational | None = None, hi: Rational | None = None) -> list[RootInterval]:
    """Disjoint one-root brackets for every distinct real root, ascending."""
    seq = sturm_sequence(p)
    if lo is None or hi is None:
        b = root_bound(p)
        lo, hi = (-b if lo is None else lo), (b if hi is None else hi)
    out: list[RootInterval] = []
    stack = [(Fraction(lo), Fraction(hi), _variations(seq, lo), _variations(seq, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        k = va - vb
        if k == 0:
            continue
        if k == 1:
            out.append(RootInterval(a, b, 1))
            continue
        mid = (a + b) / 2
        vm = _variations(seq, mid)
        stack.append((a, mid, va, vm))
        stack.append((mid, b, vm, vb))
    return sorted(out, key=lambda r: r.lo)


def real_roots(p, tol: float = 1e-12) -> list[float]:
    """Distinct real roots of ``p``, ascending, each refined to ``tol``."""
    return [refine_root(p, r, tol) for r in isolate_roots(p)]


def largest_root_bracket(p, width: Rational = Fraction(1, 2 ** 20), *,
                         estimate: float | None = None, _seq=None) -> RootInterval:
    """Bracket ``(lo, hi]`` of the largest real root, at most ``width`` wide.

    A float ``estimate`` of the root skips full isolation when the interval
    just below it up to the Cauchy bound holds exactly one root.
    """
    seq = _seq if _seq is not None else sturm_sequence(p)
    hi = root_bound(p)
    if estimate is not None:
        lo = Fraction(estimate) - Fraction(1, 2 ** 16)
        if lo < hi and _variations(seq, lo) - _variations(seq, hi) == 1:
            return narrow_bracket(p, RootInterval(lo, hi, 1), width, _seq=seq)
    roots = isolate_roots(p)
    if not roots:
        raise PreconditionError("polynomial has no real roots")
    return narrow_bracket(p, roots[-1], width, _seq=seq)
