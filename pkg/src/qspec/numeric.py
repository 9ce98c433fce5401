"""Floating-point symmetric eigensolver and Perron vectors.

:func:`sym_eigen` is a cyclic Jacobi method in round-robin (Brent-Luk)
ordering: each step rotates ``n // 2`` disjoint index pairs at once, which
keeps the per-rotation work inside numpy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, NumericError, PreconditionError

DEFAULT_TOL = 1e-10
COMPARE_TOL = 1e-8
MAX_SWEEPS = 100
MAX_POWER_STEPS = 100_000


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, optionally with eigenvectors as columns."""

    values: np.ndarray
    tol: float = DEFAULT_TOL
    vectors: Optional[np.ndarray] = field(default=None, compare=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        order = np.argsort(-vals, kind="stable")
        vals = vals[order]
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        if self.vectors is not None:
            vecs = np.asarray(self.vectors, dtype=float)[:, order]
            vecs.flags.writeable = False
            object.__setattr__(self, "vectors", vecs)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def largest(self) -> float:
        return float(self.values[0])

    @property
    def smallest(self) -> float:
        return float(self.values[-1])


def _round_robin(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings of ``m`` (even) players into ``m - 1`` rounds of disjoint pairs."""
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        half = m // 2
        p = np.array(players[:half])
        q = np.array(players[half:][::-1])
        rounds.append((np.minimum(p, q), np.maximum(p, q)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def sym_eigen(M, tol: float = DEFAULT_TOL, *, vectors: bool = True,
              method: str = "jacobi") -> Spectrum:
    """Eigen-decomposition of a real symmetric matrix.

    The default ``method="jacobi"`` iterates sweeps until the off-diagonal
    Frobenius norm is at most ``tol * ||M||_F`` and raises
    :class:`NumericError` after ``MAX_SWEEPS``.  ``method="lapack"`` hands
    the matrix to ``numpy.linalg.eigh`` instead; bulk sweeps over tens of
    thousands of graphs use it.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    a = np.array(M, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if not np.allclose(a, a.T, rtol=0.0, atol=tol * max(scale, 1.0)):
        raise DomainError("matrix is not symmetric")
    a = (a + a.T) / 2
    if method == "lapack":
        if vectors:
            w, v = np.linalg.eigh(a)
            return Spectrum(w, tol, v)
        return Spectrum(np.linalg.eigvalsh(a), tol)
    if method != "jacobi":
        raise DomainError(f"unknown method {method!r}")
    v = np.eye(n)
    if n <= 1:
        return Spectrum(np.diag(a).copy(), tol, v if vectors else None)

    m = n + (n % 2)
    rounds = []
    for p, q in _round_robin(m):
        keep = q < n
        rounds.append((p[keep], q[keep]))

    target = tol * scale
    for _ in range(MAX_SWEEPS):
        if _off_norm(a) <= target:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not np.any(active):
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            th = np.where(big, 0.0, theta)
            t = np.sign(th) / (np.abs(th) + np.sqrt(th * th + 1.0))
            t[theta == 0] = 1.0
            t[big] = 0.5 / theta[big]
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # A <- P^T A P with P[p,p]=P[q,q]=c, P[p,q]=s, P[q,p]=-s
            rp, rq = a[p, :], a[q, :]
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p], a[:, q]
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            if vectors:
                vp, vq = v[:, p], v[:, q]
                v[:, p] = vp * c - vq * s
                v[:, q] = vp * s + vq * c
    else:
        if _off_norm(a) > target:
            raise NumericError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    return Spectrum(np.diag(a).copy(), tol, v if vectors else None)


def eigenvalues(M, tol: float = DEFAULT_TOL, method: str = "jacobi") -> np.ndarray:
    """Descending eigenvalues only (skips eigenvector accumulation)."""
    return sym_eigen(M, tol, vectors=False, method=method).values


def _irreducible(a: np.ndarray) -> bool:
    n = a.shape[0]
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in np.nonzero(a[i])[0]:
            j = int(j)
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def perron_vector(M, tol: float = DEFAULT_TOL) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and positive unit eigenvector of an irreducible matrix.

    Power iteration on ``M + shift*I`` where the Gershgorin shift makes the
    spectrum non-negative; the eigenvalue is the final Rayleigh quotient.
    """
    a = np.asarray(M, dtype=float)
    n = a.shape[0]
    if np.any(a < 0):
        raise PreconditionError("matrix has negative entries")
    if not np.allclose(a, a.T):
        raise PreconditionError("matrix is not symmetric")
    if n == 0 or not _irreducible(a - np.diag(np.diag(a))) and n > 1:
        raise PreconditionError("matrix is reducible (graph is disconnected)")
    off = np.abs(a).sum(axis=1) - 2 * np.abs(np.diag(a))
    shift = max(0.0, float(off.max()))
    b = a + shift * np.eye(n)
    x = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(MAX_POWER_STEPS):
        y = b @ x
        y /= np.linalg.norm(y)
        lam = float(y @ a @ y)
        if np.max(np.abs(a @ y - lam * y)) <= tol:
            x = y
            break
        x = y
    else:
        raise NumericError(f"power iteration did not converge in {MAX_POWER_STEPS} steps")
    if np.any(x <= 0):
        raise NumericError("Perron vector is not entrywise positive")
    return lam, x


def spectra_close(a, b, tol: float = COMPARE_TOL) -> bool:
    """True iff both spectra have equal length and agree entrywise within tol."""
    va = np.sort(np.asarray(getattr(a, "values", a), dtype=float))[::-1]
    vb = np.sort(np.asarray(getattr(b, "values", b), dtype=float))[::-1]
    if va.shape != vb.shape:
        return False
    return bool(np.max(np.abs(va - vb), initial=0.0) <= tol)


def q_spectrum(g, tol: float = DEFAULT_TOL, *, vectors: bool = False,
               method: str = "jacobi") -> Spectrum:
    """Numeric Q-spectrum of a :class:`~qspec.graph_core.Multigraph`."""
    from .graph_core import q_matrix

    return sym_eigen(q_matrix(g), tol, vectors=vectors, method=method)
