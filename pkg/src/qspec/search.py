"""Cospectral-mate searches: small-graph enumeration, corpora, family scans.

Cospectrality is always decided by exact equality of the integer
characteristic polynomial of Q.  Floating-point spectra, and exact
single-point evaluations, only serve as pre-filters.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import CapabilityError, DomainError, Graph6Error, ModeError
from .exact import CharPoly, char_poly
from .familyspec import format_family
from .graph6 import emit_graph6, parse_graph6
from .graph_core import ApexFamily, Multigraph, build_atom, q_matrix, realize
from .numeric import COMPARE_TOL, DEFAULT_TOL, eigenvalues, spectra_close

SCHEMA = 1
MAX_CANON_N = 10
MAX_ENUM_N = 7


# --- canonical forms ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Lexicographically least upper-triangle bit string (graph6 column order)."""

    n: int
    bits: str

    def graph(self) -> Multigraph:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        k = 0
        for j in range(1, self.n):
            for i in range(j):
                if self.bits[k] == "1":
                    a[i, j] = a[j, i] = 1
                k += 1
        return Multigraph(a)


def _refine_colors(nb: list[int], n: int) -> list[int]:
    """Colour refinement started from degrees; colours are canonical ranks."""
    colors = [bin(x).count("1") for x in nb]
    ncolors = len(set(colors))
    while True:
        sig = [(colors[v], tuple(sorted(colors[u] for u in range(n) if nb[v] >> u & 1)))
               for v in range(n)]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        colors = [rank[s] for s in sig]
        if len(rank) == ncolors:
            return colors
        ncolors = len(rank)


def canonical_form(g: Multigraph) -> CanonicalForm:
    """Canonical form by branch-and-bound over colour-respecting orderings.

    Vertices are placed position by position; position k may only take a
    vertex whose refined colour matches the k-th smallest colour.  Column k
    of the bit string depends only on the first k+1 placed vertices, so a
    branch is cut as soon as its prefix exceeds the best one.  Interchangeable
    twin vertices are only tried once per branch point.
    """
    if not g.is_simple():
        raise ModeError("canonical forms are defined for simple graphs only")
    n = g.n
    if n > MAX_CANON_N:
        raise CapabilityError(f"canonical_form supports n <= {MAX_CANON_N}, got {n}")
    if n == 0:
        return CanonicalForm(0, "")
    a = g.adj
    nb = [sum(1 << u for u in range(n) if a[v, u]) for v in range(n)]
    colors = _refine_colors(nb, n)
    slot_color = sorted(colors)

    best: list[Optional[list[int]]] = [None]
    order: list[int] = []
    cols: list[int] = []
    used = [False] * n

    def dfs(k: int) -> None:
        if k == n:
            if best[0] is None or cols < best[0]:
                best[0] = cols[:]
            return
        tried: list[int] = []
        for v in range(n):
            if used[v] or colors[v] != slot_color[k]:
                continue
            if any((nb[v] & ~(1 << w)) == (nb[w] & ~(1 << v)) for w in tried):
                continue
            tried.append(v)
            val = 0
            for u in order:
                val = (val << 1) | (nb[v] >> u & 1)
            cols.append(val)
            b = best[0]
            if b is None or cols <= b[: k + 1]:
                used[v] = True
                order.append(v)
                dfs(k + 1)
                order.pop()
                used[v] = False
            cols.pop()

    dfs(0)
    bits = "".join(format(c, f"0{j}b") if j else "" for j, c in enumerate(best[0]))
    return CanonicalForm(n, bits)


def _iso_key(g: Multigraph):
    if g.n <= MAX_CANON_N:
        return canonical_form(g)
    return None


def is_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    if g.n <= MAX_CANON_N:
        return canonical_form(g) == canonical_form(h)
    import networkx as nx

    return nx.is_isomorphic(nx.from_numpy_array(g.adj.astype(int)),
                            nx.from_numpy_array(h.adj.astype(int)))


# --- exhaustive enumeration --------------------------------------------------

@lru_cache(maxsize=None)
def _level(n: int) -> tuple[CanonicalForm, ...]:
    if n == 1:
        return (CanonicalForm(1, ""),)
    seen: set[CanonicalForm] = set()
    for form in _level(n - 1):
        base = form.graph().adj
        for mask in range(1 << (n - 1)):
            a = np.zeros((n, n), dtype=np.int64)
            a[: n - 1, : n - 1] = base
            for u in range(n - 1):
                if mask >> u & 1:
                    a[u, n - 1] = a[n - 1, u] = 1
            seen.add(canonical_form(Multigraph(a)))
    return tuple(sorted(seen))


def enumerate_all(n: int) -> Iterator[Multigraph]:
    """One representative (in canonical labelling) per isomorphism class.

    Graphs on n vertices are grown from those on n - 1 by attaching a new
    vertex to every vertex subset, then deduplicated by canonical form.
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise CapabilityError(f"built-in enumeration covers 1 <= n <= {MAX_ENUM_N}; "
                              "use a graph6 corpus for larger orders")
    for form in _level(n):
        yield form.graph()


# --- reports -----------------------------------------------------------------

@dataclass
class SearchReport:
    target: str
    fingerprint: CharPoly
    corpus: str
    mates: list[str] = field(default_factory=list)
    scanned: int = 0
    skipped: int = 0
    malformed: int = 0
    fingerprints: int = 0
    prefilter_disagreements: list[str] = field(default_factory=list)
    self_found: Optional[bool] = None
    elapsed_ms: float = 0.0
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "target": self.target,
            "fingerprint": self.fingerprint.as_strings(),
            "corpus": self.corpus,
            "mates": list(self.mates),
            "scanned": self.scanned,
            "skipped": self.skipped,
            "malformed": self.malformed,
            "fingerprints": self.fingerprints,
            "prefilter_disagreements": list(self.prefilter_disagreements),
            "self_found": self.self_found,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "note": self.note,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


# --- corpus search -----------------------------------------------------------

def _scan_chunk(target_adj, target_poly_coeffs, items, prefilter, cross_check, tol):
    target = Multigraph(target_adj)
    target_poly = CharPoly(tuple(target_poly_coeffs))
    target_vals = eigenvalues(q_matrix(target))
    hits, disagreements = [], []
    scanned = skipped = malformed = fps = 0
    for item in items:
        if isinstance(item, str):
            try:
                g = parse_graph6(item)
            except (Graph6Error, ValueError):
                malformed += 1
                skipped += 1
                continue
        else:
            g = item
        if g.n != target.n or not g.is_simple():
            skipped += 1
            continue
        scanned += 1
        close = None
        if prefilter or cross_check:
            close = spectra_close(eigenvalues(q_matrix(g)), target_vals, tol)
        if cross_check or not prefilter or close:
            fps += 1
            equal = char_poly(q_matrix(g)) == target_poly
            if cross_check and close != equal:
                disagreements.append(emit_graph6(g))
            if equal:
                hits.append(g.adj.copy())
    return hits, disagreements, scanned, skipped, malformed, fps


def _chunks(seq: list, k: int) -> list[list]:
    size = max(1, -(-len(seq) // k))
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def find_mates(target: Multigraph, corpus: Iterable, *, corpus_name: str = "corpus",
               prefilter: bool = True, cross_check: bool = False,
               tol: float = COMPARE_TOL, threads: int = 1,
               target_name: Optional[str] = None) -> SearchReport:
    """Non-isomorphic graphs in ``corpus`` with the same Q-characteristic polynomial.

    ``corpus`` yields :class:`Multigraph` objects or graph6 strings; entries
    of the wrong order, multigraphs and malformed lines are counted as
    skipped.  With ``cross_check`` every graph gets both the numeric and the
    exact test, and any disagreement is recorded in the report.
    """
    if not target.is_simple():
        raise ModeError("target must be a simple graph")
    if threads < 1:
        raise DomainError("threads must be >= 1")
    t0 = time.perf_counter()
    tpoly = char_poly(q_matrix(target))
    items = list(corpus)
    args = (target.adj.copy(), tpoly.coeffs, prefilter, cross_check, tol)
    if threads == 1 or len(items) < 2 * threads:
        results = [_scan_chunk(args[0], args[1], items, *args[2:])]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futs = [pool.submit(_scan_chunk, args[0], args[1], chunk, *args[2:])
                    for chunk in _chunks(items, threads)]
            results = [f.result() for f in futs]

    report = SearchReport(target=target_name or emit_graph6(target), fingerprint=tpoly,
                          corpus=corpus_name)
    hits = []
    for h, dis, sc, sk, mal, fp in results:
        hits.extend(Multigraph(a) for a in h)
        report.prefilter_disagreements.extend(dis)
        report.scanned += sc
        report.skipped += sk
        report.malformed += mal
        report.fingerprints += fp

    mates: list[tuple[object, Multigraph]] = []
    for g in hits:
        if is_isomorphic(g, target):
            report.self_found = True
            continue
        if any(is_isomorphic(g, h) for _, h in mates):
            continue
        key = _iso_key(g)
        mates.append((key, g))
    if report.self_found is None:
        report.self_found = False
    mates.sort(key=lambda kg: (kg[0].bits if kg[0] is not None else emit_graph6(kg[1])))
    report.mates = [emit_graph6(kg[0].graph() if kg[0] is not None else kg[1]) for kg in mates]
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report


# --- family scan -------------------------------------------------------------

def _partitions(total: int, min_part: int, k: Optional[int] = None,
                max_part: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into parts >= min_part, descending; exactly k parts if given."""
    if max_part is None:
        max_part = total
    if k is not None:
        if k == 0:
            if total == 0:
                yield ()
            return
        if total < k * min_part:
            return
    elif total == 0:
        yield ()
        return
    for first in range(min(total, max_part), min_part - 1, -1):
        rest_k = None if k is None else k - 1
        for rest in _partitions(total - first, min_part, rest_k, first):
            yield (first,) + rest


def scan_candidates(n: int, q: int) -> Iterator[ApexFamily]:
    """Every ``K1 ∨ (cycles ∪ q paths)`` on n vertices.

    Cycles have length >= 3 (any number of them, including none) and there
    are exactly q paths, each on >= 2 vertices.
    """
    for L in range(2 * q, n):
        for paths in _partitions(L, 2, q):
            for cycles in _partitions(n - 1 - L, 3):
                yield ApexFamily(cycles, paths)


@lru_cache(maxsize=None)
def _component_values(kind: str, size: int, x: int) -> tuple[int, int]:
    """``(det(xI - Q_c - I), 1ᵀ adj(xI - Q_c - I) 1)`` for one component c."""
    qc = q_matrix(build_atom(kind, size)) + np.eye(size, dtype=np.int64)
    p = char_poly(qc)(x)
    w = char_poly(qc - np.ones((size, size), dtype=np.int64))(x) - p
    return p, w


def family_poly_value(fam: ApexFamily, x: int) -> Fraction | int:
    """Exact value at x of the Q-characteristic polynomial of ``realize(fam)``.

    Uses the Schur complement on the apex row: with ``B_c = xI - Q_c - I``
    per component, ``det(xI - Q) = (x - n + 1)·Π det B_c - Σ_c w_c·Π_{d≠c} det B_d``.
    ``x`` must not be an eigenvalue of any ``Q_c + I`` (any x < 1 is safe).
    """
    comps = [("path", l) for l in fam.paths] + [("cycle", s) for s in fam.cycles]
    prod = 1
    ratio = Fraction(0)
    for kind, size in comps:
        p, w = _component_values(kind, size, x)
        prod *= p
        ratio += Fraction(w, p)
    val = prod * (Fraction(x - fam.n + 1) - ratio)
    assert val.denominator == 1
    return val.numerator


SCAN_POINTS = (-1, -2)


def family_scan(target_fam: ApexFamily) -> SearchReport:
    """Cospectral mates of ``K1 ∨ (cycles ∪ qK2)`` among the structurally possible shapes.

    Candidates are all apex families with the same order, cycles of
    length >= 3 and exactly q paths of order >= 2.  Each candidate is first
    screened by exact evaluation of its characteristic polynomial at two
    points; survivors get the full characteristic polynomial of Q.
    """
    if any(l != 2 for l in target_fam.paths):
        raise DomainError("target paths must all be K2 components")
    if any(s < 3 for s in target_fam.cycles):
        raise DomainError("target cycles must have length >= 3")
    t0 = time.perf_counter()
    n, q = target_fam.n, target_fam.q
    target = realize(target_fam)
    tpoly = char_poly(q_matrix(target))
    tvals = [tpoly(x) for x in SCAN_POINTS]
    canon_target = target_fam.canonical()
    report = SearchReport(target=format_family(target_fam), fingerprint=tpoly,
                          corpus=f"family-scan n={n} q={q}",
                          note="restricted candidate set (apex joins of cycles >= 3 "
                               "and exactly q paths), not all graphs of this order")
    report.self_found = False
    mates = []
    for cand in scan_candidates(n, q):
        report.scanned += 1
        if any(family_poly_value(cand, x) != v for x, v in zip(SCAN_POINTS, tvals)):
            continue
        report.fingerprints += 1
        if char_poly(q_matrix(realize(cand))) != tpoly:
            continue
        if cand == canon_target:
            report.self_found = True
            continue
        mates.append(cand)
    g6 = [(canonical_form(realize(c)).bits if n <= MAX_CANON_N else format_family(c),
           emit_graph6(realize(c))) for c in mates]
    report.mates = [g for _, g in sorted(g6)]
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report


@dataclass
class PairsReport:
    """Cospectral pairs of a corpus under the exact and the numeric test.

    Pairs are index pairs ``(i, j)`` with ``i < j`` into the corpus order.
    """

    exact: set
    numeric: set

    @property
    def disagreements(self) -> set:
        return self.exact ^ self.numeric

    @property
    def agree(self) -> bool:
        return self.exact == self.numeric


def cospectral_pairs(graphs: Sequence[Multigraph], tol: float = COMPARE_TOL) -> PairsReport:
    """All Q-cospectral pairs among same-order ``graphs``, decided two ways."""
    graphs = list(graphs)
    if len({g.n for g in graphs}) > 1:
        raise DomainError("all graphs must have the same order")
    exact: set = set()
    by_poly: dict = {}
    for i, g in enumerate(graphs):
        by_poly.setdefault(char_poly(q_matrix(g)), []).append(i)
    for idx in by_poly.values():
        exact.update((a, b) for k, a in enumerate(idx) for b in idx[k + 1:])
    numeric: set = set()
    if graphs:
        spec = np.array([eigenvalues(q_matrix(g)) for g in graphs])
        for i in range(len(graphs) - 1):
            close = np.max(np.abs(spec[i + 1:] - spec[i]), axis=1) <= tol
            numeric.update((i, i + 1 + int(j)) for j in np.flatnonzero(close))
    return PairsReport(exact, numeric)
