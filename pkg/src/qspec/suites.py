"""Seeded property suites; each returns a :class:`SuiteResult`.

These drive ``qspec verify <suite>`` and the acceptance tests.  Every suite
records per-case rows (for CSV/JSON output), a failure list, and summary
statistics such as the worst error or the smallest observed margin.
"""
from __future__ import annotations

import functools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .checks import (interlacing_check, perron_symmetry_check, rewire_family,
                     rewiring_gap_exact)
from .closed_form import (cubic_brackets, cubic_coeffs, matching_spectrum, p3_quintic,
                          p3_quotient_poly, sigma1_family)
from .errors import QSpecError
from .exact import char_poly, exact_multiplicity, sturm_count
from .graph_core import ApexFamily, Multigraph, q_matrix, realize, triangle_count
from .moments import (degree_count_system, moments_combinatorial, moments_spectral,
                      non_apex_histogram, solve_degree_counts)
from .numeric import COMPARE_TOL, q_spectrum, sym_eigen
from .quotient import matching_quotient, lift_check, matching_partition, p3_matrix, quotient_matrix
from .search import _partitions, enumerate_all, family_scan, find_mates

DEFAULT_SEED = 20251018


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    rows: list[dict] = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ", ".join(f"{k}={v:.3g}" if isinstance(v, float) else f"{k}={v}"
                          for k, v in self.stats.items())
        return (f"{status} {self.name}: {self.cases} cases, {len(self.failures)} failures"
                + (f" ({extra})" if extra else "") + f" [{self.elapsed_s:.1f}s]")


def random_family(rng: np.random.Generator, *, t=(1, 5), q=(1, 6), s=(3, 12)) -> ApexFamily:
    tt = int(rng.integers(t[0], t[1] + 1))
    qq = int(rng.integers(q[0], q[1] + 1))
    cycles = tuple(int(x) for x in rng.integers(s[0], s[1] + 1, size=tt))
    return ApexFamily.matching(cycles, qq)


def random_graph(rng: np.random.Generator, n: int, p: float | None = None) -> Multigraph:
    if p is None:
        p = float(rng.uniform(0.2, 0.8))
    upper = np.triu(rng.random((n, n)) < p, 1).astype(np.int64)
    return Multigraph(upper + upper.T)


def _timed(fn: Callable[..., SuiteResult]) -> Callable[..., SuiteResult]:
    @functools.wraps(fn)
    def wrapper(*args, **kw):
        t0 = time.perf_counter()
        res = fn(*args, **kw)
        res.elapsed_s = time.perf_counter() - t0
        return res

    return wrapper


@_timed
def closed_form_suite(trials: int = 200, seed: int = DEFAULT_SEED, tol: float = COMPARE_TOL):
    """Closed-form spectrum vs Jacobi eigenvalues on random families."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("closed-form")
    worst = 0.0
    for _ in range(trials):
        fam = random_family(rng)
        closed = matching_spectrum(fam).values
        numeric = q_spectrum(realize(fam)).values
        err = float(np.max(np.abs(closed - numeric)))
        worst = max(worst, err)
        res.cases += 1
        res.rows.append({"family": str(fam), "n": fam.n, "max_abs_err": err})
        if err > tol:
            res.failures.append(f"{fam}: max error {err:.3g}")
    res.stats["max_abs_err"] = worst
    return res


def valid_nq(max_n: int, min_n: int = 6):
    for n in range(min_n, max_n + 1):
        for q in range(1, (n - 4) // 2 + 1):
            yield n, q


@_timed
def cubic_suite(max_n: int = 100):
    """Sturm certification of the cubic roots in (n, n+2), (3, 5), (1, 3)."""
    res = SuiteResult("cubic")
    for n, q in valid_nq(max_n):
        res.cases += 1
        try:
            cubic_brackets(n, q)
        except QSpecError as exc:
            res.failures.append(str(exc))
    return res


@_timed
def multiplicity_suite(trials: int = 50, seed: int = DEFAULT_SEED):
    """Exact multiplicities of 1, 3 and 5 against the closed-form counts."""
    rng = np.random.default_rng(seed + 1)
    res = SuiteResult("multiplicity")
    for _ in range(trials):
        fam = random_family(rng)
        Q = q_matrix(realize(fam))
        m1, m3, m5 = (exact_multiplicity(Q, lam) for lam in (1, 3, 5))
        even = sum(1 for s in fam.cycles if s % 2 == 0)
        ok = m1 == fam.q + even and m5 == fam.t - 1 and m3 >= fam.q - 1
        res.cases += 1
        res.rows.append({"family": str(fam), "mul1": m1, "mul3": m3, "mul5": m5})
        if not ok:
            res.failures.append(f"{fam}: mul(1)={m1}, mul(3)={m3}, mul(5)={m5}")
    return res


@_timed
def quotient_suite(max_n: int = 100):
    """Exact quotient characteristic polynomials and the value g(1) = 8."""
    res = SuiteResult("quotient")
    for n, q in valid_nq(max_n):
        res.cases += 1
        if char_poly(matching_quotient(n, q)) != cubic_coeffs(n, q):
            res.failures.append(f"3x3 quotient mismatch at n={n}, q={q}")
        g = p3_quintic(n, q)
        if char_poly(p3_matrix(n, q)) != g:
            res.failures.append(f"5x5 quotient mismatch at n={n}, q={q}")
        if g(1) != 8:
            res.failures.append(f"g(1) = {g(1)} at n={n}, q={q}")
    return res


def digon_partitions(total: int):
    """Cycle multisets with parts >= 2 summing to total."""
    return list(_partitions(total, 2))


@_timed
def sigma1_suite(ns=(9, 13, 17), tol: float = COMPARE_TOL, agree_tol: float = 1e-10):
    """σ1 depends only on (n, q): every cycle split (digons included) agrees."""
    res = SuiteResult("sigma1")
    worst_agree = worst_num = 0.0
    for n in ns:
        for q in range(1, (n - 3) // 2 + 1):
            vals = []
            for cycles in digon_partitions(n - 1 - 2 * q):
                fam = ApexFamily.matching(cycles, q)
                s1 = sigma1_family(fam)
                num = q_spectrum(realize(fam, multigraph=True)).largest
                vals.append(s1)
                worst_num = max(worst_num, abs(s1 - num))
                res.cases += 1
                if abs(s1 - num) > tol:
                    res.failures.append(f"{fam}: closed {s1!r} vs numeric {num!r}")
            spread = max(vals) - min(vals)
            worst_agree = max(worst_agree, spread)
            if spread > agree_tol:
                res.failures.append(f"n={n}, q={q}: σ1 spread {spread:.3g}")
    res.stats.update(max_spread=worst_agree, max_numeric_err=worst_num)
    return res


@_timed
def interlacing_suite(trials: int = 1000, seed: int = DEFAULT_SEED, max_n: int = 20,
                      tol: float = COMPARE_TOL):
    """Edge-deletion interlacing of Q-spectra on random graphs."""
    rng = np.random.default_rng(seed + 2)
    res = SuiteResult("interlacing")
    while res.cases < trials:
        n = int(rng.integers(3, max_n + 1))
        g = random_graph(rng, n)
        edges = g.edges()
        if not edges:
            continue
        e = edges[int(rng.integers(len(edges)))]
        res.cases += 1
        if not interlacing_check(g, e, tol):
            res.failures.append(f"n={n}, edge {e}")
    return res


@_timed
def moments_suite(trials: int = 200, seed: int = DEFAULT_SEED, max_n: int = 30,
                  rel_tol: float = 1e-6):
    """Spectral moments T1..T3 against the degree/triangle identities."""
    rng = np.random.default_rng(seed + 3)
    res = SuiteResult("moments")
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, max_n + 1))
        g = random_graph(rng, n)
        prof = moments_combinatorial(g)
        spec = moments_spectral(q_spectrum(g), 3)
        res.cases += 1
        for k, (a, b) in enumerate(zip(spec, prof.moments()), start=1):
            rel = abs(a - b) / max(1.0, abs(b))
            worst = max(worst, rel)
            if rel > rel_tol:
                res.failures.append(f"n={n}: T{k} spectral {a} vs combinatorial {b}")
    res.stats["max_rel_err"] = worst
    return res


SPLIT_CASES = {
    # (ñ2, ñ3) -> (3·ñ4, 3·ñ1) as affine forms (a·n + b·q + c)
    (0, 3): ((2, -2, -7), (1, 2, -5)),
    (1, 2): ((2, -2, -6), (1, 2, -6)),
    (2, 1): ((2, -2, -5), (1, 2, -7)),
    (3, 0): ((2, -2, -4), (1, 2, -8)),
}


@_timed
def degree_recovery_suite(trials: int = 50, seed: int = DEFAULT_SEED):
    """Moment systems recover the degrees (d1 = n-1) and force ñ2+ñ3 = 3 (d1 = n-2)."""
    rng = np.random.default_rng(seed + 4)
    res = SuiteResult("degree-recovery")
    for _ in range(trials):
        fam = random_family(rng)
        g = realize(fam)
        n, q = fam.n, fam.q
        prof = moments_combinatorial(g)
        res.cases += 1
        sols = solve_degree_counts(prof, n - 1)
        expect = (0, 2 * q, n - 1 - 2 * q, 0)
        if [s.as_tuple() for s in sols] != [expect] or sols[0].triangles != triangle_count(g):
            res.failures.append(f"{fam}: d1=n-1 solutions {sols}")
        if non_apex_histogram(g) != expect:
            res.failures.append(f"{fam}: realized histogram {non_apex_histogram(g)}")
        for s in solve_degree_counts(prof, n - 2):
            if s.n2 + s.n3 != 3:
                res.failures.append(f"{fam}: d1=n-2 solution {s} has ñ2+ñ3 != 3")
        base, slope = degree_count_system(prof, n - 2)
        if base[1] + base[2] != 3 or slope[1] + slope[2] != 0:
            res.failures.append(f"{fam}: ñ2+ñ3 not identically 3")
        for (n2, n3), (f4, f1) in SPLIT_CASES.items():
            n4 = (n3 - base[2]) / slope[2]
            n1 = base[0] + slope[0] * n4
            want4 = Fraction(f4[0] * n + f4[1] * q + f4[2], 3)
            want1 = Fraction(f1[0] * n + f1[1] * q + f1[2], 3)
            if (n4, n1) != (want4, want1) or base[1] + slope[1] * n4 != n2:
                res.failures.append(f"{fam}: case {(n2, n3)} gives ñ4={n4}, ñ1={n1}")
    return res


def p3_families(max_n: int, *, min_cycle: int = 2):
    """Every ``K1 ∨ (P3 ∪ cycles ∪ qK2)`` with n <= max_n."""
    for n in range(4, max_n + 1):
        for q in range(0, (n - 4) // 2 + 1):
            for cycles in _partitions(n - 4 - 2 * q, min_cycle):
                yield ApexFamily(cycles, (3,) + (2,) * q)


@_timed
def p3_bound_suite(max_n: int = 40, margin: float = 1e-9, method: str = "lapack"):
    """σn < 1 - margin on every P3 family, plus Sturm certificates per quotient shape."""
    res = SuiteResult("p3-bound")
    min_gap = np.inf
    certified: dict = {}
    for fam in p3_families(max_n):
        res.cases += 1
        sn = q_spectrum(realize(fam, multigraph=True), method=method).smallest
        gap = 1 - sn
        min_gap = min(min_gap, gap)
        if not gap > margin:
            res.failures.append(f"{fam}: σn = {sn!r}")
        key = (fam.n, fam.q, fam.t > 0)
        if key not in certified:
            if fam.t > 0 and fam.q > 0:
                poly = p3_quintic(fam.n, fam.q)
                if p3_quotient_poly(fam) != poly:
                    res.failures.append(f"{fam}: quotient polynomial differs from quintic")
            else:
                poly = p3_quotient_poly(fam)
            ok = poly(1) != 0 and sturm_count(poly, 0, 1) >= 1
            certified[key] = ok
            if not ok:
                res.failures.append(f"{fam}: no certified quotient root in (0, 1)")
    res.stats.update(min_gap_to_1=float(min_gap), certificates=len(certified))
    return res


def rewiring_contexts(rng: np.random.Generator, count: int) -> list[ApexFamily]:
    """Random extra components G1: up to 3 of cycles (digons allowed) and paths."""
    out = []
    for _ in range(count):
        k = int(rng.integers(0, 4))
        cycles, paths = [], []
        for _ in range(k):
            if rng.random() < 0.5:
                cycles.append(int(rng.integers(2, 7)))
            else:
                paths.append(int(rng.integers(2, 6)))
        out.append(ApexFamily(tuple(cycles), tuple(paths)))
    return out


def rewiring_pairs(max_l: int = 12):
    yield 4, 2
    for l in range(5, max_l + 1):
        for s in range(3, l - 1):
            yield l, s


@_timed
def rewiring_suite(max_l: int = 12, contexts: int = 20, seed: int = DEFAULT_SEED,
                   tol: float = 1e-9, exact: bool = True, exact_below: float = 1e-6):
    """Turning part of a path into a cycle strictly raises σ1.

    A case passes when the numeric increase exceeds ``tol``.  With ``exact``
    on, every case whose numeric gap is at most ``exact_below`` is also
    certified by separating Sturm brackets, which proves the increase even
    where it is below double precision.
    """
    rng = np.random.default_rng(seed + 5)
    res = SuiteResult("rewiring")
    min_gap = np.inf
    min_exact = None
    certified = 0
    for ctx in rewiring_contexts(rng, contexts):
        for l, s in rewiring_pairs(max_l):
            fam = ApexFamily(ctx.cycles, (l,) + ctx.paths)
            res.cases += 1
            before = q_spectrum(realize(fam, multigraph=True)).largest
            after = q_spectrum(realize(rewire_family(fam, 0, s), multigraph=True)).largest
            gap = after - before
            min_gap = min(min_gap, gap)
            row = {"family": str(fam), "l": l, "s": s, "gap": gap}
            if exact and gap <= exact_below:
                try:
                    lower = rewiring_gap_exact(fam, 0, s)
                    certified += 1
                    row["exact_gap_lower"] = float(lower)
                    min_exact = lower if min_exact is None else min(min_exact, lower)
                except QSpecError as exc:
                    res.failures.append(f"exact: {exc}")
            res.rows.append(row)
            if not gap > tol:
                res.failures.append(f"{fam} (s={s}): numeric gap {gap:.3g} <= {tol:g}")
    res.stats["min_gap"] = float(min_gap)
    if exact:
        res.stats["exact_certified"] = certified
        res.stats["min_exact_gap_lower"] = float(min_exact) if min_exact is not None else 0.0
    return res


@_timed
def perron_suite(max_l: int = 12, tol: float = 1e-9):
    """Perron-vector symmetry and strict monotonicity along a path, l <= max_l."""
    res = SuiteResult("perron")
    contexts = [ApexFamily(), ApexFamily((3,), (2,)), ApexFamily((4, 2), (3,)),
                ApexFamily((5,), (2, 2))]
    for ctx in contexts:
        for l in range(2, max_l + 1):
            fam = ApexFamily(ctx.cycles, (l,) + ctx.paths)
            res.cases += 1
            if not perron_symmetry_check(fam, tol):
                res.failures.append(str(fam))
    return res


@_timed
def lift_suite(trials: int = 50, seed: int = DEFAULT_SEED, tol: float = COMPARE_TOL):
    """The apex/cycles/matching partition is equitable and its eigenvalues lift."""
    rng = np.random.default_rng(seed + 6)
    res = SuiteResult("lift")
    for _ in range(trials):
        fam = random_family(rng)
        Q = q_matrix(realize(fam))
        qm = quotient_matrix(Q, matching_partition(fam))
        res.cases += 1
        if not qm.equitable or not lift_check(Q, qm, tol).ok:
            res.failures.append(str(fam))
    return res


ENUM_COUNTS = (1, 2, 4, 11, 34, 156, 1044)


@_timed
def enumeration_suite(max_n: int = 7):
    res = SuiteResult("enumeration")
    for n in range(1, max_n + 1):
        res.cases += 1
        got = sum(1 for _ in enumerate_all(n))
        res.rows.append({"n": n, "count": got})
        if got != ENUM_COUNTS[n - 1]:
            res.failures.append(f"n={n}: {got} graphs, expected {ENUM_COUNTS[n - 1]}")
    return res


SINGLE_CYCLE_TARGET = ApexFamily.matching((3,), 6)
MULTI_CYCLE_TARGET = ApexFamily.matching((3,) * 9, 12)


@_timed
def dqs_suite():
    """Family scans at n = 16 and n = 52 plus exhaustive searches at n = 6, 7."""
    res = SuiteResult("dqs")
    for fam in (SINGLE_CYCLE_TARGET, MULTI_CYCLE_TARGET):
        rep = family_scan(fam)
        res.cases += 1
        res.rows.append({"target": str(fam), "n": fam.n, "scanned": rep.scanned,
                         "mates": len(rep.mates), "elapsed_ms": rep.elapsed_ms})
        if rep.mates or not rep.self_found:
            res.failures.append(f"{fam}: mates {rep.mates}, self_found={rep.self_found}")
    for fam in (ApexFamily.matching((3,), 1), ApexFamily.matching((4,), 1)):
        rep = find_mates(realize(fam), enumerate_all(fam.n), cross_check=True,
                         corpus_name=f"builtin n={fam.n}", target_name=str(fam))
        res.cases += 1
        res.rows.append({"target": str(fam), "n": fam.n, "scanned": rep.scanned,
                         "mates": len(rep.mates), "elapsed_ms": rep.elapsed_ms})
        if rep.prefilter_disagreements or not rep.self_found:
            res.failures.append(f"{fam}: prefilter disagreements {rep.prefilter_disagreements}")
    return res


SUITES = {
    "closed-form": closed_form_suite,
    "cubic": cubic_suite,
    "multiplicity": multiplicity_suite,
    "quotient": quotient_suite,
    "sigma1": sigma1_suite,
    "interlacing": interlacing_suite,
    "moments": moments_suite,
    "degree-recovery": degree_recovery_suite,
    "p3-bound": p3_bound_suite,
    "rewiring": rewiring_suite,
    "perron": perron_suite,
    "lift": lift_suite,
    "enumeration": enumeration_suite,
    "dqs": dqs_suite,
}
