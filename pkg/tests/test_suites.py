import pytest

from qspec import suites


@pytest.mark.parametrize("name,kw", [
    ("closed-form", {"trials": 10}),
    ("cubic", {"max_n": 30}),
    ("multiplicity", {"trials": 10}),
    ("quotient", {"max_n": 30}),
    ("sigma1", {"ns": (9,)}),
    ("interlacing", {"trials": 50}),
    ("moments", {"trials": 30}),
    ("degree-recovery", {"trials": 10}),
    ("p3-bound", {"max_n": 16}),
    ("rewiring", {"max_l": 8, "contexts": 3}),
    ("perron", {"max_l": 8}),
    ("lift", {"trials": 10}),
    ("enumeration", {"max_n": 5}),
])
def test_small_runs_pass(name, kw):
    res = suites.SUITES[name](**kw)
    assert res.passed, res.failures[:5]
    assert res.cases > 0 and res.elapsed_s >= 0


def test_seed_reproducible():
    a = suites.closed_form_suite(trials=5, seed=3)
    b = suites.closed_form_suite(trials=5, seed=3)
    assert [r["family"] for r in a.rows] == [r["family"] for r in b.rows]


def test_failure_is_reported():
    res = suites.closed_form_suite(trials=3, tol=1e-30)
    assert not res.passed and len(res.failures) == 3
    assert "FAIL" in res.summary()


def test_random_family_ranges():
    import numpy as np
    rng = np.random.default_rng(0)
    for _ in range(200):
        fam = suites.random_family(rng)
        assert 1 <= fam.t <= 5 and 1 <= fam.q <= 6
        assert all(3 <= s <= 12 for s in fam.cycles) and fam.n <= 80
