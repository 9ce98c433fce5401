import numpy as np
import pytest
from hypothesis import given, strategies as st

from qspec.checks import (degree_bound_check, interlacing_check, perron_symmetry_check,
                          principal_bound_check, rewire_family, rewiring_compare,
                          rewiring_gap_exact, shared_leaf_mul_check)
from qspec.errors import DomainError, VerificationError
from qspec.graph_core import (ApexFamily, Multigraph, apex_join, build_atom, delete_edge,
                              disjoint_union, realize)


def random_graph(rng, n, p=0.5):
    upper = np.triu(rng.random((n, n)) < p, 1).astype(np.int64)
    return Multigraph(upper + upper.T)


class TestInterlacing:
    def test_c3(self):
        assert interlacing_check(build_atom("cycle", 3), (0, 1))

    def test_negative_control(self):
        g = build_atom("complete", 5)
        other = delete_edge(delete_edge(g, 0, 1), 2, 3)
        other = delete_edge(delete_edge(other, 0, 2), 1, 3)
        assert not interlacing_check(g, (0, 1), other=other)

    def test_missing_edge(self):
        with pytest.raises(DomainError):
            interlacing_check(build_atom("path", 3), (0, 2))

    def test_small_graph(self):
        with pytest.raises(DomainError):
            interlacing_check(build_atom("path", 2), (0, 1))

    @given(st.integers(3, 20), st.integers(0, 2 ** 32 - 1))
    def test_random(self, n, seed):
        rng = np.random.default_rng(seed)
        g = random_graph(rng, n)
        edges = g.edges()
        if edges:
            assert interlacing_check(g, edges[int(rng.integers(len(edges)))])

    def test_multigraph_edge(self):
        g = realize(ApexFamily((2, 3), (2,)), multigraph=True)
        assert interlacing_check(g, (2, 3))


class TestPrincipalBound:
    def test_two_cycles_give_five(self):
        fam = ApexFamily((3, 4), (2,))
        g = realize(fam)
        X = list(range(2, 9))
        assert principal_bound_check(g, X, [int(g.degree(x)) for x in X])

    def test_single_vertex(self):
        g = realize(ApexFamily((3,), (2,)))
        assert principal_bound_check(g, [5], [5])

    def test_random_subsets(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            g = random_graph(rng, int(rng.integers(2, 15)))
            k = int(rng.integers(1, g.n + 1))
            X = rng.choice(g.n, size=k, replace=False)
            qv = [float(rng.uniform(0, g.degree(int(x)))) for x in X]
            assert principal_bound_check(g, X, qv)

    def test_out_of_range(self):
        g = build_atom("cycle", 4)
        with pytest.raises(DomainError):
            principal_bound_check(g, [0], [3])
        with pytest.raises(DomainError):
            principal_bound_check(g, [0, 0], [1, 1])


class TestPerronSymmetry:
    def test_p6(self):
        assert perron_symmetry_check(ApexFamily((), (6,)))

    def test_p7_c3(self):
        assert perron_symmetry_check(ApexFamily((3,), (7,)))

    def test_p2(self):
        assert perron_symmetry_check(ApexFamily((), (2,)))

    def test_digon_context(self):
        assert perron_symmetry_check(ApexFamily((2, 5), (9, 3)))

    def test_no_path(self):
        with pytest.raises(DomainError):
            perron_symmetry_check(ApexFamily((3,), ()))

    @pytest.mark.parametrize("l", range(2, 13))
    def test_all_lengths(self, l):
        assert perron_symmetry_check(ApexFamily((3, 4), (l, 2)))


class TestRewiring:
    def test_l5_s3(self):
        before, after = rewiring_compare(ApexFamily((3,), (5, 2)), 0, 3)
        assert after > before

    def test_digon_rewiring(self):
        fam = ApexFamily((3,), (4,))
        assert rewire_family(fam, 0, 2) == ApexFamily((2, 3), (2,))
        before, after = rewiring_compare(fam, 0, 2)
        assert after > before

    def test_l6_s4(self):
        before, after = rewiring_compare(ApexFamily((), (6,)), 0, 4)
        assert after - before > 1e-9

    @pytest.mark.parametrize("l,s", [(5, 4), (5, 2), (4, 3), (3, 2), (6, 5)])
    def test_out_of_range(self, l, s):
        with pytest.raises(DomainError):
            rewire_family(ApexFamily((), (l,)), 0, s)

    def test_increase_below_tol_raises(self):
        with pytest.raises(VerificationError):
            rewiring_compare(ApexFamily((), (6,)), 0, 4, tol=10.0)

    def test_exact_certificate_for_tiny_gap(self):
        fam = ApexFamily((6, 5), (12, 5))
        gap = rewiring_gap_exact(fam, 0, 3)
        assert 0 < gap < 1e-12


class TestSharedLeaves:
    def test_star(self):
        star = apex_join(build_atom("empty", 4))
        assert shared_leaf_mul_check(star, [0, 1, 2, 3], 4)

    def test_single_leaf(self):
        assert shared_leaf_mul_check(build_atom("path", 3), [0], 1)

    def test_spider(self):
        edges = [(0, k) for k in range(1, 6)] + [(0, 6), (6, 7)]
        g = Multigraph.from_edges(8, edges)
        assert shared_leaf_mul_check(g, [1, 2, 3, 4, 5], 0)

    def test_precondition(self):
        with pytest.raises(DomainError):
            shared_leaf_mul_check(build_atom("path", 4), [0, 2], 1)


class TestDegreeBounds:
    def test_small_order_not_applicable(self):
        rep = degree_bound_check(realize(ApexFamily((3, 3), (2,))))
        assert rep.results["connected_d1_d2"] is None

    def test_large_cycle_family(self):
        rep = degree_bound_check(realize(ApexFamily((13,), (2,))))
        assert rep.n == 16
        assert rep.results["connected_d1_d2"] is True
        assert rep.results["sigma1_le_d1_plus_3"] is True
        assert rep.ok

    def test_disconnected_not_applicable(self):
        g = disjoint_union(build_atom("cycle", 3), build_atom("cycle", 4))
        rep = degree_bound_check(g)
        assert rep.results["sigma1_le_d1_plus_3"] is None
