import numpy as np
import pytest
from hypothesis import given, strategies as st

from qspec.closed_form import (ClosedSpectrum, cubic_brackets, cubic_coeffs, matching_eigenvectors,
                               matching_spectrum, mul_one_formula, p3_quintic, p3_quotient_poly,
                               sigma1_family, sigma_n_below_one)
from qspec.errors import DomainError
from qspec.exact import exact_multiplicity, real_roots
from qspec.graph_core import ApexFamily, q_matrix, realize
from qspec.numeric import q_spectrum, spectra_close

matching_families = st.builds(
    ApexFamily.matching,
    st.lists(st.integers(3, 9), min_size=1, max_size=4),
    st.integers(1, 4),
)


class TestCubic:
    @pytest.mark.parametrize("n,q,coeffs", [
        (6, 1, (1, -13, 50, -56)),
        (16, 6, (1, -23, 120, -156)),
        (9, 1, (1, -16, 71, -92)),
    ])
    def test_coefficients(self, n, q, coeffs):
        assert cubic_coeffs(n, q).coeffs == coeffs

    def test_matches_quotient_of_realized_graph(self):
        from qspec.quotient import matching_partition, quotient_matrix
        from qspec.exact import char_poly
        fam = ApexFamily((6,), (2,))
        qm = quotient_matrix(q_matrix(realize(fam)), matching_partition(fam))
        assert char_poly(qm.as_array(int)) == cubic_coeffs(9, 1)

    def test_brackets(self):
        for n, q in ((6, 1), (16, 6), (52, 12), (100, 48)):
            assert len(cubic_brackets(n, q)) == 3


class TestMatchingSpectrum:
    def test_c3_k2(self):
        fam = ApexFamily((3,), (2,))
        spec = matching_spectrum(fam)
        assert isinstance(spec, ClosedSpectrum) and len(spec) == 6
        assert sorted(spec.cosine_parts) == pytest.approx([2, 2])
        assert spec.fixed_parts == {1: 1, 3: 0, 5: 0}
        assert spectra_close(spec.values, q_spectrum(realize(fam)), 1e-8)

    def test_c4_k2_has_double_one(self):
        vals = matching_spectrum(ApexFamily((4,), (2,))).values
        assert np.sum(np.abs(vals - 1) < 1e-9) == 2

    def test_two_triangles(self):
        vals = matching_spectrum(ApexFamily((3, 3), (2,))).values
        assert np.sum(np.abs(vals - 5) < 1e-9) == 1
        assert vals[1] == pytest.approx(5)

    def test_root_ordering(self):
        spec = matching_spectrum(ApexFamily((5, 3), (2, 2)))
        l1, l2, l3 = spec.cubic_roots
        assert l1 > spec.n > 5 > l2 > 3 > l3 > 1

    @pytest.mark.parametrize("fam", [
        ApexFamily((), (2,)),
        ApexFamily((3,), ()),
        ApexFamily((2,), (2,)),
        ApexFamily((3,), (3,)),
    ])
    def test_outside_hypotheses(self, fam):
        with pytest.raises(DomainError):
            matching_spectrum(fam)

    def test_annotations(self):
        origins = {o for _, o in matching_spectrum(ApexFamily((3, 4), (2, 2))).annotated()}
        assert origins == {"cubic", "fixed", "cosine"}


@given(matching_families)
def test_closed_form_matches_jacobi(fam):
    spec = matching_spectrum(fam)
    assert len(spec.annotated()) == fam.n
    assert all(1 <= c < 5 for c in spec.cosine_parts)
    assert spectra_close(spec.values, q_spectrum(realize(fam)), 1e-8)


@given(matching_families)
def test_eigenvector_certificates(fam):
    Q = q_matrix(realize(fam)).astype(float)
    for lam, v in matching_eigenvectors(fam):
        assert np.linalg.norm(v) > 0
        assert np.abs(Q @ v - lam * v).max() <= 1e-7


class TestMulOne:
    def test_examples(self):
        assert mul_one_formula(ApexFamily((4, 6, 3), (2, 2))) == 4
        assert mul_one_formula(ApexFamily((3,), (2,))) == 1

    @given(matching_families)
    def test_matches_exact_rank(self, fam):
        assert mul_one_formula(fam) == exact_multiplicity(q_matrix(realize(fam)), 1)


class TestSigma1:
    def test_split_invariance(self):
        a = sigma1_family(ApexFamily((6,), (2,)))
        b = sigma1_family(ApexFamily((3, 3), (2,)))
        assert a == b

    def test_digon(self):
        fam = ApexFamily((2,), (2,))
        assert cubic_coeffs(5, 1).coeffs == (1, -12, 43, -44)
        s1 = sigma1_family(fam)
        assert s1 == pytest.approx(max(real_roots(cubic_coeffs(5, 1))), abs=1e-12)
        assert abs(s1 - q_spectrum(realize(fam, multigraph=True)).largest) <= 1e-8

    @given(matching_families)
    def test_agrees_with_closed_form_top(self, fam):
        assert sigma1_family(fam) == pytest.approx(matching_spectrum(fam).cubic_roots[0], abs=1e-12)


class TestP3:
    def test_value_at_one(self):
        for n in range(6, 60):
            for q in range(1, (n - 4) // 2 + 1):
                assert p3_quintic(n, q)(1) == 8

    def test_value_at_zero(self):
        assert p3_quintic(10, 1)(0) == -392

    def test_roots_lift_into_spectrum(self):
        fam = ApexFamily((4,), (3, 2))
        assert (fam.n, fam.q) == (10, 1)
        assert p3_quotient_poly(fam) == p3_quintic(10, 1)
        host = q_spectrum(realize(fam)).values
        for r in real_roots(p3_quintic(10, 1)):
            assert np.min(np.abs(host - r)) <= 1e-8

    @pytest.mark.parametrize("fam", [
        ApexFamily((3,), (3, 2)),
        ApexFamily((), (3,)),
        ApexFamily((4,), (3,)),
        ApexFamily((2, 2), (3, 2, 2)),
    ])
    def test_sigma_n_below_one(self, fam):
        assert sigma_n_below_one(fam)
        assert q_spectrum(realize(fam, multigraph=True)).smallest < 1

    @pytest.mark.parametrize("fam", [ApexFamily((3,), (2,)), ApexFamily((3,), (3, 3)),
                                     ApexFamily((), (4,))])
    def test_sigma_n_hypotheses(self, fam):
        with pytest.raises(DomainError):
            sigma_n_below_one(fam)
