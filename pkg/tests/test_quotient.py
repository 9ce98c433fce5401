from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qspec.closed_form import cubic_coeffs, p3_quintic
from qspec.errors import DomainError, PreconditionError
from qspec.exact import char_poly
from qspec.graph_core import ApexFamily, build_atom, q_matrix, realize
from qspec.quotient import (QuotientMatrix, lift_check, matching_partition, matching_quotient, p3_matrix,
                            p3_partition, quotient_matrix)


class TestQuotientMatrix:
    def test_matching_family(self):
        fam = ApexFamily((3,), (2,))
        qm = quotient_matrix(q_matrix(realize(fam)), [[5], [2, 3, 4], [0, 1]])
        assert qm.equitable
        assert qm.as_array(int).tolist() == [[5, 3, 2], [1, 5, 0], [1, 0, 3]]

    def test_single_cell_regular(self):
        qm = quotient_matrix(q_matrix(build_atom("cycle", 3)), [[0, 1, 2]])
        assert qm.equitable and qm.N == ((Fraction(4),),)

    def test_unbalanced_split(self):
        qm = quotient_matrix(q_matrix(build_atom("path", 3)), [[0, 1], [2]])
        assert not qm.equitable
        with pytest.raises(PreconditionError):
            lift_check(q_matrix(build_atom("path", 3)), qm)

    @pytest.mark.parametrize("parts", [[[0, 1]], [[0, 1], [1, 2]], [[0, 1, 2], []]])
    def test_invalid_partitions(self, parts):
        with pytest.raises(DomainError):
            quotient_matrix(q_matrix(build_atom("path", 3)), parts)


class TestFixedMatrices:
    def test_matching_quotient(self):
        assert matching_quotient(9, 1).tolist() == [[8, 6, 2], [1, 5, 0], [1, 0, 3]]
        assert char_poly(matching_quotient(6, 1)).coeffs == (1, -13, 50, -56)

    def test_p3_matrix_row(self):
        assert p3_matrix(10, 1)[2].tolist() == [1, 0, 2, 1, 0]
        assert p3_matrix(10, 1)[0].tolist() == [9, 4, 2, 1, 2]

    def test_grid(self):
        for n in range(6, 101):
            for q in range(1, (n - 4) // 2 + 1):
                assert char_poly(matching_quotient(n, q)) == cubic_coeffs(n, q)
                assert char_poly(p3_matrix(n, q)) == p3_quintic(n, q)

    def test_partitions_reproduce_fixed_matrices(self):
        fam = ApexFamily((3, 4), (2, 2))
        qm = quotient_matrix(q_matrix(realize(fam)), matching_partition(fam))
        assert (qm.as_array(int) == matching_quotient(fam.n, fam.q)).all()
        fam = ApexFamily((3, 4), (3, 2, 2))
        qm = quotient_matrix(q_matrix(realize(fam)), p3_partition(fam))
        assert qm.equitable
        assert (qm.as_array(int) == p3_matrix(fam.n, fam.q)).all()


class TestLift:
    def test_matching_family(self):
        fam = ApexFamily((3,), (2,))
        Q = q_matrix(realize(fam))
        rep = lift_check(Q, quotient_matrix(Q, matching_partition(fam)))
        assert rep.all_found and rep.tops_coincide and len(rep.matched) == 3

    def test_p3_family(self):
        fam = ApexFamily((3,), (3, 2))
        Q = q_matrix(realize(fam))
        rep = lift_check(Q, quotient_matrix(Q, p3_partition(fam)))
        assert rep.ok and len(rep.matched) == 5

    def test_regular_one_cell(self):
        Q = q_matrix(build_atom("cycle", 6))
        rep = lift_check(Q, quotient_matrix(Q, [list(range(6))]))
        assert rep.ok and rep.top_host == pytest.approx(4)

    def test_negative_control(self):
        fam = ApexFamily((3,), (2,))
        Q = q_matrix(realize(fam))
        qm = quotient_matrix(Q, matching_partition(fam))
        wrong = QuotientMatrix(qm.parts, ((Fraction(5), Fraction(3), Fraction(2)),
                                          (Fraction(1), Fraction(6), Fraction(0)),
                                          (Fraction(1), Fraction(0), Fraction(3))), True)
        rep = lift_check(Q, wrong)
        assert not rep.ok


@given(st.lists(st.integers(3, 9), min_size=1, max_size=4), st.integers(1, 4))
def test_matching_partition_lifts(cycles, q):
    fam = ApexFamily.matching(cycles, q)
    Q = q_matrix(realize(fam))
    qm = quotient_matrix(Q, matching_partition(fam))
    assert qm.equitable
    assert lift_check(Q, qm, 1e-8).ok
