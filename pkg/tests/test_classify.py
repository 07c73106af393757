import math

from nilclean import (
    center,
    idempotents,
    is_idempotent,
    is_strongly_pi_regular,
    is_unit,
    jacobson_radical,
    matrix_ring,
    nilpotence,
    nilpotents,
    units,
    upper_triangular,
    zn,
)


class TestUnits:
    def test_zn_units_match_gcd(self):
        for n in (5, 12, 30):
            R = zn(n)
            expected = [a for a in range(n) if math.gcd(a, n) == 1]
            assert units(R) == expected
            assert is_unit(R, 7 % n) == (math.gcd(7 % n, n) == 1)
        assert is_unit(zn(12), 7)
        assert not is_unit(zn(12), 6)

    def test_unipotent_matrix_is_unit(self):
        M = matrix_ring(zn(2), 2)
        u = M.encode((1, 1, 0, 1))  # [[1,1],[0,1]], determinant 1
        assert is_unit(M, u)
        assert not is_unit(M, M.encode((0, 1, 0, 0)))


class TestIdempotents:
    def test_zn6_oracle(self):
        expected = sorted(x for x in range(6) if x * x % 6 == x)
        assert expected == [0, 1, 3, 4]
        assert idempotents(zn(6)) == expected
        assert is_idempotent(zn(6), 3)
        assert not is_idempotent(zn(6), 2)

    def test_zero_and_one_always(self, small_catalog):
        for R in small_catalog:
            ids = idempotents(R)
            assert R.zero in ids and R.one in ids


class TestNilpotence:
    def test_examples(self):
        assert nilpotence(zn(8), 2).index == 3
        assert nilpotence(zn(25), 10).index == 2
        assert nilpotence(zn(5), 3) is None
        assert nilpotence(zn(7), 0).index == 1

    def test_zn12_oracle(self):
        def nil_by_powers(a, n):
            x = a % n
            for _ in range(n):
                if x == 0:
                    return True
                x = x * a % n
            return False
        expected = [a for a in range(12) if nil_by_powers(a, 12)]
        assert expected == [0, 6]
        assert nilpotents(zn(12)) == expected

    def test_least_index_property(self, small_catalog):
        for R in small_catalog:
            for a in nilpotents(R):
                wit = nilpotence(R, a)
                assert R.pow(a, wit.index) == R.zero
                if wit.index > 1:
                    assert R.pow(a, wit.index - 1) != R.zero
                assert wit.index <= R.size

    def test_nilpotents_meet_idempotents_in_zero(self, small_catalog):
        for R in small_catalog:
            both = set(nilpotents(R)) & set(idempotents(R))
            assert both == {R.zero}, R.label


class TestCenter:
    def test_matrix_ring_center_is_scalars(self):
        M = matrix_ring(zn(2), 2)
        # independent check: brute-force commutation over decoded matrices
        def commutes_with_all(a):
            return all(M.mul(a, b) == M.mul(b, a) for b in M.elements())
        expected = sorted(a for a in M.elements() if commutes_with_all(a))
        assert center(M) == expected
        assert center(M) == [M.zero, M.one]

    def test_commutative_ring_center_is_everything(self):
        assert center(zn(9)) == list(range(9))


class TestJacobson:
    def test_examples(self):
        assert jacobson_radical(zn(12)) == [0, 6]
        assert jacobson_radical(zn(5)) == [0]
        T = upper_triangular(zn(2), 2)
        e12 = T.encode((0, 1, 0))
        assert jacobson_radical(T) == sorted([T.zero, e12])

    def test_radical_of_triangular_ring_oracle(self):
        # J of the upper-triangular ring over Z4 is exactly the matrices
        # with diagonal entries in J(Z4) = {0, 2}; positions encode as
        # ((0,0), (0,1), (1,1))
        T = upper_triangular(zn(4), 2)
        expected = sorted(T.encode((a, b, c))
                          for a in (0, 2) for b in range(4) for c in (0, 2))
        assert jacobson_radical(T) == expected

    def test_radical_is_two_sided_ideal(self, small_catalog):
        for R in small_catalog:
            jac = set(jacobson_radical(R))
            for a in jac:
                assert R.neg(a) in jac
                for b in jac:
                    assert R.add(a, b) in jac
                for r in R.elements():
                    assert R.mul(r, a) in jac
                    assert R.mul(a, r) in jac

    def test_one_plus_radical_is_unit(self, small_catalog):
        for R in small_catalog:
            for a in jacobson_radical(R):
                assert is_unit(R, R.add(R.one, a))


class TestStrongPiRegularity:
    def test_all_small_zn(self):
        for n in range(1, 61):
            assert is_strongly_pi_regular(zn(n)).holds

    def test_witness_z8(self):
        report = is_strongly_pi_regular(zn(8))
        assert report.witnesses[2] == (3, 0)  # 2^3 = 0 = 2^4 * 0

    def test_witness_z5(self):
        report = is_strongly_pi_regular(zn(5))
        assert report.witnesses[2] == (1, 3)  # 2 = 4 * 3 mod 5

    def test_witnesses_verify(self, small_catalog):
        for R in small_catalog:
            report = is_strongly_pi_regular(R)
            assert report.holds
            for a, wit in zip(R.elements(), report.witnesses):
                t, r = wit
                assert R.pow(a, t) == R.mul(R.pow(a, t + 1), r)
