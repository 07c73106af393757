import pytest

from nilclean import (
    Certificate,
    criterion_s2nc,
    criterion_wsnc,
    find_certificate,
    find_s2nc_certificate,
    find_snc_certificate,
    find_swnc_certificate,
    find_wsnc_certificate,
    idempotents,
    is_class,
    lemma2nil_variants,
    matrix_ring,
    nilpotence,
    nilpotents,
    product,
    upper_triangular,
    verify_certificate,
    zn,
)
from nilclean.decompose import KINDS, classification_report
from nilclean.errors import BudgetExceeded

SIGN_PATTERNS = {
    "snc": ((1, None),),
    "swnc": ((1, None), (-1, None)),
    "s2nc": ((1, 1),),
    "wsnc": ((1, 1), (1, -1), (-1, 1), (-1, -1)),
}


def reference_certificate(R, a, kind):
    """Independent first-hit search: plain loops over the documented order
    (sign patterns, then e, then f lexicographically), checking the sum
    against every nilpotent directly."""
    ids = idempotents(R)
    nils = set(nilpotents(R))

    def signed(s, x):
        return x if s > 0 else R.neg(x)

    for se, sf in SIGN_PATTERNS[kind]:
        for e in ids:
            if sf is None:
                n = R.sub(a, signed(se, e))
                if n in nils and R.commute(e, n):
                    return (se, e, None, None, n)
            else:
                for f in ids:
                    n = R.sub(a, R.add(signed(se, e), signed(sf, f)))
                    if n in nils and R.commute(e, f) and R.commute(e, n) and R.commute(f, n):
                        return (se, e, sf, f, n)
    return None


def as_tuple(cert):
    if cert is None:
        return None
    return (cert.sign_e, cert.e, cert.sign_f, cert.f, cert.n)


class TestCanonicalSearchAgainstOracle:
    @pytest.mark.parametrize("build", [
        lambda: zn(5), lambda: zn(6), lambda: zn(9), lambda: zn(12),
        lambda: product(zn(5), zn(5)),
        lambda: matrix_ring(zn(2), 2),
        lambda: upper_triangular(zn(2), 2),
    ])
    @pytest.mark.parametrize("kind", KINDS)
    def test_every_element_matches(self, build, kind):
        R = build()
        for a in R.elements():
            got = as_tuple(find_certificate(R, a, kind))
            assert got == reference_certificate(R, a, kind), (R.label, a, kind)


class TestWsncCertificates:
    def test_z5_element_3_needs_both_minus_signs(self):
        cert = find_wsnc_certificate(zn(5), 3)
        assert (cert.sign_e, cert.e, cert.sign_f, cert.f, cert.n) == (-1, 1, -1, 1, 0)

    def test_z5_zero_takes_first_candidate(self):
        cert = find_wsnc_certificate(zn(5), 0)
        assert (cert.sign_e, cert.e, cert.sign_f, cert.f, cert.n) == (1, 0, 1, 0, 0)

    def test_z5xz5_minus2_2_has_no_certificate(self):
        R = product(zn(5), zn(5))
        a = R.encode((3, 2))  # (-2, 2)
        assert find_wsnc_certificate(R, a) is None

    def test_z4_canonical_order(self):
        # first (+,+) hit in (e, f) order is e=0, f=1, n=2
        cert = find_wsnc_certificate(zn(4), 3)
        assert (cert.sign_e, cert.e, cert.sign_f, cert.f, cert.n) == (1, 0, 1, 1, 2)


class TestOtherClassCertificates:
    def test_s2nc_examples(self):
        assert find_s2nc_certificate(zn(5), 3) is None
        cert = find_s2nc_certificate(zn(6), 5)
        assert (cert.e, cert.f, cert.n) == (1, 4, 0)
        for R in (zn(5), zn(12)):
            cert = find_s2nc_certificate(R, 0)
            assert (cert.e, cert.f, cert.n) == (0, 0, 0)

    def test_swnc_examples(self):
        cert = find_swnc_certificate(zn(3), 2)
        assert (cert.sign_e, cert.e, cert.n) == (-1, 1, 0)
        cert = find_swnc_certificate(zn(4), 3)
        assert (cert.sign_e, cert.e, cert.n) == (1, 1, 2)
        assert find_swnc_certificate(zn(5), 3) is None
        assert find_swnc_certificate(zn(5), 2) is None

    def test_snc_examples(self):
        cert = find_snc_certificate(zn(4), 3)
        assert (cert.e, cert.n) == (1, 2)
        assert find_snc_certificate(zn(5), 2) is None
        for R in (zn(7), matrix_ring(zn(2), 2)):
            cert = find_snc_certificate(R, R.one)
            assert (cert.e, cert.n) == (R.one, R.zero)


class TestRingVerdicts:
    def test_z5(self):
        assert is_class(zn(5), "wsnc").holds
        v = is_class(zn(5), "s2nc")
        assert (v.holds, v.witness) == (False, 3)
        v = is_class(zn(5), "swnc")
        assert (v.holds, v.witness) == (False, 2)

    def test_m2z2_not_wsnc_and_criterion_agrees(self):
        M = matrix_ring(zn(2), 2)
        v = is_class(M, "wsnc")
        crit = criterion_wsnc(M)
        assert v.holds is False
        assert crit.holds is False
        assert find_wsnc_certificate(M, v.witness) is None

    def test_hierarchy_implications(self, small_catalog):
        for R in small_catalog:
            verdicts = {k: is_class(R, k).holds for k in KINDS}
            if verdicts["snc"]:
                assert verdicts["s2nc"] and verdicts["swnc"]
            if verdicts["s2nc"] or verdicts["swnc"]:
                assert verdicts["wsnc"]


class TestCriteria:
    def test_wsnc_criterion_z5(self):
        crit = criterion_wsnc(zn(5))
        assert crit.holds and crit.thirty_nilpotent
        assert crit.branches[3] == 3  # 3*4*5 = 60 = 0 mod 5

    def test_wsnc_criterion_z7_thirty_is_unit(self):
        crit = criterion_wsnc(zn(7))
        assert not crit.holds and not crit.thirty_nilpotent

    def test_wsnc_criterion_z25(self):
        crit = criterion_wsnc(zn(25))
        assert crit.holds
        # 8*9*10 = 720 = 20 mod 25 and 20**2 = 400 = 0
        assert (720 % 25, 720 ** 2 % 25) == (20, 0)
        assert crit.branches[8] == 3

    def test_s2nc_criterion(self):
        assert criterion_s2nc(zn(6)).holds  # a**3 = a mod 6
        crit = criterion_s2nc(zn(5))
        assert (crit.holds, crit.witness) == (False, 2)  # 2 - 8 = 4, a unit
        assert criterion_s2nc(zn(1)).holds

    def test_oracle_equivalence_sample(self, small_catalog):
        for R in small_catalog:
            assert is_class(R, "wsnc").holds == criterion_wsnc(R).holds, R.label
            assert is_class(R, "s2nc").holds == criterion_s2nc(R).holds, R.label

    def test_branch_tags_verify(self):
        for n in (5, 10, 25, 30):
            R = zn(n)
            crit = criterion_wsnc(R)
            for a, tag in zip(R.elements(), crit.branches):
                vals = {
                    1: R.sub(R.pow(a, 3), a),
                    2: R.mul(R.mul(a, R.sub(a, R.one)), R.sub(a, R.int_image(2))),
                    3: R.mul(R.mul(a, R.add(a, R.one)), R.add(a, R.int_image(2))),
                }
                if tag:
                    assert nilpotence(R, vals[tag]) is not None
                    for earlier in range(1, tag):
                        assert nilpotence(R, vals[earlier]) is None


class TestLemma2NilVariants:
    def test_z9_ringwide_equivalence(self):
        R = zn(9)
        assert nilpotence(R, R.int_image(3)) is not None
        have = {"pp": True, "pm": True, "mm": True}
        for a in R.elements():
            opts = lemma2nil_variants(R, a)
            have["pp"] &= opts.plus_plus is not None
            have["pm"] &= opts.plus_minus is not None
            have["mm"] &= opts.minus_minus is not None
        assert len(set(have.values())) == 1

    def test_z3_element_one_options(self):
        opts = lemma2nil_variants(zn(3), 1)
        assert as_tuple(opts.plus_plus) == (1, 0, 1, 1, 0)
        assert as_tuple(opts.plus_minus) == (1, 1, -1, 0, 0)
        assert as_tuple(opts.minus_minus) == (-1, 1, -1, 1, 0)

    def test_zero_always_decomposes(self, small_catalog):
        for R in small_catalog:
            opts = lemma2nil_variants(R, R.zero)
            assert opts.plus_plus and opts.plus_minus and opts.minus_minus

    def test_noncommutative_ring_with_3_nilpotent(self):
        # T2(Z3) has 3*1 = 0 and is strongly 2-nil-clean, so all three
        # fixed-sign forms must exist for every element
        T = upper_triangular(zn(3), 2)
        assert T.int_image(3) == T.zero
        assert is_class(T, "s2nc").holds
        for a in T.elements():
            opts = lemma2nil_variants(T, a)
            assert opts.plus_plus and opts.plus_minus and opts.minus_minus


class TestCertificateIntegrity:
    @pytest.mark.parametrize("build", [
        lambda: zn(30), lambda: matrix_ring(zn(2), 2),
        lambda: upper_triangular(zn(4), 2), lambda: product(zn(5), zn(5)),
    ])
    def test_every_certificate_reverifies(self, build):
        R = build()
        for kind in KINDS:
            for a in R.elements():
                cert = find_certificate(R, a, kind)
                if cert is not None:
                    verify_certificate(R, cert)

    def test_verify_rejects_corrupted(self):
        cert = find_wsnc_certificate(zn(4), 3)
        bad = Certificate(kind=cert.kind, element=cert.element,
                          sign_e=cert.sign_e, e=cert.e, n=cert.n,
                          nil_index=cert.nil_index + 1,
                          sign_f=cert.sign_f, f=cert.f)
        with pytest.raises(ValueError):
            verify_certificate(zn(4), bad)
        bad = Certificate(kind=cert.kind, element=2, sign_e=cert.sign_e,
                          e=cert.e, n=cert.n, nil_index=cert.nil_index,
                          sign_f=cert.sign_f, f=cert.f)
        with pytest.raises(ValueError):
            verify_certificate(zn(4), bad)

    def test_json_schema(self):
        cert = find_wsnc_certificate(zn(5), 3)
        d = cert.to_json_dict("Z5")
        assert d == {"ring": "Z5", "element": 3, "sign_e": -1, "sign_f": -1,
                     "e": 1, "f": 1, "n": 0, "nil_index": 1, "class": "wsnc"}
        snc = find_snc_certificate(zn(4), 3)
        d = snc.to_json_dict("Z4")
        assert d["sign_f"] is None and d["f"] is None


class TestBudget:
    def test_budget_exceeded_is_not_a_negative(self):
        R = zn(6)
        with pytest.raises(BudgetExceeded):
            find_wsnc_certificate(R, 5, budget=1)
        verdict = is_class(R, "wsnc", budget=1)
        assert verdict.holds is None and verdict.budget_exceeded

    def test_default_budget_resolves_catalog(self, small_catalog):
        for R in small_catalog:
            assert is_class(R, "wsnc").holds is not None

    def test_budget_formula_boundary(self):
        # the accounted search space is patterns * |Id|^2 * |nil|:
        # 4 * 16 * 1 = 64 for the wsnc search in Z6
        R = zn(6)
        assert find_wsnc_certificate(R, 5, budget=64) is not None
        with pytest.raises(BudgetExceeded) as exc:
            find_wsnc_certificate(R, 5, budget=63)
        assert exc.value.required == 64


class TestClassificationReport:
    def test_report_consistency(self):
        report = classification_report(zn(5))
        assert report.verdicts["wsnc"].holds is True
        assert report.verdicts["s2nc"].witness == 3
        assert report.oracles_agree
        assert report.counts == {"idempotents": 2, "nilpotents": 1,
                                 "units": 4, "jacobson": 1}

    def test_uniform_branch_diagnostic(self):
        # in Z2 the first branch already covers every element
        assert criterion_wsnc(zn(2)).uniform_branch == 1
        # in Z5 no single branch covers all five elements
        assert criterion_wsnc(zn(5)).uniform_branch is None
