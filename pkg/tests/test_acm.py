import pytest

from k3acm.acm import (
    ThmCase,
    acm_scan_length,
    classify,
    classify_thm12,
    h1_profile,
    is_acm,
    is_initialized,
    is_ulrich,
)
from k3acm.cohomology import cohomology_dims, is_effective
from k3acm.exceptions import (
    EmptyWindow,
    NeitherSideEffective,
    NotEffective,
    NotVeryAmple,
    OutOfScope,
    ZeroClass,
)
from k3acm.lattice import DivisorClass, enumerate_by_degree, pair

H, G = DivisorClass((1, 0)), DivisorClass((0, 1))
C, F = H, G


class TestInitialized:
    def test_examples(self, q2, fam53):
        assert is_initialized(q2, H, G)
        assert not is_initialized(q2, H, H)
        assert is_initialized(fam53, 2 * C, 3 * C - 2 * F)

    def test_needs_very_ample(self, q2):
        with pytest.raises(NotVeryAmple):
            is_initialized(q2, H - G, G)


class TestIsACM:
    def test_examples(self, q2):
        assert is_acm(q2, H, G)
        assert not is_acm(q2, H, 2 * (H - G))
        assert is_acm(q2, H, H - G)

    def test_negative_side(self, q2):
        assert is_acm(q2, H, -G)
        assert not is_acm(q2, H, -2 * (H - G))

    def test_errors(self, q2, fam53):
        with pytest.raises(ZeroClass):
            is_acm(q2, H, (0, 0))
        with pytest.raises(NeitherSideEffective):
            is_acm(fam53, 2 * C, C - 2 * F)

    def test_scan_length(self, q2, fam53):
        assert acm_scan_length(q2, H, G) == 1
        # H.D = 36, H^2 = 32 -> 36 <= 2*32 - 1
        assert acm_scan_length(fam53, 2 * C, 3 * C - 2 * F) == 2

    def test_scan_robust_to_longer_window(self, q2, fam63):
        for lat, h in ((q2, H), (fam63, C)):
            for d in enumerate_by_degree(lat, h, 25, -50):
                if is_effective(lat, h, d):
                    assert is_acm(lat, h, d) == is_acm(lat, h, d, extra_steps=3)

    def test_scan_agrees_with_wide_profile(self, q2, fam63):
        # the finite scan decides vanishing over a much wider window
        for lat, h in ((q2, H), (fam63, C)):
            for d in enumerate_by_degree(lat, h, 20, -50):
                if is_effective(lat, h, d):
                    wide = all(v == 0 for _, v in h1_profile(lat, h, d, -12, 12))
                    assert is_acm(lat, h, d) == wide


class TestProfile:
    def test_examples(self, q2):
        assert h1_profile(q2, H, G, -2, 2) == [(l, 0) for l in range(-2, 3)]
        assert h1_profile(q2, H, 2 * (H - G), 0, 0) == [(0, 1)]
        assert h1_profile(q2, H, (0, 0), 0, 0) == [(0, 0)]

    def test_empty_window(self, q2):
        with pytest.raises(EmptyWindow):
            h1_profile(q2, H, G, 1, 0)

    def test_duality_symmetry(self, q2, fam63):
        n = 4
        for lat, h in ((q2, H), (fam63, C)):
            for d in enumerate_by_degree(lat, h, 15, -30):
                pos = [v for _, v in h1_profile(lat, h, d, -n, n)]
                neg = [v for _, v in h1_profile(lat, h, -d, -n, n)]
                assert pos == neg[::-1]


class TestClassify:
    def test_examples(self, q2, fam53):
        assert classify_thm12(q2, H, G) is ThmCase.A
        assert classify_thm12(q2, H, H - G) is ThmCase.B
        assert classify_thm12(fam53, 2 * C, 3 * C - 2 * F) is ThmCase.D
        assert classify_thm12(q2, H, 2 * (H - G)) is None

    def test_errors(self, q2, fam53):
        with pytest.raises(NotEffective):
            classify_thm12(q2, H, -G)
        with pytest.raises(NotEffective):
            classify_thm12(q2, H, (0, 0))
        # square -4 < 32 - 6
        with pytest.raises(OutOfScope):
            classify_thm12(fam53, 2 * C, C + 0 * F)

    def test_case_d_dimension_formula(self, fam53):
        h, d = 2 * C, 3 * C - 2 * F
        h2 = pair(fam53, h, h)
        assert 2 * cohomology_dims(fam53, h, 2 * h - d).h0 == 3 * h2 - 2 * pair(fam53, h, d)

    def test_cases_disjoint(self, q2, fam63):
        # membership in each numerical case, evaluated independently
        for lat, h in ((q2, H), (fam63, C)):
            h2 = pair(lat, h, h)
            for d in enumerate_by_degree(lat, h, 2 * h2, h2 - 6):
                sq, deg = pair(lat, d, d), pair(lat, h, d)
                hits = [
                    sq == h2 - 6 and h2 - 3 <= deg <= h2 - 1,
                    sq == h2 - 4 and h2 - 1 <= deg <= h2,
                    sq == h2 - 2 and deg == h2 + 1,
                    sq >= h2 and sq == 2 * deg - h2 - 4,
                ]
                assert sum(hits) <= 1

    def test_record_invariants(self, q2):
        rec = classify(q2, H, G)
        assert rec.acm and rec.initialized and rec.case is ThmCase.A and not rec.ulrich
        assert all(v == 0 for _, v in rec.h_profile)
        d = rec.to_dict()
        assert d["class"] == [0, 1] and d["case"] == "a"


class TestUlrich:
    def test_examples(self, ulrich_lat, fam53, q2):
        assert is_ulrich(ulrich_lat, H, G)
        assert classify_thm12(ulrich_lat, H, G) is ThmCase.D
        assert not is_ulrich(fam53, 2 * C, 3 * C - 2 * F)
        assert not is_ulrich(q2, H, G)
