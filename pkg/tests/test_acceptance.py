"""Exit criteria.  Everything is exact integer arithmetic, so every
tolerance is equality."""

import random
import time

import pytest

from k3acm.acm import ThmCase, is_acm
from k3acm.cohomology import cohomology_dims, is_effective, reduce_to_nef
from k3acm.harness import cross_validate, enumerate_acm, has_neg_two_vector, verify_prop41
from k3acm.lattice import DivisorClass, chi, enumerate_by_degree, make_lattice, pair, rank2_family
from k3acm.polarization import is_very_ample

H, G = DivisorClass((1, 0)), DivisorClass((0, 1))
C, F = H, G
Q2 = make_lattice([[4, 1], [1, -2]], basis=("H", "G"))
ULRICH = make_lattice([[4, 6], [6, 4]], basis=("H", "D"))


def family_suite(g_max=16):
    out = []
    for g in range(3, g_max + 1):
        for d in range(3, (g + 3) // 2 + 1):
            lat = rank2_family(g, d)
            if is_very_ample(lat, C):
                out.append((f"({g},{d}) C", lat, C))
            if (g + 1) % d == 0:
                out.append((f"({g},{d}) {(g + 1) // d}C", lat, DivisorClass(((g + 1) // d, 0))))
    return out


@pytest.fixture(scope="module")
def criterion1_reports():
    start = time.perf_counter()
    suite = [("Q2 H", Q2, H), ("Ulrich H", ULRICH, H)] + family_suite()
    reports = [(name, lat, h, cross_validate(lat, h, 0)) for name, lat, h in suite]
    return reports, time.perf_counter() - start


def test_criterion_1_classifier_cross_validation(criterion1_reports, acceptance_line):
    reports, elapsed = criterion1_reports
    mismatches = sum(len(r.mismatches) for *_, r in reports)
    n_records = sum(len(r.records) for *_, r in reports)
    positives = sum(rec.acm_initialized for *_, r in reports for rec in r.records)
    for name, lat, h, rep in reports:
        assert rep.max_degree == 2 * pair(lat, h, h)
    ok = mismatches == 0 and elapsed < 300
    acceptance_line(
        1,
        ok,
        f"{len(reports)} polarized lattices, {n_records} classes, {positives} ACM+initialized, "
        f"{mismatches} mismatches, {elapsed:.1f}s",
    )
    assert mismatches == 0
    assert elapsed < 300


def test_criterion_2_quartic_reproduction(acceptance_line):
    start = time.perf_counter()
    records = enumerate_acm(Q2, H, 8)
    positives = {r.cls: r.case for r in records if r.acm_initialized and not r.out_of_scope}
    ok = positives == {G: ThmCase.A, H - G: ThmCase.B}
    ok = ok and not any(r.case in (ThmCase.C, ThmCase.D) for r in records)
    acceptance_line(2, ok, f"ACM+initialized in scope: {sorted(str(c) for c in positives)} ({time.perf_counter() - start:.2f}s)")
    assert ok


def test_criterion_3_multiple_polarization_family(acceptance_line):
    start = time.perf_counter()
    pairs = [
        (g, d)
        for g in range(3, 21)
        for d in range(3, (g + 3) // 2 + 1)
        if (g + 1) % d == 0
    ]
    failed = [(g, d) for g, d in pairs if not verify_prop41(g, d).passed]
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 60 and len(pairs) > 0
    acceptance_line(3, ok, f"{len(pairs)} (g,d) pairs, failures {failed}, {elapsed:.1f}s")
    assert not failed
    assert elapsed < 60


def test_criterion_4_neg_two_vector_criterion(acceptance_line):
    exceptions = []
    total = 0
    for g in range(3, 21):
        for d in range(3, (g + 3) // 2 + 1):
            total += 1
            found = has_neg_two_vector(rank2_family(g, d), C, 2 * g - 2)
            if found != (g % d == 0):
                exceptions.append((g, d))
    acceptance_line(4, not exceptions, f"{total} (g,d) pairs, exceptions {exceptions}")
    assert not exceptions


def test_criterion_5_oracle_consistency(acceptance_line):
    start = time.perf_counter()
    rng = random.Random(20240601)
    suite = [("Q2", Q2, H), ("Ulrich", ULRICH, H), ("(5,3)", rank2_family(5, 3), C),
             ("(6,3)", rank2_family(6, 3), C), ("(3,3)", rank2_family(3, 3), C)]
    bad = []
    for name, lat, h in suite:
        effective = [d for d in enumerate_by_degree(lat, h, 12, -288) if is_effective(lat, h, d)]
        for _ in range(10_000):
            d = DivisorClass((rng.randint(-25, 25), rng.randint(-25, 25)))
            v = cohomology_dims(lat, h, d)
            w = cohomology_dims(lat, h, -d)
            e = rng.choice(effective)
            if (
                min(v.as_tuple()) < 0
                or v.euler != chi(lat, d)
                or v.h0 != w.h2
                or v.h1 != w.h1
                or cohomology_dims(lat, h, d + e).h0 < v.h0
            ):
                bad.append((name, d))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    acceptance_line(5, ok, f"{len(suite)} lattices x 10^4 classes, {len(bad)} violations, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 60


def test_criterion_6_saint_donat(acceptance_line):
    fam53 = rank2_family(5, 3)
    elliptic = all(
        cohomology_dims(Q2, H, k * (H - G)).h1 == k - 1 and cohomology_dims(fam53, C, k * F).h1 == k - 1
        for k in range(1, 6)
    )
    polarizations = [(Q2, H), (ULRICH, H)] + [(lat, h) for _, lat, h in family_suite()]
    low_degree = []
    half = []
    for lat, h in polarizations:
        # a counterexample would have degree 1 or 2, so this search is exhaustive
        for d in enumerate_by_degree(lat, h, 2, 0):
            if is_effective(lat, h, d):
                low_degree.append((lat.gram, h, d))
        if all(c % 2 == 0 for c in h.coords):
            e = DivisorClass(tuple(c // 2 for c in h.coords))
            if pair(lat, e, e) == 2 and is_effective(lat, h, e):
                half.append((lat.gram, h))
    ok = elliptic and not low_degree and not half
    acceptance_line(
        6,
        ok,
        f"h1(kF)=k-1 for k<=5: {elliptic}; degree<3 effective nonneg-square classes: {len(low_degree)}; "
        f"H=2D with D^2=2: {len(half)} over {len(polarizations)} polarizations",
    )
    assert ok


def test_criterion_7_ulrich_bound_and_case_d(criterion1_reports, acceptance_line):
    reports, _ = criterion1_reports
    violations = []
    case_d = 0
    for name, lat, h, rep in reports:
        h2 = pair(lat, h, h)
        for r in rep.records:
            if not r.acm_initialized:
                continue
            if r.square > 2 * h2 - 4 or 2 * r.degree > 3 * h2:
                violations.append((name, r.cls))
            if r.case is ThmCase.D:
                case_d += 1
                if 2 * cohomology_dims(lat, h, 2 * h - r.cls).h0 != 3 * h2 - 2 * r.degree:
                    violations.append((name, r.cls, "h0"))
    ok = not violations and case_d > 0
    acceptance_line(7, ok, f"{case_d} case-(d) classes checked, violations {violations}")
    assert ok


def test_criterion_8_determinism(criterion1_reports, acceptance_line):
    lat3 = make_lattice([[2, 0, 0], [0, -2, 1], [0, 1, -2]])
    tie_break_failures = 0
    for lat, h, bound in ((Q2, H, 12), (rank2_family(6, 3), C, 30), (lat3, DivisorClass((5, 1, 1)), 12)):
        for d in enumerate_by_degree(lat, h, bound, -2 * bound * bound):
            if not is_effective(lat, h, d):
                continue
            a = reduce_to_nef(lat, h, d)
            b = reduce_to_nef(lat, h, d, key=lambda g: (-pair(lat, h, g), tuple(-c for c in g.coords)))
            c = reduce_to_nef(lat, h, d, key=lambda g: tuple(reversed(g.coords)))
            tie_break_failures += not (a.nef_part == b.nef_part == c.nef_part)

    reports, _ = criterion1_reports
    scan_failures = 0
    for name, lat, h, rep in reports:
        for r in rep.records:
            if is_acm(lat, h, r.cls) != is_acm(lat, h, r.cls, extra_steps=3):
                scan_failures += 1

    fam53 = rank2_family(5, 3)
    identical = all(
        cross_validate(lat, h, 0).to_json() == cross_validate(lat, h, 0, n_jobs=2).to_json()
        for lat, h in ((Q2, H), (fam53, 2 * C), (rank2_family(6, 3), C))
    )
    ok = tie_break_failures == 0 and scan_failures == 0 and identical
    acceptance_line(
        8,
        ok,
        f"tie-break disagreements {tie_break_failures}, m->m+3 changes {scan_failures}, "
        f"serial/parallel JSON identical: {identical}",
    )
    assert ok
