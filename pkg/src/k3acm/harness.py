"""Exhaustive cross-validation and the rank-two family checks.

Reports serialise to JSON deterministically: records are sorted by
``(degree, coords)`` and keys are sorted, so serial and parallel runs
give byte-identical output.  Wall-clock timing is kept on the report
object and only written out on request.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from joblib import Parallel, delayed

from .acm import ClassificationRecord, ThmCase, classify, classify_thm12, is_acm, is_initialized, is_ulrich
from .cohomology import _effective, cohomology_dims, is_effective
from .exceptions import BoundTooSmall, PreconditionViolated
from .lattice import (
    ClassLike,
    DivisorClass,
    PicardLattice,
    as_class,
    enumerate_by_degree,
    pair,
    rank2_family,
    vectors_in_window,
)
from .polarization import is_very_ample, require_very_ample

SCHEMA_VERSION = 1


def _sort_key(lat, h):
    return lambda d: (pair(lat, h, d), d.coords)


def _classify_chunk(lat, h, chunk):
    return [classify(lat, h, d) for d in chunk]


def _classify_all(lat, h, classes, n_jobs) -> list[ClassificationRecord]:
    classes = sorted(classes, key=_sort_key(lat, h))
    if n_jobs == 1 or len(classes) < 2:
        records = _classify_chunk(lat, h, classes)
    else:
        n = max(1, len(classes) // 32)
        chunks = [classes[i : i + n] for i in range(0, len(classes), n)]
        parts = Parallel(n_jobs=n_jobs)(delayed(_classify_chunk)(lat, h, c) for c in chunks)
        records = [r for part in parts for r in part]
    # merge order must not depend on scheduling
    records.sort(key=lambda r: (r.degree, r.cls.coords))
    return records


def effective_classes(lat: PicardLattice, h: ClassLike, max_degree: int) -> list[DivisorClass]:
    """Effective classes of degree ``1..max_degree``.

    An effective class of degree ``t`` is a sum of at most ``t`` curves of
    square ``>= -2``, so ``D^2 >= -2 t^2``.
    """
    h = as_class(h)
    found = enumerate_by_degree(lat, h, max_degree, -2 * max_degree * max_degree)
    return [
        d
        for d in found
        if pair(lat, d, d) >= -2 * pair(lat, h, d) ** 2 and _effective(lat, h, d)
    ]


def enumerate_acm(
    lat: PicardLattice, h: ClassLike, max_degree: int, n_jobs: int = 1
) -> list[ClassificationRecord]:
    """Classification records for every effective class up to ``max_degree``.

    ACM and initialized classes have degree at most ``3/2 H^2``, so smaller
    bounds are rejected as incomplete.
    """
    h = require_very_ample(lat, h)
    h2 = pair(lat, h, h)
    need = -(-3 * h2 // 2)
    if max_degree < need:
        raise BoundTooSmall(f"max_degree {max_degree} < ceil(3/2 H^2) = {need}")
    return _classify_all(lat, h, effective_classes(lat, h, max_degree), n_jobs)


def acm_positives(records: list[ClassificationRecord], in_scope_only: bool = True) -> list[DivisorClass]:
    return [
        r.cls
        for r in records
        if r.acm_initialized and not (in_scope_only and r.out_of_scope)
    ]


@dataclass
class ValidationReport:
    lattice: PicardLattice
    polarization: DivisorClass
    max_degree: int
    min_square: int
    records: list[ClassificationRecord]
    mismatches: list[tuple[DivisorClass, Optional[ThmCase], bool]] = field(default_factory=list)
    timing: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "lattice": self.lattice.to_dict(),
            "polarization": self.polarization.tolist(),
            "max_degree": self.max_degree,
            "min_square": self.min_square,
            "n_records": len(self.records),
            "records": [r.to_dict() for r in self.records],
            "mismatches": [
                {
                    "class": d.tolist(),
                    "case": c.value if c is not None else None,
                    "acm_initialized": v,
                }
                for d, c, v in self.mismatches
            ],
        }
        if include_timing:
            out["timing_seconds"] = self.timing
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True)


def cross_validate(
    lat: PicardLattice, h: ClassLike, max_degree: int, n_jobs: int = 1
) -> ValidationReport:
    """Compare the numerical classification with the cohomology oracle.

    Every nonzero effective class with ``D^2 >= H^2 - 6`` and degree up to
    ``max(max_degree, 2 H^2)`` is checked; the upper bound reaches past the
    largest possible ACM degree so that negatives are exercised too.
    """
    start = time.perf_counter()
    h = require_very_ample(lat, h)
    h2 = pair(lat, h, h)
    bound = max(max_degree, 2 * h2)
    min_square = h2 - 6
    # squares >= H^2 - 6 >= -2 with positive degree are all effective
    classes = enumerate_by_degree(lat, h, bound, min_square)
    records = _classify_all(lat, h, classes, n_jobs)
    mismatches = [(r.cls, r.case, r.acm_initialized) for r in records if r.mismatch]
    return ValidationReport(lat, h, bound, min_square, records, mismatches, time.perf_counter() - start)


def has_neg_two_vector(lat: PicardLattice, reference: ClassLike, max_degree: int) -> bool:
    """Bounded search for any ``v`` with ``v^2 = -2`` and ``|ref.v| <= max_degree``."""
    return any(
        pair(lat, v, v) == -2
        for v in vectors_in_window(lat, reference, -max_degree, max_degree, -2)
    )


@dataclass
class Prop41Report:
    g: int
    d: int
    m: int
    polarization: DivisorClass
    cls: DivisorClass
    square: int
    degree: int
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "d": self.d,
            "m": self.m,
            "polarization": self.polarization.tolist(),
            "class": self.cls.tolist(),
            "square": self.square,
            "degree": self.degree,
            "checks": self.checks,
            "passed": self.passed,
        }


def verify_prop41(g: int, d: int) -> Prop41Report:
    """Check the ``m C`` polarization and ``(m+1) C - m F`` on the ``(g, d)`` lattice."""
    if g < 3 or not 3 <= d <= (g + 3) // 2 or (g + 1) % d:
        raise PreconditionViolated(f"(g, d) = ({g}, {d}) needs g >= 3, 3 <= d <= floor((g+3)/2), d | g+1")
    lat = rank2_family(g, d)
    m = (g + 1) // d
    h = DivisorClass((m, 0))
    dcls = DivisorClass((m + 1, -m))
    va = is_very_ample(lat, h)
    checks = {"very_ample": va}
    if va:
        diff = dcls - h
        checks.update(
            acm=is_acm(lat, h, dcls),
            initialized=is_initialized(lat, h, dcls),
            case_d=classify_thm12(lat, h, dcls) is ThmCase.D,
            not_ulrich=not is_ulrich(lat, h, dcls),
            d_minus_h_square_is_minus_4=pair(lat, diff, diff) == -4,
            d_minus_h_not_effective=not is_effective(lat, h, diff),
            h1_2h_minus_d_vanishes=cohomology_dims(lat, h, 2 * h - dcls).h1 == 0,
        )
    return Prop41Report(g, d, m, h, dcls, pair(lat, dcls, dcls), pair(lat, h, dcls), checks)


@dataclass
class FamilyScanReport:
    g_max: int
    entries: list[dict]
    timing: float = 0.0

    @property
    def total_mismatches(self) -> int:
        return sum(p["mismatches"] for e in self.entries for p in e["polarizations"])

    @property
    def neg_two_disagreements(self) -> int:
        return sum(not e["neg_two_agrees"] for e in self.entries)

    @property
    def ok(self) -> bool:
        return self.total_mismatches == 0 and self.neg_two_disagreements == 0

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "g_max": self.g_max,
            "entries": self.entries,
            "total_mismatches": self.total_mismatches,
            "neg_two_disagreements": self.neg_two_disagreements,
        }
        if include_timing:
            out["timing_seconds"] = self.timing
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True)


def family_pairs(g_max: int) -> list[tuple[int, int]]:
    return [(g, d) for g in range(3, g_max + 1) for d in range(3, (g + 3) // 2 + 1)]


def scan_families(g_max: int, n_jobs: int = 1) -> FamilyScanReport:
    """Cross-validate every ``(g, d)`` lattice with ``g <= g_max``.

    Polarizations: ``C`` when very ample, and ``m C`` when ``d | g + 1``.
    """
    start = time.perf_counter()
    entries = []
    for g, d in family_pairs(g_max):
        lat = rank2_family(g, d)
        c = DivisorClass((1, 0))
        # any (-2)-vector aC + bF has a = ±1 and degree ±(g - 2)
        found = has_neg_two_vector(lat, c, 2 * g - 2)
        polarizations = []
        candidates = []
        if is_very_ample(lat, c):
            candidates.append(c)
        if (g + 1) % d == 0:
            candidates.append(DivisorClass(((g + 1) // d, 0)))
        for h in candidates:
            if not is_very_ample(lat, h):
                polarizations.append(
                    {"polarization": h.tolist(), "very_ample": False, "records": 0, "acm_initialized": 0, "mismatches": 0}
                )
                continue
            rep = cross_validate(lat, h, 0, n_jobs=n_jobs)
            polarizations.append(
                {
                    "polarization": h.tolist(),
                    "very_ample": True,
                    "records": len(rep.records),
                    "acm_initialized": sum(r.acm_initialized for r in rep.records),
                    "mismatches": len(rep.mismatches),
                }
            )
        entries.append(
            {
                "g": g,
                "d": d,
                "neg_two_found": found,
                "d_divides_g": g % d == 0,
                "neg_two_agrees": found == (g % d == 0),
                "polarizations": polarizations,
            }
        )
    return FamilyScanReport(g_max, entries, time.perf_counter() - start)
