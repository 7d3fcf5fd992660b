"""ACM, initialized and Ulrich line bundles with respect to a polarization.

Two independent routes decide whether ``O_X(D)`` is ACM and initialized:

* :func:`is_acm` / :func:`is_initialized` compute ``h^1(D + lH)`` over a
  finite window that is provably enough (vanishing for ``0 <= k <= m``
  with ``H.D <= m H^2 - 1`` forces vanishing for every twist);
* :func:`classify_thm12` reads the answer off ``D^2`` and ``H.D`` (plus two
  cohomological side conditions in the large-square case).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .cohomology import _dims, _effective
from .exceptions import EmptyWindow, NeitherSideEffective, NotEffective, OutOfScope, ZeroClass
from .lattice import ClassLike, DivisorClass, PicardLattice, as_class, pair
from .polarization import require_very_ample


class ThmCase(str, enum.Enum):
    A = "a"
    B = "b"
    C = "c"
    D = "d"


def _h0(lat, h, d):
    return _dims(lat, h, d).h0


def _h1(lat, h, d):
    return _dims(lat, h, d).h1


def is_initialized(lat: PicardLattice, h: ClassLike, d: ClassLike) -> bool:
    """``h^0(D) > 0`` and ``h^0(D - H) = 0``."""
    h = require_very_ample(lat, h)
    d = as_class(d)
    return _h0(lat, h, d) > 0 and _h0(lat, h, d - h) == 0


def _effective_side(lat, h, d) -> DivisorClass:
    if d.is_zero():
        raise ZeroClass("ACM is only decided for non-trivial line bundles")
    if _effective(lat, h, d):
        return d
    if _effective(lat, h, -d):
        return -d
    raise NeitherSideEffective(f"neither {d} nor its negative is effective")


def acm_scan_length(lat: PicardLattice, h: ClassLike, d: ClassLike) -> int:
    """Smallest ``m >= 1`` with ``H.E <= m H^2 - 1`` for the effective one of ``±D``."""
    h = require_very_ample(lat, h)
    e = _effective_side(lat, h, as_class(d))
    h2 = pair(lat, h, h)
    return max(1, -(-(pair(lat, h, e) + 1) // h2))


def is_acm(lat: PicardLattice, h: ClassLike, d: ClassLike, extra_steps: int = 0) -> bool:
    """Whether ``h^1(D + lH) = 0`` for every integer ``l``.

    ``O_X(D)`` and ``O_X(-D)`` are ACM together, so the effective one ``E``
    of the two is scanned: ``h^1(E - kH)`` for ``0 <= k <= m + extra_steps``.
    """
    h = require_very_ample(lat, h)
    d = as_class(d)
    e = _effective_side(lat, h, d)
    m = acm_scan_length(lat, h, e) + extra_steps
    return all(_h1(lat, h, e - k * h) == 0 for k in range(m + 1))


def h1_profile(
    lat: PicardLattice, h: ClassLike, d: ClassLike, l_min: int, l_max: int
) -> list[tuple[int, int]]:
    h = require_very_ample(lat, h)
    d = as_class(d)
    if l_min > l_max:
        raise EmptyWindow(f"window [{l_min}, {l_max}] is empty")
    return [(l, _h1(lat, h, d + l * h)) for l in range(l_min, l_max + 1)]


def classify_thm12(lat: PicardLattice, h: ClassLike, d: ClassLike) -> Optional[ThmCase]:
    """Numerical case of an effective class with ``D^2 >= H^2 - 6``, or None.

    None means the class is in scope but not ACM and initialized.
    """
    h = require_very_ample(lat, h)
    d = as_class(d)
    if d.is_zero() or not _effective(lat, h, d):
        raise NotEffective(f"{d} is not a nonzero effective class")
    h2 = pair(lat, h, h)
    sq = pair(lat, d, d)
    deg = pair(lat, h, d)
    if sq < h2 - 6:
        raise OutOfScope(f"D^2 = {sq} < H^2 - 6 = {h2 - 6}")
    if sq == h2 - 6:
        return ThmCase.A if h2 - 3 <= deg <= h2 - 1 else None
    if sq == h2 - 4:
        return ThmCase.B if h2 - 1 <= deg <= h2 else None
    if sq == h2 - 2:
        return ThmCase.C if deg == h2 + 1 else None
    if (
        sq >= h2
        and sq == 2 * deg - h2 - 4
        and not _effective(lat, h, d - h)
        and _h1(lat, h, 2 * h - d) == 0
    ):
        return ThmCase.D
    return None


def is_ulrich(lat: PicardLattice, h: ClassLike, d: ClassLike) -> bool:
    h = require_very_ample(lat, h)
    d = as_class(d)
    if d.is_zero() or not _effective(lat, h, d):
        raise NotEffective(f"{d} is not a nonzero effective class")
    if pair(lat, d, d) != 2 * pair(lat, h, h) - 4:
        return False
    return is_acm(lat, h, d) and is_initialized(lat, h, d)


@dataclass(frozen=True)
class ClassificationRecord:
    cls: DivisorClass
    degree: int
    square: int
    effective: bool
    initialized: bool
    acm: bool
    case: Optional[ThmCase]
    ulrich: bool
    out_of_scope: bool
    h_profile: tuple[tuple[int, int], ...] = field(default=())

    @property
    def acm_initialized(self) -> bool:
        return self.acm and self.initialized

    @property
    def mismatch(self) -> bool:
        return not self.out_of_scope and (self.case is not None) != self.acm_initialized

    def to_dict(self) -> dict:
        return {
            "class": self.cls.tolist(),
            "degree": self.degree,
            "square": self.square,
            "effective": self.effective,
            "initialized": self.initialized,
            "acm": self.acm,
            "case": self.case.value if self.case is not None else None,
            "ulrich": self.ulrich,
            "out_of_scope": self.out_of_scope,
            "h1_profile": [list(p) for p in self.h_profile],
        }


def classify(lat: PicardLattice, h: ClassLike, d: ClassLike) -> ClassificationRecord:
    """Full record for a nonzero effective class.

    The ``h_profile`` window is ``l = -(m + 1) .. 1`` with ``m`` the ACM scan
    length, which covers every twist the ACM decision looks at.
    """
    h = require_very_ample(lat, h)
    d = as_class(d)
    if d.is_zero() or not _effective(lat, h, d):
        raise NotEffective(f"{d} is not a nonzero effective class")
    h2 = pair(lat, h, h)
    sq = pair(lat, d, d)
    acm = is_acm(lat, h, d)
    init = is_initialized(lat, h, d)
    out_of_scope = sq < h2 - 6
    case = None if out_of_scope else classify_thm12(lat, h, d)
    m = acm_scan_length(lat, h, d)
    return ClassificationRecord(
        cls=d,
        degree=pair(lat, h, d),
        square=sq,
        effective=True,
        initialized=init,
        acm=acm,
        case=case,
        ulrich=acm and init and sq == 2 * h2 - 4,
        out_of_scope=out_of_scope,
        h_profile=tuple(h1_profile(lat, h, d, -(m + 1), 1)),
    )
