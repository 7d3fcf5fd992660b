"""Effectivity, nef reduction and sheaf cohomology of line bundles.

Everything here is relative to an ample reference class ``H``: it fixes
the chamber of the positive cone that plays the role of the ample cone,
and with it which (-2)-classes are effective and which are irreducible
curves.  The surface is taken to have Picard group exactly the given
lattice.
"""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Optional

from .exceptions import (
    InternalInconsistency,
    NonzeroSquare,
    NotAmple,
    NotEffective,
    NotNef,
    ZeroClass,
)
from .lattice import (
    ClassLike,
    DivisorClass,
    PicardLattice,
    as_class,
    chi,
    pair,
    primitive_part,
    vectors_in_window,
)


@lru_cache(maxsize=1024)
def _ample(lat: PicardLattice, h: DivisorClass) -> bool:
    if pair(lat, h, h) <= 0:
        return False
    # h lies on a wall iff some root is orthogonal to it; h⊥ is negative
    # definite so this search is finite
    return not any(pair(lat, r, r) == -2 for r in vectors_in_window(lat, h, 0, 0, -2))


def _require_ample(lat: PicardLattice, h: ClassLike) -> DivisorClass:
    h = as_class(h)
    if h.rank != lat.rank or not _ample(lat, h):
        raise NotAmple(f"{h} is not ample")
    return h


@dataclass(frozen=True)
class NegTwoCache:
    """(-2)-classes of positive degree, sorted by ``(degree, coords)``.

    ``bound`` is the high-water degree: every (-2)-class of degree
    ``1..bound`` is in ``classes``.  :meth:`extended` returns a new value
    and leaves ``self`` untouched.
    """

    lattice: PicardLattice
    ample: DivisorClass
    bound: int = 0
    classes: tuple[DivisorClass, ...] = ()
    irreducible: tuple[DivisorClass, ...] = ()
    _irr_degrees: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def degree(self, d: DivisorClass) -> int:
        return pair(self.lattice, self.ample, d)

    def extended(self, bound: int) -> "NegTwoCache":
        if bound <= self.bound:
            return self
        lat = self.lattice
        fresh = [
            r
            for r in vectors_in_window(lat, self.ample, self.bound + 1, bound, -2)
            if pair(lat, r, r) == -2
        ]
        fresh.sort(key=lambda r: (self.degree(r), r.coords))
        irr = list(self.irreducible)
        irr_deg = list(self._irr_degrees)
        # A (-2)-class is a reducible curve class iff it meets some
        # irreducible (-2)-curve of smaller degree negatively.
        for r in fresh:
            t = self.degree(r)
            hi = bisect.bisect_left(irr_deg, t)
            if all(pair(lat, r, irr[i]) >= 0 for i in range(hi)):
                irr.append(r)
                irr_deg.append(t)
        return NegTwoCache(
            lat, self.ample, bound, self.classes + tuple(fresh), tuple(irr), tuple(irr_deg)
        )

    def irreducible_up_to(self, max_degree: int) -> tuple[DivisorClass, ...]:
        if max_degree > self.bound:
            raise ValueError(f"cache only reaches degree {self.bound}")
        return self.irreducible[: bisect.bisect_right(self._irr_degrees, max_degree)]

    def classes_up_to(self, max_degree: int) -> tuple[DivisorClass, ...]:
        if max_degree > self.bound:
            raise ValueError(f"cache only reaches degree {self.bound}")
        return tuple(r for r in self.classes if self.degree(r) <= max_degree)


_CACHES: dict[tuple[PicardLattice, DivisorClass], NegTwoCache] = {}
_CACHE_LOCK = threading.Lock()


def neg_two_cache(lat: PicardLattice, h: ClassLike, max_degree: int) -> NegTwoCache:
    """Shared cache for ``(lat, h)`` covering at least ``max_degree``."""
    h = _require_ample(lat, h)
    key = (lat, h)
    cache = _CACHES.get(key)
    if cache is not None and cache.bound >= max_degree:
        return cache
    with _CACHE_LOCK:
        cache = _CACHES.get(key) or NegTwoCache(lat, h)
        if cache.bound < max_degree:
            cache = cache.extended(max(max_degree, 2 * cache.bound, 8))
            _CACHES[key] = cache
    return cache


def neg_two_classes(lat: PicardLattice, h: ClassLike, max_degree: int) -> list[DivisorClass]:
    """All ``G`` with ``G^2 = -2`` and ``1 <= H.G <= max_degree``."""
    if max_degree < 1:
        _require_ample(lat, h)
        return []
    return list(neg_two_cache(lat, h, max_degree).classes_up_to(max_degree))


def irreducible_neg_two(lat: PicardLattice, h: ClassLike, max_degree: int) -> list[DivisorClass]:
    """(-2)-classes of degree ``<= max_degree`` that are irreducible curves."""
    if max_degree < 1:
        _require_ample(lat, h)
        return []
    return list(neg_two_cache(lat, h, max_degree).irreducible_up_to(max_degree))


def _irreducible(lat, h, max_degree):
    if max_degree < 1:
        return ()
    return neg_two_cache(lat, h, max_degree).irreducible_up_to(max_degree)


def is_effective(lat: PicardLattice, h: ClassLike, d: ClassLike) -> bool:
    h = _require_ample(lat, h)
    return _effective(lat, h, as_class(d))


@lru_cache(maxsize=1 << 16)
def _effective(lat: PicardLattice, h: DivisorClass, d: DivisorClass) -> bool:
    while True:
        if d.is_zero():
            return True
        deg = pair(lat, h, d)
        if deg <= 0:
            return False
        if pair(lat, d, d) >= -2:
            # chi(D) >= 1 and -D has negative degree
            return True
        # any irreducible curve meeting D negatively is a fixed component
        for g in _irreducible(lat, h, deg):
            if pair(lat, g, d) < 0:
                d = d - g
                break
        else:
            return False


@dataclass(frozen=True)
class ReductionResult:
    nef_part: DivisorClass
    fixed: tuple[DivisorClass, ...]

    def fixed_sum(self, rank: int) -> DivisorClass:
        total = DivisorClass.zero(rank)
        for g in self.fixed:
            total = total + g
        return total


def reduce_to_nef(
    lat: PicardLattice,
    h: ClassLike,
    d: ClassLike,
    key: Optional[Callable[[DivisorClass], Any]] = None,
) -> ReductionResult:
    """Strip fixed (-2)-curves off an effective class until it is nef.

    At each step the irreducible (-2)-class meeting the current class
    negatively that minimises ``key`` is subtracted; the default key is
    ``(degree, coords)``.  ``h^0`` is unchanged by every step.
    """
    h = _require_ample(lat, h)
    d = as_class(d)
    if not _effective(lat, h, d):
        raise NotEffective(f"{d} is not effective")
    if key is None:
        return _reduce_default(lat, h, d)
    return _reduce(lat, h, d, key)


def _reduce(lat, h, d, key):
    fixed = []
    while True:
        deg = pair(lat, h, d)
        negative = [g for g in _irreducible(lat, h, deg) if pair(lat, g, d) < 0]
        if not negative:
            break
        g = min(negative, key=key)
        fixed.append(g)
        d = d - g
    return ReductionResult(d, tuple(sorted(fixed)))


@lru_cache(maxsize=1 << 14)
def _reduce_default(lat, h, d):
    return _reduce(lat, h, d, lambda g: (pair(lat, h, g), g.coords))


def is_nef(lat: PicardLattice, h: ClassLike, d: ClassLike) -> bool:
    h = _require_ample(lat, h)
    d = as_class(d)
    deg = pair(lat, h, d)
    if deg < 0 or pair(lat, d, d) < 0:
        return False
    # D^2 >= 0 and deg >= 0 make D effective, so any curve meeting it
    # negatively has degree <= deg
    return all(pair(lat, g, d) >= 0 for g in _irreducible(lat, h, deg))


@dataclass(frozen=True)
class EllipticDecomposition:
    k: int
    fiber: DivisorClass


def elliptic_decomposition(lat: PicardLattice, h: ClassLike, d: ClassLike) -> EllipticDecomposition:
    """Write a nef isotropic class as ``k F`` with ``F`` an elliptic pencil."""
    d = as_class(d)
    if d.is_zero():
        raise ZeroClass("the zero class is not an elliptic pencil multiple")
    sq = pair(lat, d, d)
    if sq != 0:
        raise NonzeroSquare(f"{d} has square {sq}, expected 0")
    if not is_nef(lat, h, d):
        raise NotNef(f"{d} is not nef")
    k, f = primitive_part(d)
    return EllipticDecomposition(k, f)


@dataclass(frozen=True)
class CohomologyVector:
    h0: int
    h1: int
    h2: int

    @property
    def euler(self) -> int:
        return self.h0 - self.h1 + self.h2

    def dual(self) -> "CohomologyVector":
        return CohomologyVector(self.h2, self.h1, self.h0)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.h0, self.h1, self.h2)


def cohomology_dims(lat: PicardLattice, h: ClassLike, d: ClassLike) -> CohomologyVector:
    """``(h^0, h^1, h^2)`` of ``O_X(D)``."""
    h = _require_ample(lat, h)
    return _dims(lat, h, as_class(d))


def _h0_effective(lat, h, d) -> int:
    p = _reduce_default(lat, h, d).nef_part
    if p.is_zero():
        return 1
    sq = pair(lat, p, p)
    if sq > 0:
        return chi(lat, p)
    k, _ = primitive_part(p)
    return k + 1


@lru_cache(maxsize=1 << 16)
def _dims(lat: PicardLattice, h: DivisorClass, d: DivisorClass) -> CohomologyVector:
    e = chi(lat, d)
    if d.is_zero():
        vec = CohomologyVector(1, 0, 1)
    elif _effective(lat, h, d):
        h0 = _h0_effective(lat, h, d)
        vec = CohomologyVector(h0, h0 - e, 0)
    elif _effective(lat, h, -d):
        h2 = _h0_effective(lat, h, -d)
        vec = CohomologyVector(0, h2 - e, h2)
    else:
        if e > 0:
            raise InternalInconsistency(f"chi({d}) = {e} > 0 but neither {d} nor its negative is effective")
        vec = CohomologyVector(0, -e, 0)
    if vec.h1 < 0 or vec.euler != e:
        raise InternalInconsistency(f"h-vector {vec.as_tuple()} of {d} violates Riemann-Roch (chi = {e})")
    return vec


def is_base_point_free(lat: PicardLattice, h: ClassLike, d: ClassLike) -> bool:
    """Whether ``|D|`` has no base points.

    A fixed component means base points.  A nef class has base points
    exactly when it is ``k F + G`` with ``F`` an elliptic pencil, ``G`` a
    (-2)-curve, ``F.G = 1`` and ``k >= 2``.
    """
    h = _require_ample(lat, h)
    d = as_class(d)
    red = reduce_to_nef(lat, h, d)
    if red.fixed:
        return False
    deg = pair(lat, h, d)
    for g in _irreducible(lat, h, deg - 1):
        rest = d - g
        if rest.is_zero() or pair(lat, rest, rest) != 0:
            continue
        k, f = primitive_part(rest)
        if k >= 2 and pair(lat, f, g) == 1 and is_nef(lat, h, f):
            return False
    return True
