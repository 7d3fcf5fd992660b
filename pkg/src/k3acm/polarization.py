"""Ampleness and very ampleness of candidate polarizations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cohomology import _ample, is_nef, is_effective
from .exceptions import NotVeryAmple
from .lattice import ClassLike, DivisorClass, PicardLattice, as_class, pair, vectors_in_window


def is_ample(lat: PicardLattice, h: ClassLike) -> bool:
    """Positive square and orthogonal to no (-2)-vector.

    Such a class lies inside a chamber of the positive cone; the engine takes
    that chamber as the ample cone, so every irreducible (-2)-curve then has
    positive degree.
    """
    h = as_class(h)
    return h.rank == lat.rank and _ample(lat, h)


def is_very_ample(lat: PicardLattice, h: ClassLike) -> bool:
    h = as_class(h)
    if h.rank != lat.rank:
        return False
    return _very_ample(lat, h)


@lru_cache(maxsize=1024)
def _very_ample(lat: PicardLattice, h: DivisorClass) -> bool:
    h2 = pair(lat, h, h)
    # ample (hence nef) and no (-2)-curve of degree 0
    if h2 < 4 or not _ample(lat, h):
        return False
    # elliptic curves of degree 1 or 2: nef primitive isotropic classes
    for e in vectors_in_window(lat, h, 1, 2, 0):
        if pair(lat, e, e) == 0 and is_nef(lat, h, e):
            return False
    # H = 2E with E^2 = 2
    if all(c % 2 == 0 for c in h.coords):
        e = DivisorClass(tuple(c // 2 for c in h.coords))
        if pair(lat, e, e) == 2 and is_effective(lat, h, e):
            return False
    return True


def genus(lat: PicardLattice, h: ClassLike) -> int:
    """Sectional genus ``H^2 / 2 + 1``."""
    return pair(lat, h, h) // 2 + 1


def require_very_ample(lat: PicardLattice, h: ClassLike) -> DivisorClass:
    h = as_class(h)
    if not is_very_ample(lat, h):
        raise NotVeryAmple(f"{h} is not very ample")
    return h


@dataclass(frozen=True)
class Polarization:
    lattice: PicardLattice
    cls: DivisorClass

    def __post_init__(self):
        cls = require_very_ample(self.lattice, self.cls)
        object.__setattr__(self, "cls", cls)

    @property
    def genus(self) -> int:
        return genus(self.lattice, self.cls)

    @property
    def degree(self) -> int:
        return pair(self.lattice, self.cls, self.cls)
