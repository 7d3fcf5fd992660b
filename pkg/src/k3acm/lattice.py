"""Even hyperbolic lattices and divisor classes.

A :class:`PicardLattice` is an even symmetric integer form of signature
``(1, rank - 1)``.  Divisor classes are integer coordinate vectors in the
lattice basis; all arithmetic is exact.  Every pairing is checked against
the signed 64-bit range and raises :class:`LatticeOverflow` instead of
wrapping.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .exceptions import (
    DimensionMismatch,
    LatticeOverflow,
    NonPositivePolarization,
    NotSymmetric,
    OddDiagonal,
    OutOfRange,
    WrongSignature,
    ZeroClass,
)

INT64_MAX = 2**63 - 1


def _checked(value: int) -> int:
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise LatticeOverflow(f"value {value} does not fit in 64 bits")
    return value


@dataclass(frozen=True, order=True)
class DivisorClass:
    """Integer coordinates of a line bundle in the lattice basis."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        for c in coords:
            _checked(c)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, rank: int) -> "DivisorClass":
        return cls((0,) * rank)

    @classmethod
    def parse(cls, text: str) -> "DivisorClass":
        """Parse ``"3,-2"`` or ``"[3,-2]"``."""
        text = text.strip().strip("[]()")
        try:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        except ValueError as exc:
            raise ValueError(f"cannot parse divisor class from {text!r}") from exc

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _other(self, other) -> "DivisorClass":
        other = as_class(other)
        if other.rank != self.rank:
            raise DimensionMismatch(f"rank {self.rank} vs {other.rank}")
        return other

    def __add__(self, other):
        other = self._other(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        other = self._other(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coords))

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def tolist(self) -> list[int]:
        return list(self.coords)

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coords) + "]"


ClassLike = Union[DivisorClass, Sequence[int]]


def as_class(obj: ClassLike) -> DivisorClass:
    """Coerce a tuple, list or integer array to a :class:`DivisorClass`."""
    if isinstance(obj, DivisorClass):
        return obj
    if isinstance(obj, str):
        return DivisorClass.parse(obj)
    return DivisorClass(tuple(int(c) for c in obj))


@dataclass(frozen=True)
class PicardLattice:
    """Validated even lattice of signature (1, rank - 1).

    Build instances with :func:`make_lattice`; the constructor itself only
    stores data.
    """

    gram: tuple[tuple[int, ...], ...]
    basis: tuple[str, ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, d: ClassLike, e: ClassLike) -> int:
        return pair(self, d, e)

    def square(self, d: ClassLike) -> int:
        return pair(self, d, d)

    def basis_vector(self, i: int) -> DivisorClass:
        return DivisorClass(tuple(int(j == i) for j in range(self.rank)))

    def zero(self) -> DivisorClass:
        return DivisorClass.zero(self.rank)

    def to_dict(self) -> dict:
        out = {"rank": self.rank, "gram": [list(r) for r in self.gram]}
        if self.basis:
            out["basis"] = list(self.basis)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def inertia(gram: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Return ``(positive, negative, zero)`` counts of a symmetric form.

    Uses exact rational congruence diagonalisation.
    """
    a = [[Fraction(v) for v in row] for row in gram]
    n = len(a)
    pos = neg = zero = 0
    for i in range(n):
        if a[i][i] == 0:
            j = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[i], a[j] = a[j], a[i]
                for row in a:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if j is None:
                    zero += 1
                    continue
                # e_i -> e_i + e_j makes the pivot 2 * a[i][j] != 0
                for k in range(n):
                    a[i][k] += a[j][k]
                for k in range(n):
                    a[k][i] += a[k][j]
        p = a[i][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            f = a[j][i] / p
            if f:
                for k in range(i, n):
                    a[j][k] -= f * a[i][k]
                for k in range(i, n):
                    a[k][j] = a[j][k]
    return pos, neg, zero


def make_lattice(gram: Sequence[Sequence[int]], basis: Iterable[str] = ()) -> PicardLattice:
    """Validate ``gram`` and return a :class:`PicardLattice`.

    >>> make_lattice([[4, 1], [1, -2]]).rank
    2
    """
    rows = [tuple(int(v) for v in row) for row in gram]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise DimensionMismatch("Gram matrix must be square and non-empty")
    for r in rows:
        for v in r:
            _checked(v)
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric(f"gram[{i}][{j}] = {rows[i][j]} != gram[{j}][{i}] = {rows[j][i]}")
    for i in range(n):
        if rows[i][i] % 2:
            raise OddDiagonal(f"gram[{i}][{i}] = {rows[i][i]} is odd; the form must be even")
    pos, neg, zero = inertia(rows)
    if (pos, neg, zero) != (1, n - 1, 0):
        raise WrongSignature(
            f"signature must be (1, {n - 1}) and non-degenerate; got "
            f"{pos} positive, {neg} negative, {zero} zero"
        )
    basis = tuple(basis)
    if basis and len(basis) != n:
        raise DimensionMismatch(f"{len(basis)} basis names for rank {n}")
    return PicardLattice(tuple(rows), basis)


def rank2_family(g: int, d: int) -> PicardLattice:
    """Lattice ``Z C + Z F`` with ``C^2 = 2g - 2``, ``C.F = d``, ``F^2 = 0``.

    The basis order is always ``(C, F)``.
    """
    if g < 3 or not 3 <= d <= (g + 3) // 2:
        raise OutOfRange(f"(g, d) = ({g}, {d}) needs g >= 3 and 3 <= d <= {(g + 3) // 2}")
    return make_lattice([[2 * g - 2, d], [d, 0]], basis=("C", "F"))


def load_lattice(path) -> PicardLattice:
    with open(path) as fh:
        return lattice_from_dict(json.load(fh))


def lattice_from_dict(data: dict) -> PicardLattice:
    gram = data["gram"]
    if "rank" in data and data["rank"] != len(gram):
        raise DimensionMismatch(f"rank {data['rank']} but Gram matrix has {len(gram)} rows")
    return make_lattice(gram, data.get("basis", ()))


def pair(lat: PicardLattice, d: ClassLike, e: ClassLike) -> int:
    """Intersection number ``d^T G e``."""
    d, e = as_class(d), as_class(e)
    n = lat.rank
    if d.rank != n or e.rank != n:
        raise DimensionMismatch(f"classes of rank {d.rank}, {e.rank} in a rank-{n} lattice")
    total = 0
    for i, di in enumerate(d.coords):
        if not di:
            continue
        row = lat.gram[i]
        s = _checked(sum(row[j] * ej for j, ej in enumerate(e.coords)))
        total = _checked(total + _checked(di * s))
    return total


def chi(lat: PicardLattice, d: ClassLike) -> int:
    """Euler characteristic ``2 + D^2 / 2`` of ``O_X(D)``."""
    return 2 + pair(lat, d, d) // 2


def primitive_part(d: ClassLike) -> tuple[int, DivisorClass]:
    d = as_class(d)
    k = math.gcd(*d.coords)
    if k == 0:
        raise ZeroClass("the zero class has no primitive part")
    return k, DivisorClass(tuple(c // k for c in d.coords))


# --- short vector search ---------------------------------------------------


def _ldl(q: list[list[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    # x^T Q x = sum_i diag[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2
    n = len(q)
    a = [row[:] for row in q]
    diag = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        diag[i] = a[i][i]
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / diag[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] -= mu[i][j] * mu[i][k] * diag[i]
    return diag, mu


def _fincke_pohst(q: list[list[Fraction]], bound) -> list[tuple[int, ...]]:
    """All integer ``x`` with ``x^T q x <= bound`` for positive definite ``q``."""
    diag, mu = _ldl(q)
    n = len(q)
    x = [0] * n
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: Fraction) -> None:
        if i < 0:
            out.append(tuple(x))
            return
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        s = math.isqrt(math.floor(remaining / diag[i])) + 1
        for xi in range(math.floor(-c) - s, math.ceil(-c) + s + 1):
            t = diag[i] * (xi + c) ** 2
            if t <= remaining:
                x[i] = xi
                rec(i - 1, remaining - t)
        x[i] = 0

    if bound >= 0:
        rec(n - 1, Fraction(bound))
    return out


def vectors_in_window(
    lat: PicardLattice, h: ClassLike, min_degree: int, max_degree: int, min_square: int
) -> list[DivisorClass]:
    """All ``D`` with ``min_degree <= H.D <= max_degree`` and ``D^2 >= min_square``.

    With ``v = G h`` and ``h2 = H^2`` the form ``2 (H.x)^2 - h2 x^2`` is
    positive definite on a hyperbolic lattice; the window constraints bound
    it by ``2 max(deg^2) - h2 * min_square``, so a Fincke-Pohst search over
    that ellipsoid is exhaustive.
    """
    h = as_class(h)
    h2 = pair(lat, h, h)
    if h2 <= 0:
        raise NonPositivePolarization(f"H^2 = {h2} must be positive")
    if min_degree > max_degree:
        return []
    return list(_window(lat, h, min_degree, max_degree, min_square))


@lru_cache(maxsize=4096)
def _window(lat, h, min_degree, max_degree, min_square):
    n = lat.rank
    h2 = pair(lat, h, h)
    v = [sum(lat.gram[i][j] * h.coords[j] for j in range(n)) for i in range(n)]
    q = [[Fraction(2 * v[i] * v[j] - h2 * lat.gram[i][j]) for j in range(n)] for i in range(n)]
    top = max(min_degree * min_degree, max_degree * max_degree)
    bound = 2 * top - h2 * min_square
    found = []
    for x in _fincke_pohst(q, bound):
        deg = sum(vi * xi for vi, xi in zip(v, x))
        if not min_degree <= deg <= max_degree:
            continue
        dc = DivisorClass(x)
        if pair(lat, dc, dc) >= min_square:
            found.append(dc)
    found.sort()
    return tuple(found)


def enumerate_by_degree(
    lat: PicardLattice, h: ClassLike, max_degree: int, min_square: int
) -> list[DivisorClass]:
    """Classes with ``1 <= H.D <= max_degree`` and ``D^2 >= min_square``,
    sorted lexicographically by coordinates."""
    return vectors_in_window(lat, h, 1, max_degree, min_square)
