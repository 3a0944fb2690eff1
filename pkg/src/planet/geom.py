"""Points and lines of the projective plane, incidence, duality, cross-ratio."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import BackendError, DegenerateError
from .field import ComplexField, Field


def det3(a: Sequence, b: Sequence, c: Sequence):
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def cross(a: Sequence, b: Sequence) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _normalize(field: Field, coords: Sequence) -> tuple:
    if field.exact:
        for k in (2, 1, 0):
            if coords[k]:
                inv = coords[k].inverse()
                return tuple(c * inv for c in coords)
        raise DegenerateError("all homogeneous coordinates are zero")
    mods = [abs(c) for c in coords]
    top = max(mods)
    if top == 0.0 or not np.isfinite(top):
        raise DegenerateError(f"invalid homogeneous coordinates {tuple(coords)!r}")
    # last coordinate of (numerically) largest modulus
    k = max(i for i in range(3) if mods[i] >= top * (1 - 1e-12))
    s = coords[k]
    return tuple(c / s for c in coords)


class _Projective:
    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords: Sequence):
        if len(coords) != 3:
            raise ValueError("projective coordinates need exactly three entries")
        self.field = field
        self.coords = _normalize(field, [field(c) for c in coords])

    def _same_kind(self, other) -> bool:
        return type(other) is type(self)

    def __eq__(self, other):
        if not self._same_kind(other):
            return NotImplemented
        if other.field != self.field:
            raise BackendError("comparing objects from different backends")
        if self.field.exact:
            return self.coords == other.coords
        return proj_equal(self.field, self.coords, other.coords)

    def __hash__(self):
        if self.field.exact:
            return hash((type(self).__name__, self.coords))
        # tolerance-based equality admits no finer hash
        return hash(type(self).__name__)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def to_complex(self) -> np.ndarray:
        return np.array([self.field.to_complex(c) for c in self.coords], dtype=complex)

    def __repr__(self):
        if self.field.exact:
            inner = ", ".join(map(repr, self.coords))
        else:
            inner = ", ".join(f"{c.real:.6g}{c.imag:+.6g}j" for c in self.coords)
        return f"{type(self).__name__}({inner})"


class Point(_Projective):
    """A point of P^2 given by homogeneous coordinates."""

    __slots__ = ()


class Line(_Projective):
    """A line of P^2 given by the coefficients of its linear form."""

    __slots__ = ()


def proj_equal(field: Field, a: Sequence, b: Sequence) -> bool:
    """Scale-free equality of coordinate triples (all 2x2 minors vanish)."""
    if field.exact:
        return all(x == 0 for x in cross(a, b))
    scale = max(float(np.linalg.norm(np.asarray(a, dtype=complex))), float(np.linalg.norm(np.asarray(b, dtype=complex))))
    tol = field.eps_eq * scale * scale
    return all(abs(m) <= tol for m in cross(a, b))


def check_same_field(*objs) -> Field:
    field = objs[0].field
    for o in objs[1:]:
        if o.field != field:
            raise BackendError(f"backend mismatch: {field!r} vs {o.field!r}")
    return field


def _is_zero(field: Field, value) -> bool:
    return field.is_zero(value)


def incident(p: Point, l: Line) -> bool:
    """True iff the point lies on the line."""
    if not isinstance(p, Point) or not isinstance(l, Line):
        raise TypeError("incident(point, line) expects a Point and a Line")
    field = check_same_field(p, l)
    s = p[0] * l[0] + p[1] * l[1] + p[2] * l[2]
    return _is_zero(field, s)


def join(p: Point, q: Point) -> Line:
    """The line through two distinct points."""
    field = check_same_field(p, q)
    if p == q:
        raise DegenerateError(f"join of coincident points {p!r}")
    return Line(field, cross(p.coords, q.coords))


def meet(l: Line, m: Line) -> Point:
    """The intersection point of two distinct lines."""
    field = check_same_field(l, m)
    if l == m:
        raise DegenerateError(f"meet of coincident lines {l!r}")
    return Point(field, cross(l.coords, m.coords))


def dual(obj: Point | Line) -> Point | Line:
    """Reinterpret a point as a line of the dual plane and vice versa."""
    if isinstance(obj, Point):
        return Line(obj.field, obj.coords)
    if isinstance(obj, Line):
        return Point(obj.field, obj.coords)
    raise TypeError(f"cannot dualize {obj!r}")


def det_residual(a: _Projective, b: _Projective, c: _Projective) -> float:
    """|det| of three coordinate triples scaled by their norms (approx diagnostics)."""
    rows = [x.to_complex() for x in (a, b, c)]
    d = abs(np.linalg.det(np.array(rows)))
    return float(d / np.prod([np.linalg.norm(r) for r in rows]))


def _det_zero(a: _Projective, b: _Projective, c: _Projective) -> bool:
    field = check_same_field(a, b, c)
    if field.exact:
        return det3(a.coords, b.coords, c.coords) == 0
    return det_residual(a, b, c) <= field.eps_eq


def collinear(p: Point, q: Point, r: Point) -> bool:
    return _det_zero(p, q, r)


def concurrent(l: Line, m: Line, n: Line) -> bool:
    return _det_zero(l, m, n)


def _bracket_pair(line: Line) -> tuple[int, int]:
    """Coordinates kept when projecting ``line`` injectively onto P^1.

    Dropping coordinate k projects from the vertex e_k, which is injective on
    the line exactly when the line's k-th coefficient is nonzero.
    """
    field = line.field
    if field.exact:
        k = next(k for k in range(3) if line[k] != 0)
    else:
        k = int(np.argmax([abs(c) for c in line.coords]))
    return tuple(i for i in range(3) if i != k)


def cross_ratio(p1: Point, p2: Point, p3: Point, p4: Point):
    """Cross-ratio cr(p1, p2; p3, p4) of four collinear points.

    Normalized so that points with affine parameters 0, inf, 1, lam give lam.
    """
    pts = (p1, p2, p3, p4)
    field = check_same_field(*pts)
    distinct: list[Point] = []
    for p in pts:
        if not any(p == q for q in distinct):
            distinct.append(p)
    if len(distinct) < 3:
        raise DegenerateError("cross-ratio needs at least three distinct points")
    a, b = distinct[0], distinct[1]
    line = join(a, b)
    for p in pts:
        if not incident(p, line):
            raise DegenerateError("cross-ratio of non-collinear points")
    i, j = _bracket_pair(line)

    def br(u, v):
        return u[i] * v[j] - u[j] * v[i]

    num = br(p1, p4) * br(p2, p3)
    den = br(p1, p3) * br(p2, p4)
    if field.exact:
        infinite = den == 0
    else:
        infinite = abs(den) <= field.eps_eq * max(1.0, abs(num))
    if infinite:
        raise DegenerateError("cross-ratio is infinite (p1 = p3 or p2 = p4)")
    return num / den


# ---------------------------------------------------------------------------
# batch helpers (approximate backend)


def coords_array(objs: Iterable[_Projective]) -> np.ndarray:
    return np.array([o.to_complex() for o in objs], dtype=complex).reshape(-1, 3)


def incidence_table(points: Sequence[Point], lines: Sequence[Line]) -> np.ndarray:
    """Boolean matrix ``T[i, j] = incident(points[i], lines[j])``."""
    if not points or not lines:
        return np.zeros((len(points), len(lines)), dtype=bool)
    field = check_same_field(points[0], lines[0])
    if field.exact:
        return np.array([[incident(p, l) for l in lines] for p in points], dtype=bool)
    P = coords_array(points)
    L = coords_array(lines)
    vals = np.abs(P @ L.T)
    return vals <= field.eps_eq * np.maximum(1.0, vals)


def random_point(field: Field, rng: np.random.Generator) -> Point:
    while True:
        coords = [field.random(rng) for _ in range(3)]
        if any(field.size(c) > 0 for c in coords):
            return Point(field, coords)


def random_line(field: Field, rng: np.random.Generator) -> Line:
    return dual(random_point(field, rng))


def approx_field(eps_eq: float = 1e-9, eps_rank: float = 1e-8) -> ComplexField:
    return ComplexField(eps_eq, eps_rank)
