"""k-nets of lines: verification of the net axioms and derived checks."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import BackendError, NetError
from .field import Field
from .forms import product_of_linear
from .geom import Line, Point, cross, incident, incidence_table, meet


@dataclass(frozen=True)
class Net:
    """Lines partitioned into classes, plus an optional declared point set."""

    field: Field
    classes: tuple[tuple[Line, ...], ...]
    points: tuple[Point, ...] | None = None

    def __post_init__(self):
        classes = tuple(tuple(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        if self.points is not None:
            object.__setattr__(self, "points", tuple(self.points))
        for cls in classes:
            for line in cls:
                if not isinstance(line, Line):
                    raise TypeError(f"net classes must contain Line objects, got {line!r}")
                if line.field != self.field:
                    raise BackendError(f"line {line!r} is not over {self.field!r}")

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def lines(self) -> list[Line]:
        """All lines, class by class."""
        return [l for c in self.classes for l in c]

    def labels(self) -> list[int]:
        """Class index of each entry of :attr:`lines`."""
        return [i for i, c in enumerate(self.classes) for _ in c]

    def with_points(self, points) -> "Net":
        return Net(self.field, self.classes, tuple(points))


@dataclass
class NetReport:
    ok: bool
    k: int
    m: int
    r: int
    n_points: int
    violations: list[str] = dc_field(default_factory=list)
    warnings: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "k": self.k,
            "m": self.m,
            "r": self.r,
            "n_points": self.n_points,
            "violations": list(self.violations),
            "warnings": list(self.warnings),
        }


def _duplicate_lines(net: Net) -> list[tuple[int, int]]:
    lines = net.lines
    if net.field.exact:
        seen: dict[Line, int] = {}
        dups = []
        for i, l in enumerate(lines):
            if l in seen:
                dups.append((seen[l], i))
            else:
                seen[l] = i
        return dups
    return [(i, j) for i, j in combinations(range(len(lines)), 2) if lines[i] == lines[j]]


class PointIndex:
    """Lookup of projective points by equality (hash for exact, minors for approx)."""

    def __init__(self, field: Field, points: Sequence[Point] = ()):
        self.field = field
        self.points: list[Point] = []
        self._map: dict[Point, int] = {}
        self._arr = np.zeros((0, 3), dtype=complex)
        for p in points:
            self.add(p)

    def find(self, p: Point) -> int:
        if self.field.exact:
            return self._map.get(p, -1)
        if not len(self._arr):
            return -1
        v = p.to_complex()
        arr = self._arr
        mins = np.abs(
            np.stack(
                [
                    arr[:, 1] * v[2] - arr[:, 2] * v[1],
                    arr[:, 2] * v[0] - arr[:, 0] * v[2],
                    arr[:, 0] * v[1] - arr[:, 1] * v[0],
                ],
                axis=1,
            )
        )
        scale = np.maximum(np.linalg.norm(arr, axis=1), np.linalg.norm(v)) ** 2
        hit = np.nonzero(np.all(mins <= self.field.eps_eq * scale[:, None], axis=1))[0]
        return int(hit[0]) if hit.size else -1

    def add(self, p: Point) -> int:
        """Insert ``p`` unless present; return its index."""
        idx = self.find(p)
        if idx >= 0:
            return idx
        self.points.append(p)
        if self.field.exact:
            self._map[p] = len(self.points) - 1
        else:
            self._arr = np.vstack([self._arr, p.to_complex()[None, :]])
        return len(self.points) - 1

    def __contains__(self, p: Point) -> bool:
        return self.find(p) >= 0

    def __len__(self):
        return len(self.points)


def _dedup(field: Field, pts: Sequence[Point]) -> list[Point]:
    return PointIndex(field, pts).points


def compute_points(net: Net) -> list[Point]:
    """All intersection points of lines from different classes, deduplicated."""
    if net.k < 2:
        return []
    dups = _duplicate_lines(net)
    if dups:
        i, j = dups[0]
        raise NetError(f"duplicate lines in net: #{i} and #{j} coincide ({net.lines[i]!r})")
    meets = []
    for a, b in combinations(range(net.k), 2):
        for l in net.classes[a]:
            for m in net.classes[b]:
                meets.append(Point(net.field, cross(l.coords, m.coords)))
    return _dedup(net.field, meets)


# ---------------------------------------------------------------------------
# class profiles


@dataclass(frozen=True)
class ClassProfile:
    kind: str  # "pencil" | "general-position" | "other"
    base: Point | None = None

    def to_json(self, field) -> dict:
        from .io import encode_point

        out = {"kind": self.kind}
        if self.base is not None:
            out["base"] = encode_point(self.base)
        return out


def class_profile(lines: Sequence[Line]) -> ClassProfile:
    """Pencil (with base point), general position, or neither."""
    if len(lines) < 2:
        raise ValueError("class_profile needs at least two lines")
    base = meet(lines[0], lines[1])
    if all(incident(base, l) for l in lines[2:]):
        return ClassProfile("pencil", base)
    pts = [meet(a, b) for a, b in combinations(lines, 2)]
    if len(_dedup(lines[0].field, pts)) == len(pts):
        return ClassProfile("general-position")
    return ClassProfile("other")


def _is_pencil(cls: Sequence[Line]) -> bool:
    return len(cls) < 2 or class_profile(cls).kind == "pencil"


# ---------------------------------------------------------------------------
# verification


def verify_net(net: Net, allow_trivial: bool = False) -> NetReport:
    """Check the k-net axioms and fill in k, m and the number of pencil classes.

    Points are always recomputed from the lines; a declared point set is
    cross-checked against the computed one.
    """
    if net.k < 3:
        raise NetError(f"a net needs at least 3 classes, got {net.k}")
    if any(len(c) == 0 for c in net.classes):
        raise NetError("every class of a net must be nonempty")
    field = net.field
    violations: list[str] = []
    warnings: list[str] = []
    sizes = net.sizes
    m = sizes[0] if len(set(sizes)) == 1 else 0

    dups = _duplicate_lines(net)
    if dups:
        for i, j in dups:
            violations.append(f"lines #{i} and #{j} coincide")
        return NetReport(False, net.k, m, 0, 0, violations, warnings)

    points = compute_points(net)
    if m == 0:
        violations.append(f"class sizes differ: {sizes}")
    elif m == 1 and not allow_trivial:
        violations.append("trivial net (m = 1); pass allow_trivial to accept it")

    lines = net.lines
    labels = np.array(net.labels())
    table = incidence_table(points, lines)
    for xi, p in enumerate(points):
        for ci in range(net.k):
            cnt = int(table[xi, labels == ci].sum())
            if cnt != 1:
                violations.append(
                    f"one line per class: point {p!r} lies on {cnt} lines of class {ci} (expected exactly 1)"
                )
    if m:
        per_line = table.sum(axis=0)
        for li, cnt in enumerate(per_line):
            if cnt != m:
                violations.append(f"line #{li} {lines[li]!r} meets the point set in {cnt} points, expected {m}")
        if len(points) != m * m:
            violations.append(f"|X| = {len(points)} but m^2 = {m * m}")

    computed = PointIndex(field, points)
    if net.points is not None:
        declared = PointIndex(field, net.points)
        for p in declared.points:
            if p not in computed:
                violations.append(f"point set: declared point {p!r} is not a cross-class intersection")
        for q in points:
            if q not in declared:
                violations.append(f"point set: intersection {q!r} missing from the declared point set")

    for ci, cls in enumerate(net.classes):
        for a, b in combinations(cls, 2):
            x = meet(a, b)
            if x in computed:
                warnings.append(f"lines of class {ci} meet at {x!r}, which is also a net point")

    r = sum(1 for c in net.classes if _is_pencil(c))
    return NetReport(not violations, net.k, m, r, len(points), violations, warnings)


def require_verified(net: Net, k: int | None = None, allow_trivial: bool = False) -> NetReport:
    rep = verify_net(net, allow_trivial)
    if not rep.ok:
        raise NetError("net fails verification: " + "; ".join(rep.violations[:3]))
    if k is not None and rep.k != k:
        raise NetError(f"expected a {k}-net, got k = {rep.k}")
    return rep


# ---------------------------------------------------------------------------
# feasibility and the pencil of class curves


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    lhs: int
    rhs: Fraction

    def to_json(self) -> dict:
        return {
            "verdict": "feasible" if self.feasible else "infeasible",
            "lhs": self.lhs,
            "rhs": str(self.rhs),
            "rhs_float": float(self.rhs),
        }


def euler_feasible(k: int, m: int, r: int = 0) -> Feasibility:
    """Decide k <= 6(m-1)/m - r(m-2)/m in exact rational arithmetic.

    ``r`` is the number of classes that are pencils.
    """
    for name, v in (("k", k), ("m", m), ("r", r)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"{name} must be an integer")
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if not 0 <= r <= k:
        raise ValueError(f"r must lie in 0..k, got {r}")
    rhs = Fraction(6 * (m - 1), m) - Fraction(r * (m - 2), m)
    return Feasibility(k <= rhs, k, rhs)


def class_polynomials(net: Net) -> list[list]:
    """Coefficient vectors (lex order) of the products of each class's lines."""
    return [product_of_linear(net.field, [l.coords for l in c]).vector() for c in net.classes]


def verify_split_pencil(net: Net, strict: bool = False) -> bool:
    """True iff every class curve lies in the pencil spanned by the first two.

    With ``strict`` the net must pass :func:`verify_net` first; otherwise only
    the shape (>= 3 classes of equal size) is required, so perturbed
    configurations can be tested.
    """
    if strict:
        require_verified(net)
    if net.k < 3 or len(set(net.sizes)) != 1:
        raise NetError("split-pencil check needs at least 3 classes of equal size")
    rows = class_polynomials(net)
    return net.field.rank(rows) == 2
