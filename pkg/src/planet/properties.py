"""Randomized property suites shared by ``planet selftest`` and the test-suite.

Each ``*_trial`` draws one random configuration and returns the measured
quantity; the ``run_*`` helpers aggregate many trials into a :class:`SuiteResult`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .cubic import (
    SINGULAR_MODELS,
    complete_set_check,
    relation_determinant,
    singular_model,
)
from .errors import DegenerateError
from .field import ComplexField, Field
from .geom import Line, Point, cross_ratio, det3, det_residual, join, meet, random_line, random_point
from .net import Net

CONCURRENCY_TOL = 1e-8
HARMONIC_TOL = 1e-8
RELATION_TOL = 1e-9
SEPARATION = 1e-4


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: int
    worst: float
    details: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "trials": self.trials, "failures": self.failures,
                "worst": self.worst, "details": self.details[:5]}


def _retry(draw: Callable, rng, attempts: int = 50):
    for _ in range(attempts):
        try:
            return draw(rng)
        except DegenerateError:
            continue
    raise DegenerateError("could not draw a nondegenerate configuration")


def _point_on(field: Field, p: Point, q: Point, rng) -> Point:
    s, t = field.random(rng), field.random(rng)
    return Point(field, [s * a + t * b for a, b in zip(p.coords, q.coords)])


def _distinct(*pts) -> None:
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                raise DegenerateError("coincident points")


# ---------------------------------------------------------------------------
# concurrency of the three diagonal lines


def hexagon_configuration(field: Field, rng) -> tuple[Line, Line, Line]:
    """Three lines that must pass through one point (the hexagon recipe)."""

    def draw(rng):
        a1, a2, b1, b2, b3 = (random_point(field, rng) for _ in range(5))
        _distinct(a1, a2, b1, b2, b3)
        c1 = meet(join(a1, b1), join(a2, b3))
        c3 = meet(join(a1, b3), join(a2, b1))
        a3 = _point_on(field, b2, c3, rng)
        _distinct(a1, a2, a3, b1, b2, b3, c1, c3)
        c2 = meet(join(a1, b2), join(a3, b3))
        lines = (join(a2, a3), join(b1, b2), join(c1, c2))
        if lines[0] == lines[1] or lines[0] == lines[2] or lines[1] == lines[2]:
            raise DegenerateError("coincident lines")
        return lines

    return _retry(draw, rng)


def concurrency_trial(field: Field, rng) -> float:
    lines = hexagon_configuration(field, rng)
    if field.exact:
        return 0.0 if det3(*(l.coords for l in lines)) == 0 else math.inf
    return det_residual(*lines)


# ---------------------------------------------------------------------------
# harmonic quadruple of a complete quadrangle


def quadrangle_trial(field: Field, rng):
    """cr(c1, c2; x1, x2) for a random quadrangle a1 b1 b2 a2 (always -1)."""

    def draw(rng):
        a1, b1, b2, a2 = (random_point(field, rng) for _ in range(4))
        _distinct(a1, b1, b2, a2)
        c1 = meet(join(a1, b1), join(a2, b2))
        c2 = meet(join(a1, b2), join(a2, b1))
        diag = join(c1, c2)
        x1 = meet(diag, join(a1, a2))
        x2 = meet(diag, join(b1, b2))
        _distinct(c1, c2, x1, x2)
        return cross_ratio(c1, c2, x1, x2)

    return _retry(draw, rng)


# ---------------------------------------------------------------------------
# complete sets


def random_complete_set(field: Field, rng) -> list[Point]:
    """The nine intersections of two random triangles of lines."""

    def draw(rng):
        ls = [random_line(field, rng) for _ in range(3)]
        ms = [random_line(field, rng) for _ in range(3)]
        pts = [meet(l, m) for l in ls for m in ms]
        _distinct(*pts)
        return pts

    return _retry(draw, rng)


def random_nine(field: Field, rng) -> list[Point]:
    return [random_point(field, rng) for _ in range(9)]


def t0_indices(m: int) -> tuple[list[int], list[int], list[int]]:
    """Index sets {0,1,2 | 0,1,2 | -1,-2,-3} (mod m)."""
    return [0, 1, 2], [0, 1, 2], [(-1) % m, (-2) % m, (-3) % m]


def abc_indices(a: int, b: int, c: int, m: int) -> tuple[list[int], list[int], list[int]]:
    """{a,b,c | a,b,c | a+b,a+c,b+c} rewritten for sum-zero labels (third entries negated)."""
    return [a % m, b % m, c % m], [a % m, b % m, c % m], [(-(a + b)) % m, (-(a + c)) % m, (-(b + c)) % m]


def labelled_points(net: Net, indices: tuple[list[int], list[int], list[int]]) -> list[Point]:
    """Dual points of the chosen lines of the first three classes."""
    return [Point(net.field, net.classes[i][j].coords) for i in range(3) for j in indices[i]]


# ---------------------------------------------------------------------------
# group laws on singular cubics


MIN_GAP = 0.5


def _draw_param(model, rng):
    if model.multiplicative:
        return cmath.rect(math.exp(rng.uniform(math.log(0.5), math.log(2.0))), rng.uniform(0, 2 * math.pi))
    return complex(rng.uniform(-2, 2), rng.uniform(-2, 2))


def _separated(model, params) -> bool:
    """Parameters sharing a component differ by at least MIN_GAP."""
    for i in range(3):
        for j in range(i + 1, 3):
            if model.slots[i] == model.slots[j] and abs(params[i] - params[j]) < MIN_GAP:
                return False
    return True


def group_law_trial(case: str, rng, field: ComplexField | None = None) -> tuple[float, float]:
    """(|det| when the relation holds, |det| after shifting the third parameter by 1e-3).

    The determinant is taken on the unnormalized parametrized coordinates.
    """
    field = field or ComplexField()
    model = singular_model(case)
    for _ in range(1000):
        a, b = _draw_param(model, rng), _draw_param(model, rng)
        c = model.relation(a, b)
        if model.multiplicative and not 0.1 <= abs(c) <= 10:
            continue
        if not _separated(model, (a, b, c)):
            continue
        good = abs(relation_determinant(case, a, b, c, field))
        bad = abs(relation_determinant(case, a, b, c + 1e-3, field))
        return good, bad
    raise DegenerateError(f"no separated sample found for case {case}")


def group_law_exact_trial(case: str, field: Field, rng) -> bool:
    """Exact backend: the relation gives a vanishing determinant, a shifted third parameter does not."""
    model = singular_model(case)
    for _ in range(100):
        a, b = field(field.random(rng)), field(field.random(rng))
        if model.multiplicative and (field.is_zero(a) or field.is_zero(b)):
            continue
        c = model.relation(a, b)
        shifted = c + field.one
        if model.multiplicative and field.is_zero(shifted):
            continue
        if not all(_distinct_on(model, p) for p in ((a, b, c), (a, b, shifted))):
            continue
        return relation_determinant(case, a, b, c, field) == 0 and relation_determinant(case, a, b, shifted, field) != 0
    raise DegenerateError(f"no nondegenerate exact sample for case {case}")


def _distinct_on(model, params) -> bool:
    return all(
        params[i] != params[j] for i in range(3) for j in range(i + 1, 3) if model.slots[i] == model.slots[j]
    )


# ---------------------------------------------------------------------------
# aggregated suites


def run_concurrency(field: Field, trials: int, rng) -> SuiteResult:
    vals = [concurrency_trial(field, rng) for _ in range(trials)]
    bad = [v for v in vals if not v < CONCURRENCY_TOL]
    return SuiteResult("concurrency", trials, len(bad), max(vals))


def run_quadrangle(field: Field, trials: int, rng) -> SuiteResult:
    vals = [quadrangle_trial(field, rng) for _ in range(trials)]
    if field.exact:
        errs = [0.0 if field.eq(v, -field.one) else math.inf for v in vals]
    else:
        errs = [abs(v + 1) for v in vals]
    bad = [e for e in errs if not e < HARMONIC_TOL]
    return SuiteResult("harmonic-quadrangle", trials, len(bad), max(errs))


def run_chasles(field: Field, trials: int, rng) -> SuiteResult:
    fails, details = 0, []
    for t in range(trials):
        if not complete_set_check(random_complete_set(field, rng)):
            fails += 1
            details.append(f"complete set #{t} rejected")
        if complete_set_check(random_nine(field, rng)):
            fails += 1
            details.append(f"random nine #{t} accepted")
    return SuiteResult("chasles", 2 * trials, fails, float(fails), details)


def run_group_laws(trials: int, rng, field: ComplexField | None = None) -> SuiteResult:
    fails, worst, details = 0, 0.0, []
    for case in SINGULAR_MODELS:
        for _ in range(trials):
            good, bad = group_law_trial(case, rng, field)
            worst = max(worst, good)
            if not (good < RELATION_TOL and bad > SEPARATION):
                fails += 1
                details.append(f"{case}: residual {good:.2e}, perturbed {bad:.2e}")
    return SuiteResult("singular-group-laws", trials * len(SINGULAR_MODELS), fails, worst, details)


def run_all(trials: int = 100, seed: int = 0, field: Field | None = None) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    field = field or ComplexField()
    out = [
        run_concurrency(field, trials, rng),
        run_quadrangle(field, trials, rng),
        run_chasles(field, trials, rng),
    ]
    if field.exact:
        fails = sum(
            not group_law_exact_trial(case, field, rng)
            for case in SINGULAR_MODELS
            if case != "2a" or field.N % 4 == 0
            for _ in range(trials)
        )
        out.append(SuiteResult("singular-group-laws", trials * len(SINGULAR_MODELS), fails, float(fails)))
    else:
        out.append(run_group_laws(trials, rng, field))
    return out
