"""Plane cubics: fitting, classification, chords and group laws."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import CubicError, DegenerateError, FieldError, Inconclusive, NumericError
from .field import ComplexField, Field
from .forms import Form, det3_forms, monomial_matrix, monomial_values, monomials, product_of_linear
from .geom import Line, Point, check_same_field, cross, det3, dual, join
from .net import Net, require_verified
from .zerodim import DualQuotient, random_linear, solve_points

TAGS = (
    "smooth",
    "nodal",
    "cuspidal",
    "conic+line transverse",
    "conic+line tangent",
    "triangle",
    "concurrent-lines",
    "non-reduced/other",
)

# relative thresholds for approximate data
ON_CURVE_TOL = 1e-7
REGULAR_TOL = 1e-6
NEWTON_TOL = 1e-8


def _normalize_coeffs(field: Field, coeffs: list) -> list:
    if field.exact:
        for c in reversed(coeffs):
            if c != 0:
                inv = c.inverse()
                return [x * inv for x in coeffs]
        raise CubicError("the zero form is not a cubic")
    mods = [abs(c) for c in coeffs]
    top = max(mods)
    if top == 0 or not np.isfinite(top):
        raise CubicError("the zero form is not a cubic")
    k = max(i for i in range(len(coeffs)) if mods[i] >= top * (1 - 1e-12))
    s = coeffs[k]
    return [c / s for c in coeffs]


class Cubic:
    """A ternary cubic, coefficients in lex order x^3, x^2y, ..., z^3, up to scale."""

    __slots__ = ("field", "coeffs", "_form", "_grad", "_hess")

    def __init__(self, field: Field, coeffs: Sequence):
        if len(coeffs) != 10:
            raise CubicError(f"a cubic needs 10 coefficients, got {len(coeffs)}")
        self.field = field
        self.coeffs = tuple(_normalize_coeffs(field, [field(c) for c in coeffs]))
        self._form = Form.from_vector(field, 3, self.coeffs)
        self._grad = self._form.gradient()
        self._hess = [[g.diff(j) for j in range(3)] for g in self._grad]

    @classmethod
    def from_form(cls, form: Form) -> "Cubic":
        if form.degree != 3:
            raise CubicError(f"expected a cubic form, got degree {form.degree}")
        return cls(form.field, form.vector())

    @property
    def form(self) -> Form:
        return self._form

    def __call__(self, p) -> object:
        return self._form(tuple(p))

    def gradient_at(self, p) -> tuple:
        p = tuple(p)
        return tuple(g(p) for g in self._grad)

    def hessian_at(self, p) -> list[list]:
        p = tuple(p)
        return [[h(p) for h in row] for row in self._hess]

    def coefficient_norm(self) -> float:
        return float(np.linalg.norm([self.field.to_complex(c) for c in self.coeffs]))

    def residual(self, p) -> float:
        """|F(p)| relative to ||F|| ||p||^3."""
        pc = np.array([self.field.to_complex(c) for c in p])
        val = abs(self.field.to_complex(self(p)))
        return val / (self.coefficient_norm() * float(np.linalg.norm(pc)) ** 3)

    def gradient_size(self, p) -> float:
        """||grad F(p)|| relative to ||F|| ||p||^2."""
        pc = np.array([self.field.to_complex(c) for c in p])
        g = np.array([self.field.to_complex(c) for c in self.gradient_at(p)])
        return float(np.linalg.norm(g)) / (self.coefficient_norm() * float(np.linalg.norm(pc)) ** 2)

    def contains(self, p) -> bool:
        if self.field.exact:
            return self(p) == 0
        return self.residual(p) <= ON_CURVE_TOL

    def is_regular_point(self, p) -> bool:
        if not self.contains(p):
            return False
        if self.field.exact:
            return any(g != 0 for g in self.gradient_at(p))
        return self.gradient_size(p) > REGULAR_TOL

    def transform(self, mat: Sequence[Sequence]) -> "Cubic":
        """The cubic F(M v); its points are M^{-1} applied to the points of F."""
        return Cubic.from_form(self._form.substitute(mat))

    def proportional(self, other: "Cubic") -> bool:
        check_same_field(self, other)
        rows = [list(self.coeffs), list(other.coeffs)]
        return self.field.rank(rows) == 1

    def __eq__(self, other):
        if not isinstance(other, Cubic):
            return NotImplemented
        return self.proportional(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"Cubic({self._form!r})"


# ---------------------------------------------------------------------------
# plumbing


def evaluate(c: Cubic, p: Point):
    check_same_field(c, p)
    return c(p.coords)


def gradient(c: Cubic, p: Point) -> tuple:
    check_same_field(c, p)
    return c.gradient_at(p.coords)


def fit_forms(field: Field, points: Sequence[Point], degree: int) -> list[list]:
    """Basis of the degree-d forms through all points (coefficient vectors)."""
    if not points:
        raise ValueError("fitting needs at least one point")
    if field.exact:
        rows = [monomial_values(degree, p.coords) for p in points]
        return field.nullspace(rows, len(monomials(degree)))
    pts = np.array([p.to_complex() / np.linalg.norm(p.to_complex()) for p in points])
    return list(field.nullspace(monomial_matrix(degree, pts), len(monomials(degree))))


def fit_cubics(points: Sequence[Point]) -> list[Cubic]:
    """Basis of the cubics through every point (empty when none exist)."""
    if not points:
        raise ValueError("fit_cubics needs at least one point")
    field = check_same_field(*points)
    return [Cubic(field, v) for v in fit_forms(field, points, 3)]


def fit_dimension(points: Sequence[Point]) -> int:
    field = check_same_field(*points)
    return len(fit_forms(field, points, 3))


# ---------------------------------------------------------------------------
# classification


@dataclass
class CubicClass:
    tag: str
    singular_points: list[Point] = dc_field(default_factory=list)
    components: list[Form] | None = None
    tjurina: int | None = None

    def to_json(self) -> dict:
        from .io import encode_point, encode_scalar

        out: dict = {
            "tag": self.tag,
            "singular_points": [encode_point(p) for p in self.singular_points],
        }
        if self.components is not None:
            out["components"] = [
                {"degree": f.degree, "coeffs": [encode_scalar(f.field, c) for c in f.vector()]}
                for f in self.components
            ]
        if self.tjurina is not None:
            out["tjurina"] = self.tjurina
        return out


def _hessian_minors(c: Cubic) -> list[Form]:
    H = c._hess
    return [
        H[a][b] * H[r][s] - H[a][s] * H[r][b]
        for a, r in combinations(range(3), 2)
        for b, s in combinations(range(3), 2)
    ]


def _hilbert(c: Cubic, forms: Sequence[Form], d: int) -> int:
    from .zerodim import hilbert_value

    return hilbert_value(c.field, forms, d)


def _refine_singular(c: Cubic, p: list) -> list:
    """Damped Newton (Gauss-Newton) on grad F = 0 in the chart of the largest coordinate."""
    v = np.array([complex(x) for x in p])
    k = int(np.argmax(np.abs(v)))
    v = v / v[k]
    free = [i for i in range(3) if i != k]
    norm = c.coefficient_norm()
    for _ in range(10):
        g = np.array(c.gradient_at(v), dtype=complex)
        if np.linalg.norm(g) <= 1e-15 * norm:
            break
        H = np.array(c.hessian_at(v), dtype=complex)[:, free]
        step, *_ = np.linalg.lstsq(H, -g, rcond=None)
        trial = v.copy()
        damp = 1.0
        for _ in range(6):
            trial = v.copy()
            trial[free] += damp * step
            if np.linalg.norm(c.gradient_at(trial)) < np.linalg.norm(g):
                break
            damp /= 2
        v = trial
    if c.gradient_size(v) > NEWTON_TOL:
        raise NumericError(
            f"singular point refinement stalled (relative gradient {c.gradient_size(v):.2e})"
        )
    return list(v)


def _divide_by_line(c: Cubic, line: Sequence) -> Form:
    """Q with F = L * Q; raises CubicError if L does not divide F."""
    field = c.field
    L = Form.linear(field, line)
    rows = []
    for e in monomials(3):
        row = []
        for q in monomials(2):
            diff = tuple(e[i] - q[i] for i in range(3))
            row.append(L.terms.get(diff, field.zero) if min(diff) >= 0 else field.zero)
        rows.append(row)
    rhs = list(c.coeffs)
    try:
        sol = field.solve(rows, rhs)
    except FieldError as exc:
        raise CubicError("line is not a component of the cubic") from exc
    Q = Form.from_vector(field, 2, list(sol))
    if not field.exact:
        resid = np.linalg.norm(np.asarray(rows, dtype=complex) @ np.asarray(sol) - np.asarray(rhs, dtype=complex))
        if resid > 1e-7 * c.coefficient_norm():
            raise CubicError("line is not a component of the cubic")
    return Q


def _tangent_cone_line(c: Cubic, p: Sequence) -> list:
    H = c.hessian_at(p)
    sizes = [sum(c.field.size(x) ** 2 for x in row) for row in H]
    return list(H[int(np.argmax(sizes))])


def _pencil_lines(c: Cubic, base: Sequence) -> list[list] | None:
    """Three lines through ``base`` whose product is F (None if not rational)."""
    field = c.field
    bc = np.array([field.to_complex(x) for x in base])
    # two further points completing a frame
    order = np.argsort(np.abs(bc))
    a = [field.zero] * 3
    b = [field.zero] * 3
    a[int(order[0])] = field.one
    b[int(order[1])] = field.one
    # F(s a + t b) as a binary cubic in (s, t)
    mat = [[a[i], b[i], field.zero] for i in range(3)]
    sub = c.form.substitute(mat)
    coeffs = [sub.terms.get((3 - k, k, 0), field.zero) for k in range(4)]  # s^3 .. t^3
    if field.exact:
        from .zerodim import roots_in_field

        lead = next(i for i, x in enumerate(coeffs) if x != 0)
        try:
            roots = roots_in_field(field, coeffs[lead:])
        except FieldError:
            return None
        dirs = [[a[i] * r + b[i] for i in range(3)] for r, mult in roots for _ in range(mult)]
        dirs += [a] * lead  # roots at s/t = infinity
    else:
        cc = np.array([complex(x) for x in coeffs])
        lead = int(np.argmax(np.abs(cc) > 1e-12 * np.abs(cc).max()))
        roots = np.roots(cc[lead:])
        dirs = [[a[i] * r + b[i] for i in range(3)] for r in roots]
        dirs += [a] * lead
    return [list(cross(base, d)) for d in dirs]


def classify(c: Cubic, seed: int = 0) -> CubicClass:
    """Type of a plane cubic from the length of its singular scheme.

    The singular scheme (common zeros of the partials) has length 0 for a
    smooth cubic, 1 for a node, 2 for a cusp or two nodes, 3 for a tacnode
    or three nodes and 4 for a triple point; a curve of singular points
    signals a repeated component.  Points where the Hessian drops to rank 1
    separate cusp/tacnode from the nodal configurations.
    """
    field = c.field
    rng = np.random.default_rng(seed)
    J = list(c._grad)
    h6, h7 = _hilbert(c, J, 6), _hilbert(c, J, 7)
    if h6 != h7:
        return CubicClass("non-reduced/other", [], None, None)
    tau = h7
    if tau == 0:
        return CubicClass("smooth", [], [c.form], 0)
    if tau > 4:
        return CubicClass("non-reduced/other", [], None, tau)
    cusp_like = tau in (2, 3) and _hilbert(c, J + _hessian_minors(c), 6) > 0

    def fin(pts):
        if not field.exact:
            pts = [_refine_singular(c, p) for p in pts]
        return [Point(field, p) for p in pts]

    if tau == 1 or (tau in (2, 3) and cusp_like) or tau == 4:
        single = None
        for _ in range(8):
            try:
                dq = DualQuotient(field, J, 6, random_linear(field, rng))
                single = dq.trace_point()
                break
            except (FieldError, NumericError):
                continue
        if single is None:
            raise NumericError("could not locate the singular point")
        (p,) = fin([single])
        if tau == 1:
            return CubicClass("nodal", [p], [c.form], 1)
        if tau == 4:
            lines = _pencil_lines(c, p.coords)
            comps = [Form.linear(field, l) for l in lines] if lines else None
            return CubicClass("concurrent-lines", [p], comps, 4)
        cone = _tangent_cone_line(c, p.coords)
        if tau == 2:
            return CubicClass("cuspidal", [p], [c.form], 2)
        Q = _divide_by_line(c, cone)
        return CubicClass("conic+line tangent", [p], [Form.linear(field, cone), Q], 3)

    raw = solve_points(field, J, 6, rng, expected=tau)
    pts = fin(raw)
    if tau == 2:
        L = join(pts[0], pts[1])
        Q = _divide_by_line(c, L.coords)
        return CubicClass("conic+line transverse", pts, [Form.linear(field, L.coords), Q], 2)
    lines = [join(pts[i], pts[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
    return CubicClass("triangle", pts, [Form.linear(field, l.coords) for l in lines], 3)


# ---------------------------------------------------------------------------
# chords and the group law


def _require_on(c: Cubic, p: Point, regular: bool = True):
    if not c.contains(p.coords):
        raise CubicError(f"{p!r} is not on the cubic")
    if regular and not c.is_regular_point(p.coords):
        raise CubicError(f"{p!r} is a singular point of the cubic")


def chord(c: Cubic, p: Point, q: Point) -> Point:
    """Third intersection of the line pq (tangent line when p = q) with the cubic."""
    field = check_same_field(c, p, q)
    _require_on(c, p)
    _require_on(c, q)
    if p != q:
        P, Q = p.coords, q.coords
        gp, gq = c.gradient_at(P), c.gradient_at(Q)
        b = sum((Q[i] * gp[i] for i in range(3)), field.zero)
        cc = sum((P[i] * gq[i] for i in range(3)), field.zero)
        out = [cc * P[i] - b * Q[i] for i in range(3)]
    else:
        P = p.coords
        T = c.gradient_at(P)
        # a second point on the tangent line
        cands = [cross(T, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        r = max(cands, key=lambda v: np.linalg.norm(np.array([field.to_complex(x) for x in cross(v, P)])))
        if not field.exact:
            r = tuple(np.array(r, dtype=complex) / np.linalg.norm(np.array(r, dtype=complex)))
        H = c.hessian_at(P)
        half = sum((r[i] * H[i][j] * r[j] for i in range(3) for j in range(3)), field.zero) / 2
        d = c(r)
        out = [d * P[i] - half * r[i] for i in range(3)]
    if field.exact:
        degenerate = all(x == 0 for x in out)
    else:
        oc = np.array([complex(x) for x in out])
        scale = max(float(np.linalg.norm(p.to_complex())), float(np.linalg.norm(q.to_complex()))) ** 4
        degenerate = float(np.linalg.norm(oc)) <= 1e-9 * c.coefficient_norm() * scale
    if degenerate:
        raise CubicError("the chord line is a component of the cubic")
    return Point(field, out)


def is_flex(c: Cubic, p: Point) -> bool:
    _require_on(c, p)
    return chord(c, p, p) == p


class CubicGroup:
    """Chord-tangent group on a smooth cubic with a flex as neutral element."""

    def __init__(self, c: Cubic, zero: Point | None = None):
        self.cubic = c
        if zero is None:
            zero = default_flex(c)
        if not is_flex(c, zero):
            raise CubicError(f"neutral element {zero!r} is not a flex")
        self.zero = zero

    def neg(self, p: Point) -> Point:
        return chord(self.cubic, self.zero, p)

    def add(self, p: Point, q: Point) -> Point:
        return chord(self.cubic, self.zero, chord(self.cubic, p, q))

    def sum(self, pts: Sequence[Point]) -> Point:
        acc = self.zero
        for p in pts:
            acc = self.add(acc, p)
        return acc


def _as_group(e) -> CubicGroup:
    from .weierstrass import EllipticData

    if isinstance(e, CubicGroup):
        return e
    if isinstance(e, EllipticData):
        return CubicGroup(e.curve, e.zero)
    if isinstance(e, Cubic):
        return CubicGroup(e)
    raise TypeError(f"expected a cubic, group or elliptic data, got {type(e).__name__}")


def group_add(e, p: Point, q: Point) -> Point:
    return _as_group(e).add(p, q)


def group_neg(e, p: Point) -> Point:
    return _as_group(e).neg(p)


def _refine_flex(c: Cubic, hess: Form, p: list) -> list:
    v = np.array([complex(x) for x in p])
    k = int(np.argmax(np.abs(v)))
    v = v / v[k]
    free = [i for i in range(3) if i != k]
    hg = hess.gradient()
    for _ in range(10):
        f = np.array([c(v), hess(tuple(v))], dtype=complex)
        if np.linalg.norm(f) < 1e-15:
            break
        J = np.array([c.gradient_at(v), [g(tuple(v)) for g in hg]], dtype=complex)[:, free]
        step = np.linalg.solve(J, -f)
        v[free] += step
    return list(v)


def flexes(c: Cubic, seed: int = 0) -> list[Point]:
    """The nine inflection points of a smooth cubic (F = Hess F = 0)."""
    field = c.field
    if classify(c, seed).tag != "smooth":
        raise CubicError("flexes are computed for smooth cubics only")
    hess = det3_forms(c.form.hessian())
    rng = np.random.default_rng(seed)
    pts = solve_points(field, [c.form, hess], 4, rng, expected=9)
    if not field.exact:
        pts = [_refine_flex(c, hess, p) for p in pts]
    out = [Point(field, p) for p in pts]
    return sorted(out, key=_flex_key)


def _flex_key(p: Point):
    v = p.to_complex()
    v = v / np.linalg.norm(v)
    # fix the phase so the last non-negligible coordinate is real positive
    k = max(i for i in range(3) if abs(v[i]) > 1e-9)
    v = v * abs(v[k]) / v[k]

    def ang(w):
        a = float(np.angle(w)) % (2 * np.pi) if abs(w) > 1e-9 else 0.0
        return 0.0 if a > 2 * np.pi - 1e-9 else round(a, 9)

    return (-round(abs(v[2]), 9), -round(abs(v[1]), 9), -round(abs(v[0]), 9), ang(v[1]), ang(v[0]))


def default_flex(c: Cubic) -> Point:
    """The flex with largest last coordinate (unit-norm scaling), ties broken deterministically."""
    return flexes(c)[0]


# ---------------------------------------------------------------------------
# singular models with their group laws


@dataclass(frozen=True)
class SingularModel:
    case: str
    coeffs: tuple  # integer/gaussian coefficients of the canonical curve
    slots: tuple[str, str, str]  # component carrying each of the three parameters
    multiplicative: bool
    description: str

    def curve(self, field: Field) -> Cubic:
        return Cubic(field, [_coerce(field, c) for c in self.coeffs])

    def relation(self, a, b):
        """Third parameter making the three points collinear."""
        if self.case == "1a":
            return 1 / (a * b)
        if self.case == "1b":
            return -(a + b)
        if self.multiplicative:
            return a * b
        return a + b


def _coerce(field: Field, c):
    return field(c)


SINGULAR_MODELS = {
    "1a": SingularModel("1a", (1, 0, 1, 0, 0, 0, 0, -1, 0, 0), ("C", "C", "C"), True, "nodal x^3+x^2z-y^2z"),
    "1b": SingularModel("1b", (1, 0, 0, 0, 0, 0, 0, -1, 0, 0), ("C", "C", "C"), False, "cuspidal x^3-y^2z"),
    "2a": SingularModel("2a", (0, 0, 1, 0, 0, 0, 0, 1, 0, -1), ("Q", "Q", "L"), True, "(x^2+y^2-z^2)z"),
    "2b": SingularModel("2b", (0, 0, 1, 0, 0, 0, 0, 0, -1, 0), ("Q", "Q", "L"), False, "(x^2-yz)z"),
    "3a": SingularModel("3a", (0, 0, 0, 0, 1, 0, 0, 0, 0, 0), ("L1", "L2", "L3"), True, "xyz"),
    "3b": SingularModel("3b", (0, 1, 0, -1, 0, 0, 0, 0, 0, 0), ("L1", "L2", "L3"), False, "xy(x-y)"),
}


def singular_model(case: str) -> SingularModel:
    try:
        return SINGULAR_MODELS[case]
    except KeyError:
        raise ValueError(f"unknown singular case {case!r}; choose from {sorted(SINGULAR_MODELS)}") from None


def param_coords(case: str, s, slot: int = 0, field: Field | None = None) -> tuple:
    """Unnormalized coordinates of the parametrized point (polynomial in ``s``)."""
    field = field or ComplexField()
    model = singular_model(case)
    comp = model.slots[slot]
    s = field(s)
    one, zero = field.one, field.zero
    if model.multiplicative and field.is_zero(s):
        raise DegenerateError(f"case {case} excludes the parameter 0")
    if case == "1a":
        return (4 * s * (1 - s), 4 * s * (1 + s), (1 - s) ** 3)
    if case == "1b":
        return (s, one, s**3)
    if case == "2a":
        i = field.i
        if comp == "Q":
            return (1 + s * s, i * (1 - s * s), 2 * s)
        return (1 - s, i * (1 + s), zero)
    if case == "2b":
        return (s, s * s, one) if comp == "Q" else (one, s, zero)
    if case == "3a":
        return {"L1": (zero, s, one), "L2": (one, zero, s), "L3": (one, -s, zero)}[comp]
    return {"L1": (zero, one, s), "L2": (one, zero, s), "L3": (one, one, s)}[comp]


def singular_param(case: str, s, slot: int = 0, field: Field | None = None) -> Point:
    """Point of the smooth locus of the canonical singular cubic with parameter ``s``.

    ``slot`` (0, 1, 2) picks the component in the collinearity relation,
    e.g. for 2a slots 0 and 1 lie on the conic and slot 2 on the line.
    """
    field = field or ComplexField()
    return Point(field, param_coords(case, s, slot, field))


def relation_determinant(case: str, a, b, c, field: Field | None = None):
    """det of the unnormalized coordinates of the points with parameters a, b, c.

    It factors as (relation defect) x (pairwise parameter differences), e.g.
    a + b - c for 3b and -4i (a - b)(ab - c) for 2a.
    """
    field = field or ComplexField()
    return det3(*(param_coords(case, s, k, field) for k, s in enumerate((a, b, c))))


def model_points(case: str, params: Sequence, field: Field | None = None) -> list[Point]:
    return [singular_param(case, s, k, field) for k, s in enumerate(params)]


def collinearity_residual(pts: Sequence[Point]) -> float:
    rows = [p.to_complex() for p in pts]
    d = abs(np.linalg.det(np.array(rows)))
    return float(d / np.prod([np.linalg.norm(r) for r in rows]))


def pairing_check(case: str, a, b, c, field: Field | None = None) -> bool:
    """True iff the model points with parameters a, b, c are collinear."""
    field = field or ComplexField()
    pts = model_points(case, (a, b, c), field)
    if field.exact:
        return det3(*(p.coords for p in pts)) == 0
    return collinearity_residual(pts) <= field.eps_eq


# ---------------------------------------------------------------------------
# complete sets and algebraic nets


def complete_set_check(nine: Sequence[Point]) -> bool:
    """Chasles test: every cubic through any eight of the points passes through the ninth."""
    if len(nine) != 9:
        raise ValueError(f"a complete set has 9 points, got {len(nine)}")
    check_same_field(*nine)
    for i, j in combinations(range(9), 2):
        if nine[i] == nine[j]:
            raise DegenerateError(f"points #{i} and #{j} coincide")
    full = fit_dimension(nine)
    if full > 2:
        raise Inconclusive(f"the nine points lie on a {full}-dimensional family of cubics")
    for k in range(9):
        if fit_dimension([p for i, p in enumerate(nine) if i != k]) != full:
            return False
    return full == 2


def split_cubic(lines: Sequence[Line]) -> Cubic:
    return Cubic.from_form(product_of_linear(lines[0].field, [l.coords for l in lines]))


@dataclass
class AlgebraicResult:
    algebraic: bool
    cubic: Cubic | None = None
    cls: CubicClass | None = None
    fit_dimension: int = 0
    max_residual: float = 0.0
    min_gradient: float = 0.0
    diagnostic: str = ""

    def to_json(self) -> dict:
        from .io import encode_cubic

        out: dict = {
            "verdict": "yes" if self.algebraic else "no",
            "regular": self.algebraic,
            "fit_dimension": self.fit_dimension,
            "residuals": {"max_on_curve": self.max_residual, "min_gradient": self.min_gradient},
        }
        if self.cubic is not None:
            out["cubic"] = encode_cubic(self.cubic)
        if self.cls is not None:
            out["class"] = self.cls.to_json()
        if self.diagnostic:
            out["diagnostic"] = self.diagnostic
        return out


def _collinear_class(points: Sequence[Point]) -> Line | None:
    a = points[0]
    b = next((p for p in points[1:] if p != a), None)
    if b is None:
        return None
    L = join(a, b)
    from .geom import incident

    return L if all(incident(p, L) for p in points) else None


def _candidates(field: Field, classes: list[list[Point]], basis: list[Cubic], rng):
    lines = [_collinear_class(cl) for cl in classes]
    if all(l is not None for l in lines):
        yield "split", split_cubic(lines)
    for i, L in enumerate(lines):
        if L is None:
            continue
        rest = [p for j, cl in enumerate(classes) if j != i for p in cl]
        conics = fit_forms(field, rest, 2)
        if len(conics) == 1:
            Q = Form.from_vector(field, 2, conics[0])
            yield "conic+line", Cubic.from_form(Q * Form.linear(field, L.coords))
    for b in basis:
        yield "basis", b
    if len(basis) > 1:
        for _ in range(10):
            w = [field.random(rng) for _ in basis]
            vec = [sum((w[k] * basis[k].coeffs[i] for k in range(len(basis))), field.zero) for i in range(10)]
            try:
                yield "combination", Cubic(field, vec)
            except CubicError:
                continue


def is_algebraic(net: Net, seed: int = 0) -> AlgebraicResult:
    """Do the dual points of a 3-net lie on a cubic, all at regular points?"""
    require_verified(net, k=3)
    field = net.field
    classes = [[dual(l) for l in cl] for cl in net.classes]
    pts = [p for cl in classes for p in cl]
    basis = fit_cubics(pts)
    if not basis:
        return AlgebraicResult(False, fit_dimension=0, diagnostic="no cubic passes through the dual points")
    rng = np.random.default_rng(seed)
    best_bad = None
    for kind, cand in _candidates(field, classes, basis, rng):
        if not all(cand.contains(p.coords) for p in pts):
            continue
        singular = [p for p in pts if not cand.is_regular_point(p.coords)]
        if singular:
            best_bad = best_bad or f"{kind} candidate is singular at {singular[0]!r}"
            continue
        res = max(cand.residual(p.coords) for p in pts)
        grad = min(cand.gradient_size(p.coords) for p in pts)
        return AlgebraicResult(True, cand, classify(cand, seed), len(basis), res, grad)
    return AlgebraicResult(
        False,
        fit_dimension=len(basis),
        diagnostic=best_bad or "no candidate cubic contains all dual points",
    )


# re-exported elliptic layer
from .weierstrass import EllipticData, pe_map, weierstrass  # noqa: E402

__all__ = [
    "TAGS", "Cubic", "CubicClass", "CubicGroup", "EllipticData", "AlgebraicResult", "SingularModel",
    "evaluate", "gradient", "fit_cubics", "fit_forms", "fit_dimension", "classify", "chord", "is_flex",
    "group_add", "group_neg", "flexes", "default_flex", "singular_model", "singular_param", "param_coords", "relation_determinant",
    "model_points", "pairing_check", "collinearity_residual", "complete_set_check", "split_cubic",
    "is_algebraic", "weierstrass", "pe_map",
]
