"""Canonical nets: triple pencils, the braid and Hesse nets, torus and singular-cubic nets.

Torus and singular-cubic nets use a sum-zero labelling: line i of class 1,
line j of class 2 and line k of class 3 pass through a common net point
exactly when i + j + k = 0 in the realized group.
"""

from __future__ import annotations

from typing import Sequence

from .cubic import singular_model, singular_param
from .errors import FieldError, NetError, RealizationError
from .field import ComplexField, Field
from .geom import Line, dual
from .net import Net, PointIndex, compute_points, require_verified
from .weierstrass import DEFAULT_TAU, EllipticData, pe_map, weierstrass


def _finish(net: Net, allow_trivial: bool = False) -> Net:
    require_verified(net, allow_trivial=allow_trivial)
    return net.with_points(compute_points(net))


def _default_field(field: Field | None) -> Field:
    return field if field is not None else ComplexField()


def _check_root(field: Field, m: int):
    if field.exact and field.N % m:
        raise FieldError(f"the {m}-th roots of unity need {m} | N, but N = {field.N}")


def pencil_net(m: int, field: Field | None = None) -> Net:
    """Classes x - z^i y, x - z^i z, y - z^i z for the m-th roots of unity z^i."""
    if m < 2:
        raise ValueError(f"pencil nets need m >= 2, got {m}")
    field = _default_field(field)
    _check_root(field, m)
    zeta = [field.zeta(m, i) for i in range(m)]
    one, zero = field.one, field.zero
    classes = (
        [Line(field, (one, -z, zero)) for z in zeta],
        [Line(field, (one, zero, -z)) for z in zeta],
        [Line(field, (zero, one, -z)) for z in zeta],
    )
    return _finish(Net(field, classes))


def braid_net(field: Field | None = None) -> Net:
    """The six lines x, y, z, x-y, x-z, y-z in classes {x, y-z}, {y, x-z}, {z, x-y}."""
    field = _default_field(field)
    classes = (
        [Line(field, (1, 0, 0)), Line(field, (0, 1, -1))],
        [Line(field, (0, 1, 0)), Line(field, (1, 0, -1))],
        [Line(field, (0, 0, 1)), Line(field, (1, -1, 0))],
    )
    return _finish(Net(field, classes))


def hessian_net(field: Field | None = None) -> Net:
    """The 12 lines through triples of flexes of x^3 + y^3 + z^3, by Hesse triangle."""
    field = _default_field(field)
    _check_root(field, 3)
    w = [field.zeta(3, i) for i in range(3)]
    one, zero = field.one, field.zero
    classes = [[Line(field, (one, zero, zero)), Line(field, (zero, one, zero)), Line(field, (zero, zero, one))]]
    for s in range(3):
        classes.append([Line(field, (one, w[a], w[(s - a) % 3])) for a in range(3)])
    return _finish(Net(field, classes))


# ---------------------------------------------------------------------------
# torus nets


def _in_subgroup(e: EllipticData, x: complex, m1: int, m2: int, tol: float = 1e-9) -> bool:
    """Is x in (1/m2) Z + (tau/m1) Z (which contains the lattice)?"""
    a, b = e.lattice_coords(x)
    return abs(a * m2 - round(a * m2)) <= tol and abs(b * m1 - round(b * m1)) <= tol


def torus_subgroup(e: EllipticData, m1: int, m2: int) -> list[complex]:
    """Elements i/m2 + j tau/m1 of the torsion subgroup, index j*m2 + i."""
    return [i / m2 + j * e.tau / m1 for j in range(m1) for i in range(m2)]


def _invariants(invariants: Sequence[int]) -> tuple[int, int]:
    inv = [int(x) for x in invariants]
    if len(inv) > 2:
        raise RealizationError(
            f"requested {len(inv)} invariant factors {inv}: a 3-net realizes a group with "
            "at most two invariant factors (finite subgroups of a torus or of C* are of that form)"
        )
    if not inv:
        raise ValueError("give one or two invariant factors")
    if len(inv) == 1:
        inv = [1] + inv
    m1, m2 = inv
    if m1 < 1 or m2 < 1 or m2 % m1:
        raise ValueError(f"invariant factors must satisfy m1 | m2, got {m1}, {m2}")
    if m1 * m2 < 2:
        raise ValueError("the realized group must be nontrivial")
    return m1, m2


def torus_net(
    *invariants: int,
    tau: complex = DEFAULT_TAU,
    alpha: complex | None = None,
    beta: complex | None = None,
    field: ComplexField | None = None,
    eps_series: float = 1e-14,
) -> Net:
    """3-net realizing Z_m1 + Z_m2 from three cosets of torsion points on an elliptic curve.

    Cosets alpha + H, beta + H and gamma + H (gamma = -alpha - beta) are
    mapped to the Weierstrass cubic and dualized; class 1 line a, class 2
    line b and class 3 line c are concurrent iff h_a + h_b + h_c = 0.
    """
    m1, m2 = _invariants(invariants)
    field = field or ComplexField()
    if field.exact:
        raise FieldError("torus nets need the approximate backend (torsion points are transcendental)")
    e = weierstrass(tau, eps_series)
    # offsets inside a fundamental cell of H keep every coset away from the
    # lattice, so no dual point crowds the flex (0:1:0)
    if alpha is None:
        alpha = 0.41 / m2 + 0.27 * e.tau / m1
    if beta is None:
        beta = 0.19 / m2 + 0.58 * e.tau / m1
    alpha, beta = complex(alpha), complex(beta)
    gamma = -alpha - beta
    offsets = (alpha, beta, gamma)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if _in_subgroup(e, offsets[i] - offsets[j], m1, m2):
            raise NetError(f"coset collision: offsets {i} and {j} differ by an element of the subgroup")
    H = torus_subgroup(e, m1, m2)
    classes = []
    index = PointIndex(field)
    for off in offsets:
        cls = []
        for h in H:
            p = pe_map(e, off + h, field)
            if index.find(p) >= 0:
                raise NetError("torsion points collide numerically; choose other offsets")
            index.add(p)
            cls.append(dual(p))
        classes.append(cls)
    return _finish(Net(field, classes))


# ---------------------------------------------------------------------------
# nets on singular cubics


def singular_cubic_net(
    case: str,
    m: int,
    offsets: Sequence | None = None,
    field: Field | None = None,
) -> Net:
    """3-net from cosets of mu_m on the smooth locus of a singular model cubic.

    Only the multiplicative cases (1a, 2a, 3a) have nontrivial finite
    subgroups; the additive cases admit m = 1 only.
    """
    model = singular_model(case)
    if m < 1:
        raise ValueError("m must be positive")
    if not model.multiplicative and m > 1:
        raise RealizationError(
            f"case {case} has group (C, +), whose only finite subgroup is trivial; m = {m} is impossible"
        )
    field = _default_field(field)
    if m > 1:
        _check_root(field, m)
    if case == "2a" and field.exact and field.N % 4:
        raise FieldError("case 2a needs i, i.e. 4 | N")
    u, v = (2, 3) if offsets is None else offsets
    u, v = field(u), field(v)
    roots = [field.zeta(m, i) for i in range(m)] if m > 1 else [field.one]
    inv = [r.inverse() if field.exact else 1 / r for r in roots]
    if model.multiplicative:
        if field.is_zero(u) or field.is_zero(v):
            raise ValueError("offsets must be nonzero")
        # class-3 entry k completes (u, v * zeta^-k), so labels sum to zero
        params = ([u * r for r in roots], [v * r for r in roots], [model.relation(u, v * r) for r in inv])
    else:
        params = ([u], [v], [model.relation(u, v)])
    _check_cosets(field, model, params, m)
    classes = [[dual(singular_param(case, s, slot, field)) for s in ps] for slot, ps in enumerate(params)]
    return _finish(Net(field, classes), allow_trivial=m == 1)


def _check_cosets(field: Field, model, params, m: int):
    # cosets on one component must be disjoint
    for a in range(3):
        for b in range(a + 1, 3):
            if model.slots[a] != model.slots[b]:
                continue
            ratio = params[a][0] / params[b][0]
            if field.eq(ratio**m, field.one) if model.multiplicative else field.eq(ratio, field.one):
                raise NetError(f"offset collision between classes {a} and {b}")


__all__ = [
    "pencil_net",
    "braid_net",
    "hessian_net",
    "torus_net",
    "torus_subgroup",
    "singular_cubic_net",
    "DEFAULT_TAU",
]
