from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from planet.construct import braid_net, hessian_net, pencil_net
from planet.errors import NetError
from planet.field import ComplexField, CyclotomicField
from planet.geom import Line, Point, incident, meet
from planet.net import (
    Net,
    class_profile,
    compute_points,
    euler_feasible,
    require_verified,
    verify_net,
    verify_split_pencil,
)

# the feasibility table, one set of (k, m_min) per r
TABLE = {0: {3: 2, 4: 3, 5: 6}, 1: {3: 2, 4: 4}, 2: {3: 2}}


@pytest.mark.parametrize("r", [0, 1, 2])
def test_feasibility_table_exhaustive(r):
    for m in range(2, 51):
        for k in range(max(3, r), 11):
            expected = k in TABLE[r] and m >= TABLE[r][k]
            assert euler_feasible(k, m, r).feasible == expected, (k, m, r)


def test_feasibility_boundary_values():
    f = euler_feasible(5, 5)
    assert not f.feasible and f.to_json()["rhs"] == "24/5"
    assert euler_feasible(5, 6).feasible
    with pytest.raises(ValueError):
        euler_feasible(2, 4)


def _brute_points(net):
    """Every cross-class intersection, deduplicated pairwise."""
    pts = []
    for (i, a), (j, b) in combinations(list(enumerate(net.classes)), 2):
        for l in a:
            for m in b:
                p = meet(l, m)
                if not any(p == q for q in pts):
                    pts.append(p)
    return pts


@pytest.mark.parametrize("m", [2, 3, 5])
def test_pencil_net_point_count_and_axioms(m):
    net = pencil_net(m, CyclotomicField(m if m > 2 else 2))
    rep = verify_net(net)
    assert rep.ok and (rep.k, rep.m, rep.n_points) == (3, m, m * m)
    pts = _brute_points(net)
    assert len(pts) == m * m
    for line in net.lines:
        assert sum(incident(p, line) for p in pts) == m
    for p in pts:
        for cls in net.classes:
            assert sum(incident(p, l) for l in cls) == 1


def test_braid_and_hesse():
    rep = verify_net(braid_net())
    assert (rep.ok, rep.k, rep.m, rep.n_points) == (True, 3, 2, 4)
    rep = verify_net(hessian_net(CyclotomicField(3)))
    assert (rep.ok, rep.k, rep.m, rep.n_points) == (True, 4, 3, 9)


def test_random_lines_fail_axioms(cf, rng):
    classes = [[Line(cf, rng.normal(size=3)) for _ in range(2)] for _ in range(3)]
    rep = verify_net(Net(cf, classes))
    assert not rep.ok and rep.violations
    with pytest.raises(NetError):
        require_verified(Net(cf, classes))


def test_trivial_net_needs_flag(cf):
    net = Net(cf, [[Line(cf, (1, -t, 0))] for t in (0, 1, 2)])
    assert not verify_net(net).ok
    rep = verify_net(net, allow_trivial=True)
    assert rep.ok and rep.m == 1 and rep.n_points == 1


def test_declared_points_are_cross_checked():
    net = braid_net(CyclotomicField(1))
    good = net.with_points(compute_points(net))
    assert verify_net(good).ok
    bad = net.with_points(list(good.points[:-1]) + [Point(net.field, (5, 7, 11))])
    rep = verify_net(bad)
    assert not rep.ok
    assert any("declared point" in v for v in rep.violations)


def test_duplicate_lines_reported(cf):
    l = Line(cf, (1, 2, 3))
    net = Net(cf, [[l, Line(cf, (2, 4, 6))], [Line(cf, (0, 1, 0)), Line(cf, (1, 0, 1))],
                   [Line(cf, (0, 0, 1)), Line(cf, (1, 1, 0))]])
    rep = verify_net(net)
    assert not rep.ok and "coincide" in rep.violations[0]


def test_class_profiles():
    K = CyclotomicField(3)
    pen = pencil_net(3, K)
    prof = class_profile(pen.classes[0])
    assert prof.kind == "pencil" and prof.base == Point(K, (0, 0, 1))
    hes = hessian_net(K)
    assert all(class_profile(c).kind == "general-position" for c in hes.classes)


def test_split_pencil_examples(cf, rng):
    assert verify_split_pencil(pencil_net(2, cf))
    assert verify_split_pencil(braid_net(cf))
    assert verify_split_pencil(hessian_net(cf))
    net = braid_net(cf)
    classes = [list(c) for c in net.classes]
    classes[0][1] = Line(cf, np.array(classes[0][1].to_complex()) + 0.01 * rng.normal(size=3))
    assert not verify_split_pencil(Net(cf, classes))
    with pytest.raises(NetError):
        verify_split_pencil(Net(cf, classes), strict=True)


@given(st.lists(st.integers(1, 9), min_size=6, max_size=6))
def test_split_pencil_invariant_under_rescaling(scales):
    K = CyclotomicField(1)
    net = braid_net(K)
    lines = [Line(K, [s * c for c in l.coords]) for s, l in zip(scales, net.lines)]
    classes = [lines[0:2], lines[2:4], lines[4:6]]
    assert verify_split_pencil(Net(K, classes))


@pytest.mark.parametrize("m", range(2, 7))
def test_every_line_meets_m_points_approx(m):
    net = pencil_net(m)
    rep = verify_net(net)
    assert rep.ok and rep.n_points == m * m
