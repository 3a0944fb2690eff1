import inspect

import pytest

import planet.construct as construct
from planet.construct import braid_net, hessian_net, pencil_net, singular_cubic_net, torus_net
from planet.cubic import is_algebraic
from planet.errors import FieldError, NetError, RealizationError
from planet.field import ComplexField, CyclotomicField
from planet.geom import concurrent
from planet.net import class_profile, verify_net
from planet.quasigroup import group_identify, latin_from_net, normalize_to_loop


def invariants(net):
    return group_identify(normalize_to_loop(latin_from_net(net))).invariant_factors


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_pencil_net_exact(m):
    net = pencil_net(m, CyclotomicField(12))
    assert verify_net(net).ok and invariants(net) == (m,)


def test_pencil_needs_roots_of_unity():
    with pytest.raises(FieldError):
        pencil_net(5, CyclotomicField(12))
    with pytest.raises(ValueError):
        pencil_net(1)


def test_hessian_classes_in_general_position():
    net = hessian_net(CyclotomicField(3))
    assert all(class_profile(c).kind == "general-position" for c in net.classes)
    # every net point is on one line of each of the four classes
    for p in net.points:
        assert sum(1 for l in net.lines if l.field.is_zero(sum((a * b for a, b in zip(p.coords, l.coords)), l.field.zero))) == 4


def test_sum_zero_labelling_torus():
    net = torus_net(1, 7)
    m = 7
    for i in range(m):
        for j in range(m):
            k = (-i - j) % m
            assert concurrent(net.classes[0][i], net.classes[1][j], net.classes[2][k])


@pytest.mark.parametrize("case,m", [("1a", 5), ("2a", 4), ("3a", 6)])
def test_sum_zero_labelling_singular(case, m):
    net = singular_cubic_net(case, m)
    for i in range(m):
        for j in range(m):
            assert concurrent(net.classes[0][i], net.classes[1][j], net.classes[2][(-i - j) % m])
    assert invariants(net) == (m,)


def test_additive_cases_only_trivial():
    for case in ("1b", "2b", "3b"):
        with pytest.raises(RealizationError):
            singular_cubic_net(case, 3)
        net = singular_cubic_net(case, 1)
        assert verify_net(net, allow_trivial=True).ok


def test_singular_exact_backend():
    net = singular_cubic_net("2a", 4, field=CyclotomicField(4))
    assert verify_net(net).ok
    with pytest.raises(FieldError):
        singular_cubic_net("2a", 3, field=CyclotomicField(3))


def test_offset_collision_detected():
    with pytest.raises(NetError):
        singular_cubic_net("1a", 4, offsets=(2, 2))


@pytest.mark.parametrize("inv", [(1, 4), (2, 2), (3, 3)])
def test_torus_nets(inv):
    net = torus_net(*inv)
    assert verify_net(net).ok
    assert invariants(net) == tuple(x for x in inv if x > 1)
    r = is_algebraic(net)
    assert r.algebraic and r.cls.tag == "smooth"


def test_torus_rejects_bad_requests():
    with pytest.raises(RealizationError, match="at most two invariant factors"):
        torus_net(2, 2, 2)
    with pytest.raises(ValueError):
        torus_net(2, 3)
    with pytest.raises(FieldError):
        torus_net(1, 3, field=CyclotomicField(3))
    with pytest.raises(NetError):
        torus_net(1, 3, alpha=0.1, beta=0.1)


def test_no_constructor_for_elementary_abelian_rank_three():
    # the only public constructors; none of them accepts a rank-3 group
    public = {n for n, f in inspect.getmembers(construct, inspect.isfunction) if not n.startswith("_")
              and f.__module__ == construct.__name__}
    assert public == {"pencil_net", "braid_net", "hessian_net", "torus_net", "torus_subgroup", "singular_cubic_net"}
    with pytest.raises(RealizationError):
        torus_net(2, 2, 2)
