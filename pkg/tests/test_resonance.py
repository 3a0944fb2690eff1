from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from planet.construct import braid_net, hessian_net, pencil_net, torus_net
from planet.errors import NetError
from planet.field import ComplexField, CyclotomicField
from planet.geom import Line, Point, incident
from planet.net import Net
from planet.resonance import (
    Arrangement,
    essential_component,
    incidence_matrix,
    net_resonance,
    os_h1_dim,
    psd_exact,
    psd_numeric,
    q_blocks,
)


def q_oracle(points, lines):
    n = len(lines)
    Q = np.zeros((n, n), dtype=int)
    for a in range(n):
        for b in range(n):
            Q[a, b] = sum(1 for p in points if incident(p, lines[a]) and incident(p, lines[b])) - 1
    return Q


NETS = {
    "braid": lambda: braid_net(),
    "pencil3": lambda: pencil_net(3),
    "pencil4": lambda: pencil_net(4, CyclotomicField(4)),
    "hessian": lambda: hessian_net(),
    "torus22": lambda: torus_net(2, 2),
}


@pytest.mark.parametrize("name", list(NETS))
def test_q_matches_double_loop_oracle(name):
    net = NETS[name]()
    data = net_resonance(net)
    assert np.array_equal(data.Q, q_oracle(net.points, net.lines))
    assert sorted(i for b in data.blocks for i in b.lines) == list(range(len(net.lines)))


def test_braid_blocks():
    data = net_resonance(braid_net())
    assert data.J.shape == (4, 6) and all(row.sum() == 3 for row in data.J)
    assert data.n_affine == 3 and data.covers() and data.supports(1)
    assert [b.lines for b in data.blocks] == [(0, 1), (2, 3), (4, 5)]


def test_pencil_incidence_rows():
    data = net_resonance(pencil_net(2))
    assert (data.J.sum(axis=1) == 3).all()


def test_point_on_no_line(cf):
    J = incidence_matrix([Point(cf, (1, 1, 1))], [Line(cf, (1, 0, 0)), Line(cf, (0, 1, 0))])
    assert J.tolist() == [[0, 0]]


def test_local_pencil_q_is_zero():
    data = q_blocks(np.ones((1, 3), dtype=int))
    assert not data.Q.any()
    assert data.n_affine == 3 and all(b.nullity == 1 for b in data.blocks)


def test_generic_triangle_has_no_affine_blocks():
    J = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    data = q_blocks(J)
    assert np.array_equal(data.Q, np.eye(3, dtype=int))
    assert data.n_affine == 0 and not data.covers()


def test_q_blocks_rejects_non_binary():
    with pytest.raises(ValueError):
        q_blocks(np.array([[2, 0]]))


@given(st.integers(0, 10**6))
def test_affine_verdict_invariant_under_permutation(seed):
    rng = np.random.default_rng(seed)
    J = (rng.random((5, 6)) < 0.4).astype(int)
    base = q_blocks(J)
    perm = rng.permutation(6)
    moved = q_blocks(J[:, perm])
    verdict = {tuple(sorted(int(perm[i]) for i in b.lines)): b.affine for b in moved.blocks}
    assert verdict == {tuple(b.lines): b.affine for b in base.blocks}


@given(st.integers(0, 10**6))
def test_exact_and_numeric_psd_agree(seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-2, 3, size=(4, 3))
    Q = A @ A.T  # PSD with nullity >= 1
    if rng.random() < 0.5:
        Q = Q - np.eye(4, dtype=int) * int(rng.integers(0, 2))
    assert psd_exact(Q) == psd_numeric(Q)


def test_essential_component():
    V = essential_component(braid_net())
    assert V.dim == 2
    assert V.basis == [[1, 1, -1, -1, 0, 0], [1, 1, 0, 0, -1, -1]]
    assert all(sum(v) == 0 for v in V.basis)
    assert essential_component(pencil_net(4)).dim == 2
    assert essential_component(hessian_net()).dim == 3


def test_essential_component_needs_a_net(cf, rng):
    with pytest.raises(NetError):
        essential_component(Net(cf, [[Line(cf, rng.normal(size=3)) for _ in range(2)] for _ in range(3)]))


def test_arrangement_lattice():
    arr = Arrangement.from_net(braid_net())
    assert arr.check_lattice()
    mults = sorted(f.multiplicity for f in arr.flats)
    assert mults == [2, 2, 2, 3, 3, 3, 3]
    assert arr.a2_dimension() == 11


def _braid_h1(a):
    return os_h1_dim(Arrangement.from_net(braid_net(CyclotomicField(1))), a)


def test_braid_resonance(rng):
    net = braid_net(CyclotomicField(1))
    arr = Arrangement.from_net(net)
    V = essential_component(net)
    for _ in range(10):
        s, t = (int(x) for x in rng.integers(1, 20, 2))
        a = V.vector([s, t, -s - t])
        assert os_h1_dim(arr, a) == 1
    for _ in range(10):
        a = [int(x) for x in rng.integers(-50, 50, 6)]
        assert os_h1_dim(arr, a) == 0


def test_numeric_and_exact_h1_agree(rng):
    arr_c = Arrangement.from_net(braid_net())
    for _ in range(5):
        w = rng.integers(-9, 10, 2)
        a = essential_component(braid_net()).vector([int(w[0]), int(w[1]), int(-w[0] - w[1])])
        if len(set(a)) < 3:
            continue
        assert os_h1_dim(arr_c, [complex(x) * (0.3 + 1.1j) for x in a]) == _braid_h1(a)


def test_local_pencil_component():
    K = CyclotomicField(1)
    arr = Arrangement([Line(K, (1, -t, 0)) for t in range(4)])
    assert os_h1_dim(arr, [3, -1, 5, -7]) == 2


def test_scaling_invariance():
    a = [1, 1, -1, -1, 0, 0]
    assert _braid_h1(a) == _braid_h1([7 * x for x in a]) == 1


def test_sum_is_projected_out_and_zero_rejected():
    # adding a multiple of the all-ones vector does not change the class
    assert _braid_h1([x + 3 for x in [1, 1, -1, -1, 0, 0]]) == 1
    with pytest.raises(ValueError):
        _braid_h1([2] * 6)


@pytest.mark.parametrize("m", range(2, 7))
def test_pencil_nets_lie_in_first_resonance(m, rng):
    net = pencil_net(m)
    arr = Arrangement.from_net(net)
    V = essential_component(net)
    s, t = (int(x) for x in rng.integers(1, 9, 2))
    assert os_h1_dim(arr, V.vector([s, t, -s - t])) >= 1


def test_hessian_in_second_resonance(rng):
    net = hessian_net()
    arr = Arrangement.from_net(net)
    V = essential_component(net)
    w = [int(x) for x in rng.integers(1, 9, 3)]
    assert os_h1_dim(arr, V.vector(w + [-sum(w)])) >= 2
