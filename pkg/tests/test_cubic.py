import numpy as np
import pytest
import sympy as sp

from planet.construct import braid_net, pencil_net, singular_cubic_net, torus_net
from planet.cubic import (
    SINGULAR_MODELS,
    Cubic,
    CubicGroup,
    chord,
    classify,
    complete_set_check,
    evaluate,
    fit_cubics,
    fit_dimension,
    flexes,
    gradient,
    group_add,
    group_neg,
    is_algebraic,
    is_flex,
    param_coords,
    relation_determinant,
    singular_model,
    singular_param,
)
from planet.errors import CubicError, Inconclusive, NetError
from planet.field import ComplexField, CyclotomicField
from planet.geom import Line, Point, random_point
from planet.net import Net
from planet.properties import random_complete_set, random_nine
from planet.weierstrass import pe_map, weierstrass

FERMAT = [1, 0, 0, 0, 0, 0, 1, 0, 0, 1]
# canonical models (lex coefficients) with their expected tags
MODELS = {
    "smooth": FERMAT,
    "nodal": [1, 0, 1, 0, 0, 0, 0, -1, 0, 0],
    "cuspidal": [1, 0, 0, 0, 0, 0, 0, -1, 0, 0],
    "conic+line transverse": [0, 0, 1, 0, 0, 0, 0, 1, 0, -1],
    "conic+line tangent": [0, 0, 1, 0, 0, 0, 0, 0, -1, 0],
    "triangle": [0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    "concurrent-lines": [0, 1, 0, -1, 0, 0, 0, 0, 0, 0],
    "non-reduced/other": [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
}


def test_evaluate_and_gradient_examples(anyfield):
    F = anyfield
    c = Cubic(F, FERMAT)
    p = Point(F, (1, -1, 0))
    assert F.is_zero(evaluate(c, p))
    g = gradient(c, p)
    assert F.eq(g[0], 3) and F.eq(g[1], 3) and F.is_zero(g[2])
    assert c.is_regular_point(p)
    nodal = Cubic(F, MODELS["nodal"])
    assert not nodal.is_regular_point(Point(F, (0, 0, 1)))
    assert not Cubic(F, MODELS["cuspidal"]).is_regular_point(Point(F, (0, 0, 1)))


def test_zero_cubic_rejected(cf):
    with pytest.raises(CubicError):
        Cubic(cf, [0] * 10)


@pytest.mark.parametrize("tag", list(MODELS))
def test_classify_models_both_backends(tag):
    for F in (ComplexField(), CyclotomicField(4)):
        assert classify(Cubic(F, MODELS[tag])).tag == tag


@pytest.mark.parametrize("tag", [t for t in MODELS if t != "non-reduced/other"])
def test_classify_is_projectively_invariant(tag, rng):
    F = ComplexField()
    c = Cubic(F, MODELS[tag])
    for _ in range(6):
        M = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert classify(c.transform(M.tolist())).tag == tag


def test_classify_singular_points_and_components():
    K = CyclotomicField(1)
    cls = classify(Cubic(K, MODELS["nodal"]))
    assert cls.singular_points == [Point(K, (0, 0, 1))]
    cls = classify(Cubic(K, MODELS["triangle"]))
    assert len(cls.singular_points) == 3 and len(cls.components) == 3
    cls = classify(Cubic(K, MODELS["conic+line tangent"]))
    degrees = sorted(f.degree for f in cls.components)
    assert degrees == [1, 2]


def test_fermat_chord_example(anyfield):
    F = anyfield
    c = Cubic(F, FERMAT)
    r = chord(c, Point(F, (1, -1, 0)), Point(F, (1, 0, -1)))
    assert r == Point(F, (0, 1, -1))


def test_fermat_flexes_exact():
    K = CyclotomicField(3)
    fl = flexes(Cubic(K, FERMAT))
    w = [K.zeta(3, k) for k in range(3)]
    expected = [Point(K, t) for k in range(3) for t in ((0, 1, -w[k]), (1, 0, -w[k]), (1, -w[k], 0))]
    assert len(fl) == 9 and all(any(p == q for q in fl) for p in expected)
    for p in fl:
        assert is_flex(Cubic(K, FERMAT), p)
        # tangent at a flex meets the curve only there
        assert chord(Cubic(K, FERMAT), p, p) == p


def test_fermat_flexes_approx_match_exact():
    F = ComplexField()
    fl = flexes(Cubic(F, FERMAT))
    assert len(fl) == 9
    exact = flexes(Cubic(CyclotomicField(3), FERMAT))
    for p in exact:
        assert any(Point(F, p.to_complex()) == q for q in fl)


def test_weierstrass_zero_is_flex():
    e = weierstrass()
    assert is_flex(e.curve, e.zero)
    with pytest.raises(CubicError):
        CubicGroup(e.curve, pe_map(e, 0.3 + 0.2j))


def test_group_law_matches_uniformization(rng):
    e = weierstrass()
    for _ in range(20):
        z1, z2 = complex(*rng.uniform(0.05, 0.9, 2)), complex(*rng.uniform(0.05, 0.9, 2))
        p, q = pe_map(e, z1), pe_map(e, z2)
        assert group_add(e, p, q) == pe_map(e, z1 + z2)
        assert group_neg(e, p) == pe_map(e, -z1)


def test_group_axioms_fermat(rng):
    F = ComplexField()
    c = Cubic(F, FERMAT)
    G = CubicGroup(c, Point(F, (1, -1, 0)))
    pts = [G.add(Point(F, (0, 1, -F.zeta(3, k))), Point(F, (1, 0, -1))) for k in range(3)]
    p, q, r = pts
    assert G.add(p, G.zero) == p
    assert G.add(p, G.neg(p)) == G.zero
    assert G.add(p, q) == G.add(q, p)
    assert G.add(G.add(p, q), r) == G.add(p, G.add(q, r))


def test_collinear_triple_sums_to_zero_fermat():
    F = ComplexField()
    c = Cubic(F, FERMAT)
    G = CubicGroup(c, Point(F, (1, -1, 0)))
    a, b = Point(F, (1, 0, -1)), Point(F, (0, 1, -1))
    third = chord(c, a, b)
    assert G.sum([a, b, third]) == G.zero


def test_chord_symmetry_and_involution(rng):
    e = weierstrass()
    c = e.curve
    for _ in range(30):
        p = pe_map(e, complex(*rng.uniform(0.05, 0.95, 2)))
        q = pe_map(e, complex(*rng.uniform(0.05, 0.95, 2)))
        r = chord(c, p, q)
        assert r == chord(c, q, p)
        assert chord(c, p, r) == q


def test_chord_along_a_component_is_an_error():
    K = CyclotomicField(1)
    c = Cubic(K, MODELS["triangle"])
    with pytest.raises(CubicError):
        chord(c, Point(K, (0, 1, 1)), Point(K, (0, 1, 2)))


@pytest.mark.parametrize("case", sorted(SINGULAR_MODELS))
def test_singular_parametrizations_lie_on_the_curve(case):
    s = sp.symbols("s")
    model = singular_model(case)
    coeffs = model.coeffs
    x, y, z = sp.symbols("x y z")
    monos = [x**3, x**2 * y, x**2 * z, x * y**2, x * y * z, x * z**2, y**3, y**2 * z, y * z**2, z**3]
    F = sum(sp.sympify(c) * mono for c, mono in zip(coeffs, monos))
    for slot in range(3):
        coords = [sp.sympify(v) for v in _symbolic_param(case, s, model.slots[slot])]
        assert sp.expand(F.subs(dict(zip((x, y, z), coords)))) == 0


def _symbolic_param(case, s, comp):
    I = sp.I
    return {
        "1a": (4 * s * (1 - s), 4 * s * (1 + s), (1 - s) ** 3),
        "1b": (s, 1, s**3),
        "2a": (1 + s**2, I * (1 - s**2), 2 * s) if comp == "Q" else (1 - s, I * (1 + s), 0),
        "2b": (s, s**2, 1) if comp == "Q" else (1, s, 0),
        "3a": {"L1": (0, s, 1), "L2": (1, 0, s), "L3": (1, -s, 0)}.get(comp),
        "3b": {"L1": (0, 1, s), "L2": (1, 0, s), "L3": (1, 1, s)}.get(comp),
    }[case]


@pytest.mark.parametrize("case", sorted(SINGULAR_MODELS))
def test_relation_determinant_factorization(case):
    a, b, c = sp.symbols("a b c")
    model = singular_model(case)
    M = sp.Matrix([_symbolic_param(case, v, model.slots[k]) for k, v in enumerate((a, b, c))])
    det = sp.factor(M.det())
    rel = sp.sympify(model.relation(a, b))
    assert sp.simplify(det.subs(c, rel)) == 0
    # numeric implementation agrees with the symbolic determinant
    vals = {a: 0.7 + 0.2j, b: -1.3 + 0.5j, c: 0.4 - 0.9j}
    num = complex(M.det().subs(vals).evalf())
    assert abs(relation_determinant(case, vals[a], vals[b], vals[c]) - num) < 1e-9 * max(1, abs(num))


def test_singular_examples():
    K = CyclotomicField(4)
    # 1b: s = 1, 2, -3
    assert relation_determinant("1b", 1, 2, -3, K) == 0
    # 2a: s1 = 2, s2 = 3, t = 6
    assert relation_determinant("2a", 2, 3, 6, K) == 0
    assert relation_determinant("2a", 2, 3, 7, K) != 0
    # 3b: (0:1:a), (1:0:b), (1:1:a+b)
    assert relation_determinant("3b", 5, 7, 12, K) == 0
    # 1a neutral element
    assert singular_param("1a", 1, 0, K) == Point(K, (0, 1, 0))
    with pytest.raises(Exception):
        singular_param("3a", 0, 0, K)


def test_fit_dimension_generic(rng):
    F = ComplexField()
    for k in range(1, 12):
        pts = [random_point(F, rng) for _ in range(k)]
        assert fit_dimension(pts) == max(0, 10 - k)


def test_chasles_octets(rng):
    F = ComplexField()
    nine = random_complete_set(F, rng)
    assert fit_dimension(nine) == 2
    basis = fit_cubics(nine[:8])
    assert len(basis) == 2
    for c in basis:
        assert c.contains(nine[8])
    assert complete_set_check(nine)
    assert not complete_set_check(random_nine(F, rng))


def test_complete_set_exact(rng):
    K = CyclotomicField(3)
    assert complete_set_check(random_complete_set(K, rng))
    assert not complete_set_check(random_nine(K, rng))


def test_complete_set_inconclusive():
    K = CyclotomicField(1)
    nine = [Point(K, (1, t, 0)) for t in range(9)]
    with pytest.raises(Inconclusive):
        complete_set_check(nine)


def test_is_algebraic_examples():
    r = is_algebraic(pencil_net(5))
    assert r.algebraic and r.cls.tag == "triangle"
    r = is_algebraic(braid_net())
    assert r.algebraic
    r = is_algebraic(torus_net(1, 5))
    assert r.algebraic and r.cls.tag == "smooth" and r.max_residual < 1e-7
    r = is_algebraic(singular_cubic_net("1a", 4))
    assert r.algebraic and r.cls.tag == "nodal"


def test_is_algebraic_requires_a_net(cf, rng):
    classes = [[Line(cf, rng.normal(size=3)) for _ in range(3)] for _ in range(3)]
    with pytest.raises(NetError):
        is_algebraic(Net(cf, classes))


def test_algebraic_result_json():
    out = is_algebraic(pencil_net(3, CyclotomicField(3))).to_json()
    assert out["verdict"] == "yes" and out["regular"] is True
    assert out["class"]["tag"] == "triangle" and len(out["cubic"]["coeffs"]) == 10
