"""Homogeneous polynomials in x, y, z over a session field.

Monomials of a fixed degree are ordered lexicographically (descending) by
exponent triple, e.g. for cubics

    x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3

which is the order used for every coefficient vector on disk.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .field import Field

Exp = tuple[int, int, int]


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[Exp, ...]:
    return tuple((a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict[Exp, int]:
    return {m: i for i, m in enumerate(monomials(d))}


def n_monomials(d: int) -> int:
    return (d + 1) * (d + 2) // 2


def monomial_values(d: int, p: Sequence) -> list:
    """Evaluate all degree-``d`` monomials at the coordinate triple ``p``."""
    x, y, z = p
    return [x**a * y**b * z**c for a, b, c in monomials(d)]


def monomial_matrix(d: int, pts: np.ndarray) -> np.ndarray:
    """Vectorized :func:`monomial_values` for an (n, 3) complex array."""
    ex = np.array(monomials(d))
    return np.prod(pts[:, None, :] ** ex[None, :, :], axis=2)


class Form:
    """A homogeneous ternary form, stored sparsely as {exponent: coefficient}."""

    __slots__ = ("field", "terms", "degree")

    def __init__(self, field: Field, terms: Mapping[Exp, object], degree: int | None = None):
        self.field = field
        clean = {}
        for e, c in terms.items():
            c = field(c)
            if c != 0:
                clean[tuple(e)] = c
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise ValueError(f"form is not homogeneous: degrees {sorted(degs)}")
        if degree is None:
            degree = degs.pop() if degs else 0
        elif degs and degs.pop() != degree:
            raise ValueError("declared degree does not match terms")
        self.terms = clean
        self.degree = degree

    # -- constructors
    @classmethod
    def linear(cls, field: Field, coeffs: Sequence) -> "Form":
        a, b, c = coeffs
        return cls(field, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, 1)

    @classmethod
    def from_vector(cls, field: Field, d: int, vec: Sequence) -> "Form":
        mons = monomials(d)
        if len(vec) != len(mons):
            raise ValueError(f"degree {d} needs {len(mons)} coefficients, got {len(vec)}")
        return cls(field, dict(zip(mons, vec)), d)

    @classmethod
    def constant(cls, field: Field, c) -> "Form":
        return cls(field, {(0, 0, 0): c}, 0)

    def vector(self) -> list:
        zero = self.field.zero
        return [self.terms.get(m, zero) for m in monomials(self.degree)]

    # -- algebra
    def is_zero(self) -> bool:
        if self.field.exact:
            return not self.terms
        scale = max((abs(c) for c in self.terms.values()), default=0.0)
        return scale == 0.0

    def __add__(self, other: "Form") -> "Form":
        if other.degree != self.degree and self.terms and other.terms:
            raise ValueError("adding forms of different degree")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, self.field.zero) + c
        return Form(self.field, out, self.degree if self.terms else other.degree)

    def __neg__(self) -> "Form":
        return Form(self.field, {e: -c for e, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, s) -> "Form":
        s = self.field(s)
        return Form(self.field, {e: c * s for e, c in self.terms.items()}, self.degree)

    def __mul__(self, other):
        if not isinstance(other, Form):
            return self.scale(other)
        out: dict[Exp, object] = {}
        zero = self.field.zero
        for (a, b, c), u in self.terms.items():
            for (p, q, r), v in other.terms.items():
                key = (a + p, b + q, c + r)
                out[key] = out.get(key, zero) + u * v
        return Form(self.field, out, self.degree + other.degree)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Form":
        acc = Form.constant(self.field, self.field.one)
        for _ in range(n):
            acc = acc * self
        return acc

    def __call__(self, p: Sequence):
        x, y, z = p
        acc = self.field.zero
        for (a, b, c), u in self.terms.items():
            acc = acc + u * (x**a) * (y**b) * (z**c)
        return acc

    def diff(self, var: int) -> "Form":
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * k
        return Form(self.field, out, max(self.degree - 1, 0))

    def gradient(self) -> tuple["Form", "Form", "Form"]:
        return self.diff(0), self.diff(1), self.diff(2)

    def hessian(self) -> list[list["Form"]]:
        g = self.gradient()
        return [[g[i].diff(j) for j in range(3)] for i in range(3)]

    def substitute(self, mat: Sequence[Sequence]) -> "Form":
        """Return ``F(M v)``: each variable is replaced by a row of ``mat``."""
        lins = [Form.linear(self.field, row) for row in mat]
        cache: dict[tuple[int, int], Form] = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = lins[i] ** k
            return cache[(i, k)]

        acc = Form(self.field, {}, self.degree)
        for (a, b, c), u in self.terms.items():
            acc = acc + (power(0, a) * power(1, b) * power(2, c)).scale(u)
        return acc

    def coefficient_norm(self) -> float:
        return float(np.sqrt(sum(abs(self.field.to_complex(c)) ** 2 for c in self.terms.values())))

    def __repr__(self):
        parts = []
        for (a, b, c), u in sorted(self.terms.items(), reverse=True):
            mon = "".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip("xyz", (a, b, c)) if k
            )
            parts.append(f"({u})*{mon}" if mon else f"({u})")
        return " + ".join(parts) or "0"


def det3_forms(m: Sequence[Sequence[Form]]) -> Form:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def product_of_linear(field: Field, lines: Sequence[Sequence]) -> Form:
    """Expand the product of linear forms given by coefficient triples."""
    acc = Form.constant(field, field.one)
    for coeffs in lines:
        acc = acc * Form.linear(field, coeffs)
    return acc
