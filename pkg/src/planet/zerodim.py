"""Zero-dimensional systems of ternary forms via Macaulay matrices.

The dual space of R_d / I_d (functionals on degree-d forms that vanish on
the ideal) carries the multiplication operators of the quotient algebra.
Their traces and joint eigenvectors give the points of V(I).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import FieldError, NumericError
from .field import CyclotomicField, Cyclo, Field
from .forms import Form, monomial_index, monomials, n_monomials


def macaulay_rows(field: Field, forms: Sequence[Form], d: int) -> list[list]:
    """Coefficient vectors of every monomial multiple x^a * f of degree ``d``."""
    index = monomial_index(d)
    zero = field.zero
    rows = []
    for f in forms:
        if f.is_zero() or f.degree > d:
            continue
        for shift in monomials(d - f.degree):
            row = [zero] * len(index)
            for e, c in f.terms.items():
                row[index[(e[0] + shift[0], e[1] + shift[1], e[2] + shift[2])]] = c
            rows.append(row)
    return rows


def _normalized(rows: list[list]) -> np.ndarray:
    mat = np.asarray(rows, dtype=complex)
    norms = np.linalg.norm(mat, axis=1)
    norms[norms == 0] = 1.0
    return mat / norms[:, None]


def hilbert_value(field: Field, forms: Sequence[Form], d: int) -> int:
    """dim (R / I)_d for the ideal generated by ``forms``."""
    rows = macaulay_rows(field, forms, d)
    if not rows:
        return n_monomials(d)
    if field.exact:
        return n_monomials(d) - field.rank(rows)
    return n_monomials(d) - field.rank(_normalized(rows))


class DualQuotient:
    """Multiplication operators of R/I read off the degree-d and d+1 dual spaces.

    ``h`` is a linear form assumed nonzero at every point of V(I); the
    operator for a linear form f is C_h^{-1} C_f, whose eigenvalues are the
    values f(p)/h(p).
    """

    def __init__(self, field: Field, forms: Sequence[Form], d: int, h: Sequence):
        self.field = field
        self.d = d
        self.h = list(h)
        self._basis = {}
        self._coords = {}
        for deg in (d, d + 1):
            rows = macaulay_rows(field, forms, deg)
            if field.exact:
                basis, free = _exact_annihilator(field, rows, n_monomials(deg))
                self._coords[deg] = free
            else:
                basis = _approx_annihilator(field, rows, n_monomials(deg))
            self._basis[deg] = basis
        if len(self._basis[d]) != len(self._basis[d + 1]):
            raise NumericError(
                f"Hilbert function not yet constant at degree {d} "
                f"({len(self._basis[d])} vs {len(self._basis[d + 1])})"
            )
        self.length = len(self._basis[d])
        self._Ch_inv = None

    # functional on R_{d+1} pulled back along multiplication by a linear form
    def _pullback(self, lam: Sequence, f: Sequence) -> list:
        up = monomial_index(self.d + 1)
        out = []
        for a, b, c in monomials(self.d):
            acc = self.field.zero
            for i, shift in enumerate(((1, 0, 0), (0, 1, 0), (0, 0, 1))):
                if f[i] != 0:
                    acc = acc + f[i] * lam[up[(a + shift[0], b + shift[1], c + shift[2])]]
            out.append(acc)
        return out

    def _coordinates(self, vec: Sequence) -> list:
        if self.field.exact:
            return [vec[i] for i in self._coords[self.d]]
        B = np.asarray(self._basis[self.d]).T
        return list(B.conj().T @ np.asarray(vec, dtype=complex))

    def operator_raw(self, f: Sequence) -> list[list]:
        """C_f: columns are the pulled-back degree-(d+1) basis functionals."""
        f = [self.field(c) for c in f]
        cols = [self._coordinates(self._pullback(lam, f)) for lam in self._basis[self.d + 1]]
        n = self.length
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def operator(self, f: Sequence):
        """Matrix of multiplication by f/h (acting on dual coordinates)."""
        Cf = self.operator_raw(f)
        if self._Ch_inv is None:
            self._Ch_inv = _inverse(self.field, self.operator_raw(self.h))
        return _matmul(self.field, self._Ch_inv, Cf)

    def functional(self, coords: Sequence) -> list:
        """Degree-(d+1) functional with the given dual coordinates."""
        basis = self._basis[self.d + 1]
        n = n_monomials(self.d + 1)
        out = [self.field.zero] * n
        for c, lam in zip(coords, basis):
            if c != 0:
                for i in range(n):
                    out[i] = out[i] + c * lam[i]
        return out

    def trace_point(self) -> list:
        """Coordinates of the single support point (valid when V(I) is one point)."""
        out = []
        for i in range(3):
            e = [self.field.zero] * 3
            e[i] = self.field.one
            A = self.operator(e)
            out.append(sum((A[k][k] for k in range(self.length)), self.field.zero))
        return out


def _exact_annihilator(field: CyclotomicField, rows, ncols):
    if not rows:
        basis = [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
        return basis, list(range(ncols))
    _, pivots = field.rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    return field.nullspace(rows, ncols), free


def _approx_annihilator(field, rows, ncols):
    if not rows:
        return [np.eye(ncols, dtype=complex)[j] for j in range(ncols)]
    return field.nullspace(_normalized(rows), ncols)


def _matmul(field: Field, A, B):
    if not field.exact:
        return np.asarray(A) @ np.asarray(B)
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum((A[i][t] * B[t][j] for t in range(k)), field.zero) for j in range(m)] for i in range(n)]


def _inverse(field: Field, A):
    n = len(A)
    if not field.exact:
        mat = np.asarray(A, dtype=complex)
        if np.linalg.cond(mat) > 1e12:
            raise NumericError("multiplication operator is singular; the chosen chart form vanishes at a root")
        return np.linalg.inv(mat)
    aug = [list(A[i]) + [field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    mat, pivots = field.rref(aug)
    if pivots[:n] != list(range(n)):
        raise FieldError("multiplication operator is singular; the chosen chart form vanishes at a root")
    return [row[n:] for row in mat]


# ---------------------------------------------------------------------------
# reading points off functionals


def point_from_functional(field: Field, lam: Sequence, degree: int) -> list:
    """Recover p from a functional proportional to the monomial values at p."""
    index = monomial_index(degree)
    pure = [index[tuple(degree if j == i else 0 for j in range(3))] for i in range(3)]
    sizes = [field.size(lam[k]) for k in pure]
    if field.exact:
        k = next((i for i in range(3) if lam[pure[i]] != 0), None)
    else:
        k = int(np.argmax(sizes))
        if sizes[k] == 0:
            k = None
    if k is None:
        raise NumericError("functional is not an evaluation functional")
    base = list(tuple(degree - 1 if j == k else 0 for j in range(3)))
    p = []
    for i in range(3):
        e = list(base)
        e[i] += 1
        p.append(lam[index[tuple(e)]] / lam[pure[k]])
    return p


# ---------------------------------------------------------------------------
# exact eigenvalues via factorization over Q(zeta_N)


@lru_cache(maxsize=None)
def _sympy_domain(N: int):
    import sympy as sp

    field = CyclotomicField(N)
    if field.degree == 1:
        return sp.QQ
    K = sp.QQ.algebraic_field(sp.exp(2 * sp.pi * sp.I / N))
    mod = [Fraction(int(c.numerator), int(c.denominator)) for c in K.mod.to_list()]
    from .field import cyclotomic_polynomial

    if mod != [Fraction(c) for c in reversed(cyclotomic_polynomial(N))]:
        raise FieldError(f"unexpected generator for the algebraic field of order {N}")
    return K


def _to_sympy(field: CyclotomicField, a: Cyclo, K):
    import sympy as sp

    coeffs = [Fraction(n, a.den) for n in a.num]
    if field.degree == 1:
        return sp.QQ(coeffs[0].numerator, coeffs[0].denominator)
    return K([sp.QQ(c.numerator, c.denominator) for c in reversed(coeffs)])


def _from_sympy(field: CyclotomicField, v) -> Cyclo:
    if field.degree == 1:
        return field(Fraction(int(v.numerator), int(v.denominator)))
    high_first = v.to_list()
    coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(high_first)]
    coeffs += [Fraction(0)] * (field.degree - len(coeffs))
    return field.from_coefficients(coeffs)


def charpoly(field: Field, A) -> list:
    """Monic characteristic polynomial, highest degree first (Faddeev-LeVerrier)."""
    n = len(A)
    ident = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    coeffs = [field.one]
    M = [row[:] for row in ident]
    c = field.one
    AM = None
    for k in range(1, n + 1):
        AM = _matmul(field, A, M)
        c = -sum((AM[i][i] for i in range(n)), field.zero) / k
        coeffs.append(c)
        M = [[AM[i][j] + (c if i == j else field.zero) for j in range(n)] for i in range(n)]
    return coeffs


def roots_in_field(field: CyclotomicField, coeffs: Sequence) -> list[tuple[Cyclo, int]]:
    """Roots (with multiplicity) of a polynomial whose roots all lie in the field.

    Raises FieldError when an irreducible factor of degree > 1 remains.
    """
    import sympy as sp

    K = _sympy_domain(field.N)
    x = sp.Symbol("x")
    poly = sp.Poly([_to_sympy(field, field(c), K) for c in coeffs], x, domain=K)
    out = []
    for fac, mult in poly.factor_list()[1]:
        if fac.degree() != 1:
            raise FieldError(
                f"a root of degree {fac.degree()} over Q(zeta_{field.N}) is not in the session field"
            )
        a, b = fac.rep.to_list()
        out.append((_from_sympy(field, -b) / _from_sympy(field, a), mult))
    return out


def exact_kernel(field: CyclotomicField, A, lam) -> list[list]:
    n = len(A)
    shifted = [[A[i][j] - (lam if i == j else field.zero) for j in range(n)] for i in range(n)]
    return field.nullspace(shifted, n)


# ---------------------------------------------------------------------------


def random_linear(field: Field, rng: np.random.Generator) -> list:
    """Random linear form; small integers in exact mode keep fractions short."""
    if field.exact:
        return [field(int(v)) for v in rng.integers(-7, 8, size=3)]
    return [field.random(rng) for _ in range(3)]


def solve_points(
    field: Field,
    forms: Sequence[Form],
    d: int,
    rng: np.random.Generator,
    expected: int | None = None,
    reduced: bool = True,
) -> list[list]:
    """All points of a zero-dimensional V(forms), assuming reduced roots.

    Returns coordinate lists (not normalized). ``expected`` cross-checks the
    length of the quotient.
    """
    for _attempt in range(8):
        h = random_linear(field, rng)
        g = random_linear(field, rng)
        try:
            dq = DualQuotient(field, forms, d, h)
        except (FieldError, NumericError):
            continue
        if expected is not None and dq.length != expected:
            raise NumericError(f"expected {expected} roots with multiplicity, quotient has length {dq.length}")
        if dq.length == 0:
            return []
        try:
            A = dq.operator(g)
        except (FieldError, NumericError):
            continue
        if field.exact:
            roots = roots_in_field(field, charpoly(field, A))
            if reduced and any(m > 1 for _, m in roots):
                continue
            pts = []
            for lam, _ in roots:
                ker = exact_kernel(field, A, lam)
                if len(ker) != 1:
                    break
                pts.append(point_from_functional(field, dq.functional(ker[0]), d + 1))
            else:
                return pts
            continue
        vals, vecs = np.linalg.eig(np.asarray(A))
        spread = max(1.0, float(np.max(np.abs(vals))))
        gaps = [abs(vals[i] - vals[j]) for i in range(len(vals)) for j in range(i)]
        if gaps and min(gaps) < 1e-6 * spread:
            continue
        return [
            point_from_functional(field, dq.functional(vecs[:, k]), d + 1) for k in range(len(vals))
        ]
    raise NumericError("could not separate the roots of the polynomial system")
