"""Scalar backends.

Two interchangeable fields carry every computation in the package:

* :class:`CyclotomicField` -- exact arithmetic in Q(zeta_N).  Elements are
  :class:`Cyclo` instances, stored in the power basis 1, z, ..., z^(phi(N)-1)
  modulo the N-th cyclotomic polynomial.
* :class:`ComplexField` -- approximate arithmetic on Python ``complex`` values
  with a relative equality tolerance.

Both expose the same small interface (coercion, zero tests, roots of unity,
rank/nullspace, JSON codecs) so that geometry code is written once.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import BackendError, FieldError


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials with monic divisor ``b``."""
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    if any(a):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


# ---------------------------------------------------------------------------
# exact backend


class Cyclo:
    """An element of Q(zeta_N): integer numerators over a common denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: "CyclotomicField", num: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-x for x in num]
            den = -den
        g = den
        for x in num:
            if x:
                g = math.gcd(g, x)
                if g == 1:
                    break
        if g != 1:
            num = [x // g for x in num]
            den //= g
        if not any(num):
            den = 1
        self.field = field
        self.num = tuple(num)
        self.den = den

    # -- coercion
    def _lift(self, other) -> "Cyclo":
        if isinstance(other, Cyclo):
            if other.field is not self.field and other.field.N != self.field.N:
                raise BackendError(
                    f"cannot mix Q(zeta_{self.field.N}) with Q(zeta_{other.field.N})"
                )
            return other
        return self.field(other)

    # -- arithmetic
    def __add__(self, other):
        try:
            o = self._lift(other)
        except BackendError:
            raise
        except FieldError:
            return NotImplemented
        d = self.den * o.den // math.gcd(self.den, o.den)
        fa, fb = d // self.den, d // o.den
        return Cyclo(self.field, [x * fa + y * fb for x, y in zip(self.num, o.num)], d)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.field, [-x for x in self.num], self.den)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except BackendError:
            raise
        except FieldError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclo(self.field, [x * other for x in self.num], self.den)
        try:
            o = self._lift(other)
        except BackendError:
            raise
        except FieldError:
            return NotImplemented
        return Cyclo(self.field, self.field._reduce(_poly_mul(self.num, o.num)), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if not any(self.num):
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        return self.field._inverse(self)

    def __truediv__(self, other):
        try:
            o = self._lift(other)
        except BackendError:
            raise
        except FieldError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.field.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    # -- comparison
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self.field.N == other.field.N and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.field.N, self.num, self.den))

    def __bool__(self):
        return any(self.num)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(x, self.den) for x in self.num]

    def __complex__(self):
        return self.field.to_complex(self)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coefficients()):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"Cyclo[{self.field.N}](" + (" + ".join(terms) or "0") + ")"


class CyclotomicField:
    """Exact arithmetic in the cyclotomic field Q(zeta_N)."""

    exact = True

    def __init__(self, N: int):
        if not isinstance(N, int) or N < 1:
            raise ValueError(f"cyclotomic order must be a positive integer, got {N!r}")
        self.N = N
        self.modulus = cyclotomic_polynomial(N)
        self.degree = len(self.modulus) - 1
        # x^k mod Phi_N for k in [degree, 2*degree - 2]
        table = []
        cur = [0] * self.degree
        if self.degree:
            cur = [-c for c in self.modulus[:-1]]
        for _ in range(max(self.degree - 1, 0)):
            table.append(cur)
            top = cur[-1]
            nxt = [0] + cur[:-1]
            if top:
                nxt = [x - top * c for x, c in zip(nxt, self.modulus[:-1])]
            cur = nxt
        self._table = table
        self.zero = Cyclo(self, [0] * self.degree)
        self.one = Cyclo(self, [1] + [0] * (self.degree - 1))
        self._zeta = cmath.exp(2j * math.pi / N)

    def __repr__(self):
        return f"CyclotomicField({self.N})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.N == self.N

    def __hash__(self):
        return hash(("cyclotomic", self.N))

    # -- internals
    def _reduce(self, coeffs: list[int]) -> list[int]:
        d = self.degree
        out = list(coeffs[:d]) + [0] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = self._table[k - d]
                for j in range(d):
                    out[j] += c * row[j]
        return out

    def _inverse(self, a: Cyclo) -> Cyclo:
        # Solve (multiplication-by-a matrix) u = e_0 over Q.
        d = self.degree
        cols = []
        basis = [0] * d
        for j in range(d):
            e = list(basis)
            e[j] = 1
            cols.append(self._reduce(_poly_mul(a.num, e)))
        mat = [[Fraction(cols[j][i], a.den) for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if mat[r][c] != 0)
            mat[c], mat[piv] = mat[piv], mat[c]
            inv = 1 / mat[c][c]
            mat[c] = [x * inv for x in mat[c]]
            for r in range(d):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        sol = [mat[i][d] for i in range(d)]
        den = 1
        for s in sol:
            den = den * s.denominator // math.gcd(den, s.denominator)
        return Cyclo(self, [int(s * den) for s in sol], den)

    # -- construction
    def __call__(self, value) -> Cyclo:
        if isinstance(value, Cyclo):
            if value.field.N != self.N:
                raise BackendError(f"element of Q(zeta_{value.field.N}) used in Q(zeta_{self.N})")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return Cyclo(self, [value] + [0] * (self.degree - 1))
        if isinstance(value, Fraction):
            return Cyclo(self, [value.numerator] + [0] * (self.degree - 1), value.denominator)
        if isinstance(value, complex) and value.imag == 0 and float(value.real).is_integer():
            return self(int(value.real))
        raise FieldError(f"cannot coerce {value!r} into Q(zeta_{self.N}) exactly")

    def from_coefficients(self, coeffs: Sequence) -> Cyclo:
        if len(coeffs) != self.degree:
            raise FieldError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Cyclo(self, [int(c * den) for c in fr], den)

    def zeta(self, m: int, k: int = 1) -> Cyclo:
        """The root of unity exp(2*pi*i*k/m); requires m | N."""
        if m < 1 or self.N % m:
            raise FieldError(f"zeta_{m} is not in Q(zeta_{self.N}) (need {m} | {self.N})")
        e = (self.N // m) * k % self.N
        return self._power_of_zeta(e)

    def _power_of_zeta(self, e: int) -> Cyclo:
        if self.degree == 1:
            # Q(zeta_1) = Q(zeta_2) = Q; zeta_2 = -1
            return self.one if self.N == 1 or e % 2 == 0 else -self.one
        z = Cyclo(self, [0, 1] + [0] * (self.degree - 2))
        return z ** e

    @property
    def i(self) -> Cyclo:
        return self.zeta(4)

    # -- predicates
    def is_zero(self, a) -> bool:
        return not any(self(a).num)

    def eq(self, a, b) -> bool:
        return self(a) == self(b)

    def size(self, a) -> float:
        return abs(self.to_complex(a))

    def to_complex(self, a) -> complex:
        a = self(a)
        acc = 0j
        for k in range(len(a.num) - 1, -1, -1):
            acc = acc * self._zeta + a.num[k]
        return acc / a.den

    def random(self, rng: np.random.Generator, bound: int = 9) -> Cyclo:
        nums = [int(x) for x in rng.integers(-bound, bound + 1, size=self.degree)]
        return Cyclo(self, nums, int(rng.integers(1, 4)))

    # -- linear algebra
    def rref(self, rows: Sequence[Sequence]) -> tuple[list[list[Cyclo]], list[int]]:
        mat = [[self(x) for x in row] for row in rows]
        pivots: list[int] = []
        if not mat:
            return mat, pivots
        ncols = len(mat[0])
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
            if piv is None:
                continue
            mat[r], mat[piv] = mat[piv], mat[r]
            inv = mat[r][c].inverse()
            mat[r] = [x * inv if x else x for x in mat[r]]
            for i in range(len(mat)):
                if i != r and mat[i][c]:
                    f = mat[i][c]
                    row_r = mat[r]
                    mat[i] = [x - f * y if y else x for x, y in zip(mat[i], row_r)]
            pivots.append(c)
            r += 1
            if r == len(mat):
                break
        return mat, pivots

    def rank(self, rows) -> int:
        return len(self.rref(rows)[1])

    def nullspace(self, rows, ncols: int | None = None) -> list[list[Cyclo]]:
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0])
        if not rows:
            return [[self.one if i == j else self.zero for i in range(ncols)] for j in range(ncols)]
        mat, pivots = self.rref(rows)
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for f in free:
            v = [self.zero] * ncols
            v[f] = self.one
            for r, p in enumerate(pivots):
                v[p] = -mat[r][f]
            basis.append(v)
        return basis

    def solve(self, rows, rhs) -> list[Cyclo]:
        """Solve the (consistent, uniquely solvable) system rows @ x = rhs."""
        aug = [list(r) + [b] for r, b in zip(rows, rhs)]
        n = len(rows[0])
        mat, pivots = self.rref(aug)
        if n in pivots or len(pivots) < n:
            raise FieldError("linear system is inconsistent or underdetermined")
        return [mat[i][n] for i in range(n)]

    # -- JSON
    def descriptor(self):
        return {"cyclotomic": self.N}

    def encode(self, a) -> dict:
        a = self(a)
        return {"N": self.N, "coeffs": [[x, a.den] for x in a.num]}

    def decode(self, obj) -> Cyclo:
        if isinstance(obj, (int, Fraction)) and not isinstance(obj, bool):
            return self(obj)
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise FieldError(f"expected an exact cyclotomic scalar, got {obj!r}")
        if int(obj.get("N", self.N)) != self.N:
            raise BackendError(f"scalar from Q(zeta_{obj['N']}) in a Q(zeta_{self.N}) session")
        coeffs = []
        for c in obj["coeffs"]:
            if isinstance(c, (list, tuple)) and len(c) == 2:
                coeffs.append(Fraction(int(c[0]), int(c[1])))
            elif isinstance(c, int):
                coeffs.append(Fraction(c))
            else:
                raise FieldError(f"bad rational {c!r}")
        return self.from_coefficients(coeffs)


# ---------------------------------------------------------------------------
# approximate backend


class ComplexField:
    """Approximate complex arithmetic with tolerance-based comparisons.

    ``eps_eq`` governs scalar and projective equality, ``eps_rank`` the
    relative singular-value threshold used in rank and nullspace decisions.
    """

    exact = False

    def __init__(self, eps_eq: float = 1e-9, eps_rank: float = 1e-8):
        if eps_eq <= 0 or eps_rank <= 0:
            raise ValueError("tolerances must be positive")
        self.eps_eq = float(eps_eq)
        self.eps_rank = float(eps_rank)
        self.zero = 0j
        self.one = 1 + 0j

    def __repr__(self):
        return f"ComplexField(eps_eq={self.eps_eq:g}, eps_rank={self.eps_rank:g})"

    def __eq__(self, other):
        return isinstance(other, ComplexField)

    def __hash__(self):
        return hash("complex")

    def __call__(self, value) -> complex:
        if isinstance(value, Cyclo):
            raise BackendError("exact cyclotomic value used in an approximate session")
        try:
            return complex(value)
        except TypeError as exc:
            raise FieldError(f"cannot coerce {value!r} to complex") from exc

    def zeta(self, m: int, k: int = 1) -> complex:
        return cmath.exp(2j * math.pi * k / m)

    @property
    def i(self) -> complex:
        return 1j

    def is_zero(self, a, scale: float = 1.0) -> bool:
        return abs(a) <= self.eps_eq * max(1.0, scale)

    def eq(self, a, b) -> bool:
        a, b = complex(a), complex(b)
        return abs(a - b) <= self.eps_eq * max(1.0, abs(a), abs(b))

    def size(self, a) -> float:
        return abs(a)

    def to_complex(self, a) -> complex:
        return complex(a)

    def random(self, rng: np.random.Generator, bound: float = 1.0) -> complex:
        return complex(rng.normal(scale=bound), rng.normal(scale=bound))

    # -- linear algebra
    def _svd(self, rows):
        mat = np.asarray(rows, dtype=complex)
        if mat.ndim != 2 or mat.size == 0:
            return mat, np.zeros(0), None
        _, s, vh = np.linalg.svd(mat, full_matrices=True)
        return mat, s, vh

    def numeric_rank(self, s: np.ndarray) -> int:
        if s.size == 0 or s[0] == 0:
            return 0
        return int(np.sum(s > self.eps_rank * s[0]))

    def rank(self, rows) -> int:
        _, s, _ = self._svd(rows)
        return self.numeric_rank(s)

    def nullspace(self, rows, ncols: int | None = None) -> list[np.ndarray]:
        rows = list(rows) if not isinstance(rows, np.ndarray) else rows
        if len(rows) == 0:
            return [np.eye(ncols, dtype=complex)[j] for j in range(ncols)]
        _, s, vh = self._svd(rows)
        r = self.numeric_rank(s)
        return [vh[j].conj() for j in range(r, vh.shape[0])]

    def solve(self, rows, rhs) -> np.ndarray:
        sol, *_ = np.linalg.lstsq(np.asarray(rows, dtype=complex), np.asarray(rhs, dtype=complex), rcond=None)
        return sol

    # -- JSON
    def descriptor(self):
        return "complex"

    def encode(self, a) -> list[float]:
        a = complex(a)
        return [a.real, a.imag]

    def decode(self, obj) -> complex:
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return complex(float(obj[0]), float(obj[1]))
        if isinstance(obj, (int, float)) and not isinstance(obj, bool):
            return complex(obj)
        raise FieldError(f"expected [re, im], got {obj!r}")


Field = CyclotomicField | ComplexField


def field_from_descriptor(desc, eps_eq: float = 1e-9, eps_rank: float = 1e-8) -> Field:
    """Build a field from the Net JSON ``"field"`` entry."""
    if desc == "complex":
        return ComplexField(eps_eq, eps_rank)
    if isinstance(desc, dict) and "cyclotomic" in desc:
        return CyclotomicField(int(desc["cyclotomic"]))
    raise FieldError(f"unknown field descriptor {desc!r}")


def same_field(objs: Iterable) -> Field:
    """Return the shared field of ``objs`` (anything with a ``.field``)."""
    field = None
    for o in objs:
        if field is None:
            field = o.field
        elif o.field != field or (field.exact and o.field.N != field.N):
            raise BackendError(f"backend mismatch: {field!r} vs {o.field!r}")
    if field is None:
        raise ValueError("no objects given")
    return field
