"""Numerical Weierstrass uniformization of C / (Z + tau Z).

The curve is y^2 z = 4 x^3 - g2 x z^2 - g3 z^3; z in the lattice maps to the
flex (0:1:0).  Series are q-expansions in q = exp(2 pi i tau).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NumericError
from .field import ComplexField
from .geom import Point

TWO_PI_I = 2j * math.pi
DEFAULT_TAU = complex(0.23, 1.11)


def _reduce_tau(tau: complex) -> tuple[complex, complex]:
    """Move tau into the standard fundamental domain.

    Returns (tau', lam) with Z + tau Z = lam * (Z + tau' Z).
    """
    # track tau' = (a tau + b) / (c tau + d)
    a, b, c, d = 1, 0, 0, 1
    t = tau
    for _ in range(200):
        n = round(t.real)
        t -= n
        a, b = a - n * c, b - n * d
        if abs(t) < 1 - 1e-15:
            t = -1 / t
            a, b, c, d = -c, -d, a, b
        else:
            break
    lam = c * tau + d
    return t, lam


def _lambert(q: complex, power: int, eps: float) -> complex:
    """sum_{n>=1} n^power q^n / (1 - q^n)."""
    acc = 0j
    qn = q
    n = 1
    while True:
        term = n**power * qn / (1 - qn)
        acc += term
        if abs(term) < eps * max(1.0, abs(acc)) and n > 2:
            return acc
        n += 1
        qn *= q
        if n > 100000:
            raise NumericError("Eisenstein series failed to converge")


@dataclass(frozen=True)
class EllipticData:
    tau: complex
    g2: complex
    g3: complex
    eps_series: float = 1e-14
    # internal: Z + tau Z = scale * (Z + tau_red Z)
    tau_red: complex = 0j
    scale: complex = 1 + 0j

    @property
    def curve(self):
        from .cubic import Cubic

        return Cubic(ComplexField(), [4, 0, 0, 0, 0, -self.g2, 0, -1, 0, -self.g3])

    @property
    def discriminant(self) -> complex:
        return self.g2**3 - 27 * self.g3**2

    @property
    def zero(self) -> Point:
        return Point(ComplexField(), (0, 1, 0))

    def lattice_coords(self, z: complex) -> tuple[float, float]:
        """Real (a, b) with z = a + b * tau."""
        b = z.imag / self.tau.imag
        return z.real - b * self.tau.real, b

    def in_lattice(self, z: complex, tol: float = 1e-9) -> bool:
        a, b = self.lattice_coords(z)
        return abs(a - round(a)) <= tol and abs(b - round(b)) <= tol

    def reduce(self, z: complex) -> complex:
        a, b = self.lattice_coords(z)
        return (a - round(a)) + (b - round(b)) * self.tau


def weierstrass(tau: complex = DEFAULT_TAU, eps_series: float = 1e-14) -> EllipticData:
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError(f"tau must lie in the upper half-plane, got {tau}")
    if eps_series <= 0:
        raise ValueError("eps_series must be positive")
    tau_red, lam = tau, 1 + 0j
    if abs(cmath.exp(TWO_PI_I * tau)) > 0.9:
        tau_red, lam = _reduce_tau(tau)
    q = cmath.exp(TWO_PI_I * tau_red)
    e4 = 1 + 240 * _lambert(q, 3, eps_series)
    e6 = 1 - 504 * _lambert(q, 5, eps_series)
    g2 = (4 * math.pi**4 / 3) * e4 / lam**4
    g3 = (8 * math.pi**6 / 27) * e6 / lam**6
    data = EllipticData(tau, g2, g3, eps_series, tau_red, lam)
    if abs(data.discriminant) <= 1e-9 * max(1.0, abs(g2) ** 3, abs(g3) ** 2):
        raise NumericError("degenerate lattice: discriminant vanishes")
    return data


def _p_and_dp(z: complex, tau: complex, eps: float) -> tuple[complex, complex]:
    """(wp(z), wp'(z)) for the lattice Z + tau Z, z reduced to the period strip."""
    b = z.imag / tau.imag
    z = z - round(b) * tau
    z = z - round(z.real - (z.imag / tau.imag) * tau.real)
    q = cmath.exp(TWO_PI_I * tau)
    u = cmath.exp(TWO_PI_I * z)

    def terms(w):
        d = 1 - w
        return w / d**2, w * (1 + w) / d**3

    p_acc, dp_acc = terms(u)
    const = 0j
    n = 1
    qn = q
    while True:
        a1, b1 = terms(qn * u)
        a2, b2 = terms(qn / u)
        c = qn / (1 - qn) ** 2
        p_acc += a1 + a2
        dp_acc += b1 - b2
        const += c
        size = abs(a1) + abs(a2) + abs(b1) + abs(b2) + abs(c)
        if size < eps * max(1.0, abs(p_acc), abs(dp_acc)) and n > 2:
            break
        n += 1
        qn *= q
        if n > 100000:
            raise NumericError("q-series for the Weierstrass function failed to converge")
    p = TWO_PI_I**2 * (1 / 12 + p_acc - 2 * const)
    dp = TWO_PI_I**3 * dp_acc
    return p, dp


def pe_values(e: EllipticData, z: complex) -> tuple[complex, complex]:
    """(wp(z), wp'(z)); raises for z in the lattice."""
    z = complex(z)
    if e.in_lattice(z, 1e-13):
        raise ValueError("wp has a pole at lattice points")
    lam = e.scale
    p, dp = _p_and_dp(z / lam, e.tau_red, e.eps_series)
    return p / lam**2, dp / lam**3


def pe_map(e: EllipticData, z: complex, field: ComplexField | None = None) -> Point:
    """The point (wp(z) : wp'(z) : 1), or (0:1:0) for z in the lattice."""
    field = field or ComplexField()
    if e.in_lattice(complex(z), 1e-13):
        return Point(field, (0, 1, 0))
    p, dp = pe_values(e, z)
    return Point(field, (p, dp, 1))
