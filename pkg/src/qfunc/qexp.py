"""The three q-exponentials and their multiplicative-lattice machinery.

Type 1 is the reciprocal infinite product 1/(u;q)_inf (meromorphic, simple
poles at u = q^(-m)), type 2 the entire product (-u;q)_inf, and type 3 an
entire series with Gaussian-decaying coefficients.  Each type j pairs with
an exponent parameter delta via j = -(3/2) delta^2 + (5/2) delta + 2, so
(j, delta) runs over (1,2), (2,0), (3,1).

The self-reciprocal products L(u) = e^(j)(u) e^(j)(q/u) admit two-sided
(Laurent) expansions, satisfy one-step functional equations (a four-term
relation for type 3), and have discrete closed forms on the lattice
|u| = q^(n+lam) that drive the large-argument asymptotics.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence

from .errors import DomainError, NonConvergence, PoleError
from .qcalc import (
    LatticePoint,
    QBase,
    SeriesValue,
    lattice_decompose,
    qgamma,
    qpoch_finite,
    qpoch_infinite,
)

__all__ = [
    "KindTag",
    "LaurentTable",
    "AsymptoticEstimate",
    "qexp_eval",
    "classical_limit_check",
    "lambda_product",
    "lambda_laurent_coeff",
    "lambda_laurent_eval",
    "lambda_laurent_table",
    "lambda_closed_form",
    "qexp_functional_residual",
    "qexp_asymptotic",
]

_VALID_PAIRS = {(1, 2), (2, 0), (3, 1)}

_RHO_CAP = 0.99


@dataclass(frozen=True)
class KindTag:
    """Type index j in {1,2,3} with its paired exponent parameter delta."""

    j: int
    delta: int

    def __post_init__(self) -> None:
        if (self.j, self.delta) not in _VALID_PAIRS:
            raise ValueError(
                f"(j, delta) must be one of {(sorted(_VALID_PAIRS))}, "
                f"got ({self.j}, {self.delta})"
            )

    @classmethod
    def from_j(cls, j: int) -> "KindTag":
        deltas = {1: 2, 2: 0, 3: 1}
        if j not in deltas:
            raise ValueError(f"kind j must be 1, 2 or 3, got {j}")
        return cls(j, deltas[j])


@dataclass(frozen=True)
class LaurentTable:
    """Two-sided expansion coefficients a_l over the window |l| <= window."""

    kind: KindTag
    window: int
    coeffs: Dict[int, float]


@dataclass(frozen=True)
class AsymptoticEstimate:
    """A leading-order approximation split into scale, phase and constant.

    leading = q^scale_exponent * phase * constant, with N = n(n-1) + 2 lam n
    for the lattice point the estimate was built from.
    """

    leading: complex
    scale_exponent: float
    phase: complex
    constant: complex
    N: float


def _nearest_pole_index(u: complex, q: float) -> int:
    """Index m >= 0 of the reciprocal-product pole q^(-m) nearest to |u|."""
    r = abs(u)
    if r <= 0:
        return 0
    return max(0, round(-math.log(r) / math.log(q)))


def qexp_eval(kind: KindTag, u: complex, base: QBase) -> SeriesValue:
    """Evaluate the q-exponential of the given type at u.

    Type 1 uses the reciprocal infinite product (valid for every non-pole
    u); type 2 the entire product; type 3 its everywhere-convergent series.
    """
    q = base.q
    u = complex(u)
    if kind.j == 1:
        m = _nearest_pole_index(u, q)
        pole = q ** (-m)
        if abs(u - pole) < 1e-8 * pole:
            raise PoleError(f"u={u} is within the guard band of the pole q^-{m}")
        prod = qpoch_infinite(u, base)
        if prod.value == 0:
            raise PoleError(f"u={u} lies on a pole of the reciprocal product")
        v = 1.0 / prod.value
        return SeriesValue(v, abs(v) * prod.err_estimate / abs(prod.value), prod.terms_used)
    if kind.j == 2:
        return qpoch_infinite(-u, base)
    # Type 3 series: sum q^(n(n-1)/4) u^n / (q;q)_n.
    if u == 0:
        return SeriesValue(1.0, 0.0, 1)
    s: complex = 0.0
    t: complex = 1.0
    prev = 0.0
    n = 0
    rq = math.sqrt(q)
    while n < base.max_terms:
        s += t
        prev = abs(t)
        t = t * rq**n * u / (1.0 - q ** (n + 1))
        n += 1
        ta = abs(t)
        if n >= 2 and ta < base.tol * abs(s) and prev > 0:
            rho = ta / prev
            if rho < _RHO_CAP:
                return SeriesValue(s, ta * rho / (1.0 - rho), n)
    raise NonConvergence(f"type-3 series did not converge within {base.max_terms} terms")


def classical_limit_check(
    kind: KindTag, z: complex, q_sequence: Sequence[float]
) -> List[float]:
    """Distances |e_q(kind)((1-q^2) z) - e^(2z)| along a sequence of q values.

    Used to confirm monotone decay toward the classical exponential as
    q increases to 1.
    """
    target = cmath.exp(2.0 * z)
    out = []
    for q in q_sequence:
        base = QBase(q)
        u = (1.0 - q * q) * z
        out.append(abs(qexp_eval(kind, u, base).value - target))
    return out


def lambda_product(kind: KindTag, u: complex, base: QBase) -> complex:
    """The self-reciprocal product e^(j)(u) * e^(j)(q/u)."""
    if u == 0:
        raise DomainError("lambda product is undefined at u = 0")
    return qexp_eval(kind, u, base).value * qexp_eval(kind, base.q / u, base).value


def _bessel_i_base_q(kind: KindTag, l: int, base: QBase) -> float:
    """Modified Bessel value I_l(2 q^(delta/4); q) taken at base q.

    Same series shape as the q^2-Bessel I family but with base q and the
    fixed argument that appears in the two-sided expansion coefficients.
    """
    q = base.q
    d = kind.delta
    y = q ** (d / 4.0) / (1.0 - q)
    pref = y**l / qgamma(l + 1, base)
    s = 0.0
    p1 = 1.0
    p2 = 1.0
    n = 0
    while n < base.max_terms:
        t = q ** ((2 - d) / 2.0 * n * (n + l)) * (1.0 - q) ** (2 * n) * y ** (2 * n) / (p1 * p2)
        s += t
        if n > 3 and t < base.tol * s:
            return pref * s
        p1 *= 1.0 - q ** (n + 1)
        p2 *= 1.0 - q ** (l + 1 + n)
        n += 1
    raise NonConvergence("modified Bessel series for expansion coefficient did not converge")


def lambda_laurent_coeff(
    kind: KindTag, l: int, base: QBase, method: str = "sum"
) -> float:
    """Coefficient a_l of u^l in the two-sided expansion of the product.

    method "sum" evaluates the explicit inner sum directly; method
    "bessel" routes through the equivalent modified-Bessel value at base
    q.  The two agree and their equality is a test elsewhere.
    """
    if l < 0:
        # Mirror symmetry: a_(-l) = q^l * a_l.
        return base.q ** (-l) * lambda_laurent_coeff(kind, -l, base, method)
    q = base.q
    d = kind.delta
    if method == "bessel":
        return q ** ((2 - d) / 4.0 * l * l - l / 2.0) * _bessel_i_base_q(kind, l, base)
    if method != "sum":
        raise ValueError(f"unknown method {method!r}")
    outer = q ** ((2 - d) / 4.0 * l * (l - 1)) / qpoch_finite(q, base, l).real
    s = 0.0
    p1 = 1.0  # (q;q)_k
    p2 = 1.0  # (q^(l+1);q)_k
    k = 0
    while k < base.max_terms:
        t = q ** ((2 - d) / 2.0 * k * (k + l) + d / 2.0 * k) / (p1 * p2)
        s += t
        if k > 3 and t < base.tol * s:
            return outer * s
        p1 *= 1.0 - q ** (k + 1)
        p2 *= 1.0 - q ** (l + 1 + k)
        k += 1
    raise NonConvergence("inner coefficient sum did not converge")


def lambda_laurent_table(kind: KindTag, window: int, base: QBase) -> LaurentTable:
    """Tabulate coefficients a_l for |l| <= window."""
    coeffs: Dict[int, float] = {}
    for l in range(window + 1):
        a = lambda_laurent_coeff(kind, l, base)
        coeffs[l] = a
        if l > 0:
            coeffs[-l] = base.q**l * a
    return LaurentTable(kind=kind, window=window, coeffs=coeffs)


def lambda_laurent_eval(
    kind: KindTag, u: complex, window: int, base: QBase
) -> SeriesValue:
    """Evaluate the two-sided expansion sum_{|l|<=window} a_l u^l."""
    if u == 0:
        raise DomainError("two-sided expansion is undefined at u = 0")
    q = base.q
    if kind.j == 1 and not q < abs(u) < 1.0:
        raise DomainError(
            f"type-1 two-sided expansion requires q < |u| < 1, got |u|={abs(u)}"
        )
    table = lambda_laurent_table(kind, window, base)
    s: complex = 0.0
    for l in range(-window, window + 1):
        s += table.coeffs[l] * u**l
    # Tail estimate from the decay of the outermost bands.
    err = 0.0
    for hi, lo in ((window, window - 1), (-window, -(window - 1))):
        t_hi = abs(table.coeffs[hi] * u**hi)
        t_lo = abs(table.coeffs[lo] * u**lo)
        if t_hi == 0:
            continue
        if t_lo == 0 or t_hi / t_lo >= _RHO_CAP:
            raise NonConvergence(
                f"coefficient decay is not yet geometric at window {window}"
            )
        rho = t_hi / t_lo
        err += t_hi * rho / (1.0 - rho)
    return SeriesValue(s, err, 2 * window + 1)


def lambda_closed_form(kind: KindTag, u: complex, base: QBase) -> complex:
    """Discrete lattice realization of the self-reciprocal product.

    For types 1 and 2 this is an exact identity; for type 3 it is the
    growth-envelope model with the q^(-1/24) normalization, accurate only
    as an order-of-magnitude scale.
    """
    q = base.q
    p = lattice_decompose(u, base)
    n, lam, th = p.n, p.lam, p.theta
    u0 = q**lam * cmath.exp(1j * th)
    c = lambda_product(kind, u0, base)
    if kind.j == 1:
        return c * cmath.exp(1j * (th + math.pi) * n) * q ** (n * (n - 1) / 2.0 + lam * n)
    if kind.j == 2:
        return c * cmath.exp(-1j * th * n) * q ** (-n * (n - 1) / 2.0 - lam * n)
    c3 = q ** (-1.0 / 24.0) * c
    return c3 * q ** (-2.0 / 3.0 * n * (n - 1) - 4.0 / 3.0 * n * lam) * cmath.exp(
        -4j * th * n / 3.0
    )


def qexp_functional_residual(kind: KindTag, u: complex, base: QBase) -> float:
    """Normalized residual of the kind's functional equation at u.

    Type 1: L(qu) + u L(u) = 0.  Type 2: u L(qu) - L(u) = 0.  Type 3
    satisfies a four-term relation built from the type-3 exponential
    itself.
    """
    if u == 0:
        raise DomainError("functional equation is undefined at u = 0")
    q = base.q
    if kind.j == 1:
        t1 = lambda_product(kind, q * u, base)
        t2 = u * lambda_product(kind, u, base)
        return abs(t1 + t2) / max(abs(t1), abs(t2))
    if kind.j == 2:
        t1 = u * lambda_product(kind, q * u, base)
        t2 = lambda_product(kind, u, base)
        return abs(t1 - t2) / max(abs(t1), abs(t2))
    e = lambda w: qexp_eval(kind, w, base).value
    rq = math.sqrt(q)
    t1 = e(u) * e(q / u)
    t2 = e(q * u) * e(1.0 / u)
    t3 = u * e(rq * u) * e(1.0 / u)
    t4 = e(u) * e(rq / u) / u
    scale = max(abs(t1), abs(t2), abs(t3), abs(t4))
    return abs(t1 - t2 - t3 + t4) / scale


def qexp_asymptotic(kind: KindTag, point: LatticePoint, base: QBase) -> AsymptoticEstimate:
    """Leading-order lattice approximation of the q-exponential at point."""
    q = base.q
    n, lam, th = point.n, point.lam, point.theta
    big_n = n * (n - 1) + 2.0 * lam * n
    c = (
        qexp_eval(kind, q**lam * cmath.exp(1j * th), base).value
        * qexp_eval(kind, q ** (1.0 - lam) * cmath.exp(-1j * th), base).value
    )
    if kind.j == 1:
        scale = big_n / 2.0
        phase = cmath.exp(1j * (th + math.pi) * n)
    elif kind.j == 2:
        scale = -big_n / 2.0
        phase = cmath.exp(-1j * th * n)
    else:
        scale = -2.0 / 3.0 * big_n - 1.0 / 24.0
        phase = cmath.exp(-4j * th * n / 3.0)
    leading = q**scale * phase * c
    return AsymptoticEstimate(
        leading=leading, scale_exponent=scale, phase=phase, constant=c, N=big_n
    )
