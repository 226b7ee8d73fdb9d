"""Special functions, entropy symbols, and the boundary-coefficient functional.

This module collects the scalar building blocks used everywhere else:
Laguerre polynomials, the sine kernel ``sin(sqrt(mu) z)/(pi z)``, the
magnetic (Landau) projection kernel, the Renyi entropy functions
``h_gamma``, and the linear functional

    I(f) = (1/4 pi^2) * int_0^1 (f(t) - t f(1)) / (t (1 - t)) dt

whose value fixes the coefficient of every logarithmic term in the trace
asymptotics.  Closed forms: ``I(t^m) = -(1/4 pi^2) sum_{r<m} 1/r`` and
``I(h_gamma) = (1 + gamma) / (24 gamma)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate
from scipy.special import k0 as _bessel_k0

from .errors import DomainError, NumericsError, ValidationError

__all__ = [
    "laguerre",
    "sine_kernel",
    "landau_kernel",
    "entropy_h",
    "Symbol",
    "symbol_from_label",
    "functional_I",
    "closed_form_I",
    "BoundCheckResult",
    "convolution_bound_check",
]

#: Largest Laguerre degree evaluated; the three-term recurrence stays
#: accurate far beyond the alternating sum, but we refuse degrees where
#: even the recurrence has lost more than ~1e-10 for moderate arguments.
LAGUERRE_MAX_DEGREE = 60


def laguerre(ell: int, t):
    """Laguerre polynomial ``L_ell(t)`` by the stable three-term recurrence.

    Parameters
    ----------
    ell : int
        Degree, ``0 <= ell <= LAGUERRE_MAX_DEGREE``.
    t : float or ndarray
        Argument, ``t >= 0``.
    """
    if not isinstance(ell, (int, np.integer)) or ell < 0:
        raise DomainError(f"Laguerre degree must be a nonnegative integer, got {ell!r}")
    if ell > LAGUERRE_MAX_DEGREE:
        raise DomainError(
            f"Laguerre degree {ell} exceeds the supported maximum "
            f"{LAGUERRE_MAX_DEGREE} (precision cliff)"
        )
    t = np.asarray(t, dtype=float)
    prev = np.ones_like(t)
    if ell == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 - t
    for k in range(1, ell):
        prev, cur = cur, ((2 * k + 1 - t) * cur - k * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def sine_kernel(mu: float, z):
    """Kernel ``sin(sqrt(mu) z) / (pi z)`` of the 1D spectral projection.

    Continuous at ``z = 0`` with value ``sqrt(mu)/pi``; a two-term series
    replaces the quotient for ``|sqrt(mu) z| < 1e-6``.
    """
    if mu <= 0:
        raise DomainError(f"sine kernel needs mu > 0, got {mu}")
    z = np.asarray(z, dtype=float)
    root = math.sqrt(mu)
    u = root * z
    small = np.abs(u) < 1e-6
    safe_z = np.where(small, 1.0, z)
    out = np.where(
        small,
        (root / math.pi) * (1.0 - u * u / 6.0),
        np.sin(u) / (math.pi * safe_z),
    )
    return out if out.ndim else float(out)


def landau_kernel(B: float, ell: int, x_perp, y_perp) -> complex:
    """Integral kernel of the Landau-level projection in the symmetric gauge.

    ``(B/2 pi) L_ell(B r^2/2) exp(-B r^2/4 + i (B/2) x_perp ^ y_perp)`` with
    ``r = ||x_perp - y_perp||`` and wedge ``x ^ y = x_1 y_2 - x_2 y_1``.
    The kernel is Hermitian and its diagonal equals ``B/(2 pi)``.
    """
    if B <= 0:
        raise DomainError(f"landau_kernel needs B > 0, got {B}")
    x = np.asarray(x_perp, dtype=float)
    y = np.asarray(y_perp, dtype=float)
    r2 = float(np.sum((x - y) ** 2))
    wedge = float(x[0] * y[1] - x[1] * y[0])
    amp = (B / (2 * math.pi)) * laguerre(ell, B * r2 / 2.0) * math.exp(-B * r2 / 4.0)
    return amp * complex(math.cos(B * wedge / 2.0), math.sin(B * wedge / 2.0))


def entropy_h(gamma: float, t):
    """Renyi entropy function ``h_gamma`` on ``[0, 1]``.

    ``h_gamma(t) = ln(t^gamma + (1-t)^gamma) / (1 - gamma)`` for
    ``gamma != 1`` and the binary entropy for ``gamma = 1``, with the
    ``0 ln 0 = 0`` convention handled by an explicit branch.  Inputs may
    stray outside ``[0, 1]`` by at most ``1e-9`` (clamped); anything
    further raises.
    """
    if gamma <= 0:
        raise DomainError(f"entropy order gamma must be positive, got {gamma}")
    arr = np.asarray(t, dtype=float)
    if np.any(arr < -1e-9) or np.any(arr > 1 + 1e-9):
        raise DomainError("entropy_h argument outside [0,1] beyond 1e-9 slack")
    s = np.clip(arr, 0.0, 1.0)
    if gamma == 1:
        # explicit branches avoid 0*log(0) = nan
        a = np.where(s > 0.0, -s * np.log(np.where(s > 0.0, s, 1.0)), 0.0)
        r = 1.0 - s
        b = np.where(r > 0.0, -r * np.log(np.where(r > 0.0, r, 1.0)), 0.0)
        h = a + b
    else:
        h = np.log(s**gamma + (1.0 - s) ** gamma) / (1.0 - gamma)
    h = np.maximum(h, 0.0)
    return h if h.ndim else float(h)


def _harmonic(n: int) -> float:
    return sum(1.0 / r for r in range(1, n + 1))


@dataclass(frozen=True)
class Symbol:
    """A test function ``f : [0,1] -> R`` with ``f(0) = 0``.

    One of four kinds: ``monomial`` (``t^m``), ``polynomial`` (coefficients
    of ``t, t^2, ...``; zero constant term), ``renyi`` (``h_gamma``), or
    ``custom`` (arbitrary evaluator with a declared Holder exponent at the
    endpoints).  Instances are callable and vectorized.
    """

    kind: str
    degree: int = 0
    coefficients: tuple = ()
    gamma: float = 0.0
    evaluator: Optional[Callable] = field(default=None, compare=False)
    holder_beta: float = 1.0

    @staticmethod
    def monomial(m: int) -> "Symbol":
        if not isinstance(m, (int, np.integer)) or m < 1:
            raise ValidationError(f"monomial order must be a positive integer, got {m!r}")
        return Symbol(kind="monomial", degree=int(m))

    @staticmethod
    def polynomial(coefficients: Sequence[float]) -> "Symbol":
        coeffs = tuple(float(c) for c in coefficients)
        if not coeffs:
            raise ValidationError("polynomial symbol needs at least one coefficient")
        return Symbol(kind="polynomial", coefficients=coeffs)

    @staticmethod
    def renyi(gamma: float) -> "Symbol":
        if gamma <= 0:
            raise ValidationError(f"Renyi order must be positive, got {gamma}")
        return Symbol(kind="renyi", gamma=float(gamma))

    @staticmethod
    def custom(evaluator: Callable, holder_beta: float = 1.0) -> "Symbol":
        if not 0 < holder_beta <= 1:
            raise ValidationError("Holder exponent must lie in (0, 1]")
        f0 = float(np.asarray(evaluator(0.0)))
        if f0 != 0.0:
            raise ValidationError(f"custom symbol must vanish at 0, got f(0)={f0}")
        return Symbol(kind="custom", evaluator=evaluator, holder_beta=float(holder_beta))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "monomial":
            out = t**self.degree
        elif self.kind == "polynomial":
            # Horner with zero constant term
            out = np.zeros_like(t)
            for c in reversed(self.coefficients):
                out = t * (c + out)
        elif self.kind == "renyi":
            out = np.asarray(entropy_h(self.gamma, t))
        else:
            out = np.asarray(self.evaluator(t), dtype=float)
        return out if out.ndim else float(out)

    @property
    def value_at_one(self) -> float:
        if self.kind == "monomial":
            return 1.0
        if self.kind == "polynomial":
            return float(sum(self.coefficients))
        if self.kind == "renyi":
            return 0.0
        return float(np.asarray(self.evaluator(1.0)))

    @property
    def endpoint_holder(self) -> float:
        """Holder exponent governing the integrability of the I-integrand."""
        if self.kind == "renyi":
            return min(self.gamma, 1.0)
        if self.kind == "custom":
            return self.holder_beta
        return 1.0

    @property
    def label(self) -> str:
        if self.kind == "monomial":
            return f"m{self.degree}"
        if self.kind == "polynomial":
            return "poly:" + ",".join(repr(c) for c in self.coefficients)
        if self.kind == "renyi":
            return f"h{self.gamma:g}"
        return "custom"


def symbol_from_label(label: str) -> Symbol:
    """Parse a compact symbol spec: ``m<k>``, ``poly:c1,c2,...``, ``h<gamma>``."""
    label = label.strip()
    try:
        if label.startswith("poly:"):
            return Symbol.polynomial([float(c) for c in label[5:].split(",")])
        if label.startswith("m"):
            return Symbol.monomial(int(label[1:]))
        if label.startswith("h"):
            return Symbol.renyi(float(label[1:]))
    except (ValueError, ValidationError) as exc:
        raise ValidationError(f"bad symbol spec {label!r}: {exc}") from exc
    raise ValidationError(f"bad symbol spec {label!r} (want m<k>, poly:c1,..., or h<gamma>)")


def closed_form_I(f: Symbol) -> Optional[float]:
    """Closed-form value of the functional ``I`` when one is known.

    ``I(t^m) = -(1/4 pi^2) H_{m-1}`` (zero for ``m = 1``),
    ``I(h_gamma) = (1 + gamma)/(24 gamma)``, linear combinations for
    polynomials, ``None`` for custom symbols.
    """
    if f.kind == "monomial":
        return -_harmonic(f.degree - 1) / (4 * math.pi**2)
    if f.kind == "polynomial":
        return sum(
            c * (-_harmonic(m) / (4 * math.pi**2))
            for m, c in enumerate(f.coefficients)
        )
    if f.kind == "renyi":
        return (1.0 + f.gamma) / (24.0 * f.gamma)
    return None


# Gauss-Legendre node/weight cache used by the panel quadrature.
_GAUSS_CACHE: dict = {}


def _gauss(n: int):
    if n not in _GAUSS_CACHE:
        _GAUSS_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GAUSS_CACHE[n]


def _panel(fun, lo: float, hi: float):
    """Integrate fun on (lo, hi) with Gauss-24; return (value, error estimate)."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x24, w24 = _gauss(24)
    x12, w12 = _gauss(12)
    y24 = half * float(np.dot(w24, fun(mid + half * x24)))
    y12 = half * float(np.dot(w12, fun(mid + half * x12)))
    return y24, abs(y24 - y12)


def functional_I(f: Symbol, tol: float = 1e-10, max_panels_per_side: int = 1000) -> float:
    """Quadrature of ``I(f)`` with absolute accuracy ``tol``.

    The integrand ``(f(t) - t f(1)) / (t (1 - t))`` is smooth in the
    interior but merely Holder continuous (or log-singular, for ``h_1``)
    at the endpoints, so the rule places geometrically shrinking panels
    toward 0 and 1 and stops a side once its panel contributions fall
    below ``tol / 16``.  Each panel carries a Gauss order-halving error
    estimate; if the budget is exhausted or the estimates exceed ``tol``,
    a ``NumericsError`` carrying the achieved value is raised.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    f1 = f.value_at_one

    def integrand(t):
        return (f(t) - t * f1) / (t * (1.0 - t))

    total = 0.0
    err = 0.0
    for side in (0, 1):
        hi = 0.5
        converged = False
        for _ in range(max_panels_per_side):
            lo = hi / 2.0
            a, b = (lo, hi) if side == 0 else (1.0 - hi, 1.0 - lo)
            val, est = _panel(integrand, a, b)
            total += val
            err += est
            hi = lo
            if abs(val) < tol / 16.0 and hi < 2**-40:
                converged = True
                break
        if not converged:
            raise NumericsError(
                f"I-quadrature did not converge near endpoint {side} "
                f"(last panel width {hi:.3e})",
                achieved=total / (4 * math.pi**2),
            )
    result = total / (4 * math.pi**2)
    if err / (4 * math.pi**2) > tol:
        raise NumericsError(
            f"I-quadrature error estimate {err / (4 * math.pi**2):.3e} exceeds tol {tol:.1e}",
            achieved=result,
        )
    return result


def functional_value(f: Symbol, tol: float = 1e-10) -> float:
    """``I(f)`` via closed form when available, quadrature otherwise."""
    closed = closed_form_I(f)
    return closed if closed is not None else functional_I(f, tol=tol)


@dataclass(frozen=True)
class BoundCheckResult:
    """Outcome of the convolution-integrability check for one power ``m``."""

    m: int
    numeric_value: float
    bound: float
    passes: bool


def convolution_bound_check(m: int) -> BoundCheckResult:
    """Check ``int_R (2 K_0(2 pi |xi|))^m dxi < 2^m m!``.

    The integrand is the m-th power of the Fourier transform of the
    inverse Japanese bracket ``1/sqrt(1+t^2)``, so the integral equals the
    (m-1)-fold self-convolution of that function at 0.  For ``m = 1``
    Fourier inversion gives exactly 1; for ``m = 2`` Plancherel gives
    ``pi``.  ``K_0`` is the modified Bessel function of the second kind.
    """
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= 8:
        raise DomainError(f"convolution bound check supports 1 <= m <= 8, got {m!r}")

    def integrand(xi):
        return (2.0 * _bessel_k0(2.0 * math.pi * xi)) ** m

    # split at the log-singularity scale; quad's extrapolation handles the
    # integrable log^m endpoint at 0
    cut = 1.0 / (2 * math.pi)
    left, _ = integrate.quad(integrand, 0.0, cut, limit=200)
    right, _ = integrate.quad(integrand, cut, np.inf, limit=200)
    value = 2.0 * (left + right)
    bound = float(2**m * math.factorial(m))
    return BoundCheckResult(m=int(m), numeric_value=value, bound=bound, passes=value < bound)
