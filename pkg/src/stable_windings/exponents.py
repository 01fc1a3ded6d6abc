"""Closed-form exponents, matrix rates, densities and limit constants.

All formulas are parametrized by (alpha, rho): the stability index in (0, 2)
and the positivity parameter rho = P(X_t > 0).  Admissibility means
alpha*rho and alpha*(1-rho) both lie in (0, 1), i.e. the process jumps in
both directions.  Values that are genuinely infinite (the alpha = 1 cases)
are returned as math.inf, never produced by overflow.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import gamma_real, log_gamma_complex, recip_gamma_real


@dataclass(frozen=True)
class StableParams:
    """Index/positivity pair with the two-sided-jumps admissibility check."""

    alpha: float
    rho: float

    def __post_init__(self):
        a, r = self.alpha, self.rho
        if not (0.0 < a < 2.0):
            raise DomainError(f"alpha must be in (0,2), got {a}")
        if not (0.0 < r < 1.0):
            raise DomainError(f"rho must be in (0,1), got {r}")
        if not (0.0 < a * r < 1.0 and 0.0 < a * (1.0 - r) < 1.0):
            raise DomainError(
                f"need alpha*rho and alpha*(1-rho) in (0,1); got {a * r}, {a * (1.0 - r)}"
            )

    @property
    def rho_hat(self) -> float:
        return 1.0 - self.rho


@dataclass(frozen=True)
class MatrixExponent:
    """2x2 matrix exponent of the modulated pair at a real argument.

    Rows/columns are indexed by the sign states (+1, -1), top-left = (+1, +1).
    kind is "direct" for the exponent of the process itself and "inverted"
    for the exponent of its spatial-inversion image.
    """

    entries: np.ndarray
    arg: float
    kind: str
    _IDX = {1: 0, -1: 1}

    def entry(self, i: int, j: int) -> float:
        return float(self.entries[self._IDX[i], self._IDX[j]])


# ---------------------------------------------------------------- planar side


def planar_Psi(z: float, alpha: float) -> complex:
    """Characteristic exponent of the log-radial part of the planar process.

    Psi(z) = 2^alpha G((alpha - iz)/2) G((2 + iz)/2) / (G(-iz/2) G((2 - alpha + iz)/2))

    The capital letter keeps it apart from the Laplace-side exponent below,
    which is its restriction to the imaginary axis.  Complex z is accepted
    so the exponent of the origin-conditioned process can be evaluated as
    planar_Psi(z + i(2 - alpha)).
    """
    _check_alpha(alpha)
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j  # reciprocal gamma vanishes at 0
    log_num = log_gamma_complex(0.5 * (alpha - 1j * z)) + log_gamma_complex(0.5 * (2.0 + 1j * z))
    log_den = log_gamma_complex(-0.5j * z) + log_gamma_complex(0.5 * (2.0 - alpha + 1j * z))
    return (2.0**alpha) * cmath.exp(log_num - log_den)


def planar_laplace_psi(u: float, alpha: float) -> float:
    """Laplace exponent of the log-radial part on the real strip (-2, alpha).

    Real-valued, convex, with roots exactly at u = 0 and u = alpha - 2.
    """
    _check_alpha(alpha)
    u = float(u)
    if not (-2.0 < u < alpha):
        raise DomainError(f"u must be in (-2, alpha) = (-2, {alpha}), got {u}")
    num = gamma_real(0.5 * (alpha - u)) * gamma_real(0.5 * (u + 2.0))
    rec = recip_gamma_real(-0.5 * u) * recip_gamma_real(0.5 * (u + 2.0 - alpha))
    return -(2.0**alpha) * num * rec + 0.0


def planar_clock_mean(alpha: float) -> float:
    """Almost-sure slope of the radial clock on the log-time scale."""
    _check_alpha(alpha)
    return (2.0**-alpha) * gamma_real(1.0 - 0.5 * alpha) / gamma_real(1.0 + 0.5 * alpha)


def planar_h_weight(x: complex, alpha: float) -> float:
    """Importance weight |x|^(alpha-2) of the conditioned planar process."""
    _check_alpha(alpha)
    r = abs(complex(x))
    if r == 0.0:
        raise DomainError("planar h-weight undefined at the origin")
    return r ** (alpha - 2.0)


# ------------------------------------------------------------------- 1D side


def map_exponent(z: float, p: StableParams, kind: str = "direct") -> MatrixExponent:
    """Matrix exponent of the sign-modulated log-radial pair at real z.

    kind "direct": valid on z in (-1, alpha).  kind "inverted" is the
    exponent after spatial inversion: valid on (-alpha, 1), and at z = 0 it
    equals the direct matrix with rho and 1-rho exchanged.
    """
    z = float(z)
    a, r, rh = p.alpha, p.rho, p.rho_hat
    if kind == "direct":
        if not (-1.0 < z < a):
            raise DomainError(f"direct exponent needs z in (-1, {a}), got {z}")
        pref = gamma_real(a - z) * gamma_real(1.0 + z)
        top = rh
        bot = r
        d_top = recip_gamma_real(a * rh - z) * recip_gamma_real(1.0 - a * rh + z)
        d_bot = recip_gamma_real(a * r - z) * recip_gamma_real(1.0 - a * r + z)
    elif kind == "inverted":
        if not (-a < z < 1.0):
            raise DomainError(f"inverted exponent needs z in ({-a}, 1), got {z}")
        pref = gamma_real(1.0 - z) * gamma_real(a + z)
        top = r
        bot = rh
        d_top = recip_gamma_real(1.0 - a * r - z) * recip_gamma_real(a * r + z)
        d_bot = recip_gamma_real(1.0 - a * rh - z) * recip_gamma_real(a * rh + z)
    else:
        raise DomainError(f"unknown kind {kind!r}")
    off_top = pref * recip_gamma_real(a * top) * recip_gamma_real(1.0 - a * top)
    off_bot = pref * recip_gamma_real(a * bot) * recip_gamma_real(1.0 - a * bot)
    entries = np.array(
        [[-pref * d_top, off_top], [off_bot, -pref * d_bot]], dtype=float
    )
    return MatrixExponent(entries=entries, arg=z, kind=kind)


def renewal_rate(p: StableParams) -> float:
    """Long-run rate of -1 -> +1 switches of the modulating chain."""
    a, r, rh = p.alpha, p.rho, p.rho_hat
    s, sh = math.sin(math.pi * a * r), math.sin(math.pi * a * rh)
    return gamma_real(a) * s * sh / (math.pi * (s + sh))


def clock_mean_1d(p: StableParams) -> float:
    """Mean inverse-power moment E|X_1|^(-alpha), the 1D log-clock slope.

    Finite for alpha < 1, math.inf at alpha = 1 (the moment explodes there),
    undefined above.
    """
    a, r, rh = p.alpha, p.rho, p.rho_hat
    if a > 1.0:
        raise DomainError(f"clock mean needs alpha <= 1, got {a}")
    if a == 1.0:
        return math.inf
    s, sh = math.sin(math.pi * a * r), math.sin(math.pi * a * rh)
    return (s + sh) / (gamma_real(1.0 + a) * math.sin(math.pi * a))


def upcrossing_constant(p: StableParams) -> float:
    """Almost-sure upcrossing count per unit log time; math.inf at alpha = 1.

    The absolute value in the denominator makes the one formula serve both
    the alpha < 1 and alpha > 1 regimes.
    """
    a, r, rh = p.alpha, p.rho, p.rho_hat
    if a == 1.0:
        return math.inf
    s, sh = math.sin(math.pi * a * r), math.sin(math.pi * a * rh)
    return s * sh / (a * math.pi * abs(math.sin(math.pi * a)))


def zolotarev_moment(s: float, p: StableParams) -> float:
    """One-sided moment E[X_1^s; X_1 > 0] on the strip s in (-1, alpha).

    Evaluated in the pole-free form sin(pi rho s) G(s) G(1 - s/alpha) / pi,
    which extends continuously to s = 0 with value rho.
    """
    a, r = p.alpha, p.rho
    s = float(s)
    if not (-1.0 < s < a):
        raise DomainError(f"s must be in (-1, alpha) = (-1, {a}), got {s}")
    if s == 0.0:
        return r
    return math.sin(math.pi * r * s) * gamma_real(s) * gamma_real(1.0 - s / a) / math.pi


def conditioned_clock_mean(p: StableParams) -> float:
    """E|X_1|^(-alpha) under the law conditioned to avoid the origin, alpha in (1,2)."""
    a, r, rh = p.alpha, p.rho, p.rho_hat
    if not (1.0 < a < 2.0):
        raise DomainError(f"conditioned clock mean needs alpha in (1,2), got {a}")
    s, sh = math.sin(math.pi * a * r), math.sin(math.pi * a * rh)
    return gamma_real(-a) * (s + sh) / math.pi


def h_weight(x: float, p: StableParams) -> float:
    """Sign-weighted harmonic function used to condition the 1D process."""
    x = float(x)
    if x == 0.0:
        raise DomainError("h-weight undefined at 0")
    a = p.alpha
    s = math.sin(math.pi * a * p.rho_hat) if x > 0.0 else math.sin(math.pi * a * p.rho)
    return s * abs(x) ** (a - 1.0)


def entry_density(y: float, p: StableParams) -> float:
    """Density on (-1,1) of the first-entry position from far away, alpha in (1,2)."""
    a, r, rh = p.alpha, p.rho, p.rho_hat
    if not (1.0 < a < 2.0):
        raise DomainError(f"entry density needs alpha in (1,2), got {a}")
    y = float(y)
    if not (-1.0 < y < 1.0):
        raise DomainError(f"y must be in (-1,1), got {y}")
    c = entry_density_norm(p)
    return c * (1.0 + y) ** (-a * r) * (1.0 - y) ** (-a * rh)


def entry_density_norm(p: StableParams) -> float:
    """Normalizing constant of entry_density (reciprocal Beta mass)."""
    a, r, rh = p.alpha, p.rho, p.rho_hat
    if not (1.0 < a < 2.0):
        raise DomainError(f"entry density needs alpha in (1,2), got {a}")
    return (
        2.0 ** (a - 1.0)
        * gamma_real(2.0 - a)
        * recip_gamma_real(1.0 - a * rh)
        * recip_gamma_real(1.0 - a * r)
    )


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 2.0):
        raise DomainError(f"alpha must be in (0,2), got {alpha}")


def constant_catalog(p: StableParams) -> dict:
    """Every named constant defined at these parameters, for the CLI."""
    out = {
        "renewal_rate": renewal_rate(p),
        "upcrossing_constant": upcrossing_constant(p),
        "planar_clock_mean": planar_clock_mean(p.alpha),
    }
    if p.alpha <= 1.0:
        out["clock_mean_1d"] = clock_mean_1d(p)
    if 1.0 < p.alpha < 2.0:
        out["conditioned_clock_mean"] = conditioned_clock_mean(p)
        out["entry_density_norm"] = entry_density_norm(p)
    return out
