"""Exact stable increment generation with splittable, reproducible streams.

Three samplers share one core transform (Chambers-Mallows-Stuck):

  1D      X = dt^(1/alpha) * cms(alpha, B),  B = pi*(rho - 1/2)
  subord  Z = dt^(1/a) * cms(a, pi/2),       Kanter's case, a in (0,1)
  planar  X = sqrt(2 Z) * (N1 + i N2),       Z with index alpha/2

The 1D normalization is fixed so that the characteristic exponent of X_1 is
|z|^alpha * exp(i pi alpha (1/2 - rho) sign z), which makes P(X_t > 0) = rho
exactly.  Planar increments compose the alpha/2 subordinator with a Gaussian
so the exponent is exactly |z|^alpha; no asymptotic approximation anywhere.

Randomness: every stream is a Philox generator keyed by (seed, stream_id).
Give each path its own stream_id and results cannot depend on scheduling.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .exponents import StableParams, map_exponent

# uniforms of exactly 0 occur with probability 2^-53; nudge them off the
# log singularity instead of poisoning a batch with inf
_TINY = 1e-300


class RngStream:
    """Single-owner uniform source, reproducible from (seed, stream_id)."""

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self._gen = np.random.Generator(np.random.Philox(ss))

    def uniforms(self, n: int) -> np.ndarray:
        return self._gen.random(int(n))


@dataclass(frozen=True)
class StableIncrementSpec:
    """What to draw: parameters, step size, and dimension tag."""

    params: StableParams
    dt: float
    dimension: str = "one"

    def __post_init__(self):
        if not (self.dt > 0.0):
            raise DomainError(f"dt must be positive, got {self.dt}")
        if self.dimension not in ("one", "two-isotropic"):
            raise DomainError(f"dimension must be 'one' or 'two-isotropic', got {self.dimension!r}")

    def draw(self, rng: RngStream, n=None):
        if self.dimension == "one":
            return sample_stable_1d(rng, self.params, self.dt, n)
        return sample_stable_planar(rng, self.params.alpha, self.dt, n)


def skewness_from_positivity(p: StableParams) -> float:
    """beta with rho = 1/2 + arctan(beta tan(pi alpha/2)) / (pi alpha)."""
    a = p.alpha
    if a == 1.0:
        if p.rho != 0.5:
            raise DomainError("alpha = 1 carries no skewness parameter; rho fixes a drift instead")
        return 0.0
    return math.tan(math.pi * a * (p.rho - 0.5)) / math.tan(math.pi * a / 2.0)


def positivity_from_skewness(alpha: float, beta: float) -> float:
    if not (0.0 < alpha < 2.0) or alpha == 1.0:
        raise DomainError(f"need alpha in (0,1) or (1,2), got {alpha}")
    if not (-1.0 <= beta <= 1.0):
        raise DomainError(f"beta must lie in [-1,1], got {beta}")
    return 0.5 + math.atan(beta * math.tan(math.pi * alpha / 2.0)) / (math.pi * alpha)


def _cms_core(alpha: float, b: float, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Unit stable variates from V ~ U(-pi/2, pi/2) and W ~ Exp(1)."""
    inv = 1.0 / alpha
    num = np.sin(alpha * (b + v))
    return (
        num
        / np.cos(v) ** inv
        * (np.cos(alpha * b + (alpha - 1.0) * v) / w) ** ((1.0 - alpha) * inv)
    )


def sample_stable_1d(rng: RngStream, p: StableParams, dt: float, n=None):
    """Increment(s) of the 1D process over time dt; scalar when n is None."""
    if not (dt > 0.0):
        raise DomainError(f"dt must be positive, got {dt}")
    m = 1 if n is None else int(n)
    a, r = p.alpha, p.rho
    if a == 1.0:
        u = rng.uniforms(m)
        x = dt * (math.sin(math.pi * r) * np.tan(math.pi * (u - 0.5)) - math.cos(math.pi * r))
    else:
        # interleaved consumption: draw k owns uniforms (2k, 2k+1), so a
        # batch is prefix-stable under enlargement
        u = rng.uniforms(2 * m).reshape(m, 2)
        v = math.pi * (u[:, 0] - 0.5)
        w = -np.log(np.maximum(u[:, 1], _TINY))
        x = dt ** (1.0 / a) * _cms_core(a, math.pi * (r - 0.5), v, w)
    return float(x[0]) if n is None else x


def sample_subordinator(rng: RngStream, alpha_half: float, dt: float, n=None):
    """Subordinator increment(s) with Laplace exponent dt * lambda^alpha_half."""
    if not (0.0 < alpha_half < 1.0):
        raise DomainError(f"subordinator index must be in (0,1), got {alpha_half}")
    if not (dt > 0.0):
        raise DomainError(f"dt must be positive, got {dt}")
    m = 1 if n is None else int(n)
    u = rng.uniforms(2 * m).reshape(m, 2)
    v = math.pi * (u[:, 0] - 0.5)
    w = -np.log(np.maximum(u[:, 1], _TINY))
    z = dt ** (1.0 / alpha_half) * _cms_core(alpha_half, math.pi / 2.0, v, w)
    return float(z[0]) if n is None else z


def sample_stable_planar(rng: RngStream, alpha: float, dt: float, n=None):
    """Isotropic planar increment(s) as complex numbers, exponent dt |z|^alpha."""
    if not (0.0 < alpha < 2.0):
        raise DomainError(f"alpha must be in (0,2), got {alpha}")
    if not (dt > 0.0):
        raise DomainError(f"dt must be positive, got {dt}")
    m = 1 if n is None else int(n)
    # draw k owns uniforms (4k..4k+3): subordinator pair, then Box-Muller pair
    u = rng.uniforms(4 * m).reshape(m, 4)
    v = math.pi * (u[:, 0] - 0.5)
    w = -np.log(np.maximum(u[:, 1], _TINY))
    s = dt ** (2.0 / alpha) * _cms_core(0.5 * alpha, math.pi / 2.0, v, w)
    radius = np.sqrt(-2.0 * np.log(np.maximum(u[:, 2], _TINY)))
    angle = 2.0 * math.pi * u[:, 3]
    x = np.sqrt(2.0 * s) * radius * (np.cos(angle) + 1j * np.sin(angle))
    return complex(x[0]) if n is None else x


def simulate_markov_chain_J(rng: RngStream, p: StableParams, t_max: float, start_state: int = 1):
    """Exact trajectory of the modulating 2-state chain up to t_max.

    Returns [(0.0, start_state), (t1, s1), ...]: every switch time with the
    state entered.  Rates are read off the matrix exponent at 0.
    """
    if start_state not in (1, -1):
        raise DomainError(f"start_state must be +1 or -1, got {start_state}")
    if not (t_max > 0.0):
        raise DomainError(f"t_max must be positive, got {t_max}")
    q = map_exponent(0.0, p)
    rate = {1: q.entry(1, -1), -1: q.entry(-1, 1)}
    out = [(0.0, start_state)]
    t, state = 0.0, start_state
    # states alternate, so draw holding times in blocks of pairs
    block = max(256, int(t_max * (rate[1] + rate[-1])))
    while t <= t_max:
        holds = -np.log(np.maximum(rng.uniforms(block), _TINY))
        for k in range(block):
            t += holds[k] / rate[state]
            if t > t_max:
                return out
            state = -state
            out.append((t, state))
    return out


def switch_count(trajectory, into_state: int = 1) -> int:
    """Number of switches into the given state (initial point not counted)."""
    return sum(1 for _, s in trajectory[1:] if s == into_state)
