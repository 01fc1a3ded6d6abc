"""Path transforms: spatial inversion, its time-changed composition, and
time reversal from a last exit.

The composed inversion (rbz_transform) sends a path X to

    y_s = K(X_{eta(s)})   (planar, K the unit-circle inversion)
    y_s = -1 / X_{eta(s)} (1D)

with eta the inverse of the clock running at |X|^-2alpha.  Evaluated only at
grid images: the inverse clock at s_k = eta-cumulative[k] is exactly t_k, so
the transform is a relabeling of simulated states, never an interpolation.
The image's law is that of the process conditioned relative to the origin,
which is also reachable as a Doob h-transform; h_transform_estimate is the
second, independent route, kept separate so the two can be played against
each other in tests.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError, NoExitError, OriginError
from .exponents import StableParams, h_weight, planar_h_weight
from .path_engine import PathSkeleton, clock, first_hit_interval, last_exit, value_at

_PROVENANCES = ("rbz_planar", "rbz_1d", "reversal")


@dataclass(frozen=True)
class TransformedPath:
    skeleton: PathSkeleton
    provenance: str
    source_seed: int = -1

    def __post_init__(self):
        if self.provenance not in _PROVENANCES:
            raise DomainError(f"provenance must be one of {_PROVENANCES}, got {self.provenance!r}")


def kelvin(x: complex) -> complex:
    """Inversion through the unit circle, x / |x|^2; fixes the circle itself."""
    x = complex(x)
    if x == 0:
        raise OriginError("inversion undefined at the origin")
    return 1.0 / x.conjugate()


def rbz_transform(path: PathSkeleton, mode: str, alpha: float, source_seed: int = -1) -> TransformedPath:
    """Inversion composed with the -2alpha clock; new time axis is that clock."""
    if mode == "planar":
        if not path.is_planar:
            raise DomainError("planar mode needs a planar path")
    elif mode == "one_d":
        if path.is_planar:
            raise DomainError("one_d mode needs a 1D path")
    else:
        raise DomainError(f"mode must be 'planar' or 'one_d', got {mode!r}")
    eta = clock(path, "eta", alpha)  # raises OriginError on zero modulus
    if mode == "planar":
        values = path.values / np.abs(path.values) ** 2
    else:
        values = -1.0 / path.values
    skel = PathSkeleton(times=eta.cumulative, values=values, origin_flag=False)
    return TransformedPath(skeleton=skel, provenance=f"rbz_{'planar' if mode == 'planar' else '1d'}", source_seed=source_seed)


def h_transform_estimate(paths, f, t: float, mode: str, p: StableParams, epsilon=None) -> float:
    """Weighted Monte Carlo mean under the origin-conditioned law.

    Averages f(X_t) h(X_t)/h(x) over paths issued from a common x.  For the
    1D process with alpha in (1,2) the conditioning also kills at the origin
    hit, proxied by first entry into (-epsilon, epsilon); pass epsilon then.
    Other regimes never hit the origin, so no killing term appears.
    """
    paths = list(paths)
    if not paths:
        raise DomainError("need at least one path")
    if mode not in ("planar", "one_d"):
        raise DomainError(f"mode must be 'planar' or 'one_d', got {mode!r}")
    x0 = paths[0].values[0]
    if x0 == 0:
        raise OriginError("h-weighting needs a start away from the origin")
    if any(q.values[0] != x0 for q in paths):
        raise DomainError("all paths must be issued from the same start")
    kills = mode == "one_d" and p.alpha > 1.0
    if kills and epsilon is None:
        raise DomainError("alpha in (1,2) 1D conditioning needs an epsilon kill radius")
    if mode == "planar":
        h0 = planar_h_weight(x0, p.alpha)
    else:
        h0 = h_weight(float(x0), p)
    total = 0.0
    live_weight = 0.0
    for q in paths:
        if kills:
            hit = first_hit_interval(q, epsilon)
            if hit is not None and hit <= t:
                continue
        xt = value_at(q, t)
        w = (planar_h_weight(xt, p.alpha) if mode == "planar" else h_weight(float(xt), p)) / h0
        total += w * f(xt)
        live_weight += w
    if live_weight == 0.0:
        raise DegenerateError("every path was killed or carried zero weight")
    return total / len(paths)


def reverse_from_last_exit(path: PathSkeleton, a: float, source_seed: int = -1) -> TransformedPath:
    """The path run backwards from its last exit out of the ball of radius a.

    Output time s corresponds to source time l_a - s.  Grid values stand in
    for the left limits; shifting them by one index would break the exact
    double-reversal identity, so they are taken as-is.
    """
    le = last_exit(path, a)
    if le is None:
        raise NoExitError(f"path never enters radius {a}")
    idx = int(np.searchsorted(path.times, le))
    times = le - path.times[idx::-1]
    values = path.values[idx::-1]
    skel = PathSkeleton(times=times, values=values, origin_flag=False)
    return TransformedPath(skeleton=skel, provenance="reversal", source_seed=source_seed)
