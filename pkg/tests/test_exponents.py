import math
import random

import numpy as np
import pytest
from scipy.integrate import quad

from oracles import chain_switch_rate, oracle_gamma, oracle_log_gamma
from stable_windings.errors import DomainError
from stable_windings.exponents import (
    MatrixExponent,
    StableParams,
    clock_mean_1d,
    conditioned_clock_mean,
    constant_catalog,
    entry_density,
    entry_density_norm,
    h_weight,
    map_exponent,
    planar_Psi,
    planar_clock_mean,
    planar_h_weight,
    planar_laplace_psi,
    renewal_rate,
    upcrossing_constant,
    zolotarev_moment,
)


def random_admissible(rng: random.Random) -> StableParams:
    a = rng.uniform(0.05, 1.95)
    if a <= 1.0:
        r = rng.uniform(0.02, 0.98)
    else:
        lo, hi = 1.0 - 1.0 / a, 1.0 / a
        r = rng.uniform(lo + 0.01, hi - 0.01)
    return StableParams(a, r)


class TestStableParams:
    def test_accepts_admissible(self):
        p = StableParams(1.5, 0.5)
        assert p.rho_hat == 0.5

    @pytest.mark.parametrize(
        "a,r",
        [(0.0, 0.5), (2.0, 0.5), (2.5, 0.5), (-0.3, 0.5), (1.0, 0.0), (1.0, 1.0), (1.5, 0.8), (1.5, 0.2), (1.9, 0.4)],
    )
    def test_rejects_bad(self, a, r):
        with pytest.raises(DomainError):
            StableParams(a, r)

    def test_frozen(self):
        p = StableParams(0.5, 0.5)
        with pytest.raises(AttributeError):
            p.alpha = 0.7


class TestPlanarPsi:
    def test_zero(self):
        assert planar_Psi(0.0, 1.3) == 0

    @pytest.mark.parametrize("z", [0.3, 1.1, 2.7])
    @pytest.mark.parametrize("alpha", [0.6, 1.0, 1.3])
    def test_inversion_shift_identity(self, z, alpha):
        # exponent of the origin-conditioned image vs the sign-flipped one
        lhs = planar_Psi(z + 1j * (2.0 - alpha), alpha)
        rhs = planar_Psi(-z, alpha)
        assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))

    def test_oracle_cross_check(self):
        import cmath

        z, a = 1.0, 1.0
        want = (2.0**a) * cmath.exp(
            oracle_log_gamma((a - 1j * z) / 2)
            + oracle_log_gamma((2 + 1j * z) / 2)
            - oracle_log_gamma(-1j * z / 2)
            - oracle_log_gamma((2 - a + 1j * z) / 2)
        )
        got = planar_Psi(z, a)
        assert abs(got - want) < 1e-13 * abs(want)

    def test_real_arg_conjugacy(self):
        for z in (0.4, 2.2, 7.5):
            assert planar_Psi(-z, 1.4) == pytest.approx(planar_Psi(z, 1.4).conjugate(), rel=1e-12)

    def test_bad_alpha(self):
        with pytest.raises(DomainError):
            planar_Psi(1.0, 2.0)


class TestPlanarLaplacePsi:
    def test_roots(self):
        for a in (0.3, 0.8, 1.2, 1.3, 1.7):
            assert abs(planar_laplace_psi(0.0, a)) < 1e-10
            assert abs(planar_laplace_psi(a - 2.0, a)) < 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            planar_laplace_psi(-2.0, 0.8)
        with pytest.raises(DomainError):
            planar_laplace_psi(0.8, 0.8)

    def test_convexity(self):
        a = 0.8
        us = np.linspace(-1.9, a - 0.01, 50)
        vals = np.array([planar_laplace_psi(float(u), a) for u in us])
        second = vals[2:] - 2 * vals[1:-1] + vals[:-2]
        assert (second > 0).all()

    def test_matches_imaginary_axis_restriction(self):
        # psi(u) = -Psi(-iu)
        for a in (0.5, 1.3):
            for u in (-1.2, -0.4, 0.2, a - 0.05):
                direct = planar_laplace_psi(u, a)
                via_psi = -planar_Psi(-1j * u, a)
                assert abs(via_psi.imag) < 1e-12 * max(1.0, abs(direct))
                assert direct == pytest.approx(via_psi.real, rel=1e-12, abs=1e-12)


class TestMapExponent:
    def test_q_matrix_rows(self):
        F0 = map_exponent(0.0, StableParams(0.5, 0.5))
        assert abs(F0.entries.sum(axis=1)).max() < 1e-12
        assert F0.entry(1, -1) >= 0 and F0.entry(-1, 1) >= 0

    def test_frozen_off_diagonal(self):
        F0 = map_exponent(0.0, StableParams(0.5, 0.5))
        want = oracle_gamma(0.5) * math.sin(math.pi / 4) / math.pi
        assert F0.entry(1, -1) == pytest.approx(want, rel=1e-13)
        assert F0.entry(1, -1) == pytest.approx(0.39894228, rel=1e-7)

    def test_inverted_swaps_roles(self):
        p = StableParams(1.3, 0.4)
        inv = map_exponent(0.0, p, kind="inverted")
        swapped = map_exponent(0.0, StableParams(1.3, 0.6), kind="direct")
        assert np.max(np.abs(inv.entries - swapped.entries)) < 1e-12

    def test_q_matrix_random_params(self):
        rng = random.Random(20240817)
        for _ in range(50):
            p = random_admissible(rng)
            F0 = map_exponent(0.0, p)
            assert abs(F0.entries.sum(axis=1)).max() < 1e-12
            G0 = map_exponent(0.0, p, kind="inverted")
            swapped = map_exponent(0.0, StableParams(p.alpha, p.rho_hat))
            assert np.max(np.abs(G0.entries - swapped.entries)) < 1e-12

    def test_strips(self):
        p = StableParams(0.7, 0.5)
        with pytest.raises(DomainError):
            map_exponent(0.7, p)
        with pytest.raises(DomainError):
            map_exponent(-1.0, p)
        with pytest.raises(DomainError):
            map_exponent(-0.7, p, kind="inverted")
        with pytest.raises(DomainError):
            map_exponent(0.0, p, kind="sideways")
        # valid edges of the other strip
        map_exponent(0.9, p, kind="inverted")
        map_exponent(-0.9, p)

    def test_kind_and_arg_recorded(self):
        m = map_exponent(0.25, StableParams(0.7, 0.5), kind="inverted")
        assert isinstance(m, MatrixExponent)
        assert m.arg == 0.25 and m.kind == "inverted"


class TestRenewalRate:
    def test_frozen(self):
        assert renewal_rate(StableParams(1.0, 0.5)) == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-13)
        assert renewal_rate(StableParams(0.5, 0.5)) == pytest.approx(0.19947114, rel=1e-7)

    def test_harmonic_mean_of_switch_rates(self):
        rng = random.Random(7)
        for _ in range(20):
            p = random_admissible(rng)
            F0 = map_exponent(0.0, p)
            lam_up, lam_dn = F0.entry(1, -1), F0.entry(-1, 1)
            want = lam_up * lam_dn / (lam_up + lam_dn)
            assert renewal_rate(p) == pytest.approx(want, rel=1e-12)

    def test_chain_simulation_oracle(self):
        # long two-state chain: observed down-to-up switches per unit time
        p = StableParams(0.5, 0.5)
        F0 = map_exponent(0.0, p)
        rate = chain_switch_rate(F0.entry(1, -1), F0.entry(-1, 1), t_max=2.0e5, seed=91)
        assert rate == pytest.approx(renewal_rate(p), rel=0.02)


class TestClockMean1d:
    def test_frozen(self):
        want = math.sqrt(2.0) / oracle_gamma(1.5)
        assert clock_mean_1d(StableParams(0.5, 0.5)) == pytest.approx(want, rel=1e-13)

    def test_infinite_at_one(self):
        assert clock_mean_1d(StableParams(1.0, 0.3)) == math.inf

    def test_domain(self):
        with pytest.raises(DomainError):
            clock_mean_1d(StableParams(1.2, 0.5))

    def test_product_identity(self):
        p = StableParams(0.7, 0.3)
        lhs = renewal_rate(p) * clock_mean_1d(p)
        assert lhs == pytest.approx(upcrossing_constant(p), rel=1e-12)


class TestUpcrossingConstant:
    def test_frozen(self):
        assert upcrossing_constant(StableParams(0.5, 0.5)) == pytest.approx(1.0 / math.pi, rel=1e-13)
        assert upcrossing_constant(StableParams(1.5, 0.5)) == pytest.approx(1.0 / (3.0 * math.pi), rel=1e-13)

    def test_infinite_at_one(self):
        assert upcrossing_constant(StableParams(1.0, 0.6)) == math.inf


class TestPlanarClockMean:
    def test_frozen(self):
        assert planar_clock_mean(1.0) == pytest.approx(1.0, rel=1e-14)
        want = 2.0**-0.5 * oracle_gamma(0.75) / oracle_gamma(1.25)
        assert planar_clock_mean(0.5) == pytest.approx(want, rel=1e-13)
        assert planar_clock_mean(0.5) == pytest.approx(0.95597759, rel=1e-7)

    def test_small_alpha_limit(self):
        assert planar_clock_mean(1e-7) == pytest.approx(1.0, abs=1e-5)

    def test_domain(self):
        with pytest.raises(DomainError):
            planar_clock_mean(2.0)


class TestZolotarevMoment:
    def test_continuity_at_zero(self):
        p = StableParams(0.5, 0.3)
        assert zolotarev_moment(0.0, p) == 0.3
        assert zolotarev_moment(1e-9, p) == pytest.approx(0.3, abs=1e-8)

    def test_frozen(self):
        p = StableParams(0.5, 0.5)
        want = (math.sin(-math.pi / 4) / math.sin(-math.pi / 2)) * oracle_gamma(2.0) / oracle_gamma(1.5)
        assert zolotarev_moment(-0.5, p) == pytest.approx(want, rel=1e-13)
        assert zolotarev_moment(-0.5, p) == pytest.approx(0.79788456, rel=1e-7)

    def test_two_tail_decomposition(self):
        a, r = 0.6, 0.4
        lhs = zolotarev_moment(-a, StableParams(a, r)) + zolotarev_moment(-a, StableParams(a, 1.0 - r))
        assert lhs == pytest.approx(clock_mean_1d(StableParams(a, r)), rel=1e-12)

    def test_domain(self):
        p = StableParams(0.5, 0.5)
        with pytest.raises(DomainError):
            zolotarev_moment(0.5, p)
        with pytest.raises(DomainError):
            zolotarev_moment(-1.0, p)


class TestConditionedClockMean:
    def test_frozen(self):
        p = StableParams(1.5, 0.5)
        want = oracle_gamma(-1.5) * 2.0 * math.sin(0.75 * math.pi) / math.pi
        assert conditioned_clock_mean(p) == pytest.approx(want, rel=1e-13)
        assert conditioned_clock_mean(p) == pytest.approx(1.06384608, rel=1e-7)

    def test_positive(self):
        rng = random.Random(11)
        for _ in range(20):
            a = rng.uniform(1.05, 1.95)
            lo, hi = 1.0 - 1.0 / a, 1.0 / a
            p = StableParams(a, rng.uniform(lo + 0.01, hi - 0.01))
            assert conditioned_clock_mean(p) > 0.0

    def test_product_identity(self):
        p = StableParams(1.5, 0.5)
        lhs = renewal_rate(p) * conditioned_clock_mean(p)
        assert lhs == pytest.approx(upcrossing_constant(p), rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            conditioned_clock_mean(StableParams(0.9, 0.5))


class TestHWeight:
    def test_substitution(self):
        p = StableParams(0.7, 0.3)
        assert h_weight(1.0, p) == pytest.approx(math.sin(math.pi * 0.7 * 0.7), rel=1e-14)
        assert h_weight(-1.0, p) == pytest.approx(math.sin(math.pi * 0.7 * 0.3), rel=1e-14)

    def test_homogeneity(self):
        p = StableParams(1.5, 0.4)
        for x in (0.3, -2.0):
            for c in (0.5, 7.0):
                assert h_weight(c * x, p) == pytest.approx(c ** (p.alpha - 1.0) * h_weight(x, p), rel=1e-14)

    def test_origin(self):
        with pytest.raises(DomainError):
            h_weight(0.0, StableParams(0.5, 0.5))


class TestPlanarHWeight:
    def test_values(self):
        assert planar_h_weight(1.0 + 0j, 1.3) == 1.0
        assert planar_h_weight(0.0 + 2.0j, 1.0) == pytest.approx(0.5, rel=1e-14)

    def test_homogeneity(self):
        x = 1.0 + 2.0j
        a = 0.7
        assert planar_h_weight(3.0 * x, a) == pytest.approx(3.0 ** (a - 2.0) * planar_h_weight(x, a), rel=1e-13)

    def test_origin(self):
        with pytest.raises(DomainError):
            planar_h_weight(0j, 1.5)


class TestEntryDensity:
    def test_frozen_center(self):
        p = StableParams(1.5, 0.5)
        want = 2.0**0.5 * oracle_gamma(0.5) / oracle_gamma(0.25) ** 2
        assert entry_density(0.0, p) == pytest.approx(want, rel=1e-13)
        assert entry_density(0.0, p) == pytest.approx(0.19068994, rel=1e-7)

    def test_normalization_quadrature(self):
        for p in (StableParams(1.5, 0.5), StableParams(1.3, 0.6)):
            total, err = quad(lambda y: entry_density(y, p), -1.0, 1.0)
            assert abs(total - 1.0) < 1e-8

    def test_norm_matches_beta_identity(self):
        for p in (StableParams(1.5, 0.5), StableParams(1.7, 0.45)):
            a, r, rh = p.alpha, p.rho, p.rho_hat
            beta_mass = 2.0 ** (1.0 - a) * oracle_gamma(1.0 - a * r) * oracle_gamma(1.0 - a * rh) / oracle_gamma(2.0 - a)
            assert entry_density_norm(p) * beta_mass == pytest.approx(1.0, rel=1e-12)

    def test_divergence_at_right_edge(self):
        p = StableParams(1.5, 0.5)
        vals = [entry_density(y, p) for y in (0.9, 0.99, 0.999, 0.9999)]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert vals[-1] > 1e2 * entry_density(0.0, p)

    def test_domain(self):
        with pytest.raises(DomainError):
            entry_density(1.0, StableParams(1.5, 0.5))
        with pytest.raises(DomainError):
            entry_density(0.0, StableParams(0.9, 0.5))


class TestConstantCatalog:
    def test_regime_split(self):
        low = constant_catalog(StableParams(0.5, 0.5))
        high = constant_catalog(StableParams(1.5, 0.5))
        assert "clock_mean_1d" in low and "clock_mean_1d" not in high
        assert "conditioned_clock_mean" in high and "conditioned_clock_mean" not in low
        assert low["upcrossing_constant"] == pytest.approx(1.0 / math.pi, rel=1e-13)
