import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdistinguish import metrics as met
from qdistinguish import orbits as orb
from qdistinguish.errors import DimensionTooLarge, IndexOutOfRange, InvalidExponent
from qdistinguish.numerics import haar_unitaries, random_density, random_hermitian
from qdistinguish.states import Spectrum, diag_state

seeds = st.integers(0, 2**32 - 1)


def _spectrum_pair(seed, n):
    rng = np.random.default_rng(seed)
    p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
    # exercise rank-deficient spectra too
    if rng.random() < 0.3:
        p[rng.integers(n)] = 0
        p /= p.sum()
    return p, q, rng


def _rotated(p, q, us):
    rho1 = np.diag(p).astype(complex)
    rho2 = (us * q[None, None, :]) @ np.conj(np.swapaxes(us, -1, -2))
    return np.broadcast_to(rho1, rho2.shape), rho2


class TestFidelityBounds:
    def test_maximally_mixed(self):
        assert orb.fidelity_orbit_bounds([0.5, 0.5], [0.5, 0.5]) == pytest.approx((1, 1))

    def test_orthogonal_pure(self):
        assert orb.fidelity_orbit_bounds([1, 0], [0, 1]) == pytest.approx((0, 1))

    @pytest.mark.parametrize("seed", range(3))
    def test_monte_carlo_dim4(self, seed):
        p, q, rng = _spectrum_pair(seed, 4)
        lo, hi = orb.fidelity_orbit_bounds(p, q)
        f = met.fidelity(*_rotated(p, q, haar_unitaries(4, 1000, rng)))
        assert f.min() >= lo - 1e-9 and f.max() <= hi + 1e-9


class TestBuresBounds:
    def test_point_orbit(self):
        lo, hi = orb.bures_orbit_bounds([1, 0], [0.5, 0.5])
        assert lo == pytest.approx(math.sqrt(2 - math.sqrt(2)), abs=1e-12)
        assert hi == pytest.approx(lo, abs=1e-12)

    def test_equal_spectra(self):
        assert orb.bures_orbit_bounds([0.2, 0.3, 0.5], [0.5, 0.2, 0.3])[0] == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_monte_carlo(self, n):
        p, q, rng = _spectrum_pair(n, n)
        lo, hi = orb.bures_orbit_bounds(p, q)
        d = met.d_bures(*_rotated(p, q, haar_unitaries(n, 1000, rng)))
        assert d.min() >= lo - 1e-8 and d.max() <= hi + 1e-8


class TestTraceBounds:
    def test_two_level(self):
        assert orb.trace_orbit_bounds([0.7, 0.3], [0.6, 0.4]) == pytest.approx((0.1, 0.3), abs=1e-15)

    def test_equal(self):
        assert orb.trace_orbit_bounds([0.1, 0.9], [0.9, 0.1])[0] == 0

    def test_orthogonal_capable(self):
        assert orb.trace_orbit_bounds([1, 0, 0], [0, 0.3, 0.7])[1] == pytest.approx(1)

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_monte_carlo(self, n):
        p, q, rng = _spectrum_pair(10 + n, n)
        lo, hi = orb.trace_orbit_bounds(p, q)
        d = met.d_trace(*_rotated(p, q, haar_unitaries(n, 500, rng)))
        assert d.min() >= lo - 1e-8 and d.max() <= hi + 1e-8


def test_bounds_accept_batches():
    ps = np.array([[0.7, 0.3], [0.5, 0.5]])
    qs = np.array([[0.6, 0.4], [1.0, 0.0]])
    lo, hi = orb.trace_orbit_bounds(ps, qs)
    np.testing.assert_allclose(lo, [0.1, 0.5])
    np.testing.assert_allclose(hi, [0.3, 0.5])


@given(st.integers(2, 6), seeds)
@settings(max_examples=60, deadline=None)
def test_bhattacharyya_ordering(n, seed):
    p, q, _ = _spectrum_pair(seed, n)
    up = np.sort(p)
    assert met.bhattacharyya(up, np.sort(q)) >= met.bhattacharyya(up, np.sort(q)[::-1]) - 1e-15


@given(st.integers(2, 6), seeds, st.sampled_from(["trace", "bures"]))
@settings(max_examples=80, deadline=None)
def test_permutations_attain_closed_forms(n, seed, metric):
    p, q, _ = _spectrum_pair(seed, n)
    lo, hi = orb.orbit_bounds(p, q, metric)
    # oracle independent of permutation_extremes: explicit loop over itertools
    vals = [met.classical_distance(metric, p, q[list(perm)]) for perm in itertools.permutations(range(n))]
    assert min(vals) == pytest.approx(lo, abs=1e-9)
    assert max(vals) == pytest.approx(hi, abs=1e-9)


class TestOrbitExtremes:
    def test_two_level_trace(self):
        r = orb.orbit_extremes([0.7, 0.3], [0.6, 0.4], "trace")
        assert r.oracle_min == pytest.approx(0.1) and r.argmin_permutation == (0, 1)
        assert r.oracle_max == pytest.approx(0.3) and r.argmax_permutation == (1, 0)
        assert r.violations() == []

    def test_bures_equal(self):
        r = orb.orbit_extremes([0.2, 0.8], [0.8, 0.2], "bures", haar_samples=50, seed=1)
        assert r.oracle_min == pytest.approx(0, abs=1e-9)
        assert r.violations() == []

    def test_degenerate_tie_lexicographic(self):
        r = orb.orbit_extremes([0.5, 0.5, 0.0], [0.5, 0.5, 0.0], "trace")
        assert r.argmin_permutation == (0, 1, 2)
        assert r.argmax_permutation == (0, 2, 1)

    @pytest.mark.parametrize("seed", range(4))
    def test_hs_sorted_spectra_equality(self, seed):
        p, q, _ = _spectrum_pair(seed, 4)
        r = orb.orbit_extremes(p, q, "hs", haar_samples=300, seed=seed)
        assert r.oracle_min == pytest.approx(r.lower, abs=1e-9)
        assert r.oracle_max == pytest.approx(r.upper, abs=1e-9)

    def test_refinement_stays_inside(self):
        p, q, _ = _spectrum_pair(7, 3)
        r = orb.orbit_extremes(p, q, "bures", haar_samples=200, seed=7)
        assert r.violations() == []
        assert r.argmin_unitary is not None and r.argmax_unitary is not None

    def test_json_keys(self):
        d = orb.orbit_extremes([0.7, 0.3], [0.6, 0.4]).to_dict()
        assert list(d) == ["metric", "lower", "upper", "oracle_min", "oracle_max", "argmin_perm", "argmax_perm",
                           "samples", "seed"]

    def test_cap(self):
        with pytest.raises(DimensionTooLarge):
            orb.permutation_extremes(np.ones(9) / 9, np.ones(9) / 9, "trace")

    def test_violations_detect_mismatch(self):
        r = orb.orbit_extremes([0.7, 0.3], [0.6, 0.4])
        r.oracle_max = 0.5
        assert r.violations()


class TestTraceUnitMax:
    def test_identity(self):
        analytic, best, u = orb.trace_unitary_max_check(np.eye(3), 10, 0)
        assert analytic == pytest.approx(3)
        np.testing.assert_allclose(u, np.eye(3), atol=1e-12)
        assert best <= 3 + 1e-9

    def test_sign_flip(self):
        a = np.diag([-1.0, 2.0]) / 3
        analytic, _, u = orb.trace_unitary_max_check(a, 0)
        assert analytic == pytest.approx(1)
        np.testing.assert_allclose(u, np.diag([-1, 1]), atol=1e-12)

    @given(st.integers(1, 6), seeds)
    @settings(max_examples=40, deadline=None)
    def test_maximizer_attains_and_search_does_not_exceed(self, n, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        analytic, best, u = orb.trace_unitary_max_check(a, 500, rng)
        assert abs(abs(np.trace(u @ a)) - analytic) <= 1e-9
        assert best <= analytic + 1e-9

    def test_gap_shrinks_with_samples(self):
        a = np.random.default_rng(3).standard_normal((3, 3))
        gaps = [orb.trace_unitary_max_check(a, k, 5)[0] - orb.trace_unitary_max_check(a, k, 5)[1]
                for k in (10, 10_000)]
        assert 0 <= gaps[1] < gaps[0]


class TestVonNeumann:
    def test_identity(self):
        assert orb.von_neumann_bound(np.eye(4), np.eye(4)) == pytest.approx((4, 4))

    def test_aligned_diagonals(self):
        lhs, rhs = orb.von_neumann_bound(np.diag([0.5, 0.3, 0.2]), np.diag([0.6, 0.3, 0.1]))
        assert abs(lhs - rhs) <= 1e-12

    @given(st.integers(2, 6), seeds)
    @settings(max_examples=60, deadline=None)
    def test_inequality(self, n, seed):
        rng = np.random.default_rng(seed)
        a, b = (rng.standard_normal((2, n, n)) + 1j * rng.standard_normal((2, n, n)))
        lhs, rhs = orb.von_neumann_bound(a, b)
        assert lhs <= rhs + 1e-9


class TestTraceProduct:
    def test_s_t_one(self, rng):
        rho, sigma = random_density(3, seed=rng), random_density(3, seed=rng)
        lo, mid, hi = orb.trace_product_bounds(rho, sigma)
        assert mid == pytest.approx(np.trace(rho @ sigma).real, abs=1e-12)
        assert lo <= mid + 1e-9 <= hi + 2e-9

    def test_square_roots(self, rng):
        p, q = np.array([0.1, 0.2, 0.3, 0.4]), np.array([0.0, 0.0, 0.25, 0.75])
        u, v = haar_unitaries(4, 2, rng)
        rho = (u * p) @ u.conj().T
        sigma = (v * q) @ v.conj().T
        lo, mid, hi = orb.trace_product_bounds(rho, sigma, 0.5, 0.5)
        assert lo == pytest.approx(np.sqrt(p) @ np.sqrt(q)[::-1], abs=1e-9)
        assert hi == pytest.approx(np.sqrt(p) @ np.sqrt(q), abs=1e-9)
        assert lo - 1e-9 <= mid <= hi + 1e-9

    def test_aligned_diagonals_attain_upper(self):
        lo, mid, hi = orb.trace_product_bounds(diag_state([0.6, 0.4]), diag_state([0.9, 0.1]), 2, 0.5)
        assert abs(mid - hi) <= 1e-12

    def test_bad_exponent(self):
        with pytest.raises(InvalidExponent):
            orb.trace_product_bounds(np.eye(2) / 2, np.eye(2) / 2, 0, 1)

    @given(st.integers(2, 6), seeds, st.sampled_from([0.25, 0.5, 1.0, 2.0]), st.sampled_from([0.25, 0.5, 1.0, 2.0]))
    @settings(max_examples=80, deadline=None)
    def test_sandwich(self, n, seed, s, t):
        rng = np.random.default_rng(seed)
        rho = random_density(n, int(rng.integers(1, n + 1)), rng)
        sigma = random_density(n, int(rng.integers(1, n + 1)), rng)
        lo, mid, hi = orb.trace_product_bounds(rho, sigma, s, t)
        assert lo - 1e-9 <= mid <= hi + 1e-9


class TestTraceProductHermitian:
    def test_identity(self, rng):
        rho = random_density(3, seed=rng)
        lo, mid, hi = orb.trace_product_bounds_hermitian(rho, np.eye(3), 2)
        purity = np.trace(rho @ rho).real
        assert (lo, mid, hi) == pytest.approx((purity, purity, purity), abs=1e-10)

    def test_signed(self):
        lo, mid, hi = orb.trace_product_bounds_hermitian(diag_state([0.9, 0.1]), np.diag([1.0, -1.0]))
        assert (lo, mid, hi) == pytest.approx((-0.8, 0.8, 0.8), abs=1e-12)

    @given(st.integers(2, 6), seeds)
    @settings(max_examples=60, deadline=None)
    def test_sandwich(self, n, seed):
        rng = np.random.default_rng(seed)
        lo, mid, hi = orb.trace_product_bounds_hermitian(random_density(n, seed=rng), random_hermitian(n, rng), 2)
        assert lo - 1e-9 <= mid <= hi + 1e-9


class TestEigenDifference:
    def test_identical(self):
        rho = diag_state([0.6, 0.3, 0.1])
        lo, mid, hi = orb.eigen_difference_bounds(rho, rho)
        assert lo == pytest.approx(0, abs=1e-12) and mid == pytest.approx(0, abs=1e-12)
        assert hi == pytest.approx(2 * 0.5 * np.abs(np.array([0.6, 0.3, 0.1]) - [0.1, 0.3, 0.6]).sum())

    def test_aligned(self):
        lo, mid, _ = orb.eigen_difference_bounds(diag_state([0.6, 0.3, 0.1]), diag_state([0.5, 0.4, 0.1]))
        assert abs(lo - mid) <= 1e-12

    @given(st.integers(2, 6), seeds)
    @settings(max_examples=60, deadline=None)
    def test_sandwich(self, n, seed):
        rng = np.random.default_rng(seed)
        lo, mid, hi = orb.eigen_difference_bounds(random_density(n, seed=rng), random_density(n, 1, rng))
        assert lo - 1e-9 <= mid <= hi + 1e-9


class TestHornJohnson:
    def test_equal(self, rng):
        a = rng.standard_normal((3, 3))
        for k in (1, 2, 3):
            assert orb.horn_johnson_partial_sums(a, a, k)[0] == 0

    def test_full_k_matches_eigen_lower(self, rng):
        a, b = random_density(4, seed=rng), random_density(4, seed=rng)
        assert orb.horn_johnson_partial_sums(a, b, 4)[0] == pytest.approx(orb.eigen_difference_bounds(a, b)[0],
                                                                           abs=1e-12)

    def test_k_range(self):
        with pytest.raises(IndexOutOfRange):
            orb.horn_johnson_partial_sums(np.eye(2), np.eye(2), 3)

    @given(st.integers(2, 6), seeds)
    @settings(max_examples=60, deadline=None)
    def test_all_k(self, n, seed):
        rng = np.random.default_rng(seed)
        a, b = rng.standard_normal((2, n, n)) + 1j * rng.standard_normal((2, n, n))
        for k in range(1, n + 1):
            lhs, rhs = orb.horn_johnson_partial_sums(a, b, k)
            assert lhs <= rhs + 1e-9


class TestWeylChamber:
    def test_descending(self):
        assert orb.weyl_chamber_index([0.5, 0.3, 0.2])[0] == (0, 1, 2)

    def test_ascending(self):
        chamber, canon = orb.weyl_chamber_index([0.2, 0.3, 0.5])
        assert chamber == (2, 1, 0)
        np.testing.assert_array_equal(canon.values, [0.5, 0.3, 0.2])

    @given(st.lists(st.integers(0, 5), min_size=1, max_size=7).filter(any))
    def test_round_trip(self, raw):
        p = np.asarray(raw, float) / sum(raw)
        chamber, canon = orb.weyl_chamber_index(Spectrum(p))
        np.testing.assert_array_equal(canon.values[list(chamber)], p)
        assert np.all(np.diff(canon.values) <= 0)
