import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdistinguish import metrics as met
from qdistinguish.errors import DimensionMismatch
from qdistinguish.numerics import haar_unitary, random_channel_apply, random_density
from qdistinguish.states import diag_state, maximally_mixed, pure_state

from .conftest import block_states, ket

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(2, 5)


def _uhlmann_root_fidelity(a, b):
    """Independent route: sum of square roots of the eigenvalues of sqrt(a) b sqrt(a)."""
    w, v = np.linalg.eigh(a)
    sa = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    ev = np.linalg.eigvalsh(sa @ b @ sa)
    return float(np.sum(np.sqrt(np.clip(ev, 0, None))))


class TestMetricKind:
    def test_diameters(self):
        assert met.MetricKind.HILBERT_SCHMIDT.diameter == math.sqrt(2)
        assert met.MetricKind.TRACE.diameter == 1
        assert met.MetricKind.BURES.diameter == math.sqrt(2)

    def test_parse(self):
        assert met.MetricKind.parse("Hilbert-Schmidt") is met.MetricKind.HILBERT_SCHMIDT
        assert met.MetricKind.parse("bures") is met.MetricKind.BURES
        with pytest.raises(ValueError):
            met.MetricKind.parse("euclid")


class TestHs:
    def test_self(self, rng):
        rho = random_density(3, seed=rng)
        assert met.d_hs(rho, rho) == 0

    def test_orthogonal_pair(self, orthogonal_pair):
        assert met.d_hs(*orthogonal_pair) == pytest.approx(math.sqrt(1.5), abs=1e-12)

    @pytest.mark.parametrize("n", [4, 8, 16])
    def test_blocks(self, n):
        a, b = block_states(n)
        assert met.d_hs(a, b) == pytest.approx(2 / math.sqrt(n), abs=1e-10)
        assert met.d_trace(a, b) == pytest.approx(1, abs=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            met.d_hs(np.eye(2) / 2, np.eye(3) / 3)


class TestTrace:
    def test_self(self, rng):
        rho = random_density(4, seed=rng)
        assert met.d_trace(rho, rho) == pytest.approx(0, abs=1e-14)

    def test_orthogonal_pair(self, orthogonal_pair):
        assert met.d_trace(*orthogonal_pair) == pytest.approx(1, abs=1e-10)

    @given(dims, seeds)
    @settings(max_examples=50, deadline=None)
    def test_diagonal_is_half_l1(self, n, seed):
        rng = np.random.default_rng(seed)
        p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
        assert met.d_trace(diag_state(p), diag_state(q)) == pytest.approx(0.5 * np.abs(p - q).sum(), abs=1e-10)


class TestFidelity:
    def test_self(self, rng):
        rho = random_density(3, seed=rng)
        assert met.root_fidelity(rho, rho) == pytest.approx(1, abs=1e-9)
        assert met.fidelity(rho, rho) == pytest.approx(1, abs=1e-9)

    def test_orthogonal(self, orthogonal_pair):
        assert met.root_fidelity(*orthogonal_pair) == pytest.approx(0, abs=1e-12)

    def test_pure_overlap(self):
        assert met.fidelity(ket(1, 0), ket(1, 1)) == pytest.approx(0.5, abs=1e-12)

    def test_pure_states_overlap_oracle(self, rng):
        for _ in range(20):
            u = haar_unitary(4, rng)
            a, b = u[:, 0], u[:, 1] * 0.6 + u[:, 0] * 0.8
            assert met.fidelity(pure_state(a), pure_state(b)) == pytest.approx(abs(np.vdot(a, b)) ** 2, abs=1e-9)

    @given(dims, seeds)
    @settings(max_examples=50, deadline=None)
    def test_diagonal_is_bhattacharyya(self, n, seed):
        rng = np.random.default_rng(seed)
        p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
        assert met.root_fidelity(diag_state(p), diag_state(q)) == pytest.approx(met.bhattacharyya(p, q), abs=1e-10)

    @given(dims, seeds)
    @settings(max_examples=50, deadline=None)
    def test_matches_uhlmann_form(self, n, seed):
        rng = np.random.default_rng(seed)
        a = random_density(n, int(rng.integers(1, n + 1)), rng)
        b = random_density(n, int(rng.integers(1, n + 1)), rng)
        assert met.root_fidelity(a, b) == pytest.approx(_uhlmann_root_fidelity(a, b), abs=1e-7)
        assert met.fidelity(a, b) == pytest.approx(met.root_fidelity(a, b) ** 2, abs=1e-12)
        assert met.root_fidelity(a, b) == pytest.approx(met.root_fidelity(b, a), abs=1e-10)


class TestBures:
    def test_self(self, rng):
        for n in range(1, 6):
            rho = random_density(n, seed=rng)
            assert met.d_bures(rho, rho) <= 1e-9

    def test_orthogonal(self, orthogonal_pair):
        assert met.d_bures(*orthogonal_pair) == pytest.approx(math.sqrt(2), abs=1e-10)

    @given(dims, seeds)
    @settings(max_examples=50, deadline=None)
    def test_diagonal(self, n, seed):
        rng = np.random.default_rng(seed)
        p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
        expected = math.sqrt(max(2 * (1 - met.bhattacharyya(p, q)), 0))
        assert met.d_bures(diag_state(p), diag_state(q)) == pytest.approx(expected, abs=1e-7)

    @given(dims, seeds)
    @settings(max_examples=50, deadline=None)
    def test_agrees_with_root_fidelity_form(self, n, seed):
        rng = np.random.default_rng(seed)
        a, b = random_density(n, seed=rng), random_density(n, seed=rng)
        db = met.d_bures(a, b)
        assert db**2 == pytest.approx(2 - 2 * _uhlmann_root_fidelity(a, b), abs=1e-9)


class TestBhattacharyya:
    def test_values(self):
        assert met.bhattacharyya([0.3, 0.7], [0.3, 0.7]) == pytest.approx(1)
        assert met.bhattacharyya([1, 0], [0, 1]) == 0
        assert met.bhattacharyya([0.5, 0.5], [1, 0]) == pytest.approx(math.sqrt(0.5))

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            met.bhattacharyya([1, 0], [1, 0, 0])


class TestFuchsVanDeGraaf:
    def test_self(self):
        lo, d, hi = met.fuchs_vdg_check(maximally_mixed(2), maximally_mixed(2))
        assert (lo, d, hi) == pytest.approx((0, 0, 0), abs=1e-9)

    def test_orthogonal(self, orthogonal_pair):
        assert met.fuchs_vdg_check(*orthogonal_pair) == pytest.approx((1, 1, 1), abs=1e-10)

    @given(dims, seeds)
    @settings(max_examples=80, deadline=None)
    def test_sandwich(self, n, seed):
        rng = np.random.default_rng(seed)
        lo, d, hi = met.fuchs_vdg_check(random_density(n, seed=rng), random_density(n, 1, rng))
        assert lo <= d + 1e-9 and d <= hi + 1e-9


class TestSupports:
    def test_orthogonal(self, orthogonal_pair):
        assert met.orthogonal_supports(*orthogonal_pair)

    def test_self(self):
        rho = diag_state([0.5, 0.5, 0])
        assert not met.orthogonal_supports(rho, rho)
        assert met.support_overlap(rho, rho) == pytest.approx(2)

    def test_full_rank(self, rng):
        assert not met.orthogonal_supports(random_density(3, seed=rng), random_density(3, seed=rng))


@given(st.integers(2, 4), seeds)
@settings(max_examples=40, deadline=None)
def test_metric_axioms(n, seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_density(n, int(rng.integers(1, n + 1)), rng) for _ in range(3))
    for kind in met.MetricKind:
        dab, dba = met.distance(kind, a, b), met.distance(kind, b, a)
        assert abs(dab - dba) <= 1e-10
        assert met.distance(kind, a, a) <= 1e-9
        assert dab <= met.distance(kind, a, c) + met.distance(kind, c, b) + 1e-9
        assert dab <= kind.diameter + 1e-9


@given(st.integers(2, 4), seeds)
@settings(max_examples=40, deadline=None)
def test_contractive_metrics_do_not_grow(n, seed):
    rng = np.random.default_rng(seed)
    a, b = random_density(n, seed=rng), random_density(n, seed=rng)
    env = int(rng.integers(1, n + 1))
    ch = int(rng.integers(2**32))
    a2, b2 = random_channel_apply(a, env, ch), random_channel_apply(b, env, ch)
    assert met.d_trace(a2, b2) <= met.d_trace(a, b) + 1e-8
    assert met.d_bures(a2, b2) <= met.d_bures(a, b) + 1e-8


def test_classical_distance_matches_quantum(rng):
    for n in range(1, 7):
        p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
        for kind in met.MetricKind:
            assert met.classical_distance(kind, p, q) == pytest.approx(
                met.distance(kind, diag_state(p), diag_state(q)), abs=1e-7)


def test_batched_inputs_match_loop(rng):
    a = np.array([random_density(3, seed=rng) for _ in range(5)])
    b = np.array([random_density(3, seed=rng) for _ in range(5)])
    for kind in met.MetricKind:
        batch = met.distance(kind, a, b)
        np.testing.assert_allclose(batch, [met.distance(kind, x, y) for x, y in zip(a, b)], atol=1e-13)
