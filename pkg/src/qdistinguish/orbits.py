"""Extremal distances between unitary orbits and the spectral inequalities behind them.

For states with spectra ``p`` and ``q`` every state on the orbit of ``diag(q)``
is ``U diag(q) U^dagger``. The closed forms below give the range of
fidelity, Bures and trace distance over that orbit using only sorted
spectra; :func:`orbit_extremes` checks them by brute force.

Functions taking spectra accept a :class:`Spectrum`, a 1-D array (validated)
or a 2-D array of row spectra (trusted, evaluated row-wise).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from .errors import DimensionMismatch, DimensionTooLarge, IndexOutOfRange, InvalidExponent
from .metrics import MetricKind, classical_distance, distance
from .numerics import (
    PERMUTATION_CAP,
    Seed,
    as_rng,
    clipped_power,
    dagger,
    haar_unitaries,
    herm_eig,
    matrix_power_psd,
    permutation_array,
    psd_eigvals,
    random_hermitian,
    singular_values,
    trace_norm,
)
from .states import Spectrum, as_spectrum, validate_state

EXTREME_TOL = 1e-9
TIE_TOL = 1e-12


def _spectra(p, q) -> tuple[np.ndarray, np.ndarray]:
    def conv(x):
        if isinstance(x, Spectrum):
            return x.values
        arr = np.asarray(x, dtype=float)
        return as_spectrum(arr).values if arr.ndim == 1 else arr

    a, b = conv(p), conv(q)
    if a.shape[-1] != b.shape[-1]:
        raise DimensionMismatch(f"spectrum lengths differ: {a.shape[-1]} vs {b.shape[-1]}")
    return a, b


def _up(x: np.ndarray) -> np.ndarray:
    return np.sort(x, axis=-1)


def _down(x: np.ndarray) -> np.ndarray:
    return np.sort(x, axis=-1)[..., ::-1]


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def _sqrt_dot(a, b):
    return np.sum(np.sqrt(np.clip(a, 0, None) * np.clip(b, 0, None)), axis=-1)


def fidelity_orbit_bounds(p, q):
    """``(B^2(p_up, q_down), B^2(p_up, q_up))`` bracketing the fidelity on the orbits."""
    p, q = _spectra(p, q)
    return _out(_sqrt_dot(_up(p), _down(q)) ** 2), _out(_sqrt_dot(_up(p), _up(q)) ** 2)


def bures_orbit_bounds(p, q):
    p, q = _spectra(p, q)
    lower = np.sqrt(np.clip(2.0 - 2.0 * _sqrt_dot(_up(p), _up(q)), 0.0, None))
    upper = np.sqrt(np.clip(2.0 - 2.0 * _sqrt_dot(_up(p), _down(q)), 0.0, None))
    return _out(lower), _out(upper)


def trace_orbit_bounds(p, q):
    p, q = _spectra(p, q)
    lower = 0.5 * np.sum(np.abs(_up(p) - _up(q)), axis=-1)
    upper = 0.5 * np.sum(np.abs(_up(p) - _down(q)), axis=-1)
    return _out(lower), _out(upper)


def hs_orbit_bounds(p, q):
    """Sorted-spectra values for the Hilbert-Schmidt distance (known result, reported not proven here)."""
    p, q = _spectra(p, q)
    lower = np.sqrt(np.sum((_up(p) - _up(q)) ** 2, axis=-1))
    upper = np.sqrt(np.sum((_up(p) - _down(q)) ** 2, axis=-1))
    return _out(lower), _out(upper)


def orbit_bounds(p, q, metric: MetricKind | str):
    metric = MetricKind.parse(metric)
    return {MetricKind.TRACE: trace_orbit_bounds, MetricKind.BURES: bures_orbit_bounds,
            MetricKind.HILBERT_SCHMIDT: hs_orbit_bounds}[metric](p, q)


@dataclass
class OrbitBoundsReport:
    metric: MetricKind
    lower: float
    upper: float
    oracle_min: float
    oracle_max: float
    argmin_permutation: tuple[int, ...]
    argmax_permutation: tuple[int, ...]
    samples: int = 0
    seed: int | None = None
    argmin_unitary: np.ndarray | None = field(default=None, repr=False)
    argmax_unitary: np.ndarray | None = field(default=None, repr=False)

    def violations(self, tol: float = EXTREME_TOL) -> list[str]:
        """Broken report invariants; empty when the closed forms and the oracle agree."""
        out = []
        if self.lower > self.oracle_min + tol:
            out.append(f"lower {self.lower!r} exceeds oracle_min {self.oracle_min!r}")
        if self.oracle_max > self.upper + tol:
            out.append(f"oracle_max {self.oracle_max!r} exceeds upper {self.upper!r}")
        if self.metric is not MetricKind.HILBERT_SCHMIDT:
            if abs(self.lower - self.oracle_min) > tol:
                out.append(f"lower {self.lower!r} not attained (oracle_min {self.oracle_min!r})")
            if abs(self.upper - self.oracle_max) > tol:
                out.append(f"upper {self.upper!r} not attained (oracle_max {self.oracle_max!r})")
        return out

    def to_dict(self) -> dict:
        return {
            "metric": self.metric.value,
            "lower": self.lower,
            "upper": self.upper,
            "oracle_min": self.oracle_min,
            "oracle_max": self.oracle_max,
            "argmin_perm": list(self.argmin_permutation),
            "argmax_perm": list(self.argmax_permutation),
            "samples": self.samples,
            "seed": self.seed,
        }


def permutation_extremes(p, q, metric: MetricKind | str):
    """Exhaustive search over ``diag(p)`` vs ``diag(q[perm])``.

    Returns ``(min, argmin, max, argmax)``; among ties (within 1e-12) the
    lexicographically smallest permutation is reported.
    """
    p, q = _spectra(p, q)
    n = p.size
    if n > PERMUTATION_CAP:
        raise DimensionTooLarge(f"dimension {n} exceeds permutation cap {PERMUTATION_CAP}")
    perms = permutation_array(n)
    vals = np.asarray(classical_distance(metric, p[None, :], q[perms]))
    lo, hi = float(vals.min()), float(vals.max())
    i_lo = int(np.flatnonzero(vals <= lo + TIE_TOL)[0])
    i_hi = int(np.flatnonzero(vals >= hi - TIE_TOL)[0])
    return lo, tuple(int(x) for x in perms[i_lo]), hi, tuple(int(x) for x in perms[i_hi])


def _orbit_distance(metric, p, q, us):
    rho1 = np.diag(p).astype(complex)
    rho2 = (us * q[None, None, :]) @ dagger(us)
    return np.asarray(distance(metric, np.broadcast_to(rho1, rho2.shape), rho2))


def _cayley(h: np.ndarray, step: float) -> np.ndarray:
    eye = np.eye(h.shape[-1])
    return np.linalg.solve(eye - 0.5j * step * h, eye + 0.5j * step * h)


def _refine(metric, p, q, u, sign, rng, steps):
    """Greedy local search on ``sign * distance`` by Cayley-parameterized unitary moves."""
    best = sign * float(_orbit_distance(metric, p, q, u[None])[0])
    step = 0.1
    for _ in range(steps):
        h = random_hermitian(u.shape[0], rng)
        h /= np.linalg.norm(h, 2)
        cand = u @ _cayley(h, step)
        val = sign * float(_orbit_distance(metric, p, q, cand[None])[0])
        if val < best:
            u, best = cand, val
        else:
            step *= 0.5
            if step < 1e-12:
                step = 0.1
    return u, sign * best


def orbit_extremes(p, q, metric: MetricKind | str = MetricKind.TRACE, haar_samples: int = 0,
                   seed: Seed = None, refine_steps: int = 200) -> OrbitBoundsReport:
    """Closed-form orbit bounds next to a brute-force estimate of the true extremes.

    The oracle enumerates every permutation of ``q`` against ``p``, then
    (when ``haar_samples > 0``) tries Haar-random rotations of ``diag(q)``
    and polishes the best of them by local search.
    """
    metric = MetricKind.parse(metric)
    pv, qv = _spectra(p, q)
    lower, upper = orbit_bounds(pv, qv, metric)
    lo, arg_lo, hi, arg_hi = permutation_extremes(pv, qv, metric)
    report = OrbitBoundsReport(metric, lower, upper, lo, hi, arg_lo, arg_hi, samples=haar_samples,
                               seed=seed if isinstance(seed, (int, np.integer)) or seed is None else None)
    if haar_samples > 0:
        rng = as_rng(seed)
        n = pv.size
        us = haar_unitaries(n, haar_samples, rng)
        vals = _orbit_distance(metric, pv, qv, us)
        u_lo, v_lo = _refine(metric, pv, qv, us[int(vals.argmin())], +1, rng, refine_steps)
        u_hi, v_hi = _refine(metric, pv, qv, us[int(vals.argmax())], -1, rng, refine_steps)
        report.argmin_unitary, report.argmax_unitary = u_lo, u_hi
        report.oracle_min = min(report.oracle_min, float(vals.min()), v_lo)
        report.oracle_max = max(report.oracle_max, float(vals.max()), v_hi)
    return report


def trace_unitary_max_check(a: npt.ArrayLike, samples: int = 1000, seed: Seed = None):
    """Compare ``max_U |Tr(U A)|`` with the trace norm.

    Returns ``(analytic, best_found, maximizer)`` where ``analytic`` is
    ``||A||_1``, ``maximizer = V W^dagger`` from the SVD ``A = W S V^dagger``
    attains it, and ``best_found`` is the best of ``samples`` Haar unitaries.
    """
    a = np.asarray(a, dtype=complex)
    analytic = trace_norm(a)
    w, _, vh = np.linalg.svd(a)
    maximizer = dagger(vh) @ dagger(w)
    us = haar_unitaries(a.shape[-1], samples, seed)
    # Tr(U A) = sum_ij U_ij A_ji
    best = float(np.max(np.abs(np.einsum("kij,ji->k", us, a)))) if samples else 0.0
    return analytic, best, maximizer


def von_neumann_bound(a, b):
    """``(|Tr AB|, sum_i s_i(A) s_i(B))`` with singular values paired in descending order."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[-1] != b.shape[-1]:
        raise DimensionMismatch("matrices differ in size")
    lhs = np.abs(np.trace(a @ b, axis1=-2, axis2=-1))
    rhs = np.sum(singular_values(a) * singular_values(b), axis=-1)
    return _out(lhs), _out(rhs)


def _state_arrays(*mats):
    out = []
    for m in mats:
        arr = np.asarray(m, dtype=complex)
        out.append(validate_state(arr).matrix if arr.ndim == 2 else arr)
    if len({m.shape[-1] for m in out}) > 1:
        raise DimensionMismatch("states differ in dimension")
    return out


def _real_trace(x):
    return np.trace(x, axis1=-2, axis2=-1).real


def trace_product_bounds(rho, sigma, s: float = 1.0, t: float = 1.0):
    """Sandwich ``(p^s)_up . (q^t)_down <= Tr(rho^s sigma^t) <= (p^s)_up . (q^t)_up``.

    Returns ``(lower, mid, upper)``.
    """
    if not (s > 0 and t > 0):
        raise InvalidExponent(f"exponents must be positive, got s={s}, t={t}")
    rho, sigma = _state_arrays(rho, sigma)
    mid = _real_trace(matrix_power_psd(rho, s) @ matrix_power_psd(sigma, t))
    ps = clipped_power(psd_eigvals(rho), s)
    qt = clipped_power(psd_eigvals(sigma), t)
    lower = np.sum(_up(ps) * _down(qt), axis=-1)
    upper = np.sum(_up(ps) * _up(qt), axis=-1)
    return _out(lower), _out(mid), _out(upper)


def trace_product_bounds_hermitian(rho, sigma, s: float = 1.0):
    """Like :func:`trace_product_bounds` with ``t = 1`` and ``sigma`` any Hermitian matrix."""
    if not s > 0:
        raise InvalidExponent(f"exponent must be positive, got s={s}")
    (rho,) = _state_arrays(rho)
    sigma = np.asarray(sigma, dtype=complex)
    if sigma.shape[-1] != rho.shape[-1]:
        raise DimensionMismatch("rho and sigma differ in dimension")
    q = herm_eig(sigma)[0]
    mid = _real_trace(matrix_power_psd(rho, s) @ sigma)
    ps = clipped_power(psd_eigvals(rho), s)
    return _out(np.sum(_up(ps) * _down(q), axis=-1)), _out(mid), _out(np.sum(_up(ps) * _up(q), axis=-1))


def eigen_difference_bounds(rho1, rho2):
    """Bracket ``Tr|rho1 - rho2|`` by aligned and anti-aligned eigenvalue differences.

    Returns ``(sum_i |l_i(rho1) - l_i(rho2)|, Tr|rho1 - rho2|,
    sum_i |l_i(rho1) - l_{n+1-i}(rho2)|)`` with eigenvalues in descending order.
    """
    a, b = _state_arrays(rho1, rho2)
    la = _down(herm_eig(a)[0])
    lb = _down(herm_eig(b)[0])
    lower = np.sum(np.abs(la - lb), axis=-1)
    upper = np.sum(np.abs(la - lb[..., ::-1]), axis=-1)
    return _out(lower), _out(trace_norm(a - b)), _out(upper)


def horn_johnson_partial_sums(a, b, k: int):
    """``(sum of k largest |s_i(A) - s_i(B)|, sum of k largest s_i(A - B))``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n = a.shape[-1]
    if b.shape[-1] != n:
        raise DimensionMismatch("matrices differ in size")
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"k must lie in [1, {n}], got {k}")
    gaps = _down(np.abs(singular_values(a) - singular_values(b)))
    lhs = np.sum(gaps[..., :k], axis=-1)
    rhs = np.sum(singular_values(a - b)[..., :k], axis=-1)
    return _out(lhs), _out(rhs)


def weyl_chamber_index(p) -> tuple[tuple[int, ...], Spectrum]:
    """Locate ``p`` relative to the descending Weyl chamber.

    ``canonical`` is ``p`` sorted descending (stable, so equal entries keep
    index order) and ``chamber`` satisfies ``canonical[chamber] == p``.
    """
    p = as_spectrum(p)
    order = np.argsort(-p.values, kind="stable")
    chamber = np.empty_like(order)
    chamber[order] = np.arange(order.size)
    return tuple(int(x) for x in chamber), Spectrum._trusted(p.values[order])
