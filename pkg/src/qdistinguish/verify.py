"""Randomized property ensembles behind ``qdistinguish verify``.

Each property draws ``samples`` random instances for one dimension from its
own stream ``SeedSequence([seed, property_index, dim])`` and computes a
residual per instance; an instance passes when its residual is at most the
property's slack. The first failing instance is serialized for replay.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import discrimination as disc
from . import metrics as met
from . import orbits as orb
from .numerics import (
    apply_isometry_channel,
    dagger,
    haar_unitaries,
    matrix_sqrt_psd,
    permutation_array,
    random_isometry,
    relabel_isometry,
    random_hermitian,
    trace_norm,
    unistochastic_from,
)
from .states import validate_state

log = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
EXPONENTS = (0.25, 0.5, 1.0, 2.0)

DEFAULT_TOLERANCES = {
    "symmetry": 1e-10,
    "identity": 1e-9,
    "triangle": 1e-9,
    "diameter": 1e-9,
    "equivalence": 1e-8,
    "containment": 1e-8,
    "attainment": 1e-9,
    "chain": 1e-9,
    "fvdg": 1e-9,
    "sandwich": 1e-9,
    "trace_unit_max": 1e-9,
    "von_neumann": 1e-9,
    "horn_johnson": 1e-9,
    "unistochastic": 1e-10,
    "monotonicity": 1e-8,
    "povm": 1e-8,
    "overlap": 1e-8,
    "converse": 1e-6,
}


@dataclass
class PropertyResult:
    property: str
    dim: int
    samples: int
    passes: int
    failures: int
    worst_residual: float
    seed: int
    slack: float
    replay: Optional[dict] = None
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def row(self) -> dict:
        return {"property": self.property, "dim": self.dim, "samples": self.samples, "passes": self.passes,
                "failures": self.failures, "worst_residual": self.worst_residual, "seed": self.seed}


@dataclass
class Outcome:
    """Residuals for one ensemble plus a callback that serializes instance ``i``."""

    residuals: np.ndarray
    inputs: Callable[[int], dict]
    notes: dict = field(default_factory=dict)


# ---------------------------------------------------------------- samplers

def random_spectra(rng: np.random.Generator, n: int, dim: int, zero_prob: float = 0.3) -> np.ndarray:
    """Rows of probability vectors; each entry is zeroed with ``zero_prob`` (one entry always survives)."""
    p = rng.dirichlet(np.ones(dim), size=n)
    mask = rng.random((n, dim)) < zero_prob
    mask[np.arange(n), rng.integers(0, dim, n)] = False
    p = np.where(mask, 0.0, p)
    return p / p.sum(axis=1, keepdims=True)


def random_states(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """States of uniformly random rank, ``G G^dagger`` normalized, shape ``(n, dim, dim)``."""
    g = rng.standard_normal((n, dim, dim)) + 1j * rng.standard_normal((n, dim, dim))
    ranks = rng.integers(1, dim + 1, n)
    g = g * (np.arange(dim)[None, None, :] < ranks[:, None, None])
    rho = g @ dagger(g)
    rho /= np.trace(rho, axis1=1, axis2=2).real[:, None, None]
    return 0.5 * (rho + dagger(rho))


def rotate(us: np.ndarray, p: np.ndarray) -> np.ndarray:
    """``U diag(p) U^dagger`` row-wise."""
    m = (us * p[:, None, :]) @ dagger(us)
    return 0.5 * (m + dagger(m))


def orthogonal_support_set(rng: np.random.Generator, dim: int, k: int) -> list[np.ndarray]:
    """``k`` states with pairwise orthogonal supports in a random basis (``k <= dim``)."""
    u = haar_unitaries(dim, 1, rng)[0]
    cuts = np.sort(rng.choice(np.arange(1, dim), size=k - 1, replace=False)) if k > 1 else np.array([], int)
    blocks = np.split(np.arange(dim), cuts)
    out = []
    for block in blocks:
        # use a random non-empty part of the block as the support
        size = int(rng.integers(1, block.size + 1))
        w = rng.dirichlet(np.ones(size))
        v = u[:, block[:size]]
        m = (v * w[None, :]) @ v.conj().T
        out.append(0.5 * (m + m.conj().T))
    return out


def _mat(m) -> dict:
    a = np.asarray(m, dtype=complex)
    return {"dim": int(a.shape[-1]), "re": a.real.tolist(), "im": a.imag.tolist()}


def recorded_hs_counterexample(dim: int = 3) -> dict:
    """diag(1,0,..) and the uniform state on the rest, sent through measure-and-merge (|k> -> |1> for k >= 1).

    Trace and Bures distances stay at their maxima, the HS distance grows
    from ``sqrt(dim/(dim-1))`` to ``sqrt(2)``.
    """
    p = np.zeros(dim)
    p[0] = 1.0
    q = np.full(dim, 1.0 / (dim - 1))
    q[0] = 0.0
    a, b = np.diag(p).astype(complex), np.diag(q).astype(complex)
    v = relabel_isometry([0] + [1] * (dim - 1))
    a2, b2 = apply_isometry_channel(v, a, dim, dim), apply_isometry_channel(v, b, dim, dim)
    before, after = met.d_hs(a, b), met.d_hs(a2, b2)
    return {"rho1": a, "rho2": b, "out1": a2, "out2": b2, "hs_before": before, "hs_after": after,
            "increase": after - before,
            "trace_change": met.d_trace(a2, b2) - met.d_trace(a, b),
            "bures_change": met.d_bures(a2, b2) - met.d_bures(a, b)}


# ---------------------------------------------------------------- ensembles

class Ensembles:
    """Property ensembles for one dimension; ``corrupt`` inflates the trace distance to test the harness."""

    def __init__(self, dim: int, n: int, tol: dict, corrupt: bool = False, haar_per_pair: int = 10,
                 search_samples: int = 200):
        self.dim, self.n, self.tol, self.corrupt = dim, n, tol, corrupt
        self.haar_per_pair = haar_per_pair
        self.search_samples = search_samples

    def d_trace(self, a, b):
        d = np.asarray(met.d_trace(a, b))
        return 1.5 * d + 0.01 if self.corrupt else d

    # metric axioms -----------------------------------------------------
    def _triples(self, rng):
        return random_states(rng, self.n, self.dim), random_states(rng, self.n, self.dim), \
            random_states(rng, self.n, self.dim)

    def _dists(self, a, b):
        return [np.asarray(met.d_hs(a, b)), self.d_trace(a, b), np.asarray(met.d_bures(a, b))]

    def metric_symmetry(self, rng):
        a, b, _ = self._triples(rng)
        res = np.max([np.abs(x - y) for x, y in zip(self._dists(a, b), self._dists(b, a))], axis=0)
        return Outcome(res, lambda i: {"rho1": _mat(a[i]), "rho2": _mat(b[i])})

    def metric_identity(self, rng):
        a, _, _ = self._triples(rng)
        res = np.max(self._dists(a, a), axis=0)
        return Outcome(res, lambda i: {"rho": _mat(a[i])})

    def metric_triangle(self, rng):
        a, b, c = self._triples(rng)
        ab, bc, ac = self._dists(a, b), self._dists(b, c), self._dists(a, c)
        res = np.max([x - y - z for x, y, z in zip(ac, ab, bc)], axis=0)
        return Outcome(res, lambda i: {"rho1": _mat(a[i]), "rho2": _mat(b[i]), "rho3": _mat(c[i])})

    def diameter(self, rng):
        a, b, _ = self._triples(rng)
        hs, tr, bu = self._dists(a, b)
        res = np.max([hs - SQRT2, tr - 1.0, bu - SQRT2], axis=0)
        return Outcome(res, lambda i: {"rho1": _mat(a[i]), "rho2": _mat(b[i])})

    def support_equivalence(self, rng):
        """Orthogonal supports give the diameters; near-diameter generic pairs must have orthogonal supports."""
        half = self.n // 2
        pairs = [orthogonal_support_set(rng, self.dim, 2) for _ in range(half)]
        a = np.array([p[0] for p in pairs]).reshape(-1, self.dim, self.dim)
        b = np.array([p[1] for p in pairs]).reshape(-1, self.dim, self.dim)
        res_orth = np.max([np.abs(self.d_trace(a, b) - 1.0), np.abs(np.asarray(met.d_bures(a, b)) - SQRT2)], axis=0) \
            if half else np.zeros(0)
        c = random_states(rng, self.n - half, self.dim)
        d = random_states(rng, self.n - half, self.dim)
        tr, bu = self.d_trace(c, d), np.asarray(met.d_bures(c, d))
        near = (tr > 1 - 1e-8) | (bu > SQRT2 - 1e-8)
        res_conv = np.zeros(self.n - half)
        for i in np.flatnonzero(near):
            res_conv[i] = max(0.0, met.support_overlap(validate_state(c[i]), validate_state(d[i])) - 1e-6)
        res = np.concatenate([res_orth, res_conv])
        return Outcome(res, lambda i: ({"rho1": _mat(a[i]), "rho2": _mat(b[i])} if i < half
                                       else {"rho1": _mat(c[i - half]), "rho2": _mat(d[i - half])}))

    # orbit bounds --------------------------------------------------------
    def orbit_containment(self, rng):
        """Realized F, D_B, D_tr between diag(p) and U diag(q) U^dagger stay inside the closed-form intervals."""
        k = self.haar_per_pair
        p = random_spectra(rng, self.n, self.dim)
        q = random_spectra(rng, self.n, self.dim)
        us = haar_unitaries(self.dim, self.n * k, rng)
        pp, qq = np.repeat(p, k, axis=0), np.repeat(q, k, axis=0)
        rho1 = np.zeros((self.n * k, self.dim, self.dim), dtype=complex)
        rho1[:, np.arange(self.dim), np.arange(self.dim)] = pp
        rho2 = rotate(us, qq)
        rf = np.asarray(met.root_fidelity(rho1, rho2))
        f_lo, f_hi = orb.fidelity_orbit_bounds(pp, qq)
        b_lo, b_hi = orb.bures_orbit_bounds(pp, qq)
        t_lo, t_hi = orb.trace_orbit_bounds(pp, qq)
        f, b, t = rf ** 2, np.asarray(met.d_bures(rho1, rho2)), self.d_trace(rho1, rho2)
        res = np.max([f_lo - f, f - f_hi, b_lo - b, b - b_hi, t_lo - t, t - t_hi], axis=0)
        res = res.reshape(self.n, k).max(axis=1)
        return Outcome(res, lambda i: {"p": p[i].tolist(), "q": q[i].tolist(),
                                       "unitaries": [_mat(u) for u in us[i * k:(i + 1) * k]]})

    def orbit_attainment(self, rng):
        """Exhaustive permutation search reproduces both trace and Bures endpoints."""
        p = random_spectra(rng, self.n, self.dim)
        q = random_spectra(rng, self.n, self.dim)
        perms = permutation_array(self.dim)
        res = np.zeros(self.n)
        for metric, bounds in ((met.MetricKind.TRACE, orb.trace_orbit_bounds),
                               (met.MetricKind.BURES, orb.bures_orbit_bounds)):
            lo, hi = bounds(p, q)
            # vals[i, j]: distance between diag(p_i) and diag(q_i[perm_j])
            vals = np.asarray(met.classical_distance(metric, p[:, None, :], q[:, perms]))
            if metric is met.MetricKind.TRACE and self.corrupt:
                vals = 1.5 * vals + 0.01
            res = np.maximum(res, np.maximum(np.abs(vals.min(axis=1) - lo), np.abs(vals.max(axis=1) - hi)))
        return Outcome(res, lambda i: {"p": p[i].tolist(), "q": q[i].tolist()})

    def root_fidelity_chain(self, rng):
        """sqrt(p_up).sqrt(q_down) <= Tr sqrt(rho1) sqrt(rho2) <= root fidelity <= sqrt(p_up).sqrt(q_up)."""
        a, b, _ = self._triples(rng)
        sa, sb = matrix_sqrt_psd(a), matrix_sqrt_psd(b)
        plain = np.trace(sa @ sb, axis1=1, axis2=2).real
        rf = np.asarray(trace_norm(sa @ sb))
        p = np.clip(np.linalg.eigvalsh(a), 0, None)
        q = np.clip(np.linalg.eigvalsh(b), 0, None)
        b_lo = np.sum(np.sqrt(np.sort(p, 1) * np.sort(q, 1)[:, ::-1]), axis=1)
        b_hi = np.sum(np.sqrt(np.sort(p, 1) * np.sort(q, 1)), axis=1)
        res = np.max([b_lo - plain, plain - rf, rf - b_hi, b_lo - b_hi], axis=0)
        return Outcome(res, lambda i: {"rho1": _mat(a[i]), "rho2": _mat(b[i])})

    def fuchs_van_de_graaf(self, rng):
        a, b, _ = self._triples(rng)
        rf = np.asarray(met.root_fidelity(a, b))
        tr = self.d_trace(a, b)
        res = np.maximum((1 - rf) - tr, tr - np.sqrt(np.clip(1 - rf ** 2, 0, None)))
        return Outcome(res, lambda i: {"rho1": _mat(a[i]), "rho2": _mat(b[i])})

    # trace-product sandwiches ------------------------------------------
    def trace_product(self, rng):
        a, b, _ = self._triples(rng)
        res = np.full(self.n, -np.inf)
        for s in EXPONENTS:
            for t in EXPONENTS:
                lo, mid, hi = orb.trace_product_bounds(a, b, s, t)
                res = np.maximum(res, np.maximum(lo - mid, mid - hi))
        return Outcome(res, lambda i: {"rho": _mat(a[i]), "sigma": _mat(b[i]), "exponents": list(EXPONENTS)})

    def trace_product_hermitian(self, rng):
        a, _, _ = self._triples(rng)
        h = random_hermitian(self.dim, rng, count=self.n)
        res = np.full(self.n, -np.inf)
        for s in EXPONENTS:
            lo, mid, hi = orb.trace_product_bounds_hermitian(a, h, s)
            res = np.maximum(res, np.maximum(lo - mid, mid - hi))
        return Outcome(res, lambda i: {"rho": _mat(a[i]), "sigma": _mat(h[i]), "exponents": list(EXPONENTS)})

    def eigen_difference(self, rng):
        a, b, _ = self._triples(rng)
        lo, mid, hi = orb.eigen_difference_bounds(a, b)
        if self.corrupt:
            mid = 2 * self.d_trace(a, b)
        res = np.maximum(lo - mid, mid - hi)
        return Outcome(res, lambda i: {"rho1": _mat(a[i]), "rho2": _mat(b[i])})

    def trace_unit_max(self, rng):
        """The SVD maximizer attains ||A||_1 and random unitaries never exceed it."""
        g = rng.standard_normal((self.n, self.dim, self.dim)) + 1j * rng.standard_normal((self.n, self.dim, self.dim))
        w, s, vh = np.linalg.svd(g)
        analytic = s.sum(axis=1)
        u_star = dagger(vh) @ dagger(w)
        attained = np.abs(np.trace(u_star @ g, axis1=1, axis2=2))
        bank = haar_unitaries(self.dim, self.search_samples, rng)
        best = np.abs(np.einsum("kij,nji->nk", bank, g)).max(axis=1)
        res = np.maximum(np.abs(attained - analytic), best - analytic)
        return Outcome(res, lambda i: {"A": _mat(g[i]), "search_samples": self.search_samples})

    def von_neumann(self, rng):
        a = rng.standard_normal((self.n, self.dim, self.dim)) + 1j * rng.standard_normal((self.n, self.dim, self.dim))
        b = rng.standard_normal((self.n, self.dim, self.dim)) + 1j * rng.standard_normal((self.n, self.dim, self.dim))
        lhs, rhs = orb.von_neumann_bound(a, b)
        return Outcome(lhs - rhs, lambda i: {"A": _mat(a[i]), "B": _mat(b[i])})

    def horn_johnson(self, rng):
        a = rng.standard_normal((self.n, self.dim, self.dim)) + 1j * rng.standard_normal((self.n, self.dim, self.dim))
        b = rng.standard_normal((self.n, self.dim, self.dim)) + 1j * rng.standard_normal((self.n, self.dim, self.dim))
        res = np.full(self.n, -np.inf)
        for k in range(1, self.dim + 1):
            lhs, rhs = orb.horn_johnson_partial_sums(a, b, k)
            res = np.maximum(res, lhs - rhs)
        return Outcome(res, lambda i: {"A": _mat(a[i]), "B": _mat(b[i])})

    def unistochastic(self, rng):
        us = haar_unitaries(self.dim, self.n, rng)
        bmat = unistochastic_from(us)
        res = np.maximum(np.abs(bmat.sum(axis=1) - 1).max(axis=1), np.abs(bmat.sum(axis=2) - 1).max(axis=1))
        return Outcome(res, lambda i: {"U": _mat(us[i])})

    # channels ------------------------------------------------------------
    def monotonicity(self, rng):
        """Trace and Bures distances never grow under a random channel; HS increases are counted."""
        a, b, _ = self._triples(rng)
        envs = rng.integers(1, self.dim + 1, self.n)
        a2, b2 = np.empty_like(a), np.empty_like(b)
        seeds = rng.integers(0, 2**63, self.n)
        for i in range(self.n):
            v = random_isometry(self.dim, int(envs[i]), int(seeds[i]))
            a2[i] = apply_isometry_channel(v, a[i], self.dim, int(envs[i]))
            b2[i] = apply_isometry_channel(v, b[i], self.dim, int(envs[i]))
        tr0, tr1 = self.d_trace(a, b), self.d_trace(a2, b2)
        bu0, bu1 = np.asarray(met.d_bures(a, b)), np.asarray(met.d_bures(a2, b2))
        hs_up = np.asarray(met.d_hs(a2, b2)) - np.asarray(met.d_hs(a, b))
        res = np.maximum(tr1 - tr0, bu1 - bu0)
        notes = {"hs_increases": int(np.count_nonzero(hs_up > 1e-12)), "max_hs_increase": float(hs_up.max())}
        if self.dim >= 3:
            notes["recorded_hs_increase"] = recorded_hs_counterexample(self.dim)["increase"]
        return Outcome(res, lambda i: {"rho1": _mat(a[i]), "rho2": _mat(b[i]), "env_dim": int(envs[i]),
                                       "channel_seed": int(seeds[i])}, notes)

    # discrimination -------------------------------------------------------
    def povm_construction(self, rng):
        """Witness POVMs for orthogonal-support sets satisfy Tr(A_k rho_k) = 1, completeness, positivity."""
        res = np.zeros(self.n)
        sets = []
        for i in range(self.n):
            k = int(rng.integers(1, self.dim + 1))
            states = orthogonal_support_set(rng, self.dim, k)
            sets.append(states)
            report = disc.can_discriminate(states, self.tol["overlap"])
            if not report.discriminable or report.rank_sum > self.dim:
                res[i] = 1.0
                continue
            povm = disc.build_discrimination_povm(states, self.tol["overlap"])
            succ = povm.success_probabilities(states)
            res[i] = max(max(abs(x - 1) for x in succ), 1.0 if povm.violations() else 0.0)
        return Outcome(res, lambda i: {"states": [_mat(s) for s in sets[i]]})

    def overlap_rejection(self, rng):
        """Overlapping sets are never declared discriminable; discriminable sets never exceed the rank budget."""
        res = np.zeros(self.n)
        sets = []
        for i in range(self.n):
            k = int(rng.integers(2, 5))
            states = list(random_states(rng, k, self.dim))
            if self.dim > 1 and rng.random() < 0.5:
                # one forced overlap on top of an orthogonal family
                base = orthogonal_support_set(rng, self.dim, min(k, self.dim))
                states = base + [states[0]]
            sets.append(states)
            report = disc.can_discriminate(states, self.tol["overlap"])
            overlapping = disc.overlap_matrix(states)[~np.eye(len(states), dtype=bool)].max() > self.tol["overlap"]
            if (report.discriminable and overlapping) or (report.discriminable and report.rank_sum > self.dim):
                res[i] = 1.0
        return Outcome(res, lambda i: {"states": [_mat(s) for s in sets[i]]})

    def overlap_converse(self, rng):
        """For overlapping pairs (dim <= 3) no projective measurement found has Tr(A_k rho_k) = 1 for both."""
        if self.dim > 3:
            return Outcome(np.zeros(0), lambda i: {}, {"skipped": "dim > 3"})
        res = np.zeros(self.n)
        pairs = []
        for i in range(self.n):
            pair = list(random_states(rng, 2, self.dim))
            pairs.append(pair)
            best = disc.projective_search(pair, trials=10, seed=rng)
            res[i] = best - (1 - self.tol["converse"])
        return Outcome(res, lambda i: {"states": [_mat(s) for s in pairs[i]]})

    def simplex_equivalence(self, rng):
        """Maximal-simplex test under trace and Bures agrees with the support criterion."""
        res = np.zeros(self.n)
        sets = []
        for i in range(self.n):
            k = int(rng.integers(2, self.dim + 1)) if self.dim > 1 else 2
            states = orthogonal_support_set(rng, self.dim, k) if i % 2 == 0 and self.dim > 1 \
                else list(random_states(rng, k, self.dim))
            sets.append(states)
            d = disc.can_discriminate(states, self.tol["overlap"]).discriminable
            for metric in (met.MetricKind.TRACE, met.MetricKind.BURES):
                if disc.simplex_side_check(states, metric, self.tol["equivalence"]) != d:
                    res[i] = 1.0
        return Outcome(res, lambda i: {"states": [_mat(s) for s in sets[i]]})

    def diagonal_reduction(self, rng):
        """Random rotations never distinguish more spectra than the packed diagonal arrangement."""
        count = max(1, min(self.n, 50))
        res = np.zeros(count)
        ensembles = []
        for i in range(count):
            k = int(rng.integers(2, 6))
            spectra = random_spectra(rng, k, self.dim, zero_prob=0.6)
            ensembles.append(spectra)
            ok = disc.diagonal_reduction_check(list(spectra), self.tol["overlap"], trials=10, seed=rng)
            res[i] = 0.0 if ok else 1.0
        return Outcome(res, lambda i: {"spectra": ensembles[i].tolist()})


# property name -> (method, tolerance key)
PROPERTIES: dict[str, tuple[str, str]] = {
    "metric_symmetry": ("metric_symmetry", "symmetry"),
    "metric_identity": ("metric_identity", "identity"),
    "metric_triangle": ("metric_triangle", "triangle"),
    "diameter": ("diameter", "diameter"),
    "support_equivalence": ("support_equivalence", "equivalence"),
    "orbit_containment": ("orbit_containment", "containment"),
    "orbit_attainment": ("orbit_attainment", "attainment"),
    "root_fidelity_chain": ("root_fidelity_chain", "chain"),
    "fuchs_van_de_graaf": ("fuchs_van_de_graaf", "fvdg"),
    "trace_product": ("trace_product", "sandwich"),
    "trace_product_hermitian": ("trace_product_hermitian", "sandwich"),
    "eigen_difference": ("eigen_difference", "sandwich"),
    "trace_unit_max": ("trace_unit_max", "trace_unit_max"),
    "von_neumann": ("von_neumann", "von_neumann"),
    "horn_johnson": ("horn_johnson", "horn_johnson"),
    "unistochastic": ("unistochastic", "unistochastic"),
    "monotonicity": ("monotonicity", "monotonicity"),
    "povm_construction": ("povm_construction", "povm"),
    "overlap_rejection": ("overlap_rejection", "povm"),
    "overlap_converse": ("overlap_converse", "povm"),
    "simplex_equivalence": ("simplex_equivalence", "povm"),
    "diagonal_reduction": ("diagonal_reduction", "povm"),
}

# monotonicity is checked on small systems only
DIM_LIMITS = {"monotonicity": 4, "overlap_converse": 3, "diagonal_reduction": 4}


def stream(seed: int, prop: str, dim: int) -> np.random.Generator:
    idx = list(PROPERTIES).index(prop)
    return np.random.default_rng(np.random.SeedSequence([seed, idx, dim]))


def run_property(prop: str, dim: int, samples: int, seed: int, tolerances: Optional[dict] = None,
                 corrupt: bool = False, **kwargs) -> PropertyResult:
    tol = {**DEFAULT_TOLERANCES, **(tolerances or {})}
    method, key = PROPERTIES[prop]
    slack = tol[key] if prop != "overlap_converse" else 0.0
    ens = Ensembles(dim, samples, tol, corrupt=corrupt, **kwargs)
    out: Outcome = getattr(ens, method)(stream(seed, prop, dim))
    res = np.asarray(out.residuals, dtype=float)
    bad = np.flatnonzero(~(res <= slack))
    replay = None
    if bad.size:
        i = int(bad[0])
        replay = {"property": prop, "dim": dim, "seed": seed, "samples": samples, "index": i,
                  "residual": float(res[i]), "inputs": out.inputs(i)}
    worst = float(res.max()) if res.size else 0.0
    return PropertyResult(prop, dim, int(res.size), int(res.size - bad.size), int(bad.size), worst, seed, slack,
                          replay, out.notes)


def run_verify(dims=range(2, 7), samples: int = 1000, seed: int = 42, tolerances: Optional[dict] = None,
               properties=None, corrupt: bool = False, **kwargs) -> list[PropertyResult]:
    results = []
    for prop in properties or PROPERTIES:
        for dim in dims:
            if dim > DIM_LIMITS.get(prop, 10**9):
                continue
            t0 = time.perf_counter()
            r = run_property(prop, dim, samples, seed, tolerances, corrupt, **kwargs)
            log.info("%s dim=%d: %d/%d pass, worst %.3e (%.2fs)", prop, dim, r.passes, r.samples,
                     r.worst_residual, time.perf_counter() - t0)
            results.append(r)
    return results
