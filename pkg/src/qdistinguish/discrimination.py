"""Deterministic discrimination of finite sets of states.

A set can be told apart with certainty exactly when the supports are
pairwise orthogonal. The witness measurement is the list of support
projectors plus one inconclusive element covering what is left of the
space.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptySet,
    InvalidDimension,
    NotDiscriminable,
    SetTooLarge,
    UnsupportedMetric,
)
from .metrics import MetricKind, distance
from .numerics import Seed, as_rng, haar_unitaries, haar_unitary
from .states import RANK_TOL, DensityMatrix, Spectrum, as_spectrum, support_projector, validate_state

OVERLAP_TOL = 1e-8
CLIQUE_CAP = 24
POVM_COMPLETENESS_TOL = 1e-8
POVM_HERMITICITY_TOL = 1e-10
POVM_EIG_TOL = 1e-9


@dataclass
class Povm:
    elements: list[np.ndarray]
    dim: int

    def violations(self) -> list[str]:
        """Broken POVM conditions (Hermiticity, 0 <= A <= 1, completeness)."""
        out = []
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for i, a in enumerate(self.elements):
            herm = float(np.max(np.abs(a - a.conj().T)))
            if herm > POVM_HERMITICITY_TOL:
                out.append(f"element {i} not Hermitian ({herm:.3e})")
            ev = np.linalg.eigvalsh(0.5 * (a + a.conj().T))
            if ev[0] < -POVM_EIG_TOL or ev[-1] > 1 + POVM_EIG_TOL:
                out.append(f"element {i} eigenvalues outside [0, 1]: [{ev[0]:.3e}, {ev[-1]:.3e}]")
            total += a
        comp = float(np.max(np.abs(total - np.eye(self.dim))))
        if comp > POVM_COMPLETENESS_TOL:
            out.append(f"elements do not sum to identity ({comp:.3e})")
        return out

    def success_probabilities(self, states: Sequence) -> list[float]:
        """``Tr(A_k rho_k)`` for each state, paired with the first ``len(states)`` elements."""
        return [float(np.real(np.trace(a @ np.asarray(r)))) for a, r in zip(self.elements, states)]


@dataclass
class DiscriminationReport:
    discriminable: bool
    rank_sum: int
    dim: int
    max_pairwise_overlap: float
    povm: Optional[Povm] = None


def _validated(states: Sequence) -> list[DensityMatrix]:
    if len(states) == 0:
        raise EmptySet("no states given")
    out = [validate_state(s) for s in states]
    if len({s.dim for s in out}) > 1:
        raise DimensionMismatch("states differ in dimension")
    return out


def overlap_matrix(states: Sequence, rank_tol: float = RANK_TOL) -> np.ndarray:
    """``Tr(P_i P_j)`` for the support projectors of all pairs."""
    projs = [support_projector(s, rank_tol).matrix for s in _validated(states)]
    stack = np.array(projs)
    # Tr(P_i P_j) = sum_ab P_i[a,b] P_j[b,a]
    return np.einsum("iab,jba->ij", stack, stack).real


def can_discriminate(states: Sequence, overlap_tol: float = OVERLAP_TOL) -> DiscriminationReport:
    states = _validated(states)
    ranks = [support_projector(s).rank for s in states]
    ov = overlap_matrix(states)
    off = ov[~np.eye(len(states), dtype=bool)]
    worst = float(off.max()) if off.size else 0.0
    return DiscriminationReport(worst <= overlap_tol, int(sum(ranks)), states[0].dim, worst)


def build_discrimination_povm(states: Sequence, overlap_tol: float = OVERLAP_TOL) -> Povm:
    """Support projectors ``P_1..P_K`` followed by the inconclusive ``1 - sum_k P_k``."""
    states = _validated(states)
    report = can_discriminate(states, overlap_tol)
    if not report.discriminable:
        raise NotDiscriminable(f"supports overlap: max Tr(P_i P_j) = {report.max_pairwise_overlap:.3e}")
    projs = [support_projector(s).matrix for s in states]
    rest = np.eye(report.dim) - sum(projs)
    return Povm(projs + [0.5 * (rest + rest.conj().T)], report.dim)


def discriminate(states: Sequence, overlap_tol: float = OVERLAP_TOL) -> DiscriminationReport:
    """:func:`can_discriminate` with the witness POVM attached when one exists."""
    report = can_discriminate(states, overlap_tol)
    if report.discriminable:
        report.povm = build_discrimination_povm(states, overlap_tol)
    return report


def projective_search(states: Sequence, trials: int = 200, seed: Seed = None) -> float:
    """Best ``min_k Tr(A_k rho_k)`` over projective measurements found by search.

    Candidate bases are the eigenbases of the states and of their sum plus
    ``trials`` Haar-random bases; every assignment of basis vectors to the
    ``K + 1`` outcomes is tried. Intended for ``dim <= 3`` and few states.
    """
    states = _validated(states)
    dim, k = states[0].dim, len(states)
    bases = [s.eigenvectors for s in states]
    bases.append(np.linalg.eigh(sum(s.matrix for s in states))[1])
    bases.extend(haar_unitaries(dim, trials, seed))
    rhos = np.array([s.matrix for s in states])
    assignments = np.array(list(itertools.product(range(k + 1), repeat=dim)))
    best = 0.0
    for basis in bases:
        # weights[k, b] = <b|rho_k|b>
        weights = np.einsum("ab,kac,cb->kb", basis.conj(), rhos, basis).real
        captured = np.zeros((assignments.shape[0], k))
        for j in range(k):
            captured[:, j] = (weights[j][None, :] * (assignments == j)).sum(axis=1)
        best = max(best, float(captured.min(axis=1).max()))
    return best


def _max_clique(adj: np.ndarray) -> list[int]:
    """Exact maximum clique; the lexicographically smallest one among equals.

    Depth-first over candidates in increasing index order, pruning any
    branch that cannot strictly beat the incumbent, so the first clique of
    maximum size reached is the smallest in lexicographic order.
    """
    n = adj.shape[0]
    best: list[int] = []

    def expand(clique: list[int], cands: list[int]) -> None:
        nonlocal best
        if len(clique) > len(best):
            best = clique[:]
        for pos, v in enumerate(cands):
            if len(clique) + len(cands) - pos <= len(best):
                return
            expand(clique + [v], [u for u in cands[pos + 1:] if adj[v, u]])

    expand([], list(range(n)))
    return best


def max_distinguishable_subset(states: Sequence, overlap_tol: float = OVERLAP_TOL) -> tuple[int, tuple[int, ...]]:
    """Largest subset of ``states`` that is perfectly distinguishable, by exact max clique."""
    if len(states) > CLIQUE_CAP:
        raise SetTooLarge(f"{len(states)} states exceeds exact search cap {CLIQUE_CAP}")
    ov = overlap_matrix(states)
    adj = ov <= overlap_tol
    np.fill_diagonal(adj, False)
    clique = _max_clique(adj)
    return len(clique), tuple(clique)


def simplex_side_check(states: Sequence, metric: MetricKind | str = MetricKind.TRACE, tol: float = 1e-8) -> bool:
    """True iff every pair of states sits at the metric's diameter, i.e. they span a maximal simplex."""
    metric = MetricKind.parse(metric)
    if metric is MetricKind.HILBERT_SCHMIDT:
        raise UnsupportedMetric("Hilbert-Schmidt diameter does not characterize orthogonal supports")
    states = _validated(states)
    if len(states) < 2:
        raise EmptySet("need at least two states")
    return all(abs(distance(metric, a, b) - metric.diameter) <= tol
               for a, b in itertools.combinations(states, 2))


def sic_simplex_side(dim: int) -> float:
    """Bures side length ``sqrt(2 - 2/sqrt(dim + 1))`` of the simplex formed by a SIC set."""
    if dim < 2:
        raise InvalidDimension("SIC side length needs dim >= 2")
    return math.sqrt(2.0 - 2.0 / math.sqrt(dim + 1.0))


def packed_diagonal_states(spectra: Sequence) -> list[DensityMatrix]:
    """Diagonal states whose supports are packed into disjoint index blocks, smallest rank first.

    Spectra that no longer fit start again at index 0.
    """
    specs = [as_spectrum(p) for p in spectra]
    dim = len(specs[0])
    ranks = [int(np.count_nonzero(p.values > RANK_TOL)) for p in specs]
    out: list[Optional[DensityMatrix]] = [None] * len(specs)
    cursor = 0
    for i in sorted(range(len(specs)), key=lambda j: (ranks[j], j)):
        vals = np.sort(specs[i].values)[::-1]
        start = cursor if cursor + ranks[i] <= dim else 0
        cursor = start + ranks[i] if start == cursor else cursor
        arranged = np.roll(vals, start)
        out[i] = validate_state(np.diag(arranged).astype(complex))
    return out  # type: ignore[return-value]


def diagonal_reduction_check(spectra: Sequence, overlap_tol: float = OVERLAP_TOL, trials: int = 50,
                             seed: Seed = None) -> bool:
    """Check that randomly rotated states never beat the best diagonal arrangement.

    The diagonal count uses :func:`packed_diagonal_states`; each trial
    conjugates every spectrum by its own Haar unitary and recounts. Any
    ``False`` means a bug, since rotations cannot help.
    """
    if len(spectra) > CLIQUE_CAP:
        raise SetTooLarge(f"{len(spectra)} spectra exceeds exact search cap {CLIQUE_CAP}")
    specs = [as_spectrum(p) for p in spectra]
    if len({len(p) for p in specs}) > 1:
        raise DimensionMismatch("spectra differ in length")
    diag_count, _ = max_distinguishable_subset(packed_diagonal_states(specs), overlap_tol)
    rng = as_rng(seed)
    dim = len(specs[0])
    for _ in range(trials):
        rotated = []
        for p in specs:
            u = haar_unitary(dim, rng)
            m = (u * p.values[None, :]) @ u.conj().T
            rotated.append(validate_state(0.5 * (m + m.conj().T)))
        count, _ = max_distinguishable_subset(rotated, overlap_tol)
        if count > diag_count:
            return False
    return True


def diagonal_count(spectra: Sequence[Spectrum]) -> int:
    """Largest ``m`` such that the ``m`` smallest ranks fit in the dimension."""
    specs = [as_spectrum(p) for p in spectra]
    dim = len(specs[0])
    ranks = sorted(int(np.count_nonzero(p.values > RANK_TOL)) for p in specs)
    return int(np.searchsorted(np.cumsum(ranks), dim, side="right"))
