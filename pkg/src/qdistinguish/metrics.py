"""Distances and fidelities between density matrices.

Every function takes :class:`~qdistinguish.states.DensityMatrix` objects or
plain arrays. Arrays may carry leading batch axes; they are not validated,
which is what the ensemble drivers rely on for speed.
"""

from __future__ import annotations

import enum
import math

import numpy as np
import numpy.typing as npt

from .errors import DimensionMismatch
from .numerics import matrix_sqrt_psd, trace_norm
from .states import RANK_TOL, SpectrumLike, as_spectrum, support_projector


class MetricKind(enum.Enum):
    HILBERT_SCHMIDT = "hs"
    TRACE = "trace"
    BURES = "bures"

    @property
    def diameter(self) -> float:
        return 1.0 if self is MetricKind.TRACE else math.sqrt(2.0)

    @classmethod
    def parse(cls, name: str | MetricKind) -> MetricKind:
        if isinstance(name, MetricKind):
            return name
        key = name.strip().lower().replace("-", "_")
        aliases = {"hs": cls.HILBERT_SCHMIDT, "hilbert_schmidt": cls.HILBERT_SCHMIDT,
                   "hilbertschmidt": cls.HILBERT_SCHMIDT, "trace": cls.TRACE, "tr": cls.TRACE,
                   "bures": cls.BURES, "b": cls.BURES}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown metric {name!r}") from None


def _pair(rho1, rho2) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(rho1, dtype=complex)
    b = np.asarray(rho2, dtype=complex)
    if a.shape[-1] != b.shape[-1]:
        raise DimensionMismatch(f"dimensions differ: {a.shape[-1]} vs {b.shape[-1]}")
    return a, b


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def d_hs(rho1, rho2):
    """Hilbert-Schmidt distance ``sqrt(Tr (rho1 - rho2)^2)``."""
    a, b = _pair(rho1, rho2)
    diff = a - b
    return _scalar(np.sqrt(np.sum(np.abs(diff) ** 2, axis=(-2, -1))))


def d_trace(rho1, rho2):
    """Trace distance, half the trace norm of the difference."""
    a, b = _pair(rho1, rho2)
    return _scalar(0.5 * trace_norm(a - b))


def root_fidelity(rho1, rho2):
    """``Tr|sqrt(rho1) sqrt(rho2)|``, computed from singular values."""
    a, b = _pair(rho1, rho2)
    return _scalar(trace_norm(matrix_sqrt_psd(a) @ matrix_sqrt_psd(b)))


def fidelity(rho1, rho2):
    return _scalar(np.square(root_fidelity(rho1, rho2)))


def bures_from_root_fidelity(rf):
    return _scalar(np.sqrt(np.clip(2.0 - 2.0 * np.asarray(rf), 0.0, 2.0)))


def d_bures(rho1, rho2):
    """Bures distance ``sqrt(2 - 2 sqrt(F))``.

    Evaluated as ``||sqrt(rho1) - U sqrt(rho2)||_F`` with ``U`` the unitary
    that maximizes ``Re Tr(U sqrt(rho2) sqrt(rho1))``; the square of this
    norm is exactly ``2 - 2 sqrt(F)`` but it does not lose half the digits
    to cancellation when the states are close.
    """
    a, b = _pair(rho1, rho2)
    sa, sb = matrix_sqrt_psd(a), matrix_sqrt_psd(b)
    w, _, vh = np.linalg.svd(sb @ sa)
    u = np.conj(np.swapaxes(vh, -1, -2)) @ np.conj(np.swapaxes(w, -1, -2))
    return _scalar(np.sqrt(np.sum(np.abs(sa - u @ sb) ** 2, axis=(-2, -1))))


def bhattacharyya(p: SpectrumLike, q: SpectrumLike) -> float:
    """Classical root fidelity ``sum_i sqrt(p_i q_i)``."""
    p, q = as_spectrum(p).values, as_spectrum(q).values
    if p.size != q.size:
        raise DimensionMismatch(f"lengths differ: {p.size} vs {q.size}")
    return float(np.sum(np.sqrt(p * q)))


def fuchs_vdg_check(rho1, rho2) -> tuple[float, float, float]:
    """Return ``(1 - sqrt(F), D_tr, sqrt(1 - F))``; the middle lies between the outer two."""
    rf = root_fidelity(rho1, rho2)
    f = np.square(rf)
    return (_scalar(1.0 - rf), d_trace(rho1, rho2), _scalar(np.sqrt(np.clip(1.0 - f, 0.0, None))))


def support_overlap(rho1, rho2, rank_tol: float = RANK_TOL) -> float:
    """``Tr(P1 P2)`` for the support projectors of the two states."""
    p1 = support_projector(rho1, rank_tol).matrix
    p2 = support_projector(rho2, rank_tol).matrix
    if p1.shape != p2.shape:
        raise DimensionMismatch(f"dimensions differ: {p1.shape[0]} vs {p2.shape[0]}")
    return float(np.real(np.trace(p1 @ p2)))


def orthogonal_supports(rho1, rho2, tol: float = 1e-8) -> bool:
    return support_overlap(rho1, rho2) <= tol


def distance(metric: MetricKind | str, rho1, rho2):
    metric = MetricKind.parse(metric)
    if metric is MetricKind.HILBERT_SCHMIDT:
        return d_hs(rho1, rho2)
    if metric is MetricKind.TRACE:
        return d_trace(rho1, rho2)
    return d_bures(rho1, rho2)


def classical_distance(metric: MetricKind | str, p: npt.ArrayLike, q: npt.ArrayLike):
    """Distance between diagonal states given by probability vectors along the last axis."""
    metric = MetricKind.parse(metric)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if metric is MetricKind.HILBERT_SCHMIDT:
        out = np.sqrt(np.sum((p - q) ** 2, axis=-1))
    elif metric is MetricKind.TRACE:
        out = 0.5 * np.sum(np.abs(p - q), axis=-1)
    else:
        b = np.sum(np.sqrt(np.clip(p, 0, None) * np.clip(q, 0, None)), axis=-1)
        out = np.sqrt(np.clip(2.0 - 2.0 * b, 0.0, 2.0))
    return _scalar(out)
