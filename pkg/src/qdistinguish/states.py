"""Validated density matrices, spectra and support projectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np
import numpy.typing as npt

from .errors import InvalidSpectrum, NotHermitian, NotPsd, TraceNotOne
from .numerics import dagger, hermiticity_residual

RANK_TOL = 1e-10
STATE_HERMITICITY_TOL = 1e-10
STATE_PSD_TOL = 1e-9
STATE_TRACE_TOL = 1e-10
SPECTRUM_CLAMP_TOL = 1e-12
SPECTRUM_SUM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Probability vector of eigenvalues, kept in the order it was built with.

    Entries in ``[-1e-12, 0)`` are clamped to zero; the vector must sum to one.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=float).reshape(-1)
        if v.size == 0:
            raise InvalidSpectrum("spectrum is empty")
        if not np.all(np.isfinite(v)):
            raise InvalidSpectrum("spectrum has non-finite entries")
        if np.min(v) < -SPECTRUM_CLAMP_TOL:
            raise InvalidSpectrum(f"negative entry {np.min(v):.3e}")
        v = np.clip(v, 0.0, None)
        if abs(v.sum() - 1.0) > SPECTRUM_SUM_TOL:
            raise InvalidSpectrum(f"entries sum to {v.sum():.12g}, expected 1")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def _trusted(cls, values: np.ndarray) -> Spectrum:
        # eigenvalues of an already validated state; skip the tighter checks
        obj = object.__new__(cls)
        v = np.clip(np.asarray(values, dtype=float), 0.0, None)
        v.setflags(write=False)
        object.__setattr__(obj, "values", v)
        return obj

    def __len__(self) -> int:
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return bool(np.array_equal(self.values, other.values))

    def __hash__(self) -> int:
        return hash(self.values.tobytes())

    def __repr__(self) -> str:
        return f"Spectrum({self.values.tolist()!r})"

    @property
    def ascending(self) -> np.ndarray:
        return np.sort(self.values, kind="stable")

    @property
    def descending(self) -> np.ndarray:
        return self.values[np.argsort(-self.values, kind="stable")]


SpectrumLike = Union[Spectrum, npt.ArrayLike]


def as_spectrum(p: SpectrumLike) -> Spectrum:
    return p if isinstance(p, Spectrum) else Spectrum(np.asarray(p, dtype=float))


def sort_spectrum(p: SpectrumLike, direction: Literal["ascending", "descending"] = "ascending") -> Spectrum:
    p = as_spectrum(p)
    if direction == "ascending":
        return Spectrum._trusted(p.ascending)
    if direction == "descending":
        return Spectrum._trusted(p.descending)
    raise ValueError(f"unknown direction {direction!r}")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state. Build with :func:`validate_state`."""

    matrix: np.ndarray
    spectrum: Spectrum
    eigenvectors: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True, eq=False)
class Projector:
    matrix: np.ndarray
    rank: int

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def validate_state(m: npt.ArrayLike) -> DensityMatrix:
    """Check Hermiticity, positivity and unit trace, and cache the spectrum.

    Raises
    ------
    NotHermitian, NotPsd, TraceNotOne
        With the measured residual in the message.
    """
    if isinstance(m, DensityMatrix):
        return m
    a = np.array(m, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise NotHermitian(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotHermitian("matrix has non-finite entries")
    res = hermiticity_residual(a)
    if res > STATE_HERMITICITY_TOL:
        raise NotHermitian(f"Hermiticity violated: max |M - M^dagger| = {res:.3e}")
    a = 0.5 * (a + dagger(a))
    vals, vecs = np.linalg.eigh(a)
    if vals[0] < -STATE_PSD_TOL:
        raise NotPsd(f"positivity violated: min eigenvalue = {vals[0]:.3e}")
    tr = float(np.trace(a).real)
    if abs(tr - 1.0) > STATE_TRACE_TOL:
        raise TraceNotOne(f"unit trace violated: Tr M = {tr:.12g} (residual {abs(tr - 1):.3e})")
    a.setflags(write=False)
    return DensityMatrix(a, Spectrum._trusted(vals), vecs)


def diag_state(p: SpectrumLike) -> DensityMatrix:
    """Diagonal state with the entries of ``p`` in the given order."""
    p = as_spectrum(p)
    return validate_state(np.diag(p.values).astype(complex))


def pure_state(psi: npt.ArrayLike) -> DensityMatrix:
    """``|psi><psi|`` for a (not necessarily normalized) vector."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return validate_state(np.outer(psi, psi.conj()))


def maximally_mixed(dim: int) -> DensityMatrix:
    return validate_state(np.eye(dim) / dim)


def numerical_rank(rho: DensityMatrix | npt.ArrayLike, rank_tol: float = RANK_TOL) -> int:
    rho = validate_state(rho)
    return int(np.count_nonzero(rho.spectrum.values > rank_tol))


def support_projector(rho: DensityMatrix | npt.ArrayLike, rank_tol: float = RANK_TOL) -> Projector:
    """Projector onto the span of eigenvectors whose eigenvalue exceeds ``rank_tol``."""
    rho = validate_state(rho)
    keep = rho.spectrum.values > rank_tol
    v = rho.eigenvectors[:, keep]
    p = v @ v.conj().T
    return Projector(0.5 * (p + p.conj().T), int(keep.sum()))
