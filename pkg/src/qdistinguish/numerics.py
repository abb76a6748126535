"""Dense complex linear algebra, sampling and combinatorial helpers.

Matrix routines accept a single ``(n, n)`` array or a stack ``(..., n, n)``
and broadcast over leading axes, which lets the verification ensembles run
thousands of small problems in one call.
"""

from __future__ import annotations

import itertools
import math
from typing import Union

import numpy as np
import numpy.typing as npt

from .errors import DimensionTooLarge, InvalidDimension, InvalidState, NoConvergence, NotHermitian, NotPsd

Seed = Union[int, np.random.Generator, np.random.SeedSequence, None]

UNITARITY_TOL = 1e-10
HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-9
PERMUTATION_CAP = 8


def as_rng(seed: Seed) -> np.random.Generator:
    """Return a generator for ``seed``; generators pass through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    """Split ``seed`` into ``count`` independent child streams."""
    return np.random.SeedSequence(seed).spawn(count)


def dagger(a: npt.ArrayLike) -> np.ndarray:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(np.asarray(a), -1, -2))


def _check_square(a: np.ndarray) -> None:
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] < 1:
        raise InvalidDimension(f"expected square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidDimension("matrix has non-finite entries")


def hermiticity_residual(h: npt.ArrayLike) -> float:
    h = np.asarray(h)
    return float(np.max(np.abs(h - dagger(h)))) if h.size else 0.0


def is_unitary(u: npt.ArrayLike, tol: float = UNITARITY_TOL) -> bool:
    u = np.asarray(u)
    eye = np.eye(u.shape[-1])
    return bool(np.max(np.abs(u @ dagger(u) - eye)) <= tol)


def herm_eig(h: npt.ArrayLike, hermiticity_tol: float = HERMITICITY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like, shape (..., n, n)
        Hermitian matrix or stack of them.
    hermiticity_tol : float
        Maximum allowed ``|H - H^dagger|`` entry.

    Returns
    -------
    eigenvalues : ndarray, shape (..., n)
        Real eigenvalues in ascending order.
    eigenvectors : ndarray, shape (..., n, n)
        Unitary whose columns are the matching eigenvectors.
    """
    h = np.asarray(h, dtype=complex)
    _check_square(h)
    res = hermiticity_residual(h)
    if res > hermiticity_tol:
        raise NotHermitian(f"matrix is not Hermitian: max |H - H^dagger| = {res:.3e}")
    try:
        # symmetrize so that LAPACK sees exactly Hermitian input
        return np.linalg.eigh(0.5 * (h + dagger(h)))
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


def _reassemble(vecs: np.ndarray, vals: np.ndarray) -> np.ndarray:
    return (vecs * vals[..., None, :]) @ dagger(vecs)


def _flush_noise(vals: np.ndarray) -> np.ndarray:
    """Zero eigenvalues below ``n * eps * max|lambda|``; they are rounding noise, and their roots are not."""
    n = vals.shape[-1]
    scale = np.max(np.abs(vals), axis=-1, keepdims=True)
    return np.where(vals <= n * np.finfo(float).eps * scale, 0.0, vals)


def matrix_sqrt_psd(m: npt.ArrayLike, psd_tol: float = PSD_TOL) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues in ``[-psd_tol, 0)`` are treated as zero; anything more
    negative raises :class:`NotPsd`.
    """
    vals, vecs = herm_eig(m)
    lo = float(np.min(vals))
    if lo < -psd_tol:
        raise NotPsd(f"matrix is not PSD: min eigenvalue = {lo:.3e}")
    return _reassemble(vecs, np.sqrt(_flush_noise(vals)))


def matrix_power_psd(m: npt.ArrayLike, s: float, psd_tol: float = PSD_TOL) -> np.ndarray:
    """Real power of a PSD matrix computed spectrally; ``0**s`` is 0 for ``s > 0``."""
    vals, vecs = herm_eig(m)
    lo = float(np.min(vals))
    if lo < -psd_tol:
        raise NotPsd(f"matrix is not PSD: min eigenvalue = {lo:.3e}")
    return _reassemble(vecs, clipped_power(_flush_noise(vals), s))


def psd_eigvals(m: npt.ArrayLike) -> np.ndarray:
    """Ascending eigenvalues of a PSD matrix with rounding noise flushed to zero, as the power routines see them."""
    return _flush_noise(herm_eig(m)[0])


def clipped_power(values: npt.ArrayLike, s: float) -> np.ndarray:
    v = np.clip(np.asarray(values, dtype=float), 0.0, None)
    out = np.zeros_like(v)
    np.power(v, s, out=out, where=v > 0)
    return out


def singular_values(a: npt.ArrayLike) -> np.ndarray:
    """Singular values in descending order."""
    a = np.asarray(a, dtype=complex)
    _check_square(a)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


def trace_norm(a: npt.ArrayLike) -> float | np.ndarray:
    """Sum of singular values, ``Tr|A|``."""
    out = singular_values(a).sum(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def abs_of(a: npt.ArrayLike) -> np.ndarray:
    """``|A| = sqrt(A A^dagger)``, built from the SVD ``A = W S V^dagger`` as ``W S W^dagger``."""
    a = np.asarray(a, dtype=complex)
    _check_square(a)
    try:
        w, s, _ = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return _reassemble(w, s)


def haar_unitaries(dim: int, count: int, seed: Seed = None) -> np.ndarray:
    """Stack of ``count`` Haar-distributed unitaries, shape ``(count, dim, dim)``.

    QR of a complex Ginibre matrix, with the phases of ``diag(R)`` pushed
    into ``Q`` so the result is Haar rather than QR-biased.
    """
    if dim < 1:
        raise InvalidDimension("dim must be >= 1")
    rng = as_rng(seed)
    z = (rng.standard_normal((count, dim, dim)) + 1j * rng.standard_normal((count, dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phase = d / np.where(np.abs(d) == 0, 1.0, np.abs(d))
    return q * phase[..., None, :]


def haar_unitary(dim: int, seed: Seed = None) -> np.ndarray:
    """Single Haar-random unitary; deterministic for a fixed integer seed."""
    return haar_unitaries(dim, 1, seed)[0]


def random_densities(dim: int, rank: int, count: int, seed: Seed = None) -> np.ndarray:
    """Stack of random states ``G G^dagger / Tr(G G^dagger)`` with ``G`` of shape ``dim x rank``."""
    if dim < 1:
        raise InvalidDimension("dim must be >= 1")
    if not 1 <= rank <= dim:
        raise InvalidDimension(f"rank must lie in [1, {dim}], got {rank}")
    rng = as_rng(seed)
    g = rng.standard_normal((count, dim, rank)) + 1j * rng.standard_normal((count, dim, rank))
    rho = g @ dagger(g)
    rho = rho / np.trace(rho, axis1=-2, axis2=-1).real[:, None, None]
    return 0.5 * (rho + dagger(rho))


def random_density(dim: int, rank: int | None = None, seed: Seed = None) -> np.ndarray:
    return random_densities(dim, dim if rank is None else rank, 1, seed)[0]


def random_hermitian(dim: int, seed: Seed = None, count: int | None = None) -> np.ndarray:
    rng = as_rng(seed)
    shape = (dim, dim) if count is None else (count, dim, dim)
    g = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return 0.5 * (g + dagger(g))


def random_isometry(dim: int, env_dim: int, seed: Seed = None) -> np.ndarray:
    """First ``dim`` columns of a Haar unitary on ``dim * env_dim``; maps C^dim into C^dim (x) C^env."""
    return haar_unitary(dim * env_dim, seed)[:, :dim]


def random_channel_apply(rho: npt.ArrayLike, env_dim: int, seed: Seed = None) -> np.ndarray:
    """Apply a random channel: Haar isometry into system (x) environment, then trace out the environment.

    The same seed always yields the same channel, so two states passed with
    one seed go through one channel. ``env_dim == 1`` reduces to a unitary
    conjugation.
    """
    rho = np.asarray(rho, dtype=complex)
    _check_square(rho)
    if abs(np.trace(rho) - 1) > 1e-9 or hermiticity_residual(rho) > 1e-9:
        raise InvalidState("input is not a density matrix")
    if np.min(np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))) < -1e-9:
        raise InvalidState("input is not positive semidefinite")
    dim = rho.shape[-1]
    v = random_isometry(dim, env_dim, seed)
    return apply_isometry_channel(v, rho, dim, env_dim)


def apply_isometry_channel(v: np.ndarray, rho: np.ndarray, dim: int, env_dim: int) -> np.ndarray:
    big = v @ rho @ dagger(v)
    big = big.reshape(big.shape[:-2] + (dim, env_dim, dim, env_dim))
    out = np.trace(big, axis1=-3, axis2=-1)
    return 0.5 * (out + dagger(out))


def all_permutations(dim: int) -> list[tuple[int, ...]]:
    """All ``dim!`` permutations of ``range(dim)`` in lexicographic order."""
    if dim < 1:
        raise InvalidDimension("dim must be >= 1")
    if dim > PERMUTATION_CAP:
        raise DimensionTooLarge(f"dim {dim} exceeds permutation cap {PERMUTATION_CAP}")
    return list(itertools.permutations(range(dim)))


def permutation_array(dim: int) -> np.ndarray:
    """Same as :func:`all_permutations` as an ``(dim!, dim)`` integer array."""
    return np.array(all_permutations(dim), dtype=np.intp).reshape(-1, dim)


def unistochastic_from(u: npt.ArrayLike) -> np.ndarray:
    """``B_ij = |U_ij|^2``; bistochastic whenever ``U`` is unitary."""
    return np.abs(np.asarray(u)) ** 2


def relabel_isometry(mapping) -> np.ndarray:
    """Isometry ``|k> -> |mapping[k]> (x) |k>``; tracing out the copy measures and re-prepares.

    The resulting channel is ``rho -> sum_k rho_kk |mapping[k]><mapping[k]|``.
    """
    dim = len(mapping)
    v = np.zeros((dim * dim, dim), dtype=complex)
    for k, target in enumerate(mapping):
        v[target * dim + k, k] = 1.0
    return v
