"""Dense Hermitian-matrix primitives with Hilbert-Schmidt geometry.

Everything downstream (witness algebra, map normalization, boundary scans)
reduces to a handful of operations on Hermitian matrices: the real inner
product <X, Y> = Tr(XY), eigendecompositions, principal square roots and
inverses of definite matrices, and the orthonormal Hermitian basis used to
write maps as real matrices.
"""

from typing import NamedTuple

import numpy as np

# Relative tolerance for accepting "Hermitian up to rounding" input.
DEFAULT_HERM_TOL = 1e-8
# Relative clamp below which small negative eigenvalues are treated as zero.
PSD_CLAMP_TOL = 1e-10
# Relative floor below which a positive matrix is considered singular.
PD_EPS = 1e-12


class Spectrum(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` is real and ascending; ``eigenvectors[:, i]`` is the
    unit eigenvector for ``eigenvalues[i]``, so
    ``eigenvectors @ diag(eigenvalues) @ eigenvectors.conj().T``
    reconstructs the matrix.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_hermitian(entries, tol: float = DEFAULT_HERM_TOL) -> np.ndarray:
    """Validate a square array as Hermitian and return its symmetrization.

    :param entries: square array-like with complex entries.
    :param tol: relative tolerance on the anti-Hermitian part.
    :return: ``(X + X^dag)/2`` as a complex ndarray.
    :raises ValueError: if the input is not square or the anti-Hermitian
        part exceeds ``tol`` relative to ``max(1, ||X||)``.
    """
    X = np.asarray(entries, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {X.shape}")
    herm = (X + X.conj().T) / 2.0
    skew = np.linalg.norm(X - herm)
    scale = max(1.0, np.linalg.norm(X))
    if skew > tol * scale:
        raise ValueError(
            f"matrix is not Hermitian: anti-Hermitian norm {skew:.3e} "
            f"exceeds {tol:.1e} * {scale:.3e}"
        )
    return herm


def hs_inner(X: np.ndarray, Y: np.ndarray) -> float:
    """Hilbert-Schmidt inner product Tr(X Y) of two Hermitian matrices.

    Real for Hermitian arguments; the tiny imaginary residue from rounding
    is dropped.
    """
    return float(np.trace(X @ Y).real)


def hs_norm(X: np.ndarray) -> float:
    """Hilbert-Schmidt (Frobenius) norm ``sqrt(Tr(X^2))``."""
    return float(np.linalg.norm(X))


def eig_hermitian(X: np.ndarray) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    :param X: Hermitian matrix.
    :return: :class:`Spectrum` with real ascending eigenvalues and a
        unitary eigenvector frame.
    :raises np.linalg.LinAlgError: if the eigensolver fails to converge
        (the message names the failing matrix size).
    """
    try:
        vals, vecs = np.linalg.eigh(X)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(
            f"eigensolver failed on a {X.shape[0]}x{X.shape[1]} matrix: {exc}"
        ) from exc
    return Spectrum(vals, vecs)


def min_eig(X: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(np.linalg.eigvalsh(X)[0])


def sqrt_psd(X: np.ndarray, clamp_tol: float = PSD_CLAMP_TOL) -> np.ndarray:
    """Principal square root of a positive-semidefinite matrix.

    Eigenvalues in ``[-clamp_tol * ||X||, 0)`` are clamped to zero before
    taking the root; anything more negative is rejected.

    :param X: Hermitian positive-semidefinite matrix.
    :param clamp_tol: relative clamp for rounding-level negative eigenvalues.
    :return: Hermitian PSD matrix S with ``S @ S = X``.
    :raises ValueError: if X has an eigenvalue below the clamp window.
    """
    vals, vecs = np.linalg.eigh(X)
    floor = -clamp_tol * max(1e-300, float(np.abs(vals).max()))
    if vals[0] < floor:
        raise ValueError(
            f"matrix is not positive semidefinite: min eigenvalue {vals[0]:.3e}"
        )
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def inv_pd(X: np.ndarray, eps_pd: float = PD_EPS) -> np.ndarray:
    """Inverse of a Hermitian positive-definite matrix via eigendecomposition.

    :param X: Hermitian positive-definite matrix.
    :param eps_pd: relative definiteness floor; eigenvalues at or below
        ``eps_pd * max|eigenvalue|`` are treated as singular.
    :return: Hermitian inverse.
    :raises ValueError: if X is not strictly positive definite; the message
        carries the offending eigenvalue.
    """
    vals, vecs = np.linalg.eigh(X)
    if vals[0] <= eps_pd * max(1e-300, float(np.abs(vals).max())):
        raise ValueError(
            f"matrix is not positive definite: min eigenvalue {vals[0]:.3e}"
        )
    return (vecs / vals) @ vecs.conj().T


def hermitian_basis(k: int) -> np.ndarray:
    """Orthonormal basis of the real space of k x k Hermitian matrices.

    Element 0 is ``I/sqrt(k)``; elements 1..k-1 are the diagonal traceless
    generators; the rest are the symmetric and antisymmetric off-diagonal
    pairs, each normalized to ``Tr(E_a E_b) = delta_ab``.

    :param k: dimension, k >= 1.
    :return: array of shape ``(k*k, k, k)``.
    """
    if k < 1:
        raise ValueError(f"dimension must be >= 1, got {k}")
    basis = np.zeros((k * k, k, k), dtype=complex)
    basis[0] = np.eye(k) / np.sqrt(k)
    idx = 1
    # Diagonal traceless: diag(1, ..., 1, -l, 0, ...) / sqrt(l(l+1)).
    for ell in range(1, k):
        d = np.zeros(k)
        d[:ell] = 1.0
        d[ell] = -ell
        basis[idx] = np.diag(d) / np.sqrt(ell * (ell + 1))
        idx += 1
    # Off-diagonal symmetric and antisymmetric pairs.
    for i in range(k):
        for j in range(i + 1, k):
            E = np.zeros((k, k), dtype=complex)
            E[i, j] = E[j, i] = 1.0 / np.sqrt(2.0)
            basis[idx] = E
            idx += 1
            E = np.zeros((k, k), dtype=complex)
            E[i, j] = -1j / np.sqrt(2.0)
            E[j, i] = 1j / np.sqrt(2.0)
            basis[idx] = E
            idx += 1
    return basis


def basis_coords(X: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Real coordinates of a Hermitian matrix in an orthonormal basis."""
    return np.einsum("aij,ji->a", basis, X).real


def from_basis_coords(coords: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Hermitian matrix with the given real coordinates in ``basis``."""
    return np.einsum("a,aij->ij", np.asarray(coords, dtype=float), basis)
