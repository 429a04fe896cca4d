"""Transforming a positive map to unital and trace-preserving form.

For a witness A with map M, the goal is a product conjugation
A~ = (U (x) V) A (U (x) V)^dag whose map M~ satisfies

    M~(I_m / sqrt(m)) = I_n / sqrt(n)    (unital up to normalization)
    M~^T(I_n / sqrt(n)) = I_m / sqrt(m)  (trace preserving up to normalization)

This holds iff there are positive definite X, Y with M(X) proportional
to Y^{-1} and M^T(Y) proportional to X^{-1}. Such a pair is found by the
fixed-point iteration

    X_{k+1} = ( M^T( (M(X_k))^{-1} ) )^{-1},  rescaled to Tr X = m,

started at X_0 = I. At a fixed point X* with S* = M(X*), the output is
Y* = sqrt(m/n) (S*)^{-1}, U = sqrt(X*), V = sqrt(Y*); the square-root
gauge freedom is fixed by choosing the positive roots.

The iteration step is order reversing twice, hence order preserving, and
a strict contraction in the Hilbert projective metric for generic
interior witnesses; :func:`contraction_spectrum` reports the local
linearized rates at the fixed point.
"""

from dataclasses import dataclass, field

import numpy as np

from .bipartite import (
    Witness,
    apply_map,
    apply_transposed_map,
    product_transform,
)
from .hermitian import hermitian_basis, hs_norm, inv_pd, sqrt_psd

__all__ = [
    "NormalizationResult",
    "iterate_step",
    "normalize",
    "contraction_spectrum",
]


@dataclass(frozen=True)
class NormalizationResult:
    """Outcome of :func:`normalize`.

    ``witness`` is the transformed witness, ``U`` and ``V`` the positive
    factors of the product conjugation, ``X`` and ``Y`` the fixed-point
    pair (Tr X = m), ``history`` the per-iteration step norms
    ``||X_{k+1} - X_k||``, ``iterations`` the number of steps taken, and
    ``converged`` whether the final step norm reached the tolerance.
    """

    witness: Witness
    U: np.ndarray = field(repr=False)
    V: np.ndarray = field(repr=False)
    X: np.ndarray = field(repr=False)
    Y: np.ndarray = field(repr=False)
    history: list
    iterations: int
    converged: bool


def iterate_step(W: Witness, X: np.ndarray) -> np.ndarray:
    """One step of the fixed-point iteration, gauge-rescaled to Tr = m.

    X -> ( M^T( (M(X))^{-1} ) )^{-1}, then rescaled. Requires M(X) and
    the subsequent transposed image to be positive definite.

    :raises ValueError: if an intermediate matrix is not positive
        definite (the map is not strictly positive on the iterate).
    """
    S = apply_map(W, X)
    try:
        S_inv = inv_pd(S)
    except ValueError as exc:
        raise ValueError(f"map image is not positive definite: {exc}") from exc
    T = apply_transposed_map(W, S_inv)
    try:
        X_next = inv_pd(T)
    except ValueError as exc:
        raise ValueError(
            f"transposed-map image is not positive definite: {exc}"
        ) from exc
    return X_next * (W.m / np.trace(X_next).real)


def normalize(W: Witness, tol: float = 1e-12, max_iter: int = 200,
              x0: np.ndarray = None) -> NormalizationResult:
    """Drive the witness map to (scaled) unital and trace-preserving form.

    Iterates :func:`iterate_step` from ``x0`` (default I_m) until the
    Hilbert-Schmidt step norm ||X_{k+1} - X_k|| falls to ``tol`` or
    ``max_iter`` steps elapse. On convergence the returned witness
    satisfies both normalization conditions exactly at the fixed point
    (up to the step tolerance).

    :param W: witness whose map is strictly positive on the iterates.
    :param tol: stopping tolerance on the step norm.
    :param max_iter: iteration cap; non-convergence is reported in the
        result, not raised.
    :param x0: optional positive-definite start, any normalization.
    :return: :class:`NormalizationResult`.
    :raises ValueError: propagated from :func:`iterate_step` when an
        iterate leaves the positive-definite domain.
    """
    m, n = W.m, W.n
    if x0 is None:
        X = np.eye(m, dtype=complex)
    else:
        X = np.asarray(x0, dtype=complex)
        X = X * (m / np.trace(X).real)
    history = []
    converged = False
    iterations = 0
    for _ in range(max_iter):
        X_next = iterate_step(W, X)
        step = hs_norm(X_next - X)
        history.append(step)
        X = X_next
        iterations += 1
        if step <= tol:
            converged = True
            break
    S = apply_map(W, X)
    Y = np.sqrt(m / n) * inv_pd(S)
    U = sqrt_psd(X)
    V = sqrt_psd(Y)
    return NormalizationResult(
        witness=product_transform(W, U, V),
        U=U, V=V, X=X, Y=Y,
        history=history, iterations=iterations, converged=converged,
    )


def contraction_spectrum(W: Witness, X: np.ndarray,
                         fp_tol: float = 1e-8) -> np.ndarray:
    """Local contraction rates of the iteration at a fixed point.

    Linearizes the gauge-rescaled step around X (which must satisfy the
    fixed-point equation to ``fp_tol``, relative). The derivative maps
    the traceless subspace to itself and annihilates the gauge direction
    along X; its matrix on the traceless orthonormal basis is
    eigen-solved and the eigenvalue magnitudes are returned sorted in
    descending order (m^2 - 1 values). All magnitudes below one means the
    fixed point is locally attracting; for the identity-map witness every
    magnitude equals one (an isometry), and for the extremal 3 x 3
    builtin witness every magnitude equals 1/4.

    :param W: witness.
    :param X: fixed point of :func:`iterate_step`, Tr X = m.
    :param fp_tol: relative tolerance on the fixed-point residual.
    :return: descending eigenvalue magnitudes, shape (m*m - 1,).
    :raises ValueError: if X is not a fixed point to ``fp_tol``.
    """
    m = W.m
    X = np.asarray(X, dtype=complex)
    resid = hs_norm(iterate_step(W, X) - X)
    if resid > fp_tol * max(1.0, hs_norm(X)):
        raise ValueError(
            f"not a fixed point: step residual {resid:.3e} exceeds "
            f"{fp_tol:.1e} (relative)"
        )
    S_inv = inv_pd(apply_map(W, X))
    T = apply_transposed_map(W, S_inv)
    g = inv_pd(T)          # unrescaled step image G(X); g = (m/n) X at the fixed point
    trg = np.trace(g).real

    def deriv(delta: np.ndarray) -> np.ndarray:
        # derivative of G: chain rule through the two inversions
        dS = apply_map(W, delta)
        dT = apply_transposed_map(W, -S_inv @ dS @ S_inv)
        dG = -g @ dT @ g
        # derivative of the gauge rescale Z -> m Z / Tr Z at Z = g
        return (m / trg) * dG - (m * np.trace(dG).real / trg**2) * g

    basis = hermitian_basis(m)[1:]  # traceless part only
    dim = m * m - 1
    mat = np.empty((dim, dim))
    for a in range(dim):
        image = deriv(basis[a])
        mat[:, a] = np.einsum("bij,ji->b", basis, image).real
    eigs = np.linalg.eigvals(mat)
    mags = np.abs(eigs)
    return np.sort(mags)[::-1]
