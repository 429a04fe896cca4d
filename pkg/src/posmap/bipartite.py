"""Bipartite witness algebra and the witness <-> map correspondence.

A witness is a Hermitian matrix A on C^m (x) C^n, indexed by composite
row/column pairs in row-major order: the composite index I runs over
(i, j) = (1,1), (1,2), ..., (1,n), (2,1), ..., (m,n). Reshaping the
(mn, mn) matrix to (m, n, m, n) exposes the block entries A_{ij;kl}.

The associated map M sends Hermitian m x m matrices to Hermitian n x n
matrices through A_{ij;kl} = M_{jl;ki}, i.e.

    M(X)_{jl} = sum_{ik} A_{ij;kl} X_{ki},

and the transposed map M^T (the Hilbert-Schmidt adjoint, <Y, M X> =
<M^T Y, X>) comes from the same block tensor read the other way. A is
positive semidefinite iff M is completely positive; A is merely blockwise
positive on product vectors iff M is a positive map.
"""

from dataclasses import dataclass, field

import numpy as np

from .hermitian import (
    as_hermitian,
    basis_coords,
    eig_hermitian,
    hermitian_basis,
    hs_inner,
    hs_norm,
)

__all__ = [
    "Witness",
    "MapMatrix",
    "tensor",
    "product_vector",
    "partial_transpose",
    "partial_trace_1",
    "partial_trace_2",
    "apply_map",
    "apply_transposed_map",
    "biquadratic_form",
    "map_matrix",
    "witness_from_map_matrix",
    "witness_from_map",
    "product_transform",
    "diagnostics",
]


@dataclass(frozen=True)
class Witness:
    """Hermitian matrix on C^m (x) C^n with its bipartite block structure.

    :param m: first-factor dimension (>= 2).
    :param n: second-factor dimension (>= 2).
    :param matrix: Hermitian (m*n, m*n) array.
    """

    m: int
    n: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ValueError(f"factor dimensions must be >= 2, got {self.m}x{self.n}")
        mat = as_hermitian(self.matrix)
        if mat.shape != (self.m * self.n, self.m * self.n):
            raise ValueError(
                f"matrix shape {mat.shape} does not match dimensions "
                f"{self.m}x{self.n}"
            )
        object.__setattr__(self, "matrix", mat)

    @property
    def blocks(self) -> np.ndarray:
        """The (m, n, m, n) view with entries A_{ij;kl}."""
        return self.matrix.reshape(self.m, self.n, self.m, self.n)


@dataclass(frozen=True)
class MapMatrix:
    """Real matrix of a map in orthonormal Hermitian bases.

    ``coeffs[b, a] = <F_b, M(E_a)>`` where ``E`` is the m-side basis and
    ``F`` the n-side basis from :func:`hermitian_basis` (element 0 is the
    normalized identity). The map is unital iff column 0 is e_0 and
    trace-preserving iff row 0 is e_0^T.
    """

    m: int
    n: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float)
        if coeffs.shape != (self.n * self.n, self.m * self.m):
            raise ValueError(
                f"coefficient shape {coeffs.shape} does not match "
                f"({self.n * self.n}, {self.m * self.m})"
            )
        object.__setattr__(self, "coeffs", coeffs)


def tensor(B: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Kronecker product ordered so that (B (x) C)_{ij;kl} = B_ik C_jl."""
    return np.kron(B, C)


def product_vector(phi: np.ndarray, chi: np.ndarray) -> np.ndarray:
    """Composite vector with entries (phi (x) chi)_{ij} = phi_i chi_j."""
    return np.kron(np.asarray(phi), np.asarray(chi))


def partial_transpose(W: Witness) -> Witness:
    """Partial transpose on the second factor: (A^P)_{ij;kl} = A_{il;kj}.

    An involution; for product witnesses B (x) C it returns B (x) C^T.
    """
    blocks = W.blocks.transpose(0, 3, 2, 1)
    return Witness(W.m, W.n, blocks.reshape(W.m * W.n, W.m * W.n))


def partial_trace_1(W: Witness) -> np.ndarray:
    """Trace out the first factor: (Tr_1 A)_{jl} = sum_i A_{ij;il}."""
    return np.einsum("ijil->jl", W.blocks)


def partial_trace_2(W: Witness) -> np.ndarray:
    """Trace out the second factor: (Tr_2 A)_{ik} = sum_j A_{ij;kj}."""
    return np.einsum("ijkj->ik", W.blocks)


def apply_map(W: Witness, X: np.ndarray) -> np.ndarray:
    """Apply the map of the witness: M(X)_{jl} = sum_{ik} A_{ij;kl} X_{ki}.

    Sends Hermitian m x m input to Hermitian n x n output. The input is
    not validated; complex-linear action on arbitrary X is intentional.
    """
    return np.einsum("ijkl,ki->jl", W.blocks, np.asarray(X, dtype=complex))


def apply_transposed_map(W: Witness, Y: np.ndarray) -> np.ndarray:
    """Apply the Hilbert-Schmidt adjoint: M^T(Y)_{ik} = sum_{jl} A_{ij;kl} Y_{lj}."""
    return np.einsum("ijkl,lj->ik", W.blocks, np.asarray(Y, dtype=complex))


def biquadratic_form(W: Witness, phi: np.ndarray, chi: np.ndarray) -> float:
    """Evaluate f_A(phi, chi) = (phi (x) chi)^dag A (phi (x) chi).

    Real for any Hermitian witness; equals chi^dag M(phi phi^dag) chi.
    """
    phi = np.asarray(phi, dtype=complex)
    chi = np.asarray(chi, dtype=complex)
    val = np.einsum("ijkl,k,i,l,j->", W.blocks, phi, phi.conj(), chi, chi.conj())
    return float(val.real)


def map_matrix(W: Witness) -> MapMatrix:
    """Real matrix of the witness map in orthonormal Hermitian bases.

    :return: :class:`MapMatrix` with ``coeffs[b, a] = <F_b, M(E_a)>``.
    """
    E = hermitian_basis(W.m)
    F = hermitian_basis(W.n)
    # M(E_a) for all a at once: contract witness blocks with the basis stack.
    images = np.einsum("ijkl,aki->ajl", W.blocks, E)
    coeffs = np.einsum("bjl,alj->ba", F, images).real
    return MapMatrix(W.m, W.n, coeffs)


def witness_from_map_matrix(M: MapMatrix) -> Witness:
    """Reassemble the witness A = sum_{a,b} coeffs[b, a] E_a (x) F_b."""
    E = hermitian_basis(M.m)
    F = hermitian_basis(M.n)
    A = np.einsum("ba,aik,bjl->ijkl", M.coeffs, E, F)
    return Witness(M.m, M.n, A.reshape(M.m * M.n, M.m * M.n))


def witness_from_map(m: int, n: int, map_fn) -> Witness:
    """Build the witness of a map given as a complex-linear callable.

    ``map_fn`` must accept an arbitrary complex m x m array and return the
    n x n image under the complex-linear extension of the map (entrywise
    formulas extend automatically).

    :param m: input-side dimension.
    :param n: output-side dimension.
    :param map_fn: callable X -> M(X).
    :return: witness with blocks A_{i:,k:} = M(e_k e_i^dag).
    """
    blocks = np.zeros((m, n, m, n), dtype=complex)
    for i in range(m):
        for k in range(m):
            unit = np.zeros((m, m), dtype=complex)
            unit[k, i] = 1.0
            blocks[i, :, k, :] = np.asarray(map_fn(unit), dtype=complex)
    return Witness(m, n, blocks.reshape(m * n, m * n))


def product_transform(W: Witness, U: np.ndarray, V: np.ndarray) -> Witness:
    """Conjugate by a product operator: A -> (U (x) V) A (U (x) V)^dag.

    The transformed map acts as M~(Z) = V M(U^dag Z U) V^dag. U and V need
    not be unitary (the normalizer uses positive factors), only invertible
    enough for the result to stay a valid witness.
    """
    P = tensor(np.asarray(U, dtype=complex), np.asarray(V, dtype=complex))
    return Witness(W.m, W.n, P @ W.matrix @ P.conj().T)


def diagnostics(W: Witness) -> dict:
    """Structural report for a witness: spectra, marginals, map residuals.

    :return: dict with the witness trace, minimal eigenvalues of A and of
        its partial transpose, the PSD/PPT flags at tolerance 1e-10, the
        partial traces, and the unitality / trace-preservation residuals
        ``||M(I/sqrt(m)) - I/sqrt(n)||`` and ``||M^T(I/sqrt(n)) - I/sqrt(m)||``.
    """
    A = W.matrix
    spec = eig_hermitian(A)
    spec_pt = eig_hermitian(partial_transpose(W).matrix)
    eye_m = np.eye(W.m) / np.sqrt(W.m)
    eye_n = np.eye(W.n) / np.sqrt(W.n)
    unital_res = hs_norm(apply_map(W, eye_m) - eye_n)
    trace_res = hs_norm(apply_transposed_map(W, eye_n) - eye_m)
    return {
        "m": W.m,
        "n": W.n,
        "trace": float(np.trace(A).real),
        "hs_norm": hs_norm(A),
        "min_eig": float(spec.eigenvalues[0]),
        "max_eig": float(spec.eigenvalues[-1]),
        "min_eig_pt": float(spec_pt.eigenvalues[0]),
        "psd": bool(spec.eigenvalues[0] >= -1e-10),
        "ppt": bool(spec_pt.eigenvalues[0] >= -1e-10),
        "partial_trace_1": partial_trace_1(W),
        "partial_trace_2": partial_trace_2(W),
        "unitality_residual": unital_res,
        "trace_preservation_residual": trace_res,
    }
