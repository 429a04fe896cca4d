"""Locating and classifying zeros of witness biquadratic forms.

A zero of a witness A is a product vector phi (x) chi with
f_A(phi, chi) = (phi (x) chi)^dag A (phi (x) chi) = 0 while f_A >= 0 in
a neighborhood (for a witness on the boundary of the positive cone the
inequality is global). Since f_A(phi, chi) = chi^dag M(phi phi^dag) chi,
alternating minimization over phi and chi moves downhill by solving a
minimal-eigenvector problem in each half step.

Zeros are classified by the spectrum of the Hessian of f_A restricted to
the tangent space of the product manifold (phases and norms of phi and
chi are flat directions by construction and are excluded): a quadratic
zero has a strictly positive tangent Hessian, a quartic zero has at
least one vanishing eigenvalue, i.e. a direction in which f_A grows
slower than quadratically. Zeros belonging to a continuum are
necessarily quartic.

Each zero imposes 2(m + n) - 3 real-linear constraints on the witness:
the value f_A = 0 and the vanishing of the first derivatives along the
tangent directions of phi and chi (real and imaginary parts). For an
extremal witness with enough zeros these constraint rows determine the
witness up to scale.
"""

from dataclasses import dataclass, field

import numpy as np

from .bipartite import (
    Witness,
    apply_map,
    apply_transposed_map,
    biquadratic_form,
    product_vector,
)
from .hermitian import hermitian_basis, hs_norm

__all__ = [
    "ProductZero",
    "ConstraintSystem",
    "alternating_minimize",
    "refine_zero",
    "find_zeros",
    "classify_zero",
    "constraint_rows",
    "constraint_rank",
    "image_rank_at_zero",
]

# Overlap above which two candidates count as the same zero.
DEDUP_TOL = 1e-6
# Overlap above which two distinct zeros are chained as continuum neighbors.
CHAIN_OVERLAP = 0.5
# Components larger than this flag their members as continuum candidates.
CLUSTER_K = 5


@dataclass(frozen=True)
class ProductZero:
    """A product zero phi (x) chi of a witness biquadratic form.

    ``value`` is f_A at the zero, ``kind`` is ``"quadratic"`` or
    ``"quartic"``, ``hessian_spectrum`` the ascending tangent-Hessian
    eigenvalues, and ``continuum`` marks membership in a chained cluster
    of zeros (a heuristic report, not a certificate).
    """

    phi: np.ndarray = field(repr=False)
    chi: np.ndarray = field(repr=False)
    value: float
    kind: str
    hessian_spectrum: np.ndarray = field(repr=False)
    continuum: bool = False


@dataclass(frozen=True)
class ConstraintSystem:
    """Stacked real constraint rows imposed by zeros on a witness.

    ``rows`` has one row per constraint in the traceless orthonormal
    witness coordinates (N^2 - 1 columns, N = m n); ``rank`` is the
    numerical rank; ``zero_count`` the number of zeros used.
    """

    rows: np.ndarray = field(repr=False)
    rank: int
    zero_count: int


def _min_eigvec(H: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(H)
    return vecs[:, 0]


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude entry is real positive."""
    i = int(np.argmax(np.abs(v)))
    phase = v[i] / abs(v[i]) if abs(v[i]) > 0 else 1.0
    return v / phase


def alternating_minimize(W: Witness, phi0: np.ndarray, max_iter: int = 200,
                         tol: float = 0.0) -> tuple[np.ndarray, np.ndarray, float]:
    """Minimize f_A over product vectors by alternating eigenvector steps.

    Given phi, the optimal chi is the minimal eigenvector of
    M(phi phi^dag); given chi, the optimal phi is the minimal eigenvector
    of M^T(chi chi^dag). The value decreases monotonically. Stops when
    the decrease per sweep is at most ``tol`` (so tol = 0 runs until the
    value stops improving at working precision) or after ``max_iter``
    sweeps.

    :param W: witness.
    :param phi0: starting vector on the m side, any nonzero norm.
    :param max_iter: sweep cap.
    :param tol: absolute stopping threshold on the per-sweep decrease.
    :return: (phi, chi, value) with unit vectors, phases canonicalized.
    """
    phi = np.asarray(phi0, dtype=complex)
    phi = phi / np.linalg.norm(phi)
    chi = _min_eigvec(apply_map(W, np.outer(phi, phi.conj())))
    value = biquadratic_form(W, phi, chi)
    for _ in range(max_iter):
        phi = _min_eigvec(apply_transposed_map(W, np.outer(chi, chi.conj())))
        chi = _min_eigvec(apply_map(W, np.outer(phi, phi.conj())))
        new_value = biquadratic_form(W, phi, chi)
        if value - new_value <= tol:
            value = min(value, new_value)
            break
        value = new_value
    return _canonical_phase(phi), _canonical_phase(chi), value


def _tangent_frame(v: np.ndarray) -> np.ndarray:
    """Orthonormal complex basis of the orthogonal complement of v."""
    k = v.shape[0]
    # Complete v to a unitary frame via QR on [v | I] and drop column 0.
    q, _ = np.linalg.qr(np.column_stack([v, np.eye(k, dtype=complex)]))
    # QR may flip the first column by a phase; the remaining columns
    # still span the complement of v.
    return q[:, 1:k]


def refine_zero(W: Witness, phi: np.ndarray, chi: np.ndarray = None,
                h0: float = 0.05, min_h: float = 1e-8,
                budget: int = 6000) -> tuple[np.ndarray, np.ndarray, float]:
    """Polish a near-zero to working precision by tangent pattern search.

    Minimizes the eliminated objective g(phi) = min-eigenvalue of
    M(phi phi^dag) (the optimal chi is the corresponding eigenvector, so
    f = g at the optimum) by coordinate polling over the tangent frame of
    phi with a geometrically shrinking step. Gradient and Newton steps
    degenerate in the quartically flat valleys around quartic zeros; the
    direct search does not, and descends until the step or the eigenvalue
    differences reach working precision.

    :param W: witness.
    :param phi: approximate zero, m side (any nonzero norm).
    :param chi: ignored (the optimal chi is recomputed); accepted so the
        refinement slots behind :func:`alternating_minimize`.
    :param h0: initial poll step.
    :param min_h: poll step below which the search stops.
    :param budget: cap on objective evaluations.
    :return: (phi, chi, value), unit vectors with canonical phases.
    """
    phi = np.asarray(phi, dtype=complex)
    phi = phi / np.linalg.norm(phi)

    def g_of(p):
        return np.linalg.eigvalsh(apply_map(W, np.outer(p, p.conj())))[0]

    best = g_of(phi)
    h = h0
    evals = 0
    while h > min_h and evals < budget:
        frame = _tangent_frame(phi)
        improved = False
        for col in range(frame.shape[1]):
            for comp in (1.0, -1.0, 1j, -1j):
                cand = phi + (h * comp) * frame[:, col]
                cand = cand / np.linalg.norm(cand)
                val = g_of(cand)
                evals += 1
                if val < best:
                    best, phi, improved = val, cand, True
                    break
            if improved:
                break
        if not improved:
            h *= 0.5
    vals, vecs = np.linalg.eigh(apply_map(W, np.outer(phi, phi.conj())))
    chi = vecs[:, 0]
    return (_canonical_phase(phi), _canonical_phase(chi),
            biquadratic_form(W, phi, chi))


def classify_zero(W: Witness, phi: np.ndarray, chi: np.ndarray,
                  zero_tol: float = 1e-9, h: float = 1e-4,
                  hess_tol: float = None) -> tuple[str, np.ndarray]:
    """Classify a zero as quadratic or quartic via the tangent Hessian.

    Builds the real Hessian of f_A on the 2(m-1) + 2(n-1) dimensional
    tangent space (orthogonal complements of phi and chi, real and
    imaginary directions) by central finite differences at steps h and
    h/2, Richardson-extrapolates, and reports the eigenvalues. The zero
    is quartic iff the smallest eigenvalue is below ``hess_tol``
    (default 1e-7 * ||A||).

    :param W: witness.
    :param phi: unit vector, m side.
    :param chi: unit vector, n side.
    :param zero_tol: maximal |f_A| accepted as a zero.
    :param h: base finite-difference step on unit tangent directions.
    :param hess_tol: threshold separating zero from positive eigenvalues.
    :return: (kind, ascending Hessian eigenvalues).
    :raises ValueError: if f_A(phi, chi) exceeds ``zero_tol``.
    """
    phi = np.asarray(phi, dtype=complex)
    chi = np.asarray(chi, dtype=complex)
    scale = hs_norm(W.matrix)
    if hess_tol is None:
        hess_tol = 1e-7 * scale
    f0 = biquadratic_form(W, phi, chi)
    if abs(f0) > zero_tol * max(1.0, scale):
        raise ValueError(
            f"not a zero: |f| = {abs(f0):.3e} exceeds {zero_tol:.1e} (relative)"
        )
    m, n = W.m, W.n
    u_frame = _tangent_frame(phi)
    v_frame = _tangent_frame(chi)
    # Real tangent directions: (d_phi, d_chi) pairs, phi block first.
    dirs = []
    for col in range(m - 1):
        dirs.append((u_frame[:, col], np.zeros(n, dtype=complex)))
        dirs.append((1j * u_frame[:, col], np.zeros(n, dtype=complex)))
    for col in range(n - 1):
        dirs.append((np.zeros(m, dtype=complex), v_frame[:, col]))
        dirs.append((np.zeros(m, dtype=complex), 1j * v_frame[:, col]))
    dim = len(dirs)

    def f_at(step_phi, step_chi):
        return biquadratic_form(W, phi + step_phi, chi + step_chi)

    def hessian(step: float) -> np.ndarray:
        H = np.empty((dim, dim))
        for p in range(dim):
            dp, dc = dirs[p]
            fp = f_at(step * dp, step * dc)
            fm = f_at(-step * dp, -step * dc)
            H[p, p] = (fp + fm - 2.0 * f0) / step**2
        for p in range(dim):
            for q in range(p + 1, dim):
                dp1, dc1 = dirs[p]
                dp2, dc2 = dirs[q]
                fpp = f_at(step * (dp1 + dp2), step * (dc1 + dc2))
                fpm = f_at(step * (dp1 - dp2), step * (dc1 - dc2))
                fmp = f_at(step * (dp2 - dp1), step * (dc2 - dc1))
                fmm = f_at(-step * (dp1 + dp2), -step * (dc1 + dc2))
                H[p, q] = H[q, p] = (fpp - fpm - fmp + fmm) / (4.0 * step**2)
        return H

    H_h = hessian(h)
    H_half = hessian(h / 2.0)
    H = (4.0 * H_half - H_h) / 3.0  # Richardson: cancels the O(h^2) error
    H = (H + H.T) / 2.0
    spectrum = np.linalg.eigvalsh(H)
    kind = "quartic" if spectrum[0] < hess_tol else "quadratic"
    return kind, spectrum


def find_zeros(W: Witness, starts: int = 500, seed: int = 42,
               tol: float = 1e-9, max_iter: int = 200,
               dedup_tol: float = DEDUP_TOL,
               chain_overlap: float = CHAIN_OVERLAP,
               cluster_k: int = CLUSTER_K) -> list:
    """Search for zeros from random starts, deduplicate, and classify.

    Runs :func:`alternating_minimize` from ``starts`` Haar-random phi
    vectors, polishes each result with :func:`refine_zero`, keeps results
    with value at most ``tol * max(1, ||A||)``, merges candidates whose
    overlap |<phi_i, phi_j>| |<chi_i, chi_j>| exceeds 1 - ``dedup_tol``
    (keeping the lowest value), classifies each survivor, and finally
    chains survivors with pairwise overlap above ``chain_overlap``:
    connected components with more than ``cluster_k`` members have their
    zeros flagged as continuum candidates.

    :param W: witness.
    :param starts: number of random starting vectors.
    :param seed: RNG seed for the starts.
    :param tol: relative acceptance threshold on the minimized value.
    :param max_iter: sweep cap per start.
    :return: list of :class:`ProductZero`, values ascending.
    """
    rng = np.random.default_rng(seed)
    scale = max(1.0, hs_norm(W.matrix))
    candidates = []
    for _ in range(starts):
        phi0 = rng.normal(size=W.m) + 1j * rng.normal(size=W.m)
        phi, chi, value = alternating_minimize(W, phi0, max_iter=max_iter)
        # Alternation alone creeps sublinearly into quartic valleys;
        # polish to working precision before accepting or rejecting.
        phi, chi, value = refine_zero(W, phi, chi)
        if abs(value) <= tol * scale:
            candidates.append((phi, chi, abs(value)))
    if not candidates:
        return []
    # Deduplicate: keep the best representative of each overlap class.
    candidates.sort(key=lambda t: t[2])
    reps = []
    for phi, chi, value in candidates:
        dup = False
        for rphi, rchi, _ in reps:
            overlap = abs(np.vdot(rphi, phi)) * abs(np.vdot(rchi, chi))
            if overlap > 1.0 - dedup_tol:
                dup = True
                break
        if not dup:
            reps.append((phi, chi, value))
    # Chain distinct zeros into clusters to flag continua.
    count = len(reps)
    parent = list(range(count))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(count):
        for j in range(i + 1, count):
            overlap = (abs(np.vdot(reps[i][0], reps[j][0]))
                       * abs(np.vdot(reps[i][1], reps[j][1])))
            if overlap > chain_overlap:
                parent[find(i)] = find(j)
    sizes = {}
    for i in range(count):
        root = find(i)
        sizes[root] = sizes.get(root, 0) + 1
    zeros = []
    for i, (phi, chi, value) in enumerate(reps):
        kind, spectrum = classify_zero(W, phi, chi, zero_tol=tol)
        zeros.append(ProductZero(
            phi=phi, chi=chi, value=value, kind=kind,
            hessian_spectrum=spectrum,
            continuum=sizes[find(i)] > cluster_k,
        ))
    return zeros


def constraint_rows(W: Witness, phi: np.ndarray, chi: np.ndarray) -> np.ndarray:
    """Real constraint rows a single zero imposes on the witness.

    The 2(m + n) - 3 rows are, in traceless orthonormal witness
    coordinates: the value row <psi psi^dag, .> with psi = phi (x) chi,
    and for every tangent direction u of phi (resp. v of chi) the real
    and imaginary parts of (phi (x) chi)^dag A (u (x) chi) (resp.
    (phi (x) chi)^dag A (phi (x) v)).

    :return: array of shape (2(m+n)-3, (mn)^2 - 1).
    """
    phi = np.asarray(phi, dtype=complex)
    chi = np.asarray(chi, dtype=complex)
    m, n = W.m, W.n
    N = m * n
    psi = product_vector(phi, chi)
    functionals = [np.outer(psi, psi.conj())]
    partners = [product_vector(u, chi) for u in _tangent_frame(phi).T]
    partners += [product_vector(phi, v) for v in _tangent_frame(chi).T]
    for eta in partners:
        outer = np.outer(eta, psi.conj())
        functionals.append((outer + outer.conj().T) / 2.0)          # real part
        functionals.append((outer - outer.conj().T) / 2j)           # imaginary part
    basis = hermitian_basis(N)[1:]
    rows = np.array([
        np.einsum("aij,ji->a", basis, F).real for F in functionals
    ])
    return rows


def constraint_rank(W: Witness, zeros, rank_tol: float = 1e-10) -> ConstraintSystem:
    """Stack the constraint rows of several zeros and report the rank.

    :param W: witness.
    :param zeros: iterable of :class:`ProductZero` or (phi, chi) pairs.
    :param rank_tol: singular values above ``rank_tol`` times the largest
        count toward the rank.
    :return: :class:`ConstraintSystem`.
    """
    blocks = []
    count = 0
    for z in zeros:
        if isinstance(z, ProductZero):
            phi, chi = z.phi, z.chi
        else:
            phi, chi = z
        blocks.append(constraint_rows(W, phi, chi))
        count += 1
    rows = np.vstack(blocks)
    sv = np.linalg.svd(rows, compute_uv=False)
    rank = int(np.sum(sv > rank_tol * sv[0]))
    return ConstraintSystem(rows=rows, rank=rank, zero_count=count)


def image_rank_at_zero(W: Witness, phi: np.ndarray, chi: np.ndarray,
                       zero_tol: float = 1e-9,
                       rank_tol: float = 1e-8) -> dict:
    """Ranks and kernel checks of the map images at a zero.

    Y = M(phi phi^dag) has chi in its kernel and X = M^T(chi chi^dag)
    has phi in its kernel; for an extremal witness with a regular zero
    the ranks are n - 1 and m - 1.

    :return: dict with Y, X, their ranks, and the kernel residuals
        ||Y chi||, ||X phi||.
    :raises ValueError: if (phi, chi) is not a zero to ``zero_tol``.
    """
    phi = np.asarray(phi, dtype=complex)
    chi = np.asarray(chi, dtype=complex)
    scale = max(1.0, hs_norm(W.matrix))
    f0 = biquadratic_form(W, phi, chi)
    if abs(f0) > zero_tol * scale:
        raise ValueError(
            f"not a zero: |f| = {abs(f0):.3e} exceeds {zero_tol:.1e} (relative)"
        )
    Y = apply_map(W, np.outer(phi, phi.conj()))
    X = apply_transposed_map(W, np.outer(chi, chi.conj()))

    def num_rank(M):
        sv = np.linalg.svd(M, compute_uv=False)
        return int(np.sum(sv > rank_tol * max(sv[0], 1e-300)))

    return {
        "Y": Y,
        "X": X,
        "rank_Y": num_rank(Y),
        "rank_X": num_rank(X),
        "kernel_residual_Y": float(np.linalg.norm(Y @ chi)),
        "kernel_residual_X": float(np.linalg.norm(X @ phi)),
    }
