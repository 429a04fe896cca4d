"""Walk through the witness / positive-map correspondence on the builtins.

A witness A on C^m (x) C^n and a map M from m x m to n x n matrices carry
the same data, stitched by A_{ij;kl} = M_{jl;ki}. Complete positivity of M
is positivity of the partial transpose of A, not of A itself; positivity
of M (images of states stay PSD) only bounds the biquadratic form
f(phi, chi) = <chi| M(phi phi+) |chi> from below by zero.

Run: python3 demos/duality.py
"""

import numpy as np

import posmap


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner("Identity and transposition")
WI = posmap.identity_witness(3)
WT = posmap.transposition_witness(3)
rho = np.array([[0.5, 0.2j, 0], [-0.2j, 0.3, 0.1], [0, 0.1, 0.2]])
print("identity witness acts as M(X) = X:",
      np.abs(posmap.apply_map(WI, rho) - rho).max())
print("transposition witness acts as M(X) = X^T:",
      np.abs(posmap.apply_map(WT, rho) - rho.T).max())
print("they are partial transposes of each other:",
      np.abs(posmap.partial_transpose(WI).matrix - WT.matrix).max())

banner("The 3x3 extremal witness")
W = posmap.choi_lam_witness()
d = posmap.diagnostics(W)
print("trace:", np.trace(W.matrix).real)
print("min eigenvalue:        ", d["min_eig"], "  (not PSD, so not CP)")
print("min eigenvalue of PT:  ", d["min_eig_pt"], "  (not PSD, so not co-CP)")
print("unitality residual:    ", d["unitality_residual"])
print("trace-pres residual:   ", d["trace_preservation_residual"])

# Positivity despite both blocks being indefinite: sample the form.
rng = np.random.default_rng(0)
vals = []
for _ in range(2000):
    phi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    chi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    phi /= np.linalg.norm(phi)
    chi /= np.linalg.norm(chi)
    vals.append(posmap.biquadratic_form(W, phi, chi))
print("min of f over 2000 random product vectors:", min(vals), ">= 0")

banner("Map matrix and adjoint")
M = posmap.map_matrix(W)
print("map-matrix coefficients shape:", M.coeffs.shape)
print("roundtrip witness -> map matrix -> witness:",
      np.abs(posmap.witness_from_map_matrix(M).matrix - W.matrix).max())
X = rho
Y = rho[::-1, ::-1].copy()
lhs = posmap.hs_inner(Y, posmap.apply_map(W, X))
rhs = posmap.hs_inner(posmap.apply_transposed_map(W, Y), X)
print("adjoint pairing <Y, M(X)> - <M^T(Y), X>:", abs(lhs - rhs))

banner("A CP witness for contrast")
K = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
Wcp = posmap.witness_from_map(3, 3, lambda X: K @ X @ K.conj().T)
evs = np.linalg.eigvalsh(posmap.partial_transpose(Wcp).matrix)
print("PT spectrum of a one-Kraus CP map witness:", np.round(evs, 12))
print("rank of PT (number of Kraus operators):", int(np.sum(evs > 1e-10)))
