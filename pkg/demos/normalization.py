"""Normalize positive maps to unital, trace-preserving form.

The iteration alternates X <- (M^T((M X)^-1))^-1 with a trace gauge
Tr X = m. At a fixed point the rescaled map
M~(Z) = Y^1/2 M(X^1/2 Z X^1/2) Y^1/2 sends I/sqrt(m) to I/sqrt(n) and its
adjoint does the reverse, so one canonical representative is picked from
each product-transform orbit. Convergence is linear with rate given by
the top contraction eigenvalue.

Run: python3 demos/normalization.py
"""

import numpy as np

import posmap


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner("Already-normal maps are fixed points")
for name, W in (("choi-lam", posmap.choi_lam_witness()),
                ("identity", posmap.identity_witness(3))):
    res = posmap.normalize(W)
    print(f"{name}: iterations={res.iterations}  |U - I|={np.abs(res.U - np.eye(3)).max():.2e}")

banner("The 2x4 witness needs real work")
W = posmap.horodecki_2x4_witness()
d0 = posmap.diagnostics(W)
print("before: unitality residual", f"{d0['unitality_residual']:.3e}",
      " trace-pres residual", f"{d0['trace_preservation_residual']:.3e}")
res = posmap.normalize(W)
d1 = posmap.diagnostics(res.witness)
print("after: ", "unitality residual", f"{d1['unitality_residual']:.3e}",
      " trace-pres residual", f"{d1['trace_preservation_residual']:.3e}")
print("converged:", res.converged, " iterations:", res.iterations)
print("residual history (every 10th):",
      ["%.1e" % h for h in res.history[::10]])

banner("Rate = top contraction eigenvalue")
spec = posmap.contraction_spectrum(W, res.X)
print("contraction magnitudes (top 3):", np.round(np.abs(spec)[:3], 6))
ratios = np.diff(np.log(res.history[-40:-5]))
print("asymptotic step ratio exp(mean dlog):", np.exp(ratios.mean()).round(6))

banner("Start independence")
rng = np.random.default_rng(3)
ref = res.X
for k in range(3):
    G = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    alt = posmap.normalize(W, x0=G @ G.conj().T + 0.1 * np.eye(2))
    print(f"random start {k}: |X - X_ref| = {np.abs(alt.X - ref).max():.2e}")
