import numpy as np
import pytest

from posmap.bipartite import Witness, apply_map, apply_transposed_map, diagnostics, tensor
from posmap.builtin import choi_lam_witness, horodecki_2x4_witness, identity_witness
from posmap.normalize import contraction_spectrum, iterate_step, normalize


def _random_cp_witness(rng, m, n, terms=4):
    A = np.zeros((m * n, m * n), dtype=complex)
    for _ in range(terms):
        B = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        C = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        A += tensor(B @ B.conj().T, C @ C.conj().T)
    return Witness(m, n, A / np.trace(A).real)


def test_identity_witness_is_fixed_point():
    res = normalize(identity_witness(3))
    assert res.converged and res.iterations == 1
    assert np.abs(res.U - np.eye(3)).max() < 1e-14
    assert np.abs(res.V - np.eye(3)).max() < 1e-14


def test_choi_lam_already_normal():
    """The builtin map is unital and trace preserving as given."""
    res = normalize(choi_lam_witness())
    assert res.converged and res.iterations == 1
    assert np.abs(res.U - np.eye(3)).max() == 0.0
    assert np.abs(res.V - np.eye(3)).max() == 0.0
    assert res.history[0] < 1e-12


def test_horodecki_normalization():
    res = normalize(horodecki_2x4_witness())
    assert res.converged
    assert res.iterations == 59
    d = diagnostics(res.witness)
    assert d["unitality_residual"] < 1e-10
    assert d["trace_preservation_residual"] < 1e-10
    # fixed point of the iteration, normalized to Tr X = m
    assert abs(np.trace(res.X).real - 2.0) < 1e-12
    assert np.abs(iterate_step(horodecki_2x4_witness(), res.X) - res.X).max() < 1e-10


def test_normalize_random_cp():
    rng = np.random.default_rng(30)
    W = _random_cp_witness(rng, 3, 3)
    res = normalize(W)
    assert res.converged
    d = diagnostics(res.witness)
    assert d["unitality_residual"] < 1e-10
    assert d["trace_preservation_residual"] < 1e-10


def test_normalize_start_independence():
    """Different PD starts land on the same fixed point."""
    rng = np.random.default_rng(31)
    W = _random_cp_witness(rng, 2, 3)
    ref = normalize(W).X
    for _ in range(3):
        G = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        x0 = G @ G.conj().T + 0.1 * np.eye(2)
        X = normalize(W, x0=x0).X
        assert np.abs(X - ref).max() < 1e-8


def test_normalize_non_convergence_reported():
    res = normalize(horodecki_2x4_witness(), max_iter=3)
    assert not res.converged
    assert res.iterations == 3
    assert len(res.history) == 3


def test_iterate_step_rejects_indefinite_image():
    # the transposition witness map sends some PD inputs to singular images
    W = Witness(2, 2, -np.eye(4))
    with pytest.raises(ValueError):
        iterate_step(W, np.eye(2))


def test_history_monotone_tail():
    """Step norms decay once the iteration enters its contraction basin."""
    res = normalize(horodecki_2x4_witness())
    h = np.array(res.history)
    assert (np.diff(h[5:]) < 0).all()


def test_contraction_spectrum_frozen():
    Wi = identity_witness(3)
    ri = normalize(Wi)
    si = contraction_spectrum(Wi, ri.X)
    assert np.abs(si - 1.0).max() < 1e-10

    Wc = choi_lam_witness()
    rc = normalize(Wc)
    sc = contraction_spectrum(Wc, rc.X)
    assert np.abs(sc - 0.25).max() < 1e-10

    Wh = horodecki_2x4_witness()
    rh = normalize(Wh)
    sh = contraction_spectrum(Wh, rh.X)
    expected = np.array([0.666406473329494, 0.523063911663889, 0.477196281673258])
    assert sh.shape == (3,)
    assert np.abs(sh - expected).max() < 1e-9


def test_contraction_predicts_convergence_rate():
    """The asymptotic step-norm ratio matches the top contraction eigenvalue."""
    W = horodecki_2x4_witness()
    res = normalize(W)
    rho = contraction_spectrum(W, res.X).max()
    h = res.history
    ratios = [h[k + 1] / h[k] for k in range(40, 50)]
    assert abs(np.mean(ratios) - rho) < 1e-3
