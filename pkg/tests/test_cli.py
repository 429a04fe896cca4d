import json
import os
import subprocess
import sys

import numpy as np
import pytest

from posmap.serialize import witness_from_json

CLI = [sys.executable, "-m", "posmap"]


def run_cli(*args, env_extra=None, cwd=None):
    env = dict(os.environ)
    env.pop("POSMAP_SEED", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(CLI + list(args), capture_output=True, text=True,
                          env=env, cwd=cwd)


def test_builtin_stdout_parses():
    proc = run_cli("builtin", "choi-lam")
    assert proc.returncode == 0
    W = witness_from_json(proc.stdout)
    assert (W.m, W.n) == (3, 3)
    assert abs(np.trace(W.matrix).real - 3.0) < 1e-12


def test_builtin_paper_scale(tmp_path):
    out = tmp_path / "w.json"
    proc = run_cli("builtin", "choi-lam", "--scale", "paper", "--output", str(out))
    assert proc.returncode == 0
    W = witness_from_json(out.read_text())
    assert abs(np.trace(W.matrix).real - 6.0) < 1e-12


def test_builtin_dim_flag():
    proc = run_cli("builtin", "identity", "--dim", "4")
    assert proc.returncode == 0
    assert witness_from_json(proc.stdout).m == 4


def test_inspect_builtin():
    proc = run_cli("inspect", "--builtin", "choi-lam")
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert abs(report["min_eig"] - (1 - np.sqrt(5)) / 4) < 1e-12
    assert report["unitality_residual"] < 1e-14


def test_inspect_file_input(tmp_path):
    w = tmp_path / "w.json"
    run_cli("builtin", "horodecki-2x4", "--output", str(w))
    proc = run_cli("inspect", "--input", str(w))
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["m"] == 2 and report["n"] == 4


def test_normalize_converged(tmp_path):
    out = tmp_path / "norm.json"
    proc = run_cli("normalize", "--builtin", "choi-lam", "--output", str(out))
    assert proc.returncode == 0
    obj = json.loads(out.read_text())
    assert obj["converged"] is True and obj["iterations"] == 1


def test_normalize_non_convergence_exit_3(tmp_path):
    out = tmp_path / "norm.json"
    proc = run_cli("normalize", "--builtin", "horodecki-2x4",
                   "--max-iter", "2", "--output", str(out))
    assert proc.returncode == 3
    assert proc.stderr.strip() != ""
    # the partial result is still written
    obj = json.loads(out.read_text())
    assert obj["converged"] is False


def test_zeros_finds_isolated():
    proc = run_cli("zeros", "--builtin", "choi-lam", "--starts", "40", "--seed", "7")
    assert proc.returncode == 0
    zeros = json.loads(proc.stdout)
    iso = [z for z in zeros if not z["continuum"]]
    assert len(iso) == 3
    assert all(z["kind"] == "quartic" for z in zeros)


def test_zeros_seed_env_override():
    with_flag = run_cli("zeros", "--builtin", "choi-lam", "--starts", "15", "--seed", "42")
    with_env = run_cli("zeros", "--builtin", "choi-lam", "--starts", "15", "--seed", "1",
                       env_extra={"POSMAP_SEED": "42"})
    assert with_flag.returncode == 0 and with_env.returncode == 0
    assert with_flag.stdout == with_env.stdout
    bad_env = run_cli("zeros", "--builtin", "choi-lam", "--starts", "15",
                      env_extra={"POSMAP_SEED": "not-a-number"})
    assert bad_env.returncode == 2


def test_section_outputs(tmp_path):
    out = tmp_path / "diag.csv"
    svg = tmp_path / "diag.svg"
    proc = run_cli("section", "--builtin", "choi-lam", "--type", "diag",
                   "--samples", "48", "--output", str(out), "--svg", str(svg))
    assert proc.returncode == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "theta,r,label"
    labels = {ln.split(",")[2] for ln in lines[1:]}
    assert labels == {"source", "image_of_source", "image_plane"}
    assert len(lines) == 1 + 3 * 48
    meta = json.loads((tmp_path / "diag.json").read_text())
    assert meta["type"] == "diag"
    assert abs(meta["abc"][0] - np.sqrt(6)) < 1e-12
    assert {"rho1_image", "rho2_image", "max_mixed_projection"} <= set(meta["markers"])
    text = svg.read_text()
    assert text.startswith("<svg")


def test_section_tangent_requires_3x3():
    proc = run_cli("section", "--builtin", "horodecki-2x4", "--type", "tangent",
                   "--output", "/tmp/never-written.csv")
    assert proc.returncode == 4
    assert not os.path.exists("/tmp/never-written.csv")


def test_rings_csv(tmp_path):
    out = tmp_path / "rings.csv"
    proc = run_cli("rings", "--samples", "100", "--output", str(out))
    assert proc.returncode == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "theta,branch,x,y,z"
    assert len(lines) == 1 + 200
    x, y, z = (float(v) for v in lines[1].split(",")[2:])
    assert abs(x * x + y * y + z * z - 1.0) < 1e-12


def test_exit_2_on_bad_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    proc = run_cli("inspect", "--input", str(bad))
    assert proc.returncode == 2
    assert proc.stderr.strip() != ""
    missing = run_cli("inspect", "--input", str(tmp_path / "absent.json"))
    assert missing.returncode == 2


def test_exit_2_on_bad_flags():
    proc = run_cli("builtin", "no-such-witness")
    assert proc.returncode == 2
    proc2 = run_cli("zeros", "--builtin", "choi-lam", "--scale", "sideways")
    assert proc2.returncode == 2


def test_cli_deterministic_bytes(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for out in (a, b):
        proc = run_cli("section", "--builtin", "choi-lam", "--type", "A",
                       "--samples", "32", "--seed", "9", "--output", str(out))
        assert proc.returncode == 0
    assert a.read_bytes() == b.read_bytes()
    za = run_cli("zeros", "--builtin", "choi-lam", "--starts", "10", "--seed", "5")
    zb = run_cli("zeros", "--builtin", "choi-lam", "--starts", "10", "--seed", "5")
    assert za.stdout == zb.stdout
