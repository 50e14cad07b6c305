import numpy as np
import pytest

from qschub import _kernels


def _random_case(rng, K=200, m=500):
    out = rng.integers(-50, 50, size=K).astype(np.int64)
    vec = rng.integers(-1000, 1000, size=K).astype(np.int64)
    src = rng.integers(0, K, size=m).astype(np.int32)
    dst = rng.integers(0, K, size=m).astype(np.int32)
    return out, vec, src, dst


def test_backend_name():
    assert _kernels.backend_name() in ("compiled", "python")


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_backends_agree_gather_scale_scatter(seed):
    rng = np.random.default_rng(seed)
    backends = _kernels.available_backends()
    out0, vec, src, dst = _random_case(rng)
    results = {}
    for name, mod in backends.items():
        out = out0.copy()
        mod.gather_scale_scatter(out, vec, 3, src, dst)
        results[name] = out
    ref = out0.copy()
    for s, d in zip(src, dst):
        ref[d] += 3 * vec[s]
    for name, got in results.items():
        assert np.array_equal(got, ref), name


def test_backends_agree_scatter_add():
    rng = np.random.default_rng(5)
    out0, vec, src, dst = _random_case(rng)
    vals = rng.integers(-9, 9, size=len(dst)).astype(np.int64)
    ref = out0.copy()
    for d, v in zip(dst, vals):
        ref[d] += v
    for name, mod in _kernels.available_backends().items():
        out = out0.copy()
        mod.scatter_add(out, dst, vals)
        assert np.array_equal(out, ref), name


def test_backends_agree_compose_signed():
    rng = np.random.default_rng(9)
    m = 5
    wins = []
    for _ in range(40):
        perm = rng.permutation(m) + 1
        signs = rng.choice([-1, 1], size=m)
        wins.append(perm * signs)
    wins = np.array(wins, dtype=np.int8)
    other = (rng.permutation(m) + 1) * rng.choice([-1, 1], size=m)
    other = other.astype(np.int8)
    ref = np.empty_like(wins)
    for r in range(wins.shape[0]):
        for j in range(m):
            t = int(other[j])
            ref[r, j] = wins[r, t - 1] if t > 0 else -wins[r, -t - 1]
    for name, mod in _kernels.available_backends().items():
        got = np.asarray(mod.compose_signed(wins, other))
        assert np.array_equal(got, ref), name


def test_python_backend_selection(monkeypatch):
    # the env override is honored at import time of a fresh interpreter
    import subprocess
    import sys

    code = "from qschub import _kernels; print(_kernels.backend_name())"
    env = dict(**__import__("os").environ, QSCHUB_KERNEL="python")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env)
    assert out.stdout.strip() == "python"


def test_products_identical_across_backends():
    import os
    import subprocess
    import sys

    code = (
        "from qschub.qhb import flag_ring\n"
        "from qschub.weyl import weyl_group\n"
        "g = weyl_group('C', 3); ring = flag_ring('C', 3)\n"
        "qc = ring.quantum_multiply(g.element(g.N - 1), g.element(g.N - 1))\n"
        "print(sorted((list(w.window), list(l.coords), c)"
        " for (w, l), c in qc.terms.items()))\n"
    )
    outs = {}
    for backend in ("python", "auto"):
        env = dict(**os.environ, QSCHUB_KERNEL=backend)
        res = subprocess.run([sys.executable, "-c", code], capture_output=True,
                             text=True, env=env)
        assert res.returncode == 0, res.stderr
        outs[backend] = res.stdout
    assert outs["python"] == outs["auto"]
