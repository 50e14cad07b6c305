"""Pure-Python (numpy) implementations of the hot kernels."""

import numpy as np


def gather_scale_scatter(out, vec, c, src, dst):
    """out[dst[t]] += c * vec[src[t]] for all t, exactly (int64)."""
    if len(src):
        np.add.at(out, dst, c * vec[src])


def scatter_add(out, dst, vals):
    """out[dst[t]] += vals[t] for all t, exactly (int64)."""
    if len(dst):
        np.add.at(out, dst, vals)


def compose_signed(windows, other):
    """Right-compose a batch of signed windows with a single signed window.

    ``windows`` is an (N, m) int array of one-line signed permutations,
    ``other`` an (m,) window; returns the (N, m) batch of ``w * other``
    where ``(w*other)(j) = w(other(j))`` and ``w(-t) = -w(t)``.
    """
    idx = np.abs(other) - 1
    sgn = np.sign(other)
    return windows[:, idx] * sgn
