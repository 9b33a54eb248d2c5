"""Central finite-difference gradient oracle.

Independent of the autodiff engine: it only calls forward functions on plain
float64 numpy arrays and never touches backward closures.
"""
from __future__ import annotations

import numpy as np


def numeric_grad(f, x, h=1e-6):
    """d f / d x by central differences, elementwise; f maps array -> scalar."""
    x = np.asarray(x, dtype=np.float64)
    g = np.zeros_like(x)
    flat = x.reshape(-1)
    gflat = g.reshape(-1)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + h
        hi = f(x)
        flat[i] = orig - h
        lo = f(x)
        flat[i] = orig
        gflat[i] = (hi - lo) / (2.0 * h)
    return g


def rel_error(analytic, numeric):
    """Max elementwise relative error, guarded for tiny denominators."""
    a = np.asarray(analytic, dtype=np.float64)
    n = np.asarray(numeric, dtype=np.float64)
    denom = np.maximum(np.abs(a) + np.abs(n), 1e-4)
    return float(np.max(np.abs(a - n) / denom))


def check_op(build_scalar, arrays, h=1e-6):
    """Compare autodiff grads against finite differences for each input array.

    ``build_scalar(list_of_arrays) -> (scalar Tensor, list_of_input_Tensors)``
    must construct fresh Tensors from the given float64 arrays each call.
    Returns the worst relative error over all inputs.
    """
    out, tensors = build_scalar([a.copy() for a in arrays])
    out.backward()
    worst = 0.0
    for idx, arr in enumerate(arrays):
        def forward(x, idx=idx):
            probe = [a.copy() for a in arrays]
            probe[idx] = x
            scalar, _ = build_scalar(probe)
            return float(scalar.data)

        num = numeric_grad(forward, arr, h)
        ana = tensors[idx].grad
        assert ana is not None, f"no gradient reached input {idx}"
        worst = max(worst, rel_error(ana, num))
    return worst


def spaced_random(rng, shape, low=-1.0, high=1.0, min_gap=1e-3):
    """Random floats that avoid ReLU kinks and pooling near-ties.

    Values are kept away from 0 and pairwise distinct by at least ``min_gap``
    so central differences stay on one side of every non-smooth point.
    """
    n = int(np.prod(shape))
    vals = rng.uniform(low, high, size=n)
    for _ in range(100):
        vals[np.abs(vals) < min_gap] += 3 * min_gap
        order = np.argsort(vals)
        gaps = np.diff(vals[order])
        close = gaps < min_gap
        if not close.any():
            break
        vals[order[1:][close]] += 5 * min_gap * (1 + rng.random(close.sum()))
    return vals.reshape(shape)
