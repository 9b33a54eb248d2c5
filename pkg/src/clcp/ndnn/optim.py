"""SGD and Adam parameter updates."""
from __future__ import annotations

import numpy as np

from .tensor import NumericError


def _check_grads(named_params):
    for name, p in named_params:
        if p.grad is None:
            raise NumericError(f"parameter {name} has no gradient")
        if not np.isfinite(p.grad).all():
            raise NumericError(f"non-finite gradient in {name}; step rejected")


def zero_grads(named_params):
    for _, p in named_params:
        p.grad = None


class SGD:
    def __init__(self, lr=0.01):
        self.lr = lr

    def step(self, named_params):
        """Apply one update; rejects the whole step on any non-finite gradient."""
        named_params = list(named_params)
        _check_grads(named_params)
        for _, p in named_params:
            p.data -= (self.lr * p.grad).astype(p.data.dtype, copy=False)

    def state_arrays(self):
        return {}

    def load_state_arrays(self, arrays):
        pass


class Adam:
    """Adam with bias correction, moments keyed by parameter name."""

    def __init__(self, lr=1e-3, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = {}
        self.v = {}

    def step(self, named_params):
        named_params = list(named_params)
        _check_grads(named_params)
        self.t += 1
        b1t = 1.0 - self.beta1 ** self.t
        b2t = 1.0 - self.beta2 ** self.t
        for name, p in named_params:
            g = p.grad
            m = self.m.get(name)
            if m is None:
                m = np.zeros_like(p.data, dtype=np.float64)
                self.m[name] = m
                self.v[name] = np.zeros_like(p.data, dtype=np.float64)
            v = self.v[name]
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * (g * g)
            update = self.lr * (m / b1t) / (np.sqrt(v / b2t) + self.eps)
            p.data -= update.astype(p.data.dtype, copy=False)

    def state_arrays(self):
        """Moment buffers plus the step counter, for checkpointing."""
        out = {"adam.t": np.array([self.t], dtype=np.int64)}
        for name, arr in sorted(self.m.items()):
            out[f"adam.m.{name}"] = arr
        for name, arr in sorted(self.v.items()):
            out[f"adam.v.{name}"] = arr
        return out

    def load_state_arrays(self, arrays):
        self.t = int(arrays["adam.t"][0])
        self.m = {k[len("adam.m."):]: v for k, v in arrays.items() if k.startswith("adam.m.")}
        self.v = {k[len("adam.v."):]: v for k, v in arrays.items() if k.startswith("adam.v.")}


def make_optimizer(name, lr):
    if name == "sgd":
        return SGD(lr)
    if name == "adam":
        return Adam(lr)
    raise ValueError(f"unknown optimizer {name!r}")
