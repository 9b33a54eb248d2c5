"""numpy-backed dense tensors with reverse-mode automatic differentiation.

The graph is a tape: every op records its parents and a backward closure on
the result tensor, and ``Tensor.backward`` walks the tape in reverse
topological order.  Ops preserve the dtype of their inputs; gradient-checking
tests run everything in float64, training code in float32.
"""
from __future__ import annotations

import numpy as np


class ShapeError(ValueError):
    """An operand shape violates an operation's contract."""


class NumericError(RuntimeError):
    """Non-finite values invalidated a computation."""


class Tensor:
    """A dense n-dimensional array with an optional same-shape gradient slot."""

    __slots__ = ("data", "grad", "requires_grad", "name", "_parents", "_backward")

    def __init__(self, data, requires_grad=False, name=None, _parents=(), _backward=None):
        if isinstance(data, Tensor):
            raise TypeError("cannot wrap a Tensor in a Tensor")
        self.data = data if isinstance(data, np.ndarray) else np.asarray(data, dtype=np.float64)
        self.grad = None
        self.requires_grad = bool(requires_grad) or any(p.requires_grad for p in _parents)
        self.name = name
        self._parents = _parents
        self._backward = _backward

    @property
    def shape(self):
        return self.data.shape

    @property
    def ndim(self):
        return self.data.ndim

    @property
    def size(self):
        return self.data.size

    @property
    def dtype(self):
        return self.data.dtype

    def item(self):
        return float(self.data)

    def zero_grad(self):
        self.grad = None

    def detach(self):
        return Tensor(self.data)

    def __repr__(self):
        return f"Tensor(shape={self.data.shape}, dtype={self.data.dtype}, grad={self.grad is not None})"

    # -- operator sugar ----------------------------------------------------

    def __add__(self, other):
        return add(self, _as_tensor(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _as_tensor(other))

    def __rsub__(self, other):
        return sub(_as_tensor(other), self)

    def __mul__(self, other):
        return mul(self, _as_tensor(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, _as_tensor(other))

    def __neg__(self):
        return neg(self)

    def __matmul__(self, other):
        return matmul(self, _as_tensor(other))

    # -- autodiff ----------------------------------------------------------

    def backward(self, grad=None):
        """Accumulate gradients of this tensor into every reachable parent."""
        if grad is None:
            if self.data.size != 1:
                raise ShapeError("backward() without an explicit gradient needs a scalar root")
            grad = np.ones_like(self.data)
        order = _toposort(self)
        self.grad = grad if self.grad is None else self.grad + grad
        for t in reversed(order):
            if t._backward is not None:
                if t.grad is None:
                    raise NumericError("missing forward record in backward pass")
                t._backward(t.grad)


def _toposort(root):
    order, visited = [], set()
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            order.append(node)
            continue
        if id(node) in visited or not node.requires_grad:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for p in node._parents:
            stack.append((p, False))
    return order


def _as_tensor(x):
    return x if isinstance(x, Tensor) else Tensor(x)


def _accum(t, g):
    if not t.requires_grad:
        return
    t.grad = g if t.grad is None else t.grad + g


def _unbroadcast(g, shape):
    """Sum a broadcast gradient back down to ``shape``."""
    extra = g.ndim - len(shape)
    if extra:
        g = g.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, s in enumerate(shape) if s == 1 and g.shape[i] != 1)
    if axes:
        g = g.sum(axis=axes, keepdims=True)
    return g.reshape(shape)


# -- elementwise ops --------------------------------------------------------


def add(a, b):
    out = Tensor(a.data + b.data, _parents=(a, b))

    def backward(g):
        _accum(a, _unbroadcast(g, a.shape))
        _accum(b, _unbroadcast(g, b.shape))

    out._backward = backward
    return out


def sub(a, b):
    out = Tensor(a.data - b.data, _parents=(a, b))

    def backward(g):
        _accum(a, _unbroadcast(g, a.shape))
        _accum(b, _unbroadcast(-g, b.shape))

    out._backward = backward
    return out


def mul(a, b):
    out = Tensor(a.data * b.data, _parents=(a, b))

    def backward(g):
        _accum(a, _unbroadcast(g * b.data, a.shape))
        _accum(b, _unbroadcast(g * a.data, b.shape))

    out._backward = backward
    return out


def div(a, b):
    out = Tensor(a.data / b.data, _parents=(a, b))

    def backward(g):
        _accum(a, _unbroadcast(g / b.data, a.shape))
        _accum(b, _unbroadcast(-g * a.data / (b.data * b.data), b.shape))

    out._backward = backward
    return out


def neg(a):
    out = Tensor(-a.data, _parents=(a,))
    out._backward = lambda g: _accum(a, -g)
    return out


def relu(a):
    """Elementwise max(0, x); subgradient at 0 is 0."""
    mask = a.data > 0
    out = Tensor(a.data * mask, _parents=(a,))
    out._backward = lambda g: _accum(a, g * mask)
    return out


def exp(a):
    out = Tensor(np.exp(a.data), _parents=(a,))
    out._backward = lambda g: _accum(a, g * out.data)
    return out


def clip_max(a, hi):
    """min(x, hi); gradient passes only where x < hi."""
    mask = a.data < hi
    out = Tensor(np.minimum(a.data, hi), _parents=(a,))
    out._backward = lambda g: _accum(a, g * mask)
    return out


# -- shape ops ---------------------------------------------------------------


def reshape(a, shape):
    out = Tensor(a.data.reshape(shape), _parents=(a,))
    out._backward = lambda g: _accum(a, g.reshape(a.shape))
    return out


def transpose(a, axes):
    inverse = tuple(np.argsort(axes))
    out = Tensor(a.data.transpose(axes), _parents=(a,))
    out._backward = lambda g: _accum(a, g.transpose(inverse))
    return out


def narrow(a, axis, start, length):
    """Slice ``length`` elements from ``start`` along one axis."""
    index = [slice(None)] * a.ndim
    index[axis] = slice(start, start + length)
    index = tuple(index)
    out = Tensor(a.data[index], _parents=(a,))

    def backward(g):
        gx = np.zeros_like(a.data)
        gx[index] = g
        _accum(a, gx)

    out._backward = backward
    return out


def diagonal(a):
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"diagonal needs a square matrix, got {a.shape}")
    n = a.shape[0]
    idx = np.arange(n)
    out = Tensor(a.data[idx, idx], _parents=(a,))

    def backward(g):
        gx = np.zeros_like(a.data)
        gx[idx, idx] = g
        _accum(a, gx)

    out._backward = backward
    return out


# -- reductions ---------------------------------------------------------------


def tsum(a, axis=None, keepdims=False):
    out = Tensor(a.data.sum(axis=axis, keepdims=keepdims), _parents=(a,))

    def backward(g):
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        _accum(a, np.broadcast_to(g, a.shape).copy())

    out._backward = backward
    return out


def tmean(a, axis=None, keepdims=False):
    count = a.size if axis is None else a.shape[axis]
    out = Tensor(a.data.mean(axis=axis, keepdims=keepdims), _parents=(a,))

    def backward(g):
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        _accum(a, np.broadcast_to(g, a.shape).copy() / count)

    out._backward = backward
    return out


# -- linear algebra -----------------------------------------------------------


def _swap_last(x):
    return np.swapaxes(x, -1, -2)


def matmul(a, b):
    if a.ndim < 2 or b.ndim < 2:
        raise ShapeError("matmul needs operands with ndim >= 2")
    out = Tensor(np.matmul(a.data, b.data), _parents=(a, b))

    def backward(g):
        ga = np.matmul(g, _swap_last(b.data))
        if ga.ndim > a.ndim:
            ga = ga.sum(axis=tuple(range(ga.ndim - a.ndim)))
        gb = np.matmul(_swap_last(a.data), g)
        if gb.ndim > b.ndim:
            gb = gb.sum(axis=tuple(range(gb.ndim - b.ndim)))
        _accum(a, ga)
        _accum(b, gb)

    out._backward = backward
    return out


# -- softmax family ------------------------------------------------------------


def softmax(a, axis=-1):
    z = a.data - a.data.max(axis=axis, keepdims=True)
    e = np.exp(z)
    s = e / e.sum(axis=axis, keepdims=True)
    out = Tensor(s, _parents=(a,))

    def backward(g):
        _accum(a, s * (g - (g * s).sum(axis=axis, keepdims=True)))

    out._backward = backward
    return out


def log_softmax(a, axis=-1):
    z = a.data - a.data.max(axis=axis, keepdims=True)
    lse = np.log(np.exp(z).sum(axis=axis, keepdims=True))
    out = Tensor(z - lse, _parents=(a,))

    def backward(g):
        _accum(a, g - np.exp(out.data) * g.sum(axis=axis, keepdims=True))

    out._backward = backward
    return out


# -- lookup and normalization ---------------------------------------------------


def embedding(weight, ids):
    """Row lookup into ``weight`` by an integer index array."""
    ids = np.asarray(ids)
    if ids.min(initial=0) < 0 or (ids.size and ids.max() >= weight.shape[0]):
        raise ShapeError("embedding index out of range")
    out = Tensor(weight.data[ids], _parents=(weight,))

    def backward(g):
        gw = np.zeros_like(weight.data)
        np.add.at(gw, ids, g)
        _accum(weight, gw)

    out._backward = backward
    return out


def l2_normalize(a, axis=-1, eps=1e-12):
    """Scale vectors along ``axis`` to unit Euclidean norm."""
    norm = np.sqrt((a.data * a.data).sum(axis=axis, keepdims=True)) + eps
    unit = a.data / norm
    out = Tensor(unit, _parents=(a,))

    def backward(g):
        _accum(a, (g - unit * (g * unit).sum(axis=axis, keepdims=True)) / norm)

    out._backward = backward
    return out
