"""Layer objects: parameter containers with a forward method.

Layers hold their parameters as Tensors with requires_grad=True and expose
them through ``params()`` as (name, tensor) pairs; optimizers and the
checkpoint writer rely on those names being stable and unique within a model.
"""
from __future__ import annotations

import numpy as np

from . import convpool
from .init import he_init, plain_init
from .tensor import ShapeError, Tensor, matmul, relu, reshape, softmax, transpose


class Layer:
    """Base: no parameters, identity training-mode switch."""

    def params(self):
        return []

    def set_training(self, flag):
        pass


def _weight(shape, fan_in, rng, he, dtype):
    data = he_init(shape, fan_in, rng, dtype) if he else plain_init(shape, rng, dtype)
    return Tensor(data, requires_grad=True)


class Conv1dLayer(Layer):
    """Valid 1D convolution with kernel ``kernel`` and step ``stride``."""

    def __init__(self, in_channels, out_channels, kernel, stride, rng,
                 he=True, dtype=np.float32):
        if kernel < 1 or stride < 1:
            raise ShapeError("kernel and stride must be >= 1")
        self.in_channels = in_channels
        self.out_channels = out_channels
        self.kernel = kernel
        self.stride = stride
        self.fan_in = in_channels * kernel
        self.weight = _weight((out_channels, in_channels, kernel), self.fan_in, rng, he, dtype)
        self.bias = Tensor(np.zeros(out_channels, dtype=dtype), requires_grad=True)

    def forward(self, x):
        return convpool.conv1d(x, self.weight, self.bias, self.stride)

    def out_len(self, length):
        return convpool.conv_out_len(length, self.kernel, self.stride)

    def params(self):
        return [("weight", self.weight), ("bias", self.bias)]


class Pool1dLayer(Layer):
    """Max or average pooling, local (window k', step s') or global."""

    def __init__(self, window=2, stride=2, mode="max", scope="local"):
        if mode not in ("max", "avg"):
            raise ValueError(f"pool mode must be 'max' or 'avg', got {mode!r}")
        if scope not in ("local", "global"):
            raise ValueError(f"pool scope must be 'local' or 'global', got {scope!r}")
        if scope == "local" and (window < 1 or stride < 1):
            raise ShapeError("local pooling needs window and stride >= 1")
        self.window = window
        self.stride = stride
        self.mode = mode
        self.scope = scope

    def forward(self, x):
        if self.scope == "global":
            if self.mode == "max":
                return convpool.global_max_pool1d(x)
            return convpool.global_avg_pool1d(x)
        if self.mode == "max":
            return convpool.max_pool1d(x, self.window, self.stride)
        return convpool.avg_pool1d(x, self.window, self.stride)

    def out_len(self, length):
        if self.scope == "global":
            if length < 1:
                raise ShapeError("global pooling needs length >= 1")
            return 1
        return convpool.conv_out_len(length, self.window, self.stride)


class DenseLayer(Layer):
    """Affine map on the last axis: x @ W + b."""

    def __init__(self, in_dim, out_dim, rng, he=True, dtype=np.float32):
        self.in_dim = in_dim
        self.out_dim = out_dim
        self.weight = _weight((in_dim, out_dim), in_dim, rng, he, dtype)
        self.bias = Tensor(np.zeros(out_dim, dtype=dtype), requires_grad=True)

    def forward(self, x):
        return matmul(x, self.weight) + self.bias

    def params(self):
        return [("weight", self.weight), ("bias", self.bias)]


class BatchNorm1dLayer(Layer):
    """Per-channel batch normalization for (B, C, L) feature maps."""

    def __init__(self, channels, eps=1e-5, momentum=0.1, dtype=np.float32):
        self.eps = eps
        self.momentum = momentum
        self.training = True
        self.gamma = Tensor(np.ones(channels, dtype=dtype), requires_grad=True)
        self.beta = Tensor(np.zeros(channels, dtype=dtype), requires_grad=True)
        self.running_mean = np.zeros(channels, dtype=np.float64)
        self.running_var = np.ones(channels, dtype=np.float64)

    def forward(self, x, update_running=True):
        return convpool.batch_norm1d(
            x, self.gamma, self.beta, self.running_mean, self.running_var,
            self.eps, self.momentum, self.training, update_running)

    def set_training(self, flag):
        self.training = flag

    def params(self):
        return [("gamma", self.gamma), ("beta", self.beta)]


class EmbeddingLayer(Layer):
    """Token-id to vector lookup table."""

    def __init__(self, vocab_size, dim, rng, dtype=np.float32, std=0.02):
        self.vocab_size = vocab_size
        self.dim = dim
        self.weight = Tensor(rng.normal(0.0, std, size=(vocab_size, dim)).astype(dtype),
                             requires_grad=True)

    def forward(self, ids):
        from .tensor import embedding
        return embedding(self.weight, ids)

    def params(self):
        return [("weight", self.weight)]


class SelfAttentionLayer(Layer):
    """Multi-head self-attention over (B, T, E) with key-side pad masking."""

    def __init__(self, embed_dim, heads, rng, he=True, dtype=np.float32):
        if embed_dim % heads != 0:
            raise ShapeError(f"embed dim {embed_dim} not divisible by {heads} heads")
        self.embed_dim = embed_dim
        self.heads = heads
        self.head_dim = embed_dim // heads
        self.wq = DenseLayer(embed_dim, embed_dim, rng, he, dtype)
        self.wk = DenseLayer(embed_dim, embed_dim, rng, he, dtype)
        self.wv = DenseLayer(embed_dim, embed_dim, rng, he, dtype)
        self.wo = DenseLayer(embed_dim, embed_dim, rng, he, dtype)

    def _split_heads(self, x, b, t):
        x = reshape(x, (b, t, self.heads, self.head_dim))
        x = transpose(x, (0, 2, 1, 3))
        return reshape(x, (b * self.heads, t, self.head_dim))

    def forward(self, x, pad_mask=None):
        """pad_mask: bool (B, T), True where the position is padding."""
        b, t, _ = x.shape
        q = self._split_heads(self.wq.forward(x), b, t)
        k = self._split_heads(self.wk.forward(x), b, t)
        v = self._split_heads(self.wv.forward(x), b, t)
        scores = matmul(q, transpose(k, (0, 2, 1))) * (1.0 / np.sqrt(self.head_dim))
        if pad_mask is not None:
            bias = np.where(pad_mask[:, None, None, :], -1e9, 0.0).astype(x.dtype)
            bias = np.broadcast_to(bias, (b, self.heads, t, t)).reshape(b * self.heads, t, t)
            scores = scores + Tensor(bias)
        attn = softmax(scores, axis=-1)
        ctx = matmul(attn, v)
        ctx = reshape(ctx, (b, self.heads, t, self.head_dim))
        ctx = reshape(transpose(ctx, (0, 2, 1, 3)), (b, t, self.embed_dim))
        return self.wo.forward(ctx)

    def params(self):
        out = []
        for prefix, layer in (("wq", self.wq), ("wk", self.wk), ("wv", self.wv), ("wo", self.wo)):
            out.extend((f"{prefix}.{n}", p) for n, p in layer.params())
        return out


class FeedForwardLayer(Layer):
    """Two dense layers with a ReLU in between."""

    def __init__(self, embed_dim, hidden_dim, rng, he=True, dtype=np.float32):
        self.fc1 = DenseLayer(embed_dim, hidden_dim, rng, he, dtype)
        self.fc2 = DenseLayer(hidden_dim, embed_dim, rng, he, dtype)

    def forward(self, x):
        return self.fc2.forward(relu(self.fc1.forward(x)))

    def params(self):
        return [(f"fc1.{n}", p) for n, p in self.fc1.params()] + \
               [(f"fc2.{n}", p) for n, p in self.fc2.params()]
