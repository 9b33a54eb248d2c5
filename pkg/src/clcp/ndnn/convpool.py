"""1D convolution, pooling, and batch normalization primitives.

All ops work on (batch, channels, length) arrays, valid mode only (no
padding): L_out = floor((L - k) / s) + 1 for both convolution and local
pooling.
"""
from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .tensor import ShapeError, Tensor, _accum


def conv_out_len(length, kernel, stride):
    """Output length of a valid 1D convolution or local pooling window."""
    if length < kernel:
        raise ShapeError(f"input length {length} shorter than window {kernel}")
    return (length - kernel) // stride + 1


def _windows(data, kernel, stride):
    # view of shape (B, C, L_out, kernel)
    return sliding_window_view(data, kernel, axis=2)[:, :, ::stride]


def conv1d(x, weight, bias, stride):
    """Valid 1D convolution: x (B, C_in, L) with weight (C_out, C_in, k)."""
    b, c_in, length = x.shape
    c_out, c_in_w, kernel = weight.shape
    if c_in != c_in_w:
        raise ShapeError(f"conv1d channel mismatch: input {c_in}, weight {c_in_w}")
    l_out = conv_out_len(length, kernel, stride)
    win = _windows(x.data, kernel, stride)
    out_data = np.einsum("bilk,oik->bol", win, weight.data, optimize=True)
    if bias is not None:
        out_data = out_data + bias.data[:, None]
    parents = (x, weight) if bias is None else (x, weight, bias)
    out = Tensor(out_data, _parents=parents)

    def backward(g):
        _accum(weight, np.einsum("bilk,bol->oik", win, g, optimize=True))
        if bias is not None:
            _accum(bias, g.sum(axis=(0, 2)))
        if x.requires_grad:
            gx = np.zeros_like(x.data)
            span = stride * (l_out - 1) + 1
            for j in range(kernel):
                gx[:, :, j:j + span:stride] += np.einsum(
                    "bol,oi->bil", g, weight.data[:, :, j], optimize=True)
            _accum(x, gx)

    out._backward = backward
    return out


def max_pool1d(x, window, stride):
    """Local max pooling; gradient routes to the first maximal index per window."""
    l_out = conv_out_len(x.shape[2], window, stride)
    win = _windows(x.data, window, stride)
    arg = win.argmax(axis=3)
    out = Tensor(win.max(axis=3), _parents=(x,))

    def backward(g):
        gx = np.zeros_like(x.data)
        b, c, _ = g.shape
        pos = arg + np.arange(l_out)[None, None, :] * stride
        np.add.at(gx, (np.arange(b)[:, None, None], np.arange(c)[None, :, None], pos), g)
        _accum(x, gx)

    out._backward = backward
    return out


def avg_pool1d(x, window, stride):
    """Local average pooling; gradient distributes 1/window per position."""
    l_out = conv_out_len(x.shape[2], window, stride)
    win = _windows(x.data, window, stride)
    out = Tensor(win.mean(axis=3), _parents=(x,))

    def backward(g):
        gx = np.zeros_like(x.data)
        span = stride * (l_out - 1) + 1
        for j in range(window):
            gx[:, :, j:j + span:stride] += g / window
        _accum(x, gx)

    out._backward = backward
    return out


def global_max_pool1d(x):
    """Whole-sequence max per channel, output length 1."""
    arg = x.data.argmax(axis=2)
    out = Tensor(x.data.max(axis=2, keepdims=True), _parents=(x,))

    def backward(g):
        gx = np.zeros_like(x.data)
        b, c = arg.shape
        np.add.at(gx, (np.arange(b)[:, None], np.arange(c)[None, :], arg), g[:, :, 0])
        _accum(x, gx)

    out._backward = backward
    return out


def global_avg_pool1d(x):
    """Whole-sequence mean per channel, output length 1."""
    length = x.shape[2]
    out = Tensor(x.data.mean(axis=2, keepdims=True), _parents=(x,))
    out._backward = lambda g: _accum(x, np.broadcast_to(g / length, x.shape).copy())
    return out


def batch_norm1d(x, gamma, beta, running_mean, running_var, eps, momentum, training,
                 update_running=True):
    """Per-channel standardization of (B, C, L) with learned scale and shift.

    Training mode normalizes with biased batch statistics over (B, L) and,
    when asked, updates the running buffers in place; eval mode uses the
    running buffers.  Training requires batch size >= 2.
    """
    if x.ndim != 3:
        raise ShapeError(f"batch_norm1d expects (B, C, L), got {x.shape}")
    if training:
        if x.shape[0] < 2:
            raise ShapeError("batch normalization needs batch size >= 2 in training mode")
        axes = (0, 2)
        n = x.shape[0] * x.shape[2]
        mean = x.data.mean(axis=axes)
        var = x.data.var(axis=axes)
        if update_running:
            running_mean *= 1.0 - momentum
            running_mean += momentum * mean
            running_var *= 1.0 - momentum
            running_var += momentum * var
    else:
        mean, var = running_mean, running_var
    inv_std = 1.0 / np.sqrt(var + eps)
    xhat = (x.data - mean[None, :, None]) * inv_std[None, :, None]
    out_data = gamma.data[None, :, None] * xhat + beta.data[None, :, None]
    out = Tensor(out_data, _parents=(x, gamma, beta))

    def backward(g):
        _accum(gamma, (g * xhat).sum(axis=(0, 2)))
        _accum(beta, g.sum(axis=(0, 2)))
        if not x.requires_grad:
            return
        gxhat = g * gamma.data[None, :, None]
        if training:
            # batch statistics couple every sample in the channel
            sum_g = gxhat.sum(axis=(0, 2), keepdims=True)
            sum_gx = (gxhat * xhat).sum(axis=(0, 2), keepdims=True)
            gx = (gxhat - (sum_g + xhat * sum_gx) / n) * inv_std[None, :, None]
        else:
            gx = gxhat * inv_std[None, :, None]
        _accum(x, gx)

    out._backward = backward
    return out
