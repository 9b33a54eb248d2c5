"""Encoder architectures mapping code images and descriptions to one space.

Three code-encoder families share one config record: ``lp`` (conv blocks with
local pooling), ``gp`` (same, but the last block pools globally), and ``rn``
(1D residual blocks with a global pool).  The text side is a small
from-scratch transformer over a word-level vocabulary; ``text_layers=0``
degenerates to a mean of embeddings, which trains fast at desk scale.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import ndnn
from .ndnn import Tensor


class ConfigError(ValueError):
    pass


@dataclass
class ModelConfig:
    """Architecture plus training hyperparameters; one flat record."""

    # code encoder
    blocks: int = 3
    kernel: int = 5
    stride: int = 1
    pool_window: int = 2
    pool_stride: int = 2
    pool_mode: str = "max"       # max | avg
    pooling: str = "local"       # local | global
    arch: str = "block"          # block | residual
    use_bn: bool = False
    use_pooling: bool = True
    use_he_init: bool = True
    channels: tuple[int, ...] = ()   # empty -> 16 doubling, capped at 128
    embed_dim: int = 64
    image_len: int = 512
    max_id: int = 13811
    # text encoder
    text_vocab: int = 2000
    text_embed: int = 64
    text_layers: int = 0
    text_heads: int = 4
    text_ff: int = 128
    text_max_len: int = 32
    # contrastive head and optimization
    temperature_init: float = 1.0 / 0.07
    temperature_max: float = 100.0
    optimizer: str = "adam"
    lr: float = 1e-3
    batch_size: int = 32
    max_epochs: int = 30
    patience: int = 5
    val_fraction: float = 0.05
    seed: int = 0

    def validate(self):
        if not 3 <= self.blocks <= 7:
            raise ConfigError(f"blocks: must be in 3..7, got {self.blocks}")
        if self.arch not in ("block", "residual"):
            raise ConfigError(f"arch: must be 'block' or 'residual', got {self.arch!r}")
        if self.pooling not in ("local", "global"):
            raise ConfigError(f"pooling: must be 'local' or 'global', got {self.pooling!r}")
        if self.pool_mode not in ("max", "avg"):
            raise ConfigError(f"pool_mode: must be 'max' or 'avg', got {self.pool_mode!r}")
        if self.embed_dim < 8:
            raise ConfigError(f"embed_dim: must be >= 8, got {self.embed_dim}")
        if self.kernel < 1 or self.stride < 1:
            raise ConfigError("kernel/stride: must be >= 1")
        if self.text_embed % self.text_heads:
            raise ConfigError("text_heads: must divide text_embed")
        if self.optimizer not in ("adam", "sgd"):
            raise ConfigError(f"optimizer: must be 'adam' or 'sgd', got {self.optimizer!r}")
        return self

    def channel_plan(self):
        if self.channels:
            if len(self.channels) != self.blocks:
                raise ConfigError(
                    f"channels: expected {self.blocks} entries, got {len(self.channels)}")
            return tuple(self.channels)
        return tuple(min(16 * 2 ** i, 128) for i in range(self.blocks))

    def family(self):
        if self.arch == "residual":
            return "rn"
        return "gp" if self.pooling == "global" else "lp"

    def config_id(self):
        tags = [f"{self.family()}{self.blocks}"]
        if self.use_bn:
            tags.append("+BN")
        if not self.use_pooling:
            tags.append("-Pool")
        if not self.use_he_init:
            tags.append("-Init")
        return "".join(tags)

    # flat key=value file, every field addressable
    def to_text(self):
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "channels":
                value = ",".join(str(c) for c in value)
            lines.append(f"{f.name}={value}")
        return "\n".join(lines) + "\n"

    def save(self, path):
        Path(path).write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def from_text(cls, text):
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, raw = line.partition("=")
            key = key.strip()
            raw = raw.strip()
            if key not in known:
                raise ConfigError(f"{key}: unknown config field")
            kwargs[key] = _parse_field(key, raw)
        return cls(**kwargs)

    @classmethod
    def load(cls, path):
        return cls.from_text(Path(path).read_text(encoding="utf-8"))


def _parse_field(name, raw):
    if name == "channels":
        return tuple(int(x) for x in raw.split(",") if x) if raw else ()
    proto = getattr(ModelConfig(), name)
    if isinstance(proto, bool):
        if raw.lower() in ("true", "1", "yes"):
            return True
        if raw.lower() in ("false", "0", "no"):
            return False
        raise ConfigError(f"{name}: expected a boolean, got {raw!r}")
    if isinstance(proto, int):
        return int(raw)
    if isinstance(proto, float):
        return float(raw)
    return raw


def config_for_family(family, blocks=3, **overrides):
    """Convenience constructor for the lp / gp / rn baselines."""
    if family == "lp":
        cfg = ModelConfig(blocks=blocks, arch="block", pooling="local", **overrides)
    elif family == "gp":
        cfg = ModelConfig(blocks=blocks, arch="block", pooling="global", **overrides)
    elif family == "rn":
        cfg = ModelConfig(blocks=blocks, arch="residual", pooling="global", **overrides)
    else:
        raise ConfigError(f"family: must be lp, gp, or rn, got {family!r}")
    return cfg.validate()


def apply_ablation(config, delta):
    """Return a copy of ``config`` with one ablation flag flipped."""
    from dataclasses import replace
    if delta == "none":
        return replace(config)
    if delta == "+BN":
        return replace(config, use_bn=True)
    if delta == "-Pool":
        return replace(config, use_pooling=False)
    if delta == "-Init":
        return replace(config, use_he_init=False)
    raise ConfigError(f"delta: unknown ablation {delta!r}")


# -- shape planning ----------------------------------------------------------


def _out_len(length, window, step, where):
    if length < window:
        raise ConfigError(f"{where}: length {length} shorter than window {window}")
    return (length - window) // step + 1


def shape_plan(config):
    """Per-block intermediate lengths, computed without running any math.

    Raises ConfigError naming the offending block when a length drops below 1;
    construction succeeds exactly when this dry run does.
    """
    config.validate()
    length = config.image_len
    plan = []
    if config.arch == "block":
        for i in range(config.blocks):
            conv_len = _out_len(length, config.kernel, config.stride, f"block {i} conv")
            length = conv_len
            pool_len = conv_len
            if config.use_pooling:
                global_here = config.pooling == "global" and i == config.blocks - 1
                if global_here:
                    pool_len = 1
                else:
                    pool_len = _out_len(conv_len, config.pool_window,
                                        config.pool_stride, f"block {i} pool")
                length = pool_len
            plan.append({"block": i, "conv": conv_len, "pool": pool_len})
        return plan
    # residual: input conv, then blocks of conv1 -> conv2 with a 1x1 shortcut
    length = _out_len(length, config.kernel, config.stride, "input conv")
    plan.append({"block": "input", "conv": length, "pool": length})
    for i in range(config.blocks):
        series1 = _out_len(length, config.kernel, config.stride, f"block {i} conv1")
        series2 = _out_len(series1, config.kernel, 1, f"block {i} conv2")
        length = series2  # shortcut is cropped to the series length
        plan.append({"block": i, "conv": series2, "pool": series2})
    if config.use_pooling:
        plan.append({"block": "pool", "conv": length, "pool": 1})
    return plan


def _check_finite(name, tensor):
    if not np.isfinite(tensor.data).all():
        raise ndnn.NumericError(f"non-finite activations after {name}")


class CodeEncoder:
    """Conv/pool stack (or residual stack) ending in a projection to d."""

    def __init__(self, config, rng=None):
        config.validate()
        self.config = config
        self.plan = shape_plan(config)
        rng = rng or np.random.default_rng(config.seed)
        he = config.use_he_init
        chans = config.channel_plan()
        self._params = []
        self._bn_layers = []
        if config.arch == "block":
            self.blocks = []
            in_ch = 1
            for i, out_ch in enumerate(chans):
                conv = ndnn.Conv1dLayer(in_ch, out_ch, config.kernel, config.stride,
                                        rng, he=he)
                bn = ndnn.BatchNorm1dLayer(out_ch) if config.use_bn else None
                pool = None
                if config.use_pooling:
                    global_here = config.pooling == "global" and i == len(chans) - 1
                    pool = ndnn.Pool1dLayer(config.pool_window, config.pool_stride,
                                            config.pool_mode,
                                            "global" if global_here else "local")
                self.blocks.append((conv, bn, pool))
                self._register(f"block{i}.conv", conv)
                if bn is not None:
                    self._register(f"block{i}.bn", bn)
                    self._bn_layers.append(bn)
                in_ch = out_ch
            flat = chans[-1] * self.plan[-1]["pool"]
        else:
            self.input_conv = ndnn.Conv1dLayer(1, chans[0], config.kernel,
                                               config.stride, rng, he=he)
            self._register("input", self.input_conv)
            self.res_blocks = []
            in_ch = chans[0]
            for i, out_ch in enumerate(chans):
                conv1 = ndnn.Conv1dLayer(in_ch, out_ch, config.kernel, config.stride,
                                         rng, he=he)
                conv2 = ndnn.Conv1dLayer(out_ch, out_ch, config.kernel, 1, rng, he=he)
                shortcut = ndnn.Conv1dLayer(in_ch, out_ch, 1, config.stride, rng, he=he)
                bn1 = ndnn.BatchNorm1dLayer(out_ch) if config.use_bn else None
                bn2 = ndnn.BatchNorm1dLayer(out_ch) if config.use_bn else None
                self.res_blocks.append((conv1, conv2, shortcut, bn1, bn2))
                self._register(f"block{i}.conv1", conv1)
                self._register(f"block{i}.conv2", conv2)
                self._register(f"block{i}.shortcut", shortcut)
                for tag, bn in (("bn1", bn1), ("bn2", bn2)):
                    if bn is not None:
                        self._register(f"block{i}.{tag}", bn)
                        self._bn_layers.append(bn)
                in_ch = out_ch
            self.final_pool = (ndnn.Pool1dLayer(mode=config.pool_mode, scope="global")
                               if config.use_pooling else None)
            flat = chans[-1] * (1 if config.use_pooling else self.plan[-1]["pool"])
        self.proj = ndnn.DenseLayer(flat, config.embed_dim, rng, he=he)
        self._register("proj", self.proj)

    def _register(self, prefix, layer):
        self._params.extend((f"{prefix}.{n}", p) for n, p in layer.params())

    def named_params(self):
        return list(self._params)

    def set_training(self, flag):
        for bn in self._bn_layers:
            bn.set_training(flag)

    def forward(self, x):
        """x: Tensor (B, 1, image_len) of normalized IDs -> (B, embed_dim)."""
        if self.config.arch == "block":
            h = x
            for i, (conv, bn, pool) in enumerate(self.blocks):
                h = conv.forward(h)
                if bn is not None:
                    h = bn.forward(h)
                h = ndnn.relu(h)
                if pool is not None:
                    h = pool.forward(h)
                _check_finite(f"block{i}", h)
        else:
            h = ndnn.relu(self.input_conv.forward(x))
            for i, (conv1, conv2, shortcut, bn1, bn2) in enumerate(self.res_blocks):
                series = conv1.forward(h)
                if bn1 is not None:
                    series = bn1.forward(series)
                series = conv2.forward(ndnn.relu(series))
                skip = shortcut.forward(h)
                skip = ndnn.narrow(skip, 2, 0, series.shape[2])
                merged = series + skip
                if bn2 is not None:
                    merged = bn2.forward(merged)
                h = ndnn.relu(merged)
                _check_finite(f"block{i}", h)
            if self.final_pool is not None:
                h = self.final_pool.forward(h)
        flat = ndnn.reshape(h, (h.shape[0], -1))
        out = self.proj.forward(flat)
        _check_finite("proj", out)
        return out


_WORD_RE = re.compile(r"[a-z0-9]+")

PAD_WORD_ID = 0
OOV_WORD_ID = 1


@dataclass
class TextVocabulary:
    """Lowercased word-level vocabulary with pad=0 and an OOV bucket=1."""

    word_to_id: dict[str, int] = field(default_factory=dict)

    @staticmethod
    def tokenize(text):
        return _WORD_RE.findall(text.lower())

    @classmethod
    def build(cls, docs, max_size=2000, min_count=1):
        counts = {}
        for doc in docs:
            for word in cls.tokenize(doc):
                counts[word] = counts.get(word, 0) + 1
        ranked = sorted(((c, w) for w, c in counts.items() if c >= min_count),
                        key=lambda cw: (-cw[0], cw[1]))
        table = {w: i + 2 for i, (_, w) in enumerate(ranked[:max_size - 2])}
        return cls(table)

    @property
    def size(self):
        return len(self.word_to_id) + 2

    def encode(self, text, max_len):
        words = self.tokenize(text)
        truncated = len(words) > max_len
        ids = np.zeros(max_len, dtype=np.int64)
        for i, word in enumerate(words[:max_len]):
            ids[i] = self.word_to_id.get(word, OOV_WORD_ID)
        return ids, truncated

    def encode_batch(self, texts, max_len):
        out = np.zeros((len(texts), max_len), dtype=np.int64)
        n_truncated = 0
        for i, text in enumerate(texts):
            out[i], trunc = self.encode(text, max_len)
            n_truncated += int(trunc)
        return out, n_truncated

    def to_text(self):
        lines = [f"{w}\t{i}" for w, i in sorted(self.word_to_id.items(),
                                                key=lambda kv: kv[1])]
        return "\n".join(lines) + "\n" if lines else ""

    def save(self, path):
        Path(path).write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def load(cls, path):
        table = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if line:
                word, id_ = line.split("\t")
                table[word] = int(id_)
        return cls(table)


class TextEncoder:
    """Word embeddings + positions, optional attention blocks, masked mean."""

    def __init__(self, config, vocab_size, rng=None):
        config.validate()
        self.config = config
        rng = rng or np.random.default_rng(config.seed + 101)
        he = config.use_he_init
        e = config.text_embed
        self.embed = ndnn.EmbeddingLayer(vocab_size, e, rng)
        self.pos = Tensor(rng.normal(0.0, 0.02, size=(config.text_max_len, e))
                          .astype(np.float32), requires_grad=True)
        self.blocks = [(ndnn.SelfAttentionLayer(e, config.text_heads, rng, he=he),
                        ndnn.FeedForwardLayer(e, config.text_ff, rng, he=he))
                       for _ in range(config.text_layers)]
        self.proj = ndnn.DenseLayer(e, config.embed_dim, rng, he=he)
        self._params = [("embed.weight", self.embed.weight), ("pos", self.pos)]
        for i, (attn, ff) in enumerate(self.blocks):
            self._params.extend((f"attn{i}.{n}", p) for n, p in attn.params())
            self._params.extend((f"ff{i}.{n}", p) for n, p in ff.params())
        self._params.extend((f"proj.{n}", p) for n, p in self.proj.params())

    def named_params(self):
        return list(self._params)

    def set_training(self, flag):
        pass

    def forward(self, ids):
        """ids: int array (B, T) with 0 = pad -> (B, embed_dim)."""
        ids = np.asarray(ids)
        if ids.ndim != 2 or ids.shape[1] != self.config.text_max_len:
            raise ndnn.ShapeError(
                f"text ids must be (B, {self.config.text_max_len}), got {ids.shape}")
        pad_mask = ids == PAD_WORD_ID
        h = self.embed.forward(ids) + self.pos
        for i, (attn, ff) in enumerate(self.blocks):
            h = h + attn.forward(h, pad_mask)
            h = h + ff.forward(h)
            _check_finite(f"text block{i}", h)
        keep = Tensor((~pad_mask).astype(h.dtype)[:, :, None])
        counts = np.maximum(keep.data.sum(axis=1), 1.0)
        pooled = ndnn.tsum(h * keep, axis=1) * Tensor((1.0 / counts).astype(h.dtype))
        out = self.proj.forward(pooled)
        _check_finite("text proj", out)
        return out


def build_code_encoder(config, rng=None):
    return CodeEncoder(config, rng)


def build_text_encoder(config, vocab_size, rng=None):
    return TextEncoder(config, vocab_size, rng)


def embed(encoder, batch):
    """Forward plus L2 normalization; every output row has unit norm."""
    if isinstance(encoder, TextEncoder):
        raw = encoder.forward(batch)
    else:
        x = batch if isinstance(batch, Tensor) else Tensor(np.asarray(batch))
        raw = encoder.forward(x)
    return ndnn.l2_normalize(raw, axis=1)
