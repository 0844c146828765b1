"""Autoencoder over contextual token vectors with static-vector side information.

The encoder sees the contextual vector v (optionally concatenated with the
static vector u) and produces a length-c code; the decoder reconstructs v
from the code (optionally concatenated with u again). Five variants cover
the ablation grid:

  aesi-2l      two dense layers each side, u fed to encoder and decoder
  ae-2l        two dense layers, no side information anywhere
  ae-1l        single dense map each side, no side information
  aesi-1l      single dense map each side, u fed to both
  aesi-dec-2l  two layers, u fed to the decoder only

Two-layer stacks apply gelu between their dense maps; one-layer variants are
a single linear map with no activation. No bias terms by default. All
forward/backward math is explicit; training is plain Adam.
"""

from __future__ import annotations

import csv
import math
import struct
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .errors import ConfigError, DataError, DimensionError, FormatError, TrainingDiverged

CHECKPOINT_MAGIC = b"AESI"
CHECKPOINT_VERSION = 1

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class VariantSpec:
    name: str
    variant_id: int
    encoder_side: bool  # encoder input is (v;u) rather than v
    decoder_side: bool  # decoder input is (e;u) rather than e
    two_layer: bool


VARIANTS = {
    v.name: v
    for v in (
        VariantSpec("aesi-2l", 1, encoder_side=True, decoder_side=True, two_layer=True),
        VariantSpec("ae-2l", 2, encoder_side=False, decoder_side=False, two_layer=True),
        VariantSpec("ae-1l", 3, encoder_side=False, decoder_side=False, two_layer=False),
        VariantSpec("aesi-1l", 4, encoder_side=True, decoder_side=True, two_layer=False),
        VariantSpec("aesi-dec-2l", 5, encoder_side=False, decoder_side=True, two_layer=True),
    )
}

_VARIANT_BY_ID = {v.variant_id: v for v in VARIANTS.values()}


def gelu(x):
    """Exact form x * Phi(x) with Phi the standard normal CDF (erf-based)."""
    x = np.asarray(x)
    return x * ndtr(x)


def gelu_grad(x):
    """d/dx of x * Phi(x) = Phi(x) + x * phi(x)."""
    x = np.asarray(x)
    return ndtr(x) + x * np.exp(-0.5 * np.square(x)) / _SQRT_2PI


@dataclass(frozen=True)
class TokenPair:
    """One training example: contextual vector v with its static vector u."""

    v: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        if np.shape(self.v) != np.shape(self.u):
            raise DimensionError("v and u must have equal lengths")


@dataclass
class AutoencoderParams:
    variant: str
    h: int
    i: int
    c: int
    weights: dict[str, np.ndarray]

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}; choose from {sorted(VARIANTS)}")
        spec = VARIANTS[self.variant]
        expect = _weight_shapes(spec, self.h, self.i, self.c)
        if set(self.weights) != set(expect):
            raise ConfigError(f"weights {sorted(self.weights)} do not match {sorted(expect)}")
        for name, shape in expect.items():
            if self.weights[name].shape != shape:
                raise DimensionError(
                    f"weight {name} has shape {self.weights[name].shape}, expected {shape}"
                )
            if not np.all(np.isfinite(self.weights[name])):
                raise DataError(f"weight {name} contains NaN or Inf")

    @property
    def spec(self) -> VariantSpec:
        return VARIANTS[self.variant]


def _weight_shapes(spec: VariantSpec, h: int, i: int, c: int) -> dict[str, tuple[int, int]]:
    enc_in = 2 * h if spec.encoder_side else h
    dec_in = c + h if spec.decoder_side else c
    if spec.two_layer:
        return {"enc1": (i, enc_in), "enc2": (c, i), "dec1": (i, dec_in), "dec2": (h, i)}
    return {"enc": (c, enc_in), "dec": (h, dec_in)}


def init_params(
    variant: str, h: int, c: int, i: int | None = None, seed: int = 0, dtype=np.float32
) -> AutoencoderParams:
    """Uniform init in +-sqrt(6/(fan_in+fan_out)) per matrix, seeded."""
    if variant not in VARIANTS:
        raise ConfigError(f"unknown variant {variant!r}; choose from {sorted(VARIANTS)}")
    i = h if i is None else i
    rng = np.random.default_rng(seed)
    weights = {}
    for name, (rows, cols) in _weight_shapes(VARIANTS[variant], h, i, c).items():
        limit = math.sqrt(6.0 / (rows + cols))
        weights[name] = rng.uniform(-limit, limit, size=(rows, cols)).astype(dtype)
    return AutoencoderParams(variant=variant, h=h, i=i, c=c, weights=weights)


# ---------------------------------------------------------------------------
# Forward
# ---------------------------------------------------------------------------

def _as_batch(v: np.ndarray, width: int, name: str) -> tuple[np.ndarray, bool]:
    v = np.asarray(v)
    if v.ndim == 1:
        v = v[None, :]
        single = True
    elif v.ndim == 2:
        single = False
    else:
        raise DimensionError(f"{name} must be a vector or matrix")
    if v.shape[1] != width:
        raise DimensionError(f"{name} has width {v.shape[1]}, expected {width}")
    return v, single


def encode_batch(v: np.ndarray, u: np.ndarray, params: AutoencoderParams) -> np.ndarray:
    v, _ = _as_batch(v, params.h, "v")
    u, _ = _as_batch(u, params.h, "u")
    if v.shape[0] != u.shape[0]:
        raise DimensionError("v and u batch sizes differ")
    w = params.weights
    x = np.concatenate([v, u], axis=1) if params.spec.encoder_side else v
    if params.spec.two_layer:
        return gelu(x @ w["enc1"].T) @ w["enc2"].T
    return x @ w["enc"].T


def decode_batch(e: np.ndarray, u: np.ndarray, params: AutoencoderParams) -> np.ndarray:
    e, _ = _as_batch(e, params.c, "e")
    u, _ = _as_batch(u, params.h, "u")
    if e.shape[0] != u.shape[0]:
        raise DimensionError("e and u batch sizes differ")
    w = params.weights
    y = np.concatenate([e, u], axis=1) if params.spec.decoder_side else e
    if params.spec.two_layer:
        return gelu(y @ w["dec1"].T) @ w["dec2"].T
    return y @ w["dec"].T


def encode(pair: TokenPair, params: AutoencoderParams) -> np.ndarray:
    return encode_batch(pair.v, pair.u, params)[0]


def decode(e: np.ndarray, u: np.ndarray, params: AutoencoderParams) -> np.ndarray:
    return decode_batch(e, u, params)[0]


def reconstruct_batch(v: np.ndarray, u: np.ndarray, params: AutoencoderParams) -> np.ndarray:
    return decode_batch(encode_batch(v, u, params), u, params)


def reconstruction_loss(v: np.ndarray, u: np.ndarray, params: AutoencoderParams) -> float:
    """Mean over batch and coordinates of (v - v')^2."""
    v, _ = _as_batch(v, params.h, "v")
    if v.shape[0] == 0:
        raise DataError("empty batch")
    diff = reconstruct_batch(v, u, params) - v
    return float(np.mean(np.square(diff)))


# ---------------------------------------------------------------------------
# Backward
# ---------------------------------------------------------------------------

def gradients(
    v: np.ndarray, u: np.ndarray, params: AutoencoderParams
) -> tuple[float, dict[str, np.ndarray]]:
    """Loss and exact analytic gradients, one array per weight matrix."""
    v, _ = _as_batch(v, params.h, "v")
    u, _ = _as_batch(u, params.h, "u")
    n = v.shape[0]
    if n == 0:
        raise DataError("empty batch")
    spec, w, c = params.spec, params.weights, params.c

    x = np.concatenate([v, u], axis=1) if spec.encoder_side else v
    if spec.two_layer:
        a1 = x @ w["enc1"].T
        z1 = gelu(a1)
        e = z1 @ w["enc2"].T
    else:
        e = x @ w["enc"].T
    y = np.concatenate([e, u], axis=1) if spec.decoder_side else e
    if spec.two_layer:
        a2 = y @ w["dec1"].T
        z2 = gelu(a2)
        out = z2 @ w["dec2"].T
    else:
        out = y @ w["dec"].T

    diff = out - v
    loss = float(np.mean(np.square(diff)))
    dout = diff * (2.0 / diff.size)

    grads: dict[str, np.ndarray] = {}
    if spec.two_layer:
        grads["dec2"] = dout.T @ z2
        da2 = (dout @ w["dec2"]) * gelu_grad(a2)
        grads["dec1"] = da2.T @ y
        dy = da2 @ w["dec1"]
    else:
        grads["dec"] = dout.T @ y
        dy = dout @ w["dec"]
    de = dy[:, :c]  # the u columns are data, not parameters; their grad is dropped
    if spec.two_layer:
        grads["enc2"] = de.T @ z1
        da1 = (de @ w["enc2"]) * gelu_grad(a1)
        grads["enc1"] = da1.T @ x
    else:
        grads["enc"] = de.T @ x
    return loss, grads


# ---------------------------------------------------------------------------
# Training
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrainConfig:
    variant: str
    h: int
    c: int
    i: int | None = None
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    epochs: int = 5
    batch_size: int = 256
    seed: int = 0
    dtype: type = np.float32

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}")
        if self.epochs < 1 or self.batch_size < 1:
            raise ConfigError("epochs and batch_size must be >= 1")


def train(
    v: np.ndarray, u: np.ndarray, config: TrainConfig
) -> tuple[AutoencoderParams, list[tuple[int, float]]]:
    """Adam over shuffled mini-batches; aborts with diagnostics on NaN loss."""
    v = np.asarray(v, dtype=config.dtype)
    u = np.asarray(u, dtype=config.dtype)
    if v.ndim != 2 or v.shape != u.shape:
        raise DimensionError("v and u must be equal-shape (n, h) matrices")
    n = v.shape[0]
    if n == 0:
        raise DataError("empty corpus")
    if v.shape[1] != config.h:
        raise DimensionError(f"corpus width {v.shape[1]} != configured h {config.h}")

    params = init_params(
        config.variant, config.h, config.c, config.i, seed=config.seed, dtype=config.dtype
    )
    m_state = {k: np.zeros_like(w) for k, w in params.weights.items()}
    v_state = {k: np.zeros_like(w) for k, w in params.weights.items()}
    rng = np.random.default_rng(config.seed + 1)
    history: list[tuple[int, float]] = []
    step = 0
    for _ in range(config.epochs):
        order = rng.permutation(n)
        for lo in range(0, n, config.batch_size):
            batch = order[lo : lo + config.batch_size]
            # overflow en route to divergence is caught by the loss check below
            with np.errstate(over="ignore", invalid="ignore"):
                loss, grads = gradients(v[batch], u[batch], params)
            if not math.isfinite(loss):
                raise TrainingDiverged(
                    f"loss became {loss} at step {step} ({config.variant}, c={config.c})"
                )
            step += 1
            b1t = 1.0 - config.beta1**step
            b2t = 1.0 - config.beta2**step
            for k, g in grads.items():
                m_state[k] = config.beta1 * m_state[k] + (1.0 - config.beta1) * g
                v_state[k] = config.beta2 * v_state[k] + (1.0 - config.beta2) * np.square(g)
                update = (m_state[k] / b1t) / (np.sqrt(v_state[k] / b2t) + config.eps)
                params.weights[k] = (params.weights[k] - config.lr * update).astype(config.dtype)
            history.append((step, loss))
    return params, history


# ---------------------------------------------------------------------------
# Checkpoint and loss-history files
# ---------------------------------------------------------------------------

_CKPT_HEADER = struct.Struct("<4sHBxIII")  # magic, version, variant id, pad, h, i, c

_WEIGHT_ORDER = {True: ("enc1", "enc2", "dec1", "dec2"), False: ("enc", "dec")}


def save_checkpoint(path: str, params: AutoencoderParams) -> None:
    """Row-major f32 weight matrices after a fixed header."""
    spec = params.spec
    with open(path, "wb") as f:
        f.write(
            _CKPT_HEADER.pack(
                CHECKPOINT_MAGIC, CHECKPOINT_VERSION, spec.variant_id,
                params.h, params.i, params.c,
            )
        )
        for name in _WEIGHT_ORDER[spec.two_layer]:
            f.write(np.ascontiguousarray(params.weights[name], dtype="<f4").tobytes())


def load_checkpoint(path: str) -> AutoencoderParams:
    with open(path, "rb") as f:
        data = f.read()
    if len(data) < _CKPT_HEADER.size:
        raise FormatError("checkpoint truncated before header end")
    magic, version, variant_id, h, i, c = _CKPT_HEADER.unpack_from(data)
    if magic != CHECKPOINT_MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {CHECKPOINT_MAGIC!r}")
    if version != CHECKPOINT_VERSION:
        raise FormatError(f"unsupported checkpoint version {version}")
    if variant_id not in _VARIANT_BY_ID:
        raise FormatError(f"unknown variant id {variant_id}")
    spec = _VARIANT_BY_ID[variant_id]
    weights = {}
    off = _CKPT_HEADER.size
    for name in _WEIGHT_ORDER[spec.two_layer]:
        rows, cols = _weight_shapes(spec, h, i, c)[name]
        count = rows * cols
        if off + 4 * count > len(data):
            raise FormatError(f"checkpoint truncated inside weight {name}")
        weights[name] = (
            np.frombuffer(data, dtype="<f4", count=count, offset=off)
            .reshape(rows, cols)
            .copy()
        )
        off += 4 * count
    if off != len(data):
        raise FormatError("trailing bytes after weights")
    return AutoencoderParams(variant=spec.name, h=h, i=i, c=c, weights=weights)


def save_loss_history(path: str, history: list[tuple[int, float]]) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(("step", "loss"))
        writer.writerows(history)


def load_loss_history(path: str) -> list[tuple[int, float]]:
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows or rows[0] != ["step", "loss"]:
        raise FormatError("loss history must start with a 'step,loss' header")
    return [(int(s), float(l)) for s, l in rows[1:]]
