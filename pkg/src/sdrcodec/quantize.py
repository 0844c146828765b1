"""Scalar quantization schemes over power-of-2 blocks.

The distribution-optimized path (``drive_*``) transforms a block with the
randomized Hadamard transform, rescales it to squared norm d, and snaps every
coordinate to the nearest standard-normal Lloyd-Max centroid. The comparison
schemes (deterministic rounding DR, stochastic rounding SR, subtractive
dithering SD, and their Hadamard-preceded variants) use per-block min-max
normalization instead.

All schemes are deterministic given their seed; ties at a cell boundary
always round toward the lower index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import ConfigError, DataError, DimensionError
from .hadamard import (
    TransformedVector,
    fwht_inplace,
    inverse_randomized_transform,
    rademacher_signs,
    randomized_transform,
    uniform_dither,
)

_SQRT_2PI = math.sqrt(2.0 * math.pi)


# ---------------------------------------------------------------------------
# Gaussian Lloyd-Max centroid tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentroidTable:
    """Sorted Lloyd-Max centroids of N(0,1) with midpoint cell boundaries."""

    bits: int
    centroids: np.ndarray   # float64, length 2**bits, strictly increasing
    boundaries: np.ndarray  # float64, length 2**bits - 1

    def __post_init__(self):
        if not 1 <= self.bits <= 8:
            raise ConfigError(f"bits must be in 1..8, got {self.bits}")
        if len(self.centroids) != 2 ** self.bits:
            raise ConfigError("centroid count does not match bits")

    def assign(self, y: np.ndarray) -> np.ndarray:
        """Nearest-centroid index per coordinate; boundary ties go to the lower cell."""
        return np.searchsorted(self.boundaries, y, side="left").astype(np.uint8)


def _normal_pdf(x: np.ndarray) -> np.ndarray:
    return np.exp(-0.5 * np.square(x)) / _SQRT_2PI


def _cell_means(boundaries: np.ndarray) -> np.ndarray:
    """Conditional means of N(0,1) over the cells cut by the given boundaries.

    Uses the closed forms: integral of t*phi(t) over (a, b) = phi(a) - phi(b)
    and cell mass = Phi(b) - Phi(a).
    """
    lo = np.concatenate(([-np.inf], boundaries))
    hi = np.concatenate((boundaries, [np.inf]))
    pdf_lo = np.where(np.isfinite(lo), _normal_pdf(lo), 0.0)
    pdf_hi = np.where(np.isfinite(hi), _normal_pdf(hi), 0.0)
    mass = ndtr(hi) - ndtr(lo)
    return (pdf_lo - pdf_hi) / mass


def gaussian_lloyd_max(bits: int, tol: float = 1e-10, max_iter: int = 200_000) -> CentroidTable:
    """Lloyd-Max quantizer of the standard normal with 2**bits levels.

    Alternates conditional means (closed-form Gaussian moments) and midpoint
    boundaries until the largest centroid movement is below ``tol``.
    """
    if not isinstance(bits, int) or not 1 <= bits <= 8:
        raise ConfigError(f"bits must be an integer in 1..8, got {bits!r}")
    k = 2 ** bits
    # Equiprobable-cell quantiles make a good starting point.
    centroids = ndtri((np.arange(k) + 0.5) / k)
    for _ in range(max_iter):
        boundaries = 0.5 * (centroids[:-1] + centroids[1:])
        new_centroids = _cell_means(boundaries)
        movement = np.max(np.abs(new_centroids - centroids))
        centroids = new_centroids
        if movement < tol:
            break
    else:
        raise RuntimeError(f"Lloyd-Max did not converge for bits={bits}")
    # the optimum for a symmetric density is antisymmetric; enforce it exactly
    # so the middle boundary is 0.0 and sign conventions are reproducible
    centroids = 0.5 * (centroids - centroids[::-1])
    boundaries = 0.5 * (centroids[:-1] + centroids[1:])
    return CentroidTable(bits=bits, centroids=centroids, boundaries=boundaries)


_TABLE_CACHE: dict[int, CentroidTable] = {}


def centroid_table(bits: int) -> CentroidTable:
    """The embedded constant table for B in 1..8 (computed once, then cached)."""
    if bits not in _TABLE_CACHE:
        from ._centroids import CENTROIDS

        if bits not in CENTROIDS:
            raise ConfigError(f"bits must be in 1..8, got {bits}")
        centroids = np.array(CENTROIDS[bits], dtype=np.float64)
        boundaries = 0.5 * (centroids[:-1] + centroids[1:])
        _TABLE_CACHE[bits] = CentroidTable(bits=bits, centroids=centroids, boundaries=boundaries)
    return _TABLE_CACHE[bits]


def export_centroid_table(bits: int) -> str:
    """Plain-text table (bits, index, centroid at 17 significant digits)."""
    table = centroid_table(bits)
    lines = [f"{bits}\t{i}\t{c:.17g}" for i, c in enumerate(table.centroids)]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# DRIVE: randomized Hadamard + norm rescale + Gaussian centroids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuantizedBlock:
    """Per-block quantization result: centroid indices plus the block's l2 norm."""

    indices: np.ndarray  # uint8, length d
    norm: float          # l2 norm of the pre-transform block; 0 means all-zero block
    bits: int


def _check_finite(x: np.ndarray) -> None:
    if not np.all(np.isfinite(x)):
        raise DataError("input contains NaN or Inf")


def _as_rows(x: np.ndarray) -> tuple[np.ndarray, bool]:
    x = np.asarray(x)
    if x.ndim == 1:
        return x[None, :], True
    if x.ndim == 2:
        return x, False
    raise DimensionError(f"expected a vector or matrix of blocks, got ndim={x.ndim}")


def _row_seeds(seed, n: int) -> np.ndarray:
    seeds = np.asarray(seed, dtype=np.uint64)
    if seeds.ndim == 0:
        seeds = np.broadcast_to(seeds, (n,))
    if seeds.shape != (n,):
        raise DimensionError(f"need one seed per row, got {seeds.shape} for {n} rows")
    return seeds


def drive_quantize_batch(
    x: np.ndarray, seeds, table: CentroidTable
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized quantizer: rows of x are independent blocks with per-row seeds.

    Returns (indices, norms). All-zero rows are emitted with norm 0 and every
    index pointing at the centroid nearest zero, and reconstruct to exactly 0.
    """
    x, _ = _as_rows(x)
    _check_finite(x)
    d = x.shape[-1]
    seeds = _row_seeds(seeds, x.shape[0])
    norms = np.linalg.norm(x.astype(np.float64, copy=False), axis=1)
    signs = rademacher_signs(seeds, d)
    y = fwht_inplace(x * signs)
    scale = np.where(norms > 0.0, math.sqrt(d) / np.where(norms > 0.0, norms, 1.0), 0.0)
    y *= scale[:, None].astype(y.dtype)
    indices = table.assign(y)
    zero = norms == 0.0
    if np.any(zero):
        indices[zero] = table.assign(np.asarray(0.0))
    return indices, norms


def drive_dequantize_batch(
    indices: np.ndarray,
    norms: np.ndarray,
    seeds,
    table: CentroidTable,
    dtype=np.float32,
) -> np.ndarray:
    indices, _ = _as_rows(indices)
    n, d = indices.shape
    seeds = _row_seeds(seeds, n)
    norms = np.atleast_1d(np.asarray(norms, dtype=np.float64))
    y_hat = table.centroids[indices] * (norms[:, None] / math.sqrt(d))
    y_hat = y_hat.astype(dtype)
    signs = rademacher_signs(seeds, d)
    out = fwht_inplace(y_hat)
    out *= signs
    return out


def drive_quantize(x: np.ndarray, seed: int, table: CentroidTable) -> QuantizedBlock:
    """Quantize one power-of-2 block; see drive_quantize_batch for the zero contract."""
    x = np.asarray(x)
    if x.ndim != 1:
        raise DimensionError("drive_quantize expects a single vector")
    indices, norms = drive_quantize_batch(x, seed, table)
    return QuantizedBlock(indices=indices[0], norm=float(norms[0]), bits=table.bits)


def drive_dequantize(
    q: QuantizedBlock, seed: int, table: CentroidTable, dtype=np.float32
) -> np.ndarray:
    if q.bits != table.bits:
        raise ConfigError(f"block was quantized at {q.bits} bits, table has {table.bits}")
    if q.norm == 0.0:
        return np.zeros(len(q.indices), dtype=dtype)
    return drive_dequantize_batch(q.indices, q.norm, seed, table, dtype=dtype)[0]


def drive_bc_scalar(q: QuantizedBlock, table: CentroidTable) -> float:
    """Bias-correction multiplier d / ||y_hat||^2 for the centroid vector y_hat.

    Dimensionless form of the norm-ratio correction; approaches 1 as the
    centroid error vanishes.
    """
    y_hat = table.centroids[q.indices]
    denom = float(np.dot(y_hat, y_hat))
    if denom == 0.0:
        return 0.0
    return len(q.indices) / denom


def drive_bc_dequantize(
    q: QuantizedBlock, seed: int, table: CentroidTable, dtype=np.float32
) -> np.ndarray:
    """DRIVE dequantize followed by the bias-correction rescale (worse MSE, lower bias)."""
    out = drive_dequantize(q, seed, table, dtype=dtype)
    return out * dtype(drive_bc_scalar(q, table)) if q.norm != 0.0 else out


# ---------------------------------------------------------------------------
# Min-max comparison schemes: DR / SR / SD
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MinMaxParams:
    """Per-block normalization range for the rounding-based schemes."""

    lo: float
    hi: float

    def __post_init__(self):
        if self.hi < self.lo:
            raise ConfigError(f"hi < lo: {self.hi} < {self.lo}")


def _check_bits(bits: int) -> int:
    if not 1 <= bits <= 8:
        raise ConfigError(f"bits must be in 1..8, got {bits}")
    return (1 << bits) - 1


def _minmax_quantize_batch(
    x: np.ndarray, bits: int, seeds=None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Shared DR/SR core. Returns (indices, lo, hi); dither is added when seeds given."""
    levels = _check_bits(bits)
    x, _ = _as_rows(x)
    _check_finite(x)
    lo = x.min(axis=1)
    hi = x.max(axis=1)
    span = hi - lo
    safe = np.where(span > 0.0, span, 1.0)
    v = (x - lo[:, None]) / safe[:, None] * levels
    if seeds is not None:
        v = v + uniform_dither(_row_seeds(seeds, x.shape[0]), x.shape[1])
        indices = np.floor(v + 0.5)
    else:
        # round-half-down keeps boundary ties on the lower index
        indices = np.ceil(v - 0.5)
    indices = np.clip(indices, 0, levels).astype(np.uint8)
    indices[span == 0.0] = 0
    return indices, lo, hi


def _minmax_dequantize_batch(
    indices: np.ndarray, lo, hi, bits: int, dither: np.ndarray | None = None
) -> np.ndarray:
    levels = _check_bits(bits)
    indices, _ = _as_rows(indices)
    lo = np.atleast_1d(np.asarray(lo, dtype=np.float64))
    hi = np.atleast_1d(np.asarray(hi, dtype=np.float64))
    span = hi - lo
    v = indices.astype(np.float64)
    if dither is not None:
        v = v - dither
    out = lo[:, None] + v / levels * span[:, None]
    const = span == 0.0
    if np.any(const):
        out[const] = lo[const, None]
    return out


def dr_quantize(x: np.ndarray, bits: int) -> tuple[np.ndarray, MinMaxParams]:
    """Deterministic rounding after per-block min-max normalization."""
    indices, lo, hi = _minmax_quantize_batch(np.asarray(x), bits)
    return indices[0], MinMaxParams(lo=float(lo[0]), hi=float(hi[0]))


def dr_dequantize(indices: np.ndarray, params: MinMaxParams, bits: int) -> np.ndarray:
    return _minmax_dequantize_batch(indices, params.lo, params.hi, bits)[0]


def sr_quantize(x: np.ndarray, bits: int, seed: int) -> tuple[np.ndarray, MinMaxParams]:
    """Stochastic rounding: uniform (-0.5, 0.5) dither before rounding, unbiased."""
    indices, lo, hi = _minmax_quantize_batch(np.asarray(x), bits, seeds=seed)
    return indices[0], MinMaxParams(lo=float(lo[0]), hi=float(hi[0]))


def sr_dequantize(indices: np.ndarray, params: MinMaxParams, bits: int) -> np.ndarray:
    return _minmax_dequantize_batch(indices, params.lo, params.hi, bits)[0]


def sd_quantize(x: np.ndarray, bits: int, seed: int) -> tuple[np.ndarray, MinMaxParams]:
    """Subtractive dithering: quantizes exactly like SR with the same seed."""
    return sr_quantize(x, bits, seed)


def sd_dequantize(
    indices: np.ndarray, params: MinMaxParams, bits: int, seed: int
) -> np.ndarray:
    """Regenerates the dither from the seed and subtracts it before denormalizing."""
    indices = np.asarray(indices)
    if params.hi == params.lo:
        return np.full(indices.shape[-1], params.lo, dtype=np.float64)
    dither = uniform_dither(np.uint64(seed), indices.shape[-1])[None, :]
    return _minmax_dequantize_batch(indices, params.lo, params.hi, bits, dither=dither)[0]


# ---------------------------------------------------------------------------
# Scheme objects and the Hadamard wrapper
# ---------------------------------------------------------------------------

class MinMaxScheme:
    """Uniform quantize/dequantize interface over DR, SR and SD."""

    def __init__(self, name: str, dithered: bool, subtractive: bool):
        self.name = name
        self.dithered = dithered
        self.subtractive = subtractive

    def quantize(self, x, bits, seed=None):
        if self.dithered and seed is None:
            raise ConfigError(f"{self.name} requires a seed")
        indices, lo, hi = _minmax_quantize_batch(
            np.asarray(x), bits, seeds=seed if self.dithered else None
        )
        return indices[0], MinMaxParams(lo=float(lo[0]), hi=float(hi[0]))

    def dequantize(self, indices, params, bits, seed=None):
        if self.subtractive:
            return sd_dequantize(indices, params, bits, seed)
        return _minmax_dequantize_batch(indices, params.lo, params.hi, bits)[0]

    def _roundtrip_batch(self, x, bits, seeds):
        indices, lo, hi = _minmax_quantize_batch(
            x, bits, seeds=seeds if self.dithered else None
        )
        dither = None
        if self.subtractive:
            dither = uniform_dither(_row_seeds(seeds, x.shape[0]), x.shape[1])
        out = _minmax_dequantize_batch(indices, lo, hi, bits, dither=dither)
        const = (hi - lo) == 0.0
        if np.any(const):
            out[const] = lo[const, None]
        return out, indices


class HadamardScheme:
    """A min-max scheme preceded by the randomized Hadamard transform."""

    def __init__(self, base: MinMaxScheme):
        self.base = base
        self.name = "h-" + base.name

    def quantize(self, x, bits, seed):
        t = randomized_transform(np.asarray(x, dtype=np.float64), seed)
        return self.base.quantize(t.values, bits, seed)

    def dequantize(self, indices, params, bits, seed):
        z = self.base.dequantize(indices, params, bits, seed)
        return inverse_randomized_transform(TransformedVector(values=z, seed=seed))

    def _roundtrip_batch(self, x, bits, seeds):
        seeds = _row_seeds(seeds, x.shape[0])
        signs = rademacher_signs(seeds, x.shape[1])
        y = fwht_inplace(np.asarray(x, dtype=np.float64) * signs)
        z, indices = self.base._roundtrip_batch(y, bits, seeds)
        out = fwht_inplace(z)
        out *= signs
        return out, indices


DR = MinMaxScheme("dr", dithered=False, subtractive=False)
SR = MinMaxScheme("sr", dithered=True, subtractive=False)
SD = MinMaxScheme("sd", dithered=True, subtractive=True)


def hadamard_wrap(scheme: MinMaxScheme) -> HadamardScheme:
    """Compose randomized transform -> scheme -> inverse transform."""
    return HadamardScheme(scheme)


class _DriveScheme:
    def __init__(self, name: str, bias_corrected: bool):
        self.name = name
        self.bias_corrected = bias_corrected

    def _roundtrip_batch(self, x, bits, seeds):
        table = centroid_table(bits)
        x = np.asarray(x, dtype=np.float64)
        indices, norms = drive_quantize_batch(x, seeds, table)
        out = drive_dequantize_batch(indices, norms, seeds, table, dtype=np.float64)
        if self.bias_corrected:
            y_hat = table.centroids[indices]
            sq = np.einsum("ij,ij->i", y_hat, y_hat)
            scale = np.where(sq > 0.0, x.shape[1] / np.where(sq > 0.0, sq, 1.0), 0.0)
            out *= scale[:, None]
        return out, indices


SCHEMES = {
    "drive": _DriveScheme("drive", bias_corrected=False),
    "drive-bc": _DriveScheme("drive-bc", bias_corrected=True),
    "dr": DR,
    "sr": SR,
    "sd": SD,
    "h-dr": hadamard_wrap(DR),
    "h-sr": hadamard_wrap(SR),
    "h-sd": hadamard_wrap(SD),
}


def scheme_roundtrip_batch(name: str, x: np.ndarray, bits: int, seeds) -> np.ndarray:
    """Quantize and immediately dequantize a batch of blocks with per-row seeds."""
    if name not in SCHEMES:
        raise ConfigError(f"unknown scheme {name!r}; choose from {sorted(SCHEMES)}")
    out, _ = SCHEMES[name]._roundtrip_batch(np.asarray(x), bits, seeds)
    return out


def scheme_indices_batch(name: str, x: np.ndarray, bits: int, seeds) -> np.ndarray:
    """Quantization indices only, for entropy measurements."""
    if name not in SCHEMES:
        raise ConfigError(f"unknown scheme {name!r}; choose from {sorted(SCHEMES)}")
    _, indices = SCHEMES[name]._roundtrip_batch(np.asarray(x), bits, seeds)
    return indices
