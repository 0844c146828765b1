"""Fast Walsh-Hadamard transform and its Rademacher-randomized variant.

Shared randomness: encoder and decoder regenerate identical sign/dither
streams from a 64-bit seed instead of storing them. The generator is
SplitMix64 used counter-style (``mix64``), fixed forever by the file
format; see that function for the exact constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

# SplitMix64 constants (Steele et al., "Fast splittable pseudorandom number
# generators"). GOLDEN is odd, so i -> i * GOLDEN is a bijection mod 2^64.
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

# Stream constants xored into the seed so one document seed can drive
# several independent streams (Rademacher signs vs. dither noise).
SIGN_STREAM = np.uint64(0)
DITHER_STREAM = np.uint64(0xD1B54A32D192ED03)

_BLOCK_SEED_STRIDE = 0x9E3779B97F4A7C15  # odd, so block -> offset is injective


def _require_pow2(d: int) -> None:
    if d < 1 or (d & (d - 1)) != 0:
        raise DimensionError(f"length must be a power of 2, got {d}")


def mix64(seed, counters, stream=SIGN_STREAM):
    """Counter-based 64-bit mixer: SplitMix64 evaluated at seed ^ stream + i.

    ``counters`` is an integer array (any shape); the result is one uint64
    word per counter. Bit-exact across platforms; this function defines the
    shared-randomness contract of the file format and must never change.
    """
    with np.errstate(over="ignore"):  # uint64 wraparound is the algorithm
        s = np.uint64(seed) ^ np.uint64(stream)
        z = (s + (np.asarray(counters, dtype=np.uint64) + np.uint64(1)) * _GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def derive_block_seed(doc_seed: int, block_index: int) -> int:
    """Per-block seed: document seed xor (block_index * odd constant) mod 2^64."""
    with np.errstate(over="ignore"):
        return int(np.uint64(doc_seed) ^ (np.uint64(block_index) * np.uint64(_BLOCK_SEED_STRIDE)))


def derive_block_seeds(doc_seed: int, num_blocks: int) -> np.ndarray:
    """Vectorized derive_block_seed for blocks 0..num_blocks-1."""
    with np.errstate(over="ignore"):
        idx = np.arange(num_blocks, dtype=np.uint64)
        return np.uint64(doc_seed) ^ (idx * np.uint64(_BLOCK_SEED_STRIDE))


@dataclass(frozen=True)
class RademacherDiagonal:
    """Deterministic +-1 diagonal regenerated from a seed."""

    seed: int
    signs: np.ndarray  # int8, entries in {+1, -1}


@dataclass(frozen=True)
class TransformedVector:
    """Result of the randomized transform together with the seed for its diagonal."""

    values: np.ndarray
    seed: int


def rademacher_signs(seed, d: int, counter_offset: int = 0) -> np.ndarray:
    """Sign vector of length d: bit 0 of mix64 output, 0 -> +1 and 1 -> -1.

    ``seed`` may be a scalar (returns shape (d,)) or an array of per-row
    seeds (returns shape (n, d) with row i drawn from seed[i]).
    """
    counters = np.arange(counter_offset, counter_offset + d, dtype=np.uint64)
    seed = np.asarray(seed, dtype=np.uint64)
    if seed.ndim > 0:
        counters = counters[None, :]
        seed = seed[:, None]
    words = mix64(seed, counters, SIGN_STREAM)
    return (1 - 2 * (words & np.uint64(1)).astype(np.int8)).astype(np.int8)


def rademacher_diag(seed: int, d: int) -> RademacherDiagonal:
    _require_pow2(d)
    return RademacherDiagonal(seed=int(seed), signs=rademacher_signs(seed, d))


def uniform_dither(seed, d: int) -> np.ndarray:
    """Dither in the open interval (-0.5, 0.5), one value per coordinate.

    Uses the top 53 bits of mix64 on the DITHER_STREAM, mapped to
    ((w >> 11) + 0.5) / 2^53 - 0.5 so the endpoints are never hit.
    Accepts scalar or per-row seeds like rademacher_signs.
    """
    counters = np.arange(d, dtype=np.uint64)
    seed = np.asarray(seed, dtype=np.uint64)
    if seed.ndim > 0:
        counters = counters[None, :]
        seed = seed[:, None]
    words = mix64(seed, counters, DITHER_STREAM)
    return ((words >> np.uint64(11)).astype(np.float64) + 0.5) / float(1 << 53) - 0.5


def fwht_inplace(v: np.ndarray, normalize: bool = True) -> np.ndarray:
    """Normalized Walsh-Hadamard transform along the last axis, in the caller's buffer.

    Length must be a power of 2. O(d log d) butterflies; the buffer passed
    in is mutated and returned. The normalized transform is symmetric and
    orthogonal, so applying it twice is the identity.
    """
    v = np.asarray(v)
    d = v.shape[-1]
    _require_pow2(d)
    if d == 1:
        return v
    work = v.reshape(-1, d)
    h = 1
    while h < d:
        blk = work.reshape(work.shape[0], -1, 2 * h)
        a = blk[:, :, :h]
        b = blk[:, :, h:]
        s = a + b
        blk[:, :, h:] = a - b
        blk[:, :, :h] = s
        h *= 2
    if normalize:
        work *= np.asarray(1.0 / math.sqrt(d), dtype=v.dtype if v.dtype.kind == "f" else np.float64)
    return v


def randomized_transform(x: np.ndarray, seed: int) -> TransformedVector:
    """H(D x): randomized Hadamard transform with the diagonal drawn from seed."""
    x = np.asarray(x)
    _require_pow2(x.shape[-1])
    signs = rademacher_signs(seed, x.shape[-1])
    return TransformedVector(values=fwht_inplace(x * signs), seed=int(seed))


def inverse_randomized_transform(y: TransformedVector) -> np.ndarray:
    """D H(y): exact inverse of randomized_transform for the same seed."""
    vals = np.asarray(y.values)
    _require_pow2(vals.shape[-1])
    signs = rademacher_signs(y.seed, vals.shape[-1])
    out = fwht_inplace(vals.copy())
    out *= signs
    return out
