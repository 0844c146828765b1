"""Document-level codec and storage accounting.

A document arrives as an m x c matrix of encoded token vectors. The codec
flattens it row-major, zero-pads to a whole number of power-of-2 blocks,
quantizes each block independently (per-block seed derived from the document
seed), and packs the indices into a contiguous bitstream. B=32 bypasses
quantization and stores raw float32 coordinates.

Blob layout (all little-endian):
  magic "SDR1" | version u16 | c u16 | B u8 | log2(block_size) u8 |
  m u32 | seed u64 | norms: num_blocks x f32 | packed indices, zero-padded
  to a byte boundary (B=32: no norms; payload is m*c raw f32 values).

Container layout: magic "SDRB" | version u16 | reserved u16 | count u32 |
count x (u32 length | blob) | count x u64 blob offsets | footer offset u64.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DataError, FormatError
from .hadamard import derive_block_seeds
from .quantize import centroid_table, drive_dequantize_batch, drive_quantize_batch

BLOB_MAGIC = b"SDR1"
CONTAINER_MAGIC = b"SDRB"
BLOB_VERSION = 1
CONTAINER_VERSION = 1

_HEADER = struct.Struct("<4sHHBBIQ")  # magic, version, c, B, log2(bs), m, seed

FLOAT_PASSTHROUGH_BITS = 32


@dataclass(frozen=True)
class CodecConfig:
    """Static compression parameters; baseline_* describe the uncompressed side."""

    encoded_dim: int
    bits: int
    block_size: int = 128
    baseline_dim: int = 384
    baseline_bits: int = 32
    norm_f16: bool = False  # round stored norms to f16; accounting-only option

    def __post_init__(self):
        if self.encoded_dim < 1:
            raise ConfigError(f"encoded_dim must be >= 1, got {self.encoded_dim}")
        if self.baseline_dim < self.encoded_dim:
            raise ConfigError("baseline_dim must be >= encoded_dim")
        if self.block_size < 1 or self.block_size & (self.block_size - 1):
            raise ConfigError(f"block_size must be a power of 2, got {self.block_size}")
        if not (1 <= self.bits <= 8 or self.bits == FLOAT_PASSTHROUGH_BITS):
            raise ConfigError(f"bits must be 1..8 or 32, got {self.bits}")

    @property
    def norm_bits(self) -> int:
        return 16 if self.norm_f16 else 32


@dataclass(frozen=True)
class CompressedDocument:
    encoded_dim: int
    bits: int
    block_size: int
    num_tokens: int
    seed: int
    norms: np.ndarray        # f32, one per block (empty for B=32)
    packed_indices: bytes    # LSB-first bitstream (B=32: raw f32 bytes)

    @property
    def num_blocks(self) -> int:
        return -(-self.num_tokens * self.encoded_dim // self.block_size)

    @property
    def padded_len(self) -> int:
        return self.num_blocks * self.block_size


def _packed_size(doc_like_bits: int, num_blocks: int, block_size: int, m: int, c: int) -> int:
    if doc_like_bits == FLOAT_PASSTHROUGH_BITS:
        return m * c * 4
    return -(-num_blocks * block_size * doc_like_bits // 8)


def pack_indices(indices: np.ndarray, bits: int) -> bytes:
    """LSB-first bit packing of uint8 indices, each occupying `bits` bits."""
    flat = np.ascontiguousarray(indices, dtype=np.uint8).reshape(-1)
    if bits == 8:
        return flat.tobytes()
    as_bits = (flat[:, None] >> np.arange(bits, dtype=np.uint8)) & np.uint8(1)
    return np.packbits(as_bits.reshape(-1), bitorder="little").tobytes()


def unpack_indices(data: bytes, count: int, bits: int) -> np.ndarray:
    """Inverse of pack_indices; returns `count` uint8 values."""
    if bits == 8:
        out = np.frombuffer(data, dtype=np.uint8, count=count)
        return out.copy()
    raw = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    if len(raw) < count * bits:
        raise FormatError("bitstream shorter than header promises")
    weights = np.uint8(1) << np.arange(bits, dtype=np.uint8)
    return (raw[: count * bits].reshape(-1, bits) * weights).sum(axis=1).astype(np.uint8)


def compress_document(encoded: np.ndarray, config: CodecConfig, seed: int) -> CompressedDocument:
    """Flatten row-major, zero-pad the tail block, quantize block by block."""
    encoded = np.asarray(encoded)
    if encoded.ndim != 2:
        raise ConfigError(f"expected an m x c matrix, got ndim={encoded.ndim}")
    m, c = encoded.shape
    if c != config.encoded_dim:
        raise ConfigError(f"matrix has {c} columns, config expects {config.encoded_dim}")
    if m < 1:
        raise DataError("document must contain at least one token")
    if not np.all(np.isfinite(encoded)):
        raise DataError("input contains NaN or Inf")

    if config.bits == FLOAT_PASSTHROUGH_BITS:
        payload = np.ascontiguousarray(encoded, dtype="<f4").tobytes()
        return CompressedDocument(
            encoded_dim=c, bits=config.bits, block_size=config.block_size,
            num_tokens=m, seed=seed, norms=np.empty(0, dtype=np.float32),
            packed_indices=payload,
        )

    bs = config.block_size
    num_blocks = -(-m * c // bs)
    flat = np.zeros(num_blocks * bs, dtype=np.float32)
    flat[: m * c] = encoded.reshape(-1)
    blocks = flat.reshape(num_blocks, bs)
    seeds = derive_block_seeds(seed, num_blocks)
    indices, norms = drive_quantize_batch(blocks, seeds, centroid_table(config.bits))
    norms = norms.astype(np.float32)
    if config.norm_f16:
        norms = norms.astype(np.float16).astype(np.float32)
    return CompressedDocument(
        encoded_dim=c, bits=config.bits, block_size=bs, num_tokens=m,
        seed=seed, norms=norms, packed_indices=pack_indices(indices, config.bits),
    )


def decompress_document(doc: CompressedDocument) -> np.ndarray:
    """Dequantize every block, drop the zero padding, restore the m x c shape."""
    m, c = doc.num_tokens, doc.encoded_dim
    if doc.bits == FLOAT_PASSTHROUGH_BITS:
        out = np.frombuffer(doc.packed_indices, dtype="<f4", count=m * c)
        return out.reshape(m, c).copy()
    bs = doc.block_size
    indices = unpack_indices(doc.packed_indices, doc.padded_len, doc.bits)
    indices = indices.reshape(doc.num_blocks, bs)
    seeds = derive_block_seeds(doc.seed, doc.num_blocks)
    norms = np.asarray(doc.norms, dtype=np.float64)
    blocks = drive_dequantize_batch(indices, norms, seeds, centroid_table(doc.bits))
    zero = norms == 0.0
    if np.any(zero):
        blocks[zero] = 0.0
    return blocks.reshape(-1)[: m * c].reshape(m, c)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def serialize_document(doc: CompressedDocument) -> bytes:
    log_bs = doc.block_size.bit_length() - 1
    header = _HEADER.pack(
        BLOB_MAGIC, BLOB_VERSION, doc.encoded_dim, doc.bits, log_bs,
        doc.num_tokens, doc.seed,
    )
    norms = np.ascontiguousarray(doc.norms, dtype="<f4").tobytes()
    return header + norms + doc.packed_indices


def deserialize_document(data: bytes) -> CompressedDocument:
    if len(data) < _HEADER.size:
        raise FormatError("blob truncated before header end")
    magic, version, c, bits, log_bs, m, seed = _HEADER.unpack_from(data)
    if magic != BLOB_MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {BLOB_MAGIC!r}")
    if version != BLOB_VERSION:
        raise FormatError(f"unsupported blob version {version}")
    if not (1 <= bits <= 8 or bits == FLOAT_PASSTHROUGH_BITS):
        raise FormatError(f"invalid bits field {bits}")
    bs = 1 << log_bs
    num_blocks = 0 if bits == FLOAT_PASSTHROUGH_BITS else -(-m * c // bs)
    off = _HEADER.size
    norms = np.frombuffer(data, dtype="<f4", count=num_blocks, offset=off).copy()
    off += num_blocks * 4
    payload_size = _packed_size(bits, num_blocks, bs, m, c)
    if len(data) < off + payload_size:
        raise FormatError("blob truncated before payload end")
    payload = data[off : off + payload_size]
    return CompressedDocument(
        encoded_dim=c, bits=bits, block_size=bs, num_tokens=m, seed=seed,
        norms=norms, packed_indices=payload,
    )


def write_blob_container(path: str, blobs: list[bytes]) -> None:
    """Length-prefixed blobs behind a counted header, with an offset footer."""
    with open(path, "wb") as f:
        f.write(CONTAINER_MAGIC)
        f.write(struct.pack("<HHI", CONTAINER_VERSION, 0, len(blobs)))
        offsets = []
        for blob in blobs:
            offsets.append(f.tell())
            f.write(struct.pack("<I", len(blob)))
            f.write(blob)
        footer_start = f.tell()
        for off in offsets:
            f.write(struct.pack("<Q", off))
        f.write(struct.pack("<Q", footer_start))


def read_blob_container(path: str) -> list[bytes]:
    with open(path, "rb") as f:
        data = f.read()
    head = struct.Struct("<4sHHI")
    if len(data) < head.size + 8:
        raise FormatError("container truncated")
    magic, version, _, count = head.unpack_from(data)
    if magic != CONTAINER_MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {CONTAINER_MAGIC!r}")
    if version != CONTAINER_VERSION:
        raise FormatError(f"unsupported container version {version}")
    (footer_start,) = struct.unpack_from("<Q", data, len(data) - 8)
    if footer_start + 8 * count + 8 != len(data):
        raise FormatError("container footer inconsistent with blob count")
    offsets = struct.unpack_from(f"<{count}Q", data, footer_start)
    blobs = []
    for off in offsets:
        (length,) = struct.unpack_from("<I", data, off)
        start = off + 4
        if start + length > footer_start:
            raise FormatError("blob extends past footer")
        blobs.append(data[start : start + length])
    return blobs


# ---------------------------------------------------------------------------
# Storage accounting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StorageReport:
    payload_bits: int
    baseline_bits: int
    norm_overhead_fraction: float
    padding_overhead_fraction: float
    compression_ratio: float


def measure_padding_overhead(doc_token_counts, c: int, block_size: int) -> float:
    """(padded coordinates - real coordinates) / real coordinates."""
    counts = np.asarray(doc_token_counts, dtype=np.int64)
    if counts.size == 0:
        raise DataError("empty corpus")
    real = counts * c
    padded = -(-real // block_size) * block_size
    return float((padded.sum() - real.sum()) / real.sum())


def storage_report(config: CodecConfig, doc_token_counts) -> StorageReport:
    """Exact bit accounting over a corpus of document lengths."""
    counts = np.asarray(doc_token_counts, dtype=np.int64)
    if counts.size == 0:
        raise DataError("empty corpus")
    baseline = int(counts.sum()) * config.baseline_dim * config.baseline_bits
    if config.bits == FLOAT_PASSTHROUGH_BITS:
        payload = int(counts.sum()) * config.encoded_dim * 32
        return StorageReport(
            payload_bits=payload, baseline_bits=baseline,
            norm_overhead_fraction=0.0, padding_overhead_fraction=0.0,
            compression_ratio=baseline / payload,
        )
    num_blocks = (-(-counts * config.encoded_dim // config.block_size)).sum()
    payload = int(num_blocks) * (config.block_size * config.bits + config.norm_bits)
    return StorageReport(
        payload_bits=payload, baseline_bits=baseline,
        norm_overhead_fraction=config.norm_bits / (config.block_size * config.bits),
        padding_overhead_fraction=measure_padding_overhead(
            counts, config.encoded_dim, config.block_size
        ),
        compression_ratio=baseline / payload,
    )


def cr_closed_form(
    h: int, c: int, bits: int, padding_overhead: float,
    block_size: int = 128, norm_bits: int = 32, baseline_bits: int = 32,
) -> float:
    """Compression ratio from overhead fractions instead of raw documents.

    baseline h*32 bits per token over c*B*(1 + padding)*(1 + norm overhead);
    equals the storage_report ratio when padding_overhead is measured on the
    same corpus.
    """
    if bits == FLOAT_PASSTHROUGH_BITS:
        return h * baseline_bits / (c * 32)
    norm_frac = norm_bits / (block_size * bits)
    return (h * baseline_bits) / (c * bits * (1.0 + padding_overhead) * (1.0 + norm_frac))
