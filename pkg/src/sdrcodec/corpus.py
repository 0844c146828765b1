"""Synthetic corpus with informative side information, and its file format.

Each document is a sequence of token ids drawn from a Zipf distribution over
a V-token vocabulary. Every token id owns a static vector u (a shared V x h
table); the contextual vector of a token mixes its own u with the mean of
its neighbors' u inside a +-window span, plus isotropic noise:

    v_t = ( sqrt(1 - a^2) * u_t + a * mean(neighbors' u) + sigma * noise ) / s_t

with s_t the per-token analytic scale that keeps E||v||^2 = 1. The term that
depends on u_t makes v genuinely but only partially predictable from the
static table, so architectures that consume side information have a real
advantage that vanishes as a -> 1.

File layout (little-endian): magic "SDRC" | version u16 | h u16 | V u32 |
N u32 | static table V x h f32 | per document: m u32 | ids u32[m] |
contextual matrix m x h f32.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DataError, FormatError

CORPUS_MAGIC = b"SDRC"
CORPUS_VERSION = 1

_HEADER = struct.Struct("<4sHHII")  # magic, version, h, V, N


@dataclass(frozen=True)
class SynthConfig:
    vocab: int = 2000
    h: int = 64
    docs: int = 2000
    mean_len: float = 76.9
    zipf_a: float = 2.0
    alpha: float = 0.5
    sigma: float = 0.1
    window: int = 1
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.sigma < 0.0:
            raise ConfigError(f"sigma must be >= 0, got {self.sigma}")
        if self.vocab < 1 or self.h < 1 or self.docs < 1:
            raise ConfigError("vocab, h and docs must be >= 1")
        if self.zipf_a <= 1.0:
            raise ConfigError("zipf_a must be > 1")
        if self.window < 1:
            raise ConfigError("window must be >= 1")


@dataclass
class Corpus:
    static_table: np.ndarray       # (V, h) f32
    doc_ids: list[np.ndarray]      # each (m,) u32
    doc_ctx: list[np.ndarray]      # each (m, h) f32

    @property
    def vocab(self) -> int:
        return self.static_table.shape[0]

    @property
    def h(self) -> int:
        return self.static_table.shape[1]

    @property
    def num_docs(self) -> int:
        return len(self.doc_ids)

    def token_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """All (v, u) rows pooled across documents, in corpus order."""
        v = np.concatenate(self.doc_ctx, axis=0)
        u = self.static_table[np.concatenate(self.doc_ids)]
        return v, u

    def token_counts(self) -> np.ndarray:
        return np.array([len(ids) for ids in self.doc_ids], dtype=np.int64)


def _neighbor_means(u_doc: np.ndarray, window: int) -> tuple[np.ndarray, np.ndarray]:
    """Mean of the u rows within +-window of each position, excluding itself."""
    n = len(u_doc)
    cum = np.vstack([np.zeros((1, u_doc.shape[1])), np.cumsum(u_doc, axis=0)])
    lo = np.maximum(np.arange(n) - window, 0)
    hi = np.minimum(np.arange(n) + window + 1, n)
    sums = cum[hi] - cum[lo] - u_doc
    counts = (hi - lo - 1).astype(np.float64)
    means = np.zeros_like(u_doc)
    present = counts > 0
    means[present] = sums[present] / counts[present, None]
    return means, counts


def _coincidence_stats(ids: np.ndarray, window: int) -> tuple[np.ndarray, np.ndarray]:
    """Per position: ordered coincident neighbor-id pairs, and own-id neighbor hits.

    Zipf sampling repeats ids constantly, so neighbor vectors are not
    independent draws; these counts feed the exact variance of the window mix.
    """
    m = len(ids)
    offsets = [d for d in range(-window, window + 1) if d != 0]
    pair_hits = np.zeros(m)
    own_hits = np.zeros(m)
    for d1 in offsets:
        t1 = np.arange(max(0, -d1), m - max(0, d1))
        own_hits[t1] += ids[t1 + d1] == ids[t1]
        for d2 in offsets:
            lo, hi = max(0, -d1, -d2), m - max(0, d1, d2)
            if hi <= lo:
                continue
            t2 = np.arange(lo, hi)
            pair_hits[t2] += ids[t2 + d1] == ids[t2 + d2]
    return pair_hits, own_hits


def gen_synth(config: SynthConfig) -> Corpus:
    """Deterministic synthetic corpus; same config -> identical arrays."""
    rng = np.random.default_rng(config.seed)
    scale = 1.0 / np.sqrt(config.h)
    static = (rng.standard_normal((config.vocab, config.h)) * scale).astype(np.float32)

    ranks = np.arange(1, config.vocab + 1, dtype=np.float64)
    zipf_p = ranks**-config.zipf_a
    zipf_p /= zipf_p.sum()

    a = config.alpha
    own_coef = np.sqrt(1.0 - a * a)
    doc_ids, doc_ctx = [], []
    for _ in range(config.docs):
        m = max(1, int(rng.poisson(config.mean_len)))
        ids = rng.choice(config.vocab, size=m, p=zipf_p).astype(np.uint32)
        u_doc = static[ids].astype(np.float64)
        context, counts = _neighbor_means(u_doc, config.window)
        noise = rng.standard_normal((m, config.h)) * scale
        v = own_coef * u_doc + a * context + config.sigma * noise
        # exact E||v||^2 given the ids: group the mix by token id, repeated
        # ids share one u row, so coincident neighbors do not average out
        w = np.maximum(counts, 1)
        pair_hits, own_hits = _coincidence_stats(ids, config.window)
        ctx_w = np.where(counts > 0, a / w, 0.0)
        var = (own_coef**2 + ctx_w**2 * pair_hits
               + 2.0 * own_coef * ctx_w * own_hits + config.sigma**2)
        # a=1, sigma=0, isolated token: v is identically zero, keep it finite
        v /= np.sqrt(np.maximum(var, 1e-12))[:, None]
        doc_ids.append(ids)
        doc_ctx.append(v.astype(np.float32))
    return Corpus(static_table=static, doc_ids=doc_ids, doc_ctx=doc_ctx)


def write_corpus(path: str, corpus: Corpus) -> None:
    v_count, h = corpus.static_table.shape
    with open(path, "wb") as f:
        f.write(_HEADER.pack(CORPUS_MAGIC, CORPUS_VERSION, h, v_count, corpus.num_docs))
        f.write(np.ascontiguousarray(corpus.static_table, dtype="<f4").tobytes())
        for ids, ctx in zip(corpus.doc_ids, corpus.doc_ctx):
            f.write(struct.pack("<I", len(ids)))
            f.write(np.ascontiguousarray(ids, dtype="<u4").tobytes())
            f.write(np.ascontiguousarray(ctx, dtype="<f4").tobytes())


def read_corpus(path: str) -> Corpus:
    with open(path, "rb") as f:
        data = f.read()
    if len(data) < _HEADER.size:
        raise FormatError("corpus file truncated before header end")
    magic, version, h, v_count, n_docs = _HEADER.unpack_from(data)
    if magic != CORPUS_MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {CORPUS_MAGIC!r}")
    if version != CORPUS_VERSION:
        raise FormatError(f"unsupported corpus version {version}")
    off = _HEADER.size
    table_bytes = v_count * h * 4
    if len(data) < off + table_bytes:
        raise FormatError("corpus file truncated inside static table")
    static = np.frombuffer(data, dtype="<f4", count=v_count * h, offset=off).reshape(v_count, h).copy()
    off += table_bytes
    doc_ids, doc_ctx = [], []
    for _ in range(n_docs):
        if len(data) < off + 4:
            raise FormatError("corpus file truncated at document header")
        (m,) = struct.unpack_from("<I", data, off)
        off += 4
        need = m * 4 + m * h * 4
        if len(data) < off + need:
            raise FormatError("corpus file truncated inside document")
        ids = np.frombuffer(data, dtype="<u4", count=m, offset=off).copy()
        off += m * 4
        ctx = np.frombuffer(data, dtype="<f4", count=m * h, offset=off).reshape(m, h).copy()
        off += m * h * 4
        if ids.size and ids.max() >= v_count:
            raise DataError("token id out of vocabulary range")
        doc_ids.append(ids)
        doc_ctx.append(ctx)
    if off != len(data):
        raise FormatError("trailing bytes after last document")
    return Corpus(static_table=static, doc_ids=doc_ids, doc_ctx=doc_ctx)


ENCODED_MAGIC = b"SDRE"
ENCODED_VERSION = 1

_ENC_HEADER = struct.Struct("<4sHHI")  # magic, version, c, N


def write_matrices(path: str, matrices: list[np.ndarray]) -> None:
    """Store a list of m x c f32 matrices sharing one width c."""
    if not matrices:
        raise DataError("nothing to write")
    c = matrices[0].shape[1]
    if any(m.ndim != 2 or m.shape[1] != c for m in matrices):
        raise DataError("all matrices must be 2-d with one shared width")
    with open(path, "wb") as f:
        f.write(_ENC_HEADER.pack(ENCODED_MAGIC, ENCODED_VERSION, c, len(matrices)))
        for mat in matrices:
            f.write(struct.pack("<I", mat.shape[0]))
            f.write(np.ascontiguousarray(mat, dtype="<f4").tobytes())


def read_matrices(path: str) -> list[np.ndarray]:
    with open(path, "rb") as f:
        data = f.read()
    if len(data) < _ENC_HEADER.size:
        raise FormatError("matrix file truncated before header end")
    magic, version, c, n = _ENC_HEADER.unpack_from(data)
    if magic != ENCODED_MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {ENCODED_MAGIC!r}")
    if version != ENCODED_VERSION:
        raise FormatError(f"unsupported matrix file version {version}")
    off = _ENC_HEADER.size
    out = []
    for _ in range(n):
        if len(data) < off + 4:
            raise FormatError("matrix file truncated at row count")
        (m,) = struct.unpack_from("<I", data, off)
        off += 4
        need = m * c * 4
        if len(data) < off + need:
            raise FormatError("matrix file truncated inside matrix")
        out.append(np.frombuffer(data, dtype="<f4", count=m * c, offset=off).reshape(m, c).copy())
        off += need
    if off != len(data):
        raise FormatError("trailing bytes after last matrix")
    return out
