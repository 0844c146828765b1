"""Measurement tools: document frequency, entropy, rate-distortion,
quantizer Monte-Carlo benchmarking, and ranking metrics.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DataError
from .quantize import scheme_indices_batch, scheme_roundtrip_batch


# ---------------------------------------------------------------------------
# Document frequency
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DfTable:
    """Document-occurrence counts per token id over a corpus of |D| docs."""

    counts: dict[int, int]
    total_docs: int

    def __post_init__(self):
        if self.total_docs < 1:
            raise DataError("total_docs must be >= 1")
        for token, count in self.counts.items():
            if not 1 <= count <= self.total_docs:
                raise DataError(f"count {count} for token {token} outside 1..|D|")


def build_df_table(doc_ids) -> DfTable:
    """Count, for every token id, the number of documents containing it."""
    counts: dict[int, int] = {}
    n = 0
    for ids in doc_ids:
        n += 1
        for t in np.unique(np.asarray(ids)):
            t = int(t)
            counts[t] = counts.get(t, 0) + 1
    if n == 0:
        raise DataError("empty corpus")
    return DfTable(counts=counts, total_docs=n)


def df(token: int, table: DfTable) -> float:
    """log10 of the fraction of documents containing the token; always <= 0."""
    if token not in table.counts:
        raise DataError(f"token {token} not present in the table")
    return math.log10(table.counts[token] / table.total_docs)


def mse_by_df(
    token_mse: dict[int, float], table: DfTable, bin_width: float = 1.0
) -> dict[float, tuple[float, int]]:
    """Mean MSE per rounded-DF bin: key = round(DF/width)*width, ascending."""
    if bin_width <= 0:
        raise ConfigError("bin_width must be positive")
    sums: dict[float, float] = {}
    counts: dict[float, int] = {}
    for token, mse in token_mse.items():
        key = round(df(token, table) / bin_width) * bin_width
        key += 0.0  # normalize -0.0 to 0.0
        sums[key] = sums.get(key, 0.0) + mse
        counts[key] = counts.get(key, 0) + 1
    return {k: (sums[k] / counts[k], counts[k]) for k in sorted(sums)}


def token_mse(doc_ids, originals, reconstructions) -> dict[int, float]:
    """Per-token-id mean of the per-occurrence reconstruction MSE."""
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for ids, v, vh in zip(doc_ids, originals, reconstructions):
        per_occurrence = np.mean((np.asarray(v) - np.asarray(vh)) ** 2, axis=1)
        for t, e in zip(ids, per_occurrence):
            t = int(t)
            sums[t] = sums.get(t, 0.0) + float(e)
            counts[t] = counts.get(t, 0) + 1
    return {t: sums[t] / counts[t] for t in sums}


# ---------------------------------------------------------------------------
# Entropy and rate-distortion
# ---------------------------------------------------------------------------

def empirical_entropy(indices, bits: int) -> float:
    """Plug-in entropy (bits/symbol) of quantization indices, alphabet 2**bits."""
    flat = np.asarray(indices).reshape(-1)
    if flat.size == 0:
        raise DataError("empty index sequence")
    if flat.min() < 0 or flat.max() >= 2**bits:
        raise DataError("index outside the 2**bits alphabet")
    freq = np.bincount(flat.astype(np.int64), minlength=2**bits)
    p = freq[freq > 0] / flat.size
    return float(-np.sum(p * np.log2(p)))


def rd_optimal_rate(mse: float) -> float:
    """Optimal bits per sample for a unit Gaussian source at the given MSE."""
    if not 0.0 < mse <= 1.0:
        raise ConfigError(f"mse must be in (0, 1], got {mse}")
    return 0.5 * math.log2(1.0 / mse)


# ---------------------------------------------------------------------------
# Quantizer Monte-Carlo bench
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuantBenchResult:
    scheme: str
    bits: int
    dist: str
    d: int
    trials: int          # blocks per seed-run
    runs: int
    mse: float           # mean over runs of mean ||x - xh||^2 / d
    mse_std: float       # std over runs
    bias: float          # l2 norm of the pooled mean error vector
    bias_se: float       # sqrt(sum of per-coordinate error variances / n)

    def __post_init__(self):
        if self.mse < 0 or self.trials < 1:
            raise DataError("invalid bench result")


def _sample(dist: str, rng: np.random.Generator, trials: int, d: int, bits: int) -> np.ndarray:
    if dist == "gauss":
        return rng.standard_normal((trials, d))
    if dist == "student-t":
        return rng.standard_t(3, size=(trials, d))
    if dist == "uniform":
        return rng.uniform(0.0, 1.0, size=(trials, d))
    if dist == "grid":
        levels = (1 << bits) - 1
        x = rng.integers(0, levels + 1, size=(trials, d)).astype(np.float64)
        x[:, 0] = 0.0
        x[:, 1] = levels  # pin the row range so the grid survives normalization
        return x / levels
    raise ConfigError(f"unknown distribution {dist!r}")


def quant_bench(
    scheme: str,
    bits: int,
    dist: str = "gauss",
    d: int = 128,
    trials: int = 10_000,
    seeds=range(10),
) -> QuantBenchResult:
    """MSE/bias Monte-Carlo for one scheme at one bit width.

    Each seed respawns fresh inputs and fresh per-block quantizer seeds; MSE
    mean/std are across seed-runs, bias is pooled over every trial.
    """
    seeds = list(seeds)
    if trials < 10:
        raise ConfigError("trials must be >= 10")
    if not seeds:
        raise ConfigError("need at least one seed")
    mses = []
    err_sum = np.zeros(d)
    err_sq = np.zeros(d)
    total = 0
    for seed in seeds:
        rng = np.random.default_rng(seed)
        x = _sample(dist, rng, trials, d, bits)
        block_seeds = rng.integers(0, 2**64, size=trials, dtype=np.uint64)
        xh = scheme_roundtrip_batch(scheme, x, bits, block_seeds)
        err = xh - x
        mses.append(float(np.mean(err**2)))
        err_sum += err.sum(axis=0)
        err_sq += np.square(err).sum(axis=0)
        total += trials
    mean_vec = err_sum / total
    var_vec = err_sq / total - mean_vec**2
    return QuantBenchResult(
        scheme=scheme, bits=bits, dist=dist, d=d, trials=trials, runs=len(seeds),
        mse=float(np.mean(mses)), mse_std=float(np.std(mses)),
        bias=float(np.linalg.norm(mean_vec)),
        bias_se=float(np.sqrt(np.maximum(var_vec, 0.0).sum() / total)),
    )


def drive_indices_sample(bits: int, d: int = 128, trials: int = 1000, seed: int = 0) -> np.ndarray:
    """Quantization indices of Gaussian blocks, for entropy measurements."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((trials, d))
    block_seeds = rng.integers(0, 2**64, size=trials, dtype=np.uint64)
    return scheme_indices_batch("drive", x, bits, block_seeds)


# ---------------------------------------------------------------------------
# Ranking metrics
# ---------------------------------------------------------------------------

def mrr_at_k(relevance_lists, k: int = 10) -> float:
    """Mean over queries of 1/rank of the first relevant item in the top k."""
    lists = list(relevance_lists)
    if not lists:
        raise DataError("empty query set")
    total = 0.0
    for rels in lists:
        for rank, rel in enumerate(list(rels)[:k], start=1):
            if rel:
                total += 1.0 / rank
                break
    return total / len(lists)


def _dcg(grades, k: int) -> float:
    return sum(
        (2.0**g - 1.0) / math.log2(rank + 1)
        for rank, g in enumerate(list(grades)[:k], start=1)
    )


def ndcg_at_k(graded_lists, k: int = 10) -> float:
    """DCG with exponential gain (2^rel - 1), normalized by the ideal DCG.

    Queries whose ideal DCG is zero (no relevant items) are excluded; if every
    query is excluded that is an error.
    """
    lists = list(graded_lists)
    if not lists:
        raise DataError("empty query set")
    scores = []
    for grades in lists:
        grades = list(grades)
        if any(g < 0 for g in grades):
            raise DataError("graded relevance must be >= 0")
        ideal = _dcg(sorted(grades, reverse=True), k)
        if ideal > 0:
            scores.append(_dcg(grades, k) / ideal)
    if not scores:
        raise DataError("all queries have zero ideal DCG")
    return sum(scores) / len(scores)


# ---------------------------------------------------------------------------
# Report emitters
# ---------------------------------------------------------------------------

def quant_bench_csv(results) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(("scheme", "bits", "dist", "d", "trials", "runs", "mse", "mse_std", "bias", "bias_se"))
    for r in results:
        writer.writerow((r.scheme, r.bits, r.dist, r.d, r.trials, r.runs,
                         f"{r.mse:.8g}", f"{r.mse_std:.8g}", f"{r.bias:.8g}", f"{r.bias_se:.8g}"))
    return buf.getvalue()


def quant_bench_table(results) -> str:
    header = f"{'scheme':<10} {'bits':>4} {'dist':>9} {'mse':>12} {'mse_std':>12} {'bias':>12} {'bias_se':>12}"
    lines = [header, "-" * len(header)]
    for r in results:
        lines.append(
            f"{r.scheme:<10} {r.bits:>4} {r.dist:>9} {r.mse:>12.6g} {r.mse_std:>12.6g} "
            f"{r.bias:>12.6g} {r.bias_se:>12.6g}"
        )
    return "\n".join(lines) + "\n"


def mse_by_df_csv(bins: dict[float, tuple[float, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(("df_bin", "mean_mse", "tokens"))
    for key, (mean, count) in bins.items():
        writer.writerow((f"{key:g}", f"{mean:.8g}", count))
    return buf.getvalue()


def mse_by_df_table(bins: dict[float, tuple[float, int]]) -> str:
    header = f"{'df_bin':>8} {'mean_mse':>12} {'tokens':>8}"
    lines = [header, "-" * len(header)]
    for key, (mean, count) in bins.items():
        lines.append(f"{key:>8g} {mean:>12.6g} {count:>8}")
    return "\n".join(lines) + "\n"
