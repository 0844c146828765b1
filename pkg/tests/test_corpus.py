"""Synthetic corpus generator and the corpus / matrix file formats."""

import numpy as np
import pytest

from sdrcodec import corpus
from sdrcodec.errors import ConfigError, DataError, FormatError


def small_config(**kw):
    base = dict(vocab=120, h=16, docs=40, mean_len=12.0, zipf_a=1.5,
                alpha=0.5, sigma=0.1, window=2, seed=3)
    base.update(kw)
    return corpus.SynthConfig(**base)


# ---------------------------------------------------------------------------
# Config validation
# ---------------------------------------------------------------------------

def test_config_rejects_bad_alpha_sigma():
    with pytest.raises(ConfigError):
        small_config(alpha=1.5)
    with pytest.raises(ConfigError):
        small_config(alpha=-0.1)
    with pytest.raises(ConfigError):
        small_config(sigma=-1.0)


def test_config_rejects_degenerate_sizes():
    with pytest.raises(ConfigError):
        small_config(vocab=0)
    with pytest.raises(ConfigError):
        small_config(zipf_a=1.0)
    with pytest.raises(ConfigError):
        small_config(window=0)


# ---------------------------------------------------------------------------
# Generator semantics
# ---------------------------------------------------------------------------

def test_no_context_no_noise_reproduces_static_rows_exactly():
    data = corpus.gen_synth(small_config(alpha=0.0, sigma=0.0))
    for ids, ctx in zip(data.doc_ids, data.doc_ctx):
        np.testing.assert_array_equal(ctx, data.static_table[ids])


def test_same_seed_gives_identical_file_bytes(tmp_path):
    p1, p2 = str(tmp_path / "a.sdrc"), str(tmp_path / "b.sdrc")
    corpus.write_corpus(p1, corpus.gen_synth(small_config()))
    corpus.write_corpus(p2, corpus.gen_synth(small_config()))
    assert open(p1, "rb").read() == open(p2, "rb").read()


def test_different_seed_changes_the_corpus():
    a = corpus.gen_synth(small_config(seed=1))
    b = corpus.gen_synth(small_config(seed=2))
    assert not np.array_equal(a.static_table, b.static_table)


def test_static_table_scale():
    data = corpus.gen_synth(small_config(vocab=4000, h=64))
    # i.i.d. entries with standard deviation 1/sqrt(h)
    std = data.static_table.std()
    assert std == pytest.approx(1.0 / 8.0, rel=0.02)


def test_expected_squared_norm_is_one():
    # pooled over seeds: the Zipf head makes single static-row norm draws heavy
    means = []
    for seed in (3, 4, 5):
        data = corpus.gen_synth(small_config(
            vocab=1000, h=64, docs=400, mean_len=30, seed=seed))
        sq = np.concatenate([np.sum(c.astype(np.float64) ** 2, axis=1) for c in data.doc_ctx])
        means.append(sq.mean())
    assert np.mean(means) == pytest.approx(1.0, rel=0.04)


@pytest.mark.parametrize("alpha,sigma", [(0.0, 0.0), (0.5, 0.1), (1.0, 0.0), (0.3, 0.7)])
def test_norm_calibration_across_mixes(alpha, sigma):
    data = corpus.gen_synth(small_config(
        vocab=1000, h=64, docs=300, mean_len=30, alpha=alpha, sigma=sigma))
    sq = np.concatenate([np.sum(c.astype(np.float64) ** 2, axis=1) for c in data.doc_ctx])
    assert sq.mean() == pytest.approx(1.0, rel=0.08)


def test_document_lengths_are_positive_and_near_mean():
    data = corpus.gen_synth(small_config(docs=600, mean_len=9.0))
    counts = data.token_counts()
    assert counts.min() >= 1
    assert counts.mean() == pytest.approx(9.0, rel=0.1)


def test_zipf_head_dominates():
    data = corpus.gen_synth(small_config(vocab=500, docs=300, mean_len=40))
    ids = np.concatenate(data.doc_ids)
    freq = np.bincount(ids, minlength=500)
    assert freq[0] == freq.max()
    assert freq[0] > 4 * max(freq[100], 1)


def test_neighbor_means_match_brute_force():
    rng = np.random.default_rng(5)
    u_doc = rng.normal(size=(9, 4))
    for window in (1, 2, 3, 8):
        means, counts = corpus._neighbor_means(u_doc, window)
        for t in range(9):
            lo, hi = max(0, t - window), min(9, t + window + 1)
            rows = [r for r in range(lo, hi) if r != t]
            assert counts[t] == len(rows)
            np.testing.assert_allclose(means[t], u_doc[rows].mean(axis=0), rtol=1e-12)


def test_isolated_token_with_full_context_weight_stays_finite():
    data = corpus.gen_synth(small_config(docs=200, mean_len=1.0, alpha=1.0, sigma=0.0))
    for ctx in data.doc_ctx:
        assert np.all(np.isfinite(ctx))


def test_token_pairs_align_rows():
    data = corpus.gen_synth(small_config())
    v, u = data.token_pairs()
    assert v.shape == u.shape == (int(data.token_counts().sum()), data.h)
    np.testing.assert_array_equal(u[: len(data.doc_ids[0])],
                                  data.static_table[data.doc_ids[0]])


# ---------------------------------------------------------------------------
# Corpus file format
# ---------------------------------------------------------------------------

def test_corpus_file_roundtrip(tmp_path):
    data = corpus.gen_synth(small_config())
    path = str(tmp_path / "c.sdrc")
    corpus.write_corpus(path, data)
    back = corpus.read_corpus(path)
    np.testing.assert_array_equal(back.static_table, data.static_table)
    assert back.num_docs == data.num_docs
    for a, b in zip(back.doc_ids, data.doc_ids):
        np.testing.assert_array_equal(a, b)
    for a, b in zip(back.doc_ctx, data.doc_ctx):
        np.testing.assert_array_equal(a, b)


def test_corpus_file_rejects_bad_magic(tmp_path):
    data = corpus.gen_synth(small_config(docs=3))
    path = tmp_path / "c.sdrc"
    corpus.write_corpus(str(path), data)
    raw = bytearray(path.read_bytes())
    raw[:4] = b"NOPE"
    bad = tmp_path / "bad.sdrc"
    bad.write_bytes(bytes(raw))
    with pytest.raises(FormatError):
        corpus.read_corpus(str(bad))


def test_corpus_file_rejects_truncation_and_trailing(tmp_path):
    data = corpus.gen_synth(small_config(docs=3))
    path = tmp_path / "c.sdrc"
    corpus.write_corpus(str(path), data)
    raw = path.read_bytes()
    trunc = tmp_path / "t.sdrc"
    trunc.write_bytes(raw[:-3])
    with pytest.raises(FormatError):
        corpus.read_corpus(str(trunc))
    extra = tmp_path / "e.sdrc"
    extra.write_bytes(raw + b"\x00")
    with pytest.raises(FormatError):
        corpus.read_corpus(str(extra))


def test_corpus_file_rejects_out_of_vocab_ids(tmp_path):
    data = corpus.gen_synth(small_config(docs=2))
    bad_ids = [ids.copy() for ids in data.doc_ids]
    bad_ids[0][0] = 10_000
    path = str(tmp_path / "c.sdrc")
    corpus.write_corpus(path, corpus.Corpus(
        static_table=data.static_table, doc_ids=bad_ids, doc_ctx=data.doc_ctx))
    with pytest.raises(DataError):
        corpus.read_corpus(path)


# ---------------------------------------------------------------------------
# Matrix (encoded) file format
# ---------------------------------------------------------------------------

def test_matrix_file_roundtrip(tmp_path):
    rng = np.random.default_rng(8)
    mats = [rng.normal(size=(m, 6)).astype(np.float32) for m in (1, 4, 9)]
    path = str(tmp_path / "e.bin")
    corpus.write_matrices(path, mats)
    back = corpus.read_matrices(path)
    assert len(back) == 3
    for a, b in zip(back, mats):
        np.testing.assert_array_equal(a, b)


def test_matrix_file_rejects_mixed_widths(tmp_path):
    with pytest.raises(DataError):
        corpus.write_matrices(str(tmp_path / "x.bin"),
                              [np.zeros((2, 3), np.float32), np.zeros((2, 4), np.float32)])


def test_matrix_file_rejects_corruption(tmp_path):
    path = tmp_path / "e.bin"
    corpus.write_matrices(str(path), [np.ones((2, 3), np.float32)])
    raw = path.read_bytes()
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"ZZZZ" + raw[4:])
    with pytest.raises(FormatError):
        corpus.read_matrices(str(bad))
    trunc = tmp_path / "t.bin"
    trunc.write_bytes(raw[:-2])
    with pytest.raises(FormatError):
        corpus.read_matrices(str(trunc))
