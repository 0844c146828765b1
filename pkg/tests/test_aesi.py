"""Autoencoder forward/backward, variant contracts, training loop, checkpoints."""

import numpy as np
import pytest
from scipy.special import ndtr

from sdrcodec import aesi
from sdrcodec.errors import (
    ConfigError, DataError, DimensionError, FormatError, TrainingDiverged,
)

RNG = np.random.default_rng


def random_params(variant, h, i, c, seed=0):
    return aesi.init_params(variant, h, c, i=i, seed=seed, dtype=np.float64)


# ---------------------------------------------------------------------------
# gelu
# ---------------------------------------------------------------------------

def test_gelu_zero():
    assert aesi.gelu(np.array([0.0]))[0] == 0.0


def test_gelu_asymptote():
    assert abs(aesi.gelu(np.array([10.0]))[0] - 10.0) < 1e-6


def test_gelu_at_one():
    # x * Phi(x) at x = 1
    got = aesi.gelu(np.array([1.0]))[0]
    assert got == pytest.approx(0.8413447460685429, rel=1e-12)
    assert f"{got:.5f}" == "0.84134"


def test_gelu_matches_cdf_form():
    x = RNG(0).normal(size=257)
    np.testing.assert_allclose(aesi.gelu(x), x * ndtr(x), rtol=1e-14)


def test_gelu_grad_matches_finite_difference():
    x = RNG(1).normal(size=101)
    step = 1e-6
    fd = (aesi.gelu(x + step) - aesi.gelu(x - step)) / (2 * step)
    np.testing.assert_allclose(aesi.gelu_grad(x), fd, rtol=1e-7, atol=1e-9)


# ---------------------------------------------------------------------------
# Variant table
# ---------------------------------------------------------------------------

def test_variant_ids_and_flags():
    expect = {
        "aesi-2l": (1, True, True, True),
        "ae-2l": (2, False, False, True),
        "ae-1l": (3, False, False, False),
        "aesi-1l": (4, True, True, False),
        "aesi-dec-2l": (5, False, True, True),
    }
    assert set(aesi.VARIANTS) == set(expect)
    for name, (vid, enc_side, dec_side, two_layer) in expect.items():
        spec = aesi.VARIANTS[name]
        assert spec.variant_id == vid
        assert spec.encoder_side is enc_side
        assert spec.decoder_side is dec_side
        assert spec.two_layer is two_layer


def test_weight_shapes_follow_concatenation_scheme():
    h, i, c = 6, 5, 3
    p = random_params("aesi-2l", h, i, c)
    assert p.weights["enc1"].shape == (i, 2 * h)
    assert p.weights["enc2"].shape == (c, i)
    assert p.weights["dec1"].shape == (i, c + h)
    assert p.weights["dec2"].shape == (h, i)
    p = random_params("ae-2l", h, i, c)
    assert p.weights["enc1"].shape == (i, h)
    assert p.weights["dec1"].shape == (i, c)
    p = random_params("ae-1l", h, i, c)
    assert p.weights["enc"].shape == (c, h)
    assert p.weights["dec"].shape == (h, c)
    p = random_params("aesi-1l", h, i, c)
    assert p.weights["enc"].shape == (c, 2 * h)
    assert p.weights["dec"].shape == (h, c + h)
    p = random_params("aesi-dec-2l", h, i, c)
    assert p.weights["enc1"].shape == (i, h)
    assert p.weights["dec1"].shape == (i, c + h)


def test_params_reject_bad_shapes_and_nonfinite():
    p = random_params("ae-1l", 4, 4, 2)
    bad = dict(p.weights)
    bad["enc"] = np.zeros((3, 4))
    with pytest.raises(DimensionError):
        aesi.AutoencoderParams(variant="ae-1l", h=4, i=4, c=2, weights=bad)
    bad = {k: w.copy() for k, w in p.weights.items()}
    bad["dec"][0, 0] = np.nan
    with pytest.raises(DataError):
        aesi.AutoencoderParams(variant="ae-1l", h=4, i=4, c=2, weights=bad)


# ---------------------------------------------------------------------------
# Forward: encode / decode
# ---------------------------------------------------------------------------

def test_zero_weights_encode_and_decode_to_zero():
    for variant in aesi.VARIANTS:
        p = random_params(variant, 5, 4, 3)
        zero = aesi.AutoencoderParams(
            variant=variant, h=5, i=4, c=3,
            weights={k: np.zeros_like(w) for k, w in p.weights.items()},
        )
        v = RNG(2).normal(size=(7, 5))
        u = RNG(3).normal(size=(7, 5))
        assert np.all(aesi.encode_batch(v, u, zero) == 0.0)
        assert np.all(aesi.decode_batch(np.ones((7, 3)), u, zero) == 0.0)


def test_one_layer_encode_is_plain_matrix_multiply():
    # single dense map, no activation
    h = c = 4
    p = random_params("ae-1l", h, h, c, seed=9)
    v = RNG(4).normal(size=(6, h))
    u = RNG(5).normal(size=(6, h))
    got = aesi.encode_batch(v, u, p)
    np.testing.assert_array_equal(got, v @ p.weights["enc"].T)


def test_encode_matches_hand_rolled_oracle():
    h, i, c = 8, 8, 4
    p = random_params("aesi-2l", h, i, c, seed=11)
    v = RNG(6).normal(size=(5, h))
    u = RNG(7).normal(size=(5, h))
    x = np.concatenate([v, u], axis=1)
    a1 = x @ p.weights["enc1"].T
    expect = (a1 * ndtr(a1)) @ p.weights["enc2"].T
    np.testing.assert_allclose(aesi.encode_batch(v, u, p), expect, rtol=1e-6)


def test_decode_matches_hand_rolled_oracle():
    h, i, c = 8, 8, 4
    p = random_params("aesi-2l", h, i, c, seed=12)
    e = RNG(8).normal(size=(5, c))
    u = RNG(9).normal(size=(5, h))
    y = np.concatenate([e, u], axis=1)
    a2 = y @ p.weights["dec1"].T
    expect = (a2 * ndtr(a2)) @ p.weights["dec2"].T
    np.testing.assert_allclose(aesi.decode_batch(e, u, p), expect, rtol=1e-6)


def test_output_widths():
    for variant in aesi.VARIANTS:
        p = random_params(variant, 7, 5, 3)
        v = RNG(10).normal(size=(4, 7))
        u = RNG(11).normal(size=(4, 7))
        e = aesi.encode_batch(v, u, p)
        assert e.shape == (4, 3)
        assert aesi.decode_batch(e, u, p).shape == (4, 7)


def test_single_vector_roundtrip_shapes():
    p = random_params("aesi-2l", 6, 6, 2)
    pair = aesi.TokenPair(v=RNG(12).normal(size=6), u=RNG(13).normal(size=6))
    e = aesi.encode(pair, p)
    assert e.shape == (2,)
    assert aesi.decode(e, pair.u, p).shape == (6,)


def test_ae_variants_ignore_side_info_everywhere():
    for variant in ("ae-2l", "ae-1l"):
        p = random_params(variant, 6, 5, 3)
        v = RNG(14).normal(size=(4, 6))
        u1 = RNG(15).normal(size=(4, 6))
        u2 = RNG(16).normal(size=(4, 6))
        np.testing.assert_array_equal(
            aesi.encode_batch(v, u1, p), aesi.encode_batch(v, u2, p))
        e = aesi.encode_batch(v, u1, p)
        np.testing.assert_array_equal(
            aesi.decode_batch(e, u1, p), aesi.decode_batch(e, u2, p))


def test_decoder_side_variant_ignores_u_in_encoder_only():
    p = random_params("aesi-dec-2l", 6, 5, 3)
    v = RNG(17).normal(size=(4, 6))
    u1 = RNG(18).normal(size=(4, 6))
    u2 = RNG(19).normal(size=(4, 6))
    e1 = aesi.encode_batch(v, u1, p)
    np.testing.assert_array_equal(e1, aesi.encode_batch(v, u2, p))
    d1 = aesi.decode_batch(e1, u1, p)
    d2 = aesi.decode_batch(e1, u2, p)
    assert np.max(np.abs(d1 - d2)) > 1e-6


def test_full_side_info_variant_uses_u_in_both():
    p = random_params("aesi-2l", 6, 5, 3)
    v = RNG(20).normal(size=(4, 6))
    u1 = RNG(21).normal(size=(4, 6))
    u2 = RNG(22).normal(size=(4, 6))
    assert np.max(np.abs(aesi.encode_batch(v, u1, p) - aesi.encode_batch(v, u2, p))) > 1e-6


def test_dimension_mismatch_rejected():
    p = random_params("aesi-2l", 6, 5, 3)
    with pytest.raises(DimensionError):
        aesi.encode_batch(np.zeros((4, 7)), np.zeros((4, 6)), p)
    with pytest.raises(DimensionError):
        aesi.decode_batch(np.zeros((4, 4)), np.zeros((4, 6)), p)


# ---------------------------------------------------------------------------
# Loss
# ---------------------------------------------------------------------------

def test_zero_params_loss_is_mean_square_of_v():
    h = 5
    p = random_params("aesi-2l", h, 4, 2)
    zero = aesi.AutoencoderParams(
        variant="aesi-2l", h=h, i=4, c=2,
        weights={k: np.zeros_like(w) for k, w in p.weights.items()},
    )
    v = RNG(23).normal(size=(9, h))
    u = RNG(24).normal(size=(9, h))
    # v' = 0, so the loss is the mean over tokens of ||v||^2 / h
    expect = float(np.mean(np.sum(v**2, axis=1) / h))
    assert aesi.reconstruction_loss(v, u, zero) == pytest.approx(expect, rel=1e-12)


def test_perfect_params_on_linearly_encodable_data():
    # decoder reads v straight out of the side-info columns, so v = u is lossless
    h, c = 5, 2
    u = RNG(25).normal(size=(8, h))
    dec = np.concatenate([np.zeros((h, c)), np.eye(h)], axis=1)
    p = aesi.AutoencoderParams(
        variant="aesi-1l", h=h, i=h, c=c,
        weights={"enc": RNG(26).normal(size=(c, 2 * h)), "dec": dec},
    )
    assert aesi.reconstruction_loss(u, u, p) == 0.0


def test_loss_matches_hand_rolled_oracle():
    h, i, c = 8, 8, 4
    p = random_params("aesi-2l", h, i, c, seed=30)
    v = RNG(27).normal(size=(6, h))
    u = RNG(28).normal(size=(6, h))
    x = np.concatenate([v, u], axis=1)
    a1 = x @ p.weights["enc1"].T
    e = (a1 * ndtr(a1)) @ p.weights["enc2"].T
    y = np.concatenate([e, u], axis=1)
    a2 = y @ p.weights["dec1"].T
    vh = (a2 * ndtr(a2)) @ p.weights["dec2"].T
    expect = float(np.mean((v - vh) ** 2))
    assert aesi.reconstruction_loss(v, u, p) == pytest.approx(expect, rel=1e-10)


# ---------------------------------------------------------------------------
# Gradients
# ---------------------------------------------------------------------------

def finite_difference(v, u, params, name, idx, step=1e-5):
    w = params.weights[name]
    up = {k: x.copy() for k, x in params.weights.items()}
    dn = {k: x.copy() for k, x in params.weights.items()}
    up[name][idx] = w[idx] + step
    dn[name][idx] = w[idx] - step
    mk = lambda ws: aesi.AutoencoderParams(
        variant=params.variant, h=params.h, i=params.i, c=params.c, weights=ws)
    return (
        aesi.reconstruction_loss(v, u, mk(up)) - aesi.reconstruction_loss(v, u, mk(dn))
    ) / (2 * step)


@pytest.mark.parametrize("variant", sorted(aesi.VARIANTS))
def test_gradients_match_central_differences(variant):
    h, i, c = 6, 5, 3
    p = random_params(variant, h, i, c, seed=40)
    v = RNG(41).normal(size=(4, h))
    u = RNG(42).normal(size=(4, h))
    loss, grads = aesi.gradients(v, u, p)
    assert loss == pytest.approx(aesi.reconstruction_loss(v, u, p), rel=1e-12)
    assert set(grads) == set(p.weights)
    rng = RNG(43)
    for name, g in grads.items():
        assert g.shape == p.weights[name].shape
        for _ in range(6):
            idx = (rng.integers(g.shape[0]), rng.integers(g.shape[1]))
            fd = finite_difference(v, u, p, name, idx)
            assert g[idx] == pytest.approx(fd, rel=1e-4, abs=1e-10)


def test_gradient_is_zero_at_constructed_global_minimum():
    # data generated by the decoder itself; encoder solved exactly by lstsq
    h, i, c, n = 6, 8, 3, 4
    p = random_params("aesi-2l", h, i, c, seed=50)
    rng = RNG(51)
    u = rng.normal(size=(n, h))
    e_target = rng.normal(size=(n, c))
    v = aesi.decode_batch(e_target, u, p)
    x = np.concatenate([v, u], axis=1)
    a1 = x @ p.weights["enc1"].T
    z1 = a1 * ndtr(a1)
    enc2, *_ = np.linalg.lstsq(z1, e_target, rcond=None)
    weights = {k: w.copy() for k, w in p.weights.items()}
    weights["enc2"] = enc2.T
    solved = aesi.AutoencoderParams(variant="aesi-2l", h=h, i=i, c=c, weights=weights)
    loss, grads = aesi.gradients(v, u, solved)
    assert loss < 1e-20
    total = np.sqrt(sum(float(np.sum(g**2)) for g in grads.values()))
    assert total < 1e-8


def test_gradient_structure_has_no_side_info_entries():
    p = random_params("ae-2l", 5, 4, 2)
    _, grads = aesi.gradients(RNG(52).normal(size=(3, 5)), RNG(53).normal(size=(3, 5)), p)
    assert set(grads) == {"enc1", "enc2", "dec1", "dec2"}


# ---------------------------------------------------------------------------
# Training
# ---------------------------------------------------------------------------

def linear_rank_data(n, h, rank, seed):
    rng = RNG(seed)
    a = rng.normal(size=(h, rank)) @ rng.normal(size=(rank, h))
    u = rng.normal(size=(n, h))
    return (u @ a.T), u


@pytest.mark.parametrize("variant,lr", [("ae-1l", 1e-2), ("ae-2l", 3e-3)])
def test_training_converges_on_low_rank_linear_data(variant, lr):
    h, c, n = 16, 8, 1024
    v, u = linear_rank_data(n, h, rank=4, seed=60)
    config = aesi.TrainConfig(
        variant=variant, h=h, c=c, i=64, lr=lr,
        epochs=500, batch_size=256, seed=0, dtype=np.float64)
    params, history = aesi.train(v, u, config)
    assert len(history) == 500 * (n // 256)
    initial, final = history[0][1], history[-1][1]
    assert final < 1e-3 * initial
    assert history[-1][0] == len(history)


def test_training_is_deterministic_in_f64():
    v, u = linear_rank_data(300, 8, rank=3, seed=61)
    config = aesi.TrainConfig(
        variant="aesi-2l", h=8, c=4, epochs=3, batch_size=64, seed=7, dtype=np.float64)
    p1, h1 = aesi.train(v, u, config)
    p2, h2 = aesi.train(v, u, config)
    assert h1 == h2
    for k in p1.weights:
        np.testing.assert_array_equal(p1.weights[k], p2.weights[k])


def test_training_seed_changes_the_outcome():
    v, u = linear_rank_data(300, 8, rank=3, seed=62)
    base = dict(variant="aesi-2l", h=8, c=4, epochs=1, batch_size=64, dtype=np.float64)
    p1, _ = aesi.train(v, u, aesi.TrainConfig(seed=0, **base))
    p2, _ = aesi.train(v, u, aesi.TrainConfig(seed=1, **base))
    assert np.max(np.abs(p1.weights["enc1"] - p2.weights["enc1"])) > 1e-8


def test_divergence_detector():
    v, u = linear_rank_data(256, 8, rank=3, seed=63)
    config = aesi.TrainConfig(
        variant="aesi-2l", h=8, c=4, lr=1e60, epochs=50, batch_size=64, dtype=np.float64)
    with pytest.raises(TrainingDiverged):
        aesi.train(v, u, config)


def synth_pairs(**overrides):
    from sdrcodec import corpus

    cfg = corpus.SynthConfig(
        vocab=300, h=32, docs=200, mean_len=20.0, seed=1, **overrides)
    return corpus.gen_synth(cfg).token_pairs()


def test_loss_history_smoothed_over_ten_step_windows_is_non_increasing():
    v, u = synth_pairs()
    for variant in ("aesi-2l", "ae-2l", "aesi-1l"):
        config = aesi.TrainConfig(variant=variant, h=32, c=8, epochs=10, seed=0)
        _, history = aesi.train(v, u, config)
        losses = np.array([loss for _, loss in history])
        n = len(losses) // 10
        windows = losses[: n * 10].reshape(n, 10).mean(axis=1)
        running_min = np.minimum.accumulate(windows)
        # worst observed excursion is ~1.07x; 1.15x tolerates stochastic
        # batch noise while still failing on any genuine upward trend
        assert np.all(windows[1:] <= 1.15 * running_min[:-1]), variant
        assert windows[-1] < 0.9 * windows[0], variant


def test_side_info_beats_plain_autoencoder_on_synthetic_corpus():
    v, u = synth_pairs()
    mse = {}
    for variant in ("aesi-2l", "ae-2l"):
        config = aesi.TrainConfig(variant=variant, h=32, c=4, epochs=6, seed=0)
        params, _ = aesi.train(v, u, config)
        mse[variant] = aesi.reconstruction_loss(v, u, params)
    assert mse["aesi-2l"] < 0.9 * mse["ae-2l"]


def test_side_info_advantage_shrinks_as_alpha_grows():
    # at alpha=1 a token's own static vector drops out of the mix, so the
    # decoder's side input carries little; the advantage must fade
    gaps = []
    for alpha in (0.0, 0.5, 1.0):
        v, u = synth_pairs(alpha=alpha)
        mse = {}
        for variant in ("aesi-2l", "ae-2l"):
            config = aesi.TrainConfig(variant=variant, h=32, c=2, epochs=6, seed=0)
            params, _ = aesi.train(v, u, config)
            mse[variant] = aesi.reconstruction_loss(v, u, params)
        gaps.append(mse["ae-2l"] - mse["aesi-2l"])
    assert gaps[0] > gaps[1] > gaps[2]


def test_empty_corpus_rejected():
    config = aesi.TrainConfig(variant="ae-1l", h=4, c=2)
    with pytest.raises(DataError):
        aesi.train(np.zeros((0, 4)), np.zeros((0, 4)), config)


def test_unknown_variant_rejected():
    with pytest.raises(ConfigError):
        aesi.TrainConfig(variant="aesi-3l", h=4, c=2)
    with pytest.raises(ConfigError):
        aesi.init_params("nope", 4, 2)


# ---------------------------------------------------------------------------
# Checkpoints and loss history
# ---------------------------------------------------------------------------

def test_checkpoint_roundtrip(tmp_path):
    for variant in aesi.VARIANTS:
        p = aesi.init_params(variant, 6, 3, i=5, seed=77, dtype=np.float32)
        path = str(tmp_path / f"{variant}.aesi")
        aesi.save_checkpoint(path, p)
        q = aesi.load_checkpoint(path)
        assert (q.variant, q.h, q.i, q.c) == (variant, 6, 5, 3)
        assert set(q.weights) == set(p.weights)
        for k in p.weights:
            np.testing.assert_array_equal(q.weights[k], p.weights[k])


def test_checkpoint_rejects_corruption(tmp_path):
    p = aesi.init_params("ae-1l", 4, 2, seed=1)
    path = str(tmp_path / "m.aesi")
    aesi.save_checkpoint(path, p)
    raw = bytearray(open(path, "rb").read())
    raw[:4] = b"XXXX"
    bad = tmp_path / "bad.aesi"
    bad.write_bytes(bytes(raw))
    with pytest.raises(FormatError):
        aesi.load_checkpoint(str(bad))
    trunc = tmp_path / "trunc.aesi"
    trunc.write_bytes(open(path, "rb").read()[:-5])
    with pytest.raises(FormatError):
        aesi.load_checkpoint(str(trunc))


def test_loss_history_csv_roundtrip(tmp_path):
    history = [(1, 0.5), (2, 0.25), (3, 0.124999999999)]
    path = str(tmp_path / "loss.csv")
    aesi.save_loss_history(path, history)
    got = aesi.load_loss_history(path)
    assert [s for s, _ in got] == [1, 2, 3]
    np.testing.assert_allclose([l for _, l in got], [l for _, l in history], rtol=1e-12)
    first = open(path).readline().strip()
    assert first == "step,loss"
