"""Command-line drivers over the library modules.

Every command is deterministic given its flags and --seed; rerunning with the
same inputs yields byte-identical outputs. Exit codes: 0 ok, 1 usage error,
2 data/format error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import aesi, analysis, blockwise, corpus, quantize
from .errors import ConfigError, SdrError

_DETERMINISM_NOTE = "Deterministic: identical flags and --seed give identical output bytes."


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract here reserves 2 for data errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _add_synth_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with generator fields; flags override it")
    p.add_argument("--vocab", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--docs", type=int)
    p.add_argument("--mean-len", type=float, dest="mean_len")
    p.add_argument("--zipf-a", type=float, dest="zipf_a")
    p.add_argument("--alpha", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--window", type=int)
    p.add_argument("--seed", type=int)


def _synth_config(args) -> corpus.SynthConfig:
    fields = {}
    if args.config:
        with open(args.config) as f:
            loaded = json.load(f)
        if not isinstance(loaded, dict):
            raise ConfigError("generator config must be a JSON object")
        unknown = set(loaded) - set(corpus.SynthConfig.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown generator config keys: {sorted(unknown)}")
        fields.update(loaded)
    for name in corpus.SynthConfig.__dataclass_fields__:
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    return corpus.SynthConfig(**fields)


def _cmd_centroids(args) -> int:
    text = quantize.export_centroid_table(args.bits)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_gen_synth(args) -> int:
    data = corpus.gen_synth(_synth_config(args))
    corpus.write_corpus(args.out, data)
    tokens = int(data.token_counts().sum())
    print(f"wrote {args.out}: {data.num_docs} docs, {tokens} tokens, h={data.h}")
    return 0


def _cmd_train(args) -> int:
    data = corpus.read_corpus(args.corpus)
    v, u = data.token_pairs()
    config = aesi.TrainConfig(
        variant=args.variant, h=data.h, c=args.c, i=args.i,
        lr=args.lr, epochs=args.epochs, batch_size=args.batch, seed=args.seed,
    )
    params, history = aesi.train(v, u, config)
    aesi.save_checkpoint(args.out, params)
    if args.loss_csv:
        aesi.save_loss_history(args.loss_csv, history)
    print(f"wrote {args.out}: variant={args.variant} c={args.c} "
          f"final_loss={history[-1][1]:.6g}")
    return 0


def _cmd_encode(args) -> int:
    data = corpus.read_corpus(args.corpus)
    params = aesi.load_checkpoint(args.checkpoint)
    encoded = [
        aesi.encode_batch(ctx, data.static_table[ids], params)
        for ids, ctx in zip(data.doc_ids, data.doc_ctx)
    ]
    corpus.write_matrices(args.out, encoded)
    print(f"wrote {args.out}: {len(encoded)} matrices, c={encoded[0].shape[1]}")
    return 0


def _cmd_compress(args) -> int:
    matrices = corpus.read_matrices(args.encoded)
    c = matrices[0].shape[1]
    if args.c is not None and args.c != c:
        raise ConfigError(f"--c {args.c} does not match encoded width {c}")
    config = blockwise.CodecConfig(encoded_dim=c, bits=args.bits, block_size=args.block)
    docs = [
        blockwise.compress_document(mat, config, seed=args.seed + i)
        for i, mat in enumerate(matrices)
    ]
    blockwise.write_blob_container(args.out, [blockwise.serialize_document(d) for d in docs])
    print(f"wrote {args.out}: {len(docs)} blobs, c={c}, bits={args.bits}")
    return 0


def _read_blob_documents(path: str) -> list[blockwise.CompressedDocument]:
    return [blockwise.deserialize_document(b) for b in blockwise.read_blob_container(path)]


def _cmd_decompress(args) -> int:
    docs = _read_blob_documents(args.blobs)
    corpus.write_matrices(args.out, [blockwise.decompress_document(d) for d in docs])
    print(f"wrote {args.out}: {len(docs)} matrices")
    return 0


def _homogeneous_config(docs, baseline_dim: int) -> blockwise.CodecConfig:
    first = docs[0]
    for d in docs[1:]:
        if (d.encoded_dim, d.bits, d.block_size) != (first.encoded_dim, first.bits, first.block_size):
            raise ConfigError("blobs mix different codec settings")
    return blockwise.CodecConfig(
        encoded_dim=first.encoded_dim, bits=first.bits,
        block_size=first.block_size, baseline_dim=baseline_dim,
    )


def _cmd_report(args) -> int:
    if args.blobs is None:
        # pure formula mode
        if args.c is None or args.bits is None:
            raise ConfigError("formula mode needs --c and --bits (or pass --blobs)")
        cr = blockwise.cr_closed_form(
            args.baseline_h, args.c, args.bits,
            padding_overhead=args.padding_overhead, block_size=args.block,
        )
        print(f"compression_ratio {cr:.6g}")
        return 0
    docs = _read_blob_documents(args.blobs)
    config = _homogeneous_config(docs, args.baseline_h)
    report = blockwise.storage_report(config, [d.num_tokens for d in docs])
    print(f"documents            {len(docs)}")
    print(f"payload_bits         {report.payload_bits}")
    print(f"baseline_bits        {report.baseline_bits}")
    print(f"padding_overhead     {report.padding_overhead_fraction:.6g}")
    print(f"norm_overhead        {report.norm_overhead_fraction:.6g}")
    print(f"compression_ratio    {report.compression_ratio:.6g}")
    return 0


def _cmd_eval_recon(args) -> int:
    data = corpus.read_corpus(args.corpus)
    params = aesi.load_checkpoint(args.checkpoint)
    config = None
    if args.bits < 32:
        config = blockwise.CodecConfig(
            encoded_dim=params.c, bits=args.bits, block_size=args.block)
    recon = []
    for i, (ids, ctx) in enumerate(zip(data.doc_ids, data.doc_ctx)):
        u = data.static_table[ids]
        e = aesi.encode_batch(ctx, u, params)
        if config is not None:
            doc = blockwise.compress_document(e, config, seed=args.seed + i)
            e = blockwise.decompress_document(doc)
        recon.append(aesi.decode_batch(e, u, params))
    per_token = analysis.token_mse(data.doc_ids, data.doc_ctx, recon)
    total = sum(((v - vh) ** 2).sum() for v, vh in zip(data.doc_ctx, recon))
    count = sum(v.size for v in data.doc_ctx)
    table = analysis.build_df_table(data.doc_ids)
    bins = analysis.mse_by_df(per_token, table, bin_width=args.bin_width)
    print(f"corpus_mse {total / count:.6g}")
    sys.stdout.write(analysis.mse_by_df_table(bins))
    if args.csv:
        with open(args.csv, "w") as f:
            f.write(analysis.mse_by_df_csv(bins))
    return 0


def _parse_bits(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(b) for b in text.split(",")]


def _cmd_quant_bench(args) -> int:
    names = list(quantize.SCHEMES) if args.schemes == "all" else args.schemes.split(",")
    for name in names:
        if name not in quantize.SCHEMES:
            raise ConfigError(f"unknown scheme {name!r}; known: {', '.join(quantize.SCHEMES)}")
    results = [
        analysis.quant_bench(name, bits, dist=args.dist, d=args.d,
                             trials=args.trials, seeds=range(args.seed, args.seed + args.runs))
        for bits in _parse_bits(args.bits)
        for name in names
    ]
    sys.stdout.write(analysis.quant_bench_table(results))
    if args.csv:
        with open(args.csv, "w") as f:
            f.write(analysis.quant_bench_csv(results))
    return 0


def _cmd_rd(args) -> int:
    print(f"optimal_rate {analysis.rd_optimal_rate(args.mse):.6g}")
    return 0


def _cmd_entropy(args) -> int:
    docs = _read_blob_documents(args.blobs)
    quantized = [d for d in docs if d.bits < blockwise.FLOAT_PASSTHROUGH_BITS]
    if not quantized:
        raise ConfigError("entropy needs quantized blobs (bits < 32)")
    bits = quantized[0].bits
    if any(d.bits != bits for d in quantized):
        raise ConfigError("blobs mix different bit widths")
    indices = np.concatenate([
        blockwise.unpack_indices(d.packed_indices, d.num_blocks * d.block_size, bits)
        for d in quantized
    ])
    h = analysis.empirical_entropy(indices, bits)
    print(f"bits_per_index {bits}")
    print(f"empirical_entropy {h:.6g}")
    return 0


def _cmd_metrics(args) -> int:
    with open(args.runs) as f:
        lists = json.load(f)
    if not isinstance(lists, list) or not all(isinstance(q, list) for q in lists):
        raise ConfigError("runs file must be a JSON list of per-query relevance lists")
    if args.metric == "mrr":
        value = analysis.mrr_at_k(lists, k=args.k)
    else:
        value = analysis.ndcg_at_k(lists, k=args.k)
    print(f"{args.metric}@{args.k} {value:.6g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sdrcodec", description=__doc__, epilog=_DETERMINISM_NOTE)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("centroids", help="print or export a Lloyd-Max centroid table",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_centroids)

    p = sub.add_parser("gen-synth", help="generate a synthetic corpus file",
                       epilog=_DETERMINISM_NOTE)
    _add_synth_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen_synth)

    p = sub.add_parser("train", help="train an autoencoder on a corpus",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("--corpus", required=True)
    p.add_argument("--variant", required=True, choices=sorted(aesi.VARIANTS))
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--i", type=int, default=None, help="intermediate width (default: h)")
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--batch", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--loss-csv", dest="loss_csv")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("encode", help="encode corpus embeddings with a checkpoint",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("--corpus", required=True)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("compress", help="quantize encoded matrices into a blob container",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("--encoded", required=True)
    p.add_argument("--c", type=int, default=None, help="expected width; checked if given")
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--block", type=int, default=128)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("decompress", help="reconstruct encoded matrices from blobs",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("--blobs", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_decompress)

    p = sub.add_parser("report", help="storage accounting from blobs, or the closed-form ratio",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("--blobs")
    p.add_argument("--baseline-h", type=int, default=384, dest="baseline_h")
    p.add_argument("--c", type=int)
    p.add_argument("--bits", type=int)
    p.add_argument("--block", type=int, default=128)
    p.add_argument("--padding-overhead", type=float, default=0.0, dest="padding_overhead")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("eval-recon", help="corpus reconstruction MSE and its DF profile",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("--corpus", required=True)
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--bits", type=int, default=32)
    p.add_argument("--block", type=int, default=128)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bin-width", type=float, default=1.0, dest="bin_width")
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_eval_recon)

    p = sub.add_parser("quant-bench", help="Monte-Carlo MSE/bias table over schemes",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("--schemes", default="all")
    p.add_argument("--bits", default="1..6", help='range "1..6" or list "1,4,8"')
    p.add_argument("--dist", default="gauss", choices=("gauss", "student-t", "uniform", "grid"))
    p.add_argument("--d", type=int, default=128)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_quant_bench)

    p = sub.add_parser("rd", help="Gaussian rate-distortion bound for an MSE",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("--mse", type=float, required=True)
    p.set_defaults(func=_cmd_rd)

    p = sub.add_parser("entropy", help="empirical index entropy of a blob container",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("--blobs", required=True)
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("metrics", help="ranking metrics over a JSON runs file",
                       epilog=_DETERMINISM_NOTE)
    p.add_argument("metric", choices=("mrr", "ndcg"))
    p.add_argument("--runs", required=True)
    p.add_argument("--k", type=int, default=10)
    p.set_defaults(func=_cmd_metrics)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"sdrcodec: usage error: {exc}", file=sys.stderr)
        return 1
    except (SdrError, OSError, json.JSONDecodeError) as exc:
        print(f"sdrcodec: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
