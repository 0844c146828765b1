"""Two-stage codec for contextual token embeddings.

Stage one shrinks each h-wide embedding to c dimensions with an autoencoder
that may consume the token's static embedding as side information; stage two
quantizes the encoded rows block-wise with a seeded randomized Hadamard
rotation and a Gaussian Lloyd-Max codebook. Everything needed to compare
against the simpler scalar schemes, account for storage, and score retrieval
quality lives in the submodules re-exported here.
"""

from .aesi import (
    AutoencoderParams,
    TokenPair,
    TrainConfig,
    VARIANTS,
    decode_batch,
    encode_batch,
    init_params,
    load_checkpoint,
    load_loss_history,
    reconstruct_batch,
    reconstruction_loss,
    save_checkpoint,
    save_loss_history,
    train,
)
from .analysis import (
    DfTable,
    QuantBenchResult,
    build_df_table,
    df,
    empirical_entropy,
    mrr_at_k,
    mse_by_df,
    ndcg_at_k,
    quant_bench,
    rd_optimal_rate,
    token_mse,
)
from .blockwise import (
    CodecConfig,
    CompressedDocument,
    StorageReport,
    compress_document,
    cr_closed_form,
    decompress_document,
    deserialize_document,
    read_blob_container,
    serialize_document,
    storage_report,
    write_blob_container,
)
from .corpus import (
    Corpus,
    SynthConfig,
    gen_synth,
    read_corpus,
    read_matrices,
    write_corpus,
    write_matrices,
)
from .errors import (
    ConfigError,
    DataError,
    DimensionError,
    FormatError,
    SdrError,
    TrainingDiverged,
)
from .hadamard import (
    derive_block_seed,
    fwht_inplace,
    inverse_randomized_transform,
    mix64,
    rademacher_signs,
    randomized_transform,
)
from .quantize import (
    SCHEMES,
    CentroidTable,
    QuantizedBlock,
    centroid_table,
    drive_dequantize_batch,
    drive_quantize_batch,
    gaussian_lloyd_max,
    scheme_indices_batch,
    scheme_roundtrip_batch,
)

__version__ = "0.1.0"

__all__ = [
    "AutoencoderParams", "TokenPair", "TrainConfig", "VARIANTS",
    "decode_batch", "encode_batch", "init_params", "load_checkpoint",
    "load_loss_history", "reconstruct_batch", "reconstruction_loss",
    "save_checkpoint", "save_loss_history", "train",
    "DfTable", "QuantBenchResult", "build_df_table", "df",
    "empirical_entropy", "mrr_at_k", "mse_by_df", "ndcg_at_k",
    "quant_bench", "rd_optimal_rate", "token_mse",
    "CodecConfig", "CompressedDocument", "StorageReport",
    "compress_document", "cr_closed_form", "decompress_document",
    "deserialize_document", "read_blob_container", "serialize_document",
    "storage_report", "write_blob_container",
    "Corpus", "SynthConfig", "gen_synth", "read_corpus", "read_matrices",
    "write_corpus", "write_matrices",
    "ConfigError", "DataError", "DimensionError", "FormatError",
    "SdrError", "TrainingDiverged",
    "derive_block_seed", "fwht_inplace", "inverse_randomized_transform",
    "mix64", "rademacher_signs", "randomized_transform",
    "SCHEMES", "CentroidTable", "QuantizedBlock", "centroid_table",
    "drive_dequantize_batch", "drive_quantize_batch", "gaussian_lloyd_max",
    "scheme_indices_batch", "scheme_roundtrip_batch",
    "__version__",
]
