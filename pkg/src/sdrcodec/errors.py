"""Exception types shared across the codec."""


class SdrError(Exception):
    """Base class for all sdrcodec errors."""


class DimensionError(SdrError, ValueError):
    """A vector or matrix has an unsupported shape (e.g. non-power-of-2 length)."""


class DataError(SdrError, ValueError):
    """Input data is unusable: NaN/Inf values, empty corpus, absent token."""


class ConfigError(SdrError, ValueError):
    """A configuration value is out of its allowed range or inconsistent."""


class FormatError(SdrError, ValueError):
    """A serialized blob or file is malformed (bad magic, truncation, version)."""


class TrainingDiverged(SdrError, RuntimeError):
    """Autoencoder training produced a non-finite loss."""
