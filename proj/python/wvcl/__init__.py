"""SEFDM bandwidth-compression classification: synthesis, channel, features and SVM-ECOC."""

from ._core import (
    Config,
    DegenerateInputError,
    FormatError,
    IncompatibleError,
    InvalidInputError,
    IoError,
    ConfigError,
    Model,
    WvclError,
    apply_awgn,
    apply_multipath,
    build_dataset,
    cwt,
    effective_alpha,
    frequency_features,
    generate_symbol,
    ici_components,
    load_config,
    load_model,
    normalize_power,
    random_truncate,
    read_capture,
    run_protocol,
    stat,
    sweep,
    time_features,
    train,
    wavelet_features,
    write_capture,
)

__all__ = [name for name in dir() if not name.startswith("_")]
