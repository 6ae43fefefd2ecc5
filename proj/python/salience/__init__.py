"""Trainable extractive summarizer."""

from ._salience import (
    Config,
    ConfigError,
    DataError,
    NumericError,
    evaluate,
    filter1,
    g2,
    idf,
    ingest,
    label,
    metrics,
    mutual_information,
    set_warnings_enabled,
    stats,
    summarize,
    sweep,
    synth,
    top_count,
    topic,
    train,
)


def make_config(**options):
    """Config with the given fields set, e.g. make_config(corpus="docs", learner="tree")."""
    config = Config()
    for name, value in options.items():
        if not hasattr(config, name):
            raise ConfigError(f"unknown option {name!r}")
        setattr(config, name, value)
    return config


__all__ = [name for name in dir() if not name.startswith("_")]
