"""Author name disambiguation on bibliographic records."""

from ._core import (
    Corpus,
    Error,
    FormatError,
    InvalidArgument,
    IoError,
    Model,
    ParseError,
    Registry,
    atomic_variate,
    block_stats,
    gen_synth,
    micro_macro,
    name_variates,
    normalize_name,
    parse_author_id,
    run_cli,
)

__all__ = [
    "Corpus",
    "Error",
    "FormatError",
    "InvalidArgument",
    "IoError",
    "Model",
    "ParseError",
    "Registry",
    "atomic_variate",
    "block_stats",
    "gen_synth",
    "micro_macro",
    "name_variates",
    "normalize_name",
    "parse_author_id",
    "run_cli",
]
