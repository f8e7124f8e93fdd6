from .file_utils import (
    FLOAT_FORMAT,
    flatten,
    format_value,
    load_txt,
    nest,
    parse_flat,
    read_csv,
    render_flat,
    save_txt,
    write_csv,
)
from .rng import RNG_ALGORITHM, Stream, make_rng

__all__ = [
    "FLOAT_FORMAT",
    "RNG_ALGORITHM",
    "Stream",
    "flatten",
    "format_value",
    "load_txt",
    "make_rng",
    "nest",
    "parse_flat",
    "read_csv",
    "render_flat",
    "save_txt",
    "write_csv",
]
