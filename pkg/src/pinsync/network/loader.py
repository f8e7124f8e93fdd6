import io
from pathlib import Path

import numpy as np
import pandas as pd
import structlog

from pinsync.errors import NetworkError
from pinsync.network.graph import Network

logger = structlog.get_logger(__name__)


def _read_edges(file_path: Path) -> pd.DataFrame:
    try:
        text = file_path.read_text()
    except OSError as e:
        msg = f"Cannot read edge list {file_path}: {e}"
        raise NetworkError(msg) from e

    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    body = "\n".join(line for line in lines if line)
    if not body:
        return pd.DataFrame(columns=["i", "j", "weight"])
    try:
        return pd.read_csv(
            io.StringIO(body),
            sep=r"[,\s]+",
            engine="python",
            header=None,
            names=["i", "j", "weight"],
        )
    except pd.errors.ParserError as e:
        msg = f"Edge list {file_path}: expected 'i j [weight]' rows ({e})"
        raise NetworkError(msg) from e


def load_edge_list(file_path: Path, n: int | None = None) -> Network:
    """
    Read an undirected network from an edge-list text file.

    Each line holds `i j [weight]`, separated by commas and/or whitespace;
    the weight defaults to 1 and `#` starts a comment. Node indices are
    0-based. When `n` is omitted it is taken as the largest index plus one.
    """
    edges = _read_edges(file_path)
    if edges.empty:
        if n is None:
            msg = f"Edge list {file_path} is empty and no node count was given"
            raise NetworkError(msg)
        return Network.from_adjacency(np.zeros((n, n)))

    edges["weight"] = edges["weight"].fillna(1.0)
    try:
        src = edges["i"].to_numpy(dtype=float)
        dst = edges["j"].to_numpy(dtype=float)
        weights = edges["weight"].to_numpy(dtype=float)
    except ValueError as e:
        msg = f"Edge list {file_path}: non-numeric entry ({e})"
        raise NetworkError(msg) from e
    if np.isnan(src).any() or np.isnan(dst).any():
        msg = f"Edge list {file_path}: every row needs two node indices"
        raise NetworkError(msg)
    if np.any(src != np.round(src)) or np.any(dst != np.round(dst)):
        msg = f"Edge list {file_path}: node indices must be integers"
        raise NetworkError(msg)
    src = src.astype(int)
    dst = dst.astype(int)

    size = int(max(src.max(), dst.max())) + 1 if n is None else n
    if src.min() < 0 or dst.min() < 0 or max(src.max(), dst.max()) >= size:
        msg = f"Edge list {file_path}: node index outside [0, {size})"
        raise NetworkError(msg)
    if np.any(src == dst):
        node = int(src[src == dst][0])
        msg = f"Edge list {file_path}: self-loop on node {node}"
        raise NetworkError(msg)

    pairs = np.sort(np.stack([src, dst], axis=1), axis=1)
    _, counts = np.unique(pairs, axis=0, return_counts=True)
    if np.any(counts > 1):
        msg = f"Edge list {file_path}: repeated edge"
        raise NetworkError(msg)

    adjacency = np.zeros((size, size))
    adjacency[src, dst] = weights
    adjacency[dst, src] = weights
    net = Network.from_adjacency(adjacency)
    logger.info(
        "Edge list has been loaded.",
        file_path=str(file_path),
        n=net.n,
        edges=net.edge_count,
    )
    return net
