"""
Undirected weighted networks and their Laplacians.

Storage is dense: the simulations this package targets have tens to a few
thousand nodes, and the intended range stops around n = 10^4. Node indices are
0-based throughout.
"""

from dataclasses import dataclass, field

import numpy as np
import structlog

from pinsync.errors import NetworkError

logger = structlog.get_logger(__name__)

MIN_RING_NODES = 3
BALANCE_STEPS = 16
LAPLACIAN_TOLERANCE = 1e-12


def _validate_adjacency(adjacency: np.ndarray) -> None:
    if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:  # noqa: PLR2004
        msg = f"Adjacency must be a square matrix, got shape {adjacency.shape}"
        raise NetworkError(msg)
    if not np.all(np.isfinite(adjacency)):
        msg = "Adjacency contains non-finite entries"
        raise NetworkError(msg)
    if np.any(adjacency < 0):
        i, j = np.argwhere(adjacency < 0)[0]
        msg = f"Adjacency must be nonnegative, A[{i},{j}] = {adjacency[i, j]}"
        raise NetworkError(msg)
    if not np.array_equal(adjacency, adjacency.T):
        i, j = np.argwhere(adjacency != adjacency.T)[0]
        msg = f"Adjacency must be symmetric, A[{i},{j}] != A[{j},{i}]"
        raise NetworkError(msg)
    if np.any(np.diag(adjacency) != 0):
        i = int(np.flatnonzero(np.diag(adjacency))[0])
        msg = f"Adjacency must have a zero diagonal, A[{i},{i}] = {adjacency[i, i]}"
        raise NetworkError(msg)


def laplacian(adjacency: np.ndarray) -> np.ndarray:
    """
    Build L with L_ij = A_ij off the diagonal and L_ii = -k_i.

    The diagonal is then adjusted by a few ulps so that each row of L, summed
    in floating point, comes out as exactly zero.
    """
    adjacency = np.asarray(adjacency, dtype=float)
    _validate_adjacency(adjacency)
    lap = adjacency.copy()
    np.fill_diagonal(lap, -adjacency.sum(axis=1))
    _balance_rows(lap)
    return lap


def _balance_rows(lap: np.ndarray) -> None:
    diag = np.diag_indices_from(lap)
    for _ in range(BALANCE_STEPS):
        residual = lap.sum(axis=1)
        if not residual.any():
            return
        current = lap[diag]
        corrected = current - residual
        # a correction below one ulp of L_ii is lost; step by one ulp instead
        lost = (corrected == current) & (residual != 0)
        corrected[lost] = np.nextafter(current[lost], -np.sign(residual[lost]) * np.inf)
        lap[diag] = corrected
    logger.debug(
        "Laplacian rows left with rounding residue.",
        residual=float(np.max(np.abs(lap.sum(axis=1)))),
    )


@dataclass(frozen=True, eq=False)
class Network:
    """
    An immutable undirected network.

    Construct through `from_adjacency`, `ring_lattice` or `load_edge_list`;
    the Laplacian is derived once and cached.
    """

    adjacency: np.ndarray
    laplacian: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        _validate_adjacency(self.adjacency)
        if self.laplacian.shape != self.adjacency.shape:
            msg = (
                f"Laplacian shape {self.laplacian.shape} does not match "
                f"adjacency shape {self.adjacency.shape}"
            )
            raise NetworkError(msg)
        off_diagonal = ~np.eye(self.adjacency.shape[0], dtype=bool)
        if not np.array_equal(self.laplacian[off_diagonal], self.adjacency[off_diagonal]):
            msg = "Laplacian off-diagonal entries must equal the adjacency weights"
            raise NetworkError(msg)
        degrees = self.adjacency.sum(axis=1)
        tolerance = LAPLACIAN_TOLERANCE * max(1.0, float(np.max(degrees, initial=0.0)))
        if np.any(np.abs(np.diag(self.laplacian) + degrees) > tolerance):
            msg = "Laplacian diagonal must be minus the weighted degree"
            raise NetworkError(msg)
        self.adjacency.setflags(write=False)
        self.laplacian.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    @property
    def degrees(self) -> np.ndarray:
        """Weighted degree k_i = sum_j A_ij."""
        return self.adjacency.sum(axis=1)

    @property
    def edge_count(self) -> int:
        """Number of undirected edges with nonzero weight."""
        return int(np.count_nonzero(np.triu(self.adjacency, k=1)))

    @staticmethod
    def from_adjacency(adjacency: np.ndarray) -> "Network":
        """Validate a weighted adjacency matrix and cache its Laplacian."""
        adjacency = np.array(adjacency, dtype=float)
        return Network(adjacency=adjacency, laplacian=laplacian(adjacency))


def ring_lattice(n: int, k: int) -> Network:
    """
    A 1-dimensional k-regular ring: node i links with weight 1 to the k/2
    nearest neighbours on each side, indices taken mod n.
    """
    if n < MIN_RING_NODES:
        msg = f"Ring lattice needs n >= {MIN_RING_NODES}, got n={n}"
        raise NetworkError(msg)
    if k <= 0 or k % 2:
        msg = f"Ring lattice coordination number k must be even and positive, got k={k}"
        raise NetworkError(msg)
    if k >= n:
        msg = f"Ring lattice needs k < n, got k={k}, n={n}"
        raise NetworkError(msg)

    adjacency = np.zeros((n, n))
    nodes = np.arange(n)
    for offset in range(1, k // 2 + 1):
        adjacency[nodes, (nodes + offset) % n] = 1.0
        adjacency[nodes, (nodes - offset) % n] = 1.0

    net = Network.from_adjacency(adjacency)
    logger.debug("Ring lattice has been built.", n=n, k=k, edges=net.edge_count)
    return net
