from .graph import Network, laplacian, ring_lattice
from .loader import load_edge_list

__all__ = ["Network", "laplacian", "load_edge_list", "ring_lattice"]
