"""Exact lattice computations for invariant lattices of M23 subgroups acting on
the Niemeier lattice with roots A1^24, and their gluing into Neron-Severi
lattices of supersingular K3 surfaces."""

__version__ = "0.1.0"
