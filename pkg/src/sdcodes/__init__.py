"""Self-dual [20, 10, 9] codes over GF(7), skew-Hadamard matrices of order 20
and their Construction A lattices."""

__version__ = "0.1.0"
