"""Exact arithmetic and linear algebra over a prime field GF(p).

Matrices are plain ``numpy.uint8`` arrays with every entry in ``[0, p)``;
the modulus travels alongside as an ``int``.
"""

import numpy as np

MAX_PRIME = 256


def is_prime(q):
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def check_prime(p):
    if not (is_prime(p) and p < MAX_PRIME):
        raise ValueError(f"modulus must be a prime below {MAX_PRIME}, got {p}")


def field_inverse(a, p):
    """Multiplicative inverse of ``a`` in GF(p)."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse in GF({p})")
    return pow(a, -1, p)


def as_field_matrix(M, p):
    """Coerce an integer array-like to a reduced uint8 matrix."""
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return np.mod(A, p).astype(np.uint8)


def matmul(A, B, p):
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64) % p).astype(np.uint8)


def rref(M, p):
    """Reduced row echelon form of ``M`` over GF(p).

    Returns ``(R, rank, pivots)``. ``R`` has the same shape as ``M`` with the
    zero rows at the bottom. Pivot search takes the first nonzero entry in
    each column so the output is deterministic.
    """
    A = as_field_matrix(M, p).astype(np.int64)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * field_inverse(int(A[r, c]), p) % p
        col = A[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if len(others):
            A[others] = (A[others] - np.outer(col[others], A[r])) % p
        pivots.append(c)
        r += 1
    return A.astype(np.uint8), r, pivots


def rank(M, p):
    return rref(M, p)[1]


def row_basis(M, p):
    """Nonzero rows of the RREF of ``M``."""
    R, r, _ = rref(M, p)
    return R[:r].copy()


def kernel_basis(M, p):
    """Basis (as rows) of the right kernel ``{x : M x^T = 0}``."""
    A = as_field_matrix(M, p)
    cols = A.shape[1]
    R, r, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for j, pc in enumerate(pivots):
            K[i, pc] = -int(R[j, f]) % p
    return K.astype(np.uint8)


def solve_in_rowspace(R, pivots, v, p):
    """Reduce ``v`` against an RREF basis; returns the remainder.

    The remainder is zero iff ``v`` lies in the row space. It is also a
    canonical coset representative of ``v`` modulo that space.
    """
    x = np.asarray(v, dtype=np.int64) % p
    for j, c in enumerate(pivots):
        if x[c]:
            x = (x - x[c] * R[j].astype(np.int64)) % p
    return x.astype(np.uint8)
