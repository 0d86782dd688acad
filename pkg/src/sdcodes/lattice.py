"""Construction A lattices over GF(7): norm-2 shell, kissing number, D20+ test.

A lattice vector is written by its integer coordinates ``x`` with respect to
a frame of pairwise orthogonal vectors of norm p, so its norm is
``sum(x_i^2) / p`` and ``x mod p`` is a codeword. Norm 2 means
``sum(x_i^2) == 14``.
"""

import itertools
from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from . import _kernels, codes
from .enumeration import Profile, collect_representatives, representative_histogram

P = 7
NORM2 = 2 * P
D20_KISSING = 760
# smallest square of an integer congruent to v mod 7
MIN_LIFT_SQUARE = np.array([min(v, P - v) ** 2 for v in range(P)], dtype=np.int64)


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeReport:
    min_norm: int
    kissing: int
    is_d20_plus: bool

    def to_dict(self):
        return asdict(self)


def profile_lift_count(n1, n2, n3, target=NORM2):
    """Lifts of a codeword with the given class counts to vectors of squared
    length ``target``.

    Classes are {1, 6}, {2, 5}, {3, 4} with smallest squares 1, 4, 9; a class-3
    coordinate may instead lift to square 16 (+7). Class-1 and class-2
    alternatives (36, 25) and every lift of a zero coordinate other than 0
    (49) are out of reach for ``target < 21`` once some coordinate is nonzero.
    """
    if target >= 21:
        raise ValueError("closed form only covers squared lengths below 21")
    base = n1 + 4 * n2 + 9 * n3
    if base == 0:
        return 0
    rest = target - base
    if rest < 0 or rest % 7:
        return 0
    s = rest // 7
    return comb(n3, s) if s <= n3 else 0


def class_counts(c):
    c = np.asarray(c, dtype=np.int64) % P
    cls = np.minimum(c, P - c)
    return int(np.sum(cls == 1)), int(np.sum(cls == 2)), int(np.sum(cls == 3))


def norm2_lift_count(c):
    """Integer vectors ``x`` with ``x mod 7 == c`` and ``sum(x^2) == 14``."""
    return profile_lift_count(*class_counts(c))


def lifts(c, target=NORM2):
    """All integer vectors ``x`` with ``x mod 7 == c`` and ``sum(x^2) == target``."""
    c = np.asarray(c, dtype=np.int64) % P
    bound = int(np.floor(np.sqrt(target)))
    options = []
    for v in c:
        opts = [x for x in range(-bound, bound + 1) if x % P == v]
        if not opts:
            return []
        options.append(opts)
    out = []
    for choice in itertools.product(*options):
        if sum(x * x for x in choice) == target:
            out.append(choice)
    return out


def _lift_table(profile, target):
    n = profile.n
    table = np.zeros(profile.shape, dtype=np.int64)
    for n1 in range(n + 1):
        for n2 in range(n + 1 - n1):
            for n3 in range(n + 1 - n1 - n2):
                table[n1, n2, n3] = profile_lift_count(n1, n2, n3, target)
    return table


def _check_code(C, n=20):
    if C.p != P:
        raise LatticeError(f"Construction A here is over GF(7), got p={C.p}")
    if n is not None and C.n != n:
        raise LatticeError(f"expected length {n}, got {C.n}")
    if not codes.is_self_dual(C):
        raise LatticeError("code is not self-dual")


def shell_counts(C, targets=(P, NORM2), threads=None):
    """Number of lattice vectors with ``sum(x^2) == t`` for each target,
    plus the code's weight enumerator, from one enumeration pass."""
    profile = Profile(P, C.n)
    if profile.ncls != 3:
        raise LatticeError("length too large for the symmetrized enumerator")
    rep = representative_histogram(C.generator, P, profile, threads)
    full = profile.expand_scalars(rep)
    counts = {t: int(np.sum(full * _lift_table(profile, t))) for t in targets}
    return counts, codes.enumerator_from_profile(full, profile)


def kissing_number(C, threads=None):
    """Lattice report for a self-dual [20, 10, >=8] code over GF(7)."""
    _check_code(C)
    counts, W = shell_counts(C, threads=threads)
    d = next(i for i in range(1, C.n + 1) if W[i])
    if d < 8:
        raise LatticeError(f"minimum weight {d} < 8; the minimum norm need not be 2")
    if counts[P]:
        raise LatticeError("found vectors of norm 1")
    kiss = counts[NORM2]
    return LatticeReport(min_norm=2, kissing=kiss, is_d20_plus=kiss == D20_KISSING)


def minimal_vectors(C, threads=None):
    """Every norm-2 vector of A_7(C) as an integer coordinate tuple, sorted."""
    _check_code(C)
    profile = Profile(P, C.n)
    rep = representative_histogram(C.generator, P, profile, threads)
    full = profile.expand_scalars(rep)
    W = codes.enumerator_from_profile(full, profile)
    if next(i for i in range(1, C.n + 1) if W[i]) < 8:
        raise LatticeError("minimum weight < 8")
    table = _lift_table(profile, NORM2)
    # a representative is wanted when some scalar multiple has lifts
    wanted = np.zeros(profile.shape, dtype=bool)
    for s in range(1, P):
        perm = profile.scalar_permutation(s)
        wanted |= np.transpose(table, perm) > 0
    wanted = wanted.ravel()
    expected = int(rep[wanted].sum())
    reps = collect_representatives(C.generator, P, profile, wanted, expected, threads)
    out = []
    for cw in reps:
        for s in range(1, P):
            out.extend(lifts(cw * s % P))
    out.sort()
    return out


def lemma_property(x):
    """At most one coordinate of a norm-2 vector has absolute value >= 2."""
    return sum(1 for v in x if abs(v) >= 2) <= 1


def check_minimal_vector(x, C):
    x = np.asarray(x, dtype=np.int64)
    return int(x @ x) == NORM2 and C.contains(x % P) and lemma_property(x)


# --- fast path: complementary information sets -------------------------------


def norm2_count_split(C, collect=False, capacity=4096):
    """Norm-2 count (and optionally the vectors) via two half-size scans.

    A codeword has a norm-14 lift iff the sum of its smallest lift squares
    is 14, and that lift is unique, so the count equals the number of such
    codewords. Requires complementary information sets.
    """
    if C.p != P:
        raise LatticeError("GF(7) only")
    split = codes.complementary_split(C)
    if split is None:
        raise LatticeError("code has no complementary information sets")
    cols, X, Y = split
    out = np.zeros((capacity if collect else 0, C.n), dtype=np.int64)
    hist = _kernels.split_cost_histogram(X, Y, P, MIN_LIFT_SQUARE, NORM2, out, NORM2)
    total = int(hist[NORM2])
    if not collect:
        return total, None
    if total > capacity:
        return norm2_count_split(C, collect=True, capacity=total)
    vecs = np.zeros((total, C.n), dtype=np.int64)
    vecs[:, cols] = out[:total]
    vecs = np.where(vecs > P // 2, vecs - P, vecs)
    return total, sorted(tuple(int(v) for v in row) for row in vecs)


def kissing_number_fast(C, min_weight=None):
    """Same report as :func:`kissing_number`, without the full enumeration.

    ``min_weight`` must be supplied (or is computed) since the norm-1 and
    minimum-weight checks otherwise come from the full pass.
    """
    _check_code(C)
    if min_weight is None:
        min_weight = codes.minimum_weight(C)
    if min_weight < 8:
        raise LatticeError(f"minimum weight {min_weight} < 8")
    kiss, _ = norm2_count_split(C)
    return LatticeReport(min_norm=2, kissing=kiss, is_d20_plus=kiss == D20_KISSING)


# --- unimodularity witness -------------------------------------------------------


def _triangular_basis(rows):
    """Integer row reduction to an upper triangular basis (Python ints)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    basis = []
    for c in range(ncols):
        active = [r for r in rows if r[c] != 0]
        rows = [r for r in rows if r[c] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[c] != 0:
                    nxt.append(r)
                else:
                    rows.append(r)
            active = nxt
        if active:
            basis.append(active[0])
    return basis


def lattice_basis_determinant(C):
    """|det| of a basis of ``{x in Z^n : x mod p in C}``."""
    if not codes.is_self_dual(C):
        raise LatticeError("code is not self-dual")
    p, n = C.p, C.n
    gens = [[int(v) for v in row] for row in C.generator]
    gens += [[p if i == j else 0 for j in range(n)] for i in range(n)]
    B = _triangular_basis(gens)
    if len(B) != n:
        raise LatticeError("lattice is not full rank")
    det = 1
    for i, row in enumerate(B):
        det *= row[i]
    return abs(det)
