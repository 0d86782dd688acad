"""Linear codes over GF(p): constructions, duality and weight statistics."""

import json
from fractions import Fraction
from math import comb
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, gf, poly
from .enumeration import check_size, profile_enumerator


class CodeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A k-dimensional subspace of GF(p)^n, stored by its RREF generator."""

    p: int
    generator: np.ndarray
    n: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        G = self.generator
        if G.ndim != 2:
            raise CodeError("generator must be a 2-d matrix")
        object.__setattr__(self, "k", G.shape[0])
        object.__setattr__(self, "n", G.shape[1])

    @classmethod
    def from_generator(cls, M, p, n=None):
        """Row space of ``M`` (any rank) as a code in canonical form."""
        gf.check_prime(p)
        M = np.asarray(M)
        if M.size == 0:
            if n is None:
                n = M.shape[1] if M.ndim == 2 else 0
            return cls(p, np.zeros((0, n), dtype=np.uint8))
        G = gf.row_basis(M, p)
        G.setflags(write=False)
        return cls(p, G)

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.p == other.p
            and self.generator.shape == other.generator.shape
            and np.array_equal(self.generator, other.generator)
        )

    def __hash__(self):
        return hash((self.p, self.generator.shape, self.generator.tobytes()))

    def __repr__(self):
        return f"LinearCode(p={self.p}, n={self.n}, k={self.k})"

    @property
    def pivots(self):
        return [int(np.flatnonzero(row)[0]) for row in self.generator]

    def contains(self, v):
        rem = gf.solve_in_rowspace(self.generator, self.pivots, v, self.p)
        return not rem.any()

    def coset_leader(self, v):
        """Canonical representative of ``v + C``."""
        return gf.solve_in_rowspace(self.generator, self.pivots, v, self.p)

    def encode(self, msg):
        return gf.matmul(np.asarray(msg).reshape(1, -1), self.generator, self.p)[0]


def dual(C):
    K = gf.kernel_basis(C.generator, C.p) if C.k else np.eye(C.n, dtype=np.uint8)
    return LinearCode.from_generator(K, C.p, n=C.n)


def is_self_dual(C):
    if 2 * C.k != C.n:
        return False
    return not gf.matmul(C.generator, C.generator.T, C.p).any()


def is_self_orthogonal(C):
    return not gf.matmul(C.generator, C.generator.T, C.p).any()


def code_from_matrix(F, p):
    """Row space over GF(p) of an integer matrix such as ``H + 2I``."""
    return LinearCode.from_generator(gf.as_field_matrix(F, p), p)


# --- quadratic residue codes -------------------------------------------------

QR19_RESIDUES = frozenset(i * i % 19 for i in range(1, 19))


def _cubic_factors_x19():
    """The six irreducible cubic factors of ``(x^19 - 1)/(x - 1)`` over GF(7)."""
    p = 7
    rest, r = poly.divmod_poly(poly.x_power_minus_one(19, p), [p - 1, 1], p)
    assert not r
    cubics = []
    for f in poly.monic(3, p):
        while True:
            q, r = poly.divmod_poly(rest, f, p)
            if r:
                break
            cubics.append(f)
            rest = q
    if len(cubics) != 6 or rest != [1]:
        raise CodeError("x^19 - 1 did not split into (x - 1) and six cubics over GF(7)")
    return cubics


def qr_generator_polynomial():
    """Generator polynomial of the [19, 10] quadratic residue code over GF(7).

    A root ``beta`` of the first cubic factor is modelled as ``x`` modulo that
    cubic; every cubic is then labelled by the exponents ``i`` with
    ``f(beta^i) = 0``. The three cubics whose exponents are residues are
    multiplied together.
    """
    p = 7
    cubics = _cubic_factors_x19()
    base = cubics[0]
    powers = {i: poly.power_mod([0, 1], i, base, p) for i in range(1, 19)}
    g = [1]
    used = 0
    for f in cubics:
        exps = {i for i, b in powers.items() if not poly.evaluate_mod(f, b, base, p)}
        if len(exps) != 3:
            raise CodeError(f"cubic {f} has root exponents {sorted(exps)}")
        if exps <= QR19_RESIDUES:
            g = poly.mul(g, f, p)
            used += 1
    if used != 3:
        raise CodeError("quadratic residues are not a union of three cyclotomic cosets")
    return g


def qr_code_19():
    p, n = 7, 19
    g = qr_generator_polynomial()
    k = n - (len(g) - 1)
    rows = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        rows[i, i : i + len(g)] = g
    return LinearCode.from_generator(rows, p)


def extend_qr20():
    """The extended QR code: each codeword gains the coordinate ``lam * sum(c)``.

    ``lam`` is found by trying every field element and keeping the first
    that makes the extension self-dual.
    """
    C = qr_code_19()
    p = C.p
    G = C.generator.astype(np.int64)
    sums = G.sum(axis=1) % p
    for lam in range(p):
        ext = np.hstack([G, (lam * sums % p).reshape(-1, 1)])
        code = LinearCode.from_generator(ext, p)
        if code.k == C.k and is_self_dual(code):
            return code
    raise CodeError("no extension coordinate makes the QR code self-dual")


# --- circulant families --------------------------------------------------------


def circulant(row, p, negacyclic=False):
    row = [int(x) % p for x in row]
    m = len(row)
    M = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            v = row[(j - i) % m]
            if negacyclic and j < i:
                v = -v
            M[i, j] = v % p
    return M


def four_circulant_block(a, b, p=7, negacyclic=False):
    A = circulant(a, p, negacyclic)
    B = circulant(b, p, negacyclic)
    return np.block([[A, B], [-B.T, A.T]]) % p


def four_circulant(a, b, negacyclic=False, p=7):
    X = four_circulant_block(a, b, p, negacyclic)
    m = X.shape[0]
    return LinearCode.from_generator(np.hstack([np.eye(m, dtype=np.int64), X]), p)


def double_circulant(r, p=7):
    R = circulant(r, p)
    return LinearCode.from_generator(np.hstack([np.eye(len(r), dtype=np.int64), R]), p)


def neighbor(C, x):
    """The self-dual neighbour ``<C ∩ <x>^perp, x>`` of a self-dual code."""
    p = C.p
    x = np.asarray(x, dtype=np.int64) % p
    if x.shape != (C.n,):
        raise CodeError(f"vector length {x.shape} does not match code length {C.n}")
    if not x.any():
        raise CodeError("neighbour vector must be nonzero")
    if int(x @ x) % p:
        raise CodeError("neighbour vector must satisfy x.x = 0")
    G = C.generator.astype(np.int64)
    g = G @ x % p
    if not g.any():
        sub = G
    else:
        K = gf.kernel_basis(g.reshape(1, -1), p).astype(np.int64)
        sub = K @ G % p
    return LinearCode.from_generator(np.vstack([sub, x.reshape(1, -1)]), p)


# --- weight statistics ---------------------------------------------------------


def symmetrized_enumerator(C, threads=None):
    """Profile histogram over all nonzero codewords, plus its :class:`Profile`."""
    check_size(C.p, C.k)
    return profile_enumerator(C.generator, C.p, threads)


def enumerator_from_profile(hist, profile):
    A = np.bincount(profile.weights().ravel(), weights=hist.ravel(), minlength=profile.n + 1)
    A = [int(round(a)) for a in A[: profile.n + 1]]
    A[0] = 1
    return A


def weight_enumerator(C, threads=None):
    """Coefficients ``A_0 .. A_n`` of the Hamming weight enumerator."""
    hist, profile = symmetrized_enumerator(C, threads)
    return enumerator_from_profile(hist, profile)


def information_sets(C, limit=None):
    """Greedy disjoint information sets with their systematic generators.

    Returns a list of ``(columns, R)`` where ``columns`` orders the code's
    coordinates with the information set first and ``R = (I | X)`` generates
    the code in that column order.
    """
    p, k, n = C.p, C.k, C.n
    available = list(range(n))
    out = []
    while len(available) >= k and (limit is None or len(out) < limit):
        sub = C.generator[:, available]
        R, r, piv = gf.rref(sub, p)
        if r < k:
            break
        info = [available[j] for j in piv]
        rest = [c for c in range(n) if c not in set(info)]
        cols = info + rest
        Rfull, _, _ = gf.rref(C.generator[:, cols], p)
        out.append((cols, Rfull))
        available = [c for c in available if c not in set(info)]
    return out


def complementary_split(C):
    """``(cols, X, Y)`` when the code has complementary information sets.

    ``cols`` lists an information set L followed by its complement R; the
    code is generated by ``(I | X)`` in column order (L, R) and by
    ``(I | Y)`` in order (R, L). Returns None when R is not an information
    set or ``n != 2k``.
    """
    if 2 * C.k != C.n or C.k == 0:
        return None
    sets = information_sets(C, limit=1)
    cols, R1 = sets[0]
    k = C.k
    swapped = cols[k:] + cols[:k]
    R2, r, piv = gf.rref(C.generator[:, swapped], C.p)
    if piv != list(range(k)):
        return None
    X = np.ascontiguousarray(R1[:, k:], dtype=np.int64)
    Y = np.ascontiguousarray(R2[:, k:], dtype=np.int64)
    return cols, X, Y


def low_weight_counts(C, bound):
    """``[A_0, ..., A_bound]`` from two half-size scans (needs a
    complementary split)."""
    split = complementary_split(C)
    if split is None:
        raise CodeError("code has no complementary information sets")
    _, X, Y = split
    hamming = np.array([0] + [1] * (C.p - 1), dtype=np.int64)
    out = np.zeros((0, C.n), dtype=np.int64)
    hist = _kernels.split_cost_histogram(X, Y, C.p, hamming, bound, out, -1)
    A = [int(a) for a in hist]
    A[0] = 1
    return A


def _krawtchouk(n, q, j, i):
    return sum(
        (-1) ** s * (q - 1) ** (j - s) * comb(i, s) * comb(n - i, j - s) for s in range(j + 1)
    )


def self_dual_enumerator_from_prefix(prefix, n, p):
    """Complete a self-dual code's weight enumerator from ``A_0 .. A_m``.

    Solves the MacWilliams identity ``A = K A / p^(n/2)`` for the remaining
    coefficients in exact rational arithmetic. Raises if the prefix does
    not pin them down or the solution is not integral.
    """
    m = len(prefix) - 1
    scale = Fraction(1, p ** (n // 2))
    K = [[_krawtchouk(n, p, j, i) * scale for i in range(n + 1)] for j in range(n + 1)]
    for j in range(n + 1):
        K[j][j] -= 1
    unknown = list(range(m + 1, n + 1))
    rows = []
    for j in range(n + 1):
        rhs = -sum(K[j][i] * prefix[i] for i in range(m + 1))
        rows.append([K[j][i] for i in unknown] + [rhs])
    ncol = len(unknown)
    piv_row = 0
    for c in range(ncol):
        r = next((r for r in range(piv_row, len(rows)) if rows[r][c] != 0), None)
        if r is None:
            raise CodeError("weight prefix does not determine the enumerator")
        rows[piv_row], rows[r] = rows[r], rows[piv_row]
        inv = 1 / rows[piv_row][c]
        rows[piv_row] = [x * inv for x in rows[piv_row]]
        for rr in range(len(rows)):
            if rr != piv_row and rows[rr][c] != 0:
                f = rows[rr][c]
                rows[rr] = [a - f * b for a, b in zip(rows[rr], rows[piv_row])]
        piv_row += 1
    if any(row[-1] != 0 for row in rows[piv_row:]):
        raise CodeError("weight prefix is inconsistent with self-duality")
    rest = [rows[c][-1] for c in range(ncol)]
    if any(x.denominator != 1 or x < 0 for x in rest):
        raise CodeError("MacWilliams solution is not a non-negative integer vector")
    return list(prefix) + [int(x) for x in rest]


def weight_enumerator_self_dual(C, prefix_len=10):
    """Weight enumerator of a self-dual code from its low-weight counts."""
    if not is_self_dual(C):
        raise CodeError("code is not self-dual")
    return self_dual_enumerator_from_prefix(low_weight_counts(C, prefix_len), C.n, C.p)


def minimum_weight_witness(C, stop_at=0):
    """Minimum weight and a codeword attaining it.

    With ``stop_at > 0`` the search may stop at the first codeword of weight
    ``<= stop_at``, so the returned weight is then only an upper bound.
    """
    if C.k == 0:
        raise CodeError("the zero code has no minimum weight")
    sets = information_sets(C)
    Xs = np.ascontiguousarray(
        np.stack([R[:, C.k :] for _, R in sets]).astype(np.int64)
    )
    w, j, msg = _kernels.min_weight_bz(Xs, C.p, stop_at, C.n + 1)
    cols, R = sets[j]
    cw_perm = msg @ R.astype(np.int64) % C.p
    cw = np.zeros(C.n, dtype=np.int64)
    cw[cols] = cw_perm
    return int(w), cw


def minimum_weight(C, stop_at=0):
    return minimum_weight_witness(C, stop_at)[0]


def has_minimum_weight_at_least(C, d):
    return minimum_weight(C, stop_at=d - 1) >= d


# --- file format ---------------------------------------------------------------


def code_to_dict(C):
    return {"p": C.p, "n": C.n, "k": C.k, "generator": C.generator.astype(int).tolist()}


def code_from_dict(data):
    try:
        p = int(data["p"])
        n = int(data["n"])
        rows = data["generator"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CodeError(f"malformed code record: {exc}") from None
    try:
        M = np.array(rows, dtype=np.int64).reshape(-1, n) if rows else np.zeros((0, n), dtype=np.int64)
    except (TypeError, ValueError):
        raise CodeError(f"generator must be a list of rows of length {n}") from None
    if M.shape[0] and len(rows[0]) != n:
        raise CodeError(f"generator rows must have length {n}")
    if M.size and (M.min() < 0 or M.max() >= p):
        raise CodeError(f"generator entries must lie in [0, {p})")
    C = LinearCode.from_generator(M, p, n=n)
    if "k" in data and int(data["k"]) != C.k:
        raise CodeError(f"declared k={data['k']} but generator has rank {C.k}")
    if C.k != M.shape[0]:
        raise CodeError("generator matrix is not full rank")
    return C


def write_code(C, path):
    with open(path, "w") as fh:
        json.dump(code_to_dict(C), fh)
        fh.write("\n")


def read_code(path):
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    return code_from_dict(data)
