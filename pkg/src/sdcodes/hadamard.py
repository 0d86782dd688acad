"""Skew-Hadamard matrices and doubly regular tournaments.

Sign matrices are ``int64`` arrays of +1/-1; tournaments are boolean
adjacency matrices ``A[u, v] = True`` when u dominates v.
"""

import os
from importlib import resources

import numpy as np
from numba import njit

from . import codes, gf

S2_FIXTURE = "s2.mat"


class HadamardError(ValueError):
    pass


class SearchFailure(RuntimeError):
    pass


def is_sign_matrix(H):
    H = np.asarray(H)
    return H.ndim == 2 and H.shape[0] == H.shape[1] and bool(np.all(np.abs(H) == 1))


def is_hadamard(H):
    if not is_sign_matrix(H):
        return False
    H = np.asarray(H, dtype=np.int64)
    n = H.shape[0]
    return np.array_equal(H @ H.T, n * np.eye(n, dtype=np.int64))


def is_skew_hadamard(H):
    if not is_hadamard(H):
        return False
    H = np.asarray(H, dtype=np.int64)
    n = H.shape[0]
    return np.array_equal(H + H.T, 2 * np.eye(n, dtype=np.int64))


def quadratic_character(a, q):
    """Legendre symbol of ``a`` modulo the odd prime ``q``."""
    a %= q
    if a == 0:
        return 0
    return 1 if pow(a, (q - 1) // 2, q) == 1 else -1


def paley_skew_hadamard(q):
    """Paley skew-Hadamard matrix of order ``q + 1`` for a prime ``q = 3 mod 4``.

    Row/column 0 is the point at infinity, the rest are indexed by GF(q).
    """
    if not (gf.is_prime(q) and q % 4 == 3):
        raise HadamardError(f"q must be a prime congruent to 3 mod 4, got {q}")
    n = q + 1
    H = np.empty((n, n), dtype=np.int64)
    H[0, :] = 1
    H[1:, 0] = -1
    chi = [quadratic_character(d, q) for d in range(q)]
    for i in range(q):
        for j in range(q):
            H[i + 1, j + 1] = 1 if i == j else chi[(j - i) % q]
    return H


def normalize_skew(H):
    """``D H D`` with D the diagonal of H's first row, giving a first row of +1s."""
    H = np.asarray(H, dtype=np.int64)
    d = H[0].copy()
    return d[:, None] * H * d[None, :]


def tournament_from_skew(H):
    if not is_skew_hadamard(H):
        raise HadamardError("input is not a skew-Hadamard matrix")
    N = normalize_skew(H)
    M = N[1:, 1:]
    m = M.shape[0]
    A = (M + 1) // 2 - np.eye(m, dtype=np.int64)
    return A.astype(bool)


def skew_from_tournament(T):
    T = np.asarray(T, dtype=bool)
    if not is_doubly_regular(T):
        raise HadamardError("tournament is not doubly regular")
    m = T.shape[0]
    M = 2 * T.astype(np.int64) - 1
    np.fill_diagonal(M, 1)
    H = np.empty((m + 1, m + 1), dtype=np.int64)
    H[0, 0] = 1
    H[0, 1:] = 1
    H[1:, 0] = -1
    H[1:, 1:] = M
    return H


def is_tournament(T):
    T = np.asarray(T, dtype=bool)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        return False
    if T.diagonal().any():
        return False
    return bool(np.all(T ^ T.T | np.eye(T.shape[0], dtype=bool)))


def is_doubly_regular(T):
    T = np.asarray(T, dtype=bool)
    if not is_tournament(T):
        return False
    n = T.shape[0]
    if n % 4 != 3:
        return False
    A = T.astype(np.int64)
    C = A @ A.T
    off = ~np.eye(n, dtype=bool)
    return bool(np.all(C.diagonal() == (n - 1) // 2) and np.all(C[off] == (n - 3) // 4))


def qr_tournament(q):
    """u -> v iff v - u is a nonzero square mod q."""
    T = np.zeros((q, q), dtype=bool)
    for u in range(q):
        for v in range(q):
            if u != v and quadratic_character(v - u, q) == 1:
                T[u, v] = True
    return T


def hadamard_code(H, p=7):
    """``C(H)``: the row space of ``H + 2I`` over GF(p)."""
    H = np.asarray(H, dtype=np.int64)
    if not is_skew_hadamard(H):
        raise HadamardError("input is not a skew-Hadamard matrix")
    return codes.code_from_matrix(H + 2 * np.eye(H.shape[0], dtype=np.int64), p)


def random_signed_permutation(n, rng):
    P = np.zeros((n, n), dtype=np.int64)
    P[np.arange(n), rng.permutation(n)] = rng.choice([-1, 1], size=n)
    return P


def conjugate(H, P):
    """``P H P^T``: skew-Hadamard equivalence by a signed permutation."""
    return P @ np.asarray(H, dtype=np.int64) @ P.T


# --- doubly regular tournament search --------------------------------------------


@njit(nogil=True, cache=True)
def _cost(A, lam, half):
    n = A.shape[0]
    total = 0
    for x in range(n):
        for y in range(n):
            c = 0
            for w in range(n):
                c += A[x, w] * A[y, w]
            d = c - (half if x == y else lam)
            total += d * d
    return total


@njit(nogil=True, cache=True)
def _flip_delta(A, C, u, v, lam, half):
    # Cost change from reversing the arc u -> v. With C = A A^T, the flip
    # lowers C[u, y] (y != u, y -> v) and C[u, u] by one, and raises C[v, y]
    # (y != v, y -> u) and C[v, v] by one; every other entry is unchanged.
    # Off-diagonal entries count twice (ordered pairs).
    n = A.shape[0]
    delta = -2 * (C[u, u] - half) + 1 + 2 * (C[v, v] - half) + 1
    for y in range(n):
        if y != u and A[y, v] == 1:
            delta += 2 * (-2 * (C[u, y] - lam) + 1)
        if y != v and A[y, u] == 1:
            delta += 2 * (2 * (C[v, y] - lam) + 1)
    return delta


@njit(nogil=True, cache=True)
def _apply_flip(A, C, u, v):
    n = A.shape[0]
    A[u, v] = 0
    A[v, u] = 1
    for x in range(n):
        if x != u and A[x, v] == 1:
            C[u, x] -= 1
            C[x, u] -= 1
        if x != v and A[x, u] == 1:
            C[v, x] += 1
            C[x, v] += 1
    C[u, u] -= 1
    C[v, v] += 1


def arc_orbits(n, order):
    """Unordered vertex pairs grouped into orbits of a fixed permutation.

    ``order`` 1 gives singletons. ``order`` 3 uses the permutation fixing
    vertex 0 and cycling (1 2 3)(4 5 6)...; it needs ``n = 1 mod 3``. Each
    orbit is listed as arcs (u_i, v_i) with (u_{i+1}, v_{i+1}) the image of
    (u_i, v_i), so orienting an orbit consistently keeps the permutation an
    automorphism.
    """
    if order == 1:
        sigma = list(range(n))
    elif order == 3 and n % 3 == 1:
        sigma = [0] + [3 * ((i - 1) // 3) + 1 + (i % 3) for i in range(1, n)]
    else:
        raise HadamardError(f"unsupported prescribed automorphism order {order} for n={n}")
    seen = set()
    orbits = []
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) in seen:
                continue
            orbit = []
            a, b = u, v
            while True:
                orbit.append((a, b))
                seen.add((min(a, b), max(a, b)))
                a, b = sigma[a], sigma[b]
                if (a, b) == (u, v):
                    break
            orbits.append(orbit)
    return np.array(orbits, dtype=np.int64)


@njit(nogil=True, cache=True)
def _flip_orbit(A, C, orbit, lam, half):
    d = 0
    for i in range(orbit.shape[0]):
        u = orbit[i, 0]
        v = orbit[i, 1]
        if A[u, v] == 0:
            u, v = v, u
        d += _flip_delta(A, C, u, v, lam, half)
        _apply_flip(A, C, u, v)
    return d


@njit(nogil=True, cache=True)
def _anneal(n, orbits, seed, max_restarts, steps, t_hot, t_cold):
    np.random.seed(seed)
    lam = (n - 3) // 4
    half = (n - 1) // 2
    m = orbits.shape[0]
    A = np.zeros((n, n), dtype=np.int64)
    C = np.zeros((n, n), dtype=np.int64)
    for attempt in range(max_restarts):
        A[:, :] = 0
        for o in range(m):
            forward = np.random.random() < 0.5
            for i in range(orbits.shape[1]):
                u = orbits[o, i, 0]
                v = orbits[o, i, 1]
                if forward:
                    A[u, v] = 1
                else:
                    A[v, u] = 1
        for x in range(n):
            for y in range(n):
                c = 0
                for w in range(n):
                    c += A[x, w] * A[y, w]
                C[x, y] = c
        cost = _cost(A, lam, half)
        if cost == 0:
            return A, attempt
        for s in range(steps):
            temp = t_hot * (t_cold / t_hot) ** (s / steps)
            o = np.random.randint(m)
            d = _flip_orbit(A, C, orbits[o], lam, half)
            if d <= 0 or np.random.random() < np.exp(-d / temp):
                cost += d
                if cost == 0:
                    return A, attempt
            else:
                _flip_orbit(A, C, orbits[o], lam, half)
    return A, -1


# temperature schedules per orbit size: (steps, hot, cold)
_SCHEDULES = {1: (2_000_000, 4.0, 0.5), 3: (200_000, 16.0, 1.0)}


def search_drt(n, seed=0, max_restarts=200, symmetry="auto"):
    """Randomized local search for a doubly regular tournament of order ``n``.

    Minimizes the sum of squared deviations of out-degrees from ``(n-1)/2``
    and of common out-neighbour counts from ``(n-3)/4`` by simulated
    annealing over arc reversals, restarting from a fresh random tournament
    when the schedule cools without reaching zero.

    With ``symmetry="auto"`` and ``n = 1 mod 3`` the search stays inside
    tournaments invariant under a fixed permutation of order 3 (one fixed
    point), reversing whole arc orbits. Isomorphism classes are then hit in
    proportion to (order-3 automorphisms of that type) / |Aut| instead of
    1 / |Aut|, which keeps highly symmetric classes such as the Paley
    tournament from being vanishingly rare. ``symmetry=1`` disables this.
    """
    if n % 4 != 3:
        raise HadamardError(f"doubly regular tournaments need n = 3 mod 4, got {n}")
    if symmetry == "auto":
        symmetry = 3 if n % 3 == 1 else 1
    orbits = arc_orbits(n, symmetry)
    steps, hot, cold = _SCHEDULES[orbits.shape[1]]
    A, attempt = _anneal(n, orbits, seed, max_restarts, steps, hot, cold)
    if attempt < 0:
        raise SearchFailure(
            f"no doubly regular tournament of order {n} within {max_restarts} restarts (seed {seed})"
        )
    T = A.astype(bool)
    if not is_doubly_regular(T):
        raise SearchFailure("search returned a tournament that is not doubly regular")
    return T


# --- file format -------------------------------------------------------------


def format_sign_matrix(H):
    H = np.asarray(H, dtype=np.int64)
    lines = [str(H.shape[0])]
    lines += [" ".join(str(int(x)) for x in row) for row in H]
    return "\n".join(lines) + "\n"


def parse_sign_matrix(text, source="<string>"):
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise HadamardError(f"{source}: line 1: expected the matrix order")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise HadamardError(f"{source}: line 1: expected an integer order") from None
    rows = []
    for lineno, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        try:
            vals = [int(t) for t in ln.split()]
        except ValueError:
            raise HadamardError(f"{source}: line {lineno}: non-integer entry") from None
        if len(vals) != n or any(v not in (1, -1) for v in vals):
            raise HadamardError(f"{source}: line {lineno}: expected {n} entries from {{1, -1}}")
        rows.append(vals)
    if len(rows) != n:
        raise HadamardError(f"{source}: expected {n} rows, found {len(rows)}")
    return np.array(rows, dtype=np.int64)


def write_sign_matrix(H, path):
    with open(path, "w") as fh:
        fh.write(format_sign_matrix(H))


def read_sign_matrix(path):
    with open(path) as fh:
        return parse_sign_matrix(fh.read(), str(path))


def fixture_path():
    return resources.files("sdcodes") / "data" / S2_FIXTURE


def load_s2(path=None):
    """The committed representative of the second skew-Hadamard class."""
    path = str(fixture_path() if path is None else path)
    if not os.path.isfile(path):
        raise FileNotFoundError(f"S2 fixture {path} not found; run `sdcodes search drt --out {path}`")
    return read_sign_matrix(path)
