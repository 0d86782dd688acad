import itertools
import json

import numpy as np
import pytest

from sdcodes import codes, gf
from sdcodes.search import four_circulant_pairs

from conftest import random_self_dual_4_2


def naive_enumerator(C):
    """Weight distribution by looping over every message."""
    A = [0] * (C.n + 1)
    G = C.generator.astype(np.int64)
    for msg in itertools.product(range(C.p), repeat=C.k):
        A[int(np.count_nonzero(np.array(msg, dtype=np.int64) @ G % C.p))] += 1
    return A


def random_code(rng, p, n, k):
    while True:
        C = codes.LinearCode.from_generator(rng.integers(0, p, size=(k, n)), p)
        if C.k == k:
            return C


def signed_permutation(C, rng):
    perm = rng.permutation(C.n)
    signs = rng.choice([1, C.p - 1], size=C.n)
    M = C.generator.astype(np.int64)[:, perm] * signs % C.p
    return codes.LinearCode.from_generator(M, C.p)


# --- enumerators -----------------------------------------------------------------


def test_enumerator_matches_naive_loop(rng):
    for _ in range(50):
        p = int(rng.choice([2, 3, 5, 7, 7, 7]))
        k = int(rng.integers(1, 5))
        n = int(rng.integers(k, 13))
        C = random_code(rng, p, n, k)
        assert codes.weight_enumerator(C, threads=2) == naive_enumerator(C)


def test_enumerator_invariants(code_s2):
    W = codes.weight_enumerator(code_s2)
    assert W[0] == 1
    assert sum(W) == 7**10
    assert all(a % 6 == 0 for a in W[1:])


def test_two_one_code():
    C = codes.LinearCode.from_generator([[1, 1]], 7)
    assert codes.weight_enumerator(C) == [1, 0, 6]


def test_enumerator_monomial_invariance(rng):
    for _ in range(10):
        C = random_code(rng, 7, 12, 5)
        W = codes.weight_enumerator(C)
        assert codes.weight_enumerator(signed_permutation(C, rng)) == W


def test_enumerator_monomial_invariance_qr20(qr20, rng):
    W = codes.weight_enumerator(qr20)
    assert codes.weight_enumerator(signed_permutation(qr20, rng)) == W


def test_thread_count_does_not_change_result(rng):
    C = random_code(rng, 7, 14, 7)
    results = {tuple(codes.weight_enumerator(C, threads=t)) for t in (1, 2, 3, 8)}
    assert len(results) == 1


def test_self_dual_completion_matches_full_pass(qr20, code_s2):
    for C in (qr20, code_s2):
        assert codes.weight_enumerator_self_dual(C) == codes.weight_enumerator(C)


def test_low_weight_counts_small(rng):
    for _ in range(10):
        C = random_self_dual_4_2(rng)
        assert codes.low_weight_counts(C, 4) == naive_enumerator(C)


def test_completion_rejects_inconsistent_prefix():
    with pytest.raises(codes.CodeError):
        codes.self_dual_enumerator_from_prefix([1, 5, 0, 0, 0, 0, 0, 0, 0, 0, 0], 20, 7)


# --- minimum weight ----------------------------------------------------------------


def test_minimum_weight_matches_naive(rng):
    for _ in range(40):
        p = int(rng.choice([3, 5, 7]))
        k = int(rng.integers(1, 5))
        n = int(rng.integers(k, 13))
        C = random_code(rng, p, n, k)
        W = naive_enumerator(C)
        w, cw = codes.minimum_weight_witness(C)
        assert w == next(i for i in range(1, n + 1) if W[i])
        assert np.count_nonzero(cw) == w and C.contains(cw)


def test_minimum_weight_examples(qr20, code_s2):
    assert codes.minimum_weight(qr20) == 9
    assert codes.minimum_weight(code_s2) == 8
    assert codes.minimum_weight(codes.LinearCode.from_generator(np.eye(4, dtype=int), 7)) == 1
    assert codes.has_minimum_weight_at_least(qr20, 9)
    assert not codes.has_minimum_weight_at_least(code_s2, 9)


def test_minimum_weight_zero_code():
    Z = codes.LinearCode.from_generator(np.zeros((1, 4), dtype=int), 7)
    assert Z.k == 0
    with pytest.raises(codes.CodeError):
        codes.minimum_weight(Z)


# --- duality -------------------------------------------------------------------------


def test_dual(rng):
    for _ in range(10):
        C = random_code(rng, 7, 8, 3)
        D = codes.dual(C)
        assert D.k == 5
        assert not gf.matmul(C.generator, D.generator.T, 7).any()
        assert codes.dual(D) == C


def test_self_dual_small():
    C = codes.LinearCode.from_generator([[1, 0, 2, 3], [0, 1, 4, 2]], 7)
    assert codes.is_self_dual(C)
    assert codes.dual(C) == C


# --- quadratic residue codes ---------------------------------------------------------


def test_qr19_generator_polynomial():
    from sdcodes import poly

    g = codes.qr_generator_polynomial()
    assert len(g) == 10 and g[-1] == 1
    _, r = poly.divmod_poly(poly.x_power_minus_one(19, 7), g, 7)
    assert r == []


def test_qr19_code_is_cyclic():
    C = codes.qr_code_19()
    assert (C.n, C.k) == (19, 10)
    for row in C.generator:
        assert C.contains(np.roll(row, 1))


def test_qr20(qr20):
    assert (qr20.n, qr20.k) == (20, 10)
    assert codes.is_self_dual(qr20)


# --- circulant families ------------------------------------------------------------------


def test_circulant_shapes():
    A = codes.circulant([1, 2, 3], 7)
    assert A.tolist() == [[1, 2, 3], [3, 1, 2], [2, 3, 1]]
    N = codes.circulant([1, 2, 3], 7, negacyclic=True)
    assert N.tolist() == [[1, 2, 3], [4, 1, 2], [5, 4, 1]]


def test_zero_four_circulant_not_self_dual():
    C = codes.four_circulant([0] * 5, [0] * 5)
    assert C.k == 10 and not codes.is_self_dual(C)


@pytest.mark.parametrize("negacyclic", [False, True])
def test_four_circulant_block_condition(negacyclic, rng):
    rows, _, pairs = four_circulant_pairs(negacyclic)
    candidates = [rng.integers(0, 7, size=(2, 5)) for _ in range(500)]
    candidates += [rows[pairs[i]] for i in rng.integers(0, len(pairs), size=500)]
    n_self_dual = 0
    for a, b in candidates:
        A = codes.circulant(a, 7, negacyclic)
        B = codes.circulant(b, 7, negacyclic)
        block = not ((A @ A.T + B @ B.T + np.eye(5, dtype=np.int64)) % 7).any()
        sd = codes.is_self_dual(codes.four_circulant(a, b, negacyclic))
        assert sd == block
        n_self_dual += sd
    assert n_self_dual >= 500


def test_double_circulant_condition(rng):
    for _ in range(1000):
        r = rng.integers(0, 7, size=10)
        R = codes.circulant(r, 7)
        block = not ((R @ R.T + np.eye(10, dtype=np.int64)) % 7).any()
        assert codes.is_self_dual(codes.double_circulant(r)) == block


def test_double_circulant_autocorrelations_sum_to_square(rng):
    # sum over all shifts of sum_i r_i r_{i+s} is (sum r_i)^2, so RR^T = -I
    # would force (sum r_i)^2 = -1, which is not a square mod 7
    assert all(x * x % 7 != 6 for x in range(7))
    for _ in range(100):
        r = rng.integers(0, 7, size=10)
        R = codes.circulant(r, 7)
        assert int((R @ R.T)[0].sum()) % 7 == int(r.sum()) ** 2 % 7


# --- neighbours -------------------------------------------------------------------------------


def isotropic(rng, n=20):
    while True:
        x = rng.integers(0, 7, size=n)
        if x.any() and int(x @ x) % 7 == 0:
            return x


def test_neighbor_of_codeword_is_same_code(qr20, rng):
    x = qr20.encode(rng.integers(0, 7, size=10))
    assert codes.neighbor(qr20, x) == qr20


def test_neighbor_properties(qr20, rng):
    for _ in range(20):
        x = isotropic(rng)
        if qr20.contains(x):
            continue
        N = codes.neighbor(qr20, x)
        assert codes.is_self_dual(N)
        assert N.contains(x)
        g = qr20.generator.astype(np.int64) @ x % 7
        assert 10 - gf.rank(g.reshape(1, -1), 7) == 9
        common = np.vstack([qr20.generator, N.generator])
        assert gf.rank(common, 7) == 11


def test_neighbor_rejects_bad_vectors(qr20):
    with pytest.raises(codes.CodeError):
        codes.neighbor(qr20, np.zeros(20, dtype=int))
    x = np.zeros(20, dtype=int)
    x[0] = 1
    with pytest.raises(codes.CodeError):
        codes.neighbor(qr20, x)
    with pytest.raises(codes.CodeError):
        codes.neighbor(qr20, np.zeros(5, dtype=int))


# --- file format -------------------------------------------------------------------------------


def test_json_roundtrip(tmp_path, qr20):
    path = tmp_path / "qr20.json"
    codes.write_code(qr20, path)
    assert codes.read_code(path) == qr20
    data = json.loads(path.read_text())
    assert data["k"] == 10 and data["n"] == 20


def test_reader_accepts_non_rref(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"p": 7, "n": 4, "k": 2, "generator": [[2, 3, 0, 1], [0, 1, 4, 2]]}))
    C = codes.read_code(path)
    assert C.k == 2 and C.generator[0, 0] == 1


@pytest.mark.parametrize(
    "text, message",
    [
        ('{"p": 7,\n "n": 4\n "generator": []}', "line 3"),
        ('{"p": 7, "n": 2, "generator": [[1, 9]]}', "entries"),
        ('{"p": 7, "n": 2, "k": 2, "generator": [[1, 1], [2, 2]]}', "rank"),
        ('{"p": 7, "n": 2, "generator": [[1, 1, 1]]}', "length"),
        ('{"n": 2, "generator": [[1, 1]]}', "malformed"),
    ],
)
def test_reader_errors(tmp_path, text, message):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(codes.CodeError, match=message):
        codes.read_code(path)
