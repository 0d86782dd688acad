import itertools

import numpy as np
import pytest

from sdcodes import codes, lattice

from conftest import random_self_dual_4_2


def ball_scan(C, targets=(7, 14)):
    """Count integer vectors of squared length t reducing into C, by brute force."""
    counts = dict.fromkeys(targets, 0)
    for x in itertools.product(range(-3, 4), repeat=C.n):
        s = sum(v * v for v in x)
        if s in counts and C.contains(np.array(x) % 7):
            counts[s] += 1
    return counts


def test_lift_formula_matches_brute_force(rng):
    for _ in range(200):
        c = rng.integers(0, 7, size=rng.integers(1, 6))
        for target in (7, 9, 14, 17, 20):
            n1, n2, n3 = lattice.class_counts(c)
            assert lattice.profile_lift_count(n1, n2, n3, target) == len(lattice.lifts(c, target))


def test_lift_formula_range():
    with pytest.raises(ValueError):
        lattice.profile_lift_count(1, 0, 0, 21)


def test_lift_examples():
    assert lattice.profile_lift_count(14, 0, 0) == 1
    assert lattice.profile_lift_count(10, 1, 0) == 1
    assert lattice.profile_lift_count(5, 0, 1) == 1  # 5 + 9 = 14
    assert lattice.profile_lift_count(0, 0, 1, 16) == 1
    assert lattice.profile_lift_count(9, 0, 0) == 0


def test_shell_counts_match_ball_scan(rng):
    for _ in range(10):
        C = random_self_dual_4_2(rng)
        counts, W = lattice.shell_counts(C)
        assert counts == ball_scan(C)
        assert sum(W) == 49


def test_qr20_kissing(qr20):
    report = lattice.kissing_number(qr20)
    assert report == lattice.LatticeReport(2, 760, True)
    assert report.to_dict() == {"min_norm": 2, "kissing": 760, "is_d20_plus": True}


def test_minimal_vectors(qr20):
    vecs = lattice.minimal_vectors(qr20)
    assert len(vecs) == 760
    assert vecs == sorted(vecs)
    assert set(vecs) == {tuple(-v for v in x) for x in vecs}
    assert all(lattice.check_minimal_vector(x, qr20) for x in vecs)


def test_fast_path_matches_full_pass(qr20, code_s1, code_s2):
    for C in (qr20, code_s1, code_s2):
        full = lattice.kissing_number(C)
        assert lattice.kissing_number_fast(C) == full
    total, vecs = lattice.norm2_count_split(qr20, collect=True, capacity=16)
    assert total == 760 and vecs == lattice.minimal_vectors(qr20)


def test_lemma_property():
    assert lattice.lemma_property((3, 2, 1, 0)) is False
    assert lattice.lemma_property((3, 1, 1, 1, 1, 1))
    assert lattice.lemma_property((1,) * 14)


def test_check_minimal_vector_rejects(qr20):
    x = np.zeros(20, dtype=int)
    x[:2] = [3, 2]
    assert not lattice.check_minimal_vector(x, qr20)


def test_kissing_preconditions(qr20):
    small = random_self_dual_4_2(np.random.default_rng(1))
    with pytest.raises(lattice.LatticeError, match="length"):
        lattice.kissing_number(small)
    G = np.kron(np.eye(5, dtype=np.int64), small.generator.astype(np.int64))
    low = codes.LinearCode.from_generator(G, 7)
    assert codes.is_self_dual(low)
    with pytest.raises(lattice.LatticeError, match="minimum weight"):
        lattice.kissing_number(low)
    half = codes.LinearCode.from_generator(qr20.generator[:5], 7)
    with pytest.raises(lattice.LatticeError, match="self-dual"):
        lattice.kissing_number(half)
    q5 = codes.LinearCode.from_generator(qr20.generator, 5)
    with pytest.raises(lattice.LatticeError):
        lattice.kissing_number(q5)


def test_determinant():
    C = codes.LinearCode.from_generator([[1, 0, 2, 3], [0, 1, 4, 2]], 7)
    assert lattice.lattice_basis_determinant(C) == 49


def test_determinant_qr20(qr20, code_s2):
    assert lattice.lattice_basis_determinant(qr20) == 7**10
    assert lattice.lattice_basis_determinant(code_s2) == 7**10


def test_determinant_random_small(rng):
    for _ in range(10):
        assert lattice.lattice_basis_determinant(random_self_dual_4_2(rng)) == 49


def test_every_skew_hadamard_code_gives_d20_plus(code_s2):
    # A_7(C(H)) is D20+ for every skew-Hadamard H of order 20, not only when
    # C(H) has minimum weight 9: C(S2) has weight-8 words and still 760
    assert lattice.kissing_number(code_s2) == lattice.LatticeReport(2, 760, True)
