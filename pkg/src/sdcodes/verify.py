"""One-shot verification of the QR20 / D20+ classification chain."""

from dataclasses import asdict, dataclass, field

import numpy as np

from . import codes, hadamard, lattice

W_S1 = [1, 0, 0, 0, 0, 0, 0, 0, 0, 6840, 47880, 200640, 957600, 3625200, 10766160,
        25701984, 48495600, 68276880, 68299680, 43155840, 12940944]
W_S2 = [1, 0, 0, 0, 0, 0, 0, 0, 1080, 5040, 40320, 215760, 977040, 3571200, 10751040,
        25814304, 48431880, 68208840, 68403000, 43106160, 12949584]


@dataclass
class Claim:
    id: int
    description: str
    expected: object
    computed: object
    passed: bool


@dataclass
class VerificationReport:
    claims: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.claims)

    def failing(self):
        return [c.id for c in self.claims if not c.passed]

    def to_dict(self):
        return {"claims": [asdict(c) for c in self.claims], "passed": self.passed}


def _min_weight(W):
    return next((i for i in range(1, len(W)) if W[i]), None)


def _check(report, cid, description, expected, compute):
    try:
        computed = compute()
        passed = computed == expected
    except Exception as exc:  # a failing computation fails its claim, not the run
        computed = f"error: {exc}"
        passed = False
    report.claims.append(Claim(cid, description, expected, computed, bool(passed)))


def verify_theorem(s2, threads=None):
    """Run claims 1-7 for the Paley matrix S1 and the sign matrix ``s2``."""
    report = VerificationReport()
    S1 = hadamard.paley_skew_hadamard(19)
    cache = {}

    def shells(name, make):
        if name not in cache:
            C = make()
            counts, W = lattice.shell_counts(C, threads=threads)
            cache[name] = (C, counts, W)
        return cache[name]

    def c_s1():
        return hadamard.hadamard_code(S1)

    def c_s2():
        return hadamard.hadamard_code(s2)

    def qr20():
        return codes.extend_qr20()

    _check(report, 1, "S1 (Paley, order 20) is skew-Hadamard", True,
           lambda: hadamard.is_skew_hadamard(S1))

    def claim2():
        C, _, W = shells("s1", c_s1)
        return {"self_dual": codes.is_self_dual(C), "W": W}

    _check(report, 2, "C(S1) is self-dual with the expected weight enumerator",
           {"self_dual": True, "W": W_S1}, claim2)

    def claim3():
        H = np.asarray(s2)
        if not hadamard.is_skew_hadamard(H):
            return "S2 is not skew-Hadamard"
        C, _, W = shells("s2", c_s2)
        return {"self_dual": codes.is_self_dual(C), "min_weight": _min_weight(W), "W": W}

    _check(report, 3, "C(S2) is self-dual, minimum weight 8, expected weight enumerator",
           {"self_dual": True, "min_weight": 8, "W": W_S2}, claim3)

    def claim4():
        C, _, W = shells("qr20", qr20)
        return {"self_dual": codes.is_self_dual(C), "n": C.n, "k": C.k, "d": _min_weight(W)}

    _check(report, 4, "QR20 is a self-dual [20,10,9] code",
           {"self_dual": True, "n": 20, "k": 10, "d": 9}, claim4)

    _check(report, 5, "W(QR20) = W(C(S1))", True,
           lambda: shells("qr20", qr20)[2] == shells("s1", c_s1)[2])

    def claim6():
        return {
            "QR20": shells("qr20", qr20)[1][lattice.NORM2],
            "C(S1)": shells("s1", c_s1)[1][lattice.NORM2],
        }

    _check(report, 6, "kissing number of A_7(QR20) and A_7(C(S1)) is 760 (D20+)",
           {"QR20": lattice.D20_KISSING, "C(S1)": lattice.D20_KISSING}, claim6)

    def claim7():
        Q = shells("qr20", qr20)[0]
        vecs = lattice.minimal_vectors(Q, threads=threads)
        bad = sum(1 for x in vecs if not lattice.check_minimal_vector(x, Q))
        return {"minimal_vectors": len(vecs), "failures": bad}

    _check(report, 7, "every minimal vector of A_7(QR20) has at most one coordinate with |x_i| >= 2",
           {"minimal_vectors": lattice.D20_KISSING, "failures": 0}, claim7)
    return report
