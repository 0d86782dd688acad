"""Search campaigns over four-circulant, double circulant and neighbour codes.

Each campaign screens candidates for self-duality and minimum weight 9,
then attaches the Construction A verdict to every [20, 10, 9] hit. Hits are
grouped by (weight enumerator, kissing number); a hit whose lattice is not
D20+ can never be merged away.
"""

import itertools
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels, codes, lattice
from .enumeration import default_threads

log = logging.getLogger(__name__)

P = 7
FOUR_CIRCULANT = "four-circulant"
FOUR_NEGACIRCULANT = "four-negacirculant"
DOUBLE_CIRCULANT = "double-circulant"
NEIGHBOR = "neighbor"


@dataclass
class SearchResult:
    construction: str
    parameters: dict
    min_weight: int
    weight_enumerator: list = None
    lattice: dict = None
    count: int = 1

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def key(self):
        kiss = self.lattice["kissing"] if self.lattice else None
        return (self.construction, self.min_weight, tuple(self.weight_enumerator or ()), kiss)


@dataclass
class Campaign:
    """Outcome of one campaign: tallies, deduplicated results, and the
    parameters of every minimum-weight-9 code found."""

    construction: str
    tallies: dict = field(default_factory=dict)
    results: list = field(default_factory=list)
    hits: list = field(default_factory=list)
    lemma_failures: int = 0

    def to_dict(self):
        return {
            "construction": self.construction,
            "tallies": self.tallies,
            "lemma_failures": self.lemma_failures,
            "results": [r.to_dict() for r in self.results],
            "hits": self.hits,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            construction=d["construction"],
            tallies=dict(d["tallies"]),
            results=[SearchResult.from_dict(r) for r in d["results"]],
            hits=list(d.get("hits", [])),
            lemma_failures=d.get("lemma_failures", 0),
        )


def _bump(tallies, name, by=1):
    tallies[name] = tallies.get(name, 0) + by


def _merge(campaign, result):
    if result.min_weight == 9:
        campaign.hits.append(result.parameters)
    for r in campaign.results:
        if r.key() == result.key():
            r.count += result.count
            return
    campaign.results.append(result)


def _params_key(params):
    return json.dumps(params, sort_keys=True)


def _sort_results(campaign):
    campaign.results.sort(key=lambda r: _params_key(r.parameters))
    campaign.hits.sort(key=_params_key)


def analyse_hit(C, construction, parameters, min_weight):
    """SearchResult for a self-dual code of known minimum weight.

    Minimum weight 8 or 9 gets the weight enumerator (low-weight counts
    completed by MacWilliams) and the lattice report; for weight 9 every
    norm-2 vector is also checked for at most one coordinate of absolute
    value >= 2. Returns the result and the number of vectors failing that.
    """
    result = SearchResult(construction, parameters, int(min_weight))
    failures = 0
    if min_weight in (8, 9):
        if codes.complementary_split(C) is not None:
            kiss, vecs = lattice.norm2_count_split(C, collect=min_weight == 9)
            report = lattice.LatticeReport(2, kiss, kiss == lattice.D20_KISSING)
        else:
            report = lattice.kissing_number(C)
            vecs = lattice.minimal_vectors(C) if min_weight == 9 else None
        result.lattice = report.to_dict()
        if vecs is not None:
            failures = sum(1 for x in vecs if not lattice.check_minimal_vector(x, C))
        try:
            result.weight_enumerator = codes.weight_enumerator_self_dual(C)
        except codes.CodeError:
            result.weight_enumerator = codes.weight_enumerator(C)
    return result, failures


# --- checkpoints ---------------------------------------------------------------


def load_checkpoint(path, campaign_id):
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    if data.get("campaign") != campaign_id:
        raise ValueError(f"checkpoint {path} belongs to campaign {data.get('campaign')!r}")
    return data


def save_checkpoint(path, campaign_id, prefix, campaign, seed=None):
    if not path:
        return
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(
            {"campaign": campaign_id, "prefix": prefix, "seed": seed, "state": campaign.to_dict()},
            fh,
        )
    os.replace(tmp, path)


def _run_blocks(campaign_id, campaign, nblocks, work, threads, checkpoint, stop_after, seed=None):
    """Run ``work(block) -> (tallies, results, failures)`` over blocks in order,
    checkpointing after every finished batch of blocks."""
    state = load_checkpoint(checkpoint, campaign_id)
    start = 0
    if state is not None:
        start = state["prefix"]
        restored = Campaign.from_dict(state["state"])
        campaign.tallies, campaign.results = restored.tallies, restored.results
        campaign.hits = restored.hits
        campaign.lemma_failures = restored.lemma_failures
        log.info("resuming %s at block %d/%d", campaign_id, start, nblocks)
    threads = max(1, int(threads or default_threads()))
    end = nblocks if stop_after is None else min(nblocks, start + stop_after)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        b = start
        while b < end:
            batch = list(range(b, min(end, b + threads)))
            for tallies, results, failures in pool.map(work, batch):
                for k, v in tallies.items():
                    _bump(campaign.tallies, k, v)
                for r in results:
                    _merge(campaign, r)
                campaign.lemma_failures += failures
            b = batch[-1] + 1
            save_checkpoint(checkpoint, campaign_id, b, campaign, seed)
    _sort_results(campaign)
    campaign.tallies["complete"] = int(end == nblocks)
    return campaign


# --- four-circulant ------------------------------------------------------------


def _circulants(rows, negacyclic):
    m = rows.shape[1]
    M = np.zeros((len(rows), m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            v = rows[:, (j - i) % m]
            if negacyclic and j < i:
                v = -v
            M[:, i, j] = v % P
    return M


def all_rows(m):
    return np.array(list(itertools.product(range(P), repeat=m)), dtype=np.int64)


def four_circulant_pairs(negacyclic):
    """All index pairs (a, b) into :func:`all_rows` (5) with AA^T + BB^T = -I.

    (Nega)circulants commute with each other and with their transposes, so
    this block condition is exactly self-duality of (I | X). A (nega)circulant
    is determined by its first row, so first rows of AA^T are the hash keys.
    """
    rows = all_rows(5)
    M = _circulants(rows, negacyclic)
    gram = np.einsum("nij,nkj->nik", M, M) % P
    weights = P ** np.arange(5)
    key = gram[:, 0, :] @ weights
    need = (-np.eye(5, dtype=np.int64)[None] - gram) % P
    want = need[:, 0, :] @ weights
    order = np.argsort(key, kind="stable")
    sorted_keys = key[order]
    lo = np.searchsorted(sorted_keys, want, side="left")
    hi = np.searchsorted(sorted_keys, want, side="right")
    counts = hi - lo
    a_idx = np.repeat(np.arange(len(rows)), counts)
    b_idx = np.concatenate([order[l:h] for l, h in zip(lo, hi)]) if len(rows) else np.zeros(0, int)
    return rows, M, np.stack([a_idx, b_idx], axis=1)


def _four_blocks(M, pairs):
    A = M[pairs[:, 0]]
    B = M[pairs[:, 1]]
    At = np.transpose(A, (0, 2, 1))
    Bt = np.transpose(B, (0, 2, 1))
    top = np.concatenate([A, B], axis=2)
    bottom = np.concatenate([(-Bt) % P, At], axis=2)
    return np.concatenate([top, bottom], axis=1)


def _screen(X):
    """Minimum weight of each (I | X) with X X^T = -I, stopping at 8."""
    Y = (-np.transpose(X, (0, 2, 1))) % P
    Xs = np.ascontiguousarray(np.stack([X, Y], axis=1), dtype=np.int64)
    return _kernels.batch_min_weight(Xs, P, 8, X.shape[1] * 2 + 1)


FOUR_BLOCK = 343


def search_four_circulant(negacyclic=False, threads=None, checkpoint=None, stop_after=None):
    """Exhaustive four-(nega)circulant campaign over all 7^10 pairs (a, b).

    Work is split by the first row ``a`` into blocks of 343; blocks are the
    checkpoint unit. ``stop_after`` limits the number of blocks run in this
    call (for interrupt/resume).
    """
    construction = FOUR_NEGACIRCULANT if negacyclic else FOUR_CIRCULANT
    rows, M, pairs = four_circulant_pairs(negacyclic)
    nblocks = -(-len(rows) // FOUR_BLOCK)
    starts = np.searchsorted(pairs[:, 0], np.arange(nblocks + 1) * FOUR_BLOCK)

    def work(block):
        sel = pairs[starts[block] : starts[block + 1]]
        tallies = {"candidates": FOUR_BLOCK * len(rows) if block < nblocks - 1
                   else (len(rows) - FOUR_BLOCK * (nblocks - 1)) * len(rows),
                   "self_dual": len(sel)}
        if not len(sel):
            return tallies, [], 0
        d = _screen(_four_blocks(M, sel))
        tallies["d<=8"] = int(np.sum(d <= 8))
        tallies["d=9"] = int(np.sum(d >= 9))
        results = []
        failures = 0
        for (ia, ib), w in zip(sel, d):
            if w < 9:
                continue
            a, b = rows[ia].tolist(), rows[ib].tolist()
            C = codes.four_circulant(a, b, negacyclic)
            res, fail = analyse_hit(C, construction, {"a": a, "b": b}, w)
            failures += fail
            _bump(tallies, "d=9 with D20+" if res.lattice["is_d20_plus"] else "d=9 not D20+")
            results.append(res)
        return tallies, results, failures

    campaign = Campaign(construction)
    return _run_blocks(construction, campaign, nblocks, work, threads, checkpoint, stop_after)


# --- double circulant ----------------------------------------------------------


def double_circulant_rows(threads=None):
    """Every first row r in GF(7)^10 with R R^T = -I, sorted."""
    def work(first):
        return _kernels.double_circulant_scan(10, P, first, 2)

    threads = max(1, int(threads or default_threads()))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(work, range(P * P)))
    hits = np.sort(np.concatenate(parts))
    return [[int(v) // P ** (9 - i) % P for i in range(10)] for v in hits]


def autocorrelations(rows):
    """``sum_i r_i r_{i+s} mod 7`` for every row and shift ``s``."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    m = rows.shape[1]
    return np.stack([(rows * np.roll(rows, -s, axis=1)).sum(axis=1) % P for s in range(m)], axis=1)


def is_double_circulant_self_dual_row(rows):
    """R R^T = -I for each first row (vectorized over a batch)."""
    c = autocorrelations(rows)
    target = np.zeros(c.shape[1], dtype=np.int64)
    target[0] = P - 1
    return np.all(c == target, axis=1)


def search_double_circulant(mode="sample", count=100_000, seed=0, threads=None):
    """Double circulant campaign.

    ``mode="exhaustive"`` scans all 7^10 first rows with early-abort
    autocorrelation tests; ``mode="sample"`` tests ``count`` uniformly random
    rows drawn with ``seed``.
    """
    campaign = Campaign(DOUBLE_CIRCULANT)
    if mode == "exhaustive":
        hits = double_circulant_rows(threads)
        campaign.tallies["candidates"] = P**10
    elif mode == "sample":
        rng = np.random.default_rng(seed)
        sample = rng.integers(0, P, size=(count, 10))
        hits = [r.tolist() for r in sample[is_double_circulant_self_dual_row(sample)]]
        campaign.tallies["candidates"] = int(count)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    campaign.tallies["self_dual"] = len(hits)
    for r in hits:
        C = codes.double_circulant(r)
        w = codes.minimum_weight(C)
        _bump(campaign.tallies, "d=9" if w >= 9 else "d<=8")
        if w >= 9:
            res, fail = analyse_hit(C, DOUBLE_CIRCULANT, {"r": r}, w)
            campaign.lemma_failures += fail
            _merge(campaign, res)
    _sort_results(campaign)
    campaign.tallies["complete"] = 1
    return campaign


# --- neighbours ----------------------------------------------------------------


def _normalized_coset(C, x):
    v = C.coset_leader(x).astype(np.int64)
    nz = np.flatnonzero(v)
    if len(nz) == 0:
        return None
    inv = pow(int(v[nz[0]]), -1, P)
    return tuple(int(t) for t in v * inv % P)


def sample_isotropic(n, rng):
    while True:
        x = rng.integers(0, P, size=n)
        if x.any() and int(x @ x) % P == 0:
            return x


def search_neighbors(C, samples=1000, seed=0):
    """Neighbours ``C(x)`` of a self-dual code for seeded random isotropic x.

    Draws landing in C or in an already seen coset of C (up to scalars) are
    tallied and skipped: the isotropic vectors of a coset ``x + C`` are
    ``x + (C ∩ <x>^perp)``, and all of them give the same neighbour.
    Every neighbour gets its exact minimum weight; those of weight 8 or 9
    get lattice reports.
    """
    if not codes.is_self_dual(C):
        raise codes.CodeError("neighbour search needs a self-dual code")
    rng = np.random.default_rng(seed)
    campaign = Campaign(NEIGHBOR)
    seen = set()
    for _ in range(samples):
        x = sample_isotropic(C.n, rng)
        _bump(campaign.tallies, "samples")
        rep = _normalized_coset(C, x)
        if rep is None:
            _bump(campaign.tallies, "in_code")
            continue
        if rep in seen:
            _bump(campaign.tallies, "duplicate")
            continue
        seen.add(rep)
        N = codes.neighbor(C, x)
        if not codes.is_self_dual(N):
            _bump(campaign.tallies, "not_self_dual")
            continue
        _bump(campaign.tallies, "self_dual")
        w = codes.minimum_weight(N)
        _bump(campaign.tallies, f"d={w}")
        res, fail = analyse_hit(N, NEIGHBOR, {"x": [int(v) for v in x]}, w)
        campaign.lemma_failures += fail
        if w == 9:
            _bump(campaign.tallies, "d=9 with D20+" if res.lattice["is_d20_plus"] else "d=9 not D20+")
        _merge(campaign, res)
    _sort_results(campaign)
    campaign.tallies["complete"] = 1
    return campaign


# --- summary -------------------------------------------------------------------


def conjecture_ledger(results):
    """Summarize campaign results as evidence for uniqueness of QR20.

    ``results`` is an iterable of :class:`SearchResult` or :class:`Campaign`.
    A counterexample is a [20, 10, 9] result whose lattice is not D20+.
    """
    flat = []
    for item in results:
        flat.extend(item.results if isinstance(item, Campaign) else [item])
    d9 = [r for r in flat if r.min_weight == 9]
    if not d9:
        return {
            "verdict": "no evidence",
            "codes_examined": sum(r.count for r in flat),
            "d9_codes": 0,
            "counterexamples": [],
            "weight_enumerators": [],
        }
    bad = [r.to_dict() for r in d9 if not (r.lattice and r.lattice["kissing"] == lattice.D20_KISSING)]
    enumerators = sorted({tuple(r.weight_enumerator) for r in d9 if r.weight_enumerator})
    return {
        "verdict": "counterexample found" if bad else "no counterexample",
        "codes_examined": sum(r.count for r in flat),
        "d9_codes": sum(r.count for r in d9),
        "counterexamples": bad,
        "weight_enumerators": [list(w) for w in enumerators],
    }


def write_results(campaign, path):
    with open(path, "w") as fh:
        for r in campaign.results:
            fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")


def read_results(path):
    with open(path) as fh:
        return [SearchResult.from_dict(json.loads(line)) for line in fh if line.strip()]
