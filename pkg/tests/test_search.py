import itertools
import json

import numpy as np
import pytest

from sdcodes import _kernels, codes, lattice, search


# --- four-circulant ---------------------------------------------------------------


@pytest.mark.parametrize("negacyclic", [False, True])
def test_join_matches_direct_scan(negacyclic, rng):
    rows, M, pairs = search.four_circulant_pairs(negacyclic)
    assert len(rows) == 7**5
    gram = np.einsum("nij,nkj->nik", M, M) % 7
    joined = {}
    for a, b in pairs:
        joined.setdefault(int(a), set()).add(int(b))
    for a in rng.integers(0, len(rows), size=100):
        need = (-np.eye(5, dtype=np.int64) - gram[a]) % 7
        direct = set(np.flatnonzero(np.all(gram == need, axis=(1, 2))).tolist())
        assert joined.get(int(a), set()) == direct


def test_join_size():
    for neg in (False, True):
        assert len(search.four_circulant_pairs(neg)[2]) == 940800


def test_screen_matches_minimum_weight(rng):
    rows, M, pairs = search.four_circulant_pairs(False)
    sel = pairs[rng.integers(0, len(pairs), size=150)]
    d = search._screen(search._four_blocks(M, sel))
    for (a, b), w in zip(sel, d):
        C = codes.four_circulant(rows[a], rows[b])
        true_d = codes.minimum_weight(C)
        assert (w >= 9) == (true_d >= 9)
        assert w >= true_d


def test_four_blocks_match_constructor(rng):
    rows, M, pairs = search.four_circulant_pairs(True)
    sel = pairs[rng.integers(0, len(pairs), size=5)]
    X = search._four_blocks(M, sel)
    for (a, b), block in zip(sel, X):
        assert np.array_equal(block, codes.four_circulant_block(rows[a], rows[b], negacyclic=True))


def test_four_circulant_interrupt_and_resume(tmp_path):
    clean = search.search_four_circulant(False, threads=1, stop_after=2)
    ckpt = tmp_path / "fc.json"
    first = search.search_four_circulant(False, threads=1, checkpoint=ckpt, stop_after=1)
    assert first.tallies["complete"] == 0
    assert json.loads(ckpt.read_text())["prefix"] == 1
    resumed = search.search_four_circulant(False, threads=2, checkpoint=ckpt, stop_after=1)
    assert resumed.to_dict() == clean.to_dict()
    assert clean.tallies["d=9"] == len(clean.hits) > 0
    for r in clean.results:
        assert r.min_weight == 9 and r.lattice["kissing"] == 760


def test_checkpoint_rejects_other_campaign(tmp_path):
    ckpt = tmp_path / "c.json"
    search.save_checkpoint(ckpt, "other", 3, search.Campaign("other"))
    with pytest.raises(ValueError):
        search.load_checkpoint(ckpt, search.FOUR_CIRCULANT)


def _toy_work(block):
    # tallies and results depend only on the block index
    r = search.SearchResult("toy", {"block": block}, 9, [1, block % 3], {"min_norm": 2, "kissing": 760, "is_d20_plus": True})
    return {"seen": 1, "sum": block}, [r], 0


@pytest.mark.parametrize("threads", [1, 3])
def test_run_blocks_resume_at_random_prefixes(tmp_path, rng, threads):
    clean = search._run_blocks("toy", search.Campaign("toy"), 23, _toy_work, 1, None, None)
    for _ in range(5):
        ckpt = tmp_path / f"toy{rng.integers(1 << 30)}.json"
        cut = int(rng.integers(1, 23))
        search._run_blocks("toy", search.Campaign("toy"), 23, _toy_work, threads, ckpt, cut)
        resumed = search._run_blocks("toy", search.Campaign("toy"), 23, _toy_work, threads, ckpt, None)
        assert resumed.to_dict() == clean.to_dict()
    assert clean.tallies == {"seen": 23, "sum": sum(range(23)), "complete": 1}
    assert sorted(r.count for r in clean.results) == [7, 8, 8]
    assert len(clean.hits) == 23


# --- double circulant ------------------------------------------------------------------


def brute_dc_rows(m, p):
    out = []
    for r in itertools.product(range(p), repeat=m):
        r = np.array(r)
        c = [int((r * np.roll(r, -s)).sum()) % p for s in range(m)]
        if c == [p - 1] + [0] * (m - 1):
            out.append(r.tolist())
    return out


@pytest.mark.parametrize("m, p", [(4, 5), (6, 5), (4, 13), (4, 7)])
def test_double_circulant_kernel_matches_brute_force(m, p):
    hits = []
    for first in range(p):
        for v in _kernels.double_circulant_scan(m, p, first, 1):
            hits.append([int(v) // p ** (m - 1 - i) % p for i in range(m)])
    assert sorted(hits) == brute_dc_rows(m, p)
    if p % 4 == 1:
        assert hits


def test_double_circulant_exhaustive_has_no_self_dual_rows():
    campaign = search.search_double_circulant("exhaustive", threads=2)
    assert campaign.tallies == {"candidates": 7**10, "self_dual": 0, "complete": 1}
    assert campaign.results == []


def test_double_circulant_sample(rng):
    campaign = search.search_double_circulant("sample", count=20000, seed=3)
    assert campaign.tallies["candidates"] == 20000
    assert campaign.tallies["self_dual"] == 0
    rows = rng.integers(0, 7, size=(200, 10))
    flags = search.is_double_circulant_self_dual_row(rows)
    for r, f in zip(rows, flags):
        assert f == codes.is_self_dual(codes.double_circulant(r))
    with pytest.raises(ValueError):
        search.search_double_circulant("bogus")


# --- neighbours -------------------------------------------------------------------------


def test_neighbors_deterministic_and_consistent(qr20):
    a = search.search_neighbors(qr20, samples=150, seed=7)
    b = search.search_neighbors(qr20, samples=150, seed=7)
    assert a.to_dict() == b.to_dict()
    t = a.tallies
    assert t["samples"] == 150
    assert t.get("not_self_dual", 0) == 0
    assert t["self_dual"] + t.get("in_code", 0) + t.get("duplicate", 0) == 150
    assert sum(r.count for r in a.results) == t["self_dual"]
    for r in a.results:
        assert r.min_weight >= 1
        assert (r.lattice is not None) == (r.min_weight in (8, 9))
        x = np.array(r.parameters["x"])
        assert int(x @ x) % 7 == 0
        N = codes.neighbor(qr20, x)
        assert codes.minimum_weight(N) == r.min_weight


def test_neighbors_of_small_code_hit_duplicates():
    C = codes.LinearCode.from_generator([[1, 0, 2, 3], [0, 1, 4, 2]], 7)
    campaign = search.search_neighbors(C, samples=200, seed=1)
    t = campaign.tallies
    assert t.get("in_code", 0) + t.get("duplicate", 0) > 0


def test_neighbors_require_self_dual(qr20):
    half = codes.LinearCode.from_generator(qr20.generator[:5], 7)
    with pytest.raises(codes.CodeError):
        search.search_neighbors(half, samples=1)


def test_sample_isotropic(rng):
    for _ in range(20):
        x = search.sample_isotropic(20, rng)
        assert x.any() and int(x @ x) % 7 == 0


# --- ledger and I/O ------------------------------------------------------------------------


def _d9(kiss, we=(1, 0, 9)):
    report = lattice.LatticeReport(2, kiss, kiss == 760).to_dict()
    return search.SearchResult("four-circulant", {"a": [0] * 5, "b": [0] * 5}, 9, list(we), report)


def test_ledger_empty():
    assert search.conjecture_ledger([])["verdict"] == "no evidence"


def test_ledger_counterexample():
    summary = search.conjecture_ledger([_d9(760), _d9(752, (1, 0, 8))])
    assert summary["verdict"] == "counterexample found"
    assert len(summary["counterexamples"]) == 1
    assert summary["weight_enumerators"] == [[1, 0, 8], [1, 0, 9]]


def test_ledger_no_counterexample():
    campaign = search.Campaign("four-circulant", results=[_d9(760)])
    summary = search.conjecture_ledger([campaign])
    assert summary["verdict"] == "no counterexample" and summary["d9_codes"] == 1


def test_results_roundtrip(tmp_path):
    campaign = search.Campaign("four-circulant", results=[_d9(760), _d9(752)])
    path = tmp_path / "out.jsonl"
    search.write_results(campaign, path)
    assert len(path.read_text().splitlines()) == 2
    assert search.read_results(path) == campaign.results
