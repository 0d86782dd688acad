"""Parallel codeword enumeration over projective representatives.

The message space is cut into tasks: a leading 1 at position ``lead``,
zeros before it, and up to ``SPLIT_DEPTH`` fixed digits after it. Workers
take interleaved slices of the task list and each returns a private
histogram; the merge is a plain sum, so results do not depend on the
number of threads.
"""

import itertools
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels

SPLIT_DEPTH = 3
# largest p^k we are willing to walk (7^10 is ~2.8e8)
MAX_LOG2_SIZE = 36


class EnumerationTooLarge(ValueError):
    pass


def default_threads():
    return os.cpu_count() or 1


def check_size(p, k):
    if k * np.log2(p) > MAX_LOG2_SIZE:
        raise EnumerationTooLarge(
            f"enumerating {p}^{k} codewords is too large (limit 2^{MAX_LOG2_SIZE})"
        )


def make_tasks(k, p, depth=SPLIT_DEPTH):
    rows = []
    for lead in range(k):
        d = min(depth, k - 1 - lead)
        for prefix in range(p**d):
            rows.append((lead, d, prefix))
    return np.array(rows, dtype=np.int64).reshape(-1, 3)


class Profile:
    """Coordinate classes used to bucket codewords.

    Values ``v`` and ``p - v`` share a class, so a codeword's profile is the
    count of coordinates in each class. That is the symmetrized weight
    enumerator; multiplying a codeword by a scalar permutes the classes.
    When the histogram would be too big the profile collapses to plain
    Hamming weight.
    """

    MAX_CELLS = 1 << 20

    def __init__(self, p, n):
        self.p = p
        self.n = n
        ncls = max(1, (p - 1) // 2)
        if (n + 1) ** ncls > self.MAX_CELLS:
            ncls = 1
        self.ncls = ncls
        if ncls == 1:
            self.class_of = np.array([0] + [1] * (p - 1), dtype=np.int64)
        else:
            self.class_of = np.array([min(v, p - v) for v in range(p)], dtype=np.int64)
        strides = [(n + 1) ** (ncls - c) for c in range(1, ncls + 1)]
        self.contrib = np.array(
            [0 if c == 0 else strides[c - 1] for c in self.class_of], dtype=np.int64
        )
        self.shape = (n + 1,) * ncls
        self.size = (n + 1) ** ncls

    def scalar_permutation(self, s):
        """Class map ``c -> class(s * c)`` as a tuple indexed by class - 1."""
        if self.ncls == 1:
            return (0,)
        return tuple(self.class_of[(s * c) % self.p] - 1 for c in range(1, self.ncls + 1))

    def expand_scalars(self, rep_hist):
        """Turn a histogram over projective representatives into one over all
        nonzero codewords."""
        rep = rep_hist.reshape(self.shape)
        full = np.zeros(self.shape, dtype=np.int64)
        if self.ncls == 1:
            return rep * (self.p - 1)
        for s in range(1, self.p):
            perm = self.scalar_permutation(s)
            # counts in class c of a representative land in class perm[c]
            full += np.transpose(rep, np.argsort(perm))
        return full

    def weights(self):
        grids = np.indices(self.shape)
        return grids.sum(axis=0)


def _run_pool(fn, tasks, threads):
    threads = max(1, int(threads or default_threads()))
    chunks = [tasks[i::threads] for i in range(threads)]
    chunks = [c for c in chunks if len(c)]
    if len(chunks) == 1:
        return [fn(chunks[0])]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        return list(pool.map(fn, chunks))


def representative_histogram(G, p, profile, threads=None):
    """Profile histogram over one representative per scalar class."""
    G = np.ascontiguousarray(G, dtype=np.int64)
    k = G.shape[0]
    check_size(p, k)
    if k == 0:
        return np.zeros(profile.size, dtype=np.int64)
    tasks = make_tasks(k, p)
    parts = _run_pool(
        lambda chunk: _kernels.profile_histogram(G, p, profile.contrib, chunk, profile.size),
        tasks,
        threads,
    )
    return np.sum(parts, axis=0)


def profile_enumerator(G, p, threads=None):
    """Full profile histogram (all nonzero codewords) and its :class:`Profile`."""
    G = np.asarray(G)
    profile = Profile(p, G.shape[1])
    rep = representative_histogram(G, p, profile, threads)
    return profile.expand_scalars(rep), profile


def collect_representatives(G, p, profile, wanted, expected, threads=None):
    """All representatives whose profile index is flagged in ``wanted``.

    ``expected`` is the exact hit count (known from a prior histogram); it
    sizes the per-worker buffers. Rows come back sorted.
    """
    G = np.ascontiguousarray(G, dtype=np.int64)
    tasks = make_tasks(G.shape[0], p)
    wanted = np.ascontiguousarray(wanted, dtype=np.bool_)
    cap = max(1, int(expected))

    def work(chunk):
        count, buf = _kernels.collect_codewords(G, p, profile.contrib, chunk, wanted, cap)
        if count > cap:
            raise RuntimeError("codeword buffer overflow")
        return buf[:count]

    parts = _run_pool(work, tasks, threads)
    rows = np.concatenate(parts) if parts else np.zeros((0, G.shape[1]), dtype=np.int64)
    if len(rows) != expected:
        raise RuntimeError(f"collected {len(rows)} codewords, expected {expected}")
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def naive_codewords(G, p):
    """Every codeword, by looping over all p^k messages (test oracle)."""
    G = np.asarray(G, dtype=np.int64)
    k = G.shape[0]
    for msg in itertools.product(range(p), repeat=k):
        yield np.asarray(msg, dtype=np.int64) @ G % p
