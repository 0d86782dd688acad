"""Compiled inner loops.

Every kernel is ``nogil`` so the thread pool in :mod:`sdcodes.enumerate`
runs them concurrently. Arguments are plain numpy arrays; codewords are
int64 vectors with entries in ``[0, p)``.
"""

import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def _add_row(cw, row, p):
    for i in range(cw.shape[0]):
        s = cw[i] + row[i]
        if s >= p:
            s -= p
        cw[i] = s


@njit(nogil=True, cache=True)
def _start_task(G, p, lead, depth, prefix):
    # codeword of the first message in a task: 1 at `lead`, then `depth`
    # prefix digits (most significant first), zeros after
    k, n = G.shape
    cw = G[lead].copy()
    code = prefix
    for j in range(depth - 1, -1, -1):
        d = code % p
        code //= p
        row = G[lead + 1 + j]
        for _ in range(d):
            _add_row(cw, row, p)
    return cw


@njit(nogil=True, cache=True)
def profile_histogram(G, p, contrib, tasks, hist_size):
    """Histogram of codeword profile indices over projective representatives.

    ``tasks`` rows are ``(lead, depth, prefix)``: messages whose first nonzero
    symbol is a 1 at ``lead``, followed by ``depth`` fixed digits encoded
    base-p in ``prefix``, with all later digits free. ``contrib[v]`` is the
    index stride added by a coordinate of value ``v``.
    """
    k, n = G.shape
    hist = np.zeros(hist_size, dtype=np.int64)
    for t in range(tasks.shape[0]):
        lead = tasks[t, 0]
        depth = tasks[t, 1]
        cw = _start_task(G, p, lead, depth, tasks[t, 2])
        free = lead + 1 + depth
        digits = np.zeros(k, dtype=np.int64)
        while True:
            idx = 0
            for i in range(n):
                idx += contrib[cw[i]]
            hist[idx] += 1
            pos = k - 1
            while pos >= free:
                _add_row(cw, G[pos], p)
                digits[pos] += 1
                if digits[pos] < p:
                    break
                digits[pos] = 0
                pos -= 1
            if pos < free:
                break
    return hist


@njit(nogil=True, cache=True)
def collect_codewords(G, p, contrib, tasks, wanted, capacity):
    """Projective representatives whose profile index is flagged in ``wanted``.

    Returns ``(count, buffer)``; when ``count > capacity`` the buffer holds
    only the first ``capacity`` hits and the caller must retry.
    """
    k, n = G.shape
    out = np.zeros((capacity, n), dtype=np.int64)
    count = 0
    for t in range(tasks.shape[0]):
        lead = tasks[t, 0]
        depth = tasks[t, 1]
        cw = _start_task(G, p, lead, depth, tasks[t, 2])
        free = lead + 1 + depth
        digits = np.zeros(k, dtype=np.int64)
        while True:
            idx = 0
            for i in range(n):
                idx += contrib[cw[i]]
            if wanted[idx]:
                if count < capacity:
                    out[count] = cw
                count += 1
            pos = k - 1
            while pos >= free:
                _add_row(cw, G[pos], p)
                digits[pos] += 1
                if digits[pos] < p:
                    break
                digits[pos] = 0
                pos -= 1
            if pos < free:
                break
    return count, out


@njit(nogil=True, cache=True)
def _scan_level(X, p, w, best, best_msg, stop_at):
    # Projective messages of Hamming weight exactly w against a systematic
    # generator (I | X); keeps the lightest codeword in best / best_msg.
    k, r = X.shape
    idx = np.arange(w)
    coef = np.ones(w, dtype=np.int64)
    v = np.zeros(r, dtype=np.int64)
    while True:
        v[:] = 0
        for t in range(w):
            coef[t] = 1
            _add_row(v, X[idx[t]], p)
        while True:
            wt = w
            for i in range(r):
                if v[i] != 0:
                    wt += 1
            if wt < best[0]:
                best[0] = wt
                best_msg[:] = 0
                for t in range(w):
                    best_msg[idx[t]] = coef[t]
                if wt <= stop_at:
                    return
            # first coefficient stays 1; p-1 -> 1 is a step of +2
            pos = w - 1
            while pos >= 1:
                _add_row(v, X[idx[pos]], p)
                if coef[pos] == p - 1:
                    coef[pos] = 1
                    _add_row(v, X[idx[pos]], p)
                    pos -= 1
                else:
                    coef[pos] += 1
                    break
            if pos < 1:
                break
        j = w - 1
        while j >= 0 and idx[j] == k - w + j:
            j -= 1
        if j < 0:
            return
        idx[j] += 1
        for t in range(j + 1, w):
            idx[t] = idx[t - 1] + 1


@njit(nogil=True, cache=True)
def min_weight_bz(Xs, p, stop_at, upper):
    """Brouwer-Zimmermann minimum weight over disjoint information sets.

    ``Xs[j]`` is the redundancy part of a generator systematic on the j-th
    information set. Returns ``(weight, info_set, message)`` for the lightest
    codeword found. Stops once a codeword of weight ``<= stop_at`` turns up
    or the lower bound reaches the best weight seen.
    """
    m, k = Xs.shape[0], Xs.shape[1]
    best = np.array([upper], dtype=np.int64)
    best_set = -1
    best_msg = np.zeros(k, dtype=np.int64)
    msg = np.zeros(k, dtype=np.int64)
    for w in range(1, k + 1):
        for j in range(m):
            before = best[0]
            _scan_level(Xs[j], p, w, best, msg, stop_at)
            if best[0] < before:
                best_set = j
                best_msg[:] = msg
            if best[0] <= stop_at:
                return best[0], best_set, best_msg
            if (j + 1) * (w + 1) + (m - j - 1) * w >= best[0]:
                return best[0], best_set, best_msg
    return best[0], best_set, best_msg


@njit(nogil=True, cache=True)
def split_cost_histogram(X, Y, p, mu, bound, out, collect_cost):
    """Histogram of codeword cost ``sum(mu[c_i])`` for every cost ``<= bound``.

    L and R are complementary information sets with generators ``(I | X)``
    on (L, R) and ``(I | Y)`` on (R, L). A codeword of cost ``<= bound`` has
    cost ``<= bound // 2`` on L (first pass) or else cost
    ``< bound - bound // 2`` on R (second pass), so each is seen once.
    All nonzero messages within the per-pass cost cap are visited, depth
    first with pruning. Codewords of cost ``collect_cost`` are written to
    ``out`` as (L-part, R-part) rows while capacity lasts.
    """
    k, r = X.shape
    half = bound // 2
    hist = np.zeros(bound + 1, dtype=np.int64)
    nout = 0
    msg = np.zeros(k, dtype=np.int64)
    v = np.zeros(r, dtype=np.int64)
    partial = np.zeros(k + 1, dtype=np.int64)
    for side in range(2):
        M = X if side == 0 else Y
        cap = half if side == 0 else bound - half - 1
        msg[:] = 0
        v[:] = 0
        partial[:] = 0
        pos = k - 1
        while True:
            cost = 0
            advanced = False
            while pos >= 0:
                _add_row(v, M[pos], p)
                msg[pos] += 1
                if msg[pos] == p:
                    msg[pos] = 0
                    pos -= 1
                    continue
                cost = partial[pos] + mu[msg[pos]]
                if cost <= cap:
                    for q in range(pos + 1, k + 1):
                        partial[q] = cost
                    advanced = True
                    break
            if not advanced:
                break
            other = _mu_norm(v, mu)
            total = cost + other
            if total <= bound and (side == 0 or other > half):
                hist[total] += 1
                if total == collect_cost:
                    if nout < out.shape[0]:
                        if side == 0:
                            out[nout, :k] = msg
                            out[nout, k:] = v
                        else:
                            out[nout, :k] = v
                            out[nout, k:] = msg
                    nout += 1
            pos = k - 1
    return hist


@njit(nogil=True, cache=True)
def _mu_norm(v, mu):
    s = 0
    for i in range(v.shape[0]):
        s += mu[v[i]]
    return s


@njit(nogil=True, cache=True)
def batch_min_weight(Xs, p, stop_at, upper):
    """:func:`min_weight_bz` over a batch ``Xs[c]`` of information-set stacks."""
    out = np.zeros(Xs.shape[0], dtype=np.int64)
    for c in range(Xs.shape[0]):
        w, _, _ = min_weight_bz(Xs[c], p, stop_at, upper)
        out[c] = w
    return out


@njit(nogil=True, cache=True)
def double_circulant_scan(m, p, first_digits, nfirst):
    """First rows r of length m with ``R R^T = -I`` (R circulant), i.e.
    ``sum_i r_i r_{i+s}`` equal to ``p - 1`` for s = 0 and to 0 otherwise.

    Scans the rows whose leading ``nfirst`` digits (base p, most significant
    first) equal ``first_digits``; later digits run over all of GF(p).
    Returns the hits encoded base p, most significant digit first.
    """
    r = np.zeros(m, dtype=np.int64)
    code = first_digits
    for j in range(nfirst - 1, -1, -1):
        r[j] = code % p
        code //= p
    hits = []
    while True:
        ok = True
        for s in range(m // 2 + 1):
            acc = 0
            for i in range(m):
                acc += r[i] * r[(i + s) % m]
            acc %= p
            if acc != (p - 1 if s == 0 else 0):
                ok = False
                break
        if ok:
            v = 0
            for i in range(m):
                v = v * p + r[i]
            hits.append(v)
        pos = m - 1
        while pos >= nfirst:
            r[pos] += 1
            if r[pos] < p:
                break
            r[pos] = 0
            pos -= 1
        if pos < nfirst:
            break
    out = np.zeros(len(hits), dtype=np.int64)
    for i in range(len(hits)):
        out[i] = hits[i]
    return out
