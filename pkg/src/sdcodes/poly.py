"""Dense polynomials over GF(p), coefficient lists lowest degree first."""

import itertools


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def divmod_poly(f, g, p):
    """Quotient and remainder of ``f / g``; ``g`` must be nonzero."""
    g = trim(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = trim([c % p for c in f])
    inv = pow(int(g[-1]), -1, p)
    q = [0] * max(0, len(r) - len(g) + 1)
    while len(r) >= len(g):
        shift = len(r) - len(g)
        c = r[-1] * inv % p
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = (r[shift + i] - c * b) % p
        r = trim(r)
    return trim(q), r


def monic(degree, p):
    """All monic polynomials of the given degree."""
    for tail in itertools.product(range(p), repeat=degree):
        yield list(tail) + [1]


def x_power_minus_one(n, p):
    return [p - 1] + [0] * (n - 1) + [1]


def add(f, g, p):
    if len(f) < len(g):
        f, g = g, f
    return trim([(a + (g[i] if i < len(g) else 0)) % p for i, a in enumerate(f)])


def evaluate_mod(f, x, modulus, p):
    """``f(x) mod modulus`` by Horner's rule; ``x`` is itself a polynomial."""
    acc = []
    for c in reversed(f):
        acc = divmod_poly(add(mul(acc, x, p), [c], p), modulus, p)[1]
    return acc


def power_mod(base, e, modulus, p):
    result = [1]
    b = divmod_poly(base, modulus, p)[1]
    while e:
        if e & 1:
            result = divmod_poly(mul(result, b, p), modulus, p)[1]
        b = divmod_poly(mul(b, b, p), modulus, p)[1]
        e >>= 1
    return result
