"""Univariate polynomials over F_p and Berlekamp factorisation.

Polynomials are lists of ints in ``[0, p)``, ascending degree, with no trailing
zeros; the zero polynomial is ``[]``.
"""
from __future__ import annotations

import random

import numpy as np

from .zmod import ModMatrix, check_prime_power, kernel


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def normalize(f, p):
    return trim([int(c) % p for c in f])


def degree(f) -> int:
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def sub(f, g, p):
    return add(f, [(-c) % p for c in g], p)


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def scale(f, c, p):
    return trim([(a * c) % p for a in f])


def monic(f, p):
    if not f:
        return []
    return scale(f, pow(f[-1], -1, p), p)


def divmod_poly(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g) and f:
        c = (f[-1] * inv) % p
        shift = len(f) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        f = trim(f)
    return trim(q), f


def mod(f, g, p):
    return divmod_poly(f, g, p)[1]


def gcd(f, g, p):
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def powmod(f, e, g, p):
    result = [1]
    base = mod(f, g, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), g, p)
        base = mod(mul(base, base, p), g, p)
        e >>= 1
    return result


def derivative(f, p):
    return trim([(i * c) % p for i, c in enumerate(f)][1:])


def evaluate(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _pth_root(f, p):
    # f(X) = g(X^p); coefficients are fixed by Frobenius on F_p
    return trim(f[::p])


def squarefree_decomposition(f, p):
    """Pairs ``(g, e)`` with ``f = lc * prod g**e`` and each ``g`` squarefree."""
    f = monic(normalize(f, p), p)
    if degree(f) < 1:
        return []
    out: dict[tuple, int] = {}

    def rec(h, mult):
        if degree(h) < 1:
            return
        d = derivative(h, p)
        if not d:
            rec(_pth_root(h, p), mult * p)
            return
        c = gcd(h, d, p)
        w = divmod_poly(h, c, p)[0]
        i = 1
        while degree(w) >= 1:
            y = gcd(w, c, p)
            z = divmod_poly(w, y, p)[0]
            if degree(z) >= 1:
                key = tuple(z)
                out[key] = out.get(key, 0) + i * mult
            w = y
            c = divmod_poly(c, y, p)[0]
            i += 1
        if degree(c) >= 1:
            rec(_pth_root(c, p), mult * p)

    rec(f, 1)
    return [(list(g), e) for g, e in out.items()]


def berlekamp_basis(f, p):
    """Basis of ``{g mod f : g^p = g mod f}`` as polynomials (f squarefree, monic)."""
    n = degree(f)
    q = np.zeros((n, n), dtype=np.int64)
    xp = powmod([0, 1], p, f, p)
    row = [1]
    for i in range(n):
        for j, c in enumerate(row):
            q[i, j] = c
        row = mod(mul(row, xp, p), f, p)
    q = (q - np.eye(n, dtype=np.int64)) % p
    ker = kernel(ModMatrix(q, p, 1))
    return [trim([int(c) for c in r]) for r in ker.entries]


def _split_squarefree(f, p, rng):
    n = degree(f)
    if n <= 1:
        return [f]
    basis = berlekamp_basis(f, p)
    r = len(basis)
    if r == 1:
        return [f]
    factors = [f]
    if p <= 64:
        for v in basis:
            if degree(v) < 1:
                continue
            nxt = []
            for h in factors:
                if degree(h) <= 1:
                    nxt.append(h)
                    continue
                for s in range(p):
                    g = gcd(h, sub(v, [s], p), p)
                    if degree(g) >= 1:
                        nxt.append(g)
            factors = nxt
            if len(factors) == r:
                break
    else:
        while len(factors) < r:
            v = [0]
            for b in basis:
                v = add(v, scale(b, rng.randrange(p), p), p)
            w = sub(powmod(v, (p - 1) // 2, f, p), [1], p) if p > 2 else v
            nxt = []
            for h in factors:
                g = gcd(h, w, p)
                if 1 <= degree(g) < degree(h):
                    nxt.extend([g, divmod_poly(h, g, p)[0]])
                else:
                    nxt.append(h)
            factors = nxt
    if len(factors) != r:
        raise AssertionError(f"Berlekamp found {len(factors)} factors, expected {r}")
    return [monic(g, p) for g in factors]


def factor(f, p, seed: int = 0):
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    check_prime_power(p, 1)
    rng = random.Random(seed)
    out = []
    for g, e in squarefree_decomposition(f, p):
        for h in _split_squarefree(g, p, rng):
            out.append((h, e))
    out.sort(key=lambda fe: (len(fe[0]), fe[0][::-1], fe[1]))
    return out


def is_irreducible(f, p) -> bool:
    fs = factor(f, p)
    return len(fs) == 1 and fs[0][1] == 1


def roots(f, p, seed: int = 0):
    return sorted((-g[0]) % p for g, _ in factor(f, p, seed) if degree(g) == 1)
