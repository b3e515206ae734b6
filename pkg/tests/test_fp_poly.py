import random

import pytest
import sympy

from intdecomp import fp_poly as fp

X = sympy.Symbol("X")


def sympy_factor(f, p):
    poly = sympy.Poly(list(reversed(f)), X, modulus=p)
    _, facs = poly.factor_list()
    out = []
    for g, e in facs:
        coeffs = [int(c) % p for c in reversed(g.all_coeffs())]
        out.append((fp.monic(fp.trim(coeffs), p), e))
    out.sort(key=lambda fe: (len(fe[0]), fe[0][::-1], fe[1]))
    return out


def expand(factors, p):
    acc = [1]
    for g, e in factors:
        for _ in range(e):
            acc = fp.mul(acc, g, p)
    return acc


def test_gaussian_polynomial_splits_mod_5():
    assert fp.factor([1, 0, 1], 5) == [([2, 1], 1), ([3, 1], 1)]
    assert fp.roots([1, 0, 1], 5) == [2, 3]


def test_gaussian_polynomial_inert_mod_3():
    assert fp.is_irreducible([1, 0, 1], 3)


def test_golden_polynomial_ramified_mod_5():
    assert fp.factor([-1, -1, 1], 5) == [([2, 1], 2)]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13, 67, 101])
def test_factor_agrees_with_sympy(p):
    rng = random.Random(p)
    for _ in range(40):
        deg = rng.randint(1, 9)
        f = [rng.randrange(p) for _ in range(deg)] + [1]
        if rng.random() < 0.3:
            f = fp.mul(f, f, p)
        ours = fp.factor(f, p)
        assert ours == sympy_factor(f, p)
        assert expand(ours, p) == fp.monic(fp.normalize(f, p), p)
        assert all(fp.is_irreducible(g, p) for g, _ in ours)


def test_divmod_roundtrip():
    p = 7
    rng = random.Random(1)
    for _ in range(100):
        f = fp.normalize([rng.randrange(p) for _ in range(rng.randint(0, 8))], p)
        g = fp.normalize([rng.randrange(p) for _ in range(rng.randint(1, 5))] + [rng.randrange(1, p)], p)
        q, r = fp.divmod_poly(f, g, p)
        assert fp.add(fp.mul(q, g, p), r, p) == f
        assert fp.degree(r) < fp.degree(g)


def test_pth_power_squarefree_part():
    p = 3
    f = fp.mul(fp.powmod([1, 1], 3, [0] * 10 + [1], p), [1, 0, 1], p)  # (X+1)^3 (X^2+1)
    dec = dict((tuple(g), e) for g, e in fp.squarefree_decomposition(f, p))
    assert dec == {(1, 1): 3, (1, 0, 1): 1}
