import itertools

import numpy as np
import pytest

from helpers import elements, eval_poly, kills
from intdecomp.algebra import reduce_mod
from intdecomp.constructors import direct_sum, fixture, fixture_names, integers, matrix_algebra
from intdecomp.ivp import (
    int_module_basis,
    intk_equals_intd,
    legendre_valuation,
    nu_sequence,
    verify_phi,
)
from intdecomp.null_ideals import AlgebraPoly, full_null_ideal, is_N_decomposable
from intdecomp.decide import decide_at_prime


def test_integers_nu_mod_two():
    nu, basis = nu_sequence(integers(), 2, 4)
    assert nu.nu == (0, 0, 1, 1, 3)
    assert nu.saturated == (False, False, False, False, False)
    for j, g in enumerate(basis.polys):
        assert len(g) == j + 1 and g[-1] == 1


def test_integers_witnesses_are_falling_factorials_mod_denominator():
    _, basis = nu_sequence(integers(), 2, 4)
    for j, g in enumerate(basis.polys):
        m = basis.denominator(j)
        for a in range(3 * m):
            falling = int(np.prod([a - i for i in range(j)])) if j else 1
            value = sum(c * a**i for i, c in enumerate(g))
            assert value % m == 0 and falling % m == 0


@pytest.mark.parametrize("p,K", [(2, 8), (3, 3)])
def test_legendre_oracle(p, K):
    nu, _ = nu_sequence(integers(), p, 8, K_max=K)
    expected = tuple(min(legendre_valuation(j, p), K) for j in range(9))
    assert nu.nu == expected


def test_legendre_formula_itself():
    import math

    for p in (2, 3, 5):
        for j in range(30):
            f, v = math.factorial(j), 0
            while f % p == 0:
                f //= p
                v += 1
            assert legendre_valuation(j, p) == v


def test_gaussian_nu_two_is_zero():
    nu, _ = nu_sequence(fixture("gaussian"), 2, 2)
    assert nu.nu[2] == 0
    # no monic quadratic over F_2 kills Z[i]/2
    A = fixture("gaussian")
    assert not any(kills(A, [a, b, 1], 2) for a, b in itertools.product(range(2), repeat=2))


def test_matrix_first_nonzero_nu():
    nu, _ = nu_sequence(matrix_algebra(2), 2, 8, K_max=2)
    first = next(j for j, v in enumerate(nu.nu) if v)
    assert first == 6
    M = matrix_algebra(2)
    brute = next(
        deg for deg in range(9) if any(kills(M, list(low) + [1], 2) for low in itertools.product(range(2), repeat=deg))
    )
    assert brute == first


@pytest.mark.parametrize("name", ["z", "gaussian", "golden", "zc2", "t2z", "quaternion"])
@pytest.mark.parametrize("p", [2, 3])
def test_witness_soundness_and_maximality(name, p):
    A = fixture(name)
    K = 2
    nu, basis = nu_sequence(A, p, 5, K_max=K)
    assert nu.nu[0] == 0 and nu.nu[1] == 0
    for j, e in enumerate(nu.nu):
        g = basis.polys[j]
        m = p**e
        if e:
            assert kills(A, g, m)
        if e < K:
            # no monic degree-j polynomial reaches level e + 1
            mm = p ** (e + 1)
            if mm**j <= 4096:
                assert not any(kills(A, list(low) + [1], mm) for low in itertools.product(range(mm), repeat=j))


def test_saturation_flag():
    nu, _ = nu_sequence(integers(), 2, 4, K_max=1)
    assert nu.nu == (0, 0, 1, 1, 1)
    assert nu.saturated == (False, False, True, True, True)


def test_int_module_basis_examples():
    assert int_module_basis(integers(), 3, 4, 1).basis == full_null_ideal(reduce_mod(integers(), 3, 1), 4).basis
    G = int_module_basis(fixture("gaussian"), 2, 2, 1)
    assert G.contains([0, 0, 1, 1, 1, 1])
    assert int_module_basis(matrix_algebra(2), 2, 6, 1).rank > 0
    assert int_module_basis(matrix_algebra(2), 2, 5, 1).rank == 0  # nothing below the minimal null degree


def test_gaussian_phi_fails_with_witness():
    res = verify_phi(fixture("gaussian"), 2, 4, 1)
    assert not res.ok
    assert res.witness == AlgebraPoly.from_flat([0, 0, 1, 1, 1, 1], 2, 2)
    assert res.lemma_levels == (False,)


@pytest.mark.parametrize("d,k", [(d, k) for d in range(7) for k in (1, 2)])
def test_matrix_phi_holds(d, k):
    assert verify_phi(matrix_algebra(2), 2, d, k).ok


@pytest.mark.parametrize("p,d,k", [(2, 4, 3), (3, 6, 2), (5, 5, 1)])
def test_integers_phi_trivially_holds(p, d, k):
    assert verify_phi(integers(), p, d, k).ok


@pytest.mark.parametrize("name", fixture_names())
def test_lemma_coherence(name):
    A = fixture(name)
    for p in (2, 3):
        if reduce_mod(A, p, 1).size ** 2 > 10**6:
            continue
        for k in (1, 2):
            res = verify_phi(A, p, 4, k)
            levels = tuple(is_N_decomposable(reduce_mod(A, p, kk), 4).decomposable for kk in range(1, k + 1))
            assert res.lemma_levels == levels
            assert res.ok == all(levels)


def test_phi_witness_lies_in_int():
    A = fixture("zc2")
    res = verify_phi(A, 2, 4, 2)
    assert not res.ok
    w = res.witness.coeffs
    assert all(not eval_poly(A.table, A.unity, w, a, 4).any() for a in elements(2, 4))


def test_intk_examples():
    zz = direct_sum(integers(), integers())
    for p in (2, 3, 5, 7):
        chk = intk_equals_intd(zz, p)
        assert chk.equal and chk.nu_matches
    g = fixture("gaussian")
    assert intk_equals_intd(g, 5).equal
    assert not intk_equals_intd(g, 2).equal
    for p in (3, 7, 11):
        chk = intk_equals_intd(g, p)
        assert not chk.equal and chk.profile_components == ((p * p, 1),)
    assert not any(intk_equals_intd(matrix_algebra(2), p).equal for p in (2, 3, 5))


@pytest.mark.parametrize("name", fixture_names())
def test_split_implies_decomposable(name):
    A = fixture(name)
    for p in (2, 3):
        if reduce_mod(A, p, 1).size > 10**4:
            continue
        if intk_equals_intd(A, p, K_max=2).equal:
            assert decide_at_prime(A, p).decomposable
            assert verify_phi(A, p, 4, 1).ok
