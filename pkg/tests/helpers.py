"""Independent oracles and generators shared by the test modules.

Nothing here goes through the package's kernels: products use a plain einsum
over the integer table and spans are enumerated by brute force.
"""
from __future__ import annotations

import itertools
import random

import numpy as np
import sympy

from intdecomp.algebra import StructureAlgebra
from intdecomp.constructors import (
    cyclic_group_table,
    direct_sum,
    group_algebra,
    integers,
    matrix_algebra,
    monogenic_ring,
    quaternion_algebra,
    triangular_algebra,
)


def mul(table, x, y, m):
    return np.einsum("i,j,ijl->l", x, y, table) % m


def elements(t, m):
    for coords in itertools.product(range(m), repeat=t):
        yield np.array(coords, dtype=np.int64)


def eval_poly(table, unity, coeffs, a, m):
    """``sum c_j a^j`` with algebra coefficients ``coeffs[j]`` on the left."""
    acc = np.zeros(len(unity), dtype=np.int64)
    power = np.asarray(unity) % m
    for c in coeffs:
        acc = (acc + mul(table, np.asarray(c), power, m)) % m
        power = mul(table, power, a, m)
    return acc


def eval_scalar(table, unity, coeffs, a, m):
    return eval_poly(table, unity, [c * np.asarray(unity) for c in coeffs], a, m)


def kills(A: StructureAlgebra, coeffs, m, scalar=True):
    f = eval_scalar if scalar else eval_poly
    return all(not f(A.table, A.unity, coeffs, a, m).any() for a in elements(A.rank, m))


def span_set(rows, m):
    """All Z/m-combinations of the rows (brute force)."""
    return _span_with_gens(rows, m)[0]


def _span_with_gens(rows, m):
    rows = [np.asarray(r, dtype=np.int64) % m for r in rows]
    cols = len(rows[0]) if rows else 0
    seen = {tuple([0] * cols)}
    used = []
    for r in rows:
        if tuple(r) in seen:
            continue
        used.append(r)
        seen = {tuple((np.array(s) + c * r) % m) for s in seen for c in range(m)}
    return seen, used


def kernel_set(M, m):
    M = np.asarray(M, dtype=np.int64)
    return {v for v in itertools.product(range(m), repeat=M.shape[0]) if not (np.array(v) @ M % m).any()}


def nilpotent_ideal(table, x, m, t):
    """Whether the two-sided ideal generated by ``x`` is nilpotent, by set iteration."""
    eye = np.eye(t, dtype=np.int64)
    zero = {tuple([0] * t)}
    gens = [mul(table, mul(table, eye[i], x, m), eye[j], m) for i in range(t) for j in range(t)]
    power, basis = _span_with_gens(gens, m)
    for _ in range(t + 2):
        if power == zero:
            return True
        prods = [mul(table, a, b, m) for a in basis for b in gens]
        power, basis = _span_with_gens(prods, m)
    return power == zero


# ---------------------------------------------------------------------------
# random algebras
# ---------------------------------------------------------------------------


def unimodular(t: int, rng: random.Random) -> sympy.Matrix:
    P = sympy.eye(t)
    for _ in range(2 * t):
        i, j = rng.sample(range(t), 2) if t > 1 else (0, 0)
        if i != j:
            P = P * _elementary(t, i, j, rng.choice([-2, -1, 1, 2]))
    if rng.random() < 0.5 and t > 1:
        i, j = rng.sample(range(t), 2)
        P = P.elementary_row_op("n<->m", row1=i, row2=j)
    return P


def _elementary(t, i, j, c):
    E = sympy.eye(t)
    E[i, j] = c
    return E


def base_change(A: StructureAlgebra, P: sympy.Matrix, name=None) -> StructureAlgebra:
    """Same algebra on the basis ``f_i = sum_a P[i, a] e_a``."""
    t = A.rank
    Pn = np.array(P.tolist(), dtype=np.int64)
    Q = np.array(P.inv().tolist(), dtype=np.int64)
    # f_i f_j in e-coordinates, then back to f-coordinates
    prod_e = np.einsum("ia,jb,abl->ijl", Pn, Pn, A.table)
    table = np.einsum("ijl,lm->ijm", prod_e, Q)
    unity = A.unity @ Q
    return StructureAlgebra(table, unity, name=name or f"{A.name} (rebased)", basis_names=tuple(f"f{i}" for i in range(t)))


def random_small_algebra(rng: random.Random) -> StructureAlgebra:
    """A validated algebra of rank <= 4 in a random integral basis."""
    kind = rng.choice(["mono", "mono", "m2", "t2", "quat", "group", "sum"])
    if kind == "mono":
        deg = rng.randint(1, 4)
        A = monogenic_ring([rng.randint(-3, 3) for _ in range(deg)] + [1])
    elif kind == "m2":
        A = matrix_algebra(2)
    elif kind == "t2":
        A = triangular_algebra(2)
    elif kind == "quat":
        A = quaternion_algebra()
    elif kind == "group":
        A = group_algebra(cyclic_group_table(rng.randint(2, 4)))
    else:
        left = monogenic_ring([rng.randint(-2, 2), 1]) if rng.random() < 0.5 else integers()
        right = monogenic_ring([rng.randint(-2, 2), rng.randint(-2, 2), 1])
        A = direct_sum(left, right)
    return base_change(A, unimodular(A.rank, rng))
