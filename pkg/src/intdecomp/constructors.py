"""Standard algebras and the bundled fixture catalogue.

Basis orderings (fixed, golden files depend on them):

* ``matrix_algebra(n)``: matrix units ``E_ab`` row-major, index ``a*n + b``.
* ``triangular_algebra(n)``: ``E_ab`` with ``a <= b``, row-major.
* ``quaternion_algebra()``: ``1, i, j, k``.
* ``group_algebra(table)``: group elements in input order.
* ``monogenic_ring(m)``: powers ``1, x, ..., x^(t-1)`` of the class of X.
* ``direct_sum(A, B)``: basis of A followed by basis of B.
"""
from __future__ import annotations

import itertools

import numpy as np

from .algebra import InvalidAlgebraError, StructureAlgebra


def _unit_names(n: int, pairs) -> tuple[str, ...]:
    if n < 10:
        return tuple(f"E{a + 1}{b + 1}" for a, b in pairs)
    return tuple(f"E{a + 1}_{b + 1}" for a, b in pairs)


def integers() -> StructureAlgebra:
    return StructureAlgebra(
        [[[1]]],
        [1],
        name="Z",
        basis_names=("1",),
        certificate={"kind": "matrix_sum", "n": 1, "copies": 1},
    )


def matrix_algebra(n: int) -> StructureAlgebra:
    if n <= 0:
        raise ValueError(f"matrix size must be positive, got {n}")
    if n == 1:
        return integers()
    t = n * n
    table = np.zeros((t, t, t), dtype=np.int64)
    for a, b, d in itertools.product(range(n), repeat=3):
        # E_ab E_bd = E_ad
        table[a * n + b, b * n + d, a * n + d] = 1
    unity = np.zeros(t, dtype=np.int64)
    unity[[a * n + a for a in range(n)]] = 1
    pairs = [(a, b) for a in range(n) for b in range(n)]
    return StructureAlgebra(
        table,
        unity,
        name=f"M_{n}(Z)",
        basis_names=_unit_names(n, pairs),
        certificate={"kind": "matrix_sum", "n": n, "copies": 1},
    )


def triangular_algebra(n: int) -> StructureAlgebra:
    if n <= 0:
        raise ValueError(f"matrix size must be positive, got {n}")
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    index = {pr: i for i, pr in enumerate(pairs)}
    t = len(pairs)
    table = np.zeros((t, t, t), dtype=np.int64)
    for (a, b), i in index.items():
        for (c, d), j in index.items():
            if b == c:
                table[i, j, index[(a, d)]] = 1
    unity = np.zeros(t, dtype=np.int64)
    unity[[index[(a, a)] for a in range(n)]] = 1
    return StructureAlgebra(table, unity, name=f"T_{n}(Z)", basis_names=_unit_names(n, pairs))


def quaternion_algebra() -> StructureAlgebra:
    # signed products of 1, i, j, k
    rules = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }  # fmt: skip
    table = np.zeros((4, 4, 4), dtype=np.int64)
    for (a, b), (sign, c) in rules.items():
        table[a, b, c] = sign
    return StructureAlgebra(table, [1, 0, 0, 0], name="Lipschitz quaternions", basis_names=("1", "i", "j", "k"))


def _check_group(table) -> int:
    g = np.asarray(table, dtype=np.int64)
    n = g.shape[0]
    if g.shape != (n, n) or n == 0 or g.min() < 0 or g.max() >= n:
        raise InvalidAlgebraError("group table must be an n x n array with entries in range(n)")
    if any(sorted(row) != list(range(n)) for row in g.tolist()) or any(
        sorted(col) != list(range(n)) for col in g.T.tolist()
    ):
        raise InvalidAlgebraError("group table is not a Latin square")
    ids = [e for e in range(n) if (g[e] == np.arange(n)).all() and (g[:, e] == np.arange(n)).all()]
    if not ids:
        raise InvalidAlgebraError("group table has no identity")
    if not (g[g, :] == g[:, g]).all():
        raise InvalidAlgebraError("group table is not associative")
    return ids[0]


def group_algebra(table, name: str = "ZG", element_names=None) -> StructureAlgebra:
    """Integral group ring from a Cayley table ``table[g][h] = index of g*h``."""
    e = _check_group(table)
    g = np.asarray(table, dtype=np.int64)
    n = g.shape[0]
    c = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            c[a, b, g[a, b]] = 1
    unity = np.zeros(n, dtype=np.int64)
    unity[e] = 1
    names = tuple(element_names) if element_names else tuple(f"g{i}" for i in range(n))
    return StructureAlgebra(c, unity, name=name, basis_names=names)


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def permutation_group_table(perms) -> list[list[int]]:
    """Cayley table of permutations under ``(g*h)(x) = g(h(x))``."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(g[h[x]] for x in range(len(g)))] for h in perms] for g in perms]


S3_PERMUTATIONS = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]
S3_NAMES = ("e", "r", "r2", "s", "sr", "sr2")


def monogenic_ring(poly, name: str | None = None, var: str = "x") -> StructureAlgebra:
    """``Z[X]/(m)`` for monic ``m`` given by ascending integer coefficients."""
    m = [int(c) for c in poly]
    while len(m) > 1 and m[-1] == 0:
        m.pop()
    if len(m) < 2 or m[-1] != 1:
        raise InvalidAlgebraError(f"polynomial {poly} is not monic of positive degree")
    t = len(m) - 1
    # rows: X^s reduced, for s < 2t - 1
    powers = []
    for s in range(2 * t - 1):
        if s < t:
            v = [0] * t
            v[s] = 1
        else:
            prev = powers[-1]
            top = prev[-1]
            v = [0] + prev[:-1]
            v = [v[i] - top * m[i] for i in range(t)]
        powers.append(v)
    table = np.zeros((t, t, t), dtype=np.int64)
    for i in range(t):
        for j in range(t):
            table[i, j] = powers[i + j]
    unity = [1] + [0] * (t - 1)
    names = ("1",) + tuple(var if s == 1 else f"{var}^{s}" for s in range(1, t))
    return StructureAlgebra(
        table,
        unity,
        name=name or f"Z[X]/({_poly_text(m)})",
        basis_names=names,
        certificate={"kind": "monogenic", "poly": m},
    )


def _poly_text(m) -> str:
    terms = []
    for s in range(len(m) - 1, -1, -1):
        c = m[s]
        if c == 0:
            continue
        mono = "" if s == 0 else ("X" if s == 1 else f"X^{s}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def direct_sum(A: StructureAlgebra, B: StructureAlgebra, name: str | None = None) -> StructureAlgebra:
    ta, tb = A.rank, B.rank
    t = ta + tb
    table = np.zeros((t, t, t), dtype=np.int64)
    table[:ta, :ta, :ta] = A.table
    table[ta:, ta:, ta:] = B.table
    unity = np.concatenate([A.unity, B.unity])
    na, nb = list(A.basis_names), list(B.basis_names)
    if set(na) & set(nb):
        na = [f"({x},0)" for x in na]
        nb = [f"(0,{x})" for x in nb]
    cert = None
    ca, cb = A.certificate or {}, B.certificate or {}
    if ca.get("kind") == "matrix_sum" and cb.get("kind") == "matrix_sum" and ca["n"] == cb["n"]:
        cert = {"kind": "matrix_sum", "n": ca["n"], "copies": ca["copies"] + cb["copies"]}
    return StructureAlgebra(
        table,
        unity,
        name=name or f"{A.name} + {B.name}",
        standard_assumptions=A.standard_assumptions and B.standard_assumptions,
        basis_names=tuple(na + nb),
        certificate=cert,
    )


# ---------------------------------------------------------------------------
# fixture catalogue
# ---------------------------------------------------------------------------

FIXTURES = {
    "z": ("the integers", integers),
    "zz": ("Z + Z", lambda: direct_sum(integers(), integers(), name="Z + Z")),
    "gaussian": ("Gaussian integers Z[i] = Z[X]/(X^2 + 1)", lambda: monogenic_ring([1, 0, 1], name="Z[i]", var="i")),
    "golden": ("golden-ratio order Z[X]/(X^2 - X - 1)", lambda: monogenic_ring([-1, -1, 1], name="Z[(1+sqrt5)/2]", var="w")),
    "m2z": ("2x2 integer matrices", lambda: matrix_algebra(2)),
    "m3z": ("3x3 integer matrices", lambda: matrix_algebra(3)),
    "m2z_m2z": ("M_2(Z) + M_2(Z)", lambda: direct_sum(matrix_algebra(2), matrix_algebra(2), name="M_2(Z) + M_2(Z)")),
    "m2z_z": ("M_2(Z) + M_1(Z)", lambda: direct_sum(matrix_algebra(2), integers(), name="M_2(Z) + Z")),
    "quaternion": ("Lipschitz quaternions Z<1,i,j,k>", quaternion_algebra),
    "t2z": ("upper-triangular 2x2 integer matrices", lambda: triangular_algebra(2)),
    "t3z": ("upper-triangular 3x3 integer matrices", lambda: triangular_algebra(3)),
    "zc2": ("group ring Z[C_2]", lambda: group_algebra(cyclic_group_table(2), name="Z[C_2]", element_names=("1", "g"))),
    "zc3": ("group ring Z[C_3]", lambda: group_algebra(cyclic_group_table(3), name="Z[C_3]", element_names=("1", "g", "g^2"))),
    "zs3": (
        "group ring Z[S_3]",
        lambda: group_algebra(permutation_group_table(S3_PERMUTATIONS), name="Z[S_3]", element_names=S3_NAMES),
    ),
}

_FIXTURE_CACHE: dict[str, StructureAlgebra] = {}


def fixture(name: str) -> StructureAlgebra:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    if name not in _FIXTURE_CACHE:
        _FIXTURE_CACHE[name] = FIXTURES[name][1]()
    return _FIXTURE_CACHE[name]


def fixture_names() -> list[str]:
    return list(FIXTURES)
