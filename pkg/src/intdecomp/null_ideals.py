"""Null ideals of A_k = A/p^kA in bounded degree.

A polynomial of degree at most d is stored as a flat row of coefficients.
Scalar polynomials use index ``j``; algebra polynomials use the
coefficient-major index ``j*t + l`` for the ``e_l`` coordinate of the
``X^j`` coefficient.

Both null ideals only depend on the power tuples ``(1, a, ..., a^d)`` through
linear conditions, so everything is derived from the Z/p^k-span W of those
tuples over all ``a`` in A_k. W is built once per algebra and degree by
streaming the enumeration and then reused; lower degrees are projections.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import FiniteAlgebra
from .zmod import ModMatrix, SpanAccumulator, howell_form, kernel, reduce_vectors


@dataclass(frozen=True)
class ScalarPoly:
    coeffs: tuple[int, ...]
    modulus: int

    @classmethod
    def of(cls, coeffs, modulus: int) -> "ScalarPoly":
        c = [int(x) % modulus for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return cls(tuple(c), modulus)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class AlgebraPoly:
    """Coefficients in A_k, ``coeffs[j]`` multiplies ``X^j`` from the left."""

    coeffs: np.ndarray  # shape (d+1, t)
    modulus: int

    @classmethod
    def from_flat(cls, row, t: int, modulus: int) -> "AlgebraPoly":
        arr = np.asarray(row, dtype=np.int64).reshape(-1, t) % modulus
        nz = np.flatnonzero(arr.any(axis=1))
        arr = arr[: nz[-1] + 1] if nz.size else arr[:0]
        return cls(arr, modulus)

    @classmethod
    def from_scalar(cls, f: ScalarPoly, a, t: int) -> "AlgebraPoly":
        a = np.asarray(a, dtype=np.int64)
        arr = np.array([c * a for c in f.coeffs], dtype=np.int64).reshape(-1, t)
        return cls.from_flat(arr, t, f.modulus)

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def flat(self, d: int) -> np.ndarray:
        t = self.coeffs.shape[1]
        out = np.zeros((d + 1) * t, dtype=np.int64)
        out[: self.coeffs.size] = self.coeffs.ravel()
        return out

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraPoly)
            and self.modulus == other.modulus
            and np.array_equal(self.coeffs, other.coeffs)
        )

    __hash__ = None


@dataclass(frozen=True)
class DegreewiseModule:
    """Polynomials of degree <= d forming a Z/p^k-module, as Howell rows."""

    degree: int
    width: int  # 1 for scalar coefficients, t for algebra coefficients
    basis: ModMatrix

    @property
    def rank(self) -> int:
        return self.basis.rows

    def cardinality(self) -> int:
        return self.basis.cardinality()

    def contains(self, row) -> bool:
        if self.basis.rows == 0:
            return not (np.asarray(row) % self.basis.modulus).any()
        return not reduce_vectors(self.basis, row).any()

    def includes(self, other: "DegreewiseModule") -> bool:
        if other.basis.rows == 0:
            return True
        if self.basis.rows == 0:
            return False
        return not reduce_vectors(self.basis, other.basis.entries).any()

    def __eq__(self, other):
        return (
            isinstance(other, DegreewiseModule)
            and (self.degree, self.width) == (other.degree, other.width)
            and self.basis == other.basis
        )

    __hash__ = None

    def truncate(self, d: int) -> "DegreewiseModule":
        """Members of degree <= d (as a module of degree-<=d polynomials)."""
        if d >= self.degree:
            return self
        # Howell rows only isolate submodules vanishing on leading columns,
        # so put the high-degree coefficients first
        cols = (d + 1) * self.width
        rev = howell_form(self.basis.with_entries(self.basis.entries[:, ::-1])).entries[:, ::-1]
        keep = ~rev[:, cols:].any(axis=1)
        return DegreewiseModule(d, self.width, howell_form(self.basis.with_entries(rev[keep][:, :cols])))

    def polys(self) -> list:
        m = self.basis.modulus
        if self.width == 1:
            return [ScalarPoly.of(r, m) for r in self.basis.entries]
        return [AlgebraPoly.from_flat(r, self.width, m) for r in self.basis.entries]


def _empty(cols: int, p: int, k: int) -> ModMatrix:
    return ModMatrix(np.zeros((0, cols), dtype=np.int64), p, k)


def evaluate(Ak, f, b) -> np.ndarray:
    """``sum c_j b^j`` with the indeterminate to the right of the coefficients.

    ``f`` is an AlgebraPoly or ScalarPoly. Evaluation is not multiplicative in
    ``f`` when the coefficients do not commute with ``b``.
    """
    b = Ak.reduce(b)
    if b.shape != (Ak.rank,):
        raise ValueError(f"element has {b.shape[0]} coordinates, algebra rank is {Ak.rank}")
    if isinstance(f, ScalarPoly):
        if f.modulus % Ak.modulus and Ak.modulus % f.modulus:
            raise ValueError("polynomial and algebra live over different rings")
        acc = np.zeros(Ak.rank, dtype=np.int64)
        for c in reversed(f.coeffs):
            acc = Ak.add(Ak.multiply(acc, b), c * Ak.unity)
        return acc
    if f.coeffs.shape[1] != Ak.rank:
        raise ValueError("polynomial coefficients have the wrong rank")
    acc = np.zeros(Ak.rank, dtype=np.int64)
    power = Ak.unity.copy()
    for c in f.coeffs:
        acc = Ak.add(acc, Ak.multiply(c, power))
        power = Ak.multiply(power, b)
    return acc


def power_rows(Ak, xs, d: int) -> np.ndarray:
    """Rows ``(x^0, x^1, ..., x^d)`` flattened coefficient-major."""
    xs = np.atleast_2d(Ak.reduce(xs))
    n, t = xs.shape
    out = np.empty((n, (d + 1) * t), dtype=np.int64)
    cur = np.repeat(Ak.unity[None, :], n, axis=0)
    out[:, :t] = cur
    for j in range(1, d + 1):
        cur = kernels.mul_batch(cur, xs, Ak.table, Ak.modulus)
        out[:, j * t : (j + 1) * t] = cur
    return out


def power_span(Ak: FiniteAlgebra, d: int, budget: int | None = None) -> ModMatrix:
    """Howell basis of span{(1, a, ..., a^d) : a in A_k}; needs full enumeration."""
    Ak.check_budget(budget)
    cache = Ak._cache.setdefault("power_span", {})
    if d in cache:
        return cache[d]
    bigger = [D for D in cache if D > d]
    t = Ak.rank
    if bigger:
        W = cache[min(bigger)]
        W = howell_form(W.with_entries(W.entries[:, : (d + 1) * t]))
    else:
        acc = SpanAccumulator((d + 1) * t, Ak.p, Ak.k)
        for chunk in Ak.element_chunks(budget=budget):
            acc.add(power_rows(Ak, chunk, d))
        W = acc.result()
    cache[d] = W
    return W


def _scalar_condition_matrix(W: ModMatrix, d: int, t: int) -> np.ndarray:
    # S[j, (w, s)] = W[w, j*t + s]
    w = W.entries.reshape(W.rows, d + 1, t)
    return w.transpose(1, 0, 2).reshape(d + 1, W.rows * t)


def _full_condition_matrix(Ak, W: ModMatrix, d: int) -> np.ndarray:
    # F[(j, l), (w, s)] = coefficient of e_s in e_l * W_w[j]
    t = Ak.rank
    w = W.entries.reshape(W.rows, d + 1, t)
    f = np.einsum("wji,lis->jlws", w, Ak.table.astype(object) if Ak.modulus > 2**20 else Ak.table)
    return (f % Ak.modulus).astype(np.int64).reshape((d + 1) * t, W.rows * t)


def scalar_null_ideal(Ak: FiniteAlgebra, d: int, budget: int | None = None) -> DegreewiseModule:
    """``{f in (Z/p^k)[X] : deg f <= d, f(a) = 0 for all a in A_k}``."""
    W = power_span(Ak, d, budget)
    if W.rows == 0:
        return DegreewiseModule(d, 1, howell_form(ModMatrix.identity(d + 1, Ak.p, Ak.k)))
    S = _scalar_condition_matrix(W, d, Ak.rank)
    return DegreewiseModule(d, 1, kernel(ModMatrix(S, Ak.p, Ak.k)))


def full_null_ideal(Ak: FiniteAlgebra, d: int, budget: int | None = None) -> DegreewiseModule:
    """``{f in A_k[X] : deg f <= d, f(a) = 0 for all a in A_k}``."""
    cache = Ak._cache.setdefault("full_null", {})
    if d not in cache:
        W = power_span(Ak, d, budget)
        F = _full_condition_matrix(Ak, W, d)
        cache[d] = DegreewiseModule(d, Ak.rank, kernel(ModMatrix(F, Ak.p, Ak.k)))
    return cache[d]


def generated_module(Ak: FiniteAlgebra, scalar: DegreewiseModule) -> DegreewiseModule:
    """Span of ``f * e_l`` over the scalar basis ``f`` and basis elements ``e_l``."""
    t, d = Ak.rank, scalar.degree
    rows = scalar.basis.entries
    if rows.shape[0] == 0:
        return DegreewiseModule(d, t, _empty((d + 1) * t, Ak.p, Ak.k))
    # f * e_l puts f_j at position j*t + l
    out = np.zeros((rows.shape[0], t, d + 1, t), dtype=np.int64)
    for l in range(t):
        out[:, l, :, l] = rows
    flat = out.reshape(rows.shape[0] * t, (d + 1) * t)
    return DegreewiseModule(d, t, howell_form(ModMatrix(flat, Ak.p, Ak.k)))


def minimal_monic_degree(Ak: FiniteAlgebra, d: int, budget: int | None = None) -> tuple[int, ScalarPoly] | None:
    """Least ``j <= d`` with a monic degree-``j`` member of the scalar null ideal."""
    W = power_span(Ak, d, budget)
    S = _scalar_condition_matrix(W, d, Ak.rank)
    for j in range(d + 1):
        g = monic_solution(S, j, Ak.p, Ak.k)
        if g is not None:
            return j, ScalarPoly.of(g, Ak.modulus)
    return None


def monic_solution(S: np.ndarray, j: int, p: int, k: int) -> list[int] | None:
    """Lexicographically least ``(c_0..c_{j-1})`` with ``X^j + sum c_i X^i`` killing S.

    ``S`` holds one condition row per coefficient index. Rows are reordered so
    the leading coefficient comes first; a monic solution exists exactly when
    the Howell kernel has a row with pivot 1 in that column.
    """
    order = [j] + list(range(j))
    sub = ModMatrix(S[order], p, k)
    ker = kernel(sub)
    if ker.rows == 0 or ker.entries[0, 0] != 1:
        return None
    row = ker.entries[0]
    return [int(x) for x in row[1:]] + [1]


@dataclass(frozen=True)
class NDecomposition:
    decomposable: bool
    degree: int
    witness: AlgebraPoly | None
    witness_degree: int | None
    generated_rank: int
    full_rank: int


def is_N_decomposable(Ak: FiniteAlgebra, d: int, budget: int | None = None) -> NDecomposition:
    """Whether ``N(A_k)`` and ``N_{D_k}(A_k) A_k`` agree in degree <= d.

    On failure the witness is a Howell row of the full null ideal at the least
    failing degree that lies outside the generated module.
    """
    full = full_null_ideal(Ak, d, budget)
    gen = generated_module(Ak, scalar_null_ideal(Ak, d, budget))
    if not gen.includes(full):
        for dd in range(d + 1):
            f_dd = full_null_ideal(Ak, dd, budget)
            g_dd = generated_module(Ak, scalar_null_ideal(Ak, dd, budget))
            if g_dd.includes(f_dd):
                continue
            rem = reduce_vectors(g_dd.basis, f_dd.basis.entries) if g_dd.rank else f_dd.basis.entries
            idx = int(np.flatnonzero(rem.any(axis=1))[0])
            w = AlgebraPoly.from_flat(f_dd.basis.entries[idx], Ak.rank, Ak.modulus)
            return NDecomposition(False, d, w, w.degree, gen.rank, full.rank)
        raise AssertionError("generated module differs at degree d but not below")
    if not full.includes(gen):
        raise AssertionError("generated module is not contained in the full null ideal")
    return NDecomposition(True, d, None, None, gen.rank, full.rank)


# ---------------------------------------------------------------------------
# evaluation oracle
# ---------------------------------------------------------------------------


def vanishes_everywhere(Ak: FiniteAlgebra, f, budget: int | None = None) -> bool:
    """Direct check that ``f(a) = 0`` for every enumerated ``a``."""
    if isinstance(f, ScalarPoly):
        coeffs = np.array([c * Ak.unity for c in f.coeffs], dtype=np.int64).reshape(-1, Ak.rank)
    else:
        coeffs = f.coeffs
    d = max(coeffs.shape[0] - 1, 0)
    if coeffs.shape[0] == 0:
        return True
    for chunk in Ak.element_chunks(budget=budget):
        pw = power_rows(Ak, chunk, d).reshape(len(chunk), d + 1, Ak.rank)
        acc = np.zeros((len(chunk), Ak.rank), dtype=np.int64)
        for j in range(d + 1):
            c = np.repeat(coeffs[j][None, :], len(chunk), axis=0)
            acc = (acc + kernels.mul_batch(c, pw[:, j], Ak.table, Ak.modulus)) % Ak.modulus
        if acc.any():
            return False
    return True


def null_ideal_by_evaluation(Ak: FiniteAlgebra, d: int, scalar: bool) -> DegreewiseModule:
    """Kernel of the full per-element evaluation matrix; for small cross-checks only."""
    t = Ak.rank
    elems = np.concatenate(list(Ak.element_chunks()))
    pw = power_rows(Ak, elems, d).reshape(len(elems), d + 1, t)
    if scalar:
        mat = pw.transpose(1, 0, 2).reshape(d + 1, -1)
        return DegreewiseModule(d, 1, kernel(ModMatrix(mat, Ak.p, Ak.k)))
    f = np.einsum("nji,lis->jlns", pw, Ak.table) % Ak.modulus
    return DegreewiseModule(d, t, kernel(ModMatrix(f.reshape((d + 1) * t, -1), Ak.p, Ak.k)))
