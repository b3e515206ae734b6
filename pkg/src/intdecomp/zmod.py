"""Linear algebra over Z/p^k.

Row spans are compared through the Howell normal form, which is canonical over
Z/p^k where echelon forms are not. Vectors are rows throughout: the kernel of
``M`` is ``{v : v @ M = 0}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy

from . import kernels

MAX_MODULUS = 2**31


class ModulusError(ValueError):
    """Raised for a modulus that is not a prime power within bounds."""


@lru_cache(maxsize=None)
def check_prime_power(p: int, k: int) -> int:
    """Validate ``p`` prime, ``k >= 1``, ``p**k <= 2**31``; return ``p**k``."""
    if not isinstance(p, (int, np.integer)) or not sympy.isprime(int(p)):
        raise ModulusError(f"{p} is not prime")
    if k < 1:
        raise ModulusError(f"exponent must be >= 1, got {k}")
    m = int(p) ** int(k)
    if m > MAX_MODULUS:
        raise ModulusError(f"modulus {p}^{k} exceeds 2^31")
    return m


def prime_power_split(m: int) -> tuple[int, int]:
    """Inverse of ``p**k``; composite moduli are rejected."""
    factors = sympy.factorint(m)
    if len(factors) != 1:
        raise ModulusError(f"modulus {m} is not a prime power")
    ((p, k),) = factors.items()
    check_prime_power(p, k)
    return int(p), int(k)


@dataclass(frozen=True, eq=False)
class ModMatrix:
    """Matrix over Z/p^k. ``entries`` is a read-only int64 array in ``[0, p^k)``."""

    entries: np.ndarray
    p: int
    k: int

    def __post_init__(self):
        m = check_prime_power(self.p, self.k)
        arr = np.array(self.entries, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {arr.shape}")
        arr %= m
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, rows, p: int, k: int, cols: int | None = None) -> "ModMatrix":
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, cols or 0), dtype=np.int64)
        elif arr.ndim == 1:
            arr = arr[None, :]
        return cls(arr, p, k)

    @classmethod
    def identity(cls, n: int, p: int, k: int) -> "ModMatrix":
        return cls(np.eye(n, dtype=np.int64), p, k)

    @property
    def modulus(self) -> int:
        return self.p**self.k

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __eq__(self, other):
        if not isinstance(other, ModMatrix):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.shape == other.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.p, self.k, self.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"ModMatrix({self.entries.tolist()}, mod {self.p}^{self.k})"

    def with_entries(self, arr) -> "ModMatrix":
        return ModMatrix(arr, self.p, self.k)

    def cardinality(self) -> int:
        """Number of elements of the row span (valid for Howell forms)."""
        total = 1
        for row in self.entries:
            nz = np.flatnonzero(row)
            if nz.size:
                total *= self.modulus // int(row[nz[0]])
        return total


def _same_modulus(a: ModMatrix, b: ModMatrix):
    if (a.p, a.k) != (b.p, b.k):
        raise ModulusError(f"modulus mismatch: {a.p}^{a.k} vs {b.p}^{b.k}")


def howell_form(M: ModMatrix) -> ModMatrix:
    """Canonical Howell form of ``M`` with zero rows dropped."""
    return M.with_entries(kernels.howell(M.entries, M.p, M.k))


def is_howell(M: ModMatrix) -> bool:
    return howell_form(M) == M


def kernel(M: ModMatrix) -> ModMatrix:
    """Howell basis of the left kernel ``{v : v @ M = 0}``."""
    r, c = M.shape
    aug = np.concatenate([M.entries, np.eye(r, dtype=np.int64)], axis=1)
    h = kernels.howell(aug, M.p, M.k)
    keep = ~h[:, :c].any(axis=1)
    ker = h[keep][:, c:]
    if ker.shape[0] == 0:
        return M.with_entries(np.zeros((0, r), dtype=np.int64))
    return howell_form(M.with_entries(ker))


def reduce_vectors(basis: ModMatrix, vectors) -> np.ndarray:
    """Remainders of ``vectors`` (rows) modulo the span of a Howell ``basis``.

    A remainder is zero exactly when the vector lies in the span, and for a
    coset ``v + span`` the remainder is its lexicographically smallest member.
    """
    v = np.asarray(vectors, dtype=np.int64)
    single = v.ndim == 1
    if single:
        v = v[None, :]
    if v.shape[1] != basis.cols:
        raise ValueError(f"dimension mismatch: vector length {v.shape[1]} vs {basis.cols} columns")
    out = kernels.reduce_rows(basis.entries, v, basis.modulus)
    return out[0] if single else out


def span_contains(basis: ModMatrix, v) -> bool:
    """Whether ``v`` lies in the row span of ``basis``."""
    h = basis if is_howell(basis) else howell_form(basis)
    return not reduce_vectors(h, v).any()


def span_equal(a: ModMatrix, b: ModMatrix) -> bool:
    _same_modulus(a, b)
    if a.cols != b.cols:
        raise ValueError(f"dimension mismatch: {a.cols} vs {b.cols} columns")
    return howell_form(a) == howell_form(b)


def span_includes(big: ModMatrix, small: ModMatrix) -> bool:
    """Whether every row of ``small`` lies in the span of ``big``."""
    _same_modulus(big, small)
    if small.rows == 0:
        return True
    return not reduce_vectors(howell_form(big), small.entries).any()


def stack(*mats: ModMatrix) -> ModMatrix:
    first = mats[0]
    for other in mats[1:]:
        _same_modulus(first, other)
    return first.with_entries(np.concatenate([m.entries for m in mats], axis=0))


def solve_left(M: ModMatrix, b) -> np.ndarray | None:
    """Some ``x`` with ``x @ M = b``, or ``None`` when the system is inconsistent."""
    r, c = M.shape
    b = np.asarray(b, dtype=np.int64) % M.modulus
    aug = np.concatenate([M.entries, np.eye(r, dtype=np.int64)], axis=1)
    h = M.with_entries(kernels.howell(aug, M.p, M.k))
    target = np.concatenate([b, np.zeros(r, dtype=np.int64)])
    rem = reduce_vectors(h, target)
    if rem[:c].any():
        return None
    return (-rem[c:]) % M.modulus


def row_span_elements(M: ModMatrix) -> set[tuple[int, ...]]:
    """All elements of the row span by brute force; only for tiny inputs."""
    m = M.modulus
    seen = {tuple([0] * M.cols)}
    for row in M.entries:
        multiples = [tuple(int(x) for x in (c * row) % m) for c in range(m)]
        seen = {tuple((a + b) % m for a, b in zip(s, mult)) for s in seen for mult in multiples}
    return seen


class SpanAccumulator:
    """Howell basis of a span fed in batches of rows.

    Rows already in the span cost one reduction pass; only the survivors
    trigger a new Howell computation.
    """

    def __init__(self, cols: int, p: int, k: int):
        self.p, self.k = p, k
        self.modulus = check_prime_power(p, k)
        self.basis = np.zeros((0, cols), dtype=np.int64)

    def add(self, rows) -> None:
        rows = np.asarray(rows, dtype=np.int64)
        if rows.shape[0] == 0:
            return
        if self.basis.shape[0]:
            rows = kernels.reduce_rows(self.basis, rows, self.modulus)
        rows = rows[rows.any(axis=1)]
        if rows.shape[0] == 0:
            return
        rows = np.unique(rows, axis=0)
        self.basis = kernels.howell(np.concatenate([self.basis, rows]), self.p, self.k)

    def result(self) -> ModMatrix:
        return ModMatrix(self.basis, self.p, self.k)
