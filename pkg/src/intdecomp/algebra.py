"""Finite-rank associative unital Z-algebras given by structure constants.

``table[i, j, l]`` is the coefficient of ``e_l`` in ``e_i * e_j``. Elements are
integer coordinate vectors in the basis ``e_0 .. e_{t-1}``.
"""
from __future__ import annotations

import json
import weakref
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator

import numpy as np

from . import kernels
from .zmod import ModMatrix, check_prime_power, howell_form

DEFAULT_BUDGET = 10**6


class InvalidAlgebraError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured element budget."""

    def __init__(self, required: int, budget: int, what: str = "elements"):
        self.required = required
        self.budget = budget
        super().__init__(f"enumeration needs {required} {what} but the budget is {budget}")


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    associativity_witness: tuple[int, int, int] | None = None
    unity_failures: tuple[int, ...] = ()
    shape_error: str | None = None

    def describe(self) -> str:
        if self.valid:
            return "valid"
        if self.shape_error:
            return f"invalid: {self.shape_error}"
        parts = []
        if self.associativity_witness is not None:
            i, j, k = self.associativity_witness
            parts.append(f"(e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")
        if self.unity_failures:
            parts.append("unity fails on basis " + ", ".join(f"e{i}" for i in self.unity_failures))
        return "invalid: " + "; ".join(parts)


@dataclass(frozen=True, eq=False)
class StructureAlgebra:
    """A free Z-algebra of rank ``t`` with integer structure constants.

    ``standard_assumptions`` records the declared property that A meets Q in Z;
    it is asserted by the caller, not decided. ``certificate`` carries
    constructor provenance such as ``{"kind": "matrix_sum", "n": 2, "copies": 2}``.
    """

    table: np.ndarray
    unity: np.ndarray
    name: str = "algebra"
    standard_assumptions: bool = True
    basis_names: tuple[str, ...] | None = None
    certificate: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64)
        unity = np.array(self.unity, dtype=np.int64)
        table.setflags(write=False)
        unity.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "unity", unity)
        if self.basis_names is None and table.ndim == 3:
            object.__setattr__(self, "basis_names", tuple(f"e{i}" for i in range(table.shape[0])))
        else:
            object.__setattr__(self, "basis_names", tuple(self.basis_names))

    @property
    def rank(self) -> int:
        return self.table.shape[0]

    @cached_property
    def report(self) -> ValidationReport:
        return validate(self)

    def require_valid(self) -> "StructureAlgebra":
        if not self.report.valid:
            raise InvalidAlgebraError(f"{self.name}: {self.report.describe()}")
        return self

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.rank, dtype=np.int64)
        v[i] = 1
        return v

    def element(self, coords) -> np.ndarray:
        v = np.asarray(coords, dtype=np.int64)
        if v.shape != (self.rank,):
            raise ValueError(f"expected {self.rank} coordinates, got shape {v.shape}")
        return v

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "rank": self.rank,
            "unity": self.unity.tolist(),
            "table": self.table.tolist(),
            "standard_assumptions": self.standard_assumptions,
        }
        if self.basis_names != tuple(f"e{i}" for i in range(self.rank)):
            out["basis_names"] = list(self.basis_names)
        return out


def validate(A: StructureAlgebra) -> ValidationReport:
    """Check shapes, associativity on all basis triples, and two-sided unity."""
    c = A.table
    if c.ndim != 3 or c.shape[0] != c.shape[1] or c.shape[1] != c.shape[2] or c.shape[0] == 0:
        return ValidationReport(False, shape_error=f"table shape {c.shape} is not t x t x t")
    t = c.shape[0]
    if A.unity.shape != (t,):
        return ValidationReport(False, shape_error=f"unity has shape {A.unity.shape}, expected ({t},)")
    if len(A.basis_names) != t:
        return ValidationReport(False, shape_error="basis_names length differs from rank")
    ct = c.astype(object)
    # (e_i e_j) e_k  and  e_i (e_j e_k)
    left = np.einsum("ijl,lkm->ijkm", ct, ct)
    right = np.einsum("jkl,ilm->ijkm", ct, ct)
    diff = np.argwhere((left != right).any(axis=3))
    witness = tuple(int(x) for x in diff[0]) if len(diff) else None
    u = A.unity.astype(object)
    lmul = np.einsum("i,ijl->jl", u, ct)
    rmul = np.einsum("j,ijl->il", u, ct)
    eye = np.eye(t, dtype=np.int64).astype(object)
    fails = tuple(
        int(i) for i in range(t) if (lmul[i] != eye[i]).any() or (rmul[i] != eye[i]).any()
    )
    return ValidationReport(witness is None and not fails, witness, fails)


def multiply(A: StructureAlgebra, x, y) -> np.ndarray:
    """Product over Z: ``sum_ij x_i y_j table[i, j, :]``."""
    x = A.element(x).astype(object)
    y = A.element(y).astype(object)
    return np.einsum("i,j,ijl->l", x, y, A.table.astype(object)).astype(np.int64)


def left_regular(A: StructureAlgebra, x) -> np.ndarray:
    """Matrix of ``y -> x*y`` acting on row vectors: ``y @ L == x*y``."""
    return np.einsum("i,ijl->jl", A.element(x), A.table)


def trace_vector(A: StructureAlgebra) -> np.ndarray:
    """``tr(L_{e_l})`` for each basis element."""
    return np.einsum("ljj->l", A.table)


class ResidueArithmetic:
    """Arithmetic shared by every algebra stored as a table over Z/p^k.

    Subclasses provide ``table``, ``unity``, ``p`` and ``k``.
    """

    table: np.ndarray
    unity: np.ndarray
    p: int
    k: int

    @property
    def modulus(self) -> int:
        return self.p**self.k

    @property
    def rank(self) -> int:
        return self.table.shape[0]

    def reduce(self, x) -> np.ndarray:
        return np.asarray(x, dtype=np.int64) % self.modulus

    def multiply(self, x, y) -> np.ndarray:
        x = self.reduce(x)
        y = self.reduce(y)
        single = x.ndim == 1
        out = kernels.mul_batch(np.atleast_2d(x), np.atleast_2d(y), self.table, self.modulus)
        return out[0] if single else out

    def add(self, x, y) -> np.ndarray:
        return (self.reduce(x) + self.reduce(y)) % self.modulus

    def power(self, x, e: int) -> np.ndarray:
        result = self.unity.copy()
        for _ in range(e):
            result = self.multiply(result, x)
        return result

    def basis(self) -> np.ndarray:
        return np.eye(self.rank, dtype=np.int64)

    def left_matrix(self, x) -> np.ndarray:
        """``y @ L == x*y`` over Z/p^k."""
        return np.einsum("i,ijl->jl", self.reduce(x), self.table) % self.modulus

    def right_matrix(self, x) -> np.ndarray:
        """``y @ R == y*x`` over Z/p^k."""
        return np.einsum("j,ijl->il", self.reduce(x), self.table) % self.modulus

    def products(self, xs, ys) -> np.ndarray:
        """``x*y`` for every row ``x`` of ``xs`` and ``y`` of ``ys``, x-major."""
        xs = np.atleast_2d(self.reduce(xs))
        ys = np.atleast_2d(self.reduce(ys))
        a = np.repeat(xs, len(ys), axis=0)
        b = np.tile(ys, (len(xs), 1))
        return kernels.mul_batch(a, b, self.table, self.modulus)

    def span(self, rows) -> ModMatrix:
        return howell_form(ModMatrix(np.atleast_2d(self.reduce(rows)).reshape(-1, self.rank), self.p, self.k))

    def ideal_span(self, rows) -> ModMatrix:
        """Howell basis of the two-sided ideal generated by ``rows``."""
        left = self.products(self.basis(), rows)
        return self.span(self.products(left, self.basis()))

    def span_product(self, a: ModMatrix, b: ModMatrix) -> ModMatrix:
        """Span of all products of elements of two submodules."""
        if a.rows == 0 or b.rows == 0:
            return ModMatrix(np.zeros((0, self.rank), dtype=np.int64), self.p, self.k)
        return self.span(self.products(a.entries, b.entries))


@dataclass(frozen=True, eq=False)
class TableAlgebra(ResidueArithmetic):
    """An associative unital algebra over Z/p^k known only by its reduced table."""

    table: np.ndarray
    unity: np.ndarray
    p: int
    k: int
    name: str = "algebra"


@dataclass(frozen=True, eq=False)
class FiniteAlgebra(ResidueArithmetic):
    """``A / p^k A`` with multiplication tables reduced mod ``p^k``."""

    base: StructureAlgebra
    p: int
    k: int
    budget: int = DEFAULT_BUDGET
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        m = check_prime_power(self.p, self.k)
        self.base.require_valid()
        table = self.base.table % m
        table.setflags(write=False)
        unity = self.base.unity % m
        unity.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "unity", unity)

    @property
    def size(self) -> int:
        return self.modulus**self.rank

    @property
    def name(self) -> str:
        return f"{self.base.name} mod {self.p}^{self.k}"

    def check_budget(self, budget: int | None = None) -> None:
        limit = self.budget if budget is None else budget
        if self.size > limit:
            raise BudgetExceeded(self.size, limit)

    def element_chunks(self, chunk: int = 1 << 14, budget: int | None = None) -> Iterator[np.ndarray]:
        """All elements, as coordinate rows, in lexicographic order of coordinates."""
        self.check_budget(budget)
        m, t = self.modulus, self.rank
        total = self.size
        weights = m ** np.arange(t - 1, -1, -1, dtype=np.int64)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            yield (idx[:, None] // weights[None, :]) % m

    def enumerate(self, budget: int | None = None) -> Iterator[np.ndarray]:
        for block in self.element_chunks(budget=budget):
            yield from block

    def tower(self, k: int) -> "FiniteAlgebra":
        """Reduction to a lower level ``k`` (same as ``reduce_mod(base, p, k)``)."""
        if not 1 <= k <= self.k:
            raise ValueError(f"level {k} is not between 1 and {self.k}")
        return reduce_mod(self.base, self.p, k, budget=self.budget)


_REDUCTIONS: "weakref.WeakKeyDictionary[StructureAlgebra, dict]" = weakref.WeakKeyDictionary()


def reduce_mod(A: StructureAlgebra, p: int, k: int, budget: int = DEFAULT_BUDGET) -> FiniteAlgebra:
    """``A / p^k A``. Reductions are memoised per algebra so caches are shared."""
    key = (int(p), int(k), int(budget))
    per_algebra = _REDUCTIONS.setdefault(A, {})
    if key not in per_algebra:
        per_algebra[key] = FiniteAlgebra(A, *key)
    return per_algebra[key]


def enumerate_elements(Ak: FiniteAlgebra, budget: int | None = None) -> Iterator[np.ndarray]:
    return Ak.enumerate(budget)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


class AlgebraFormatError(ValueError):
    pass


def from_json(data: dict) -> StructureAlgebra:
    try:
        rank = int(data["rank"])
        table = np.array(data["table"], dtype=np.int64)
        unity = np.array(data["unity"], dtype=np.int64)
    except KeyError as exc:
        raise AlgebraFormatError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise AlgebraFormatError(f"malformed field: {exc}") from None
    if table.shape != (rank, rank, rank):
        raise AlgebraFormatError(f"table has shape {table.shape}, expected {(rank,) * 3}")
    if unity.shape != (rank,):
        raise AlgebraFormatError(f"unity has shape {unity.shape}, expected ({rank},)")
    names = data.get("basis_names")
    if names is not None and len(names) != rank:
        raise AlgebraFormatError("basis_names length differs from rank")
    return StructureAlgebra(
        table,
        unity,
        name=str(data.get("name", "algebra")),
        standard_assumptions=bool(data.get("standard_assumptions", True)),
        basis_names=tuple(names) if names is not None else None,
    )


def load_algebra(path) -> StructureAlgebra:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise AlgebraFormatError(f"{path}: top-level JSON value must be an object")
    return from_json(data)


def dump_algebra(A: StructureAlgebra, path) -> None:
    Path(path).write_text(json.dumps(A.to_json(), indent=2) + "\n")
