"""Structure of A/pA over F_p: radical, center, Wedderburn profile.

The radical uses the iterated p-power trace method, which stays correct when
p is at most the dimension (where the plain trace form degenerates, e.g. for
M_2(F_2)). Center splitting runs over the Frobenius-fixed subalgebra of the
center, whose dimension independently counts the simple components.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fp_poly, kernels
from .algebra import FiniteAlgebra, ResidueArithmetic, TableAlgebra, reduce_mod
from .zmod import ModMatrix, howell_form, kernel, reduce_vectors, solve_left


class StructureError(AssertionError):
    """An internal invariant of the structure computation failed."""


def _require_field(A1: ResidueArithmetic) -> None:
    if A1.k != 1:
        raise ValueError(f"expected an algebra over F_p (k = 1), got k = {A1.k}")


def _empty(A: ResidueArithmetic) -> ModMatrix:
    return ModMatrix(np.zeros((0, A.rank), dtype=np.int64), A.p, A.k)


def _trace_of_power(mat: np.ndarray, e: int, m: int) -> int:
    result = np.eye(mat.shape[0], dtype=np.int64)
    base = mat % m
    while e:
        if e & 1:
            result = kernels.matmul_mod(result, base, m)
        base = kernels.matmul_mod(base, base, m)
        e >>= 1
    return int(np.trace(result)) % m


def jacobson_radical(A1: ResidueArithmetic) -> ModMatrix:
    """Basis (RREF rows) of the Jacobson radical of an algebra over F_p."""
    _require_field(A1)
    p, t = A1.p, A1.rank
    levels = 0
    while p ** (levels + 1) <= t:
        levels += 1
    current = A1.basis()
    for i in range(levels + 1):
        if current.shape[0] == 0:
            break
        pe = p**i
        m = p ** (i + 1)
        prods = A1.products(current, A1.basis())
        g = np.zeros((current.shape[0], t), dtype=np.int64)
        for idx, x in enumerate(prods):
            tr = _trace_of_power(A1.left_matrix(x), pe, m)
            if tr % pe:
                raise StructureError(f"trace of p^{i}-th power not divisible by p^{i}")
            g[idx // t, idx % t] = (tr // pe) % p
        coeffs = kernel(ModMatrix(g, p, 1))
        if coeffs.rows == 0:
            current = np.zeros((0, t), dtype=np.int64)
            break
        current = howell_form(ModMatrix(kernels.matmul_mod(coeffs.entries, current, p), p, 1)).entries
    rad = ModMatrix(current.reshape(-1, t), p, 1)
    if nilpotency_index(A1, rad) is None:
        raise StructureError("computed radical is not nilpotent")
    return rad


def nilpotency_index(A: ResidueArithmetic, ideal: ModMatrix) -> int | None:
    """Least ``m`` with ``ideal^m = 0``, or ``None`` if the powers stabilise."""
    if ideal.rows == 0:
        return 1
    power = howell_form(ideal)
    for m in range(2, A.k * A.rank + 3):
        nxt = A.span_product(power, ideal)
        if nxt.rows == 0:
            return m
        if nxt == power:
            return None
        power = nxt
    return None


def center(A: ResidueArithmetic) -> ModMatrix:
    """Howell basis of ``{z : z e_i = e_i z for all i}``."""
    t = A.rank
    eye = A.basis()
    zx = A.products(eye, eye).reshape(t, t, t)  # [s, i] = e_s e_i
    xz = zx.transpose(1, 0, 2)  # [s, i] = e_i e_s
    comm = ((zx - xz) % A.modulus).reshape(t, t * t)
    return kernel(ModMatrix(comm, A.p, A.k))


def quotient(A1: ResidueArithmetic, ideal: ModMatrix) -> tuple[TableAlgebra, np.ndarray]:
    """``A1 / ideal`` on the non-pivot coordinates of the ideal's RREF basis.

    Returns the quotient and the kept coordinate indices.
    """
    _require_field(A1)
    t, p = A1.rank, A1.p
    ideal = howell_form(ideal)
    pivots = {int(np.flatnonzero(r)[0]) for r in ideal.entries}
    keep = np.array([c for c in range(t) if c not in pivots], dtype=np.int64)

    def project(rows):
        red = reduce_vectors(ideal, rows) if ideal.rows else np.asarray(rows) % p
        return red[..., keep]

    eye = A1.basis()[keep]
    s = len(keep)
    table = project(A1.products(eye, eye)).reshape(s, s, s)
    unity = project(A1.unity[None, :])[0]
    return TableAlgebra(table, unity, p, 1, name="quotient"), keep


def _dim(A: ResidueArithmetic, rows) -> int:
    return A.span(rows).rows if len(rows) else 0


def _min_poly(A: ResidueArithmetic, x: np.ndarray, one: np.ndarray) -> list[int]:
    """Monic minimal polynomial of ``x`` inside the unital algebra ``one * A``."""
    p = A.p
    powers = [one % p]
    while True:
        nxt = A.multiply(powers[-1], x)
        coeffs = solve_left(ModMatrix(np.array(powers), p, 1), nxt)
        if coeffs is not None:
            return fp_poly.trim([(-int(c)) % p for c in coeffs] + [1])
        powers.append(nxt)
        if len(powers) > A.rank + 1:
            raise StructureError("minimal polynomial degree exceeds dimension")


def _frobenius_fixed(Z: TableAlgebra, basis: np.ndarray) -> np.ndarray:
    p = Z.p
    images = np.array([(Z.power(z, p) - z) % p for z in basis]).reshape(len(basis), -1)
    coeffs = kernel(ModMatrix(images, p, 1))
    if coeffs.rows == 0:
        return np.zeros((0, basis.shape[1]), dtype=np.int64)
    return howell_form(ModMatrix(kernels.matmul_mod(coeffs.entries, basis, p), p, 1)).entries


def primitive_central_idempotents(S: ResidueArithmetic) -> tuple[np.ndarray, int]:
    """Primitive idempotents of the center of a semisimple ``S`` over F_p.

    Also returns the dimension of the Frobenius-fixed part of the center,
    which must equal the number of idempotents found.
    """
    p = S.p
    zbasis = center(S).entries
    fixed = _frobenius_fixed(S, zbasis)
    expected = fixed.shape[0]
    idems = [S.unity % p]
    for b in fixed:
        refined = []
        for e in idems:
            be = S.multiply(b, e)
            mp = _min_poly(S, be, e)
            factors = fp_poly.factor(mp, p)
            if any(len(g) != 2 or mult != 1 for g, mult in factors):
                raise StructureError(f"Frobenius-fixed element has non-split minimal polynomial {mp}")
            rts = [(-g[0]) % p for g, _ in factors]
            if len(rts) == 1:
                refined.append(e)
                continue
            for lam in rts:
                piece = e.copy()
                for mu in rts:
                    if mu == lam:
                        continue
                    factor = (be - mu * e) % p
                    piece = (S.multiply(piece, factor) * pow(lam - mu, -1, p)) % p
                refined.append(piece)
        idems = refined
    if len(idems) != expected:
        raise StructureError(f"found {len(idems)} central idempotents, Frobenius count is {expected}")
    return np.array(idems).reshape(len(idems), S.rank), expected


@dataclass(frozen=True)
class WedderburnProfile:
    """Radical dimension and simple components ``(q, n)`` of A/pA."""

    p: int
    rank: int
    radical_dim: int
    components: tuple[tuple[int, int], ...]
    center_dim: int = 0
    frobenius_count: int = 0

    @property
    def semisimple(self) -> bool:
        return self.radical_dim == 0

    @property
    def uniform(self) -> bool:
        return self.semisimple and len(set(self.components)) <= 1

    def field_degree(self, q: int) -> int:
        f = 0
        while q > 1:
            q //= self.p
            f += 1
        return f

    def accounted_dimension(self) -> int:
        return sum(n * n * self.field_degree(q) for q, n in self.components) + self.radical_dim

    def describe(self) -> str:
        parts = [f"M_{n}(F_{q})" for q, n in self.components]
        body = " + ".join(parts) if parts else "0"
        return f"A/{self.p}A = {body}, radical dimension {self.radical_dim}"

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "rank": self.rank,
            "radical_dim": self.radical_dim,
            "components": [{"q": q, "n": n} for q, n in self.components],
            "center_dim": self.center_dim,
        }


def _isqrt_exact(x: int) -> int | None:
    r = int(round(x**0.5))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == x:
            return c
    return None


def wedderburn_profile(A1: ResidueArithmetic) -> WedderburnProfile:
    _require_field(A1)
    p, t = A1.p, A1.rank
    rad = jacobson_radical(A1)
    S, _ = quotient(A1, rad)
    comps = []
    count = 0
    zdim = 0
    if S.rank:
        idems, count = primitive_central_idempotents(S)
        zbasis = center(S).entries
        zdim = zbasis.shape[0]
        for e in idems:
            f = _dim(S, S.products(zbasis, e[None, :]))
            d = _dim(S, S.products(S.basis(), e[None, :]))
            if d % f:
                raise StructureError(f"component dimension {d} not divisible by center degree {f}")
            n = _isqrt_exact(d // f)
            if n is None:
                raise StructureError(f"component dimension {d // f} over its center is not a square")
            comps.append((p**f, n))
    profile = WedderburnProfile(p, t, rad.rows, tuple(sorted(comps)), zdim, count)
    if profile.accounted_dimension() != t:
        raise StructureError(f"dimension bookkeeping failed: {profile.accounted_dimension()} != {t}")
    return profile


# ---------------------------------------------------------------------------
# enumeration oracle and the residue tower
# ---------------------------------------------------------------------------


def generates_nilpotent_ideal(A: ResidueArithmetic, x) -> bool:
    ideal = A.ideal_span(np.atleast_2d(x))
    return nilpotency_index(A, ideal) is not None


def radical_by_enumeration(Ak: FiniteAlgebra, budget: int | None = None) -> list[np.ndarray]:
    """Every element whose two-sided ideal is nilpotent (the radical of A_k)."""
    out = []
    for x in Ak.enumerate(budget):
        if generates_nilpotent_ideal(Ak, x):
            out.append(x.copy())
    return out


@dataclass(frozen=True)
class TowerLevel:
    k: int
    size: int
    radical_size: int
    p_ideal_size: int
    p_nilpotency: int
    center_size: int
    consistent: bool
    method: str

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class TowerReport:
    name: str
    p: int
    levels: tuple[TowerLevel, ...] = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        return all(lv.consistent for lv in self.levels)


def residue_tower_diagnostic(A, p: int, K_max: int, budget: int | None = None) -> TowerReport:
    """Whether rad(A/p^kA) = p(A/p^kA) at each level k <= K_max.

    Levels within ``budget`` use the enumeration oracle; larger ones lift the
    level-1 radical (rad(A_k) is its preimage since pA_k is nilpotent).
    """
    levels = []
    base_rad = None
    for k in range(1, K_max + 1):
        Ak = reduce_mod(A, p, k)
        limit = Ak.budget if budget is None else budget
        t = Ak.rank
        p_ideal = p ** ((k - 1) * t)
        nil = next(e for e in range(1, k + 1) if (p**e) % (p**k) == 0)
        zsize = center(Ak).cardinality()
        if Ak.size <= limit:
            rad_size = len(radical_by_enumeration(Ak, limit))
            method = "enumeration"
        else:
            if base_rad is None:
                base_rad = jacobson_radical(reduce_mod(A, p, 1))
            rad_size = (p**base_rad.rows) * p_ideal
            method = "lifted"
        levels.append(TowerLevel(k, Ak.size, rad_size, p_ideal, nil, zsize, rad_size == p_ideal, method))
    return TowerReport(A.name, p, tuple(levels))


