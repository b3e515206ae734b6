"""Local integer-valued polynomials at a prime p.

``g / p^e`` with ``g`` monic integral of degree j is integer-valued on A
exactly when ``g mod p^e`` kills A/p^eA. The largest such e is nu_j. Since
Z_(p) is a DVR, the monic witnesses ``g_j / p^nu_j`` form a regular basis of
the degree-bounded part of Int_Q(A) localised at p, which is what the Phi
check below relies on.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import BudgetExceeded, StructureAlgebra, reduce_mod
from .null_ideals import (
    AlgebraPoly,
    DegreewiseModule,
    ScalarPoly,
    _scalar_condition_matrix,
    full_null_ideal,
    is_N_decomposable,
    monic_solution,
    power_span,
)
from .residue import wedderburn_profile
from .zmod import ModMatrix, howell_form, reduce_vectors

DEFAULT_K_MAX = 4


@dataclass(frozen=True)
class NuSequence:
    p: int
    K_max: int
    nu: tuple[int, ...]
    saturated: tuple[bool, ...]

    @property
    def degree(self) -> int:
        return len(self.nu) - 1

    def nondecreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.nu, self.nu[1:]))


@dataclass(frozen=True)
class IvpBasis:
    """Monic ``g_j`` with ``g_j / p^nu_j`` integer-valued; coefficients in [0, p^nu_j)."""

    p: int
    polys: tuple[tuple[int, ...], ...]
    exponents: tuple[int, ...]

    def denominator(self, j: int) -> int:
        return self.p ** self.exponents[j]


def legendre_valuation(j: int, p: int) -> int:
    total, q = 0, p
    while q <= j:
        total += j // q
        q *= p
    return total


def _monic_at_level(A: StructureAlgebra, p: int, e: int, d: int, budget: int | None):
    Ae = reduce_mod(A, p, e) if budget is None else reduce_mod(A, p, e, budget)
    W = power_span(Ae, d)
    S = _scalar_condition_matrix(W, d, Ae.rank)
    return [monic_solution(S, j, p, e) for j in range(d + 1)]


def nu_sequence(
    A: StructureAlgebra, p: int, d: int, K_max: int = DEFAULT_K_MAX, budget: int | None = None
) -> tuple[NuSequence, IvpBasis]:
    """Denominator exponents nu_0..nu_d capped at K_max, with monic witnesses.

    Each witness is the lexicographically least monic solution at its level.
    """
    nu = [0] * (d + 1)
    wit: list[list[int]] = [[0] * j + [1] for j in range(d + 1)]
    alive = set(range(d + 1))
    for e in range(1, K_max + 1):
        if not alive:
            break
        sols = _monic_at_level(A, p, e, d, budget)
        for j in sorted(alive):
            if sols[j] is None:
                alive.discard(j)
            else:
                nu[j] = e
                wit[j] = sols[j]
    saturated = tuple(nu[j] == K_max for j in range(d + 1))
    return NuSequence(p, K_max, tuple(nu), saturated), IvpBasis(p, tuple(tuple(w) for w in wit), tuple(nu))


def int_module_basis(A: StructureAlgebra, p: int, d: int, k: int, budget: int | None = None) -> DegreewiseModule:
    """Numerators ``g`` (mod p^k) of ``g / p^k in Int(A)`` with deg g <= d."""
    Ak = reduce_mod(A, p, k) if budget is None else reduce_mod(A, p, k, budget)
    return full_null_ideal(Ak, d)


def phi_image(A: StructureAlgebra, p: int, d: int, k: int, basis: IvpBasis) -> DegreewiseModule:
    """Numerators at level p^k of the image of Int_Q(A) (x) A, in degree <= d."""
    t = A.rank
    m = p**k
    rows = []
    for j in range(d + 1):
        e = min(basis.exponents[j], k)
        g = np.zeros(d + 1, dtype=np.int64)
        g[: j + 1] = basis.polys[j]
        g = (g * p ** (k - e)) % m
        for l in range(t):
            row = np.zeros((d + 1, t), dtype=np.int64)
            row[:, l] = g
            rows.append(row.ravel())
    return DegreewiseModule(d, t, howell_form(ModMatrix(np.array(rows), p, k)))


@dataclass(frozen=True)
class PhiCheck:
    ok: bool
    p: int
    degree: int
    level: int
    witness: AlgebraPoly | None  # numerator; the element of Int(A) is witness / p^level
    image_rank: int
    target_rank: int
    lemma_levels: tuple[bool, ...]


def verify_phi(A: StructureAlgebra, p: int, d: int, k: int, budget: int | None = None) -> PhiCheck:
    """Whether Int(A) is generated by Int_Q(A) and A at level p^k in degree <= d.

    The answer is cross-checked against N-decomposability at every level
    1..k; a disagreement raises.
    """
    _, basis = nu_sequence(A, p, d, K_max=k, budget=budget)
    witness = None
    target = int_module_basis(A, p, d, k, budget)
    image = phi_image(A, p, d, k, basis)
    if not target.includes(image):
        raise AssertionError("image of Phi is not inside Int(A)")
    ok = image.includes(target)
    if not ok:
        for dd in range(d + 1):
            sub_t = target.truncate(dd)
            sub_i = image.truncate(dd)
            rem = reduce_vectors(sub_i.basis, sub_t.basis.entries) if sub_i.rank else sub_t.basis.entries
            bad = np.flatnonzero(rem.any(axis=1))
            if bad.size:
                witness = AlgebraPoly.from_flat(sub_t.basis.entries[bad[0]], A.rank, p**k)
                break
    levels = []
    for kappa in range(1, k + 1):
        Ak = reduce_mod(A, p, kappa) if budget is None else reduce_mod(A, p, kappa, budget)
        levels.append(is_N_decomposable(Ak, d).decomposable)
    if ok != all(levels):
        raise AssertionError(f"Phi check ({ok}) disagrees with N-decomposability by level {levels}")
    return PhiCheck(ok, p, d, k, witness, image.rank, target.rank, tuple(levels))


@dataclass(frozen=True)
class IntDCheck:
    p: int
    equal: bool
    profile_components: tuple[tuple[int, int], ...]
    radical_dim: int
    nu_algebra: tuple[int, ...]
    nu_integers: tuple[int, ...]

    @property
    def nu_matches(self) -> bool:
        return self.nu_algebra == self.nu_integers


def intk_equals_intd(A: StructureAlgebra, p: int, d_report: int = 4, K_max: int = DEFAULT_K_MAX,
                     budget: int | None = None) -> IntDCheck:
    """Int_Q(A) = Int(Z) locally at p iff A/pA is a product of copies of F_p.

    The nu-sequences of A and of Z are compared as corroboration.
    """
    prof = wedderburn_profile(reduce_mod(A, p, 1))
    equal = prof.radical_dim == 0 and all(c == (p, 1) for c in prof.components)
    nu_a = ()
    try:
        nu_a = nu_sequence(A, p, d_report, K_max, budget)[0].nu
    except BudgetExceeded:
        pass  # corroboration only
    nu_z = tuple(min(legendre_valuation(j, p), K_max) for j in range(d_report + 1))
    if equal and nu_a and nu_a != nu_z:
        raise AssertionError(f"A/pA is split but nu differs from Z: {nu_a} vs {nu_z}")
    return IntDCheck(p, equal, prof.components, prof.radical_dim, nu_a, nu_z)
