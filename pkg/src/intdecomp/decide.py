"""Per-prime verdicts and multi-prime reports."""
from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from .algebra import StructureAlgebra, reduce_mod
from .residue import WedderburnProfile, wedderburn_profile

REASONS = ("nonzero_radical", "nonuniform_field", "nonuniform_matrix_size", "uniform")
ALL_PRIMES = "all"


@dataclass(frozen=True)
class PrimeVerdict:
    p: int
    decomposable: bool
    profile: WedderburnProfile
    reason: str

    def as_dict(self) -> dict:
        return {"p": self.p, "decomposable": self.decomposable, "reason": self.reason, "profile": self.profile.as_dict()}


def classify(profile: WedderburnProfile) -> str:
    if profile.radical_dim:
        return "nonzero_radical"
    if len({q for q, _ in profile.components}) > 1:
        return "nonuniform_field"
    if len({n for _, n in profile.components}) > 1:
        return "nonuniform_matrix_size"
    return "uniform"


def decide_at_prime(A: StructureAlgebra, p: int) -> PrimeVerdict:
    prof = wedderburn_profile(reduce_mod(A, p, 1))
    reason = classify(prof)
    return PrimeVerdict(p, reason == "uniform", prof, reason)


def trace_form(A: StructureAlgebra) -> sympy.Matrix:
    """``tr(L_{e_i} L_{e_j})`` over Z."""
    c = [[[int(x) for x in row] for row in mat] for mat in A.table.tolist()]
    t = A.rank
    tau = [sum(c[l][j][j] for j in range(t)) for l in range(t)]
    return sympy.Matrix(t, t, lambda i, j: sum(c[i][j][l] * tau[l] for l in range(t)))


def discriminant(A: StructureAlgebra) -> int:
    return int(trace_form(A).det())


def discriminant_primes(A: StructureAlgebra, search_bound: int | None = None):
    """Primes dividing the trace-form discriminant, or ``ALL_PRIMES`` when it vanishes.

    Only a radical can hide at these primes; a non-uniform semisimple
    reduction may occur anywhere.
    """
    disc = discriminant(A)
    if disc == 0:
        return ALL_PRIMES
    ps = sorted(int(q) for q in sympy.factorint(abs(disc)))
    if search_bound is not None:
        ps = [q for q in ps if q <= search_bound]
    return ps


def default_primes(A: StructureAlgebra) -> list[int]:
    base = [int(q) for q in sympy.primerange(2, 20)]
    dp = discriminant_primes(A)
    if dp == ALL_PRIMES:
        return base
    return sorted(set(base) | set(dp))


@dataclass(frozen=True)
class GlobalReport:
    name: str
    verdicts: tuple[PrimeVerdict, ...]
    relevant_primes: object  # list of ints or ALL_PRIMES
    discriminant: int
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def decomposable_at_tested(self) -> bool:
        return all(v.decomposable for v in self.verdicts)

    @property
    def first_failure(self) -> int | None:
        return next((v.p for v in self.verdicts if not v.decomposable), None)

    @property
    def certified(self) -> bool:
        return any(n.startswith("certified") for n in self.notes)

    def summary(self) -> str:
        if self.decomposable_at_tested:
            scope = "at every prime" if self.certified else "at all tested primes"
            return f"decomposable {scope}"
        return f"not decomposable: fails at p = {self.first_failure}"


def _notes(A: StructureAlgebra, verdicts) -> list[str]:
    cert = A.certificate or {}
    notes = []
    if cert.get("kind") == "matrix_sum":
        n, copies = cert["n"], cert["copies"]
        shape = f"M_{n}(Z)" if copies == 1 else f"a direct sum of {copies} copies of M_{n}(Z)"
        notes.append(f"certified: constructed as {shape}, so it is decomposable at every prime")
    if cert.get("kind") == "monogenic" and len(cert["poly"]) == 3:
        field_disc = int(sympy.discriminant(sympy.Poly(list(reversed(cert["poly"])), sympy.Symbol("X"))))
        ram = sorted(int(q) for q in sympy.factorint(abs(field_disc))) if field_disc else []
        fails = [v.p for v in verdicts if not v.decomposable]
        tested = {v.p for v in verdicts}
        expected = [q for q in ram if q in tested]
        notes.append(
            f"quadratic order with polynomial discriminant {field_disc}: ramified tested primes {expected}, "
            f"failing tested primes {fails}; a proper extension of Q always ramifies somewhere"
        )
    return notes


def decide_over_primes(A: StructureAlgebra, primes=None) -> GlobalReport:
    rel = discriminant_primes(A)
    if primes is None:
        if rel == ALL_PRIMES:
            raise ValueError("degenerate trace form: every prime is potentially relevant, pass an explicit prime list")
        primes = default_primes(A)
    verdicts = tuple(decide_at_prime(A, p) for p in sorted(set(int(q) for q in primes)))
    return GlobalReport(A.name, verdicts, rel, discriminant(A), tuple(_notes(A, verdicts)))
