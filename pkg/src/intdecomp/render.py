"""Text rendering of residues, algebra elements and polynomials.

Polynomials are written in ascending degree. Algebra coordinates use the
residue in ``(-m/2, m/2]``; non-leading polynomial coefficients use
``[-m/2, m/2)`` so that ``X + X^2`` mod 2 prints as ``-X + X^2``.
"""
from __future__ import annotations

import numpy as np

from .zmod import ModMatrix, solve_left


def centered(c: int, m: int) -> int:
    c %= m
    return c - m if 2 * c > m else c


def centered_low(c: int, m: int) -> int:
    c %= m
    return c - m if 2 * c >= m else c


def _join(terms: list[tuple[int, str]]) -> str:
    """``(coefficient, monomial)`` pairs, monomial ``""`` meaning a constant."""
    out = ""
    for i, (c, mono) in enumerate(terms):
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}{mono}" if mono.startswith("X") else f"{mag}·{mono}"
        else:
            body = str(mag)
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def element(coords, names, m: int) -> str:
    terms = []
    for c, name in zip(coords, names):
        c = centered(int(c), m)
        if c:
            terms.append((c, "" if name == "1" else name))
    return _join(terms)


def monomial(j: int) -> str:
    return "" if j == 0 else "X" if j == 1 else f"X^{j}"


def scalar_poly(coeffs, m: int) -> str:
    coeffs = [int(c) % m for c in coeffs]
    nz = [j for j, c in enumerate(coeffs) if c]
    if not nz:
        return "0"
    top = nz[-1]
    terms = []
    for j in nz:
        c = centered(coeffs[j], m) if j == top else centered_low(coeffs[j], m)
        terms.append((c, monomial(j)))
    return _join(terms)


def _with_denominator(body: str, denom: int, grouped: bool) -> str:
    if denom == 1:
        return body
    return f"{body} / {denom}" if grouped else f"({body}) / {denom}"


def scalar_fraction(coeffs, m: int, denom: int) -> str:
    return _with_denominator(scalar_poly(coeffs, m), denom, False)


def algebra_poly(coeffs: np.ndarray, names, m: int, p: int, k: int, denom: int = 1) -> str:
    """Pulls out a common left factor ``u`` when every coefficient is a scalar multiple of it."""
    coeffs = np.asarray(coeffs, dtype=np.int64) % m
    nz = [j for j in range(coeffs.shape[0]) if coeffs[j].any()]
    if not nz:
        return "0"
    u = coeffs[nz[0]]
    unit = ModMatrix(u[None, :], p, k)
    scalars = []
    for j in range(coeffs.shape[0]):
        x = solve_left(unit, coeffs[j])
        if x is None:
            scalars = None
            break
        scalars.append(int(x[0]))
    if scalars is not None:
        poly = scalar_poly(scalars, m)
        one = np.zeros_like(u)
        if names and names[0] == "1":
            one[0] = 1
        if np.array_equal(u, one):
            return _with_denominator(poly, denom, False)
        return _with_denominator(f"({element(u, names, m)})·({poly})", denom, True)
    terms = []
    for j in nz:
        terms.append(f"({element(coeffs[j], names, m)}){'·' + monomial(j) if j else ''}")
    return _with_denominator(" + ".join(terms), denom, False)
