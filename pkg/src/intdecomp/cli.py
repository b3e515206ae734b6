"""Command line interface: ``intdecomp <command> [source] [options]``.

Every command builds a plain dict and renders it either as text or as JSON
(``{"schema": 1, ...}``), so both outputs are deterministic functions of the
inputs. Exit codes: 0 on completed analysis, 2 on input errors, 3 when an
enumeration budget is exceeded.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import dataclass, fields

from . import __version__, render
from .algebra import (
    DEFAULT_BUDGET,
    AlgebraFormatError,
    BudgetExceeded,
    InvalidAlgebraError,
    StructureAlgebra,
    load_algebra,
    reduce_mod,
    validate,
)
from .constructors import FIXTURES, fixture
from .decide import ALL_PRIMES, decide_over_primes
from .ivp import DEFAULT_K_MAX, nu_sequence, verify_phi
from .null_ideals import full_null_ideal, is_N_decomposable, minimal_monic_degree, scalar_null_ideal
from .residue import residue_tower_diagnostic, wedderburn_profile
from .zmod import ModulusError, check_prime_power

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class AnalysisConfig:
    primes: tuple[int, ...] | None = None
    prime: int = 2
    degree: int | None = None
    level: int = 1
    cap: int = DEFAULT_K_MAX
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    format: str = "text"
    tower: int = 0

    def check(self) -> "AnalysisConfig":
        for name in ("level", "cap", "budget"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.degree is not None and self.degree < 0:
            raise ConfigError(f"degree must be non-negative, got {self.degree}")
        if self.tower < 0:
            raise ConfigError(f"tower must be non-negative, got {self.tower}")
        if self.format not in ("text", "json"):
            raise ConfigError(f"format must be text or json, got {self.format!r}")
        for q in (self.prime,) + tuple(self.primes or ()):
            check_prime_power(q, 1)
        check_prime_power(self.prime, self.level)
        return self


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise ConfigError(f"cannot parse prime list {text!r}") from None


_CONVERTERS = {"primes": _parse_primes, "format": str}


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    names = {f.name for f in fields(AnalysisConfig)}
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    for no, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{no}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in names:
            raise ConfigError(f"{path}:{no}: unknown key {key!r}")
        try:
            out[key] = _CONVERTERS.get(key, int)(value)
        except ValueError:
            raise ConfigError(f"{path}:{no}: bad value {value!r} for {key}") from None
    return out


def build_config(args) -> AnalysisConfig:
    values = read_config(args.config) if args.config else {}
    for f in fields(AnalysisConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    return AnalysisConfig(**values).check()


def load_source(args) -> StructureAlgebra:
    if args.fixture and args.source:
        raise ConfigError("give either a file or --fixture, not both")
    if args.fixture:
        if args.fixture not in FIXTURES:
            raise ConfigError(f"unknown fixture {args.fixture!r}; try the fixtures command")
        return fixture(args.fixture)
    if not args.source:
        raise ConfigError("no algebra given: pass a JSON file or --fixture NAME")
    return load_algebra(args.source)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _header(cmd: str, A: StructureAlgebra | None, cfg: AnalysisConfig) -> dict:
    out = {"schema": SCHEMA, "command": cmd, "seed": cfg.seed}
    if A is not None:
        out["algebra"] = A.name
        out["rank"] = A.rank
    return out


def _default_degree(p: int, k: int, t: int) -> int:
    return min(2 * p**k * t, 12)


def cmd_validate(A, cfg):
    rep = validate(A)
    out = _header("validate", A, cfg)
    out.update(
        valid=rep.valid,
        standard_assumptions=A.standard_assumptions,
        associativity_witness=list(rep.associativity_witness) if rep.associativity_witness else None,
        unity_failures=list(rep.unity_failures),
        basis=list(A.basis_names),
    )
    return out


def cmd_profile(A, cfg):
    A.require_valid()
    prof = wedderburn_profile(reduce_mod(A, cfg.prime, 1, cfg.budget))
    out = _header("profile", A, cfg)
    out["profile"] = prof.as_dict()
    out["description"] = prof.describe()
    if cfg.tower:
        rep = residue_tower_diagnostic(A, cfg.prime, cfg.tower, cfg.budget)
        out["tower"] = [lv.as_dict() for lv in rep.levels]
        out["tower_consistent"] = rep.consistent
    return out


def _poly_list(module, names, p, k):
    m = p**k
    if module.width == 1:
        return [render.scalar_poly(r, m) for r in module.basis.entries]
    return [render.algebra_poly(r.reshape(-1, module.width), names, m, p, k) for r in module.basis.entries]


def cmd_null(A, cfg):
    A.require_valid()
    p, k = cfg.prime, cfg.level
    Ak = reduce_mod(A, p, k, cfg.budget)
    d = cfg.degree if cfg.degree is not None else _default_degree(p, k, A.rank)
    scal = scalar_null_ideal(Ak, d)
    full = full_null_ideal(Ak, d)
    mono = minimal_monic_degree(Ak, d)
    dec = is_N_decomposable(Ak, d)
    out = _header("null", A, cfg)
    out.update(
        prime=p,
        level=k,
        degree=d,
        scalar_basis=_poly_list(scal, A.basis_names, p, k),
        scalar_size=scal.cardinality(),
        full_rank=full.rank,
        full_size=full.cardinality(),
        minimal_monic_degree=mono[0] if mono else None,
        minimal_monic=render.scalar_poly(mono[1].coeffs, p**k) if mono else None,
        n_decomposable=dec.decomposable,
        witness=None
        if dec.witness is None
        else render.algebra_poly(dec.witness.coeffs, A.basis_names, p**k, p, k),
        verified_up_to_degree=d,
    )
    return out


def cmd_nu(A, cfg):
    A.require_valid()
    d = cfg.degree if cfg.degree is not None else 4
    seq, basis = nu_sequence(A, cfg.prime, d, cfg.cap, cfg.budget)
    out = _header("nu", A, cfg)
    out.update(
        prime=cfg.prime,
        degree=d,
        cap=cfg.cap,
        nu=list(seq.nu),
        saturated=list(seq.saturated),
        nondecreasing=seq.nondecreasing(),
        witnesses=[
            render.scalar_fraction(basis.polys[j], cfg.prime ** max(basis.exponents[j], 1), basis.denominator(j))
            for j in range(d + 1)
        ],
    )
    return out


def cmd_decide(A, cfg):
    A.require_valid()
    rep = decide_over_primes(A, cfg.primes)
    out = _header("decide", A, cfg)
    out.update(
        verdicts=[v.as_dict() for v in rep.verdicts],
        relevant_primes=rep.relevant_primes if rep.relevant_primes == ALL_PRIMES else list(rep.relevant_primes),
        discriminant=rep.discriminant,
        summary=rep.summary(),
        notes=list(rep.notes),
    )
    return out


def cmd_verify_phi(A, cfg):
    A.require_valid()
    p, k = cfg.prime, cfg.level
    d = cfg.degree if cfg.degree is not None else _default_degree(p, k, A.rank)
    res = verify_phi(A, p, d, k, cfg.budget)
    out = _header("verify-phi", A, cfg)
    out.update(
        prime=p,
        level=k,
        degree=d,
        ok=res.ok,
        image_rank=res.image_rank,
        target_rank=res.target_rank,
        levels_n_decomposable=list(res.lemma_levels),
        witness=None
        if res.witness is None
        else render.algebra_poly(res.witness.coeffs, A.basis_names, p**k, p, k, denom=p**k),
    )
    return out


def cmd_fixtures(_A, cfg):
    out = _header("fixtures", None, cfg)
    out["fixtures"] = [{"name": n, "description": FIXTURES[n][0], "rank": fixture(n).rank} for n in FIXTURES]
    return out


COMMANDS = {
    "validate": cmd_validate,
    "profile": cmd_profile,
    "null": cmd_null,
    "nu": cmd_nu,
    "decide": cmd_decide,
    "verify-phi": cmd_verify_phi,
    "fixtures": cmd_fixtures,
}


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------


def _yn(b) -> str:
    return "yes" if b else "no"


def to_text(r: dict) -> str:
    cmd = r["command"]
    lines = []
    if "algebra" in r:
        lines.append(f"algebra: {r['algebra']} (rank {r['rank']})")
    if cmd == "validate":
        lines.append(f"valid: {_yn(r['valid'])}")
        lines.append(f"basis: {', '.join(r['basis'])}")
        if r["associativity_witness"]:
            i, j, k = r["associativity_witness"]
            lines.append(f"associativity fails for (e{i}, e{j}, e{k})")
        if r["unity_failures"]:
            lines.append("unity fails on: " + ", ".join(f"e{i}" for i in r["unity_failures"]))
    elif cmd == "profile":
        lines.append(r["description"])
        lines.append(f"center dimension: {r['profile']['center_dim']}")
        for lv in r.get("tower", []):
            lines.append(
                f"  k={lv['k']}: |rad| = {lv['radical_size']}, |pA_k| = {lv['p_ideal_size']}, "
                f"consistent: {_yn(lv['consistent'])} ({lv['method']})"
            )
    elif cmd == "null":
        lines.append(f"A/{r['prime']}^{r['level']}A, degree <= {r['degree']}")
        lines.append(f"scalar null ideal: {r['scalar_size']} elements")
        for f in r["scalar_basis"]:
            lines.append(f"  {f}")
        lines.append(f"full null ideal: {r['full_size']} elements, {r['full_rank']} Howell rows")
        if r["minimal_monic_degree"] is None:
            lines.append("no monic member up to this degree")
        else:
            lines.append(f"minimal monic member: degree {r['minimal_monic_degree']}: {r['minimal_monic']}")
        lines.append(f"N-decomposable up to degree {r['verified_up_to_degree']}: {_yn(r['n_decomposable'])}")
        if r["witness"]:
            lines.append(f"witness: {r['witness']}")
    elif cmd == "nu":
        lines.append(f"p = {r['prime']}, degree <= {r['degree']}, cap {r['cap']}")
        for j, (n, s, w) in enumerate(zip(r["nu"], r["saturated"], r["witnesses"])):
            lines.append(f"  nu_{j} = {n}{' (cap reached)' if s else ''}: {w}")
        lines.append(f"nondecreasing: {_yn(r['nondecreasing'])}")
    elif cmd == "decide":
        rel = r["relevant_primes"]
        lines.append(f"trace-form discriminant: {r['discriminant']}")
        lines.append("discriminant primes: " + ("all (degenerate form)" if rel == ALL_PRIMES else str(rel)))
        for v in r["verdicts"]:
            comps = " + ".join(f"M_{c['n']}(F_{c['q']})" for c in v["profile"]["components"])
            lines.append(
                f"  p = {v['p']}: {'decomposable' if v['decomposable'] else 'not decomposable'} "
                f"({v['reason']}; {comps or '0'}, radical dimension {v['profile']['radical_dim']})"
            )
        lines.append(r["summary"])
        lines.extend(f"note: {n}" for n in r["notes"])
    elif cmd == "verify-phi":
        lines.append(f"p = {r['prime']}, level {r['level']}, degree <= {r['degree']}")
        lines.append(f"image rank {r['image_rank']}, Int(A) rank {r['target_rank']}")
        lines.append("PASS" if r["ok"] else "FAIL")
        if r["witness"]:
            lines.append(f"witness: {r['witness']}")
    elif cmd == "fixtures":
        width = max(len(f["name"]) for f in r["fixtures"])
        for f in r["fixtures"]:
            lines.append(f"{f['name']:<{width}}  rank {f['rank']:>2}  {f['description']}")
    return "\n".join(lines) + "\n"


def to_json(r: dict) -> str:
    return json.dumps(r, sort_keys=True, indent=2) + "\n"


def render_result(r: dict, fmt: str) -> str:
    return to_json(r) if fmt == "json" else to_text(r)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="intdecomp", description="Integer-valued polynomial analysis of Z-algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        if name != "fixtures":
            sp.add_argument("source", nargs="?", help="algebra JSON file")
            sp.add_argument("--fixture", help="bundled algebra name")
        sp.add_argument("--config", help="key = value file; flags override it")
        sp.add_argument("--json", dest="format", action="store_const", const="json", default=None)
        sp.add_argument("--budget", type=int)
        sp.add_argument("--seed", type=int)
        if name in ("profile", "null", "nu", "verify-phi"):
            sp.add_argument("--prime", type=int)
        if name in ("null", "nu", "verify-phi"):
            sp.add_argument("--degree", type=int)
        if name in ("null", "verify-phi"):
            sp.add_argument("--level", type=int)
        if name == "nu":
            sp.add_argument("--cap", type=int)
        if name == "decide":
            sp.add_argument("--primes", type=_parse_primes)
        if name == "profile":
            sp.add_argument("--tower", type=int, help="also run the residue tower up to this level")
    return parser


def run(argv=None) -> tuple[int, str, str]:
    """Returns ``(exit code, stdout text, stderr text)``."""
    parser = build_parser()
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), out.getvalue(), err.getvalue()
    try:
        cfg = build_config(args)
        A = None if args.command == "fixtures" else load_source(args)
        result = COMMANDS[args.command](A, cfg)
    except BudgetExceeded as exc:
        return EXIT_BUDGET, "", f"error: {exc}\n"
    except (ConfigError, AlgebraFormatError, InvalidAlgebraError, ModulusError, OSError, ValueError) as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    code = EXIT_INPUT if args.command == "validate" and not result["valid"] else EXIT_OK
    return code, render_result(result, cfg.format), ""


def main(argv=None) -> int:
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
