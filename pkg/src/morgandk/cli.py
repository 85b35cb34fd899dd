"""Batch front end: check theory files, normalize terms, query the
algebraic oracles, run the confluence analyzer, export the corpus.

Exit codes, uniformly: 0 success, 1 semantic failure (type error,
refuted equation, non-joinable pair), 2 input problem (missing file,
parse error, out-of-domain oracle query), 3 fuel exhausted.  All
orderings in reports follow declaration order, so identical inputs
print identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .algebra import (Fails, Holds, OracleError, OutOfDomain, face_eq,
                      face_from_term, interval_eq, interval_from_term)
from .check import (DEFAULT_FUEL, Signature, TypeCheckError,
                    check_declaration)
from .parser import ParseError, parse_file, parse_term, pretty
from .rewrite import (CriticalPair, Fuel, FuelExhausted, critical_pairs,
                      joinable)
from .theory import FULL_CONFIG, TheoryConfig, build_theory

FUEL_ENV = "MORGANDK_FUEL"

# constants the oracle grammar knows; everything else is a generator
_ORACLE_CONSTS = frozenset(
    {"0", "1", "sym", "Imin", "Imax", "0f", "1f", "eq0", "eq1",
     "Fmin", "Fmax"})

_FLAG_NAMES = ("t1", "t2", "t3", "univalence", "cubical")


def _config_from_flags(flags: list[str] | None) -> TheoryConfig:
    """No flags: the full built-in theory.  Any flag: start from the
    bare core and switch on exactly what was asked."""
    if not flags:
        return FULL_CONFIG
    cfg = TheoryConfig()
    for f in flags:
        if f == "t1":
            cfg = replace(cfg, t1_injectivity=True)
        elif f == "t2":
            cfg = replace(cfg, t2_primitive_iso_as_rewrite=True)
        elif f == "t3":
            cfg = replace(cfg, t3_repletion=True)
        elif f == "univalence":
            cfg = replace(cfg, include_weak_univalence=True)
        elif f == "cubical":
            cfg = replace(cfg, cubical=True)
        elif f.startswith("nat="):
            cfg = replace(cfg, nat_morphism_strength=f[len("nat="):])
        else:
            raise ValueError(
                f"unknown flag {f!r}: expected one of "
                f"{', '.join(_FLAG_NAMES)} or nat=<strength>")
    return cfg


def _resolve_fuel(arg_fuel: int | None) -> int:
    if arg_fuel is not None:
        fuel = arg_fuel
    else:
        env = os.environ.get(FUEL_ENV)
        fuel = int(env) if env else DEFAULT_FUEL
    if fuel <= 0:
        raise ValueError(f"fuel must be positive, got {fuel}")
    return fuel


class _Out:
    """Result channel: plain text or one JSON object per line."""

    def __init__(self, fmt: str):
        self.json = fmt == "json-lines"

    def emit(self, text: str, **payload) -> None:
        if self.json:
            print(json.dumps(payload, sort_keys=True))
        else:
            print(text)


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


def _require_paths(paths: list[str]) -> list[Path] | None:
    out = []
    for p in paths:
        path = Path(p)
        if not path.is_file():
            _diag(f"error: no such file: {p}")
            return None
        out.append(path)
    return out


def _check_files(paths: list[Path], fuel_steps: int,
                 out: _Out | None = None) -> Signature:
    """One concatenated signature, in argument order."""
    sig = Signature()
    consts: set[str] = set()
    defs: set[str] = set()
    for path in paths:
        decls = parse_file(path.read_text(), str(path), consts, defs)
        for d in decls:
            check_declaration(sig, d, fuel_steps)
        if out is not None:
            out.emit(f"checked {path} ({len(decls)} declarations)",
                     event="checked", file=str(path), declarations=len(decls))
    return sig


def cmd_check(args) -> int:
    paths = _require_paths(args.paths)
    if paths is None:
        return 2
    out = _Out(args.format)
    fuel = _resolve_fuel(args.fuel)
    _check_files(paths, fuel, out)
    return 0


def cmd_reduce(args) -> int:
    out = _Out(args.format)
    fuel = _resolve_fuel(args.fuel)
    if args.paths:
        paths = _require_paths(args.paths)
        if paths is None:
            return 2
        sig = _check_files(paths, fuel)
    else:
        sig = build_theory(_config_from_flags(args.flag), fuel)
    term = parse_term(args.term, frozenset(sig.consts))
    red = sig.reducer(fuel=Fuel(fuel))
    if args.trace:
        nf, steps = red.normalize_traced(term)
        for pos, rule in steps:
            out.emit(f"step {rule} at {'.'.join(pos) or 'root'}",
                     event="step", rule=rule, path=list(pos))
        out.emit(pretty(nf), event="normal", term=pretty(nf))
    else:
        out.emit(pretty(red.normalize(term)),
                 event="normal", term=pretty(red.normalize(term)))
    return 0


def cmd_oracle(args) -> int:
    out = _Out(args.format)
    if args.kind == "interval":
        lhs = interval_from_term(parse_term(args.lhs, _ORACLE_CONSTS))
        rhs = interval_from_term(parse_term(args.rhs, _ORACLE_CONSTS))
        verdict = interval_eq(lhs, rhs)
    else:
        lhs = face_from_term(parse_term(args.lhs, _ORACLE_CONSTS))
        rhs = face_from_term(parse_term(args.rhs, _ORACLE_CONSTS))
        verdict = face_eq(lhs, rhs)
    if isinstance(verdict, Holds):
        out.emit("holds", event="verdict", holds=True)
        return 0
    witness = {n: v.name.title() for n, v in sorted(verdict.witness.items())}
    lines = ", ".join(f"{n} = {v}" for n, v in witness.items())
    out.emit(f"fails at {lines}", event="verdict", holds=False,
             witness=witness)
    return 1


def _report_pair(out: _Out, cp: CriticalPair, verdict) -> None:
    ok = isinstance(verdict, Holds)
    if out.json:
        payload = {"event": "critical-pair", "rule1": cp.rule1,
                   "rule2": cp.rule2, "path": list(cp.position),
                   "joinable": ok, "peak": pretty(cp.peak)}
        if not ok:
            payload["left"] = pretty(verdict.witness[0])
            payload["right"] = pretty(verdict.witness[1])
        out.emit("", **payload)
    elif not ok:
        out.emit(f"non-joinable: {cp.rule1} overlaps {cp.rule2} "
                 f"at {'.'.join(cp.position) or 'root'}")
        out.emit(f"  peak:  {pretty(cp.peak)}")
        out.emit(f"  left:  {pretty(verdict.witness[0])}")
        out.emit(f"  right: {pretty(verdict.witness[1])}")


def cmd_cp(args) -> int:
    out = _Out(args.format)
    fuel = _resolve_fuel(args.fuel)
    ctx_paths = _require_paths(args.context or [])
    tgt_paths = _require_paths(args.paths)
    if ctx_paths is None or tgt_paths is None:
        return 2
    sig = Signature()
    consts: set[str] = set()
    defs: set[str] = set()
    for path in ctx_paths:
        for d in parse_file(path.read_text(), str(path), consts, defs):
            check_declaration(sig, d, fuel)
    before = {head: len(rs) for head, rs in sig.rules.items()}
    for path in tgt_paths:
        for d in parse_file(path.read_text(), str(path), consts, defs):
            check_declaration(sig, d, fuel)
    target_rules = []
    for head in sig.order:
        rs = sig.rules.get(head, [])
        target_rules.extend(rs[before.get(head, 0):])
    pairs = critical_pairs(target_rules)
    bad = 0
    for cp in pairs:
        red = sig.reducer(fuel=Fuel(fuel))
        verdict = joinable(red, cp)
        if not isinstance(verdict, Holds):
            bad += 1
        _report_pair(out, cp, verdict)
    out.emit(f"critical pairs: {len(pairs)}, non-joinable: {bad}",
             event="summary", pairs=len(pairs), non_joinable=bad)
    return 1 if bad else 0


def cmd_export(args) -> int:
    from .theory import write_theory_files
    out = _Out(args.format)
    written = write_theory_files(args.dest, _config_from_flags(args.flag))
    for p in written:
        out.emit(str(p), event="written", file=str(p))
    return 0


def _add_common(p: argparse.ArgumentParser, fuel=True, flags=False) -> None:
    p.add_argument("--format", choices=("text", "json-lines"),
                   default="text")
    if fuel:
        p.add_argument("--fuel", type=int, default=None,
                       help=f"reduction step budget (default: "
                            f"${FUEL_ENV} or {DEFAULT_FUEL})")
    if flags:
        p.add_argument("--flag", action="append", default=[],
                       metavar="NAME",
                       help="theory flag: t1, t2, t3, univalence, "
                            "cubical, or nat=<none|external_eq|"
                            "definitional>; repeatable")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="morgandk",
        description="type-check, normalize and analyze two-layer "
                    "theory files")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="type-check files as one signature")
    _add_common(p)
    p.add_argument("paths", nargs="+", metavar="FILE")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("reduce", help="print a term's normal form")
    _add_common(p, flags=True)
    p.add_argument("--trace", action="store_true",
                   help="print each rewrite step")
    p.add_argument("term")
    p.add_argument("paths", nargs="*", metavar="FILE",
                   help="theory files (default: the built-in theory)")
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("oracle",
                       help="decide an algebraic equation semantically")
    _add_common(p, fuel=False)
    p.add_argument("kind", choices=("interval", "face"))
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("cp", help="critical pair analysis of rule files")
    _add_common(p)
    p.add_argument("--context", action="append", metavar="FILE",
                   help="checked for scope but excluded from the pair "
                        "set; repeatable")
    p.add_argument("paths", nargs="+", metavar="FILE")
    p.set_defaults(run=cmd_cp)

    p = sub.add_parser("export", help="write the theory corpus to disk")
    _add_common(p, fuel=False, flags=True)
    p.add_argument("dest")
    p.set_defaults(run=cmd_export)

    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as e:
        _diag(f"parse error: {e}")
        return 2
    except (OracleError, OutOfDomain) as e:
        _diag(f"oracle error: {e}")
        return 2
    except OSError as e:
        _diag(f"error: {e}")
        return 2
    except ValueError as e:
        _diag(f"error: {e}")
        return 2
    except TypeCheckError as e:
        _diag(f"type error: {e}")
        return 1
    except FuelExhausted:
        _diag("error: fuel exhausted")
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
