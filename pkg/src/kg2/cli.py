"""Command-line front end.

    kg2 normalize WORD --theta FILE
    kg2 period --theta FILE [--max-a N --max-b N]
    kg2 rep {validate,dilate,classify,wander} --rep FILE [--depth N --bound N]
    kg2 fock {verify,example33,structure} [...]

Exit codes: 0 ok, 2 parse/precondition, 3 index out of range, 4 search space
too large, 5 dilation inconsistency, 6 depth insufficient, 7 residual check
failed.  Every nonzero exit prints a JSON object with an ``error`` member.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .atomic import DilationError, PreconditionError, classify, dilate, export_dot, load_rep, validate
from .conditions import DepthInsufficient
from .core import IndexOutOfRange, TwoGraphError, format_word, load_theta, normal_form, parse_word
from .fock import (
    EXACT_TOL,
    CapExceeded,
    CheckReport,
    MatrixRep,
    build_left_regular,
    defect_residual,
    dump_coo,
    example_3_3_check,
    example_3_3_commutation,
    star_commute_check,
    structure_check,
    verify_commutation_numeric,
    verify_cuntz_interior,
)
from .periodicity import SearchSpaceTooLarge, find_period
from .wandering import Inconclusive, check_conditions, find_wandering

EXIT_PARSE = 2
EXIT_INDEX = 3
EXIT_SEARCH = 4
EXIT_DILATION = 5
EXIT_DEPTH = 6
EXIT_RESIDUAL = 7


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    depth: int = 4
    word_bound: int = 4
    max_a: int = 4
    max_b: int = 4
    tolerance: float = 1e-10
    format: str = "json"
    out: str | None = None

    def __post_init__(self):
        for name in ("word_bound", "max_a", "max_b"):
            if getattr(self, name) < 1:
                raise PreconditionError(f"{name} must be positive")
        if self.depth < 0:
            raise PreconditionError("depth must be non-negative")
        if not self.tolerance > 0:
            raise PreconditionError("tolerance must be positive")


class ResidualFailure(Exception):
    def __init__(self, payload):
        super().__init__("residual check failed")
        self.payload = payload


def _dumps(obj, lines=False) -> str:
    if lines:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return json.dumps(obj, sort_keys=True, indent=2)


def _text(obj, prefix="") -> list[str]:
    out = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{prefix}{k}:")
                out.extend(_text(v, prefix + "  "))
            else:
                out.append(f"{prefix}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            out.append(f"{prefix}- {json.dumps(v, sort_keys=True)}")
    else:
        out.append(f"{prefix}{obj}")
    return out


def _render(obj, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(obj)) + "\n"
    return _dumps(obj) + "\n"


def _require(value, flag):
    if value is None:
        raise PreconditionError(f"{flag} is required")
    return value


def _load_json_error(exc):
    return PreconditionError(f"cannot read input: {exc}")


def _theta(path):
    try:
        return load_theta(_require(path, "--theta"))
    except (OSError, json.JSONDecodeError) as exc:
        raise _load_json_error(exc) from exc


def _rep(path):
    try:
        return load_rep(_require(path, "--rep"))
    except (OSError, json.JSONDecodeError) as exc:
        raise _load_json_error(exc) from exc


# --- commands -------------------------------------------------------------


def cmd_normalize(args, cfg: RunConfig) -> str:
    G = _theta(args.theta)
    w = normal_form(parse_word(args.word), G)
    text = f"{format_word(w)} d=({len(w.u)},{len(w.v)})"
    if cfg.format == "json":
        return _dumps({"word": args.word, "u": list(w.u), "v": list(w.v), "degree": list(w.degree), "normal_form": format_word(w)}) + "\n"
    return text + "\n"


def cmd_period(args, cfg: RunConfig) -> str:
    G = _theta(args.theta)
    return _render(find_period(G, cfg.max_a, cfg.max_b).to_json(), cfg.format)


def cmd_rep(args, cfg: RunConfig) -> str:
    A = _rep(args.rep)
    if args.sub == "validate":
        return _render(validate(A).to_json(), cfg.format)
    D = dilate(A, cfg.depth)
    if args.sub == "dilate":
        if cfg.format == "dot":
            return export_dot(D)
        return _render(D.to_json(), cfg.format)
    if args.sub == "classify":
        return _render(classify(D, cfg.word_bound).to_json(), cfg.format)
    # wander
    lines = []
    for x in D.graph.vertices:
        lines.append(_dumps(check_conditions(D, x, cfg.word_bound).to_json(), lines=True))
    cls = classify(D, cfg.word_bound) if D.core else None
    try:
        verdict = find_wandering(D, cls, cfg.word_bound, max_ab=max(cfg.max_a, cfg.max_b)).to_json()
        verdict["inconclusive"] = False
    except Inconclusive as exc:
        verdict = {"vertex": None, "inconclusive": True, "reason": str(exc)}
    verdict["class"] = None if cls is None else cls.to_json()
    lines.append(_dumps({"verdict": verdict}, lines=True))
    return "\n".join(lines) + "\n"


def _fock_model(args, cfg):
    if args.rep is not None:
        return MatrixRep.from_dilation(dilate(_rep(args.rep), cfg.depth))
    return build_left_regular(_theta(args.theta), args.L)


def cmd_fock(args, cfg: RunConfig) -> str:
    reports: list[CheckReport] = []
    if args.sub == "example33":
        import numpy as np

        vec = example_3_3_check(args.n, args.L)
        vac = np.zeros_like(vec)
        vac[0] = 1.0
        reports.append(CheckReport("example33_vacuum", float(np.abs(vec - vac).max()), args.L, EXACT_TOL))
        reports.append(CheckReport("example33_commutation", example_3_3_commutation(args.n, args.L), args.L, EXACT_TOL))
        payload = {"reports": [r.to_json() for r in reports]}
    elif args.sub == "verify":
        M = _fock_model(args, cfg)
        reports.append(verify_cuntz_interior(M))
        reports.append(verify_commutation_numeric(M))
        if isinstance(M, MatrixRep):
            reports.append(CheckReport("defect_free", defect_residual(M), None, EXACT_TOL))
        if M.theta.is_identity():
            reports.append(star_commute_check(M))
        if args.dump:
            out = Path(args.dump)
            out.mkdir(parents=True, exist_ok=True)
            for (color, k), A in sorted(M.gens.items()):
                (out / f"{color}{k}.coo").write_text(dump_coo(A))
        payload = {"reports": [r.to_json() for r in reports]}
    else:  # structure
        A = _rep(args.rep)
        D = dilate(A, cfg.depth)
        proj = args.projection.split(",") if args.projection else None
        sc = structure_check(MatrixRep.from_dilation(D, proj), cfg.word_bound, cfg.tolerance)
        payload = {"reports": [sc.to_json()]}
        if not sc.passed:
            payload["pass"] = False
            raise ResidualFailure(payload)
    asserted = [r for r in reports if r.asserted]
    payload["pass"] = all(r.passed for r in asserted)
    if not payload["pass"]:
        raise ResidualFailure(payload)
    return _render(payload, cfg.format)


# --- plumbing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta")
    common.add_argument("--rep")
    common.add_argument("--depth", type=int, default=4)
    common.add_argument("--bound", type=int, default=4)
    common.add_argument("--max-a", type=int, default=4)
    common.add_argument("--max-b", type=int, default=4)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--format", choices=("json", "text", "dot"))
    common.add_argument("--out")

    p = argparse.ArgumentParser(prog="kg2", description="single-vertex 2-graph toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    q = sub.add_parser("normalize", parents=[common], help="normal form e(u) f(v) of a word")
    q.add_argument("word")
    sub.add_parser("period", parents=[common], help="search for a period (a,-b)")
    q = sub.add_parser("rep", parents=[common], help="atomic representation pipelines")
    q.add_argument("sub", choices=("validate", "dilate", "classify", "wander"))
    q = sub.add_parser("fock", parents=[common], help="sparse matrix checks")
    q.add_argument("sub", choices=("verify", "example33", "structure"))
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--L", type=int, default=3)
    q.add_argument("--projection", help="comma-separated vertices replacing the core projection")
    q.add_argument("--dump", help="directory for coordinate dumps of the generators")
    return p


def _error(exc, code) -> str:
    return _dumps({"error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}}) + "\n"


def _classify_exc(exc) -> int:
    if isinstance(exc, IndexOutOfRange):
        return EXIT_INDEX
    if isinstance(exc, (SearchSpaceTooLarge, CapExceeded)):
        return EXIT_SEARCH
    if isinstance(exc, DilationError):
        return EXIT_DILATION
    if isinstance(exc, DepthInsufficient):
        return EXIT_DEPTH
    if isinstance(exc, (TwoGraphError, PreconditionError, ValueError)):
        return EXIT_PARSE
    return 1


def run(argv=None) -> tuple[int, str, str | None]:
    """Run a command; returns (exit code, output text, --out path)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = int(exc.code or 0)
        if code == 0:
            return 0, "", None
        return EXIT_PARSE, _error(PreconditionError("bad command line"), EXIT_PARSE), None
    try:
        fmt = args.format or ("text" if args.command == "normalize" else "json")
        cfg = RunConfig(
            args.command,
            args.rep or args.theta,
            args.depth,
            args.bound,
            args.max_a,
            args.max_b,
            args.tol,
            fmt,
            args.out,
        )
        handler = {"normalize": cmd_normalize, "period": cmd_period, "rep": cmd_rep, "fock": cmd_fock}[args.command]
        return 0, handler(args, cfg), cfg.out
    except ResidualFailure as exc:
        payload = dict(exc.payload)
        payload["error"] = {"type": "ResidualFailure", "message": "residual above tolerance", "exit_code": EXIT_RESIDUAL}
        return EXIT_RESIDUAL, _dumps(payload) + "\n", None
    except Exception as exc:  # mapped onto the exit-code table
        code = _classify_exc(exc)
        if code == 1:
            raise
        return code, _error(exc, code), None


def main(argv=None) -> int:
    code, text, out_path = run(argv)
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
