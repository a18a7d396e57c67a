"""Command line interface: ``qpk <command> MODEL [options]``.

MODEL is a model file path or the id of a shipped fixture (``F1`` .. ``F8``).
Every command prints one JSON report.  Exit codes: 0 success, 1 oracle
disagreement, 2 precondition violated, 3 unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .classify import classify, normality_report
from .errors import ParseError, PreconditionError, ValidationError
from .kernel import Kernel, delta_classes, e_pi, je_violation, n_pi, sigma_pi
from .modelio import FIXTURES, Model, fixture_path, kernel_obj, parse_model, to_json
from .oracle import DEFAULT_MAX_N, oracle_diff
from .polytope import HPolytope, enum_vertices, je_hrep, jstar_hrep
from .refine import normal_refinement, proper_refinement, proper_refinement_on_full
from .space import Partition, fmt, probability, subset
from .towers import compatible_chain, tail_kernel_pipeline

REPORT_SCHEMA = "qpk-report/1"


def encode(obj: Any) -> Any:
    """JSON-ready form with rationals as ``"p/q"`` strings."""
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Partition):
        return obj.to_lists()
    if isinstance(obj, Kernel):
        return {"partition": obj.governing.to_lists(), "rows": kernel_obj(obj)}
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return encode(obj.as_dict())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def load_model(ref: str) -> Model:
    if ref in FIXTURES and not Path(ref).exists():
        return parse_model(fixture_path(ref))
    return parse_model(ref)


def _need_kernel(model: Model) -> tuple[Kernel, Partition]:
    if model.kernel is None:
        raise ValidationError("model has no kernel section")
    return model.kernel, model.partition


def _need_chain(model: Model):
    if model.chain is None:
        raise ValidationError("model has no chain section")
    return model.chain


def _parse_set(text: str, n: int) -> frozenset[int]:
    try:
        pts = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise ParseError(f"malformed point set {text!r}", "--full") from None
    try:
        return subset(pts, n)
    except ValidationError as exc:
        raise ParseError(str(exc), "--full") from None


def _refinement(res) -> dict:
    return {
        "kernel": res.kernel,
        "restriction_set": res.restriction_set,
        "certificate": res.certificate.as_dict(),
    }


def cmd_analyze(model: Model, args) -> dict:
    pi, e = _need_kernel(model)
    rep = classify(pi, e)
    norm = normality_report(pi, e)
    return {
        "proper": rep.proper,
        "adapted": rep.adapted,
        "normal": rep.normal,
        "witnesses": {k: w.as_dict() for k, w in sorted(rep.witnesses.items())},
        "support": rep.support,
        "delta_classes": delta_classes(pi),
        "sigma_pi": sigma_pi(pi),
        "n_pi": n_pi(pi),
        "e_pi": e_pi(pi, e),
        "normality_report": {"statements": list(norm.statements), "all_equal": norm.all_equal},
    }


def cmd_refine(model: Model, args) -> dict:
    pi, e = _need_kernel(model)
    if args.mode == "normal":
        if args.full is not None:
            raise ParseError("--full applies to --mode proper only", "--full")
        return _refinement(normal_refinement(pi, e))
    if args.full is not None:
        return _refinement(proper_refinement_on_full(pi, _parse_set(args.full, pi.n), e))
    return _refinement(proper_refinement(pi, e))


def _hrep_obj(h: HPolytope) -> dict:
    return {
        "n": h.n,
        "equalities": [{"coefficients": list(row), "rhs": rhs, "label": encode(lab)}
                       for (row, rhs), lab in zip(h.equalities, h.labels)],
    }


def _read_measure(path: str, n: int):
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read measure file: {exc.strerror}", path) from None
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None
    if isinstance(raw, dict):
        raw = raw.get("measure")
    if not isinstance(raw, list):
        raise ParseError("expected a list of rationals or {\"measure\": [...]}", path)
    return probability(raw, n)


def cmd_polytope(model: Model, args) -> dict:
    pi, e = _need_kernel(model)
    h = je_hrep(pi, e) if args.which == "JE" else jstar_hrep(pi)
    if args.member is not None:
        mu = _read_measure(args.member, pi.n)
        out: dict = {"measure": mu, "member": h.contains(mu)}
        if args.which == "JE":
            bad = je_violation(mu, pi, e)
            if bad is not None:
                atom, y, lhs, rhs = bad
                out["violation"] = {"atom": list(atom), "target": y, "lhs": lhs, "rhs": rhs}
        return out
    if args.emit == "hrep":
        return {"hrep": _hrep_obj(h)}
    verts = enum_vertices(h)
    return {"vertices": verts, "empty": not verts}


def _tower_obj(res) -> dict:
    out: dict = {"refined": list(res.refined), "intersection": res.intersection,
                 "checks": res.checks, "ok": res.ok}
    if res.limit is not None:
        out["limit"] = {"kernel": res.limit.kernel, "stable": res.limit.stable,
                        "full": res.limit.full, "unstable": res.limit.unstable}
    if res.result is not None:
        out["result"] = res.result
    return out


def cmd_tower(model: Model, args) -> dict:
    chain = _need_chain(model)
    out: dict = {"tail_partition": chain.tail}
    if chain.reference is not None:
        out["compatible"] = _tower_obj(compatible_chain(chain.reference, chain))
    out["pipeline"] = _tower_obj(tail_kernel_pipeline(chain, args.window, strict=not args.lenient))
    return out


def _diff_obj(diffs) -> list:
    return [{"check": d.check, "fast": encode(d.fast), "oracle": encode(d.oracle)} for d in diffs]


def cmd_oracle(model: Model | None, args) -> dict:
    limit = args.max_n
    if limit > DEFAULT_MAX_N:
        print(f"warning: oracle cost grows like 4^n; running with n up to {limit}", file=sys.stderr)
    out: dict = {}
    if model is not None:
        if model.n > limit:
            raise PreconditionError(f"model has n={model.n}; the oracle guard is n <= {limit}")
        out["model"] = _diff_obj(oracle_diff(model))
    if args.random:
        from .generators import random_model

        rng = random.Random(args.seed)
        failures = []
        for i in range(args.random):
            m = random_model(rng, min(limit, 6))
            diffs = oracle_diff(m)
            if diffs:
                failures.append({"index": i, "diffs": _diff_obj(diffs)})
        out["random"] = {"count": args.random, "seed": args.seed, "failures": failures}
    out["agree"] = not out.get("model") and not out.get("random", {}).get("failures")
    return out


COMMANDS = {
    "analyze": cmd_analyze,
    "refine": cmd_refine,
    "polytope": cmd_polytope,
    "tower": cmd_tower,
    "oracle": cmd_oracle,
}


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors: exit 3, keeping 2 for preconditions
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qpk", description="Exact analysis of quasi-probability kernels.")
    parser.add_argument("--version", action="version", version=f"qpk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, model_required: bool = True):
        p = sub.add_parser(name, help=help_)
        if model_required:
            p.add_argument("model", help="model file or fixture id (F1..F8)")
        else:
            p.add_argument("model", nargs="?", help="model file or fixture id (F1..F8)")
        p.add_argument("--out", help="write the report here instead of stdout")
        return p

    add("analyze", "classify a kernel and report its induced partitions")
    p = add("refine", "proper or normal refinement")
    p.add_argument("--mode", choices=("proper", "normal"), default="proper")
    p.add_argument("--full", metavar="SET", help="comma-separated full set (proper mode)")
    p = add("polytope", "J_E or J_* as constraints or vertices")
    p.add_argument("--which", choices=("JE", "Jstar"), default="JE")
    p.add_argument("--emit", choices=("vertices", "hrep"), default="vertices")
    p.add_argument("--member", metavar="FILE", help="JSON measure to test for membership")
    p = add("tower", "compatible family and tail-kernel pipeline for a chain")
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--lenient", action="store_true", help="zero unstable rows instead of failing")
    p = add("oracle", "re-derive fast-path results by brute force", model_required=False)
    p.add_argument("--random", type=int, default=0, metavar="N", help="also check N random models")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="dimension guard")
    return parser


def _echo(args) -> dict:
    out = {"name": args.command}
    for key in ("mode", "full", "which", "emit", "window", "lenient", "random", "seed", "max_n"):
        if getattr(args, key, None) not in (None, False):
            out[key] = getattr(args, key)
    if getattr(args, "member", None):
        out["member"] = Path(args.member).name
    return out


def run(args) -> tuple[int, dict]:
    model = load_model(args.model) if args.model is not None else None
    if model is None and args.command != "oracle":
        raise ParseError("a model is required")
    result = COMMANDS[args.command](model, args)
    report = {
        "schema": REPORT_SCHEMA,
        "command": _echo(args),
        "model": model.name if model is not None else None,
        "result": encode(result),
    }
    code = 1 if args.command == "oracle" and not result["agree"] else 0
    return code, report


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, report = run(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 2
    text = to_json(report) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
