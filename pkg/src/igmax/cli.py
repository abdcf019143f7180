"""Command-line front end.

Subcommands run the full pipelines (``construct1`` for presentation inputs,
``construct2`` for multiplication tables, ``rectband`` for the pure band) or
a single stage on a previously dumped document (``squares``, ``verify``) or
a presentation file (``simplify``).  Output is a human-readable report or a
versioned JSON document (``--format structured``); structured output is
byte-identical across runs on the same input.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .cayley import CayleyValidationError
from .constructions import ConstructionInputError
from .coset_enum import DEFAULT_COSET_CAP
from .formats import (
    FORMAT_VERSION,
    ParseError,
    SchemaError,
    cayley_document,
    cayley_from_input_json,
    dump_document,
    load_document,
    parse_cayley_json,
    parse_presentation_text,
    rectband_document,
    render_text,
    semigroup_from_json,
    squares_json,
    triangular_document,
    triangular_from_input_json,
)
from .presentations import tietze_simplify, triangularize
from .semigroups import DEFAULT_CLOSURE_CAP, CapacityExceeded
from .squares import grid_presentation
from .verify import (
    run_cayley_pipeline,
    run_rect_band_pipeline,
    run_triangular_pipeline,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3


@dataclass
class RunConfig:
    command: str
    fmt: str
    out: str | None
    closure_cap: int
    coset_cap: int
    tietze_passes: int


class _CliError(Exception):
    def __init__(self, kind: str, message: str, code: int):
        super().__init__(message)
        self.kind = kind
        self.code = code


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _CliError("io-error", f"cannot read {path}: {exc}", EXIT_INPUT)


def _emit(doc: dict, config: RunConfig) -> None:
    text = dump_document(doc) if config.fmt == "structured" else render_text(doc)
    sys.stdout.write(text)
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _verdict_code(doc: dict) -> int:
    if doc.get("verdict") == "pass":
        return EXIT_PASS
    verification = doc.get("stages", {}).get("verification", {})
    if verification.get("order_hit_cap"):
        return EXIT_CAP
    return EXIT_FAIL


def _cmd_construct1(args, config: RunConfig) -> int:
    pres = parse_presentation_text(_read_file(args.input))
    tri = triangularize(pres)
    pipeline = run_triangular_pipeline(
        tri, closure_cap=config.closure_cap, coset_cap=config.coset_cap
    )
    doc = triangular_document(
        pipeline, config.closure_cap, config.coset_cap, config.tietze_passes
    )
    _emit(doc, config)
    return _verdict_code(doc)


def _cmd_construct2(args, config: RunConfig) -> int:
    table = parse_cayley_json(_read_file(args.input))
    pipeline = run_cayley_pipeline(
        table, closure_cap=config.closure_cap, coset_cap=config.coset_cap
    )
    doc = cayley_document(
        pipeline, config.closure_cap, config.coset_cap, config.tietze_passes
    )
    _emit(doc, config)
    return _verdict_code(doc)


def _cmd_rectband(args, config: RunConfig) -> int:
    if args.rows < 1 or args.cols < 1:
        raise _CliError("validation-error", "band dimensions must be >= 1", EXIT_INPUT)
    pipeline = run_rect_band_pipeline(
        args.rows,
        args.cols,
        closure_cap=config.closure_cap,
        tietze_passes=config.tietze_passes,
    )
    doc = rectband_document(
        pipeline,
        args.rows,
        args.cols,
        config.closure_cap,
        config.coset_cap,
        config.tietze_passes,
    )
    _emit(doc, config)
    return EXIT_PASS if doc["verdict"] == "pass" else EXIT_FAIL


def _cmd_squares(args, config: RunConfig) -> int:
    doc = load_document(_read_file(args.input))
    if "stages" not in doc or "semigroup" not in doc.get("stages", {}):
        raise _CliError("schema", "document has no semigroup stage", EXIT_INPUT)
    s = semigroup_from_json(doc["stages"]["semigroup"])
    gp = grid_presentation(s)
    out = {
        "version": FORMAT_VERSION,
        "command": "squares",
        "squares": squares_json(gp),
    }
    _emit(out, config)
    return EXIT_PASS


def _cmd_simplify(args, config: RunConfig) -> int:
    pres = parse_presentation_text(_read_file(args.input))
    result = tietze_simplify(pres, max_passes=config.tietze_passes)
    simplified = result.presentation
    out = {
        "version": FORMAT_VERSION,
        "command": "simplify",
        "presentation": {
            "generators": list(simplified.generators),
            "relations": [
                {
                    "lhs": [
                        simplified.generators[g] + ("" if e == 1 else "^-1")
                        for g, e in lhs
                    ],
                    "rhs": [
                        simplified.generators[g] + ("" if e == 1 else "^-1")
                        for g, e in rhs
                    ],
                }
                for lhs, rhs in simplified.relations
            ],
        },
        "exhausted": result.exhausted,
    }
    if config.fmt == "structured":
        sys.stdout.write(dump_document(out))
    else:
        sys.stdout.write(simplified.pretty() + "\n")
        if result.exhausted:
            sys.stdout.write("(budget exhausted; best effort)\n")
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(dump_document(out))
    return EXIT_PASS


def _cmd_verify(args, config: RunConfig) -> int:
    doc = load_document(_read_file(args.input))
    input_doc = doc.get("input", {})
    stages = doc.get("stages", {})
    kind = input_doc.get("kind")
    if kind == "triangular":
        tri = triangular_from_input_json(input_doc)
        pipeline = run_triangular_pipeline(
            tri, closure_cap=config.closure_cap, coset_cap=config.coset_cap
        )
        fresh = triangular_document(
            pipeline, config.closure_cap, config.coset_cap, config.tietze_passes
        )
    elif kind == "cayley":
        table = cayley_from_input_json(input_doc)
        pipeline = run_cayley_pipeline(
            table, closure_cap=config.closure_cap, coset_cap=config.coset_cap
        )
        fresh = cayley_document(
            pipeline, config.closure_cap, config.coset_cap, config.tietze_passes
        )
    else:
        raise _CliError("schema", f"cannot verify input kind {kind!r}", EXIT_INPUT)

    recheck = {}
    for stage in ("squares", "identification", "residue"):
        recheck[f"{stage}_match"] = stages.get(stage) == fresh["stages"][stage]
    tampered = not all(recheck.values())
    verdict = "fail" if tampered else fresh["verdict"]
    out = {
        "version": FORMAT_VERSION,
        "command": "verify",
        "recheck": recheck,
        "verification": fresh["stages"]["verification"],
        "verdict": verdict,
    }
    _emit(out, config)
    if verdict == "pass":
        return EXIT_PASS
    if not tampered:
        return _verdict_code(fresh)
    return EXIT_FAIL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="igmax",
        description=(
            "Realize a group as the maximal subgroup of a free idempotent "
            "generated semigroup and verify the result."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument(
            "--format",
            dest="fmt",
            choices=("text", "structured"),
            default="text",
            help="output format (default text)",
        )
        p.add_argument("--out", help="also write the output document to this path")
        p.add_argument(
            "--closure-cap",
            type=int,
            default=DEFAULT_CLOSURE_CAP,
            help="maximum semigroup size to enumerate",
        )
        p.add_argument(
            "--coset-cap",
            type=int,
            default=DEFAULT_COSET_CAP,
            help="maximum cosets for enumeration",
        )
        p.add_argument(
            "--tietze-passes",
            type=int,
            default=200,
            help="simplification pass budget",
        )

    p1 = sub.add_parser("construct1", help="pipeline for a presentation file")
    p1.add_argument("input")
    common(p1)

    p2 = sub.add_parser("construct2", help="pipeline for a multiplication table file")
    p2.add_argument("input")
    common(p2)

    pb = sub.add_parser("rectband", help="pure band pipeline (free maximal subgroup)")
    pb.add_argument("rows", type=int)
    pb.add_argument("cols", type=int)
    common(pb)

    ps = sub.add_parser("squares", help="enumerate squares from a construct dump")
    ps.add_argument("input")
    common(ps)

    pm = sub.add_parser("simplify", help="simplify a presentation file")
    pm.add_argument("input")
    common(pm)

    pv = sub.add_parser("verify", help="re-verify a construct dump")
    pv.add_argument("input")
    common(pv)

    return parser


_COMMANDS = {
    "construct1": _cmd_construct1,
    "construct2": _cmd_construct2,
    "rectband": _cmd_rectband,
    "squares": _cmd_squares,
    "simplify": _cmd_simplify,
    "verify": _cmd_verify,
}


def _error_exit(config: RunConfig | None, kind: str, message: str, code: int) -> int:
    fmt = config.fmt if config else "text"
    if fmt == "structured":
        sys.stdout.write(
            dump_document(
                {
                    "version": FORMAT_VERSION,
                    "error": {"kind": kind, "message": message},
                }
            )
        )
    else:
        sys.stderr.write(f"error ({kind}): {message}\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    caps = {
        "closure_cap": args.closure_cap,
        "coset_cap": args.coset_cap,
        "tietze_passes": args.tietze_passes,
    }
    for name, value in caps.items():
        if value < 1:
            return _error_exit(None, "validation-error", f"{name} must be >= 1", EXIT_INPUT)
    config = RunConfig(
        command=args.command,
        fmt=args.fmt,
        out=args.out,
        **caps,
    )
    try:
        return _COMMANDS[args.command](args, config)
    except _CliError as exc:
        return _error_exit(config, exc.kind, str(exc), exc.code)
    except ParseError as exc:
        return _error_exit(config, "parse-error", str(exc), EXIT_INPUT)
    except SchemaError as exc:
        return _error_exit(config, "schema", str(exc), EXIT_INPUT)
    except CayleyValidationError as exc:
        return _error_exit(config, "validation-error", str(exc), EXIT_INPUT)
    except ConstructionInputError as exc:
        return _error_exit(config, "unsupported-input", str(exc), EXIT_INPUT)
    except CapacityExceeded as exc:
        return _error_exit(config, "capacity-exceeded", str(exc), EXIT_CAP)


if __name__ == "__main__":
    sys.exit(main())
