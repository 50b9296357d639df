"""Command-line front end.

One self-describing JSON job per invocation, read from --config PATH or
stdin.  Exit codes are a stable contract: 0 success/agreement, 2 validation
failure, 3 malformed input, 4 infinite or non-finite character sum, 5
two-route disagreement.  There is no randomness anywhere; output is
byte-stable across runs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import indexcalc, polyhedra, toricmodel
from .charring import Character
from .errors import (
    EmptyPiece,
    InfiniteSupport,
    LogqError,
    MalformedConfig,
    NotDelzant,
    NotFinite,
    NotProper,
    NotSU2Character,
    ParityInconsistent,
    RankMismatch,
    SizeLimit,
    Unbounded,
)
from .indexcalc import FixedPointTerm
from .jsonio import decode_int, dumps
from .polyhedra import Polyhedron
from .toricmodel import ToricLogData

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_MALFORMED = 3
EXIT_INFINITE = 4
EXIT_MISMATCH = 5

KINDS = ("toric", "s2_family", "delzant", "mincoupling")
TORIC_KINDS = ("toric", "s2_family", "delzant")


@dataclass
class JobConfig:
    """A parsed job: kind, kind-specific payload, optional fixed-point terms."""

    kind: str
    payload: dict
    fixed_terms: list[FixedPointTerm] | None = None
    options: dict = field(default_factory=dict)


def _exit_code_for(exc: LogqError) -> int:
    if isinstance(exc, (InfiniteSupport, NotFinite)):
        return EXIT_INFINITE
    if isinstance(exc, MalformedConfig) or isinstance(exc, RankMismatch):
        return EXIT_MALFORMED
    if isinstance(
        exc,
        (ParityInconsistent, NotProper, EmptyPiece, Unbounded, NotDelzant, SizeLimit, NotSU2Character),
    ):
        return EXIT_VALIDATION
    return EXIT_VALIDATION


def load_config(text: str) -> JobConfig:
    """Parse and schema-check a job configuration; MalformedConfig on any defect."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedConfig(f"config is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedConfig("config must be a JSON object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise MalformedConfig(f"kind must be one of {list(KINDS)}, got {kind!r}")
    payload = obj.get("payload")
    if not isinstance(payload, dict):
        raise MalformedConfig("payload must be a JSON object")
    fixed_terms = None
    if obj.get("fixed_terms") is not None:
        if not isinstance(obj["fixed_terms"], list):
            raise MalformedConfig("fixed_terms must be a list")
        try:
            fixed_terms = [FixedPointTerm.from_jsonable(t) for t in obj["fixed_terms"]]
        except (LogqError, ValueError, TypeError, KeyError) as exc:
            raise MalformedConfig(f"bad fixed_terms: {exc}") from exc
    options = obj.get("options", {})
    if not isinstance(options, dict):
        raise MalformedConfig("options must be a JSON object")
    config = JobConfig(kind=kind, payload=payload, fixed_terms=fixed_terms, options=options)
    _check_payload(config)
    return config


def _check_payload(config: JobConfig) -> None:
    try:
        if config.kind == "toric":
            ToricLogData.from_jsonable(config.payload)
        elif config.kind == "s2_family":
            decode_int(config.payload["n1"])
            decode_int(config.payload["n2"])
        elif config.kind == "delzant":
            Polyhedron.from_jsonable(config.payload)
        else:
            decode_int(config.payload["base_degree"])
            fibre = Character.from_jsonable(config.payload["fibre"])
            if fibre.rank != 1:
                raise ValueError("fibre character must have rank 1")
    except (LogqError, ValueError, TypeError, KeyError) as exc:
        raise MalformedConfig(f"bad {config.kind} payload: {exc}") from exc


def _toric_data(config: JobConfig) -> ToricLogData:
    if config.kind == "toric":
        return ToricLogData.from_jsonable(config.payload)
    if config.kind == "s2_family":
        data, _ = toricmodel.s2_family(
            decode_int(config.payload["n1"]), decode_int(config.payload["n2"])
        )
        return data
    if config.kind == "delzant":
        return toricmodel.delzant(Polyhedron.from_jsonable(config.payload))
    raise MalformedConfig(f"kind {config.kind!r} does not describe a toric space")


def _derive_terms(config: JobConfig) -> list[FixedPointTerm]:
    if config.fixed_terms is not None:
        return config.fixed_terms
    if config.kind == "s2_family":
        return indexcalc.fixed_terms_s2(
            decode_int(config.payload["n1"]), decode_int(config.payload["n2"])
        )
    if config.kind == "delzant":
        return indexcalc.fixed_terms_delzant(Polyhedron.from_jsonable(config.payload))
    raise MalformedConfig("toric jobs need explicit fixed_terms for the qr-check")


def _box_cap(config: JobConfig, args) -> int:
    if getattr(args, "box_cap", None) is not None:
        return args.box_cap
    if "box_cap" in config.options:
        try:
            return decode_int(config.options["box_cap"])
        except ValueError as exc:
            raise MalformedConfig(f"bad options.box_cap: {exc}") from exc
    env = os.environ.get("LOGQ_BOX_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise MalformedConfig(f"bad LOGQ_BOX_CAP value {env!r}") from exc
    return polyhedra.BOX_VOLUME_CAP


# ---------------------------------------------------------------------------
# Command bodies: each returns (payload dict, human table lines, exit code).


def cmd_validate(config: JobConfig, args):
    report = toricmodel.validate(_toric_data(config))
    lines = ["check        status  detail"]
    for c in report.checks:
        lines.append(f"{c.name:<12} {'pass' if c.passed else 'FAIL':<7} {c.detail}")
    return report.to_jsonable(), lines, EXIT_OK if report.ok else EXIT_VALIDATION


def _character_lines(char: Character) -> list[str]:
    lines = ["weight            multiplicity"]
    for w in char.support():
        lines.append(f"{str(list(w)):<18} {char.terms[w]:>4}")
    lines.append(f"dimension: {char.dimension()}")
    return lines


def cmd_quantize(config: JobConfig, args):
    char = indexcalc.quantize_lattice(_toric_data(config), box_cap=_box_cap(config, args))
    return char.to_jsonable(), _character_lines(char), EXIT_OK


def cmd_qr_check(config: JobConfig, args):
    data = _toric_data(config)
    terms = _derive_terms(config)
    report = indexcalc.qr_check(data, terms, box_cap=_box_cap(config, args))
    lines = [f"agree: {report.agree}", "weight            lattice  fixed-point  reduced"]
    for w, a, b, c in report.per_weight_table:
        lines.append(f"{str(list(w)):<18} {a:>7}  {b:>11}  {c:>7}")
    return report.to_jsonable(), lines, EXIT_OK if report.agree else EXIT_MISMATCH


def cmd_mincoupling(config: JobConfig, args):
    if config.kind != "mincoupling":
        raise MalformedConfig("mincoupling command needs a mincoupling job")
    result = indexcalc.mincoupling_index(
        decode_int(config.payload["base_degree"]),
        Character.from_jsonable(config.payload["fibre"]),
    )
    lines = ["highest weight   multiplicity"]
    for j, m in sorted(result.mults.items()):
        lines.append(f"V_{j:<14} {m:>4}")
    return result.to_jsonable(), lines, EXIT_OK


def cmd_prequant(config: JobConfig, args):
    if config.kind not in TORIC_KINDS:
        raise MalformedConfig("prequant command needs a toric-like job")
    data = _toric_data(config)
    verdict = toricmodel.prequant_check(data)
    payload: dict = {"kind": config.kind, "prequantizable": verdict}
    lines = [f"prequantizable: {verdict}"]
    if config.kind == "s2_family":
        _, params = toricmodel.s2_family(
            decode_int(config.payload["n1"]), decode_int(config.payload["n2"])
        )
        payload["s2_params"] = {
            "n1": params.n1,
            "n2": params.n2,
            "n": params.n,
            "a": f"{params.a:.12f}",
            "a_prime": f"{params.a_prime:.12f}",
        }
        lines.append(f"n  = {params.n}")
        lines.append(f"a  = {params.a:.12f}")
        lines.append(f"a' = {params.a_prime:.12f}")
    return payload, lines, EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "quantize": cmd_quantize,
    "qr-check": cmd_qr_check,
    "mincoupling": cmd_mincoupling,
    "prequant": cmd_prequant,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logq",
        description="Exact quantization of toric log symplectic data by signed "
        "lattice counting and fixed-point summation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--config", type=Path, help="path to a JSON job config")
        src.add_argument("--stdin", action="store_true", help="read the job config from stdin")
        p.add_argument(
            "--format",
            choices=("json", "table", "both"),
            default=None,
            help="output format (default json)",
        )
        p.add_argument("--box-cap", type=int, default=None, help="lattice box volume cap")
        p.add_argument("--quiet", action="store_true", help="suppress stdout")
        if name == "qr-check":
            p.add_argument(
                "--batch", type=Path, default=None, help="run every *.json config in a directory"
            )
    return parser


def _read_config_text(args) -> str:
    if getattr(args, "stdin", False):
        return sys.stdin.read()
    if getattr(args, "config", None) is not None:
        try:
            return args.config.read_text()
        except OSError as exc:
            raise MalformedConfig(f"cannot read config {args.config}: {exc}") from exc
    raise MalformedConfig("no job config given; use --config PATH or --stdin")


def _emit(args, config_options: dict, payload: dict, lines: list[str]) -> None:
    if args.quiet:
        return
    fmt = args.format or config_options.get("output_format") or "json"
    if fmt not in ("json", "table", "both"):
        raise MalformedConfig(f"bad output format {fmt!r}")
    if fmt in ("table", "both"):
        for line in lines:
            print(line)
    if fmt == "both":
        print("```json")
        print(dumps(payload))
        print("```")
    elif fmt == "json":
        print(dumps(payload))


def _run_single(args, text: str) -> int:
    config = load_config(text)
    payload, lines, code = COMMANDS[args.command](config, args)
    _emit(args, config.options, payload, lines)
    return code


def _run_batch(args) -> int:
    directory: Path = args.batch
    if not directory.is_dir():
        raise MalformedConfig(f"batch path {directory} is not a directory")
    results = []
    worst = EXIT_OK
    for path in sorted(directory.glob("*.json")):
        entry: dict = {"file": path.name}
        try:
            config = load_config(path.read_text())
            payload, _, code = COMMANDS[args.command](config, args)
            entry["exit_code"] = code
            entry["agree"] = payload.get("agree")
        except LogqError as exc:
            code = _exit_code_for(exc)
            entry["exit_code"] = code
            entry["error"] = {"type": type(exc).__name__, "message": str(exc)}
        results.append(entry)
        worst = max(worst, code)
    if not args.quiet:
        print(dumps({"results": results, "overall_exit": worst}))
    return worst


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "qr-check" and args.batch is not None:
            return _run_batch(args)
        return _run_single(args, _read_config_text(args))
    except LogqError as exc:
        code = _exit_code_for(exc)
        if not args.quiet:
            print(dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        print(f"logq: {exc}", file=sys.stderr)
        return code


def entry() -> None:  # console-script shim
    sys.exit(main())


if __name__ == "__main__":
    entry()
