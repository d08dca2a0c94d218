"""Command-line entry point: ``total-cofibre <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from ..config import configure_logging
from ..errors import TotalCofibreError
from ..spectral import SpectralPage, render_table
from .jobs import COMMANDS, EXIT_ERROR, JobSpec, run
from .serialize import dumps, envelope


# --- Configure Logging ---
logger = logging.getLogger(__name__)

_HELP = {
    "check": "decide (P1), (P2) and their homological shadows",
    "homology": "homology of N(C) and of N(C)/N(D)",
    "limp": "lim^p of the diagram of H_q groups",
    "gamma": "homology of the total cofibre Gamma",
    "holim": "homology of the holim total complex",
    "verify": "compare H_n(holim) with H_(n+m)(Gamma)",
    "ss": "spectral sequence pages with E_2 and abutment checks",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="total-cofibre", description="Total cofibres and homotopy limits on finite poset pairs")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command, help=_HELP[command])
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument("--poset", type=Path, help="poset pair JSON file")
        source.add_argument("--generate", help="generator spec, e.g. cube:2 or prism(simplex:1,cube:1)")
        if command not in ("check", "homology"):
            diagram = sub.add_mutually_exclusive_group()
            diagram.add_argument("--diagram", type=Path, help="diagram JSON file")
            diagram.add_argument("--constant", help="constant diagram Z or Z/n (default Z)")
            diagram.add_argument("--random-diagram", nargs="?", const="", help="seeded random diagram, seed=N")
            diagram.add_argument("--representable", metavar="F", help="Z on the up-set of F, zero elsewhere")
        sub.add_argument("--field", default="q", help="q or fp:<prime> (ss only)")
        sub.add_argument("--seed", type=int, default=0, help="seed for --random-diagram without a value")
        sub.add_argument("--strict", action="store_true", help="exit 1 when a condition or check fails")
        sub.add_argument("--degrees", help="degree window lo..hi for reported rows")
        sub.add_argument("--shift", type=int, help="m for verify on pairs without a ball dimension")
        sub.add_argument("--p", type=int, help="the p of lim^p (default: all)")
        sub.add_argument("--q", type=int, default=0, help="the homology degree q for limp")
        sub.add_argument("--r-max", type=int, help="last spectral sequence page")
        sub.add_argument("--out", type=Path, help="write the report here instead of stdout")
        sub.add_argument("--format", choices=("json", "text"), default="json")
        sub.add_argument(
            "--log-level",
            type=str.upper,
            choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
            help="logging level (default from GAMMA_LOG_LEVEL)",
        )
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    return JobSpec(
        command=args.command,
        poset_path=args.poset,
        generate=args.generate,
        diagram_path=getattr(args, "diagram", None),
        constant=getattr(args, "constant", None),
        random_diagram=getattr(args, "random_diagram", None),
        representable=getattr(args, "representable", None),
        field=args.field,
        seed=args.seed,
        strict=args.strict,
        degrees=args.degrees,
        shift=args.shift,
        p=args.p,
        q=args.q,
        r_max=args.r_max,
    )


def render_text(job: JobSpec, report: dict) -> str:
    """A human-readable rendering of a report envelope."""
    lines = [f"{report['command']}: {report['status']}"]
    result = report["result"]
    if "error" in result:
        lines.append(f"error: {result['error']['message']}")
    elif job.command == "check":
        conditions = result["conditions"]
        lines.append(f"P1={conditions['overall']['p1']} P2={conditions['overall']['p2']}")
        for witness in conditions["witnesses"]:
            lines.append(f"  {witness['condition']} fails at {witness['element']}: degree {witness['degree']}")
    elif job.command == "homology":
        for key in ("order_complex", "relative"):
            lines.append(f"{key}: " + (", ".join(_group_text(r) for r in result[key]) or "0"))
    elif job.command == "limp":
        for row in result["lim"]:
            lines.append(f"lim^{row['p']} H_{row['q']} = {row['group']}")
    elif job.command in ("gamma", "holim"):
        lines.append(", ".join(_group_text(r) for r in result["homology"]) or "0")
    elif job.command == "verify":
        if "rows" not in result:
            lines.append(result["message"])
        for row in result.get("rows", ()):
            mark = "ok" if row["isomorphic"] else "MISMATCH"
            lines.append(f"n={row['degree']}: holim {_record_text(row['holim'])} | gamma {_record_text(row['gamma'])} {mark}")
    elif job.command == "ss":
        field = job.coefficient_field
        for page in result["pages"]:
            cells = {(c["p"], c["q"]): c["dim"] for c in page["cells"]}
            lines.append(render_table(SpectralPage(page["r"], field, cells)))
        lines.append(f"E_2 mismatches: {result['e2_check']['mismatches']}")
        lines.append(f"abutment mismatches: {result['abutment_check']['mismatches']}")
    return "\n".join(lines) + "\n"


def _record_text(record: dict) -> str:
    parts = [f"Z^{record['free_rank']}"] if record["free_rank"] else []
    parts.extend(f"Z/{d}" for d in record["torsion"])
    return " + ".join(parts) or "0"


def _group_text(record: dict) -> str:
    return f"H{record['degree']} = {_record_text(record)}"


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        job = job_from_args(args)
    except ValidationError as e:
        message = e.errors()[0]["msg"]
        logger.error(f"[main] invalid arguments: {message}")
        code, report = EXIT_ERROR, envelope(args.command, "error", {"error": {"message": message, "type": "ValidationError"}})
        job = None
    else:
        try:
            job.coefficient_field
        except TotalCofibreError as e:
            code, report = EXIT_ERROR, envelope(args.command, "error", {"error": {"message": str(e), "type": type(e).__name__}})
        else:
            code, report = run(job)

    text = render_text(job, report) if job is not None and args.format == "text" else dumps(report)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
