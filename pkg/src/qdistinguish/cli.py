"""Command line interface: ``qdistinguish {dist,orbit,discriminate,verify,sample}``.

Exit codes: 0 success or affirmative answer, 1 negative-but-valid answer
(or a failed verification), 2 parse/I-O error, 3 invalid state or
spectrum, 4 dimension mismatch, 5 dimension too large.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import discrimination as disc
from . import metrics as met
from . import orbits as orb
from .errors import DimensionMismatch, DimensionTooLarge, InvalidSpectrum, InvalidState
from .numerics import haar_unitaries, random_densities
from .serialization import (
    ParseError,
    discrimination_report_to_json,
    dumps,
    load_json,
    matrix_to_json,
    spectrum_from_json,
    spectrum_to_json,
    state_from_json,
    states_from_json,
)
from .states import Spectrum, sort_spectrum, validate_state
from .verify import DEFAULT_TOLERANCES, PROPERTIES, run_verify

log = logging.getLogger("qdistinguish")

EXIT_OK, EXIT_NEGATIVE, EXIT_PARSE, EXIT_STATE, EXIT_DIM, EXIT_TOO_LARGE = 0, 1, 2, 3, 4, 5
VERIFY_COLUMNS = ["property", "dim", "samples", "passes", "failures", "worst_residual", "seed"]


class UsageError(Exception):
    pass


def parse_dims(text: str) -> list[int]:
    """``"2-6"`` or ``"2,3,5"`` (or a mix) to a sorted list of dimensions."""
    dims: set[int] = set()
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = part.split("-", 1)
                dims.update(range(int(lo), int(hi) + 1))
            elif part:
                dims.add(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from None
    if not dims or min(dims) < 1:
        raise argparse.ArgumentTypeError(f"dimensions must be >= 1, got {text!r}")
    return sorted(dims)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _add_global(p: argparse.ArgumentParser, defaults: bool) -> None:
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=d(42), help="base seed (default 42)")
    p.add_argument("--samples", type=_positive_int, default=d(1000), help="random samples per ensemble")
    p.add_argument("--dims", type=parse_dims, default=d([2, 3, 4, 5, 6]), help="dimension list, e.g. 2-6")
    p.add_argument("--format", choices=["json", "csv", "pretty"], default=d("json"))
    p.add_argument("--out", type=Path, default=d(None), help="write output here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdistinguish",
        description="Distances, orbit bounds and perfect discrimination for density matrices.",
        epilog="Tolerances are overridden with --tol.<name> VALUE; names: " + ", ".join(DEFAULT_TOLERANCES),
    )
    _add_global(parser, defaults=True)
    common = argparse.ArgumentParser(add_help=False)
    _add_global(common, defaults=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="all distances between two states")
    p.add_argument("state1", type=Path)
    p.add_argument("state2", type=Path)

    p = sub.add_parser("orbit", parents=[common], help="extremal distances between two unitary orbits")
    p.add_argument("spectrum1", type=Path)
    p.add_argument("spectrum2", type=Path)
    p.add_argument("--metric", choices=["trace", "bures", "hs"], default="trace")
    p.add_argument("--refine-steps", type=int, default=200)

    p = sub.add_parser("discriminate", parents=[common], help="can a set of states be told apart with certainty")
    p.add_argument("states", type=Path)

    p = sub.add_parser("verify", parents=[common], help="run the randomized property ensembles")
    p.add_argument("--property", action="append", choices=list(PROPERTIES), dest="properties",
                   help="restrict to these properties (repeatable)")
    p.add_argument("--haar-per-pair", type=_positive_int, default=10)
    p.add_argument("--search-samples", type=_positive_int, default=200)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("sample", parents=[common], help="write random states, unitaries or spectra")
    p.add_argument("--kind", choices=["state", "unitary", "spectrum"], default="state")
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--rank", type=_positive_int, default=None)
    p.add_argument("--count", type=_positive_int, default=1)
    return parser


def split_tolerances(argv: Sequence[str]) -> tuple[list[str], dict[str, float]]:
    """Pull ``--tol.<name> VALUE`` / ``--tol.<name>=VALUE`` out of ``argv``."""
    rest, tol = [], {}
    it = iter(argv)
    for tok in it:
        if not tok.startswith("--tol."):
            rest.append(tok)
            continue
        name, _, value = tok[len("--tol."):].partition("=")
        if not _:
            value = next(it, None)
        if name not in DEFAULT_TOLERANCES:
            raise UsageError(f"unknown tolerance {name!r}")
        try:
            tol[name] = float(value)
        except (TypeError, ValueError):
            raise UsageError(f"--tol.{name} needs a number") from None
        if not tol[name] > 0:
            raise UsageError(f"--tol.{name} must be > 0")
    return rest, tol


# ---------------------------------------------------------------- rendering

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, (list, tuple)) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], obj


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    return "" if v is None else str(v)


def render(payload: dict, fmt: str, rows: Optional[list[dict]] = None) -> str:
    if fmt == "json":
        return dumps(payload)
    if fmt == "csv":
        buf = io.StringIO()
        if rows is not None:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else VERIFY_COLUMNS, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: _cell(v) for k, v in r.items()})
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["field", "value"])
            for k, v in _flatten(payload):
                w.writerow([k, _cell(v)])
        return buf.getvalue()
    lines = []
    if rows is not None:
        lines.append("  ".join(f"{c:>24}" if i == 0 else f"{c:>14}" for i, c in enumerate(rows[0] if rows else [])))
        for r in rows:
            lines.append("  ".join(f"{_cell(v):>24}" if i == 0 else f"{_cell(v)[:14]:>14}"
                                   for i, v in enumerate(r.values())))
    else:
        pairs = list(_flatten(payload))
        width = max((len(k) for k, _ in pairs), default=0)
        lines.extend(f"{k:<{width}}  {_cell(v)}" for k, v in pairs)
    return "\n".join(lines) + "\n"


def emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


# ---------------------------------------------------------------- commands

def cmd_dist(args, tol) -> int:
    r1 = state_from_json(load_json(args.state1))
    r2 = state_from_json(load_json(args.state2))
    if r1.dim != r2.dim:
        raise DimensionMismatch(f"states have dimensions {r1.dim} and {r2.dim}")
    lower, dtr, upper = met.fuchs_vdg_check(r1, r2)
    rf = met.root_fidelity(r1, r2)
    payload = {
        "dim": r1.dim,
        "d_hs": met.d_hs(r1, r2),
        "d_trace": dtr,
        "d_bures": met.d_bures(r1, r2),
        "root_fidelity": rf,
        "fidelity": rf ** 2,
        "bhattacharyya_sorted_spectra": met.bhattacharyya(sort_spectrum(r1.spectrum), sort_spectrum(r2.spectrum)),
        "fuchs_van_de_graaf": {"lower": lower, "d_trace": dtr, "upper": upper,
                               "holds": bool(lower <= dtr + 1e-9 and dtr <= upper + 1e-9)},
        "support_overlap": met.support_overlap(r1, r2),
        "orthogonal_supports": met.support_overlap(r1, r2) <= tol.get("overlap", DEFAULT_TOLERANCES["overlap"]),
    }
    emit(render(payload, args.format), args.out)
    return EXIT_OK


def cmd_orbit(args, tol) -> int:
    p = spectrum_from_json(load_json(args.spectrum1))
    q = spectrum_from_json(load_json(args.spectrum2))
    if len(p) != len(q):
        raise DimensionMismatch(f"spectra have lengths {len(p)} and {len(q)}")
    report = orb.orbit_extremes(p, q, args.metric, args.samples, args.seed, args.refine_steps)
    payload = report.to_dict()
    problems = report.violations(tol.get("attainment", orb.EXTREME_TOL))
    payload["invariants_hold"] = not problems
    emit(render(payload, args.format), args.out)
    if problems:
        for msg in problems:
            log.error("orbit report invariant violated: %s", msg)
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_discriminate(args, tol) -> int:
    states = states_from_json(load_json(args.states))
    report = disc.discriminate(states, tol.get("overlap", disc.OVERLAP_TOL))
    emit(render(discrimination_report_to_json(report), args.format), args.out)
    return EXIT_OK if report.discriminable else EXIT_NEGATIVE


def cmd_verify(args, tol) -> int:
    t0 = time.perf_counter()
    results = run_verify(args.dims, args.samples, args.seed, tol, args.properties, corrupt=args.inject_fault,
                         haar_per_pair=args.haar_per_pair, search_samples=args.search_samples)
    rows = [r.row() for r in results]
    failures = [r.replay for r in results if r.replay is not None]
    payload = {
        "config": {"dims": args.dims, "samples": args.samples, "seed": args.seed,
                   "tolerances": {**DEFAULT_TOLERANCES, **tol}},
        "all_passed": not failures,
        "results": [{**r.row(), "slack": r.slack, **({"notes": r.notes} if r.notes else {})} for r in results],
        "failures": failures,
    }
    emit(render(payload, args.format, rows=None if args.format == "json" else rows), args.out)
    for f in failures:
        log.error("property %s failed at dim %d (seed %d, index %d, residual %.3e)",
                  f["property"], f["dim"], f["seed"], f["index"], f["residual"])
    if failures and args.format != "json":
        # the table has no room for inputs; keep them replayable
        sys.stderr.write(dumps({"failures": failures}))
    log.info("verify finished in %.1fs", time.perf_counter() - t0)
    return EXIT_OK if not failures else EXIT_NEGATIVE


def cmd_sample(args, tol) -> int:
    if args.kind == "unitary":
        items = [matrix_to_json(u) for u in haar_unitaries(args.dim, args.count, args.seed)]
    elif args.kind == "spectrum":
        rng = np.random.default_rng(args.seed)
        items = []
        for _ in range(args.count):
            p = rng.dirichlet(np.ones(args.dim))
            if args.rank is not None:
                if args.rank > args.dim:
                    raise InvalidSpectrum(f"rank {args.rank} exceeds dim {args.dim}")
                p[args.rank:] = 0.0
                p /= p.sum()
            items.append(spectrum_to_json(Spectrum(p)))
    else:
        rank = args.dim if args.rank is None else args.rank
        if rank > args.dim:
            raise InvalidState(f"rank {rank} exceeds dim {args.dim}")
        items = [matrix_to_json(validate_state(m).matrix)
                 for m in random_densities(args.dim, rank, args.count, args.seed)]
    emit(dumps(items) if args.format == "json" else render({"items": items}, args.format), args.out)
    return EXIT_OK


COMMANDS = {"dist": cmd_dist, "orbit": cmd_orbit, "discriminate": cmd_discriminate,
            "verify": cmd_verify, "sample": cmd_sample}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv, tol = split_tolerances(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qdistinguish: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args, tol)
    except ParseError as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except (InvalidState, InvalidSpectrum) as exc:
        log.error("invalid input: %s", exc)
        return EXIT_STATE
    except DimensionMismatch as exc:
        log.error("dimension mismatch: %s", exc)
        return EXIT_DIM
    except DimensionTooLarge as exc:
        log.error("%s", exc)
        return EXIT_TOO_LARGE
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
