"""Command-line interface ``riccati-fol``.

Subcommands read JSON from ``--input`` (or stdin) and write a JSON report to
``--output`` (or stdout); ``report`` writes a directory of files instead.

Exit codes: 0 success, 1 unreadable input, 2 degenerate input, 3 field
rejected (report still written), 4 integration failure, 5 synthesis check
failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import serialize as ser
from .aut_classify import classify
from .errors import (
    ArityMismatch,
    DegenerateMatrix,
    IllConditioned,
    IntegrationFailure,
    NotRiccati,
    ParseError,
    RoutingFailure,
    UnclassifiableGenerator,
)

log = logging.getLogger("riccati_foliations")

EXIT_OK, EXIT_PARSE, EXIT_DEGENERATE, EXIT_REJECT, EXIT_INTEGRATION, EXIT_SYNTHESIS = range(6)


@dataclass
class JobConfig:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    tolerances: dict = field(default_factory=lambda: {"eigen": 1e-8, "integrate": 1e-9, "fit": 1e-7})
    seed: int = 0

    def __post_init__(self):
        for k, v in self.tolerances.items():
            if not v > 0:
                raise ValueError(f"tolerance {k} must be positive")


def _read_json(path: str | None):
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON input: {exc}") from exc


def _write(obj, path: str | None) -> None:
    text = ser.dumps(obj)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _parse_base(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad --base value {text!r}") from exc
    if len(parts) == 1:
        parts.append(0.0)
    if len(parts) != 2:
        raise ParseError("--base expects 're,im'")
    return complex(parts[0], parts[1])


# -- commands -------------------------------------------------------------

def cmd_classify(cfg: JobConfig, args) -> int:
    m = ser.decode_matrix(_read_json(cfg.input_path), 3)
    c = classify(m, cfg.tolerances["eigen"])
    _write(ser.classification_report(c), cfg.output_path)
    return EXIT_OK


def cmd_check(cfg: JobConfig, args) -> int:
    from .normal_form import check_riccati_cn, check_riccati_cp2, invariant_fibers

    X = ser.decode_field(_read_json(cfg.input_path))
    res = check_riccati_cp2(X) if args.target == "cp2" else check_riccati_cn(X)
    fibers = invariant_fibers(res.form, X) if res.accepted else None
    _write(ser.check_report(res, fibers, args.target), cfg.output_path)
    return EXIT_OK if res.accepted else EXIT_REJECT


def _generators(cfg: JobConfig, X, base):
    from .holonomy import holonomy_generators, product_relation

    gens = holonomy_generators(X, base, tol=cfg.tolerances["integrate"], seed=cfg.seed)
    err = product_relation(gens)[1] if gens else 0.0
    return gens, err


def cmd_holonomy(cfg: JobConfig, args) -> int:
    from .holonomy import numeric_holonomy

    X = ser.decode_field(_read_json(cfg.input_path))
    if args.auto_generators:
        if args.base is None:
            raise ParseError("--auto-generators needs --base re,im")
        gens, err = _generators(cfg, X, _parse_base(args.base))
        _write(ser.holonomy_report(gens, err), cfg.output_path)
        return EXIT_OK
    if args.loop is None:
        raise ParseError("give --loop FILE or --auto-generators --base re,im")
    loop = ser.decode_loop(_read_json(args.loop))
    res = numeric_holonomy(X, loop, tol=cfg.tolerances["integrate"], seed=cfg.seed)
    _write(ser.holonomy_report([res]), cfg.output_path)
    return EXIT_OK


def cmd_synthesize(cfg: JobConfig, args) -> int:
    from .holonomy import verify_synthesis

    data = _read_json(cfg.input_path)
    if isinstance(data, dict):
        data = data.get("generators")
    if not isinstance(data, list):
        raise ParseError("expected a list of generator matrices")
    mats = [ser.decode_matrix(g, 3) for g in data]
    rep = verify_synthesis(mats, tol=cfg.tolerances["eigen"],
                           int_tol=min(cfg.tolerances["integrate"], 1e-10), seed=cfg.seed)
    _write(ser.synthesis_report(rep), cfg.output_path)
    return EXIT_OK if rep.passed else EXIT_SYNTHESIS


def cmd_report(cfg: JobConfig, args) -> int:
    """Check a field, compute its generators and write JSON, TSV and figures."""
    from . import plotting
    from .holonomy import lift, sample_points
    from .normal_form import check_riccati_cp2, invariant_fibers

    out = Path(cfg.output_path or "report")
    out.mkdir(parents=True, exist_ok=True)
    X = ser.decode_field(_read_json(cfg.input_path))
    res = check_riccati_cp2(X)
    fibers = invariant_fibers(res.form, X) if res.accepted else None
    bundle = {"schema_version": ser.SCHEMA_VERSION, "kind": "report",
              "check": ser.check_report(res, fibers, "cp2"), "holonomy": None,
              "figures": [], "tables": []}
    if not res.accepted:
        _write(bundle, out / "report.json")
        return EXIT_REJECT

    base = _parse_base(args.base) if args.base else _default_base(fibers.finite_fibers)
    bundle["base_point"] = ser.encode_complex(base)
    gens, err = _generators(cfg, X, base)
    bundle["holonomy"] = ser.holonomy_report(gens, err)

    tsv = out / "generators.tsv"
    with tsv.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["index", "fiber_re", "fiber_im", "residual", "steps", "rejected",
                    "chart_switches", "jordan_case", "paper_type"])
        for i, g in enumerate(gens):
            f = g.fiber
            fre, fim = ("inf", "inf") if f == float("inf") else (repr(f.real), repr(f.imag))
            c = classify(g.map, 1e-6)
            w.writerow([i + 1, fre, fim, repr(g.residual), g.stats.steps, g.stats.rejected,
                        g.stats.chart_switches, c.jordan_case, c.paper_type])
    bundle["tables"].append(tsv.name)

    labels = ["inf" if g.fiber == float("inf") else f"x={complex(g.fiber):.3g}" for g in gens]
    fig, _ = plotting.plot_base_plane(fibers.finite_fibers, [g.loop for g in gens], base, labels=labels)
    plotting.save(fig, out / "base_plane.png")
    bundle["figures"].append("base_plane.png")
    if gens:
        _, _, traj = lift(X, gens[0].loop, sample_points(8, cfg.seed),
                          tol=cfg.tolerances["integrate"], record=True,
                          margin=0.5 * gens[0].loop.clearance)
        fig, _ = plotting.plot_lift(traj, 0)
        plotting.save(fig, out / "lift.png")
        bundle["figures"].append("lift.png")
        fig, _ = plotting.plot_spectra([g.map.matrix for g in gens], labels)
        plotting.save(fig, out / "spectra.png")
        bundle["figures"].append("spectra.png")
    _write(bundle, out / "report.json")
    return EXIT_OK


def _default_base(fibers) -> complex:
    """A point well away from every fiber: below the lowest one."""
    if not len(fibers):
        return 0j
    f = np.asarray(fibers)
    spread = max(1.0, float(np.max(np.abs(f - f.mean()))))
    return complex(f.mean().real, float(np.min(f.imag)) - spread)


COMMANDS = {
    "classify": cmd_classify,
    "check": cmd_check,
    "holonomy": cmd_holonomy,
    "synthesize": cmd_synthesize,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input JSON file (default: stdin)")
    common.add_argument("--output", "-o", help="output file, or directory for 'report'")
    common.add_argument("--tol-eigen", type=float, default=1e-8)
    common.add_argument("--tol-int", type=float, default=1e-9)
    common.add_argument("--tol-fit", type=float, default=1e-7)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="riccati-fol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="classify a projective map")
    p = sub.add_parser("check", parents=[common], help="check a field's Riccati normal form")
    p.add_argument("--target", choices=["cn", "cp2"], default="cp2")
    p = sub.add_parser("holonomy", parents=[common], help="holonomy along loops")
    p.add_argument("--loop", help="loop JSON file")
    p.add_argument("--auto-generators", action="store_true")
    p.add_argument("--base", help="base point 're,im'")
    sub.add_parser("synthesize", parents=[common], help="verify a generator realization")
    p = sub.add_parser("report", parents=[common], help="full report with figures")
    p.add_argument("--base", help="base point 're,im'")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("RICCATI_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = JobConfig(args.command, args.input, args.output,
                        {"eigen": args.tol_eigen, "integrate": args.tol_int, "fit": args.tol_fit},
                        args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    handler = COMMANDS[args.command]
    try:
        code = handler(cfg, args)
    except (ParseError, ArityMismatch) as exc:
        code, err = EXIT_PARSE, exc
    except NotRiccati as exc:
        code, err = EXIT_REJECT, exc
    except (DegenerateMatrix, IllConditioned, UnclassifiableGenerator, ValueError) as exc:
        code, err = EXIT_DEGENERATE, exc
    except (IntegrationFailure, RoutingFailure) as exc:
        code, err = EXIT_INTEGRATION, exc
    else:
        return code
    print(f"riccati-fol {args.command}: {type(err).__name__}: {err}", file=sys.stderr)
    if args.command != "report":
        _write(ser.error_report(args.command, err, code), cfg.output_path)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
