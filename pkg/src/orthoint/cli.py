"""Command-line entry point: ``orthoint <command> [options]``.

Exit codes: 0 success, 1 internal assertion, 2 usage or input error,
3 mismatch against the bundled reference tables, 4 tolerance not met.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import as_rat, rat_str
from .geometry import OrthoTriple

log = logging.getLogger("orthoint")

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_MISMATCH, EXIT_TOLERANCE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    triple: Optional[OrthoTriple] = None
    kind: str = "pants"
    start: Optional[str] = None
    cutoff: Fraction = Fraction(10**6)
    depth: int = 12
    d: int = 1
    tolerance: float = 1e-2
    format: str = "json"
    out: Optional[str] = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.cutoff <= 1:
            raise UsageError("cutoff must exceed 1")
        if self.tolerance <= 0:
            raise UsageError("tolerance must be positive")


def parse_rational(text: str) -> Fraction:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^|\*\*)\s*(\d+)\s*", text)
    if m:
        return Fraction(int(m.group(1)) ** int(m.group(2)))
    return as_rat(text)


def parse_range(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text.strip())
    if not m:
        raise UsageError(f"bad range {text!r}; use N or N..M")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo < 1 or hi < lo:
        raise UsageError(f"bad range {text!r}")
    return list(range(lo, hi + 1))


# --------------------------------------------------------------------------
# output

def emit(cfg: RunConfig, payload, csv_header: Optional[list] = None, csv_rows: Optional[list] = None) -> None:
    if cfg.format == "csv":
        if csv_header is None:
            raise UsageError(f"{cfg.command} has no CSV form")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(csv_header)
        w.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands

def _need_triple(cfg: RunConfig) -> OrthoTriple:
    if cfg.triple is None:
        raise UsageError("--triple is required")
    return cfg.triple


def cmd_spectrum(cfg: RunConfig) -> int:
    from .orbit import enumerate_spectrum

    t = _need_triple(cfg)
    start = cfg.start or ("gamma" if cfg.kind == "torus" else "alpha")
    spectrum = enumerate_spectrum(t, cfg.kind, start, cfg.cutoff, pruning=cfg.extra.get("pruning"))
    emit(cfg, spectrum.as_dict(), ["cosh", "mult", "word"], spectrum.csv_rows())
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    from .classify import PANTS_CSV_HEADER, TORI_CSV_HEADER, classify_oi_pants, classify_oi_tori, pants_rows, tori_rows
    from .golden import pants_list, tori_list

    full = cfg.extra.get("full_box", False)
    if cfg.extra["target"] == "pants":
        found = classify_oi_pants(full_box=full)
        rows = pants_rows(found)
        golden = pants_list()
        header = PANTS_CSV_HEADER
        flat = [[str(r["triple"]).replace(" ", ""), ";".join(r["boundary_trace_squares"])] for r in rows]
    else:
        found = classify_oi_tori(full_box=full)
        rows = tori_rows(found)
        golden = tori_list()
        header = TORI_CSV_HEADER
        flat = [[str(r["triple"]).replace(" ", ""), r["boundary_trace"], r["markoff_constant"],
                 ";".join(r["initial_solution_squares"])] for r in rows]
    emit(cfg, rows, header, flat)
    got = [c.astuple() for c in found]
    if got != sorted(golden):
        missing = sorted(set(golden) - set(got))
        extra = sorted(set(got) - set(golden))
        log.error("classification differs from reference: missing %s, extra %s", missing, extra)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_basmajian(cfg: RunConfig) -> int:
    from .orbit import basmajian_sums

    t = _need_triple(cfg)
    rows = basmajian_sums(t, cfg.kind, cfg.cutoff, pruning=cfg.extra.get("pruning"))
    payload = {"surface_kind": cfg.kind, "triple": str(t), "cutoff": rat_str(cfg.cutoff),
               "tolerance": cfg.tolerance, "boundaries": [r.as_dict() for r in rows]}
    emit(cfg, payload, ["boundary", "target_length", "partial_sum", "relative_error", "n_terms"],
         [[r.boundary, repr(r.target_length), repr(r.partial_sum), repr(r.relative_error), r.n_terms]
          for r in rows])
    worst = max(r.relative_error for r in rows)
    if worst > cfg.tolerance:
        log.warning("relative error %.3g exceeds tolerance %.3g at cutoff %s", worst, cfg.tolerance,
                    rat_str(cfg.cutoff))
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_invariants(cfg: RunConfig) -> int:
    from .tables import INVARIANTS_CSV_HEADER, invariants_report

    if cfg.triple is not None:
        if not cfg.triple.is_integral():
            raise UsageError("invariants need an integral triple")
        kinds = (cfg.kind,)
        triples = [cfg.triple.int_tuple()]
    else:
        kinds, triples = ("pants", "torus"), None
    rep = invariants_report(kinds, triples, cfg.extra.get("max_len", 4))
    emit(cfg, rep.as_dict(), INVARIANTS_CSV_HEADER, rep.csv_rows())
    for d in rep.warnings:
        log.warning("%s %s: %s expected %s, observed %s", d.kind, d.label, d.field, d.expected, d.observed)
    for d in rep.errors:
        log.error("%s %s: %s expected %s, observed %s", d.kind, d.label, d.field, d.expected, d.observed)
    return EXIT_MISMATCH if rep.errors else EXIT_OK


def cmd_glue(cfg: RunConfig) -> int:
    from .glue import GLUE_VALUES, lambda_orbit_report, xn_stats

    xn = cfg.extra.get("xn")
    a = cfg.extra.get("a")
    if xn is None and a is None:
        raise UsageError("glue needs --a or --xn")
    payload = {}
    if a is not None:
        if a not in GLUE_VALUES:
            raise UsageError(f"--a must be one of {GLUE_VALUES}")
        payload["orbit"] = lambda_orbit_report(a, cfg.depth).as_dict()
    if xn is not None:
        payload["xn"] = [xn_stats(n).as_dict() for n in parse_range(xn)]
    rows = [[s["n"], s["okiss"], s["area_over_2pi"], s["ratio"]] for s in payload.get("xn", [])]
    emit(cfg, payload, ["n", "okiss", "area_over_2pi", "ratio"], rows)
    return EXIT_OK


def cmd_daoi(cfg: RunConfig) -> int:
    from .classify import d_aoi_report

    t = _need_triple(cfg)
    rep = d_aoi_report(t, cfg.d, cfg.depth)
    emit(cfg, rep.as_dict(), ["triple", "d", "depth", "in_lattice", "visited"],
         [[str(t), cfg.d, cfg.depth, rep.result, rep.visited]])
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "classify": cmd_classify,
    "basmajian": cmd_basmajian,
    "invariants": cmd_invariants,
    "glue": cmd_glue,
    "daoi": cmd_daoi,
}


# --------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    surf = argparse.ArgumentParser(add_help=False)
    surf.add_argument("--triple", help="cosh-lengths a,b,c as integers or p/q")
    surf.add_argument("--kind", choices=("pants", "torus"), default="pants")
    prune = argparse.ArgumentParser(add_help=False)
    prune.add_argument("--pruning", choices=("arc", "monotone"), default="arc",
                       help="arc: cut by distance to the crossed arc; monotone: cut by the "
                            "new coordinate and fail (exit 1) if a child does not grow")

    p = argparse.ArgumentParser(prog="orthoint",
                                description="Ortho-integral pants and one-holed tori.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common, surf, prune], help="ortho cosh-length spectrum")
    sp.add_argument("--start", choices=("alpha", "beta", "gamma", "all"))
    sp.add_argument("--cutoff", default="10^6")

    cp = sub.add_parser("classify", parents=[common], help="search for OI pants or tori")
    cp.add_argument("--target", choices=("pants", "tori"), required=True)
    cp.add_argument("--full-box", action="store_true", help="naive scan of the whole box")

    bp = sub.add_parser("basmajian", parents=[common, surf, prune], help="partial Basmajian sums")
    bp.add_argument("--cutoff", default="10^6")
    bp.add_argument("--tolerance", type=float, default=1e-2)

    ip = sub.add_parser("invariants", parents=[common, surf],
                        help="Markoff equations, quaternion algebras, trace checks")
    ip.add_argument("--max-len", type=int, default=4, help="word length for trace-ring sampling")

    gp = sub.add_parser("glue", parents=[common], help="reflection-orbit integrality and X_n counts")
    gp.add_argument("--a", type=int)
    gp.add_argument("--depth", type=int, default=12)
    gp.add_argument("--xn", help="n or n1..n2")

    dp = sub.add_parser("daoi", parents=[common, surf], help="(1/d)Z check of a pants orbit")
    dp.add_argument("--d", type=int, default=1)
    dp.add_argument("--depth", type=int, default=12)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    triple = None
    if getattr(ns, "triple", None):
        try:
            triple = OrthoTriple.parse(ns.triple)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise UsageError(f"invalid triple {ns.triple!r}: {exc}") from exc
    try:
        cutoff = parse_rational(getattr(ns, "cutoff", "10^6"))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid cutoff: {exc}") from exc
    depth = getattr(ns, "depth", 12)
    if depth < 1:
        raise UsageError("depth must be >= 1")
    d = getattr(ns, "d", 1)
    if d < 1:
        raise UsageError("d must be >= 1")
    extra = {k: getattr(ns, k) for k in ("target", "full_box", "a", "xn", "max_len", "pruning") if hasattr(ns, k)}
    return RunConfig(command=ns.command, triple=triple, kind=getattr(ns, "kind", "pants"),
                     start=getattr(ns, "start", None), cutoff=cutoff, depth=depth, d=d,
                     tolerance=getattr(ns, "tolerance", 1e-2), format=ns.format, out=ns.out,
                     extra=extra)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - report and map to the internal exit code
        from .orbit import MonotonicityError

        if isinstance(exc, (AssertionError, MonotonicityError, ArithmeticError)):
            log.error("internal check failed: %s", exc)
            return EXIT_INTERNAL
        raise


if __name__ == "__main__":
    sys.exit(main())
