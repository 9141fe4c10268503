"""Command-line front end: ``picgap <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .appendix import LayeringError, appendix_closed_form, appendix_rates, check_inclusion
from .certify import DEFAULT_SAMPLES, DEFAULT_SEED, certify
from .channel import ChannelParams, ChannelType, ParameterError, side_info_graph
from .geometry import DomainError, HalfSpaceRegion, InnerHull, LinearConstraint
from .graphs import theorem1_region
from .inner import GridSpec, inner_region
from .lattice import RNG_ALGORITHM, effective_noise_mc, run_lattice_suite
from .outer import PreconditionError, outer_cross_section, outer_region, relaxed_outer_region

OUTPUT_DIR_ENV = "PICGAP_OUTPUT_DIR"
EXIT_OK, EXIT_CERT_FAIL, EXIT_CONFIG, EXIT_PRECONDITION = 0, 1, 2, 3
SIG = 12


class ConfigError(ValueError):
    pass


def fmt(x: float) -> float:
    """Round to 12 significant digits for serialisation."""
    return float(f"{float(x):.{SIG}g}")


@dataclass(frozen=True)
class RunConfig:
    command: str
    ctype: int | None = None
    P: float | None = None
    N: tuple[float, float, float] | None = None
    grid: int = 64
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    fmt: str = "json"
    out: str | None = None
    relaxed: bool = False
    axis: int | None = None
    value: float = 0.0
    trials: int = 10_000

    def params(self) -> ChannelParams:
        return ChannelParams(self.P, self.N)


# -- serialisation ------------------------------------------------------------


def region_to_dict(region: HalfSpaceRegion, ctype, params: ChannelParams, seed: int) -> dict:
    return {
        "type": int(ctype),
        "P": fmt(params.P),
        "N": [fmt(n) for n in params.N],
        "constraints": [
            {"coeffs": [fmt(c) for c in row.coeffs], "bound_bits": fmt(row.bound), "label": row.label}
            for row in region.constraints
        ],
        "meta": {"seed": seed, "version": __version__},
    }


def region_from_dict(doc: dict) -> HalfSpaceRegion:
    return HalfSpaceRegion(
        tuple(LinearConstraint(c["coeffs"], c["bound_bits"], c["label"]) for c in doc["constraints"])
    )


def section_to_csv(section) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["fixed_axis", "fixed_value_bits", "row_label", "coeff_a", "coeff_b", "bound_bits"])
    for row in section.constraints:
        w.writerow(
            [section.fixed_axis, repr(fmt(section.fixed_value)), row.label,
             repr(fmt(row.coeffs[0])), repr(fmt(row.coeffs[1])), repr(fmt(row.bound))]
        )
    return buf.getvalue()


def region_to_csv(region: HalfSpaceRegion) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row_label", "c1", "c2", "c3", "bound_bits"])
    for row in region.constraints:
        w.writerow([row.label, *(repr(fmt(c)) for c in row.coeffs), repr(fmt(row.bound))])
    return buf.getvalue()


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- subcommands -----------------------------------------------------------------


def _cmd_outer(cfg: RunConfig):
    p = cfg.params()
    region = relaxed_outer_region(cfg.ctype, p) if cfg.relaxed else outer_region(cfg.ctype, p)
    if cfg.fmt == "csv":
        return region_to_csv(region), EXIT_OK
    return dumps(region_to_dict(region, cfg.ctype, p, cfg.seed)), EXIT_OK


def _cmd_graph_bounds(cfg: RunConfig):
    p = cfg.params()
    region = theorem1_region(side_info_graph(cfg.ctype), p)
    if cfg.fmt == "csv":
        return region_to_csv(region), EXIT_OK
    doc = region_to_dict(region, cfg.ctype, p, cfg.seed)
    doc["graph"] = side_info_graph(cfg.ctype).notation()
    return dumps(doc), EXIT_OK


def _cmd_cross_section(cfg: RunConfig):
    sec = outer_cross_section(cfg.ctype, cfg.params(), cfg.axis, cfg.value)
    if cfg.fmt == "csv":
        return section_to_csv(sec), EXIT_OK
    doc = {
        "type": cfg.ctype,
        "P": fmt(cfg.P),
        "N": [fmt(n) for n in cfg.N],
        "fixed_axis": sec.fixed_axis,
        "fixed_value_bits": fmt(sec.fixed_value),
        "free_axes": list(sec.free_axes),
        "constraints": [
            {"coeffs": [fmt(c) for c in r.coeffs], "bound_bits": fmt(r.bound), "label": r.label}
            for r in sec.constraints
        ],
        "meta": {"seed": cfg.seed, "version": __version__},
    }
    return dumps(doc), EXIT_OK


def _cmd_inner(cfg: RunConfig):
    p = cfg.params()
    cloud = inner_region(cfg.ctype, p, GridSpec(cfg.grid))
    hull = InnerHull(cloud)
    order = np.lexsort(cloud.corners.T[::-1])
    doc = {
        "type": cfg.ctype,
        "P": fmt(p.P),
        "N": [fmt(n) for n in p.N],
        "grid_points": cfg.grid,
        "corners": [[fmt(x) for x in cloud.corners[i]] for i in order],
        "hull": {
            "vertices": int(len(hull.vertices)),
            "facets": None if hull.facets is None else int(len(hull.facets)),
            "extent_bits": [fmt(x) for x in cloud.extent()],
        },
        "meta": {"seed": cfg.seed, "version": __version__},
    }
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["R1", "R2", "R3"])
        for c in doc["corners"]:
            w.writerow([repr(x) for x in c])
        return buf.getvalue(), EXIT_OK
    return dumps(doc), EXIT_OK


def _cmd_certify(cfg: RunConfig):
    p = cfg.params()
    rep = certify(cfg.ctype, p, samples=cfg.samples, grid=GridSpec(cfg.grid), seed=cfg.seed)
    doc = {
        "type": cfg.ctype,
        "P": fmt(p.P),
        "N": [fmt(n) for n in p.N],
        "region": rep.region,
        "points_checked": rep.points_checked,
        "passed": rep.passed,
        "failures": [
            {"point": [fmt(x) for x in f.point], "shifted": [fmt(x) for x in f.shifted], "margin": fmt(f.margin)}
            for f in rep.failures
        ],
        "max_observed_gap": [fmt(x) for x in rep.max_observed_gap],
        "max_uniform_gap": fmt(rep.max_uniform_gap),
        "trivial_case": rep.trivial_case,
        "affected_axes": list(rep.affected_axes),
        "corners": rep.corners,
        "meta": {"seed": cfg.seed, "version": __version__},
    }
    if rep.trivial_case:
        return dumps(doc), EXIT_OK
    return dumps(doc), EXIT_OK if rep.passed else EXIT_CERT_FAIL


def _cmd_appendix(cfg: RunConfig):
    p = cfg.params()
    lay = appendix_rates(cfg.ctype, p)
    closed = appendix_closed_form(cfg.ctype, p)
    inc = check_inclusion(lay, closed)
    doc = {
        "type": cfg.ctype,
        "P": fmt(p.P),
        "N": [fmt(n) for n in p.N],
        "I": {str(k): fmt(v) for k, v in sorted(lay.I.items())},
        "T": {str(k): fmt(v) for k, v in sorted(lay.T.items())},
        "layered": region_to_dict(lay.region, cfg.ctype, p, cfg.seed)["constraints"],
        "closed_form": region_to_dict(closed, cfg.ctype, p, cfg.seed)["constraints"],
        "inclusion": {"holds": inc.included, "worst_margin_bits": fmt(inc.worst_margin)},
        "meta": {"seed": cfg.seed, "version": __version__},
    }
    return dumps(doc), EXIT_OK if inc.included else EXIT_CERT_FAIL


def _cmd_lattice(cfg: RunConfig):
    results = run_lattice_suite(cfg.trials, cfg.seed)
    mc = []
    for S, N in ((1.0, 1.0), (100.0, 4.0), (1000.0, 1.0)):
        est = effective_noise_mc(S, N, 100_000, cfg.seed)
        ref = S * N / (S + N)
        mc.append({"S": S, "N": N, "estimate": fmt(est), "reference": fmt(ref),
                   "rel_error": fmt(abs(est - ref) / ref), "passed": abs(est - ref) <= 0.02 * ref})
    doc = {
        "trials": cfg.trials,
        "checks": [
            {"name": r.name, "trials": r.trials, "max_residual": fmt(r.max_residual), "passed": r.passed}
            for r in results
        ],
        "mmse": mc,
        "meta": {"seed": cfg.seed, "version": __version__, "rng": RNG_ALGORITHM},
    }
    ok = all(r.passed for r in results) and all(m["passed"] for m in mc)
    return dumps(doc), EXIT_OK if ok else EXIT_CERT_FAIL


_DISPATCH = {
    "outer": _cmd_outer,
    "inner": _cmd_inner,
    "cross-section": _cmd_cross_section,
    "certify": _cmd_certify,
    "graph-bounds": _cmd_graph_bounds,
    "appendix": _cmd_appendix,
    "lattice-verify": _cmd_lattice,
}


def run(cfg: RunConfig) -> tuple[str, int]:
    """Execute a validated config; returns (serialised artifact, exit status)."""
    return _DISPATCH[cfg.command](cfg)


# -- argument parsing -------------------------------------------------------------


def _noise(text: str) -> tuple[float, float, float]:
    try:
        vals = tuple(float(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad noise triple {text!r}") from exc
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated values, got {text!r}")
    return vals


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="picgap", description="Bounds and gap certification for 3-user partially connected Gaussian interference channels.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def channel(p, types=(1, 2, 3, 4, 5)):
        p.add_argument("--type", dest="ctype", type=int, choices=types, required=True)
        p.add_argument("--power", dest="P", type=float, required=True, help="transmit power (linear)")
        p.add_argument("--noise", dest="N", type=_noise, required=True, help="N1,N2,N3 (linear)")

    def output(p, formats=("json", "csv")):
        p.add_argument("--out", dest="fmt", choices=formats, default="json")
        p.add_argument("--output", dest="out", default=None,
                       help=f"output file; relative paths resolve under ${OUTPUT_DIR_ENV} when set")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("outer", help="outer-bound rows")
    channel(p)
    p.add_argument("--relaxed", action="store_true", help="relaxed rows (needs P >= 3*N3)")
    output(p)
    p = sub.add_parser("graph-bounds", help="sum-rate bounds from the side-information graph")
    channel(p)
    output(p)
    p = sub.add_parser("cross-section", help="2-D relaxed outer section at a fixed rate")
    channel(p)
    p.add_argument("--axis", type=int, choices=(1, 2, 3), default=None)
    p.add_argument("--value", type=float, required=True, help="fixed rate in bits")
    output(p)
    p = sub.add_parser("inner", help="inner-region corner cloud and hull summary")
    channel(p)
    p.add_argument("--grid", type=int, default=64)
    output(p)
    p = sub.add_parser("certify", help="one-bit gap certification")
    channel(p)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    output(p, ("json",))
    p = sub.add_parser("appendix", help="layered random-coding region and inclusion check")
    channel(p, (4, 5))
    output(p, ("json",))
    p = sub.add_parser("lattice-verify", help="randomised lattice identity suite")
    p.add_argument("--trials", type=int, default=10_000)
    output(p, ("json",))
    return ap


def parse_config(argv) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    cfg = RunConfig(**ns)
    if cfg.ctype is not None:
        try:
            cfg.params()
        except ParameterError as exc:
            raise ConfigError(str(exc)) from exc
    if cfg.grid < 1 or cfg.samples < 1 or cfg.trials < 1:
        raise ConfigError("grid, samples and trials must be positive")
    return cfg


def _destination(out: str) -> Path:
    path = Path(out)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        print(f"picgap: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        text, status = run(cfg)
    except (PreconditionError, LayeringError, DomainError) as exc:
        print(f"picgap: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if cfg.out:
        _destination(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
