"""Command-line surface over the bound computations.

Four subcommands cover the library: ``region`` evaluates the requested
bounds (closed forms for the Gaussian model, seeded searches for a finite
channel file) and writes one file per bound with vertices and boundary
samples; ``powersweep`` tabulates the optimal symmetric power allocation
over a grid of power caps; ``figure`` bundles four preset parameter sets
(2 and 3 produce region-boundary tables, 4 and 5 power sweeps); and
``fm-verify`` replays the exact elimination of the rate-splitting system
against the closed-form sum bound on a corner battery plus seeded random
rational instances.

Every run is deterministic: identical flags (including the seed) produce
byte-identical files.  CSV floats are rendered with %.12g; JSON documents
are indented with sorted keys.  Output lands in the current directory
unless --output-dir or the MACWTFB_OUTPUT_DIR environment variable says
otherwise.

Exit codes: 0 success, 1 verification or input-data failure, 2 internal
invariant violation, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .channels import GaussianMacWt, load_channel
from .discrete import SearchConfig, search_inner, search_outer
from .fm import verify_hybrid_region_projection
from .gaussian import (
    gaussian_df_region,
    gaussian_hybrid_region,
    gaussian_outer_region,
    tekin_yener_region,
)
from .info import ValidationError
from .power import sweep
from .regions import RateRegion, boundary_samples, is_subset, region_from_halfspaces, region_to_dict

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVARIANT = 2
EXIT_USAGE = 64

OUTPUT_DIR_ENV = "MACWTFB_OUTPUT_DIR"

_GAUSSIAN_BOUNDS = ("df", "hybrid", "ty", "outer")
_DISCRETE_BOUNDS = ("df", "hybrid", "outer")

_GAUSSIAN_REGION_FNS = {
    "df": gaussian_df_region,
    "hybrid": gaussian_hybrid_region,
    "ty": tekin_yener_region,
    "outer": gaussian_outer_region,
}

_SWEEP_HEADER = "P,p1_star,p2_star,r_sum_star,regime"

# Preset parameter sets for the figure command.  2 and 3 are region
# boundaries (p1, p2, sigma1_sq, sigma2_sq); 4 and 5 are power sweeps
# (p_max, steps, sigma1_sq, sigma2_sq).
_FIGURE_REGION_PRESETS = {
    2: (1.0, 1.0, 1.0, 10.0),
    3: (10.0, 10.0, 5.0, 2.0),
}
_FIGURE_SWEEP_PRESETS = {
    4: (500.0, 100, 5.0, 2.0),
    5: (500.0, 100, 1.0, 10.0),
}
_FIGURE_SAMPLE_COUNT = 101
_FIGURE_COLUMNS = ("df", "hybrid", "ty", "outer")

# Fixed (a, b, c, d, e) tuples always checked by fm-verify: all-zero
# constants, no key material (e = 0), key rate saturated by the leakage
# (e >= d), and no leakage at all (d = 0).
_CORNER_BATTERY = (
    ("corner_zeros", (Fraction(0), Fraction(0), Fraction(0), Fraction(0), Fraction(0))),
    ("corner_e_zero", (Fraction(1), Fraction(1), Fraction(3, 2), Fraction(1, 2), Fraction(0))),
    ("corner_e_dominates_d", (Fraction(2), Fraction(3), Fraction(4), Fraction(1, 3), Fraction(1, 2))),
    ("corner_d_zero", (Fraction(1), Fraction(1), Fraction(3, 2), Fraction(0), Fraction(1, 4))),
)


# --- argument plumbing ----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; remap that to 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise argparse.ArgumentTypeError(f"{text!r} is not finite")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        default="csv",
        help="output file format (default: csv)",
    )
    parser.add_argument(
        "--output-dir",
        default=None,
        help="directory for output files (default: $%s or the current directory)" % OUTPUT_DIR_ENV,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="macwtfb",
        description="Secrecy-rate bounds for the two-transmitter wiretap channel with feedback.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    region = sub.add_parser(
        "region",
        help="compute bound regions and write vertices plus boundary samples",
    )
    region_sub = region.add_subparsers(dest="source", required=True, metavar="source")

    gauss = region_sub.add_parser("gaussian", help="closed-form bounds for the scalar Gaussian model")
    gauss.add_argument("--p1", type=_finite_float, required=True, help="transmitter 1 average power")
    gauss.add_argument("--p2", type=_finite_float, required=True, help="transmitter 2 average power")
    gauss.add_argument("--sigma1sq", type=_finite_float, required=True, help="main-channel noise variance")
    gauss.add_argument("--sigma2sq", type=_finite_float, required=True, help="eavesdropper noise variance")
    gauss.add_argument(
        "--bounds",
        required=True,
        help="comma-separated subset of %s" % ",".join(_GAUSSIAN_BOUNDS),
    )
    gauss.add_argument(
        "--samples", type=_positive_int, default=101, help="boundary samples per region (default: 101)"
    )
    _add_output_flags(gauss)
    gauss.set_defaults(handler=_cmd_region_gaussian)

    disc = region_sub.add_parser("discrete", help="searched bounds for a finite channel file")
    disc.add_argument("--channel", required=True, help="JSON channel description")
    disc.add_argument(
        "--bounds",
        required=True,
        help="comma-separated subset of %s" % ",".join(_DISCRETE_BOUNDS),
    )
    disc.add_argument(
        "--samples", type=_positive_int, default=101, help="boundary samples per region (default: 101)"
    )
    disc.add_argument("--seed", type=_nonnegative_int, default=0, help="search seed (default: 0)")
    disc.add_argument(
        "--umax", type=_positive_int, default=4, help="largest auxiliary cardinality (default: 4)"
    )
    disc.add_argument(
        "--restarts", type=_positive_int, default=64, help="random restarts per objective (default: 64)"
    )
    disc.add_argument(
        "--iterations", type=_positive_int, default=200, help="ascent sweeps per restart (default: 200)"
    )
    _add_output_flags(disc)
    disc.set_defaults(handler=_cmd_region_discrete)

    psweep = sub.add_parser("powersweep", help="tabulate the optimal power allocation over a cap grid")
    psweep.add_argument("--pmax", type=_finite_float, required=True, help="largest power cap")
    psweep.add_argument("--steps", type=_positive_int, required=True, help="number of caps in [0, pmax]")
    psweep.add_argument("--sigma1sq", type=_finite_float, required=True, help="main-channel noise variance")
    psweep.add_argument("--sigma2sq", type=_finite_float, required=True, help="eavesdropper noise variance")
    _add_output_flags(psweep)
    psweep.set_defaults(handler=_cmd_powersweep)

    fig = sub.add_parser(
        "figure",
        help="write a preset dataset (2, 3: region boundaries; 4, 5: power sweeps)",
    )
    fig.add_argument(
        "--which",
        type=int,
        choices=sorted(set(_FIGURE_REGION_PRESETS) | set(_FIGURE_SWEEP_PRESETS)),
        required=True,
        help="preset number",
    )
    fig.add_argument(
        "--output-dir",
        default=None,
        help="directory for output files (default: $%s or the current directory)" % OUTPUT_DIR_ENV,
    )
    fig.set_defaults(handler=_cmd_figure)

    fmv = sub.add_parser(
        "fm-verify",
        help="check the eliminated rate-splitting system against the closed-form region",
    )
    fmv.add_argument(
        "--samples", type=_positive_int, required=True, help="number of random rational instances"
    )
    fmv.add_argument("--seed", type=_nonnegative_int, default=0, help="sampling seed (default: 0)")
    fmv.add_argument(
        "--dump",
        action="store_true",
        help="write a JSON dump of both vertex sets for every mismatching instance",
    )
    _add_output_flags(fmv)
    fmv.set_defaults(handler=_cmd_fm_verify)

    return parser


# --- shared output helpers ------------------------------------------------------


def _fmt(value: float) -> str:
    # adding 0.0 turns IEEE negative zero into plain zero before rendering
    return "%.12g" % (float(value) + 0.0)


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _resolve_output_dir(args) -> Path:
    base = args.output_dir or os.environ.get(OUTPUT_DIR_ENV) or "."
    path = Path(base)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _parse_bounds(text: str, allowed: Sequence[str]) -> list[str]:
    requested = [token.strip() for token in text.split(",") if token.strip()]
    if not requested:
        raise ValidationError("no bounds requested")
    unknown = [token for token in requested if token not in allowed]
    if unknown:
        raise ValidationError(
            "unknown or unavailable bound(s) %s; valid here: %s"
            % (", ".join(repr(t) for t in unknown), ", ".join(allowed))
        )
    return [name for name in allowed if name in requested]


def _write_region(out_dir: Path, name: str, region: RateRegion, n_samples: int, fmt: str) -> Path:
    samples = boundary_samples(region, n_samples)
    path = out_dir / f"region_{name}.{fmt}"
    if fmt == "csv":
        lines = ["section,index,r1,r2"]
        for i, (x, y) in enumerate(region.vertices):
            lines.append("vertex,%d,%s,%s" % (i, _fmt(x), _fmt(y)))
        for i, (x, y) in enumerate(samples):
            lines.append("sample,%d,%s,%s" % (i, _fmt(x), _fmt(y)))
        _write_text(path, "\n".join(lines) + "\n")
    else:
        doc = dict(region_to_dict(region), bound=name, samples=[[x, y] for x, y in samples])
        _write_text(path, _json_text(doc))
    return path


def _write_sweep(path: Path, table, fmt: str) -> Path:
    if fmt == "csv":
        lines = [_SWEEP_HEADER]
        for cap, res in table:
            lines.append(
                ",".join(
                    (_fmt(cap), _fmt(res.p1_star), _fmt(res.p2_star), _fmt(res.r_sum_star), res.regime)
                )
            )
        _write_text(path, "\n".join(lines) + "\n")
    else:
        rows = [
            {
                "P": cap,
                "p1_star": res.p1_star,
                "p2_star": res.p2_star,
                "r_sum_star": res.r_sum_star,
                "regime": res.regime,
            }
            for cap, res in table
        ]
        _write_text(path, _json_text({"rows": rows}))
    return path


# --- region ---------------------------------------------------------------------


def _cmd_region_gaussian(args) -> int:
    try:
        bounds = _parse_bounds(args.bounds, _GAUSSIAN_BOUNDS)
        g = GaussianMacWt(args.p1, args.p2, args.sigma1sq, args.sigma2sq)
        regions = {name: _GAUSSIAN_REGION_FNS[name](g) for name in bounds}
    except ValidationError as exc:
        print(f"macwtfb region gaussian: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out_dir = _resolve_output_dir(args)
    for name in bounds:
        path = _write_region(out_dir, name, regions[name], args.samples, args.format)
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_region_discrete(args) -> int:
    try:
        bounds = _parse_bounds(args.bounds, _DISCRETE_BOUNDS)
        config = SearchConfig(
            u_cardinality_max=args.umax,
            restarts=args.restarts,
            refinement_iterations=args.iterations,
            seed=args.seed,
        )
    except ValidationError as exc:
        print(f"macwtfb region discrete: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        kernel = load_channel(args.channel)
    except (OSError, ValidationError) as exc:
        print(f"macwtfb region discrete: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    regions = {}
    for name in bounds:
        if name == "outer":
            _, value = search_outer(kernel, config)
            regions[name] = region_from_halfspaces([(1.0, 1.0, value)])
        else:
            regions[name] = search_inner(kernel, name, config).hull
    out_dir = _resolve_output_dir(args)
    for name in bounds:
        path = _write_region(out_dir, name, regions[name], args.samples, args.format)
        print(f"wrote {path}")
    return EXIT_OK


# --- powersweep -----------------------------------------------------------------


def _cmd_powersweep(args) -> int:
    try:
        g = GaussianMacWt(args.pmax, args.pmax, args.sigma1sq, args.sigma2sq)
        table = sweep(args.pmax, args.steps, g)
    except ValidationError as exc:
        print(f"macwtfb powersweep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out_dir = _resolve_output_dir(args)
    path = _write_sweep(out_dir / ("powersweep.%s" % args.format), table, args.format)
    print(f"wrote {path}")
    return EXIT_OK


# --- figure ---------------------------------------------------------------------


def _containment_failures(regions: dict[str, RateRegion]) -> list[str]:
    """Cross-bound containment: df inside hybrid, every inner inside outer."""
    failures = []
    pairs = (("df", "hybrid"), ("df", "outer"), ("hybrid", "outer"), ("ty", "outer"))
    for inner_name, outer_name in pairs:
        if inner_name in regions and outer_name in regions:
            if not is_subset(regions[inner_name], regions[outer_name]):
                failures.append(f"{inner_name} region is not contained in the {outer_name} region")
    return failures


def _cmd_figure(args) -> int:
    out_dir = _resolve_output_dir(args)
    which = args.which
    if which in _FIGURE_REGION_PRESETS:
        g = GaussianMacWt(*_FIGURE_REGION_PRESETS[which])
        regions = {name: _GAUSSIAN_REGION_FNS[name](g) for name in _FIGURE_COLUMNS}
        problems = _containment_failures(regions)
        if problems:
            for message in problems:
                print(f"macwtfb figure: invariant violation: {message}", file=sys.stderr)
            return EXIT_INVARIANT
        sampled = {
            name: boundary_samples(regions[name], _FIGURE_SAMPLE_COUNT) for name in _FIGURE_COLUMNS
        }
        header = "sample," + ",".join(f"{name}_r1,{name}_r2" for name in _FIGURE_COLUMNS)
        lines = [header]
        for i in range(_FIGURE_SAMPLE_COUNT):
            cells = [str(i)]
            for name in _FIGURE_COLUMNS:
                x, y = sampled[name][i]
                cells.extend((_fmt(x), _fmt(y)))
            lines.append(",".join(cells))
        path = out_dir / f"fig{which}.csv"
        _write_text(path, "\n".join(lines) + "\n")
    else:
        p_max, steps, s1, s2 = _FIGURE_SWEEP_PRESETS[which]
        g = GaussianMacWt(p_max, p_max, s1, s2)
        table = sweep(p_max, steps, g)
        rates = [res.r_sum_star for _, res in table]
        if any(later < earlier - 1e-12 for earlier, later in zip(rates, rates[1:])):
            print(
                "macwtfb figure: invariant violation: optimal sum rate decreased along the sweep",
                file=sys.stderr,
            )
            return EXIT_INVARIANT
        path = _write_sweep(out_dir / f"fig{which}.csv", table, "csv")
    print(f"wrote {path}")
    return EXIT_OK


# --- fm-verify ------------------------------------------------------------------


def _sample_tuples(count: int, seed: int) -> list[tuple[str, tuple[Fraction, ...]]]:
    """Seeded rational (a, b, c, d, e) tuples in [0, 4] with denominator <= 64."""
    rng = random.Random(seed)
    out = []
    for index in range(count):
        values = []
        for _ in range(5):
            den = rng.randint(1, 64)
            num = rng.randint(0, 4 * den)
            values.append(Fraction(num, den))
        out.append((f"sample_{index:04d}", tuple(values)))
    return out


def _vertices_text(vertices) -> str:
    if not vertices:
        return "(empty)"
    return "; ".join("(%s, %s)" % (x, y) for x, y in vertices)


def _cmd_fm_verify(args) -> int:
    out_dir = _resolve_output_dir(args)
    cases = list(_CORNER_BATTERY) + _sample_tuples(args.samples, args.seed)
    records = []
    failures = []
    for name, consts in cases:
        check = verify_hybrid_region_projection(*consts)
        records.append((name, consts, check))
        if not check.match:
            failures.append((name, consts, check))
    path = out_dir / ("fm_verify.%s" % args.format)
    if args.format == "csv":
        lines = ["case,a,b,c,d,e,match"]
        for name, consts, check in records:
            lines.append(
                ",".join([name, *[str(v) for v in consts], "true" if check.match else "false"])
            )
        _write_text(path, "\n".join(lines) + "\n")
    else:
        doc = {
            "cases": [
                {"case": name, "constants": [str(v) for v in consts], "match": check.match}
                for name, consts, check in records
            ]
        }
        _write_text(path, _json_text(doc))
    print(f"wrote {path}")
    print("fm-verify: %d instances checked, %d mismatches" % (len(records), len(failures)))
    if not failures:
        return EXIT_OK
    for name, consts, check in failures:
        print(
            "mismatch %s: (a, b, c, d, e) = (%s)" % (name, ", ".join(str(v) for v in consts)),
            file=sys.stderr,
        )
        print(
            "  eliminated-system vertices: %s" % _vertices_text(check.projected_vertices),
            file=sys.stderr,
        )
        print(
            "  closed-form vertices:       %s" % _vertices_text(check.closed_form_vertices),
            file=sys.stderr,
        )
        if args.dump:
            dump_path = out_dir / f"fm_mismatch_{name}.json"
            _write_text(
                dump_path,
                _json_text(
                    {
                        "case": name,
                        "constants": [str(v) for v in consts],
                        "projected_vertices": [[str(x), str(y)] for x, y in check.projected_vertices],
                        "closed_form_vertices": [
                            [str(x), str(y)] for x, y in check.closed_form_vertices
                        ],
                    }
                ),
            )
            print(f"wrote {dump_path}", file=sys.stderr)
    return EXIT_FAILURE


# --- entry point ----------------------------------------------------------------


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.handler(args)
