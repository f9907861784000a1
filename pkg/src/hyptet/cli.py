"""
Command-line entry point: ``hyptet volume|orbit|verify|group``
"""

import argparse
import csv
import io
import json
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from hyptet import __version__
from hyptet.api.requests import TetrahedronInput
from hyptet.api.responses import RunReport
from hyptet.config import get_settings
from hyptet.core import metrics
from hyptet.core.alt_formulas import (
    coset_volume,
    coset_volumes,
    magic_clinant,
    volume_hnice,
    volume_nicev,
    z_list,
)
from hyptet.core.coords import (
    K4_ELEMENTS,
    LIFT_BRANCH,
    DihedralAngles,
    angles_from_circulants,
    b_from_c,
    circulants_from_angles,
    lift_c_from_b,
    s_from_b,
)
from hyptet.core.errors import HyptetError, NonGenericError, NonHyperbolicError
from hyptet.core.ideal_geom import (
    isosceles_split,
    my_octahedron_list,
    octahedron_shapes,
    volume_ideal,
    waist_list,
    z_from_clinants,
)
from hyptet.core.my_engine import (
    buddies,
    gram,
    h_factored,
    h_poly,
    hat_data,
    my_data,
    volume_my,
    volume_my_balanced,
)
from hyptet.core.oracle import oracle_volume
from hyptet.core.sampling import random_balanced, random_finite_angles, random_ideal_tet
from hyptet.core.special_fn import bloch_wigner, dilog, dilog_reference, lobachevsky
from hyptet.core.symmetry import (
    SUBGROUP_ORDERS,
    VERTEX_MOVES,
    enumerate_group,
    formula_cosets,
    g_o,
    g_o_super,
    genericity,
    is_d6_shaped,
    scissors_cosets,
    subgroups,
)
from hyptet.utils.angles import parse_angles
from hyptet.utils.pool import ordered_map, resolve_workers
from hyptet.utils.stats import calculate_stats

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_NON_GENERIC = 2
EXIT_NON_HYPERBOLIC = 3
EXIT_USAGE = 64

VOLUME_METHODS = ("my", "hnice", "nicev", "cosets", "buddies", "oracle", "all")
VERIFY_SUITES = ("identities", "group", "formulas", "oracle", "all")


class HyptetArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ==================== Commands ====================

def cmd_volume(angles: DihedralAngles, method: str = "my") -> RunReport:
    c = circulants_from_angles(angles)
    my_data(c)
    b = b_from_c(c)
    report = genericity(b)
    volumes: Dict[str, float] = {}

    if method in ("my", "all"):
        volumes["my"] = volume_my(angles)
    elif not report.generic:
        raise NonGenericError(report.violated, report.ideal_vertex)
    if method in ("hnice", "all"):
        volumes["hnice"] = volume_hnice(c)
    if method in ("nicev", "all"):
        volumes["nicev"] = volume_nicev(c)
    if method in ("cosets", "all"):
        volumes.update({f"coset:{name}": v for name, v in coset_volumes(b).items()})
    if method in ("buddies", "all"):
        volumes["buddies"] = buddies(c).volume()
    if method == "oracle" or (method == "all" and gram(angles).is_finite()):
        volumes["oracle"] = oracle_volume(angles)

    return RunReport(
        command="volume",
        input=TetrahedronInput(dihedral_angles=list(angles.values)),
        volumes=volumes,
        generic=report.generic,
        violated=list(report.violated),
    )


def _orbit_reps(cosets: int):
    if cosets == 10:
        return formula_cosets()
    return scissors_cosets(mirrored=(cosets == 30))


def cmd_orbit(angles: DihedralAngles, cosets: int = 10) -> RunReport:
    b = b_from_c(circulants_from_angles(angles))
    rows = []
    for rep in _orbit_reps(cosets):
        image = rep.map(b)
        moved = angles_from_circulants(lift_c_from_b(image))
        row = {
            "name": rep.name,
            "kind": rep.kind,
            "b_phases": [float(x) for x in np.angle(image.as_array())],
            "finite": gram(moved).is_finite(),
        }
        try:
            if cosets == 10:
                row["volume"] = coset_volume(b, rep.map)
            else:
                row["volume"] = volume_my_balanced(image, require_generic=False)
        except HyptetError as e:
            row["volume"] = None
            row["error"] = e.code
        if cosets == 10:
            m = magic_clinant(image)
            row["magic_clinant"] = [m.real, m.imag]
        rows.append(row)
    return RunReport(
        command="orbit",
        input=TetrahedronInput(dihedral_angles=list(angles.values)),
        rows=rows,
        metadata={"lift_branch": LIFT_BRANCH},
    )


# ==================== Verification suites ====================
# Inputs are drawn from the seeded generator in the parent process; each trial
# is a pure function of its inputs and results come back in trial order.

Residuals = Dict[str, float]

# oracle residuals are judged against at least this, whatever --tol says
ORACLE_AGREEMENT = 1e-6


def _collect(trials: List[Residuals]) -> Dict[str, List[float]]:
    checks: Dict[str, List[float]] = {}
    for trial in trials:
        for key, value in trial.items():
            checks.setdefault(key, []).append(float(value))
    return checks


def _identity_trial(inputs) -> Residuals:
    z, x, t, c, w = inputs
    z0 = z_from_clinants(t, 0)
    s = s_from_b(b_from_c(c))
    shapes = octahedron_shapes(s, w)
    lhs = 2 * float(np.sum(bloch_wigner(np.array(shapes))))
    rhs = float(np.sum(np.imag(dilog(my_octahedron_list(s, w))))
                + np.sum(np.imag(dilog(waist_list(s)))))
    return {
        "fsym2": abs(dilog(1 - 1 / z) + dilog(1 - z) + 0.5 * np.log(z) ** 2),
        "bloch_wigner_antisymmetry": abs(bloch_wigner(z) + bloch_wigner(z.conjugate())),
        "dilog_reference": abs(dilog(z) - dilog_reference(z)),
        "lobachevsky_period": abs(lobachevsky(x + np.pi) - lobachevsky(x)),
        "ideal_isosceles": abs(isosceles_split(t).volume() - 2 * volume_ideal(t)),
        "ideal_z_cycle": abs(z_from_clinants(t, 1) - 1 / (1 - z0)),
        "h_factored": abs(h_poly(c, w) - h_factored(c, w)),
        "waist_identity": abs(lhs - rhs),
    }


def _identity_checks(rng: np.random.Generator, trials: int, workers: int = 0) -> Dict[str, List[float]]:
    inputs = []
    for _ in range(trials):
        z = complex(*rng.uniform(-3.0, 3.0, size=2))
        if abs(z) < 0.1 or abs(z.imag) < 1e-3:
            z += 0.5j
        x = float(rng.uniform(-3.0, 3.0))
        t = random_ideal_tet(rng)
        c = circulants_from_angles(random_finite_angles(rng))
        w = complex(np.exp(1j * rng.uniform(0, 2 * np.pi)))
        inputs.append((z, x, t, c, w))
    return _collect(ordered_map(_identity_trial, inputs, workers))


def _group_trial(inputs) -> Residuals:
    b, g = inputs
    s = s_from_b(b)
    display = g_o_super(s).as_array()
    return {
        "constraint": g(b).constraint_residual(),
        "inverse": float(np.max(np.abs(g.inverse()(g(b)).as_array() - b.as_array()))),
        "hat_delta": abs(hat_data(g(b), strict=False).delta - hat_data(b, strict=False).delta),
        "g_o_display": float(np.max(np.abs(display - s_from_b(g_o()(b)).as_array()))),
        "vertex_moves": max(float(np.max(np.abs(move(s).as_array() - s_from_b(move.map(b)).as_array())))
                            for move in VERTEX_MOVES),
    }


def group_order_rows() -> List[Dict[str, object]]:
    table = enumerate_group()
    rows: List[Dict[str, object]] = [{"name": "G", "order": len(table), "d6_shaped": is_d6_shaped(table)}]
    rows += [{"name": name, "order": len(sub)} for name, sub in subgroups().items()]
    # K4 moves circulants without changing b, so angle data sees G x K4
    rows.append({"name": "GxK4", "order": len(table) * len(K4_ELEMENTS)})
    return rows


def _group_checks(rng: np.random.Generator, trials: int, workers: int = 0) -> Dict[str, List[float]]:
    table = enumerate_group()
    orders = {row["name"]: row["order"] for row in group_order_rows()}
    checks: Dict[str, List[float]] = {
        "group_order": [abs(orders["G"] - 23040)],
        "angle_data_order": [abs(orders["GxK4"] - 92160)],
        "d6_shape": [0.0 if is_d6_shaped(table) else 1.0],
        "subgroup_orders": [float(sum(abs(orders[name] - order) for name, order in SUBGROUP_ORDERS.items()))],
    }
    elements = table.elements
    inputs = [(random_balanced(rng), elements[int(rng.integers(len(elements)))]) for _ in range(trials)]
    checks.update(_collect(ordered_map(_group_trial, inputs, workers)))
    return checks


def _formula_trial(angles: DihedralAngles) -> Residuals:
    c = circulants_from_angles(angles)
    b = b_from_c(c)
    v = volume_my(angles)
    zl = z_list(b)
    return {
        "hnice": abs(volume_hnice(c) - v),
        "nicev": abs(volume_nicev(c) - v),
        "cosets": max(abs(x - v) for x in coset_volumes(b).values()),
        "buddies": abs(buddies(c).volume() - v),
        "dt": max(zl.dt_residuals()),
        "magic_clinant": abs(zl.common_clinant - magic_clinant(b).conjugate()),
        "hat_root": abs(hat_data(g_o()(b)).rho - my_data(c).rho),
    }


def _formula_checks(rng: np.random.Generator, trials: int, workers: int = 0) -> Dict[str, List[float]]:
    inputs = [random_finite_angles(rng) for _ in range(trials)]
    return _collect(ordered_map(_formula_trial, inputs, workers))


def _oracle_trial(angles: DihedralAngles) -> Residuals:
    # serial integration: pool workers cannot start pools of their own
    return {"oracle": abs(oracle_volume(angles, workers=0) - volume_my(angles))}


def _oracle_checks(rng: np.random.Generator, trials: int, workers: int = 0) -> Dict[str, List[float]]:
    inputs = [random_finite_angles(rng) for _ in range(trials)]
    return _collect(ordered_map(_oracle_trial, inputs, workers))


SUITES: Dict[str, Callable[[np.random.Generator, int, int], Dict[str, List[float]]]] = {
    "identities": _identity_checks,
    "group": _group_checks,
    "formulas": _formula_checks,
    "oracle": _oracle_checks,
}


def cmd_verify(suite: str = "all", seed: int = 0, trials: int = 20, tol: float = 1e-8,
               workers: Optional[int] = None) -> RunReport:
    rng = np.random.default_rng(seed)
    workers = resolve_workers(workers)
    names = list(SUITES) if suite == "all" else [suite]
    rows, residuals, failures = [], {}, []
    for name in names:
        limit = max(tol, ORACLE_AGREEMENT) if name == "oracle" else tol
        for check, values in SUITES[name](rng, trials, workers).items():
            stats = calculate_stats(values) or {}
            worst = stats.get("max", 0.0)
            key = f"{name}.{check}"
            residuals[key] = worst
            metrics.record_residual(name, worst, limit)
            rows.append({"suite": name, "check": key, **stats})
            if worst > limit:
                failures.append(key)
                logger.warning(f"verification {key} failed: residual {worst:.3g} > {limit:g}")
        if name == "group":
            rows += [{"suite": name, "check": f"group.order.{row['name']}", "order": row["order"]}
                     for row in group_order_rows()]
    return RunReport(
        command="verify",
        residuals=residuals,
        rows=rows,
        failures=failures,
        metadata={"seed": seed, "trials": trials, "workers": workers},
        exit_code=EXIT_VERIFY_FAILED if failures else EXIT_OK,
    )


def cmd_group(csv_path: Optional[str] = None) -> RunReport:
    table = enumerate_group()
    rows = group_order_rows()
    if csv_path:
        written = table.to_csv(csv_path)
        logger.info(f"wrote {written} group elements to {csv_path}")
    return RunReport(command="group", rows=rows)


# ==================== Argument handling ====================

def build_parser() -> argparse.ArgumentParser:
    common = HyptetArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--csv", action="store_true", help="print rows/volumes as CSV")
    common.add_argument("--metrics-out", metavar="PATH", help="write Prometheus metrics here")

    angle_args = HyptetArgumentParser(add_help=False)
    angle_args.add_argument("--angles", help="six comma-separated angles, e.g. 'pi/3x6'")
    angle_args.add_argument("--degrees", action="store_true", help="angles are in degrees")
    angle_args.add_argument("--input-json", metavar="FILE", help="TetrahedronInput or RunReport file")

    parser = HyptetArgumentParser(prog="hyptet", description="Hyperbolic tetrahedron volumes and symmetries.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    volume = sub.add_parser("volume", parents=[common, angle_args], help="compute volumes")
    volume.add_argument("--method", choices=VOLUME_METHODS, default="my")

    orbit = sub.add_parser("orbit", parents=[common, angle_args], help="coset orbit of a tetrahedron")
    orbit.add_argument("--cosets", type=int, choices=(30, 15, 10), default=10)

    verify = sub.add_parser("verify", parents=[common], help="run verification suites")
    verify.add_argument("--suite", choices=VERIFY_SUITES, default="all")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--trials", type=int, default=20)
    verify.add_argument("--tol", type=float, default=1e-8)
    verify.add_argument("--workers", type=int, default=None, help="worker processes (default HYPTET_WORKERS)")

    group = sub.add_parser("group", parents=[common], help="group and subgroup orders")
    group.add_argument("--table-csv", metavar="PATH", help="export the 23040 x 49 table")
    return parser


def _load_angles(parser: argparse.ArgumentParser, args: argparse.Namespace) -> DihedralAngles:
    if args.input_json:
        raw = Path(args.input_json).read_text()
        try:
            record = TetrahedronInput.model_validate_json(raw)
        except ValidationError:
            try:
                record = RunReport.model_validate_json(raw).input
            except ValidationError as e:
                parser.error(f"{args.input_json}: not a tetrahedron input or run report ({e.error_count()} errors)")
            if record is None:
                parser.error(f"{args.input_json}: run report carries no input")
        return record.to_angles()
    if not args.angles:
        parser.error("one of --angles or --input-json is required")
    try:
        values = parse_angles(args.angles)
    except HyptetError as e:
        parser.error(str(e))
    if args.degrees:
        return DihedralAngles.from_degrees(values)
    return DihedralAngles(tuple(values))


def _render(report: RunReport, args: argparse.Namespace) -> str:
    if args.json:
        return report.model_dump_json(indent=2)
    if args.csv:
        buffer = io.StringIO()
        if report.rows:
            fields = sorted({k for row in report.rows for k in row})
            writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            for row in report.rows:
                writer.writerow({k: json.dumps(v) if isinstance(v, list) else v for k, v in row.items()})
        else:
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(["name", "value"])
            for name, value in {**report.volumes, **report.residuals}.items():
                writer.writerow([name, repr(value)])
        return buffer.getvalue().rstrip("\n")
    lines = [f"# hyptet {report.command}"]
    lines += [f"{name:<24} {value:.15g}" for name, value in report.volumes.items()]
    for row in report.rows:
        lines.append("  ".join(f"{k}={v}" for k, v in row.items()))
    if report.generic is False:
        lines.append(f"non-generic: {', '.join(report.violated)}")
    if report.failures:
        lines.append(f"FAILED: {', '.join(report.failures)}")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    metrics.initialize_metrics(__version__, settings.environment)
    start = time.perf_counter()

    try:
        if args.command == "volume":
            report = cmd_volume(_load_angles(parser, args), args.method)
        elif args.command == "orbit":
            report = cmd_orbit(_load_angles(parser, args), args.cosets)
        elif args.command == "verify":
            report = cmd_verify(args.suite, args.seed, args.trials, args.tol, args.workers)
        else:
            report = cmd_group(args.table_csv)
    except NonGenericError as e:
        metrics.record_error(e, args.command)
        logger.error(f"{args.command}: {e}")
        print(str(e), file=sys.stderr)
        return EXIT_NON_GENERIC
    except NonHyperbolicError as e:
        metrics.record_error(e, args.command)
        logger.error(f"{args.command}: {e}")
        print(str(e), file=sys.stderr)
        return EXIT_NON_HYPERBOLIC
    except HyptetError as e:
        metrics.record_error(e, args.command)
        logger.error(f"{args.command} failed ({e.code}): {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFY_FAILED

    report.timing_seconds = time.perf_counter() - start
    report.resources = metrics.update_resource_metrics()
    print(_render(report, args))
    if args.metrics_out and settings.metrics_enabled:
        Path(args.metrics_out).write_bytes(metrics.get_metrics_text())
    elif args.metrics_out:
        logger.debug(f"metrics disabled, not writing {args.metrics_out}")
    return report.exit_code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
