"""Command-line interface: tables, simulations, scattering, classification.

Exit codes: 0 success, 2 usage or validation error, 3 golden-table mismatch.
Every randomized command reports its seed and generator name, so any
published number can be reproduced bit-for-bit; when no seed is given a
fresh one is drawn and printed in the report header.

Environment overrides (these two only): ``DELTAMACHINE_OUTPUT`` for the
default output path, ``DELTAMACHINE_TABLE_CEILING`` for the largest K the
table builders accept.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import secrets
import sys
from fractions import Fraction
from typing import Any

from . import serialize
from .elastic import ElasticExperiment, epsilon_probabilities, simulate_elastic
from .ensemble import DEFAULT_Z
from .golden import GOLDEN_SIZES, golden_table
from .machine import run_ensemble
from .regimes import classify_table
from .scattering import (
    ScatteringConfig,
    amplitudes,
    jump_condition_residual,
    reflection_probability,
    transmission_probability,
)
from .spheres import (
    DEFAULT_TABLE_CEILING,
    ElectricState,
    KMeasurement,
    probability_table,
    transmission_probability_exact,
)

ENV_OUTPUT = "DELTAMACHINE_OUTPUT"
ENV_CEILING = "DELTAMACHINE_TABLE_CEILING"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GOLDEN_MISMATCH = 3

DEFAULT_SCHEDULE = (100, 1000, 10_000, 100_000)


class GoldenMismatch(Exception):
    pass


def _table_ceiling(args: argparse.Namespace) -> int:
    if getattr(args, "ceiling", None) is not None:
        return args.ceiling
    env = os.environ.get(ENV_CEILING)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"{ENV_CEILING} must be an integer, got {env!r}") from exc
    return DEFAULT_TABLE_CEILING


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    return secrets.randbits(64)


# -- rendering ---------------------------------------------------------------


def _render_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _render_csv(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _grid_text(header: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(len(header))
    ]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    for r in rows:
        lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def _fraction_text(fr: Fraction) -> str:
    return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


# -- tables ------------------------------------------------------------------


def _check_golden(table) -> None:
    reference = golden_table(table.K)
    mismatches = []
    for row, ref_row in zip(table.rows, reference):
        for (state, value), expected in zip(row.entries, ref_row):
            if value != expected:
                mismatches.append(
                    f"k={row.k} K+={state.k_plus}: computed {value}, golden {expected}"
                )
    if mismatches:
        raise GoldenMismatch("; ".join(mismatches))


def _cmd_tables(args: argparse.Namespace) -> tuple[dict[str, Any], str, str]:
    if args.golden and args.K not in GOLDEN_SIZES:
        raise ValueError(
            f"--golden is available for K in {GOLDEN_SIZES}, got K={args.K}"
        )
    table = probability_table(args.K, ceiling=_table_ceiling(args))
    if args.golden:
        _check_golden(table)

    payload = serialize.table_payload(table)
    if args.golden:
        payload["golden_checked"] = True

    header, rows = serialize.table_csv_rows(table)
    csv_text = _render_csv(header, rows)

    states = [s for s, _ in table.rows[0].entries]
    grid_header = ["k\\E"] + [s.energy_label for s in states]
    frac_rows = [
        [str(row.k)] + [_fraction_text(p) for _, p in row.entries]
        for row in table.rows
    ]
    dec_rows = [
        [str(row.k)] + [f"{float(p):.6f}" for _, p in row.entries]
        for row in table.rows
    ]
    text = (
        f"transmission probabilities, K = {table.K} "
        "(rows: tranche size k; columns: state energy K+/K-)\n"
        + _grid_text(grid_header, frac_rows)
        + "decimal equivalents\n"
        + _grid_text(grid_header, dec_rows)
    )
    if args.golden:
        text += f"golden check passed for K = {table.K}\n"
    return payload, csv_text, text


# -- simulate ----------------------------------------------------------------


def _ensemble_csv(
    prefix_header: list[str], prefix_row: list[Any], result_payload: dict[str, Any]
) -> tuple[list[str], list[Any]]:
    header = prefix_header + [
        "n_trials",
        "transmitted",
        "frequency_num",
        "frequency_den",
        "frequency_decimal",
        "half_width",
        "z",
        "seed",
        "generator",
    ]
    row = prefix_row + [
        result_payload["n_trials"],
        result_payload["transmitted"],
        result_payload["frequency"]["num"],
        result_payload["frequency"]["den"],
        result_payload["frequency"]["decimal"],
        result_payload["half_width"],
        result_payload["z"],
        result_payload["seed"],
        result_payload["generator"],
    ]
    return header, row


def _cmd_simulate(args: argparse.Namespace) -> tuple[dict[str, Any], str, str]:
    state = ElectricState(args.kp, args.km)
    meas = KMeasurement(args.k)
    seed = _resolve_seed(args)
    expected = transmission_probability_exact(state, meas)
    result = run_ensemble(state, meas, args.n, seed, z=args.z)

    result_payload = serialize.ensemble_payload(result)
    payload = {
        "command": "simulate",
        "k_plus": state.k_plus,
        "k_minus": state.k_minus,
        "k": meas.k,
        "expected": serialize.fraction_payload(expected),
        "result": result_payload,
    }
    header, row = _ensemble_csv(
        ["k_plus", "k_minus", "k", "expected_num", "expected_den", "expected_decimal"],
        [
            state.k_plus,
            state.k_minus,
            meas.k,
            expected.numerator,
            expected.denominator,
            float(expected),
        ],
        result_payload,
    )
    csv_text = _render_csv(header, [row])

    text = (
        "sphere-machine ensemble\n"
        f"seed={result.seed} generator={result.generator} z={result.z}\n"
        f"k_plus={state.k_plus} k_minus={state.k_minus} k={meas.k} "
        f"n_trials={result.n_trials}\n"
        f"expected    = {_fraction_text(expected)} = {float(expected)!r}\n"
        f"transmitted = {result.transmitted}\n"
        f"frequency   = {_fraction_text(result.frequency)} = {float(result.frequency)!r}\n"
        f"half_width  = {result.half_width!r}\n"
    )
    return payload, csv_text, text


# -- scatter -----------------------------------------------------------------


def _parse_grid(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("--grid expects LO:HI:N")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 2 or not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise ValueError("--grid expects LO < HI and N >= 2")
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def _cmd_scatter(args: argparse.Namespace) -> tuple[dict[str, Any], str, str]:
    energies: list[float] = list(args.E or [])
    if args.grid:
        energies.extend(_parse_grid(args.grid))
    if not energies:
        raise ValueError("scatter requires --E and/or --grid")
    config = ScatteringConfig(coupling=args.coupling)

    points = []
    for e in energies:
        amp = amplitudes(e, config)
        points.append(
            serialize.scatter_point_payload(
                amp,
                transmission_probability(e, config),
                reflection_probability(e, config),
                jump_condition_residual(e, config),
            )
        )
    payload = {"command": "scatter", "coupling": config.coupling, "points": points}

    header, rows = serialize.scatter_csv_rows(points)
    csv_text = _render_csv(header, rows)

    grid_header = ["energy", "T_re", "T_im", "R_re", "R_im", "P_tr", "P_re", "residual"]
    text_rows = [
        [
            f"{p['energy']:g}",
            f"{p['transmission']['re']:.12g}",
            f"{p['transmission']['im']:.12g}",
            f"{p['reflection']['re']:.12g}",
            f"{p['reflection']['im']:.12g}",
            f"{p['p_transmission']:.12g}",
            f"{p['p_reflection']:.12g}",
            f"{p['jump_residual']:.3g}",
        ]
        for p in points
    ]
    text = (
        f"delta-potential scattering, coupling = {config.coupling:g} "
        "(multiples of sqrt(2 hbar^2 / m))\n" + _grid_text(grid_header, text_rows)
    )
    return payload, csv_text, text


# -- epsilon -----------------------------------------------------------------


def _cmd_epsilon(args: argparse.Namespace) -> tuple[dict[str, Any], str, str]:
    experiment = ElasticExperiment(theta=args.theta, epsilon=args.eps)
    pair = epsilon_probabilities(experiment)

    payload: dict[str, Any] = {
        "command": "epsilon",
        "theta": experiment.theta,
        "epsilon": experiment.epsilon,
        "cos_theta": experiment.cos_theta,
        "closed_form": serialize.outcome_pair_payload(pair),
        "simulation": None,
    }
    prefix_header = ["theta", "epsilon", "p_plus", "p_minus"]
    prefix_row: list[Any] = [
        experiment.theta,
        experiment.epsilon,
        pair.p_plus,
        pair.p_minus,
    ]
    text = (
        "elastic-band measurement\n"
        f"theta={experiment.theta!r} epsilon={experiment.epsilon!r} "
        f"cos_theta={experiment.cos_theta!r}\n"
        f"closed form: p_plus={pair.p_plus!r} p_minus={pair.p_minus!r}\n"
    )

    if args.n is not None:
        seed = _resolve_seed(args)
        result = simulate_elastic(experiment, args.n, seed, z=args.z)
        result_payload = serialize.ensemble_payload(result)
        payload["simulation"] = result_payload
        header, row = _ensemble_csv(prefix_header, prefix_row, result_payload)
        csv_text = _render_csv(header, [row])
        text += (
            f"simulation: seed={result.seed} generator={result.generator} "
            f"z={result.z}\n"
            f"n_trials={result.n_trials} plus_outcomes={result.transmitted} "
            f"frequency={float(result.frequency)!r} "
            f"half_width={result.half_width!r}\n"
        )
    else:
        csv_text = _render_csv(prefix_header, [prefix_row])
    return payload, csv_text, text


# -- classify ----------------------------------------------------------------


def _witness_text(witness_payload: dict[str, Any]) -> str:
    if witness_payload["k_plus"] is None:
        return witness_payload["kind"]
    return (
        f"{witness_payload['kind']}"
        f"({witness_payload['k_plus']}/{witness_payload['k_minus']})"
    )


def _cmd_classify(args: argparse.Namespace) -> tuple[dict[str, Any], str, str]:
    verdicts = classify_table(args.K, ceiling=_table_ceiling(args))
    payload = {"command": "classify", "K": args.K}
    payload.update(serialize.verdicts_payload(verdicts))

    header = ["k", "verdict", "witnesses", "note"]
    rows = []
    for k in sorted(verdicts):
        key = str(k)
        witnesses = ";".join(
            _witness_text(w) for w in payload["witnesses"][key]
        )
        rows.append([k, payload["verdicts"][key], witnesses, payload["notes"][key] or ""])
    csv_text = _render_csv(header, rows)

    lines = [f"regime classification, K = {args.K}"]
    for k in sorted(verdicts):
        key = str(k)
        witnesses = ", ".join(_witness_text(w) for w in payload["witnesses"][key])
        line = f"k={k}: {payload['verdicts'][key]}  [{witnesses}]"
        if payload["notes"][key]:
            line += f"  note: {payload['notes'][key]}"
        lines.append(line)
    text = "\n".join(lines) + "\n"
    return payload, csv_text, text


# -- convergence -------------------------------------------------------------


def _parse_schedule(spec: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in spec.split(","))
    except ValueError as exc:
        raise ValueError("--schedule expects comma-separated integers") from exc
    if not values or any(v < 1 for v in values):
        raise ValueError("--schedule entries must be positive")
    return values


def _cmd_convergence(args: argparse.Namespace) -> tuple[dict[str, Any], str, str]:
    state = ElectricState(args.kp, args.km)
    meas = KMeasurement(args.k)
    seed = _resolve_seed(args)
    schedule = _parse_schedule(args.schedule)
    expected = transmission_probability_exact(state, meas)

    series = []
    for n in schedule:
        result = run_ensemble(state, meas, n, seed, z=args.z)
        entry = serialize.ensemble_payload(result)
        entry["abs_error"] = abs(float(result.frequency) - float(expected))
        series.append(entry)

    payload = {
        "command": "convergence",
        "k_plus": state.k_plus,
        "k_minus": state.k_minus,
        "k": meas.k,
        "expected": serialize.fraction_payload(expected),
        "schedule": list(schedule),
        "series": series,
    }

    header = [
        "n_trials",
        "transmitted",
        "frequency_num",
        "frequency_den",
        "frequency_decimal",
        "half_width",
        "abs_error",
        "z",
        "seed",
        "generator",
    ]
    rows = [
        [
            e["n_trials"],
            e["transmitted"],
            e["frequency"]["num"],
            e["frequency"]["den"],
            e["frequency"]["decimal"],
            e["half_width"],
            e["abs_error"],
            e["z"],
            e["seed"],
            e["generator"],
        ]
        for e in series
    ]
    csv_text = _render_csv(header, rows)

    grid_header = ["n_trials", "frequency", "abs_error", "half_width"]
    text_rows = [
        [
            str(e["n_trials"]),
            f"{e['frequency']['decimal']:.6f}",
            f"{e['abs_error']:.6f}",
            f"{e['half_width']:.6f}",
        ]
        for e in series
    ]
    text = (
        "frequency convergence, sphere-machine ensemble\n"
        f"seed={series[0]['seed']} generator={series[0]['generator']} z={args.z}\n"
        f"k_plus={state.k_plus} k_minus={state.k_minus} k={meas.k} "
        f"expected={_fraction_text(expected)}={float(expected)!r}\n"
        + _grid_text(grid_header, text_rows)
    )
    return payload, csv_text, text


# -- parser / entry point ----------------------------------------------------


def _add_format_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format",
        choices=("text", "json", "csv"),
        default="text",
        help="output format (default: text)",
    )
    sub.add_argument(
        "--output",
        default=None,
        help=f"write output to this path (default: ${ENV_OUTPUT} or stdout)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltamachine",
        description=(
            "Exact tables, seeded simulations, delta-potential scattering, and "
            "regime classification for the charged-sphere machine."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="exact transmission-probability table")
    p.add_argument("--K", type=int, required=True, help="cluster size")
    p.add_argument("--golden", action="store_true", help="check against the frozen reference tables (K in 2..7)")
    p.add_argument("--ceiling", type=int, default=None, help=f"table size ceiling (default: ${ENV_CEILING} or {DEFAULT_TABLE_CEILING})")
    _add_format_options(p)

    p = sub.add_parser("simulate", help="seeded sphere-machine ensemble")
    p.add_argument("--kp", type=int, required=True, help="positive-sphere count")
    p.add_argument("--km", type=int, required=True, help="negative-sphere count")
    p.add_argument("--k", type=int, required=True, help="tranche size")
    p.add_argument("--n", type=int, required=True, help="number of trials")
    p.add_argument("--seed", type=int, default=None, help="master seed (default: random, recorded in the report)")
    p.add_argument("--z", type=float, default=DEFAULT_Z, help="confidence level for the half-width")
    _add_format_options(p)

    p = sub.add_parser("scatter", help="delta-potential amplitudes and probabilities")
    p.add_argument("--E", type=float, action="append", help="energy (repeatable)")
    p.add_argument("--grid", default=None, help="energy grid LO:HI:N")
    p.add_argument("--coupling", type=float, default=1.0, help="coupling, multiples of sqrt(2 hbar^2/m) (default 1)")
    _add_format_options(p)

    p = sub.add_parser("epsilon", help="breakable-elastic spin measurement")
    p.add_argument("--theta", type=float, required=True, help="angle in radians, [0, pi]")
    p.add_argument("--eps", type=float, required=True, help="breakable fraction, [0, 1]")
    p.add_argument("--n", type=int, default=None, help="also simulate this many trials")
    p.add_argument("--seed", type=int, default=None, help="master seed (default: random, recorded in the report)")
    p.add_argument("--z", type=float, default=DEFAULT_Z, help="confidence level for the half-width")
    _add_format_options(p)

    p = sub.add_parser("classify", help="regime verdict for every tranche size")
    p.add_argument("--K", type=int, required=True, help="cluster size")
    p.add_argument("--ceiling", type=int, default=None, help=f"table size ceiling (default: ${ENV_CEILING} or {DEFAULT_TABLE_CEILING})")
    _add_format_options(p)

    p = sub.add_parser("convergence", help="frequency-vs-n series for one cell")
    p.add_argument("--kp", type=int, required=True, help="positive-sphere count")
    p.add_argument("--km", type=int, required=True, help="negative-sphere count")
    p.add_argument("--k", type=int, required=True, help="tranche size")
    p.add_argument("--seed", type=int, default=None, help="master seed (default: random, recorded in the report)")
    p.add_argument("--schedule", default=",".join(str(n) for n in DEFAULT_SCHEDULE), help="comma-separated trial counts")
    p.add_argument("--z", type=float, default=DEFAULT_Z, help="confidence level for the half-width")
    _add_format_options(p)

    return parser


_DISPATCH = {
    "tables": _cmd_tables,
    "simulate": _cmd_simulate,
    "scatter": _cmd_scatter,
    "epsilon": _cmd_epsilon,
    "classify": _cmd_classify,
    "convergence": _cmd_convergence,
}


def _write_output(args: argparse.Namespace, rendered: str) -> None:
    path = args.output or os.environ.get(ENV_OUTPUT)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    try:
        payload, csv_text, text = _DISPATCH[args.command](args)
    except GoldenMismatch as exc:
        print(f"golden mismatch: {exc}", file=sys.stderr)
        return EXIT_GOLDEN_MISMATCH
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.format == "json":
        rendered = _render_json(payload)
    elif args.format == "csv":
        rendered = csv_text
    else:
        rendered = text
    _write_output(args, rendered)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
