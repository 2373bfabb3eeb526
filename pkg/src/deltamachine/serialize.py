"""JSON payload builders and parsers for every CLI command.

Exact rationals are serialized as ``{"num", "den"}`` integer pairs plus a
``decimal`` convenience field; golden comparisons and round-trips use only
the integer pair.  CSV output is rendered from the same payloads, so the two
formats always carry identical values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .elastic import OutcomePair
from .ensemble import EnsembleResult
from .regimes import Regime, RegimeVerdict, Witness, WitnessKind
from .scattering import ScatteringAmplitudes
from .spheres import ElectricState, ProbabilityTable, ProbabilityTableRow


def fraction_payload(value: Fraction) -> dict[str, Any]:
    return {
        "num": value.numerator,
        "den": value.denominator,
        "decimal": float(value),
    }


def fraction_from_payload(payload: dict[str, Any]) -> Fraction:
    return Fraction(payload["num"], payload["den"])


# -- probability tables ------------------------------------------------------


def table_payload(table: ProbabilityTable) -> dict[str, Any]:
    states = [
        {"k_plus": s.k_plus, "k_minus": s.k_minus, "energy": s.energy_label}
        for s, _ in table.rows[0].entries
    ]
    rows = [
        {"k": row.k, "cells": [fraction_payload(p) for _, p in row.entries]}
        for row in table.rows
    ]
    return {"command": "tables", "K": table.K, "states": states, "rows": rows}


def table_from_payload(payload: dict[str, Any]) -> ProbabilityTable:
    K = payload["K"]
    states = tuple(
        ElectricState(s["k_plus"], s["k_minus"]) for s in payload["states"]
    )
    rows = tuple(
        ProbabilityTableRow(
            k=row["k"],
            entries=tuple(
                (state, fraction_from_payload(cell))
                for state, cell in zip(states, row["cells"])
            ),
        )
        for row in payload["rows"]
    )
    return ProbabilityTable(K=K, rows=rows)


def table_csv_rows(table: ProbabilityTable) -> tuple[list[str], list[list[Any]]]:
    header = ["k", "k_plus", "k_minus", "p_tr_num", "p_tr_den", "p_tr_decimal"]
    rows = [
        [row.k, s.k_plus, s.k_minus, p.numerator, p.denominator, float(p)]
        for row in table.rows
        for s, p in row.entries
    ]
    return header, rows


# -- ensembles ----------------------------------------------------------------


def ensemble_payload(result: EnsembleResult) -> dict[str, Any]:
    return {
        "n_trials": result.n_trials,
        "transmitted": result.transmitted,
        "frequency": fraction_payload(result.frequency),
        "half_width": result.half_width,
        "z": result.z,
        "seed": result.seed,
        "generator": result.generator,
    }


def ensemble_from_payload(payload: dict[str, Any]) -> EnsembleResult:
    return EnsembleResult(
        n_trials=payload["n_trials"],
        transmitted=payload["transmitted"],
        frequency=fraction_from_payload(payload["frequency"]),
        half_width=payload["half_width"],
        z=payload["z"],
        seed=payload["seed"],
        generator=payload["generator"],
    )


# -- outcome pairs -------------------------------------------------------------


def outcome_pair_payload(pair: OutcomePair) -> dict[str, float]:
    return {"p_plus": pair.p_plus, "p_minus": pair.p_minus}


def outcome_pair_from_payload(payload: dict[str, Any]) -> OutcomePair:
    return OutcomePair(p_plus=payload["p_plus"], p_minus=payload["p_minus"])


# -- scattering ---------------------------------------------------------------


def _complex_payload(z: complex) -> dict[str, float]:
    return {"re": z.real, "im": z.imag}


def scatter_point_payload(
    amp: ScatteringAmplitudes, p_tr: float, p_re: float, residual: float
) -> dict[str, Any]:
    return {
        "energy": amp.energy,
        "transmission": _complex_payload(amp.transmission),
        "reflection": _complex_payload(amp.reflection),
        "p_transmission": p_tr,
        "p_reflection": p_re,
        "jump_residual": residual,
    }


def amplitudes_from_payload(point: dict[str, Any]) -> ScatteringAmplitudes:
    return ScatteringAmplitudes(
        transmission=complex(
            point["transmission"]["re"], point["transmission"]["im"]
        ),
        reflection=complex(point["reflection"]["re"], point["reflection"]["im"]),
        energy=point["energy"],
    )


def scatter_csv_rows(points: list[dict[str, Any]]) -> tuple[list[str], list[list[Any]]]:
    header = ["energy", "t_re", "t_im", "r_re", "r_im", "p_tr", "p_re", "jump_residual"]
    rows = [
        [
            p["energy"],
            p["transmission"]["re"],
            p["transmission"]["im"],
            p["reflection"]["re"],
            p["reflection"]["im"],
            p["p_transmission"],
            p["p_reflection"],
            p["jump_residual"],
        ]
        for p in points
    ]
    return header, rows


# -- regime verdicts -----------------------------------------------------------


def witness_payload(witness: Witness) -> dict[str, Any]:
    state = witness.state
    return {
        "kind": witness.kind.value,
        "k_plus": None if state is None else state.k_plus,
        "k_minus": None if state is None else state.k_minus,
    }


def witness_from_payload(payload: dict[str, Any]) -> Witness:
    state = None
    if payload["k_plus"] is not None:
        state = ElectricState(payload["k_plus"], payload["k_minus"])
    return Witness(kind=WitnessKind(payload["kind"]), state=state)


def verdicts_payload(verdicts: dict[int, RegimeVerdict]) -> dict[str, Any]:
    return {
        "verdicts": {str(k): v.verdict.value for k, v in verdicts.items()},
        "witnesses": {
            str(k): [witness_payload(w) for w in v.witnesses]
            for k, v in verdicts.items()
        },
        "notes": {str(k): v.note for k, v in verdicts.items()},
    }


def verdicts_from_payload(payload: dict[str, Any]) -> dict[int, RegimeVerdict]:
    out: dict[int, RegimeVerdict] = {}
    for key, name in payload["verdicts"].items():
        witnesses = tuple(
            witness_from_payload(w) for w in payload["witnesses"][key]
        )
        out[int(key)] = RegimeVerdict(
            verdict=Regime(name),
            witnesses=witnesses,
            note=payload["notes"][key],
        )
    return out
