"""Event-level seeded simulation of the charged-sphere scattering machine.

A trial walks the machine through its five phases: the assembled cluster is
dropped in, disassembles into a shuttered queue (a uniformly random sphere
ordering — the uncontrollable selection that generates the statistics), the
first tranche of ``k`` spheres falls through the deflecting field and tilts
the lever by charge majority, every later tranche is routed to the already
tilted side (its torque can no longer flip the lever), and the cluster
reassembles in one exit compartment.

Randomness enters in exactly two places, both served by the trial's own
counter-indexed stream (see :mod:`deltamachine.rng`):

* draws ``0 .. K-2`` shuffle the spheres (Fisher-Yates, one bounded index
  per position, taken modulo the remaining range — bias below 2**-57);
* draw ``K-1`` resolves an exactly balanced first tranche by fair coin
  (low bit set = tilt right).  Balance is impossible for odd ``k`` and the
  code asserts that instead of handling it.

The outcome is therefore a pure function of ``(state, measurement, seed)``,
and the vectorized ensemble path reproduces the scalar trial bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import rng
from .ensemble import DEFAULT_Z, EnsembleResult, run_counted
from .spheres import (
    DEFAULT_TABLE_CEILING,
    ElectricState,
    KMeasurement,
    probability_table,
)


@dataclass(frozen=True)
class Sphere:
    """One constituent sphere: unit charge and a trial-unique id."""

    charge: int
    id: int

    def __post_init__(self) -> None:
        if self.charge not in (1, -1):
            raise ValueError("charge must be +1 or -1")


class Tilt(Enum):
    LEFT = "left"
    RIGHT = "right"


class Outcome(Enum):
    TRANSMITTED = "transmitted"
    REFLECTED = "reflected"


class MachinePhase(Enum):
    ASSEMBLED = "assembled"
    DISASSEMBLED = "disassembled"
    DECIDING = "deciding"
    SETTLED = "settled"
    REASSEMBLED = "reassembled"


PHASE_ORDER = (
    MachinePhase.ASSEMBLED,
    MachinePhase.DISASSEMBLED,
    MachinePhase.DECIDING,
    MachinePhase.SETTLED,
    MachinePhase.REASSEMBLED,
)


@dataclass(frozen=True)
class PhaseRecord:
    """One phase of a trial, with the payload relevant to that phase.

    Each of the five phases is entered exactly once per trial, so a full
    trace is five records; the only O(K) payload is the shutter queue.
    ``routed`` counts spheres delivered to the tilted side and has reached
    K by the time the machine settles.
    """

    phase: MachinePhase
    queue: tuple[Sphere, ...] | None = None
    tranche: tuple[Sphere, ...] | None = None
    tilt: Tilt | None = None
    routed: int | None = None


@dataclass(frozen=True)
class TrialOutcome:
    """Result of one trial; ``result`` is transmitted iff the lever tilted right."""

    result: Outcome
    tie_broken: bool
    trace: tuple[PhaseRecord, ...] | None = None


def spheres_for_state(state: ElectricState) -> tuple[Sphere, ...]:
    """Canonical sphere labelling: ids 0..K-1, positive charges first."""
    positive = tuple(Sphere(charge=1, id=i) for i in range(state.k_plus))
    negative = tuple(
        Sphere(charge=-1, id=state.k_plus + i) for i in range(state.k_minus)
    )
    return positive + negative


def _shuffled_ids(total: int, seed: int) -> list[int]:
    """Fisher-Yates ordering driven by draws 0..total-2 of the trial stream."""
    order = list(range(total))
    for j in range(total - 1, 0, -1):
        r = rng.draw(seed, total - 1 - j) % (j + 1)
        order[j], order[r] = order[r], order[j]
    return order


def run_trial(
    state: ElectricState,
    meas: KMeasurement,
    seed: int,
    *,
    record_trace: bool = False,
) -> TrialOutcome:
    """Run one seeded trial; deterministic in ``(state, meas, seed)``."""
    total = state.total
    k = meas.k
    if k > total:
        raise ValueError(f"tranche size k={k} exceeds cluster size K={total}")
    seed = int(seed) & rng.MASK64

    spheres = spheres_for_state(state)
    queue = tuple(spheres[i] for i in _shuffled_ids(total, seed))
    tranche = queue[:k]
    charge_sum = sum(s.charge for s in tranche)

    if charge_sum == 0:
        assert k % 2 == 0, "balanced tranche with odd tranche size"
        tie_broken = True
        tilt = Tilt.RIGHT if rng.coin(rng.draw(seed, total - 1)) else Tilt.LEFT
    else:
        tie_broken = False
        tilt = Tilt.RIGHT if charge_sum > 0 else Tilt.LEFT

    # Remaining tranches only follow the tilt; no further randomness.
    trace: tuple[PhaseRecord, ...] | None = None
    if record_trace:
        trace = (
            PhaseRecord(phase=MachinePhase.ASSEMBLED),
            PhaseRecord(phase=MachinePhase.DISASSEMBLED, queue=queue),
            PhaseRecord(phase=MachinePhase.DECIDING, tranche=tranche),
            PhaseRecord(phase=MachinePhase.SETTLED, tilt=tilt, routed=total),
            PhaseRecord(phase=MachinePhase.REASSEMBLED, tilt=tilt),
        )

    result = Outcome.TRANSMITTED if tilt is Tilt.RIGHT else Outcome.REFLECTED
    return TrialOutcome(result=result, tie_broken=tie_broken, trace=trace)


def _transmitted_mask(
    charges: np.ndarray, k: int, trial_seeds: np.ndarray
) -> np.ndarray:
    """Vectorized replica of the trial kernel over many per-trial seeds."""
    total = charges.size
    m = trial_seeds.size
    mat = np.broadcast_to(charges, (m, total)).copy()
    rows = np.arange(m)
    for j in range(total - 1, 0, -1):
        r = (rng.draws_at(trial_seeds, total - 1 - j) % np.uint64(j + 1)).astype(
            np.intp
        )
        left = mat[rows, j]
        mat[rows, j] = mat[rows, r]
        mat[rows, r] = left
    charge_sum = mat[:, :k].sum(axis=1, dtype=np.int32)
    transmitted = charge_sum > 0
    tie = charge_sum == 0
    if tie.any():
        assert k % 2 == 0, "balanced tranche with odd tranche size"
        coins = rng.draws_at(trial_seeds[tie], total - 1) & np.uint64(1)
        transmitted[tie] = coins == 1
    return transmitted


def run_ensemble(
    state: ElectricState,
    meas: KMeasurement,
    n_trials: int,
    seed: int,
    *,
    z: float = DEFAULT_Z,
) -> EnsembleResult:
    """Run ``n_trials`` independent trials with counter-derived per-trial seeds.

    Trial ``i`` uses ``substream_seed(seed, i)`` and is bit-identical to
    ``run_trial(state, meas, substream_seed(seed, i))``; the aggregate is
    reproducible and order-independent.
    """
    total = state.total
    if meas.k > total:
        raise ValueError(f"tranche size k={meas.k} exceeds cluster size K={total}")
    charges = np.array(
        [s.charge for s in spheres_for_state(state)], dtype=np.int8
    )
    return run_counted(
        n_trials,
        seed,
        lambda trial_seeds: _transmitted_mask(charges, meas.k, trial_seeds),
        z=z,
    )


@dataclass(frozen=True)
class EmpiricalRow:
    k: int
    entries: tuple[tuple[ElectricState, EnsembleResult], ...]


@dataclass(frozen=True)
class EmpiricalTable:
    """Ensemble results on the same (k, state) grid as the exact table."""

    K: int
    n_trials: int
    seed: int
    z: float
    rows: tuple[EmpiricalRow, ...]

    def row(self, k: int) -> EmpiricalRow:
        if not 1 <= k <= self.K:
            raise KeyError(f"no row for k={k} in a K={self.K} table")
        return self.rows[k - 1]


def empirical_table(
    K: int,
    n_trials: int,
    seed: int,
    *,
    z: float = DEFAULT_Z,
    ceiling: int = DEFAULT_TABLE_CEILING,
) -> EmpiricalTable:
    """Run an ensemble for every cell of the exact table's (k, state) grid.

    Cell (k, K+) uses the child seed ``substream_seed(seed, (k-1)*(K+1)+K+)``
    so the whole table is reproducible from the single master seed.
    """
    exact = probability_table(K, ceiling=ceiling)  # validates K and ceiling
    seed = int(seed) & rng.MASK64
    rows = []
    for row in exact.rows:
        meas = KMeasurement(row.k)
        entries = []
        for state, _ in row.entries:
            cell_index = (row.k - 1) * (K + 1) + state.k_plus
            cell_seed = rng.substream_seed(seed, cell_index)
            entries.append((state, run_ensemble(state, meas, n_trials, cell_seed, z=z)))
        rows.append(EmpiricalRow(k=row.k, entries=tuple(entries)))
    return EmpiricalTable(K=K, n_trials=n_trials, seed=seed, z=float(z), rows=tuple(rows))
