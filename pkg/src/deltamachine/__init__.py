"""Charged-sphere scattering machine: exact statistics, simulation, analysis.

The package computes, simulates, and classifies the transmission/reflection
statistics of a macroscopic measurement device whose outcome frequencies
reproduce 1-D delta-potential quantum scattering:

* :mod:`~deltamachine.spheres` — exact rational probabilities for
  tranche-majority measurements on a cluster of charged spheres;
* :mod:`~deltamachine.scattering` — analytic delta-potential amplitudes,
  probabilities, and wave-packet quadrature;
* :mod:`~deltamachine.machine` — seeded, reproducible event-level Monte
  Carlo of the machine itself;
* :mod:`~deltamachine.elastic` — the breakable-elastic spin measurement and
  its closed forms;
* :mod:`~deltamachine.regimes` — classification of probability tables as
  classical, quantum, or irreducibly intermediate, with witnesses;
* :mod:`~deltamachine.cli` — command-line front end.
"""

from .elastic import (
    ElasticExperiment,
    OutcomePair,
    epsilon_probabilities,
    quantum_spin_probabilities,
    simulate_elastic,
)
from .ensemble import EnsembleResult
from .machine import (
    EmpiricalRow,
    EmpiricalTable,
    MachinePhase,
    Outcome,
    PhaseRecord,
    Sphere,
    Tilt,
    TrialOutcome,
    empirical_table,
    run_ensemble,
    run_trial,
)
from .regimes import (
    Regime,
    RegimeVerdict,
    Witness,
    WitnessKind,
    classify_row,
    classify_table,
    wronskian_witnesses,
)
from .scattering import (
    ScatteringAmplitudes,
    ScatteringConfig,
    WavePacket,
    amplitudes,
    jump_condition_residual,
    reflection_probability,
    transmission_probability,
    wavepacket_transmission,
)
from .spheres import (
    DEFAULT_TABLE_CEILING,
    ElectricState,
    ExactProbability,
    KMeasurement,
    ProbabilityTable,
    ProbabilityTableRow,
    determinism_threshold,
    probability_table,
    reflection_probability_exact,
    transmission_probability_exact,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TABLE_CEILING",
    "ElasticExperiment",
    "ElectricState",
    "EmpiricalRow",
    "EmpiricalTable",
    "EnsembleResult",
    "ExactProbability",
    "KMeasurement",
    "MachinePhase",
    "Outcome",
    "OutcomePair",
    "PhaseRecord",
    "ProbabilityTable",
    "ProbabilityTableRow",
    "Regime",
    "RegimeVerdict",
    "ScatteringAmplitudes",
    "ScatteringConfig",
    "Sphere",
    "Tilt",
    "TrialOutcome",
    "WavePacket",
    "Witness",
    "WitnessKind",
    "amplitudes",
    "classify_row",
    "classify_table",
    "determinism_threshold",
    "empirical_table",
    "epsilon_probabilities",
    "jump_condition_residual",
    "probability_table",
    "quantum_spin_probabilities",
    "reflection_probability",
    "reflection_probability_exact",
    "run_ensemble",
    "run_trial",
    "simulate_elastic",
    "transmission_probability",
    "transmission_probability_exact",
    "wavepacket_transmission",
    "wronskian_witnesses",
]
