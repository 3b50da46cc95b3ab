"""One-particle 1D quantum lattice gas automaton simulator."""

from ._qlga import (
    ClassicalRun,
    EvolutionOperator,
    FieldConfig,
    FrequencyDistribution,
    GaugeFunction,
    Lattice,
    SpectralFlowResult,
    Spectrum,
    Topology,
    WilsonLoop,
    branch_spinor,
    build_evolution,
    classical_baseline,
    classical_mean_steps_enumerated,
    detection_distribution,
    dispersion,
    flow_count,
    frequency_distribution,
    gauge_fix,
    parse_angle,
    prepare_packet,
    required_samples,
    run_detection,
    sample_frequencies,
    spectral_flow,
    spectrum,
    step,
    transform_fields,
    transform_operator,
    verify_block_formulas,
    weights,
    wilson_loop,
    wrap_angle,
)

__all__ = [
    "ClassicalRun",
    "EvolutionOperator",
    "FieldConfig",
    "FrequencyDistribution",
    "GaugeFunction",
    "Lattice",
    "SpectralFlowResult",
    "Spectrum",
    "Topology",
    "WilsonLoop",
    "branch_spinor",
    "build_evolution",
    "classical_baseline",
    "classical_mean_steps_enumerated",
    "detection_distribution",
    "dispersion",
    "flow_count",
    "frequency_distribution",
    "gauge_fix",
    "parse_angle",
    "prepare_packet",
    "required_samples",
    "run_detection",
    "sample_frequencies",
    "spectral_flow",
    "spectrum",
    "step",
    "transform_fields",
    "transform_operator",
    "verify_block_formulas",
    "weights",
    "wilson_loop",
    "wrap_angle",
]
