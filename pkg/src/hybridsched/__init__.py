"""Energy/runtime-aware routing of LLM inference queries across
heterogeneous hardware: power-trace reduction, per-system profiles,
workload distributions, a scalarized cost model, and policy optimizers."""

from .cost import (
    AggregateOutcome,
    CostMode,
    CostWeights,
    SystemShare,
    aggregate_energy,
    assignment_cost,
    query_cost,
    query_energy_runtime,
    query_mode_cost,
    scalarize,
    single_system_outcome,
    weights_from_baseline,
)
from .errors import (
    CapabilityError,
    HybridSchedError,
    InfeasibleError,
    OracleBoundError,
    ValidationError,
)
from .optimizer import (
    BaselinePoint,
    SweepCurve,
    SweepPoint,
    brute_force_assignment,
    default_threshold_grid,
    optimal_assignment,
    pareto_sweep,
    sweep_threshold,
)
from .policy import Assignment, ThresholdPolicy
from .profiles import (
    Axis,
    BenchmarkRecord,
    ProfilePoint,
    SystemProfile,
    SystemSet,
    build_profile,
    eval_energy_per_token,
    eval_runtime,
    read_benchmark_csv,
    read_profile_json,
    write_profile_json,
)
from .synth import CrossoverSpec, make_crossover_profiles
from .traces import (
    EnergyResult,
    PlatformKind,
    PowerSample,
    TraceMeta,
    integrate_gpu_sum,
    integrate_per_core,
    integrate_rapl,
    integrate_weighted_cpu,
    read_trace_csv,
    read_trace_meta,
    reduce_trace,
    write_trace_csv,
)
from .workload import (
    QueryRecord,
    WorkloadDistribution,
    ingest_counts,
    read_histogram_json,
    read_queries_csv,
    synth_workload,
    write_histogram_json,
    write_queries_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateOutcome",
    "Assignment",
    "Axis",
    "BaselinePoint",
    "BenchmarkRecord",
    "CapabilityError",
    "CostMode",
    "CostWeights",
    "CrossoverSpec",
    "EnergyResult",
    "HybridSchedError",
    "InfeasibleError",
    "OracleBoundError",
    "PlatformKind",
    "PowerSample",
    "ProfilePoint",
    "QueryRecord",
    "SweepCurve",
    "SweepPoint",
    "SystemProfile",
    "SystemSet",
    "SystemShare",
    "ThresholdPolicy",
    "TraceMeta",
    "ValidationError",
    "WorkloadDistribution",
    "aggregate_energy",
    "assignment_cost",
    "brute_force_assignment",
    "build_profile",
    "default_threshold_grid",
    "eval_energy_per_token",
    "eval_runtime",
    "ingest_counts",
    "integrate_gpu_sum",
    "integrate_per_core",
    "integrate_rapl",
    "integrate_weighted_cpu",
    "make_crossover_profiles",
    "optimal_assignment",
    "pareto_sweep",
    "query_cost",
    "query_energy_runtime",
    "query_mode_cost",
    "read_benchmark_csv",
    "read_histogram_json",
    "read_profile_json",
    "read_queries_csv",
    "read_trace_csv",
    "read_trace_meta",
    "reduce_trace",
    "scalarize",
    "single_system_outcome",
    "sweep_threshold",
    "synth_workload",
    "weights_from_baseline",
    "write_histogram_json",
    "write_profile_json",
    "write_queries_csv",
    "write_trace_csv",
]
