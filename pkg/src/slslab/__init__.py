"""Runtime-analysis laboratory for stochastic local search on OneMax/Cliff."""

from .benchmarks import (
    CLIFF,
    ONEMAX,
    ContractViolation,
    ProblemInstance,
    SearchPoint,
    cliff,
    distance,
    evaluate,
    is_global_optimum,
    onemax,
)
from .oracle import (
    HittingTimes,
    LevelChain,
    UnreachableOptimumError,
    build_level_chain,
    equilibrium_point,
    expected_upgrade_times,
    hitting_probability_before,
    solve_first_passage_linear,
)

__version__ = "0.1.0"

from .bounds import (  # noqa: E402
    BoundReport,
    cliff_ea_bound,
    cliff_ma_bounds,
    e1_bounds,
    e1_expansion,
    onemax_ma_bound,
    optimal_parameters,
    posdrift_bounds,
)
from .harness import (  # noqa: E402
    ExperimentPlan,
    ExperimentResult,
    compare_with_oracle,
    derive_seed,
    export,
    run_experiment,
)
from .heuristics import (  # noqa: E402
    HeuristicConfig,
    RunRecord,
    SdState,
    ma_global_step,
    metropolis_step,
    oea_step,
    run,
    sample_heavy_tailed_rate,
    sd_oea_step,
)
