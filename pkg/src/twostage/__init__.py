"""Two-stage filtration tests and shrinkage estimators for composite null
hypotheses, with a reproducible Monte-Carlo harness for multiple-testing
studies."""

from .asymptotics import (
    DEFAULT_N_GRID,
    MSE_RATIO_PRESETS,
    EfficiencyClass,
    LRegion,
    MseRatioPoint,
    MseRatioPreset,
    ParamPoint,
    ParamSequence,
    PowerSequence,
    RegimeClassification,
    classify_product_regime,
    compute_K,
    eval_sequence,
    extrapolate_limit,
    irregularity_probe,
    k_upper_bound,
    ks_critical_value,
    mse_product_closed,
    mse_ratio_experiment,
    rate_probe,
)
from .dist import (
    RandomStream,
    chisq2_cdf,
    chisq2_quantile,
    sample_normal,
    std_normal_cdf,
    std_normal_quantile,
)
from .estimators import (
    EstimatePair,
    coord_pvalue,
    hodges,
    joint_pvalue,
    min_abs_stat,
    norm2_stat,
    product_stat,
    shrink,
    shrink_general,
    sobel_stat,
)
from .exceptions import (
    ConfigError,
    DataFormatError,
    DegenerateInputError,
    InconsistentRegimeError,
    SingularDesignError,
    TwoStageError,
)
from .ingest import ObservationTable, ols_mediation_fit, read_observations
from .procedure import (
    Adjustment,
    BonferroniOverUnfiltered,
    ChiSquarePValue,
    FiltrationAware,
    FiltrationRule,
    MinPValue,
    NoFilter,
    ProductThreshold,
    TwoStageOutcome,
    evaluate_filter,
    filtration_prob_at_theta0,
    fwer_bound_from_survivors,
    run_two_stage,
)
from .simulate import (
    BUILTIN_SCENARIOS,
    Assignment,
    ConditionalRejectionStats,
    Method,
    MethodResult,
    MixtureRow,
    NormalMeanPrior,
    ScenarioMixture,
    SimulationReport,
    Truth,
    builtin_scenario,
    conditional_rejection_stats,
    run_experiment,
    run_replication,
    standard_methods,
)

__version__ = "0.1.0"
