"""TSP optimization laboratory: solvers, tuning, benchmarking, refinement."""

from .bench import (
    CSV_HEADER,
    AlgorithmSpec,
    ExperimentPlan,
    InstanceSpec,
    RunRecord,
    RunSpec,
    SummaryStats,
    compute_gap,
    expand_plan,
    gap_table,
    json_report,
    load_plan,
    order_statistics,
    parse_plan,
    read_csv,
    run_experiment,
    summarize,
    time_limit_for,
    write_csv,
    write_json_report,
)
from .errors import (
    AttemptOutOfRange,
    BudgetTooSmall,
    CountMismatch,
    DegenerateInput,
    DimensionMismatch,
    EmptyField,
    EmptyInput,
    MissingField,
    MissingPlaceholder,
    NegativeDistance,
    NoCoordinates,
    NonFiniteInput,
    NonSymmetric,
    NoSuchColumn,
    TsplabError,
    UnknownAlgorithm,
    UnsupportedFormat,
    ZeroBaseline,
)
from .instances import (
    Instance,
    build_distance_matrix,
    generate_random_instance,
    geo_distance,
    parse_instance,
    render_instance,
)
from .refine import (
    CORRECTION_SENTENCE,
    DEFAULT_TEMPLATE_BODY,
    PromptTemplate,
    RefinementReport,
    RefinementRequest,
    TemperatureSchedule,
    ValidationOutcome,
    Verdict,
    execution_error,
    invalid_solution,
    load_template,
    next_temperature,
    refinement_loop,
    render_prompt,
    valid,
    validate_candidate_tour,
)
from .seeding import stable_hash
from .solvers import (
    ALGORITHMS,
    AcoParams,
    AlnsParams,
    GaParams,
    OptResult,
    RlParams,
    RunOutcome,
    SaParams,
    SolveBudget,
    SolveResult,
    TabuParams,
    boltzmann_probabilities,
    bound_cache,
    branch_and_bound,
    christofides,
    convex_hull,
    convex_hull_tour,
    get_algorithm,
    greedy_matching,
    lundy_mees_beta,
    lundy_mees_step,
    metropolis_accept,
    minimum_spanning_tree,
    nn_seed_count,
    q_update,
    root_lower_bound,
    run_solver,
    solve_aco,
    solve_alns,
    solve_ga,
    solve_qlearning,
    solve_sa,
    solve_sarsa,
    solve_tabu,
)
from .tours import (
    TourCheck,
    nearest_neighbor_tour,
    reversal_delta,
    tour_length,
    two_opt,
    validate_tour,
)
from .tuning import (
    ParamConfig,
    ParamDef,
    ParamSpace,
    SPACES,
    parameter_space,
    preset,
    race,
    sample_config,
)

__version__ = "0.1.0"
