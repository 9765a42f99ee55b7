"""Classical probabilistic (PAOA) and quantum (QAOA) variational circuits
for Max-Cut, with an SPSA training loop and a benchmark harness."""

from .errors import GenerationError, ResourceLimitError
from .graph import (
    BarabasiAlbert,
    Complete,
    ErdosRenyi,
    Graph,
    GraphFamily,
    RandomRegular,
    Ring,
    brute_force,
    cut_value,
    cut_values,
    format_bits,
    generate,
    parse_bits,
    read_graph,
    write_graph,
)
from .pcircuit import (
    FullParams,
    MinParams,
    ReducedParams,
    StochasticGate4,
    apply_gate,
    bit_flip_channel,
    compose,
    estimate,
    full_gate,
    min_gate,
    pbit_state,
    reduced_gate,
    sample_circuit,
    sample_shots,
)
from .protocol import (
    AggregateRow,
    BruteForce,
    Method,
    PaoaFull,
    PaoaMin,
    PaoaReduced,
    Qaoa,
    Random,
    RunConfig,
    TrialResult,
    aggregate,
    best_string,
    run_trial,
    run_trials,
)
from .qsim import (
    QaoaParams,
    apply_cost_phase,
    apply_mixer,
    expectation_cut,
    grid_search_p1,
    init_plus,
    run_qaoa,
    sample_measurements,
)
from .spsa import NonFiniteObjectiveError, OptTrace, SpsaConfig, maximize, project
from .stats import SampleStats, ratio_of

__version__ = "0.1.0"
