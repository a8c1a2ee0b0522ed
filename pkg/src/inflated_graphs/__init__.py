"""Graph-state measurement scenarios that defeat communication-assisted
classical models, with exact verification of every claim."""

from .graph import (
    Graph,
    InflatedGraph,
    build_graph,
    ball,
    contract,
    distance,
    edge_key,
    graph_from_json,
    graph_to_json,
    inflate,
    load_graph,
    to_dot,
)
from .pauli import (
    PauliString,
    expectation,
    generator_element,
    multiply,
    parse,
    pauli_to_subset,
    subset_to_pauli,
)
from .paradox import (
    MeasurementPair,
    MeasurementSet,
    ParadoxCertificate,
    load_measurement_set,
    save_measurement_set,
    set_from_json,
    set_to_json,
    verify_paradox,
)
from .inflate import (
    BuildResult,
    DecoySpec,
    build_inflated_set,
    decoy_pair,
    find_base_set,
    inflated_generator,
    inflated_measurement,
    inflated_stabilizer,
    shell_stabilizer,
)
from .lhv import (
    BarrettModel,
    BellReport,
    BinaryGame,
    FlipRule,
    StrategySystem,
    barrett_expectation,
    bell_report,
    binary_game_bound,
    build_system,
    chsh_game,
    feasible,
    game_bound,
    load_flip_rules,
    min_violations,
    search_flip_rules,
    verify_small_graphs,
)
from .statevector import (
    Observable,
    StateVector,
    chsh_operator,
    expect,
    graph_state,
    pauli_expectation,
)

# Importing the .inflate submodule above rebinds the package attribute
# "inflate" to the module object; restore the construction function.
from .graph import inflate  # noqa: E402,F811

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "InflatedGraph",
    "build_graph",
    "ball",
    "contract",
    "distance",
    "edge_key",
    "graph_from_json",
    "graph_to_json",
    "inflate",
    "load_graph",
    "to_dot",
    "PauliString",
    "expectation",
    "generator_element",
    "multiply",
    "parse",
    "pauli_to_subset",
    "subset_to_pauli",
    "MeasurementPair",
    "MeasurementSet",
    "ParadoxCertificate",
    "load_measurement_set",
    "save_measurement_set",
    "set_from_json",
    "set_to_json",
    "verify_paradox",
    "BuildResult",
    "DecoySpec",
    "build_inflated_set",
    "decoy_pair",
    "find_base_set",
    "inflated_generator",
    "inflated_measurement",
    "inflated_stabilizer",
    "shell_stabilizer",
    "BarrettModel",
    "BellReport",
    "BinaryGame",
    "FlipRule",
    "StrategySystem",
    "barrett_expectation",
    "bell_report",
    "binary_game_bound",
    "build_system",
    "chsh_game",
    "feasible",
    "game_bound",
    "load_flip_rules",
    "min_violations",
    "search_flip_rules",
    "verify_small_graphs",
    "Observable",
    "StateVector",
    "chsh_operator",
    "expect",
    "graph_state",
    "pauli_expectation",
]
