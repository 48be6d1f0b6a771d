"""Two-sided ride-sourcing market simulator."""

from ._core import (
    Error,
    NetworkGraph,
    ParseError,
    ValidationError,
    compute_fare,
    driver_experience_delta,
    inverse_sigmoid,
    ledger_columns,
    load_graph,
    make_grid,
    marketing_delta,
    participation_probability,
    run_scenario,
    run_to_directory,
    sigmoid_utility,
    stage_table,
    traveler_experience_delta,
    update_component,
    wom_delta,
)

__all__ = [
    "Error",
    "NetworkGraph",
    "ParseError",
    "ValidationError",
    "compute_fare",
    "driver_experience_delta",
    "inverse_sigmoid",
    "ledger_columns",
    "load_graph",
    "make_grid",
    "marketing_delta",
    "participation_probability",
    "run_scenario",
    "run_to_directory",
    "sigmoid_utility",
    "stage_table",
    "traveler_experience_delta",
    "update_component",
    "wom_delta",
]
