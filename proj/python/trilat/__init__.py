"""Global minimizers of the three-sensor trilateration objective."""

from ._trilat import (
    CandidatePoint,
    OracleResult,
    Point2,
    SensorConfig,
    SolutionSet,
    TrilatError,
    brute_force_minimize,
    d3_star,
    objective,
    objective_table,
    region_labels,
    solve,
    solve_equilateral,
    solve_general,
    solve_isosceles,
    thresholds,
)

__all__ = [
    "CandidatePoint",
    "OracleResult",
    "Point2",
    "SensorConfig",
    "SolutionSet",
    "TrilatError",
    "brute_force_minimize",
    "d3_star",
    "objective",
    "objective_table",
    "region_labels",
    "solve",
    "solve_equilateral",
    "solve_general",
    "solve_isosceles",
    "thresholds",
]
