"""Partitions, parabolic data, Hecke maps and problem instances."""

from src.weights.hecke import hecke, hecke_inverse, hecke_size, phi
from src.weights.instance import ProblemInstance, divisible, level_ell, level_ell_raw
from src.weights.parabolic import (
    ParabolicPoint,
    flag_sum,
    hecke_point,
    hecke_point_partial,
    nodal_point_data,
    omega_to_partition,
    parse_points,
    partition_to_omega,
    telescoping_holds,
)
from src.weights.partitions import (
    Partition,
    WeightSet,
    dual,
    enumerate_weights,
    equivalent,
    normalize,
    stats,
)

__all__ = [
    "Partition",
    "ParabolicPoint",
    "ProblemInstance",
    "WeightSet",
    "divisible",
    "dual",
    "enumerate_weights",
    "equivalent",
    "flag_sum",
    "hecke",
    "hecke_inverse",
    "hecke_point",
    "hecke_point_partial",
    "hecke_size",
    "level_ell",
    "level_ell_raw",
    "nodal_point_data",
    "normalize",
    "omega_to_partition",
    "parse_points",
    "partition_to_omega",
    "phi",
    "stats",
    "telescoping_holds",
]
