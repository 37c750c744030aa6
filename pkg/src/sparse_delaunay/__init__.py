"""Sparse Delaunay filtrations of planar point sets."""

from .filtration import FiltrationEntry, FiltrationStore, FormatError
from .greedy import DuplicatePointError, GreedyOrder, greedy_permutation
from .kernel import SqScale, WeightClass, orient2, orthoball, power_incircle, flip_scale
from .kinetic import BuildResult, KineticState, MonotonicityError, build, build_filtration
from .weights import WeightSchedule, build_schedule, freezing_time

__all__ = [
    "BuildResult", "DuplicatePointError", "FiltrationEntry", "FiltrationStore", "FormatError",
    "GreedyOrder", "KineticState", "MonotonicityError", "SqScale", "WeightClass",
    "WeightSchedule", "build", "build_filtration", "build_schedule", "flip_scale",
    "freezing_time", "greedy_permutation", "orient2", "orthoball", "power_incircle",
]
