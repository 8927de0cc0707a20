"""fillings-lab: exact computation around distance-3 reducible/toroidal fillings."""

from .slopes import (
    Slope,
    TwistSequence,
    slope_normalize,
    slope_from_str,
    slope_distance,
    twists_to_fraction,
    fraction_to_twists,
)
from . import manifolds
from . import covers
from . import diagrams

__all__ = [
    "Slope",
    "TwistSequence",
    "slope_normalize",
    "slope_from_str",
    "slope_distance",
    "twists_to_fraction",
    "fraction_to_twists",
    "manifolds",
    "covers",
    "diagrams",
]
