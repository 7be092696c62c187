"""Essential points and teaching sets of k-threshold functions on integer grids."""

from .classes import ClassSpec, EnumeratedClass, enumerate_class, is_polytopal, is_threshold, minimal_teaching_sets
from .core import (
    BudgetExceeded,
    DegenerateError,
    FormatError,
    GridError,
    GridFunction,
    GridSpec,
    InvariantError,
    KThreshError,
    PreconditionError,
    dump_function,
    flip,
    parse_function,
)
from .teaching import essential_polytopal
from .twothreshold import family_fn, separation_line, theorem9_teaching_set, threshold_essential

__version__ = "0.1.0"
