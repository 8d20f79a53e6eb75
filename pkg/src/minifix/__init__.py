"""minifix: search, align, and repair for MiniImp programming exercises.

Given an incorrect program, a corpus of test-verified correct solutions,
and a test suite, minifix retrieves the syntactically nearest solutions
(control-flow filter plus position-aware characteristic vectors), aligns
the best candidates statement by statement, and searches for the smallest
test-passing subset of the implied fixes, rendered as student feedback.
"""

from ._kernels import BACKEND_NAME, USING_COMPILED
from .pipeline import RepairReport, feedback_generation, repair_program

__version__ = "0.1.0"

__all__ = ["BACKEND_NAME", "USING_COMPILED", "RepairReport",
           "feedback_generation", "repair_program", "__version__"]
