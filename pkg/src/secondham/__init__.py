"""Second Hamiltonian cycles in cubic graphs: exact search, lollipop walk, long-cycle approximation."""
from .approx import LongCycle, find_long_cycle
from .graph import GeneralInstance, InstanceError, SmithInstance, parse_instance, serialize_instance
from .kernels import BACKEND
from .lollipop import run_lollipop
from .reductions import find_x_certificate, make_triangle_free
from .solver import SolveResult, solve_second_cycle

__version__ = "0.1.0"

__all__ = ["BACKEND", "GeneralInstance", "InstanceError", "LongCycle", "SmithInstance", "SolveResult",
           "find_long_cycle", "find_x_certificate", "make_triangle_free", "parse_instance",
           "run_lollipop", "serialize_instance", "solve_second_cycle", "__version__"]
