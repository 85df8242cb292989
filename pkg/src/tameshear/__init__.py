"""Explicit shear-flow automorphisms realising tame sets, with exact certificates."""
from .scalar import (EXACT, BackendMismatchError, ExactBackend, FloatBackend, GaussianRational,
                     InexactError, QI)
from .matrix import Mat2, mat_det, mat_mul
from .ring import Poly, Ring, Trig
from .fields import Certificate, VectorField, lie_bracket
from .interpolation import NewtonPoly, newton_build, poly_eval
from .flows import AutomorphismProgram, Generator, ShearFunction, apply_program, flow_basic, sl2_field
from .tame_sl2 import InjectionTable, build_sl2_construction, build_sl2_program, verify_sl2_program
from .danielewski import (DanielewskiPoint, build_dani_construction, build_dani_program,
                          verify_dani_program)
from .spectral import FiberTask, build_fiber_construction, build_fiber_program, verify_fiber_program
from .quotients import verify_dani_quotient_tame, verify_psl2_tame

__version__ = "0.1.0"
