"""Finite Γ-groups, their torsors and counting functions, and torsor counts over Q."""

from .errors import BoundExceeded, TorsorLabError, ValidationError
from .group_core import FiniteGroup, GroupHom, Subgroup, build_group
from .gamma_scheme import GammaGroup, constant, g_star, make_gamma_group, twist
from .cohomology import Cocycle, enumerate_cocycles, h1_classes, is_connected, torsor_set
from .heights import counting_function, invariants_of, malle_index_function, regular_index_function
from .structure import is_hypersolvable, is_semicommutative, lower_bound_exponent
from .arithmetic_count import count_kummer, count_quadratic, fit_growth

__version__ = "0.1.0"
