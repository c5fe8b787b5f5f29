"""Lozenge tilings of triangular-lattice regions: builders, exact counters and ratio checks."""

from .counting import count, count_determinant, count_enumeration, count_symmetric, enumerate_tilings
from .lattice import DOWN, UP, Lozenge, LozengeKind, Region, TriCell, down, up
from .regions import LSpec, SnowflakeSpec, SpecError, build_H, build_L, build_hexagon, build_snowflake, flip_spec
from .theorem import macmahon, ratio_rhs_snowflake, verify

__version__ = "0.1.0"
