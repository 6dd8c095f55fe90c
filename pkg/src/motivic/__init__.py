"""Exact E-polynomial calculus for Hilbert schemes of points and generalized Kummer schemes."""
from __future__ import annotations

from .errors import HardFailure, MotivicError, UsageError
from .exactalg import L, LHALF, X, Y, EPoly, MotiveRational, QPoly, YLaurent, YRational, exact_div, mr_chi_y
from .geometry import GeometrySpec, abelian_class, load_geometry, projective_space
from .hilbert import WData, hilb_series, xtilde_series
from .kummer import (
    chi_y_kummer_surface,
    chi_y_kummer_vir,
    euler_kummer,
    kummer_class,
    kummer_vir_class,
    stable_hodge,
)
from .partitions import count_d_partitions, partitions_of, solve_wk
from .powerseries import Series, pleth_exp, pleth_log, power_exp, sym_class, zeta_series
from .torsion import torsion_kummer_chi_y, torsion_kummer_class

__version__ = "0.1.0"
