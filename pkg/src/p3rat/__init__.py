"""Exact-arithmetic and certified high-precision toolkit for the rational
solutions of the generic Painleve-III equation.

The family u_n(x;m) is constructed from an exact polynomial recurrence,
cross-checked against two independent Backlund-chain oracles and (for
half-integer m) against finite Hankel systems with spherical-Hankel
coefficients; poles and zeros are located by a certified arbitrary
precision root finder and mapped through the large-index scaling planes.
"""

from .gaussian import GR, GaussianRational, Params
from .poly import Polynomial, X, poly_gcd
from .ratfunc import RationalFunction
from .umemura import (UmemuraTable, build_u, check_negm_symmetry, eval_u, get_table,
                      laurent_at_infinity, piii_residual, piii_residual_sampled,
                      umemura_extend)
from .backlund import (Potentials, backlund_step, check_integral, check_system,
                       first_order_identity, gromak_step, seed_potentials,
                       u_from_potentials)
from .rootfinder import (PoleZeroMap, RootSet, build_map, find_roots, origin_residue,
                         residues_at_poles)
from .halfint import (HankelSolve, SphericalHankel2, moment, solve_halfint,
                      sph_hankel1, sph_hankel2, u_half_polyratio)
from .asympt import (EquilibriumSet, Quartic, c_of, convergence_probe, equilibria,
                     factored_quartic, outer_limit, plane_transform)
from . import errors

__version__ = "1.0.0"
