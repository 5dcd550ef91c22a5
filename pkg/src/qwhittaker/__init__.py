"""Exact q-Whittaker functions, level-one Demazure characters and global
Weyl module characters for simply-laced groups."""

__version__ = "0.1.0"

from .rootsys import RootSystem, build_root_system, simple_reflection, weyl_orbit
from .exactpoly import QPoly, QRational, TorusPolynomial, prefactor, q_limit, weyl_act_torus
from .charlib import IrreducibleDecomposition, decompose, finite_demazure_op, positivity_check, weyl_character
from .affdem import (
    AffineWeight,
    AffineWord,
    affine_demazure_char,
    affine_simple_reflection,
    global_weyl_char,
    translation_word,
)
from .qtoda import (
    LatticeDifferenceOperator,
    WhittakerTable,
    apply_lattice,
    eigencheck,
    hat_normalize,
    solve_whittaker,
    toda_hamiltonian_A,
)
