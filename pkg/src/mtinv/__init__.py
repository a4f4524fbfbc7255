"""Degree-one invariants of groups of multiplicative type.

A group of multiplicative type over a field is described by its character
module: a finitely generated abelian group with an action of a finite
Galois quotient.  Everything here works on that module with exact integer
arithmetic.
"""

from .errors import (
    CompositionMismatch,
    CrossCheckFailure,
    ExactnessFailure,
    InvalidSubgroup,
    InvariantViolation,
    MtinvError,
    NotATorus,
    ParseError,
    RelationViolation,
    SchemaError,
    SizeGuard,
    UnknownConstruction,
    ValidationError,
)
from .groups import FiniteGroup
from .invariants import (
    InvariantReport,
    inv0_torus_mod_n,
    inv0_torus_qz,
    inv1_mod_n,
    inv1_qz,
    pic_torus,
    verify_cor52,
)
from .lattice import FinAbGroup, IntMatrix, Sublattice, cokernel, kernel_basis, n_torsion, snf, torsion_part
from .modules import (
    GammaLattice,
    GammaMap,
    GammaModule,
    cokernel_map,
    coset_lattice,
    h0,
    h1,
    h1_oracle,
    kernel_map,
    mod_n,
    permutation_lattice,
    regular_lattice,
    torsion_module,
)
from .multtype import (
    MultTypeGroup,
    ToriResolution,
    character_sequence_mod_n,
    mu_n,
    named_construction,
    norm_one_torus,
    resolve_by_tori,
    split_torus,
    weil_restriction_gm,
)
from .problem import ProblemFile, Task, parse_problem

__version__ = "0.1.0"

__all__ = [
    "CompositionMismatch",
    "CrossCheckFailure",
    "ExactnessFailure",
    "FinAbGroup",
    "FiniteGroup",
    "GammaLattice",
    "GammaMap",
    "GammaModule",
    "IntMatrix",
    "InvalidSubgroup",
    "InvariantReport",
    "InvariantViolation",
    "MtinvError",
    "MultTypeGroup",
    "NotATorus",
    "ParseError",
    "ProblemFile",
    "RelationViolation",
    "SchemaError",
    "SizeGuard",
    "Sublattice",
    "Task",
    "ToriResolution",
    "UnknownConstruction",
    "ValidationError",
    "character_sequence_mod_n",
    "cokernel",
    "cokernel_map",
    "coset_lattice",
    "h0",
    "h1",
    "h1_oracle",
    "inv0_torus_mod_n",
    "inv0_torus_qz",
    "inv1_mod_n",
    "inv1_qz",
    "kernel_basis",
    "kernel_map",
    "mod_n",
    "mu_n",
    "n_torsion",
    "named_construction",
    "norm_one_torus",
    "parse_problem",
    "permutation_lattice",
    "pic_torus",
    "regular_lattice",
    "resolve_by_tori",
    "snf",
    "split_torus",
    "torsion_module",
    "torsion_part",
    "verify_cor52",
    "weil_restriction_gm",
]
