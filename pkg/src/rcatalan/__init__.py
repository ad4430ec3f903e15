"""Exact Coxeter-Catalan, Kreweras and (q,t)-symmetric function computations."""
from ._config import BudgetError, PoleError
from .coinvariants import (
    BlockDatum,
    QuasiParabolicError,
    VerificationReport,
    bigraded_block_character,
    block_dimension_sum,
    dim_DR_parabolic,
    dim_qt_DR_typeA,
    parabolic_subgroup,
    special_subspace_dims,
    verify_main_identity,
    verify_shuffle,
    verify_signtwist_shift,
    verify_subregular_staircase,
    verify_typeA_identity,
)
from .finite_torus import (
    OrbitCensus,
    TorusPoint,
    act,
    burnside_orbit_count,
    enumerate_orbits,
    fixed_point_count,
    isotypic_multiplicity,
    regular_orbit_count,
)
from .macdonald import macdonald_modified, nabla, nabla_eigenvalue
from .parking import (
    DyckPath,
    ParkingFunction,
    RationalDyckPath,
    RunStructure,
    area,
    dinv,
    enumerate_dyck,
    enumerate_parking_functions,
    kreweras_typeA,
    rational_catalan,
    shuffle_sum,
)
from .partitions import Partition, partitions
from .qt import QTCoeff
from .root_systems import (
    CartanType,
    ParabolicType,
    RootSystemData,
    WeylElement,
    build_root_system,
    cartan_matrix,
    classify_reflection_subgroup,
    coxeter_catalan,
    weyl_group_elements,
)
from .snf import elementary_divisors
from .symfunc import SymFunc, convert, evaluate_qt, hall_inner, omega, parse_symfunc, plethystic_scale, to_string

__version__ = "0.1.0"
