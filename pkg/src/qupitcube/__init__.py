"""Exact toolkit for cubic-lattice qupit stabilizer codes.

Builds inversion-symmetric cube-generator codes over a prime field,
decides the three algebraic no-string conditions, measures nontrivial
string-segment lengths with an exact linear-algebra solver, classifies
parameter tuples up to the lattice/Clifford equivalence group, and
constructs planar logical operators on tori.
"""

from .codes import (
    CodeParams,
    PauliConfig,
    commutation_exponent,
    build_generator,
    generator_config,
    d3_code,
    d5_code,
    inversion_image,
    load_params,
    symplectic_product,
    verify_translation_commutation,
)
from .conditions import (
    TheoremReport,
    base_matrix,
    check_deformability,
    check_no_minimal_string,
    check_pairing_squares,
    rel_transition,
    theorem1_report,
)
from .oracle import (
    SegmentGeometry,
    SegmentReport,
    build_segment_constraints,
    canonical_reduction,
    flatten_segment,
    max_nontrivial_length,
    solve_segment,
    width1_criterion,
)
from .classify import (
    classify_orbits,
    enumerate_deformable,
    group_generators,
    orbit_canonical,
    scan_theorem1,
)
from .logical import (
    TorusCode,
    build_planar_operator,
    encoded_qudit_count,
    is_logical,
    logical_commutation_table,
    planar_census,
    product_of_all_generators,
)
from .algebra import (
    OperatorSum,
    PhasedPauli,
    build_projector,
    inversion_conjugate,
    pauli_mul,
    pauli_power,
)

__version__ = "0.1.0"
