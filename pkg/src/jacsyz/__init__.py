"""Graded Jacobian syzygies of projective hypersurfaces with isolated singularities.

Exact rational computations of AR(f)_m, the Koszul part KR(f)_m and the
essential quotient ER(f)_m, local Milnor/Tjurina data at singular points, and
the splitting of a syzygy basis by testing one component against the singular
subscheme.
"""
from .errors import InconsistencyError, InputError, TransversalityError
from .exactalg import RatMatrix, nullspace_basis, rank, rref
from .localsing import (
    LocalGerm,
    SingularPointRecord,
    analyze_point,
    is_weighted_homogeneous,
    local_quotient,
    milnor_tjurina,
    tjurina_functionals,
)
from .milnor import (
    HilbertTable,
    jacobian_piece_dim,
    milnor_hilbert,
    projective_smoothness,
    smooth_hilbert,
    stabilized_tjurina,
)
from .parser import load_problem, parse_poly
from .polyring import (
    HomogeneousPoly,
    Poly,
    euler_check,
    evaluate,
    linear_change,
    local_germ,
    monomial_basis,
    partial_derivative,
)
from .syzygy import (
    SplitResult,
    SyzygyVector,
    ar_basis,
    audit_corollary_B,
    defect,
    find_transversal_coordinates,
    ideal_piece_dim,
    koszul_dim,
    koszul_generators,
    prop1_dims,
    split_basis,
    transversality_check,
    verify_syzygy,
)

__version__ = "0.1.0"
