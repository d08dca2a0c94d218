from .groups import (
    GroupHomomorphism,
    SubquotientComplex,
    SubquotientGroup,
    direct_sum,
    free_subquotient_complex,
    group_structure,
    identity_map,
    induced_map,
)
from .lattice import Lattice, LatticeOperation, image_lattice, kernel_lattice, lattice_ops
from .matrix import IntegerMatrix, MatrixLike, SparseMatrix, as_dense
from .normal_forms import (
    hermite_normal_form,
    invariant_factors,
    is_smith_normal_form,
    kernel_basis,
    smith_normal_form,
    solve_integer,
)
