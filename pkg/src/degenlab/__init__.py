"""Degenerations of Cohen-Macaulay modules over hypersurfaces, computed with
matrix representations, Gröbner bases and explicit exact sequences."""
from .poly import (
    QQ, QQI, GF, CoeffField, PolyRing, Poly, QuotientRing, parse_poly, render,
    divide, normal_form, substitute, PolySyntaxError, RingMismatchError,
)
from .matrix import Matrix
from .ideal import (
    Ideal, Submodule, ResourceLimitError, buchberger, ideal_membership,
    ideal_contains, ideal_equal, minors_ideal, fitting_ideal,
    saturation_bounded_contains, module_gb, submodule_membership,
    submodule_contains, submodule_equal, kernel_of_map, image_of_map, syzygies,
)
from .matfac import (
    MatrixRepresentation, MatrixFactorization, BlockTag, validate_mr, syzygy_mr,
    sharp, double_sharp, knoerrer_image, lemma41_blocks, cokernel_presentation,
    smith_normal_form, recognize_dim1, recognize_dim2,
)
from .degeneration import (
    DegenerationWitness, verify_witness, screen_necessary, fitting_screen,
    ZwaraSequence, zwara_construct, verify_exactness, nilpotency_check,
    extension_degeneration, search_extension_maps, corollary44_pair,
    corollary45_family, quotient_transfer, lift_witness_doublesharp,
    PreconditionError,
)
from .catalog import (
    CMClass, catalog_matrix, oracle_degenerates, thm31_witness, build_poset,
    iterated_knoerrer_module, prop56_image, dim1_ring, dim2_ring,
)

__version__ = "0.1.0"
