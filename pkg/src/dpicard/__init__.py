"""Exact computations with derived equivalences of selfinjective Nakayama algebras."""
from .algebra import BasedAlgebra, HomElement
from .algebra_r import RAlgebra, omega_equivalence, r_algebra, tau_functor, twist_apply, twist_functor
from .complexes import (
    ChainMap, ProjComplex, cone, direct_sum, find_iso, hom_space, homotopy_solve, is_homotopy_iso,
    minimize, shift,
)
from .equivalences import (
    EquivalenceData, FunctorLibrary, apply_word, f_theta_morphism, f_theta_object, h_equivalence,
    parse_word, q_equivalence,
)
from .groups import (
    Presentation, ScalingSequence, SemidirectElement, free_reduce, group_action, is_trivial_word,
    phi_N, psi_embed, scaling_op, semidirect_mul,
)
from .linalg import GF, QQ, Matrix, kernel_basis, rref, solve
from .nakayama import (
    Automorphism, NakayamaAlgebra, NakayamaSpec, build_automorphism, hom_basis, is_inner,
    normalize_automorphism,
)
from .smash import SmashAlgebra, ct_tilting_functor, smash_algebra, smash_complex, s_map, theta_smash_psi

__version__ = "0.1.0"
