"""Exact computations with Weil-Deligne parameters into split classical groups."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .scalars import Monomial, RatFunc, Scalar, Session, current_session, parse_scalar, render_scalar, session, set_session
from .linalg import Matrix, Subspace, char_poly, eigenvalues, intertwiner_space, invariant_subspace, is_semisimple
from .groups import (
    GroupDescriptor,
    centralizer_dim,
    centralizer_space,
    conjugate_semisimple,
    polar_parts,
    so_even_discriminant,
)
from .reps import RepDescriptor, rep_derivation, rep_matrix, trace_in_rep
from .verdicts import ConjugacyVerdict
from .weil import FiniteGroup, WeilDatum
from .parameters import LFactor, SemisimpleParameter, WDParameter, validate_parameter
from .conjugacy import frobenius_stable_power, globally_conjugate, locally_conjugate, z_of_phi
from .monodromy import (
    artin_l_factor,
    build_gl_block_parameter,
    character,
    genericity,
    monodromy_space,
    semisimplify,
    trivial_character,
)
from .twists import direct_sum, one_dimensional_twists, push_forward, tensor, twisted_equivalence_suite
from .cases import acceptability_scan, build_weidner, verify_weidner


def group_contains(G, M):
    return G.contains(M)


def lie_contains(G, X):
    return G.lie_contains(X)
