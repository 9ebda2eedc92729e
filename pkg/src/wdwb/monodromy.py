"""Monodromy spaces, Artin L-factors, genericity, and GL block parameters."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import CriteriaMismatch, InvalidParameter, UnsupportedRep
from .groups import GroupDescriptor, centralizer_space, lie_solutions
from .linalg import Matrix, Subspace, eigenvalues, invariant_subspace, kernel, restricted_eigenvalues
from .parameters import LFactor, SemisimpleParameter, WDParameter
from .reps import RepDescriptor, rep_derivation, rep_matrix
from .scalars import Monomial, Scalar
from .weil import WeilDatum


def monodromy_space(p: SemisimpleParameter) -> Subspace:
    """{X in the Lie algebra : Ad(f)X = q^-1 X and Ad(phi(iota))X = X}."""
    f = p.frobenius_image
    conds = [(f, f, Scalar.q(-1))]
    conds += [(M, M, Scalar.one()) for M in p.inertia_images]
    return lie_solutions(p.target, conds)


def artin_l_factor(w: WDParameter, r: RepDescriptor) -> LFactor:
    """Eigenvalues of r(f) on the inertia invariants of ker dr(N)."""
    if r.kind == "so_even_half":
        raise UnsupportedRep("half-characters have no matrix realisation for L-factors")
    G = w.target
    r.check(G)
    Rf = rep_matrix(G, r, w.phi.frobenius_image)
    RN = rep_derivation(G, r, w.N)
    V = kernel(RN)
    rin = [rep_matrix(G, r, M) for M in w.phi.inertia_images]
    if rin:
        V = invariant_subspace(rin, V)
    return LFactor(tuple(restricted_eigenvalues(Rf, V)))


class Genericity(NamedTuple):
    generic: bool
    via_l: bool
    via_orbit: bool


def genericity(w: WDParameter) -> Genericity:
    """Adjoint-L-factor criterion and open-orbit criterion, asserted to agree."""
    G = w.target
    via_l = not artin_l_factor(w, RepDescriptor.adjoint()).has_pole_at_one()
    images = w.phi.generator_images
    cent = centralizer_space(G, images)
    stab = centralizer_space(G, images, [w.N])
    via_orbit = cent.dim - stab.dim == monodromy_space(w.phi).dim
    if via_l != via_orbit:
        raise CriteriaMismatch(
            f"adjoint L-factor says generic={via_l} but orbit count says generic={via_orbit}"
        )
    return Genericity(via_l, via_l, via_orbit)


# ---------------------------------------------------------------------------
# characters and blocks

def character(datum: WeilDatum, inertia_values, frobenius_value) -> SemisimpleParameter:
    """A 1-dimensional parameter into GL_1."""
    vals = [Matrix.diag([Scalar.coerce(v)]) for v in inertia_values]
    return SemisimpleParameter(GroupDescriptor("GL", 1), datum, tuple(vals), Matrix.diag([Scalar.coerce(frobenius_value)]))


def trivial_character(datum: WeilDatum | None = None) -> SemisimpleParameter:
    datum = datum or WeilDatum.trivial()
    return character(datum, [1] * len(datum.inertia.generators), 1)


def unramified_character(datum: WeilDatum | None, value) -> SemisimpleParameter:
    datum = datum or WeilDatum.trivial()
    return character(datum, [1] * len(datum.inertia.generators), value)


def _block_exponents(r: int):
    return [Fraction(r - 1, 2) - j for j in range(r)]


def build_gl_block_parameter(blocks) -> WDParameter:
    """Direct sum of chi_i (x) sp(r_i) with N the down-shift inside each block."""
    blocks = [(chi, int(r)) for chi, r in blocks]
    if not blocks:
        raise InvalidParameter("need at least one block")
    datum = blocks[0][0].datum
    for chi, r in blocks:
        if chi.target != GroupDescriptor("GL", 1):
            raise InvalidParameter("block characters must be GL_1-valued")
        if chi.datum != datum:
            raise InvalidParameter("block characters must share one Weil datum")
        if r < 1:
            raise InvalidParameter("block sizes must be positive")
    n = sum(r for _, r in blocks)
    f_diag, inertia_diag = [], [[] for _ in datum.inertia.generators]
    N = [[Scalar.zero()] * n for _ in range(n)]
    pos = 0
    for chi, r in blocks:
        c = chi.frobenius_image[0, 0]
        for j, e in enumerate(_block_exponents(r)):
            f_diag.append(c * Scalar.q(e))
            for t, M in enumerate(chi.inertia_images):
                inertia_diag[t].append(M[0, 0])
            if j + 1 < r:
                N[pos + j + 1][pos + j] = Scalar.one()
        pos += r
    phi = SemisimpleParameter(
        GroupDescriptor("GL", n), datum, tuple(Matrix.diag(d) for d in inertia_diag), Matrix.diag(f_diag)
    )
    return WDParameter(phi, Matrix.from_rows(N), blocks=tuple(blocks))


def predicted_block_eigenvalues(blocks) -> list[Monomial]:
    out = []
    for chi, r in blocks:
        c = chi.frobenius_image[0, 0].as_monomial()
        for e in _block_exponents(int(r)):
            out.append(c * Monomial(0, e, c.session))
    return sorted(out)


def semisimplify(w: WDParameter) -> SemisimpleParameter:
    """Forget N; for block-built input, check the Frobenius spectrum against the block recipe."""
    if w.target.family != "GL":
        raise InvalidParameter("semisimplification is provided for GL targets")
    if w.blocks is not None:
        got = eigenvalues(w.phi.frobenius_image)
        if got != predicted_block_eigenvalues(w.blocks):
            raise AssertionError("Frobenius spectrum differs from the block prediction")
    return w.phi
