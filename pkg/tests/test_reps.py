from fractions import Fraction

import pytest

from samplers import random_group_element, random_semisimple, rng_for
from wdwb import GroupDescriptor, Matrix, RepDescriptor, Scalar, rep_derivation, rep_matrix, trace_in_rep
from wdwb.errors import UnsupportedRep

REPS = [RepDescriptor.standard(), RepDescriptor.ext(2), RepDescriptor.ext(3), RepDescriptor.sym(2),
        RepDescriptor.adjoint(), RepDescriptor("det_power", 2)]


def _exp_nilpotent(X):
    n = X.rows
    acc, term = Matrix.identity(n), Matrix.identity(n)
    for k in range(1, n + 1):
        term = (term @ X).scale(Scalar.rational(Fraction(1, k)))
        if term.is_zero():
            break
        acc = acc + term
    return acc


def test_parse_and_json():
    for text in ["standard", "ext(2)", "sym(3)", "adjoint", "so_even_half(-)", "det_power(2)"]:
        r = RepDescriptor.parse(text)
        assert str(r) == text
        assert RepDescriptor.from_json(r.to_json()) == r
    with pytest.raises(UnsupportedRep):
        RepDescriptor.parse("spin")
    with pytest.raises(UnsupportedRep):
        RepDescriptor.ext(5).check(GroupDescriptor.parse("Sp4"))
    with pytest.raises(UnsupportedRep):
        RepDescriptor("so_even_half").check(GroupDescriptor.parse("SO5"))


@pytest.mark.parametrize("name", ["Sp4", "SO5", "SL3", "SO4"])
def test_matrices_traces_and_homomorphism(name):
    G = GroupDescriptor.parse(name)
    rng = rng_for(len(name) * 17)
    for _ in range(2):
        _, _, x = random_semisimple(G, rng)
        y = random_group_element(G, rng, 2)
        for r in REPS:
            if r.kind in ("ext", "sym") and r.k > G.n:
                continue
            rx = rep_matrix(G, r, x)
            assert rx.rows == r.dimension(G)
            assert rx.trace() == trace_in_rep(G, r, x)
            assert rep_matrix(G, r, x @ y) == rx @ rep_matrix(G, r, y)


@pytest.mark.parametrize("name", ["Sp4", "SO5", "GL3"])
def test_derivations(name):
    G = GroupDescriptor.parse(name)
    basis = G.lie_basis
    nilp = [X for X in basis if (X @ X).is_zero()]
    for r in REPS:
        if r.kind in ("ext", "sym") and r.k > G.n:
            continue
        for X, Y in zip(basis, basis[3:]):
            br = X @ Y - Y @ X
            dX, dY = rep_derivation(G, r, X), rep_derivation(G, r, Y)
            assert rep_derivation(G, r, br) == dX @ dY - dY @ dX
        for X in nilp[:3]:
            assert rep_matrix(G, r, Matrix.identity(G.n) + X) == _exp_nilpotent(rep_derivation(G, r, X))
