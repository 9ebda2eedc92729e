"""Seeded generators of group elements and parameters for the test-suite."""

from __future__ import annotations

import random
from fractions import Fraction

from wdwb.groups import GroupDescriptor
from wdwb.linalg import Matrix
from wdwb.parameters import SemisimpleParameter
from wdwb.scalars import Monomial, Scalar
from wdwb.weil import WeilDatum

EXPONENTS = [Fraction(0), Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1)]


def monomial(rng, elliptic_only=False, orders=(1, 2, 4)):
    k = rng.randrange(4) * (4 // rng.choice(orders))  # root index in Z/4
    e = Fraction(0) if elliptic_only else rng.choice(EXPONENTS)
    return Monomial(k % 4, e)


def torus_point(G: GroupDescriptor, values):
    """Diagonal element of G with the given free coordinates (Monomials)."""
    s = [m.to_scalar() for m in values]
    if G.family == "GL":
        return Matrix.diag(s)
    if G.family == "SL":
        last = Scalar.one()
        for x in s:
            last = last * x
        return Matrix.diag(s + [last.inverse()])
    mid = [Scalar.one()] if G.n % 2 else []
    return Matrix.diag(s + mid + [x.inverse() for x in reversed(s)])


def free_rank(G: GroupDescriptor) -> int:
    if G.family == "GL":
        return G.n
    if G.family == "SL":
        return G.n - 1
    return G.n // 2


def random_torus(G, rng, elliptic_only=False):
    return torus_point(G, [monomial(rng, elliptic_only) for _ in range(free_rank(G))])


def _root_elements(G: GroupDescriptor):
    if G.family in ("GL", "SL"):
        n = G.n
        return [Matrix.elementary(n, i, j, 1) for i in range(n) for j in range(n) if i != j]
    return [X for X in G.lie_basis if not X.is_zero() and (X @ X).is_zero()]


def random_group_element(G: GroupDescriptor, rng, length=3):
    """Product of root elements I + tX with X^2 = 0 and small integer t."""
    roots = _root_elements(G)
    n = G.n
    g = Matrix.identity(n)
    for _ in range(length):
        X = rng.choice(roots)
        t = rng.choice([-2, -1, 1, 2])
        g = g @ (Matrix.identity(n) + X.scale(Scalar.rational(t)))
    assert G.contains(g)
    return g


def reflection(n: int) -> Matrix:
    """Swap of e_0 and e_{n-1}: preserves the split symmetric form, determinant -1."""
    perm = list(range(n))
    perm[0], perm[-1] = perm[-1], perm[0]
    return Matrix.permutation(perm)


def conjugate(g, x, g_inv=None):
    g_inv = g.inverse() if g_inv is None else g_inv
    return g @ x @ g_inv


def random_semisimple(G, rng, elliptic_only=False, conj_length=2):
    D = random_torus(G, rng, elliptic_only)
    g = random_group_element(G, rng, conj_length)
    return D, g, conjugate(g, D, G.inverse_of(g) if G.has_form else None)


def cyclic_parameter(G, rng, k=4, conj=True):
    """Torus parameter for inertia Z/k with trivial Frobenius action, optionally conjugated."""
    datum = WeilDatum.cyclic(k)
    u = random_torus(G, rng, elliptic_only=True)
    while not (u ** k == Matrix.identity(G.n)):
        u = random_torus(G, rng, elliptic_only=True)
    f = random_torus(G, rng)
    p = SemisimpleParameter(G, datum, (u,), f)
    if conj:
        g = random_group_element(G, rng, 2)
        p = p.conjugate_by(g, G.inverse_of(g) if G.has_form else None)
    return p


def rng_for(seed):
    return random.Random(seed)
