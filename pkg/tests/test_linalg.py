import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wdwb import Matrix, Monomial, Scalar, Subspace, build_weidner, char_poly, eigenvalues, parse_scalar
from wdwb import intertwiner_space, invariant_subspace, is_semisimple
from wdwb.errors import NotMonomialSplit, ShapeError
from wdwb.linalg import monomial_roots, poly_from_roots, rank


def S(t):
    return parse_scalar(t)


def M(rows):
    return Matrix.from_rows([[S(str(x)) for x in r] for r in rows])


def diag(*xs):
    return Matrix.diag([S(str(x)) for x in xs])


def test_char_poly_examples():
    assert char_poly(diag(1, -1)) == [S("-1"), S("0"), S("1")]
    assert char_poly(diag("z4^1", "z4^3")) == [S("1"), S("0"), S("1")]


def test_char_poly_weidner_frobenius():
    p1, _ = build_weidner(3)
    f = p1.frobenius_image
    i = S("z4^1")
    expected = poly_from_roots([i, i, S("1"), S("1"), -i, -i])
    assert char_poly(f) == expected


def test_char_poly_matches_berkowitz_on_dense():
    A = M([[1, 2, 0], ["q", 0, 1], [1, "z4^1", 3]])
    p = char_poly(A)
    # Cayley-Hamilton
    acc = Matrix.zeros(3)
    power = Matrix.identity(3)
    for c in p:
        acc = acc + power.scale(c)
        power = power @ A
    assert acc.is_zero()


def test_char_poly_shape_error():
    with pytest.raises(ShapeError):
        char_poly(Matrix.zeros(2, 3))


def test_monomial_roots_examples():
    assert monomial_roots([S("1"), S("0"), S("1")]) == sorted([Monomial(1, 0), Monomial(3, 0)])
    assert monomial_roots([S("1"), -S("q + q^(-1)"), S("1")]) == [Monomial(0, -1), Monomial(0, 1)]
    with pytest.raises(NotMonomialSplit):
        monomial_roots([S("2"), S("-2"), S("1")])


def test_is_semisimple_examples():
    assert is_semisimple(diag(1, 1))
    assert not is_semisimple(M([[1, 1], [0, 1]]))
    p1, _ = build_weidner(3)
    assert is_semisimple(p1.frobenius_image)


def test_intertwiner_examples():
    I2 = Matrix.identity(2)
    assert intertwiner_space([(I2, I2)]).dim == 4
    D = diag(1, -1)
    V = intertwiner_space([(D, D)])
    assert V.dim == 2
    assert all(X.is_diagonal() for X in V.matrices(2))


def test_invariant_subspace_examples():
    assert invariant_subspace([Matrix.identity(3)]) == Subspace.ambient(3)
    V = invariant_subspace([diag(1, "z4^1")])
    assert V.dim == 1 and V.contains([S("1"), S("0")])
    p1, _ = build_weidner(3)
    assert invariant_subspace([p1.inertia_images[0]]).dim == 2


# ---------------------------------------------------------------------------
# properties

def _random_monomial(rng):
    return Monomial(rng.randrange(4), Fraction(rng.randrange(-4, 5), 2))


def test_roots_of_diagonal_monomial_matrices():
    rng = random.Random(2024)
    for _ in range(1000):
        n = rng.randrange(1, 6)
        ms = [_random_monomial(rng) for _ in range(n)]
        D = Matrix.diag([m.to_scalar() for m in ms])
        # the dense Berkowitz route, not the triangular shortcut
        assert monomial_roots(list(reversed(_dense_char_poly(D)))) == sorted(ms)


def _dense_char_poly(D):
    from wdwb.linalg import _berkowitz

    return _berkowitz(D.tolist(), Scalar.zero(), Scalar.one())


def _random_invertible(rng, n):
    g = Matrix.identity(n)
    for _ in range(3):
        i, j = rng.sample(range(n), 2)
        g = g @ (Matrix.identity(n) + Matrix.elementary(n, i, j, rng.choice([-1, 1, 2])))
    return g


def test_intertwiners_of_equal_pairs_contain_identity():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(1, 4)
        As = [Matrix.diag([_random_monomial(rng).to_scalar() for _ in range(n)]) for _ in range(2)]
        V = intertwiner_space([(A, A) for A in As])
        assert V.contains(Matrix.identity(n).flatten())


def test_intertwiner_dimension_conjugation_invariant():
    rng = random.Random(6)
    for _ in range(20):
        n = 3
        As = [Matrix.diag([Monomial(rng.randrange(2) * 2, 0).to_scalar() for _ in range(n)]) for _ in range(2)]
        Bs = [Matrix.diag([Monomial(rng.randrange(2) * 2, 0).to_scalar() for _ in range(n)]) for _ in range(2)]
        d0 = intertwiner_space(list(zip(As, Bs))).dim
        g, h = _random_invertible(rng, n), _random_invertible(rng, n)
        gi, hi = g.inverse(), h.inverse()
        pairs = [(g @ A @ gi, h @ B @ hi) for A, B in zip(As, Bs)]
        assert intertwiner_space(pairs).dim == d0


def test_semisimple_agrees_with_eigenspace_count():
    rng = random.Random(7)
    from wdwb.linalg import eigenspaces

    for _ in range(40):
        n = 3
        vals = [Monomial(rng.randrange(2) * 2, rng.choice([0, 1])).to_scalar() for _ in range(n)]
        T = Matrix.diag(vals)
        if rng.random() < 0.5:
            T = T + Matrix.elementary(n, 0, 1, 1)
        g = _random_invertible(rng, n)
        X = g @ T @ g.inverse()
        total = sum(V.dim for _, V in eigenspaces(X))
        assert is_semisimple(X) == (total == n)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_rank_and_inverse(xs):
    A = Matrix.from_rows([[Scalar.rational(xs[0]), Scalar.rational(xs[1])],
                          [Scalar.rational(xs[2]), Scalar.rational(xs[3])]])
    if A.det():
        assert rank(A) == 2
        assert A @ A.inverse() == Matrix.identity(2)
    else:
        assert rank(A) < 2


def test_subspace_canonical():
    a = Subspace(2, [[S("1"), S("q")], [S("2"), S("2*q")]])
    b = Subspace(2, [[S("q^(-1)"), S("1")]])
    assert a == b and a.dim == 1
    assert (a + Subspace(2, [[S("0"), S("1")]])).dim == 2
    assert a.intersection(Subspace(2, [[S("1"), S("0")]])).dim == 0
