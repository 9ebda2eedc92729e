import pytest

from samplers import cyclic_parameter, random_group_element, rng_for
from wdwb import (
    GroupDescriptor, LFactor, Matrix, Monomial, RepDescriptor, SemisimpleParameter, WDParameter, WeilDatum,
    artin_l_factor, build_gl_block_parameter, build_weidner, character, direct_sum, frobenius_stable_power,
    genericity, globally_conjugate, locally_conjugate, monodromy_space, one_dimensional_twists, parse_scalar,
    push_forward, semisimplify, trivial_character, twisted_equivalence_suite, validate_parameter, z_of_phi,
)
from wdwb.errors import FrobeniusMismatch, InvalidParameter
from wdwb.monodromy import unramified_character
from wdwb.serialization import parameter_from_json, parameter_to_json
from wdwb.weil import FiniteGroup


def S(t):
    return parse_scalar(t)


def diag(*xs):
    return Matrix.diag([S(str(x)) for x in xs])


def gl_param(*frob, datum=None, inertia=()):
    datum = datum or WeilDatum.trivial()
    n = len(frob)
    return SemisimpleParameter(GroupDescriptor("GL", n), datum, tuple(inertia), diag(*frob))


def nu(datum=None):
    return unramified_character(datum, S("q^(-1)"))


def sp(r, chi=None):
    return build_gl_block_parameter([(chi or trivial_character(), r)])


# ---------------------------------------------------------------------------
# Weil data

def test_weil_datum_semidirect_product():
    D = WeilDatum.cyclic(5, power=2)
    assert D.alpha((1,)) == (2,)
    x, y = ((1,), 1), ((3,), 2)
    # (a, k)(b, l) = (a + alpha^k(b), k + l), written additively
    assert D.mul(x, y) == ((2,), 3)
    with pytest.raises(InvalidParameter):
        WeilDatum.cyclic(4, power=2)  # not bijective
    with pytest.raises(InvalidParameter):
        WeilDatum.cyclic(5, frobenius_order=3, power=2)


def test_weil_datum_json_roundtrip():
    for D in [WeilDatum.trivial(), WeilDatum.cyclic(4, frobenius_order=4), WeilDatum.cyclic(5, power=2)]:
        assert WeilDatum.from_json(D.to_json()) == D


def test_table_model_group():
    # S_3 by multiplication table on permutations
    from itertools import permutations

    perms = list(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(a[b[i]] for i in range(3))] for b in perms] for a in perms]
    G = FiniteGroup(table=table)
    assert G.order == 6 and not G.abelian_model
    assert max(G.element_order(a) for a in G.elements) == 3


# ---------------------------------------------------------------------------
# validation

def test_validate_examples():
    p1, p2 = build_weidner(3)
    for p in (p1, p2, WDParameter(p1, Matrix.zeros(6))):
        rep = validate_parameter(p)
        assert rep["valid"], rep
    bad = WDParameter(gl_param("q^(1/2)", "q^(-1/2)"), Matrix.elementary(2, 0, 1, 1))
    rep = validate_parameter(bad)
    assert not rep["valid"] and rep["first_failure"].startswith("monodromy_relation")
    triv = WDParameter(gl_param(1, 1), Matrix.zeros(2))
    assert validate_parameter(triv)["valid"]


def test_validate_catches_relation_and_membership():
    D = WeilDatum.cyclic(4)
    p = SemisimpleParameter(GroupDescriptor.parse("SO4"), D, (diag("z4^1", 1, 1, "z4^3"),), diag("z4^1", 1, 1, "z4^1"))
    rep = validate_parameter(p)
    assert not rep["valid"] and rep["first_failure"].startswith("membership")
    p = SemisimpleParameter(GroupDescriptor.parse("GL2"), WeilDatum.cyclic(3), (diag("z4^1", 1),), diag(1, 1))
    assert validate_parameter(p)["first_failure"].startswith("inertia_relations")


# ---------------------------------------------------------------------------
# polar parts and stabilisation

def test_z_of_phi_examples():
    z, t, _ = z_of_phi(gl_param("z4^1*q", "z4^3*q^(-1)"))
    assert z == diag("q", "q^(-1)")
    assert t.frobenius_image == diag("z4^1", "z4^3")
    p1, _ = build_weidner(3)
    assert z_of_phi(p1)[0] == Matrix.identity(6)
    z, t, levi = z_of_phi(gl_param("q", 1, "q^(-1)"))
    assert z == diag("q", 1, "q^(-1)") and t.frobenius_image == Matrix.identity(3) and levi == 3


def test_polar_naturality():
    rng = rng_for(31)
    for name in ["Sp4", "SO5"]:
        G = GroupDescriptor.parse(name)
        for _ in range(3):
            p = cyclic_parameter(G, rng, conj=False)
            g = random_group_element(G, rng, 2)
            gi = G.inverse_of(g)
            assert z_of_phi(p.conjugate_by(g, gi))[0] == g @ z_of_phi(p)[0] @ gi


def test_frobenius_stable_power_examples():
    p1, p2 = build_weidner(3)
    assert frobenius_stable_power(p1, p2) == 4
    t = gl_param(1, 1)
    assert frobenius_stable_power(t, t) == 1
    h = gl_param("q", "q^(-1)")
    assert frobenius_stable_power(h, h) == 1
    with pytest.raises(FrobeniusMismatch):
        frobenius_stable_power(gl_param(1, 1), h)


# ---------------------------------------------------------------------------
# conjugacy

def test_local_examples():
    p1, p2 = build_weidner(3)
    v = locally_conjugate(p1, p2)
    assert v.status == "Conjugate" and v.details["checked"] == 16
    assert locally_conjugate(p1, p1).status == "Conjugate"
    v = locally_conjugate(gl_param(1, "q^(-1)"), gl_param("q^(-1)", "q^(-1)"))
    assert v.status == "NotConjugate"


def test_global_examples():
    p1, p2 = build_weidner(3)
    v = globally_conjugate(p1, p2)
    assert v.status == "NotConjugate" and v.certificate
    t = gl_param(1, 1)
    v = globally_conjugate(t, t)
    assert v.status == "Conjugate" and v.witness == Matrix.identity(2)
    rng = rng_for(4)
    G = GroupDescriptor.parse("Sp4")
    p = cyclic_parameter(G, rng)
    g = random_group_element(G, rng, 3)
    q = p.conjugate_by(g, G.inverse_of(g))
    v = globally_conjugate(p, q)
    assert v.status == "Conjugate" and G.contains(v.witness)
    assert p.conjugate_by(v.witness).same_images(q)


# ---------------------------------------------------------------------------
# monodromy, genericity, L-factors

def test_monodromy_examples():
    p1, _ = build_weidner(3)
    assert monodromy_space(p1).dim == 0
    V = monodromy_space(gl_param("q^(1/2)", "q^(-1/2)"))
    assert V.dim == 1 and V.matrices(2)[0] == Matrix.elementary(2, 1, 0, 1)
    assert monodromy_space(gl_param(1)).dim == 0


def test_genericity_examples():
    g = genericity(WDParameter(direct_sum(trivial_character(), nu()), Matrix.zeros(2)))
    assert tuple(g) == (False, False, False)
    assert tuple(genericity(sp(2))) == (True, True, True)
    assert tuple(genericity(WDParameter(gl_param(1), Matrix.zeros(1)))) == (True, True, True)


def test_genericity_of_two_plus_one_blocks():
    w = build_gl_block_parameter([(trivial_character(), 2), (trivial_character(), 1)])
    assert monodromy_space(w.phi).dim == 1
    assert tuple(genericity(w)) == (True, True, True)
    # a third eigenvalue q^(-3/2) links to the block and leaves N off the open orbit
    chi = unramified_character(None, S("q^(-3/2)"))
    w = build_gl_block_parameter([(trivial_character(), 2), (chi, 1)])
    assert monodromy_space(w.phi).dim == 2
    assert tuple(genericity(w)) == (False, False, False)
    regular = WDParameter(w.phi, w.N + Matrix.elementary(3, 2, 1, 1))
    assert tuple(genericity(regular)) == (True, True, True)


def test_l_factor_examples():
    assert artin_l_factor(WDParameter(gl_param(1), Matrix.zeros(1)), RepDescriptor.standard()) == LFactor((Monomial(0, 0),))
    L = artin_l_factor(sp(2), RepDescriptor.standard())
    assert [str(m) for m in L.inverse_roots] == ["q^(-1/2)"]
    w = WDParameter(direct_sum(trivial_character(), nu()), Matrix.zeros(2))
    assert sorted(str(m) for m in artin_l_factor(w, RepDescriptor.standard()).inverse_roots) == ["1", "q^(-1)"]


def test_l_factor_multiplicativity():
    a, b = sp(2), build_gl_block_parameter([(nu(), 1)])
    s = WDParameter(direct_sum(a.phi, b.phi), Matrix.block_diag([a.N, b.N]))
    r = RepDescriptor.standard()
    assert artin_l_factor(s, r) == artin_l_factor(a, r) * artin_l_factor(b, r)


def test_block_builder_examples():
    w = sp(2)
    assert w.phi.frobenius_image == diag("q^(1/2)", "q^(-1/2)")
    assert w.N == Matrix.elementary(2, 1, 0, 1)
    assert validate_parameter(w)["valid"]
    w = sp(1)
    assert w.phi.frobenius_image == Matrix.identity(1) and w.N.is_zero()


def test_semisimplify_examples():
    assert [str(m) for m in sorted(semisimplify(sp(2)).frobenius_image.diagonal(), key=str)] == ["q^(-1/2)", "q^(1/2)"]
    p = gl_param(1, "q")
    w = WDParameter(p, Matrix.zeros(2))
    assert semisimplify(w) is p
    f = semisimplify(sp(3)).frobenius_image
    assert f == diag("q", 1, "q^(-1)")


# ---------------------------------------------------------------------------
# twists

def test_twist_suite_examples():
    D = WeilDatum.cyclic(4, frobenius_order=4)
    chi = character(D, [S("z4^1")], 1)
    one = trivial_character(D)
    p = direct_sum(one, chi)
    twists = one_dimensional_twists(D)
    assert len(twists) == 16
    rep = twisted_equivalence_suite(p, p, twists, twist_dim_max=1)
    assert rep["equivalent_under_all_twists"]
    rep = twisted_equivalence_suite(p, direct_sum(chi, chi), twists, twist_dim_max=1)
    assert not rep["equivalent_under_all_twists"] and rep["first_distinguishing_twist"] == 0


def test_twist_suite_weidner():
    p1, p2 = build_weidner(3)
    r = RepDescriptor.standard()
    a, b = push_forward(p1, r), push_forward(p2, r)
    rep = twisted_equivalence_suite(a, b, one_dimensional_twists(p1.datum))
    assert rep["equivalent_under_all_twists"] and rep["twists_checked"] == 16
    assert globally_conjugate(p1, p2).status == "NotConjugate"


def test_twist_bound_enforced():
    D = WeilDatum.cyclic(2, frobenius_order=2)
    big = direct_sum(trivial_character(D), trivial_character(D))
    p = direct_sum(big, big)
    with pytest.raises(InvalidParameter):
        twisted_equivalence_suite(p, p, [direct_sum(big, trivial_character(D))])


# ---------------------------------------------------------------------------
# serialization

def test_parameter_json_roundtrip():
    p1, _ = build_weidner(3)
    back = parameter_from_json(parameter_to_json(p1))
    assert back.same_images(p1) and back.target == p1.target and back.datum == p1.datum
    w = sp(3)
    back = parameter_from_json(parameter_to_json(w))
    assert isinstance(back, WDParameter) and back.N == w.N
