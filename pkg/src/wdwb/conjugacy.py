"""Local and global conjugacy of parameters, the polar decomposition of a parameter."""

from __future__ import annotations

import random
from math import lcm

from .errors import FrobeniusMismatch, InvalidParameter, NotInvertible
from .groups import (
    GroupDescriptor,
    centralizer_dim,
    centralizer_space,
    conjugate_semisimple,
    conjugator_for_tuples,
    polar_parts,
)
from .linalg import Matrix, eigenvalues, intertwiner_space
from .parameters import SemisimpleParameter
from .scalars import Monomial, Scalar
from .verdicts import ConjugacyVerdict


def _same_setting(p1: SemisimpleParameter, p2: SemisimpleParameter):
    if p1.target != p2.target:
        raise InvalidParameter(f"targets differ: {p1.target} vs {p2.target}")
    if p1.datum != p2.datum:
        raise InvalidParameter("parameters use different Weil data")


def z_of_phi(p: SemisimpleParameter):
    """(z, tempered, levi_dim): hyperbolic part of f, the tempered twist, dim C(z)."""
    ell, z = polar_parts(p.frobenius_image)
    for M in p.generator_images:
        if not z.commutes_with(M):
            raise AssertionError("hyperbolic part must commute with every image")
    tempered = p.with_frobenius(ell)
    for lam in eigenvalues(ell):
        if lam.exponent != 0:
            raise AssertionError("tempered Frobenius image must be elliptic")
    return z, tempered, centralizer_dim(p.target, [z], check=False)


def elliptic_period(*params) -> int:
    """lcm of the orders of the root-of-unity parts of all generator eigenvalues."""
    K = 1
    for p in params:
        for M in p.generator_images:
            for lam in eigenvalues(M):
                K = lcm(K, lam.root_order)
    return K


def frobenius_stable_power(p: SemisimpleParameter, p2: SemisimpleParameter) -> int:
    """Smallest d >= 1 with f^d central in both images and C(f^dk) = C(f^d) for k <= L."""
    if p.frobenius_image != p2.frobenius_image:
        raise FrobeniusMismatch("the two parameters have different Frobenius images")
    f = p.frobenius_image
    G = p.target
    L = lcm(1, *(lam.root_order for lam in eigenvalues(f)))
    inertia = list(p.inertia_images) + list(p2.inertia_images)
    cache = {}

    def cent(k):
        if k not in cache:
            cache[k] = centralizer_space(G, [f ** k])
        return cache[k]

    d = 1
    while True:
        fd = f ** d
        if all(fd.commutes_with(M) for M in inertia):
            base = cent(d)
            if all(cent(d * k) == base for k in range(1, L + 1)):
                return d
        d += 1
        if d > 64 * L:
            raise AssertionError("no stable Frobenius power found")


def _elements_window(p: SemisimpleParameter, K: int):
    for a in p.datum.inertia.elements:
        for k in range(K):
            yield (a, k)


def locally_conjugate(p1: SemisimpleParameter, p2: SemisimpleParameter, window: int | None = None,
                      full_orthogonal=False) -> ConjugacyVerdict:
    """Elementwise conjugacy over (iota, k), k < K, plus matching of hyperbolic exponents."""
    _same_setting(p1, p2)
    G = p1.target
    e1 = sorted(lam.exponent for lam in eigenvalues(p1.frobenius_image))
    e2 = sorted(lam.exponent for lam in eigenvalues(p2.frobenius_image))
    K = elliptic_period(p1, p2) if window is None else int(window)
    if e1 != e2:
        return ConjugacyVerdict.no(
            "Frobenius images have different q-exponent multisets", element=p1.datum.label((p1.datum.inertia.identity, 1)),
            window=K,
        )
    witnesses = []
    for x in _elements_window(p1, K):
        v = conjugate_semisimple(G, p1.image(x), p2.image(x), full_orthogonal=full_orthogonal)
        label = p1.datum.label(x)
        if v.status == "NotConjugate":
            return ConjugacyVerdict.no(f"not conjugate at {label}: {v.certificate}", element=label, window=K)
        if not v.decided:
            return ConjugacyVerdict.unknown(f"undecided at {label}: {v.reason}", element=label, window=K)
        witnesses.append({"element": label, "witness": v.witness.to_json()})
    return ConjugacyVerdict.yes(None, window=K, checked=len(witnesses), elementwise=witnesses)


def _commuting(mats) -> bool:
    return all(a.commutes_with(b) for i, a in enumerate(mats) for b in mats[i + 1:])


def _normalise_sl(G: GroupDescriptor, g: Matrix):
    """Scale g to determinant one if an n-th root of det g is available."""
    d = g.det()
    if d == Scalar.one():
        return g
    m = d.as_monomial()
    if m is None:
        return None
    n = G.n
    w = m.session.field.root_order
    e = m.exponent / n
    if m.session.denominator_bound % e.denominator:
        return None
    for k in range(w):
        if (k * n - m.k) % w == 0:
            root = Monomial(k, e, m.session).to_scalar()
            return g.scale(root.inverse())
    return None


def _random_search(G, basis, pairs, rng, budget):
    n = G.n
    for _ in range(budget):
        coeffs = [rng.randint(-3, 3) for _ in basis]
        if not any(coeffs):
            continue
        acc = Matrix.zeros(n)
        for c, B in zip(coeffs, basis):
            if c:
                acc = acc + B.scale(Scalar.rational(c))
        try:
            d = acc.det()
        except NotInvertible:
            continue
        if d.is_zero():
            continue
        g = acc
        if G.family == "SL":
            g = _normalise_sl(G, acc)
            if g is None:
                continue
        if G.contains(g) and all(g @ A == B @ g for A, B in pairs):
            return g
    return None


def globally_conjugate(p1: SemisimpleParameter, p2: SemisimpleParameter, seed: int = 0,
                       budget: int = 200, full_orthogonal=False) -> ConjugacyVerdict:
    """Search for one g in the target with g phi1 g^-1 = phi2."""
    _same_setting(p1, p2)
    G = p1.target
    xs, ys = p1.generator_images, p2.generator_images
    pairs = list(zip(xs, ys))
    if _commuting(xs) and _commuting(ys):
        v = conjugator_for_tuples(G, xs, ys, full_orthogonal=full_orthogonal)
        v.details["method"] = "joint eigenbasis"
        if v.decided:
            return v
    space = intertwiner_space(pairs)
    if space.dim == 0:
        return ConjugacyVerdict.no("the intertwiner space of the generator images is zero", intertwiner_dim=0)
    basis = space.matrices(G.n)
    rng = random.Random(seed)
    g = _random_search(G, basis, pairs, rng, budget)
    if g is not None:
        return ConjugacyVerdict.yes(g, intertwiner_dim=space.dim, method="random intertwiner", seed=seed)
    return ConjugacyVerdict.unknown(
        f"no conjugator in {G} found among {budget} seeded intertwiner combinations",
        intertwiner_dim=space.dim, seed=seed, budget=budget,
    )
