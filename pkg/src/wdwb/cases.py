"""Explicit locally-but-not-globally conjugate parameters into SO_2n, and a torus scan for more."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from .conjugacy import globally_conjugate, locally_conjugate
from .errors import InvalidParameter, OrderMismatch, OutOfRange
from .groups import GroupDescriptor, centralizer_space, conjugator_for_tuples
from .linalg import Matrix
from .monodromy import genericity, monodromy_space
from .parameters import SemisimpleParameter, WDParameter, validate_parameter
from .reps import RepDescriptor, trace_in_rep
from .scalars import Scalar, current_session
from .twists import push_forward
from .weil import WeilDatum


def weidner_datum() -> WeilDatum:
    """Inertia Z/4 (the class of u), trivial Frobenius action, Frobenius of order 4."""
    return WeilDatum.cyclic(4, frobenius_order=4)


def _lambda1(n):
    i = Scalar.zeta(4, 1)
    one = Scalar.one()
    f = Matrix.diag([i] * (n - 1) + [one, one] + [-i] * (n - 1))
    u = Matrix.diag([one] + [i] * (n - 1) + [-i] * (n - 1) + [one])
    return f, u


def middle_swap(n) -> Matrix:
    """diag(I_{n-1}, w_2, I_{n-1})."""
    perm = list(range(2 * n))
    perm[n - 1], perm[n] = n, n - 1
    return Matrix.permutation(perm)


def build_weidner(n: int):
    if n < 3:
        raise OutOfRange("the construction needs n >= 3")
    if current_session().m % 4:
        raise OrderMismatch("the construction needs i in the coefficient field (m divisible by 4)")
    G = GroupDescriptor("SO", 2 * n)
    D = weidner_datum()
    f, u = _lambda1(n)
    p1 = SemisimpleParameter(G, D, (u,), f)
    C = middle_swap(n)
    p2 = p1.conjugate_by(C, C)
    return p1, p2


def transposition_product(size: int, pairs) -> Matrix:
    """Permutation matrix of a product of disjoint transpositions (1-indexed)."""
    perm = list(range(size))
    for a, b in pairs:
        perm[a - 1], perm[b - 1] = perm[b - 1], perm[a - 1]
    return Matrix.permutation(perm)


def parity_witness(n: int, a: int, b: int) -> Matrix:
    """Conjugator for the element with Frobenius exponent a and inertia exponent b."""
    if b % 2 == 0:
        return Matrix.identity(2 * n)
    if a % 2 == 0:
        return transposition_product(2 * n, [(n, n + 1), (1, 2 * n)])
    return transposition_product(2 * n, [(n, n + 1), (n - 1, n + 2)])


def _check(name, claim, ok, **extra):
    out = {"name": name, "paper_ref": claim, "status": "pass" if ok else "fail"}
    out.update(extra)
    return out


def verify_weidner(n: int, second=None, seed: int = 0, budget: int = 200, timing: bool = False) -> dict:
    """Run the five sub-checks of the SO_2n counterexample; never raises on a failed check."""
    start = time.perf_counter()
    p1, p2 = build_weidner(n)
    if second == "first":
        p2 = p1
    G = p1.target
    checks = []

    # (a) local conjugacy, with the parity witnesses
    v = locally_conjugate(p1, p2)
    bad = []
    for a in range(4 if p2 is not p1 else 0):
        for b in range(4):
            g = parity_witness(n, a, b)
            x = ((b,), a)
            if not (G.contains(g) and g @ p1.image(x) == p2.image(x) @ g):
                bad.append(f"a={a},b={b}")
    ok = v.conjugate and not bad
    checks.append(_check(
        "local_conjugacy",
        "elementwise conjugacy by identity or double transpositions, by parity of (a, b)",
        ok,
        witness={
            "elements_checked": v.details.get("checked"),
            "parity_witnesses": {
                "b even": "identity",
                "b odd, a even": f"({n} {n + 1})({1} {2 * n})",
                "a, b odd": f"({n} {n + 1})({n - 1} {n + 2})",
            },
            **({"failed": bad} if bad else {}),
        },
    ))

    # (b) global non-conjugacy
    gv = globally_conjugate(p1, p2, seed=seed, budget=budget)
    if gv.status == "NotConjugate":
        cert = (
            "a conjugator would centralise the Frobenius image, so it is diag(A, B, w A^-T w) with "
            f"B in SO_2; it would then conjugate diag(i, -i) to diag(-i, i) inside SO_2, which is diagonal. "
            f"Engine certificate: {gv.certificate}"
        )
        checks.append(_check("global_nonconjugacy", "no single conjugator exists", True, certificate=cert))
    else:
        extra = {"witness": gv.witness.to_json()} if gv.witness is not None else {"certificate": gv.reason}
        checks.append(_check(
            "global_nonconjugacy", "no single conjugator exists", False,
            deviation=f"globally_conjugate returned {gv.status}", **extra,
        ))

    # (c) centralisers
    c1 = centralizer_space(G, p1.generator_images)
    c2 = centralizer_space(G, p2.generator_images)
    expected = (n - 2) ** 2 + 2
    ok = c1.dim == c2.dim == expected and c1 == c2
    checks.append(_check(
        "centralizers", "both centralisers equal diag(z, A, B, w A^-T w, 1/z)", ok,
        witness={"dim": [c1.dim, c2.dim], "expected": expected, "equal": c1 == c2},
    ))

    # (d) monodromy and genericity
    m1, m2 = monodromy_space(p1), monodromy_space(p2)
    gens = [genericity(WDParameter(p, Matrix.zeros(2 * n))) for p in (p1, p2)]
    ok = m1.dim == 0 and m2.dim == 0 and all(g.generic for g in gens)
    checks.append(_check(
        "monodromy_zero", "the monodromy operator must vanish; (phi_i, 0) is generic", ok,
        witness={"monodromy_dim": [m1.dim, m2.dim], "generic": [g.generic for g in gens]},
    ))

    # (e) representation-level conjugacy
    reps = [RepDescriptor.standard(), RepDescriptor.ext(2), RepDescriptor.ext(3), RepDescriptor.adjoint()]
    rows, all_ok = [], True
    elements = [((b,), a) for a in range(4) for b in range(4)]
    for r in reps:
        traces_equal = all(
            trace_in_rep(G, r, p1.image(x)) == trace_in_rep(G, r, p2.image(x)) for x in elements
        )
        q1, q2 = push_forward(p1, r), push_forward(p2, r)
        rv = globally_conjugate(q1, q2, seed=seed, budget=budget)
        witness_ok = rv.conjugate and all(
            rv.witness @ A == B @ rv.witness for A, B in zip(q1.generator_images, q2.generator_images)
        )
        ok = traces_equal and witness_ok
        all_ok &= ok
        rows.append({"rep": str(r), "dimension": q1.n, "traces_equal": traces_equal, "status": rv.status})
    checks.append(_check(
        "representation_conjugacy", "r o phi_1 and r o phi_2 are conjugate in GL, so gamma factors agree",
        all_ok, witness={"reps": rows},
    ))

    valid = [validate_parameter(p)["valid"] for p in (p1, p2)]
    return {
        "case": "weidner",
        "n": n,
        "checks": checks,
        "parameters_valid": valid,
        "passed": all(c["status"] == "pass" for c in checks) and all(valid),
        "seed": seed,
        "elapsed": round(time.perf_counter() - start, 3) if timing else None,
    }


# ---------------------------------------------------------------------------
# torus scan

@dataclass
class ScanResult:
    pairs: list = field(default_factory=list)
    exhausted: bool = False
    assignments: int = 0
    confirmations: int = 0
    seed: int = 0

    def to_json(self):
        return {
            "pairs_found": len(self.pairs),
            "budget_exhausted": self.exhausted,
            "assignments": self.assignments,
            "confirmations": self.confirmations,
            "seed": self.seed,
            "pairs": [
                {
                    "first": {"inertia": [M.to_json() for M in a.inertia_images], "frobenius": a.frobenius_image.to_json()},
                    "second": {"inertia": [M.to_json() for M in b.inertia_images], "frobenius": b.frobenius_image.to_json()},
                }
                for a, b in self.pairs
            ],
        }


class _TorusModel:
    """Diagonal homomorphisms from a finite abelian quotient of Gamma into a maximal torus."""

    def __init__(self, datum: WeilDatum, G: GroupDescriptor):
        I = datum.inertia
        if not I.abelian_model:
            raise InvalidParameter("the scan needs an abelian inertia model")
        if I.order > 256:
            raise InvalidParameter("inertia order exceeds the scan guard of 256")
        w = current_session().field.root_order
        fo = datum.frobenius_order or w
        self.orders = tuple(I.invariants) + (fo,)
        for d in self.orders:
            if w % d:
                raise OrderMismatch(f"roots of unity of order {d} are not in the session field")
        self.w, self.datum, self.G = w, datum, G
        chars = list(product(*(range(d) for d in self.orders)))
        # diagonal images commute, so each character must be Frobenius invariant
        self.chars = [c for c in chars if self._invariant(c)]
        self.elements = list(product(*(range(d) for d in self.orders)))

    def _invariant(self, c):
        D = self.datum
        for g in D.inertia.generators:
            if self.value(c, D.alpha(g) + (0,)) != self.value(c, g + (0,)):
                return False
        return True

    def value(self, c, x) -> int:
        """Root index of chi_c(x) in Z/w."""
        return sum(e * v * (self.w // d) for e, v, d in zip(c, x, self.orders)) % self.w

    def inverse(self, c):
        return tuple(-e % d for e, d in zip(c, self.orders))

    @property
    def rank(self):
        G = self.G
        return G.n // 2 if G.has_form else G.n

    def assignments(self):
        """Ordered torus coordinates as tuples of characters."""
        G = self.G
        if G.family == "SL":
            zero = (0,) * len(self.orders)
            for head in product(self.chars, repeat=G.n - 1):
                tot = zero
                for c in head:
                    tot = tuple((a + b) % d for a, b, d in zip(tot, c, self.orders))
                yield head + (self.inverse(tot),)
        else:
            yield from product(self.chars, repeat=self.rank)

    def _canonical(self, items, inv):
        """Weyl-orbit canonical form of a torus point given as a list of comparable items."""
        G = self.G
        if not G.has_form:
            return tuple(sorted(items))
        reduced, flips, selfdual = [], 0, False
        for t in items:
            ti = inv(t)
            if ti == t:
                selfdual = True
            if ti < t:
                flips += 1
                t = ti
            reduced.append(t)
        key = tuple(sorted(reduced))
        if G.family == "SO" and G.n % 2 == 0 and not selfdual:
            return key, flips % 2
        return key, None

    def global_key(self, chars):
        return self._canonical(list(chars), self.inverse)

    def pair_key(self, a, b):
        """Canonical form of the pair (a, b) under simultaneous Weyl conjugacy."""
        inv = lambda t: (self.inverse(t[0]), self.inverse(t[1]))
        return self._canonical(list(zip(a, b)), inv)

    def local_key(self, chars):
        w = self.w
        return tuple(
            self._canonical([self.value(c, x) for c in chars], lambda r: -r % w) for x in self.elements
        )

    def parameter(self, chars) -> SemisimpleParameter:
        G, field_ = self.G, current_session().field
        if G.has_form:
            h = self.rank
            full = list(chars) + ([None] if G.n % 2 else []) + [self.inverse(c) for c in reversed(chars)]
            assert len(full) == G.n and h == len(chars)
        else:
            full = list(chars)

        def img(x):
            vals = []
            for c in full:
                vals.append(Scalar.one() if c is None else Scalar.from_cyclo(field_.root(self.value(c, x))))
            return Matrix.diag(vals)

        k = len(self.orders) - 1
        gens = []
        for j in range(k):
            x = tuple(1 if t == j else 0 for t in range(k + 1))
            gens.append(img(x))
        f = img((0,) * k + (1,))
        return SemisimpleParameter(G, self.datum, tuple(gens), f)


def _signed_permutations(h):
    for perm in permutations(range(h)):
        for signs in product((1, -1), repeat=h):
            yield perm, signs


def acceptability_scan(datum: WeilDatum, target: GroupDescriptor, budget: int = 500, seed: int = 0) -> ScanResult:
    """Torus-valued pairs that are locally but not globally conjugate.

    Assignments are grouped by an elementwise Weyl-orbit key.  Inside a local
    class, candidate partners of a representative a are its images w.a under
    the signed permutations (for form targets) and the representatives of the
    other global classes.  Candidates are deduplicated up to simultaneous Weyl
    conjugacy and confirmed with locally_conjugate and globally_conjugate;
    ``budget`` bounds the number of confirmations.
    """
    model = _TorusModel(datum, target)
    result = ScanResult(seed=seed)
    classes: dict = {}
    for chars in model.assignments():
        result.assignments += 1
        bucket = classes.setdefault(model.local_key(chars), {})
        bucket.setdefault(model.global_key(chars), chars)
    seen, candidates = set(), []

    def offer(a, b):
        key = model.pair_key(a, b)
        if key not in seen and model.pair_key(b, a) not in seen:
            seen.add(key)
            candidates.append((a, b))

    signed = list(_signed_permutations(model.rank)) if target.has_form and model.rank <= 5 else []
    for lk in sorted(classes, key=repr):
        if len(classes[lk]) < 2:
            continue
        reps = [classes[lk][gk] for gk in sorted(classes[lk], key=repr)]
        for a in reps:
            ga = model.global_key(a)
            for perm, signs in signed:
                b = tuple(a[p] if s > 0 else model.inverse(a[p]) for p, s in zip(perm, signs))
                if model.global_key(b) != ga and model.local_key(b) == lk:
                    offer(a, b)
        for a, b in combinations(reps, 2):
            offer(a, b)
    rng = random.Random(seed)
    rng.shuffle(candidates)
    for c1, c2 in candidates:
        if result.confirmations >= budget:
            result.exhausted = True
            break
        result.confirmations += 1
        p1, p2 = model.parameter(c1), model.parameter(c2)
        if locally_conjugate(p1, p2).conjugate and globally_conjugate(p1, p2, seed=seed).status == "NotConjugate":
            result.pairs.append((p1, p2))
    result.pairs.sort(key=lambda pq: repr([M.to_json() for M in pq[0].generator_images + pq[1].generator_images]))
    return result


def pairs_simultaneously_conjugate(pair, other) -> bool:
    """Is there g with g a g^-1 = c and g b g^-1 = d (in either order of the second pair)?"""
    (a, b), (c, d) = pair, other
    G = a.target
    xs = a.generator_images + b.generator_images
    for y1, y2 in ((c, d), (d, c)):
        ys = y1.generator_images + y2.generator_images
        v = conjugator_for_tuples(G, xs, ys)
        if v.conjugate:
            return True
    return False
