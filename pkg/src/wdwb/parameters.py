"""Semisimple and Weil-Deligne parameters with values in a classical group."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidParameter, ShapeError, WorkbenchError
from .groups import GroupDescriptor
from .linalg import Matrix, eigenvalues, is_semisimple
from .scalars import Monomial, Scalar
from .weil import WeilDatum


@dataclass(frozen=True, eq=False)
class SemisimpleParameter:
    """phi : Gamma -> G given on the inertia generators and on Frobenius."""

    target: GroupDescriptor
    datum: WeilDatum
    inertia_images: tuple
    frobenius_image: Matrix

    def __post_init__(self):
        imgs = tuple(self.inertia_images)
        object.__setattr__(self, "inertia_images", imgs)
        if len(imgs) != len(self.datum.inertia.generators):
            raise InvalidParameter(
                f"{len(self.datum.inertia.generators)} inertia generators but {len(imgs)} images"
            )
        for M in imgs + (self.frobenius_image,):
            if M.shape != (self.target.n, self.target.n):
                raise ShapeError(f"images must be {self.target.n}x{self.target.n}")

    @property
    def n(self) -> int:
        return self.target.n

    @cached_property
    def inertia_map(self) -> dict:
        """Image of every inertia element, built along a BFS word tree.

        Raises InvalidParameter when the generator images violate a relation.
        """
        I = self.datum.inertia
        imgs = {I.identity: Matrix.identity(self.n)}
        tree = I.words()
        order = sorted(tree, key=lambda x: _depth(tree, x))
        for x in order:
            parent, j = tree[x]
            imgs[x] = imgs[parent] @ self.inertia_images[j]
        for x in I.elements:
            for j, g in enumerate(I.generators):
                if imgs[I.mul(x, g)] != imgs[x] @ self.inertia_images[j]:
                    raise InvalidParameter(
                        f"inertia relation fails at {I.label(x)} * generator {j}"
                    )
        return imgs

    def image(self, x) -> Matrix:
        """phi((iota, k)) = phi(iota) f^k."""
        a, k = x
        return self.inertia_map[a] @ (self.frobenius_image ** k)

    def inertia_image(self, a) -> Matrix:
        return self.inertia_map[a]

    @property
    def generator_images(self) -> list:
        return list(self.inertia_images) + [self.frobenius_image]

    def conjugate_by(self, g: Matrix, g_inv: Matrix | None = None) -> SemisimpleParameter:
        g_inv = g.inverse() if g_inv is None else g_inv
        return SemisimpleParameter(
            self.target,
            self.datum,
            tuple(g @ M @ g_inv for M in self.inertia_images),
            g @ self.frobenius_image @ g_inv,
        )

    def with_frobenius(self, f: Matrix) -> SemisimpleParameter:
        return SemisimpleParameter(self.target, self.datum, self.inertia_images, f)

    def with_target(self, target: GroupDescriptor) -> SemisimpleParameter:
        return SemisimpleParameter(target, self.datum, self.inertia_images, self.frobenius_image)

    def same_images(self, other: SemisimpleParameter) -> bool:
        return (
            self.inertia_images == other.inertia_images
            and self.frobenius_image == other.frobenius_image
        )


def _depth(tree, x):
    d = 0
    while x in tree:
        x = tree[x][0]
        d += 1
    return d


@dataclass(frozen=True, eq=False)
class WDParameter:
    """(phi, N) with N nilpotent in the Lie algebra and Ad(phi(gamma))N = nu(gamma)N."""

    phi: SemisimpleParameter
    N: Matrix
    blocks: tuple | None = field(default=None)

    @property
    def target(self) -> GroupDescriptor:
        return self.phi.target

    @classmethod
    def unramified_monodromy(cls, phi: SemisimpleParameter) -> WDParameter:
        return cls(phi, Matrix.zeros(phi.n))


@dataclass(frozen=True)
class LFactor:
    """prod over inverse roots lam of (1 - lam q^-s)^-1, kept as a sorted multiset."""

    inverse_roots: tuple

    def __post_init__(self):
        object.__setattr__(self, "inverse_roots", tuple(sorted(self.inverse_roots)))

    def __str__(self):
        if not self.inverse_roots:
            return "1"
        return " * ".join(f"(1 - ({lam})*q^(-s))^(-1)" for lam in self.inverse_roots)

    def has_pole_at_one(self) -> bool:
        q = Monomial(0, 1)
        return q in self.inverse_roots

    def __mul__(self, other: LFactor) -> LFactor:
        return LFactor(self.inverse_roots + other.inverse_roots)

    def to_json(self):
        return {"inverse_roots": [str(lam) for lam in self.inverse_roots], "text": str(self)}


# ---------------------------------------------------------------------------
# validation

def _check(name, ok, detail=""):
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _guarded(name, fn):
    try:
        ok, detail = fn()
    except (WorkbenchError, ZeroDivisionError, ValueError) as exc:
        return _check(name, False, str(exc))
    return _check(name, ok, detail)


def _relations(p: SemisimpleParameter):
    p.inertia_map
    return True, "inertia images satisfy the relations of the inertia group"


def _frobenius_relation(p: SemisimpleParameter):
    I, D = p.datum.inertia, p.datum
    f = p.frobenius_image
    for j, g in enumerate(I.generators):
        lhs = f @ p.inertia_images[j]
        rhs = p.inertia_map[D.alpha(g)] @ f
        if lhs != rhs:
            return False, f"f phi(g{j}) f^-1 != phi(alpha(g{j}))"
    return True, "f phi(iota) f^-1 = phi(alpha(iota)) on generators"


def _frobenius_order(p: SemisimpleParameter):
    k = p.datum.frobenius_order
    if k is None:
        return True, "Frobenius has infinite order"
    ok = p.frobenius_image ** k == Matrix.identity(p.n)
    return ok, f"f^{k} = I" if ok else f"f^{k} != I"


def _membership(p: SemisimpleParameter):
    G = p.target
    for j, M in enumerate(p.generator_images):
        if not G.contains(M):
            name = "f" if j == len(p.inertia_images) else f"phi(g{j})"
            return False, f"{name} is not in {G}"
    return True, f"all generator images lie in {G}"


def _semisimple(p: SemisimpleParameter):
    for j, M in enumerate(p.generator_images):
        eigenvalues(M)
        if not is_semisimple(M):
            return False, f"generator image {j} is not semisimple"
    return True, "generator images are semisimple with monomial eigenvalues"


def _elliptic_inertia(p: SemisimpleParameter):
    for j, M in enumerate(p.inertia_images):
        if any(lam.exponent != 0 for lam in eigenvalues(M)):
            return False, f"phi(g{j}) has a non-elliptic eigenvalue"
    return True, "inertia images have root-of-unity eigenvalues"


def _lie_membership(w: WDParameter):
    ok = w.target.lie_contains(w.N)
    return ok, "N lies in the Lie algebra" if ok else "N is not in the Lie algebra"


def _nilpotent(w: WDParameter):
    ok = (w.N ** w.phi.n).is_zero()
    return ok, "N^n = 0" if ok else "N is not nilpotent"


def _monodromy_relation(w: WDParameter):
    f, N = w.phi.frobenius_image, w.N
    lhs = f @ N
    rhs = (N @ f).scale(Scalar.q(-1))
    if lhs != rhs:
        return False, "Ad(f)N != q^(-1) N"
    for j, M in enumerate(w.phi.inertia_images):
        if M @ N != N @ M:
            return False, f"Ad(phi(g{j}))N != N"
    return True, "Ad(f)N = q^(-1) N and Ad(phi(iota))N = N"


def validate_parameter(p) -> dict:
    """Check every defining identity; returns {'valid', 'checks', 'first_failure'}."""
    w = p if isinstance(p, WDParameter) else None
    phi = w.phi if w is not None else p
    checks = [
        _guarded("inertia_relations", lambda: _relations(phi)),
        _guarded("frobenius_relation", lambda: _frobenius_relation(phi)),
        _guarded("frobenius_order", lambda: _frobenius_order(phi)),
        _guarded("membership", lambda: _membership(phi)),
        _guarded("semisimple", lambda: _semisimple(phi)),
        _guarded("elliptic_inertia", lambda: _elliptic_inertia(phi)),
    ]
    if w is not None:
        checks += [
            _guarded("N_in_lie_algebra", lambda: _lie_membership(w)),
            _guarded("N_nilpotent", lambda: _nilpotent(w)),
            _guarded("monodromy_relation", lambda: _monodromy_relation(w)),
        ]
    failures = [c for c in checks if c["status"] == "fail"]
    return {
        "valid": not failures,
        "checks": checks,
        "first_failure": f"{failures[0]['name']}: {failures[0]['detail']}" if failures else None,
    }


def require_valid(p):
    report = validate_parameter(p)
    if not report["valid"]:
        raise InvalidParameter(report["first_failure"])
    return p
