"""Tensor products, direct sums, pushforwards, and the twisted-equivalence suite."""

from __future__ import annotations

from itertools import product

from .conjugacy import locally_conjugate
from .errors import InvalidParameter, OrderMismatch
from .groups import GroupDescriptor
from .linalg import Matrix
from .monodromy import character
from .parameters import SemisimpleParameter
from .reps import RepDescriptor, rep_matrix
from .scalars import Scalar, current_session
from .weil import WeilDatum


def _gl(n):
    return GroupDescriptor("GL", n)


def tensor(p: SemisimpleParameter, t: SemisimpleParameter) -> SemisimpleParameter:
    if p.datum != t.datum:
        raise InvalidParameter("tensor factors must share one Weil datum")
    return SemisimpleParameter(
        _gl(p.n * t.n),
        p.datum,
        tuple(a.kron(b) for a, b in zip(p.inertia_images, t.inertia_images)),
        p.frobenius_image.kron(t.frobenius_image),
    )


def direct_sum(p: SemisimpleParameter, t: SemisimpleParameter) -> SemisimpleParameter:
    if p.datum != t.datum:
        raise InvalidParameter("summands must share one Weil datum")
    return SemisimpleParameter(
        _gl(p.n + t.n),
        p.datum,
        tuple(Matrix.block_diag([a, b]) for a, b in zip(p.inertia_images, t.inertia_images)),
        Matrix.block_diag([p.frobenius_image, t.frobenius_image]),
    )


def push_forward(p: SemisimpleParameter, r: RepDescriptor) -> SemisimpleParameter:
    """r o phi as a GL-valued parameter."""
    G = p.target
    imgs = tuple(rep_matrix(G, r, M) for M in p.inertia_images)
    f = rep_matrix(G, r, p.frobenius_image)
    return SemisimpleParameter(_gl(f.rows), p.datum, imgs, f)


def one_dimensional_twists(datum: WeilDatum) -> list[SemisimpleParameter]:
    """All characters of Gamma through the finite model (needs abelian inertia and a Frobenius order)."""
    I = datum.inertia
    if not I.abelian_model:
        raise InvalidParameter("character enumeration needs an abelian inertia model")
    if datum.frobenius_order is None:
        raise InvalidParameter("character enumeration needs a finite Frobenius order")
    w = current_session().field.root_order
    orders = list(I.invariants) + [datum.frobenius_order]
    for d in orders:
        if w % d:
            raise OrderMismatch(f"roots of unity of order {d} are not in the session field")
    out = []
    for ex in product(*(range(d) for d in orders)):
        vals = [Scalar.from_cyclo(current_session().field.root(e * (w // d))) for e, d in zip(ex, orders)]
        chi = character(datum, vals[:-1], vals[-1])
        # characters must be Frobenius invariant on inertia
        if all(chi.inertia_map[datum.alpha(g)] == chi.inertia_map[g] for g in I.generators):
            out.append(chi)
    return out


def twisted_equivalence_suite(p1: SemisimpleParameter, p2: SemisimpleParameter, twists,
                              twist_dim_max: int | None = None) -> dict:
    """Compare p1 (x) tau and p2 (x) tau for every twist tau.

    Equal twisted gamma factors are taken to mean equivalent semisimplified
    twists; over GL that is equality of characteristic polynomials on the
    generating window.
    """
    if p1.target.family != "GL" or p2.target.family != "GL":
        raise InvalidParameter("the suite compares GL-valued parameters")
    n = p1.n
    bound = n // 2 if twist_dim_max is None else int(twist_dim_max)
    twists = list(twists)
    rows = []
    for j, t in enumerate(twists):
        if t.n > bound:
            raise InvalidParameter(f"twist {j} has dimension {t.n} > bound {bound}")
        a, b = tensor(p1, t), tensor(p2, t)
        v = locally_conjugate(a, b)
        rows.append({
            "twist": j,
            "dimension": t.n,
            "status": v.status,
            **({"certificate": v.certificate} if v.certificate else {}),
        })
    equivalent = all(r["status"] == "Conjugate" for r in rows)
    first = next((r for r in rows if r["status"] != "Conjugate"), None)
    return {
        "equivalent_under_all_twists": equivalent,
        "twist_dim_max": bound,
        "twists_checked": len(rows),
        "first_distinguishing_twist": None if first is None else first["twist"],
        "results": rows,
        "note": "equal twisted gamma factors are modelled as conjugacy of the semisimplified twists",
    }
