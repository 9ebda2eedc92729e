"""Representations of the classical groups: descriptors, matrix realisations, trace characters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .errors import NotSemisimple, UnsupportedRep
from .groups import GroupDescriptor, so_even_discriminant
from .linalg import Matrix, eigenvalues, is_semisimple
from .scalars import Scalar

KINDS = ("standard", "ext", "sym", "adjoint", "so_even_half", "det_power")


@dataclass(frozen=True)
class RepDescriptor:
    kind: str
    k: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnsupportedRep(f"unknown representation kind {self.kind!r}")
        if self.kind in ("ext", "sym") and self.k < 0:
            raise UnsupportedRep(f"{self.kind}({self.k}) needs k >= 0")
        if self.kind == "so_even_half" and self.sign not in (1, -1):
            raise UnsupportedRep("so_even_half sign must be +1 or -1")

    @classmethod
    def standard(cls):
        return cls("standard")

    @classmethod
    def ext(cls, k):
        return cls("ext", k)

    @classmethod
    def sym(cls, k):
        return cls("sym", k)

    @classmethod
    def adjoint(cls):
        return cls("adjoint")

    def __str__(self):
        if self.kind in ("ext", "sym"):
            return f"{self.kind}({self.k})"
        if self.kind == "det_power":
            return f"det_power({self.k})"
        if self.kind == "so_even_half":
            return f"so_even_half({'+' if self.sign > 0 else '-'})"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> RepDescriptor:
        text = text.strip().replace(" ", "")
        if text in ("standard", "std"):
            return cls("standard")
        if text in ("adjoint", "ad"):
            return cls("adjoint")
        if "(" in text and text.endswith(")"):
            head, arg = text[:-1].split("(", 1)
            if head == "so_even_half" and arg in ("+", "-"):
                return cls(head, 0, 1 if arg == "+" else -1)
            if head in ("ext", "sym", "det_power"):
                try:
                    return cls(head, int(arg))
                except ValueError:
                    pass
        raise UnsupportedRep(f"cannot parse representation {text!r}")

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind in ("ext", "sym"):
            out["k"] = self.k
        elif self.kind == "det_power":
            out["j"] = self.k
        elif self.kind == "so_even_half":
            out["sign"] = "+" if self.sign > 0 else "-"
        return out

    @classmethod
    def from_json(cls, data) -> RepDescriptor:
        kind = data["kind"]
        if kind == "det_power":
            return cls(kind, int(data.get("j", data.get("k", 1))))
        if kind == "so_even_half":
            s = data.get("sign", "+")
            return cls(kind, 0, 1 if s in ("+", 1, "1") else -1)
        return cls(kind, int(data.get("k", 0)))

    def check(self, G: GroupDescriptor):
        if self.kind in ("ext", "sym") and not 0 <= self.k <= G.n:
            raise UnsupportedRep(f"{self} needs 0 <= k <= {G.n}")
        if self.kind == "so_even_half" and (G.family != "SO" or G.n % 2):
            raise UnsupportedRep("so_even_half exists only for SO of even size")

    def dimension(self, G: GroupDescriptor) -> int:
        from math import comb

        self.check(G)
        if self.kind == "standard":
            return G.n
        if self.kind == "ext":
            return comb(G.n, self.k)
        if self.kind == "sym":
            return comb(G.n + self.k - 1, self.k)
        if self.kind == "adjoint":
            return G.dimension
        if self.kind == "det_power":
            return 1
        raise UnsupportedRep("half-characters have no matrix realisation here")


# ---------------------------------------------------------------------------
# matrix realisations

def _minor(x: Matrix, rows, cols) -> Scalar:
    return x.submatrix(rows, cols).det() if rows else Scalar.one()


def _ext_matrix(x: Matrix, k: int) -> Matrix:
    idx = list(combinations(range(x.rows), k))
    return Matrix(len(idx), len(idx), (_minor(x, I, J) for I in idx for J in idx))


def _ext_derivation(N: Matrix, k: int) -> Matrix:
    idx = list(combinations(range(N.rows), k))
    pos = {I: a for a, I in enumerate(idx)}
    z = Scalar.zero()
    out = [[z] * len(idx) for _ in idx]
    for b, J in enumerate(idx):
        for t, j in enumerate(J):
            for i in range(N.rows):
                c = N[i, j]
                if not c or (i in J and i != j):
                    continue
                new = list(J)
                new[t] = i
                order = sorted(range(k), key=lambda s: new[s])
                sign = _perm_sign(order)
                a = pos[tuple(new[s] for s in order)]
                out[a][b] = out[a][b] + (c if sign > 0 else -c)
    return Matrix.from_rows(out)


def _perm_sign(order) -> int:
    sign, seen = 1, [False] * len(order)
    for s in range(len(order)):
        if not seen[s]:
            j, length = s, 0
            while not seen[j]:
                seen[j] = True
                j = order[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _sym_apply(cols, k, n):
    """Matrix of the map on Sym^k induced by e_i -> sum_j cols[i][j] e_j."""
    idx = list(combinations_with_replacement(range(n), k))
    pos = {I: a for a, I in enumerate(idx)}
    z = Scalar.zero()
    out = [[z] * len(idx) for _ in idx]
    for b, J in enumerate(idx):
        poly = {(): Scalar.one()}
        for j in J:
            nxt = {}
            for mono, c in poly.items():
                for i, v in cols[j].items():
                    key = tuple(sorted(mono + (i,)))
                    nxt[key] = nxt.get(key, z) + c * v
            poly = nxt
        for mono, c in poly.items():
            if c:
                out[pos[mono]][b] = c
    return Matrix.from_rows(out) if idx else Matrix.zeros(0)


def _columns(x: Matrix):
    return [{i: x[i, j] for i in range(x.rows) if x[i, j]} for j in range(x.cols)]


def _sym_matrix(x: Matrix, k: int) -> Matrix:
    return _sym_apply(_columns(x), k, x.rows)


def _sym_derivation(N: Matrix, k: int) -> Matrix:
    n = N.rows
    idx = list(combinations_with_replacement(range(n), k))
    pos = {I: a for a, I in enumerate(idx)}
    cols = _columns(N)
    z = Scalar.zero()
    out = [[z] * len(idx) for _ in idx]
    for b, J in enumerate(idx):
        for t, j in enumerate(J):
            rest = J[:t] + J[t + 1:]
            for i, v in cols[j].items():
                a = pos[tuple(sorted(rest + (i,)))]
                out[a][b] = out[a][b] + v
    return Matrix.from_rows(out)


def rep_matrix(G: GroupDescriptor, r: RepDescriptor, x: Matrix) -> Matrix:
    """The matrix r(x) in the standard basis of the representation space."""
    r.check(G)
    G._check_shape(x)
    if r.kind == "standard":
        return x
    if r.kind == "ext":
        if r.k == 0:
            return Matrix.identity(1)
        return _ext_matrix(x, r.k)
    if r.kind == "sym":
        if r.k == 0:
            return Matrix.identity(1)
        return _sym_matrix(x, r.k)
    if r.kind == "adjoint":
        return G.adjoint_matrix(x)
    if r.kind == "det_power":
        return Matrix.diag([x.det() ** r.k])
    raise UnsupportedRep("half-characters have no matrix realisation")


def rep_derivation(G: GroupDescriptor, r: RepDescriptor, N: Matrix) -> Matrix:
    """The induced Lie-algebra action dr(N) (Leibniz rule, or ad(N) for the adjoint)."""
    r.check(G)
    G._check_shape(N)
    if r.kind == "standard":
        return N
    if r.kind in ("ext", "sym") and r.k == 0:
        return Matrix.zeros(1)
    if r.kind == "ext":
        return _ext_derivation(N, r.k)
    if r.kind == "sym":
        return _sym_derivation(N, r.k)
    if r.kind == "adjoint":
        return G.ad_matrix(N)
    if r.kind == "det_power":
        return Matrix.diag([N.trace() * r.k])
    raise UnsupportedRep("half-characters have no matrix realisation")


# ---------------------------------------------------------------------------
# characters

def power_sums(eigs, upto):
    values = [lam.to_scalar() for lam in eigs]
    out = [Scalar.rational(len(values))]
    cur = [Scalar.one()] * len(values)
    for _ in range(upto):
        cur = [a * b for a, b in zip(cur, values)]
        out.append(sum(cur[1:], cur[0]) if cur else Scalar.zero())
    return out


def elementary_symmetric(eigs, k):
    p = power_sums(eigs, k)
    e = [Scalar.one()]
    for j in range(1, k + 1):
        acc = Scalar.zero()
        for i in range(1, j + 1):
            t = e[j - i] * p[i]
            acc = acc + t if i % 2 else acc - t
        e.append(acc * Scalar.rational(Fraction(1, j)))
    return e[k]


def complete_symmetric(eigs, k):
    p = power_sums(eigs, k)
    h = [Scalar.one()]
    for j in range(1, k + 1):
        acc = Scalar.zero()
        for i in range(1, j + 1):
            acc = acc + h[j - i] * p[i]
        h.append(acc * Scalar.rational(Fraction(1, j)))
    return h[k]


def trace_in_rep(G: GroupDescriptor, r: RepDescriptor, x: Matrix) -> Scalar:
    """Trace character of r at x, from the eigenvalues of x."""
    r.check(G)
    G.require(x)
    if not is_semisimple(x):
        raise NotSemisimple("trace characters are evaluated on semisimple elements")
    eigs = eigenvalues(x)
    if r.kind == "standard":
        return x.trace()
    if r.kind == "ext":
        return elementary_symmetric(eigs, r.k)
    if r.kind == "sym":
        return complete_symmetric(eigs, r.k)
    if r.kind == "adjoint":
        return G.adjoint_matrix(x).trace()
    if r.kind == "det_power":
        return x.det() ** r.k
    # so_even_half
    h = G.n // 2
    disc = so_even_discriminant(G, x)
    e = elementary_symmetric(eigs, h)
    half = Scalar.rational(Fraction(1, 2))
    return (e + disc) * half if r.sign > 0 else (e - disc) * half


def character_vector(G: GroupDescriptor, x: Matrix, reps) -> tuple:
    return tuple(trace_in_rep(G, r, x) for r in reps)

