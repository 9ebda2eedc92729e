"""Split classical groups GL_n, SL_n, Sp_2n, SO_n over the Scalar field.

The orthogonal and symplectic groups are realised with antidiagonal forms:
SO_n = {M : w M^T w^-1 = M^-1, det M = 1} with w the antidiagonal of ones,
Sp_2n = {M : J M^T J^-1 = M^-1} with J antidiagonal, +1 in the upper half
and -1 in the lower half.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce

from .errors import (
    HasUnitEigenvalue,
    NotInGroup,
    NotInvertible,
    NotMonomialSplit,
    NotRepresentable,
    NotSemisimple,
    ShapeError,
)
from .linalg import (
    Matrix,
    Subspace,
    eigenspaces,
    eigenvalues,
    inverse_k,
    is_semisimple,
    matmul_k,
    nullspace,
    rank,
    to_k,
)
from .scalars import Monomial, RatFunc, Scalar
from .verdicts import ConjugacyVerdict

FAMILIES = ("GL", "SL", "Sp", "SO")


@dataclass(frozen=True)
class GroupDescriptor:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown group family {self.family!r}")
        if self.n < 1:
            raise ValueError("group size must be positive")
        if self.family == "Sp" and self.n % 2:
            raise ValueError("Sp needs an even matrix size")

    def __str__(self):
        return f"{self.family}{self.n}"

    @classmethod
    def parse(cls, text: str) -> GroupDescriptor:
        for fam in FAMILIES:
            if text.startswith(fam) and text[len(fam):].isdigit():
                return cls(fam, int(text[len(fam):]))
        raise ValueError(f"cannot parse group {text!r}")

    def to_json(self):
        return {"family": self.family, "n": self.n}

    @classmethod
    def from_json(cls, data) -> GroupDescriptor:
        return cls(data["family"], int(data["n"]))

    @property
    def has_form(self) -> bool:
        return self.family in ("SO", "Sp")

    @property
    def symplectic(self) -> bool:
        return self.family == "Sp"

    @cached_property
    def form(self) -> Matrix | None:
        """w_n for SO, J for Sp, None otherwise."""
        n = self.n
        if self.family == "SO":
            return Matrix.permutation([n - 1 - j for j in range(n)])
        if self.family == "Sp":
            z = Scalar.zero()
            entries = [z] * (n * n)
            for i in range(n):
                entries[i * n + n - 1 - i] = Scalar.rational(1 if i < n // 2 else -1)
            return Matrix(n, n, entries)
        return None

    @cached_property
    def form_signs(self) -> tuple:
        """b_i with <e_i, e_{n-1-i}> = b_i for the preserved bilinear form F^-1."""
        if not self.has_form:
            return ()
        if self.family == "SO":
            return (1,) * self.n
        half = self.n // 2
        return tuple(-1 if i < half else 1 for i in range(self.n))

    def pairing(self, u, v):
        """The preserved bilinear form <u, v> = u^T F^-1 v (entries Scalar or RatFunc)."""
        n = self.n
        acc = None
        for i, b in enumerate(self.form_signs):
            a, c = u[i], v[n - 1 - i]
            if a and c:
                t = a * c if b == 1 else -(a * c)
                acc = t if acc is None else acc + t
        if acc is None:
            return RatFunc.of(0) if isinstance(u[0], RatFunc) else Scalar.zero()
        return acc

    def adjoint_transpose(self, M: Matrix) -> Matrix:
        """F M^T F^-1 (the group inverse for members of SO/Sp)."""
        F = self.form
        return F @ M.T @ F.inverse()

    def inverse_of(self, M: Matrix) -> Matrix:
        if self.has_form:
            return self.adjoint_transpose(M)
        return M.inverse()

    def _check_shape(self, M: Matrix):
        if M.shape != (self.n, self.n):
            raise ShapeError(f"{self} needs {self.n}x{self.n} matrices, got {M.rows}x{M.cols}")

    def contains(self, M: Matrix) -> bool:
        self._check_shape(M)
        if self.has_form:
            if not (self.adjoint_transpose(M) @ M == Matrix.identity(self.n)):
                return False
            if self.family == "SO":
                return M.det() == Scalar.one()
            return True
        d = M.det()
        if d.is_zero():
            raise NotInvertible("matrix is singular")
        if self.family == "SL":
            return d == Scalar.one()
        return True

    def lie_contains(self, X: Matrix) -> bool:
        self._check_shape(X)
        if self.has_form:
            return self.adjoint_transpose(X) == -X
        if self.family == "SL":
            return X.trace().is_zero()
        return True

    def require(self, *mats):
        for M in mats:
            if not self.contains(M):
                raise NotInGroup(f"matrix is not in {self}")

    @property
    def dimension(self) -> int:
        return len(self.lie_basis)

    @cached_property
    def lie_space(self) -> Subspace:
        return _lie_space(self.family, self.n)

    @cached_property
    def lie_basis(self) -> list[Matrix]:
        return self.lie_space.matrices(self.n)

    def adjoint_matrix(self, x: Matrix, x_inv: Matrix | None = None) -> Matrix:
        """Matrix of Ad(x) on the Lie algebra in the canonical Lie basis."""
        x_inv = self.inverse_of(x) if x_inv is None else x_inv
        return self.lie_operator(lambda X: x @ X @ x_inv)

    def ad_matrix(self, N: Matrix) -> Matrix:
        """Matrix of ad(N) = [N, -] on the Lie algebra."""
        return self.lie_operator(lambda X: N @ X - X @ N)

    def lie_operator(self, fn) -> Matrix:
        V = self.lie_space
        cols = [V.pivot_coordinates(fn(B).flatten()) for B in self.lie_basis]
        d = len(cols)
        return Matrix.from_ratfunc_rows([[cols[j][i] for j in range(d)] for i in range(d)])


@lru_cache(maxsize=None)
def _lie_space_cached(family, n, m, D):
    G = GroupDescriptor(family, n)
    if family == "GL":
        return Subspace.ambient(n * n)
    rows = []
    if family == "SL":
        rows.append({i * n + i: RatFunc.of(1) for i in range(n)})
    else:
        signs = G.form_signs
        # (F X^T F^-1)_{ij} = c_ij X_{n-1-j, n-1-i}; condition F X^T F^-1 + X = 0
        for i in range(n):
            for j in range(n):
                c = _transpose_sign(G, i, j)
                a, b = i * n + j, (n - 1 - j) * n + (n - 1 - i)
                row = {a: RatFunc.of(1)}
                row[b] = row.get(b, RatFunc.of(0)) + RatFunc.of(c)
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return Subspace(n * n, nullspace(rows, n * n))


def _transpose_sign(G, i, j) -> int:
    if G.family == "SO":
        return 1
    n = G.n
    s = [1 if k < n // 2 else -1 for k in range(n)]
    # J X^T J^-1 entry (i, j) = s_i * s_j * X_{n-1-j, n-1-i}
    return s[i] * s[j]


def _lie_space(family, n):
    from .scalars import current_session

    sess = current_session()
    return _lie_space_cached(family, n, sess.m, sess.denominator_bound)


# ---------------------------------------------------------------------------
# centralisers

def lie_solutions(G: GroupDescriptor, conditions) -> Subspace:
    """{X in the Lie algebra : A X = c X B for every (A, B, c)}, as row-major n^2 vectors."""
    basis = G.lie_basis
    n = G.n
    conditions = list(conditions)
    if not conditions:
        return G.lie_space
    rows = []
    for A, B, c in conditions:
        G._check_shape(A)
        G._check_shape(B)
        c = Scalar.coerce(c)
        cols = [(A @ X - (X @ B).scale(c)).flatten() for X in basis]
        for r in range(n * n):
            row = {k: RatFunc(col[r], _reduced=True) for k, col in enumerate(cols) if col[r]}
            if row:
                rows.append(row)
    vecs = []
    for sol in nullspace(rows, len(basis)):
        acc = [Scalar.zero()] * (n * n)
        for k, c in enumerate(sol):
            if c:
                acc = [a + c * b if b else a for a, b in zip(acc, basis[k].flatten())]
        vecs.append(acc)
    return Subspace(n * n, vecs)


def centralizer_space(G: GroupDescriptor, S=(), lie_elements=()) -> Subspace:
    """{X in the Lie algebra : Ad(s)X = X for s in S and [X, N] = 0 for N in lie_elements}."""
    one = Scalar.one()
    return lie_solutions(G, [(M, M, one) for M in list(S) + list(lie_elements)])


def centralizer_dim(G: GroupDescriptor, S, check=True) -> int:
    """Dimension of the centraliser of S in the Lie algebra of G."""
    S = list(S)
    if check:
        G.require(*S)
    return centralizer_space(G, S).dim


# ---------------------------------------------------------------------------
# polar decomposition

def polar_parts(M: Matrix, G: GroupDescriptor | None = None):
    """(elliptic, hyperbolic) factors of a semisimple M with monomial eigenvalues.

    Both factors are polynomials in M: the elliptic part keeps the root-of-unity
    part of every eigenvalue, the hyperbolic part keeps the q-power.
    """
    M._require_square()
    n = M.rows
    if M.is_diagonal():
        ell, hyp = [], []
        for d in M.diagonal():
            m = d.as_monomial()
            if m is None:
                raise NotMonomialSplit(f"eigenvalue {d} is not a monomial")
            ell.append(m.elliptic.to_scalar())
            hyp.append(m.hyperbolic.to_scalar())
        return Matrix.diag(ell), Matrix.diag(hyp)
    distinct = sorted(set(eigenvalues(M)))
    if not is_semisimple(M):
        raise NotSemisimple("polar decomposition needs a semisimple element")
    Mk = to_k(M)
    one = RatFunc.of(1)
    zero = RatFunc.of(0)
    E = [[zero] * n for _ in range(n)]
    H = [[zero] * n for _ in range(n)]
    for lam in distinct:
        # Lagrange projector onto the lam-eigenspace
        P = [[one if i == j else zero for j in range(n)] for i in range(n)]
        denom = one
        ls = RatFunc(lam.to_scalar(), _reduced=True)
        for mu in distinct:
            if mu == lam:
                continue
            ms = RatFunc(mu.to_scalar(), _reduced=True)
            shifted = [[Mk[i][j] - ms if i == j else Mk[i][j] for j in range(n)] for i in range(n)]
            P = matmul_k(P, shifted)
            denom = denom * (ls - ms)
        inv = denom.inverse()
        e = RatFunc(lam.elliptic.to_scalar(), _reduced=True) * inv
        h = RatFunc(lam.hyperbolic.to_scalar(), _reduced=True) * inv
        for i in range(n):
            for j in range(n):
                if P[i][j]:
                    E[i][j] = E[i][j] + e * P[i][j]
                    H[i][j] = H[i][j] + h * P[i][j]
    try:
        Em, Hm = Matrix.from_ratfunc_rows(E), Matrix.from_ratfunc_rows(H)
    except NotRepresentable as exc:
        raise NotRepresentable(f"polar parts leave the Scalar ring: {exc}") from None
    return Em, Hm


def elliptic_order(M: Matrix) -> int:
    """lcm of the multiplicative orders of the root-of-unity parts of M's eigenvalues."""
    from math import lcm

    return reduce(lcm, (lam.root_order for lam in eigenvalues(M)), 1)


# ---------------------------------------------------------------------------
# joint eigenspaces and form-adapted bases

def _char_key(chi):
    return tuple(m.sort_key() for m in chi)


def _dual(chi):
    return tuple(m.inverse() for m in chi)


def joint_eigenspaces(mats) -> dict:
    """Common eigenspaces of commuting semisimple matrices: {character: list of K-vectors}."""
    mats = list(mats)
    n = mats[0].rows
    one, zero = RatFunc.of(1), RatFunc.of(0)
    if all(M.is_diagonal() for M in mats):
        out: dict = {}
        for j in range(n):
            chi = []
            for M in mats:
                m = M[j, j].as_monomial()
                if m is None:
                    raise NotMonomialSplit(f"eigenvalue {M[j, j]} is not a monomial")
                chi.append(m)
            vec = tuple(one if i == j else zero for i in range(n))
            out.setdefault(tuple(chi), []).append(vec)
        return out
    pieces = [((), Subspace.ambient(n))]
    for M in mats:
        if not is_semisimple(M):
            raise NotSemisimple("joint eigenspaces need semisimple matrices")
        eig = eigenspaces(M)
        new = []
        for chi, V in pieces:
            for lam, E in eig:
                W = V.intersection(E)
                if W.dim:
                    new.append((chi + (lam,), W))
        pieces = new
    if sum(V.dim for _, V in pieces) != n:
        raise NotSemisimple("matrices are not simultaneously diagonalisable")
    return {chi: [tuple(RatFunc(x, _reduced=True) for x in b) for b in V.basis] for chi, V in pieces}


def _sqrt_k(x: RatFunc):
    """Exact square root of a fraction-field value of the form c * q^e, or None."""
    if x.is_zero():
        return x
    parts = []
    for s in (x.num, x.den):
        terms = s.terms
        if len(terms) != 1:
            return None
        ((e, c),) = terms.items()
        r = s.field.sqrt(c)
        if r is None or s.session.denominator_bound % (e / 2).denominator:
            return None
        parts.append(Scalar.from_cyclo(r, e / 2, s.session))
    return RatFunc(parts[0], parts[1])


def _lin_comb(coeffs, vecs):
    n = len(vecs[0])
    zero = RatFunc.of(0)
    out = [zero] * n
    for c, v in zip(coeffs, vecs):
        if c:
            out = [a + c * b if b else a for a, b in zip(out, v)]
    return tuple(out)


def _independent(vecs):
    """A maximal independent subset (by span) of K-vectors, re-expressed via RREF."""
    nz = [v for v in vecs if any(v)]
    if not nz:
        return []
    n = len(nz[0])
    from .linalg import rref_sparse

    prows, _ = rref_sparse([{j: x for j, x in enumerate(v) if x} for v in nz], n)
    zero = RatFunc.of(0)
    out = []
    for r in prows:
        vec = [zero] * n
        for c, v in r.items():
            vec[c] = v
        out.append(tuple(vec))
    return out


def _selfdual_basis(G: GroupDescriptor, vecs):
    """Basis (e_1..e_h, [c], f_h..f_1) with <e_a, f_a> = 1, others 0, and <c, c> = 1.

    Returns None when an orthogonal block needs a square root outside the session field.
    """
    ip = G.pairing
    es, fs = [], []
    center = None
    W = list(vecs)
    while W:
        if len(W) == 1 and not G.symplectic:
            v = W[0]
            s = _sqrt_k(ip(v, v))
            if s is None or s.is_zero():
                return None
            center = tuple(x / s if x else x for x in v)
            break
        e = None
        if G.symplectic:
            e = W[0]
        else:
            e = next((v for v in W if ip(v, v).is_zero()), None)
            if e is None:
                e = _find_isotropic(ip, W)
                if e is None:
                    return None
        w = next((v for v in W if ip(e, v)), None)
        if w is None:
            return None
        f = tuple(x / ip(e, w) if x else x for x in w)
        if not G.symplectic:
            # make f isotropic: f - (<f,f>/2) e
            t = ip(f, f) / 2
            f = tuple(a - t * b for a, b in zip(f, e))
        es.append(e)
        fs.append(f)
        ee, ef, fe, ff = ip(e, e), ip(e, f), ip(f, e), ip(f, f)
        det = ee * ff - fe * ef
        rest = []
        for x in W:
            xe, xf = ip(x, e), ip(x, f)
            # solve alpha*<e,e> + beta*<f,e> = -<x,e>, alpha*<e,f> + beta*<f,f> = -<x,f>
            alpha = (-xe * ff + xf * fe) / det
            beta = (-xf * ee + xe * ef) / det
            y = tuple(a + alpha * b + beta * c for a, b, c in zip(x, e, f))
            rest.append(y)
        W = _independent(rest)
    return es + ([center] if center is not None else []) + list(reversed(fs))


def _find_isotropic(ip, W):
    for i in range(len(W)):
        for j in range(i + 1, len(W)):
            u, v = W[i], W[j]
            a, b, c = ip(u, u), ip(u, v), ip(v, v)
            disc = _sqrt_k(b * b - a * c)
            if disc is None:
                continue
            # Q(x u + v) = a x^2 + 2 b x + c = 0
            x = (-b + disc) / a
            cand = tuple(x * s + t for s, t in zip(u, v))
            if any(cand) and ip(cand, cand).is_zero():
                return cand
    return None


class _Layout:
    """Columns of an eigen-adapted basis, plus the block structure that produced them."""

    def __init__(self):
        self.columns = []
        self.blocks = []  # (kind, chi, start, dim); kind in {"plain", "pair", "selfdual"}

    def add(self, kind, chi, vecs):
        self.blocks.append((kind, chi, len(self.columns), len(vecs)))
        self.columns.extend(vecs)

    def signature(self):
        return [(k, tuple(m.sort_key() for m in chi), d) for k, chi, _, d in self.blocks]

    def matrix_k(self):
        n = len(self.columns)
        return [[self.columns[j][i] for j in range(n)] for i in range(n)]


def adapted_basis(G: GroupDescriptor, blocks: dict) -> _Layout | None:
    layout = _Layout()
    order = sorted(blocks, key=_char_key)
    if not G.has_form:
        for chi in order:
            layout.add("plain", chi, blocks[chi])
        return layout
    ip = G.pairing
    done = set()
    selfdual = []
    for chi in order:
        if chi in done:
            continue
        dchi = _dual(chi)
        if dchi == chi:
            selfdual.append(chi)
            done.add(chi)
            continue
        if dchi not in blocks or len(blocks[dchi]) != len(blocks[chi]):
            raise NotInGroup("eigenspaces are not paired by the invariant form")
        v, u0 = blocks[chi], blocks[dchi]
        d = len(v)
        gram = [[ip(v[a], u0[b]) for b in range(d)] for a in range(d)]
        T = inverse_k(gram)
        u = [_lin_comb([T[c][b] for c in range(d)], u0) for b in range(d)]
        layout.add("pair", chi, list(v) + u)
        done.update({chi, dchi})
    for chi in selfdual:
        basis = _selfdual_basis(G, blocks[chi])
        if basis is None:
            return None
        layout.add("selfdual", chi, basis)
    return layout


def _flip_orientation(layout: _Layout, G: GroupDescriptor) -> bool:
    """Apply a determinant -1 isometry inside one self-dual block; False if none exists."""
    for kind, chi, start, d in layout.blocks:
        if kind != "selfdual":
            continue
        cols = layout.columns
        if d % 2:
            mid = start + d // 2
            cols[mid] = tuple(-x for x in cols[mid])
        else:
            cols[start], cols[start + d - 1] = cols[start + d - 1], cols[start]
        return True
    return False


def _det_of_k(rows):
    from .linalg import _det_k

    return _det_k(rows)


def conjugator_for_tuples(G: GroupDescriptor, xs, ys, full_orthogonal=False) -> ConjugacyVerdict:
    """Decide whether the commuting tuples xs, ys are simultaneously G-conjugate.

    Works for tuples of commuting semisimple elements with monomial eigenvalues
    by matching form-adapted joint eigenbases.  The witness g satisfies
    g x_i g^-1 = y_i for every i.
    """
    xs, ys = list(xs), list(ys)
    bx, by = joint_eigenspaces(xs), joint_eigenspaces(ys)
    mx = {chi: len(v) for chi, v in bx.items()}
    my = {chi: len(v) for chi, v in by.items()}
    if mx != my:
        diff = sorted(set(mx.items()) ^ set(my.items()), key=lambda t: _char_key(t[0]))
        chi, _ = diff[0]
        return ConjugacyVerdict.no(
            f"joint eigenvalue {[str(m) for m in chi]} has multiplicity {mx.get(chi, 0)} vs {my.get(chi, 0)}"
        )
    la, lb = adapted_basis(G, bx), adapted_basis(G, by)
    if la is None or lb is None:
        return ConjugacyVerdict.unknown("orthogonal block needs a square root outside the session field")
    flipped = False
    Pb = lb.matrix_k()
    if G.family == "SO":
        d = _det_of_k(matmul_k(Pb, inverse_k(la.matrix_k())))
        if d != RatFunc.of(1):
            if G.n % 2:
                la.columns = [tuple(-x for x in c) for c in la.columns]
                flipped = True
            elif _flip_orientation(la, G):
                flipped = True
            elif not full_orthogonal:
                return ConjugacyVerdict.no(
                    "every O-conjugator has determinant -1: no joint eigenspace is self-dual, "
                    "so the centraliser in O lies in SO",
                    o_conjugate=True,
                )
    g = matmul_k(Pb, inverse_k(la.matrix_k()))
    if G.family == "SL":
        d = _det_of_k(g)
        if d != RatFunc.of(1):
            # rescale one eigenvector on the source side
            la.columns[0] = tuple(x * d for x in la.columns[0])
            g = matmul_k(Pb, inverse_k(la.matrix_k()))
    try:
        gm = Matrix.from_ratfunc_rows(g)
    except NotRepresentable as exc:
        return ConjugacyVerdict.unknown(f"conjugator is not representable over the Scalar ring: {exc}")
    for x, y in zip(xs, ys):
        if not gm @ x == y @ gm:
            raise AssertionError("constructed conjugator fails to intertwine")
    return ConjugacyVerdict.yes(gm, orientation_flipped=flipped)


# ---------------------------------------------------------------------------
# single elements

def so_even_discriminant(G: GroupDescriptor, x: Matrix) -> Scalar:
    """The SO-class separator prod (x_i - x_i^-1) for a canonical half of the eigenvalue pairs.

    One eigenvalue is picked from every inverse pair by the order (exponent,
    root index); W is the sum of the picked eigenspaces, a Lagrangian.  The
    product is multiplied by -1 when W lies in the other family of Lagrangians
    than span(e_1..e_n).
    """
    if G.family != "SO" or G.n % 2:
        raise ValueError("the discriminant is defined for SO of even size")
    G._check_shape(x)
    spaces = eigenspaces(x)
    if not is_semisimple(x):
        raise NotSemisimple("discriminant needs a semisimple element")
    for lam, _ in spaces:
        if lam.exponent == 0 and lam.k in (0, lam.session.field.root_order // 2):
            raise HasUnitEigenvalue(f"eigenvalue {lam} is +1 or -1")
    h = G.n // 2
    chosen = []
    for lam, V in spaces:
        if lam.sort_key() < lam.inverse().sort_key():
            chosen.append((lam, V))
    vecs = [b for _, V in chosen for b in V.basis]
    Wmat = Matrix(G.n, len(vecs), (vecs[j][i] for i in range(G.n) for j in range(len(vecs))))
    lower = Wmat.submatrix(range(h, G.n), range(len(vecs)))
    meet = len(vecs) - rank(lower)
    value = Scalar.one()
    for lam, V in chosen:
        s = lam.to_scalar()
        value = value * (s - s.inverse()) ** V.dim
    if (h - meet) % 2:
        value = -value
    return value


def conjugate_semisimple(G: GroupDescriptor, x: Matrix, y: Matrix, full_orthogonal=False) -> ConjugacyVerdict:
    """Decide G-conjugacy of two semisimple elements with monomial eigenvalues.

    ``full_orthogonal`` decides conjugacy under O_n instead of SO_n.
    """
    G.require(x, y)
    for M in (x, y):
        if not is_semisimple(M):
            raise NotSemisimple("conjugacy test needs semisimple elements")
    ex, ey = eigenvalues(x), eigenvalues(y)
    if ex != ey:
        return ConjugacyVerdict.no(
            "characteristic polynomials differ: eigenvalues "
            f"{[str(m) for m in ex]} vs {[str(m) for m in ey]}"
        )
    criterion = None
    if G.family == "SO" and G.n % 2 == 0 and not full_orthogonal:
        unit = any(m.exponent == 0 and m.k in (0, m.session.field.root_order // 2) for m in ex)
        if unit:
            criterion = True
        else:
            dx, dy = so_even_discriminant(G, x), so_even_discriminant(G, y)
            if dx == dy:
                criterion = True
            elif dx == -dy:
                criterion = False
            else:
                raise AssertionError("discriminants must agree up to sign")
    verdict = conjugator_for_tuples(G, [x], [y], full_orthogonal=full_orthogonal)
    if criterion is not None and verdict.decided and verdict.conjugate != criterion:
        raise AssertionError("SO discriminant criterion and witness construction disagree")
    if criterion is False and verdict.decided:
        dx, dy = so_even_discriminant(G, x), so_even_discriminant(G, y)
        verdict.certificate = (
            f"same characteristic polynomial, no eigenvalue +-1, discriminants {dx} vs {dy}; "
            + (verdict.certificate or "")
        )
        verdict.details["discriminants"] = [str(dx), str(dy)]
    if criterion is False and not verdict.decided:
        return ConjugacyVerdict.no("discriminants differ in sign", discriminants=[str(dx), str(dy)])
    return verdict
