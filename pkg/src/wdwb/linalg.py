"""Dense exact linear algebra over :class:`~wdwb.scalars.Scalar`.

Matrices hold Scalars.  Elimination runs over the fraction field
(:class:`~wdwb.scalars.RatFunc`) on sparse rows, and results are brought back
to Scalars by clearing denominators.  Characteristic polynomials use the
division-free Berkowitz recurrence.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import product

from .errors import NotInvertible, NotMonomialSplit, NotRepresentable, ShapeError
from .scalars import (
    Monomial,
    RatFunc,
    Scalar,
    common_denominator,
    current_session,
    exact_divide,
    laurent_gcd,
    parse_scalar,
    render_scalar,
    unit_part,
)


class Matrix:
    """Immutable rows x cols matrix of Scalars (row-major)."""

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows, self.cols, self._e = rows, cols, entries
        self._hash = None

    # construction

    @classmethod
    def from_rows(cls, rows) -> Matrix:
        rows = [list(r) for r in rows]
        if not rows:
            raise ShapeError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), width, (Scalar.coerce(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Matrix:
        cols = rows if cols is None else cols
        z = Scalar.zero()
        return cls(rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values) -> Matrix:
        values = [Scalar.coerce(v) for v in values]
        n = len(values)
        z = Scalar.zero()
        return cls(n, n, (values[i] if i == j else z for i in range(n) for j in range(n)))

    @classmethod
    def elementary(cls, n: int, i: int, j: int, value=1) -> Matrix:
        """The matrix unit value * E_ij."""
        z = Scalar.zero()
        entries = [z] * (n * n)
        entries[i * n + j] = Scalar.coerce(value)
        return cls(n, n, entries)

    @classmethod
    def permutation(cls, perm) -> Matrix:
        """Matrix sending e_j to e_perm[j]."""
        n = len(perm)
        one, z = Scalar.one(), Scalar.zero()
        entries = [z] * (n * n)
        for j, i in enumerate(perm):
            entries[i * n + j] = one
        return cls(n, n, entries)

    @classmethod
    def block_diag(cls, blocks) -> Matrix:
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        z = Scalar.zero()
        entries = [z] * (n * m)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    entries[(r0 + i) * m + c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls(n, m, entries)

    @classmethod
    def from_ratfunc_rows(cls, rows) -> Matrix:
        """Convert a fraction-field matrix; raises NotRepresentable on a true denominator."""
        return cls(len(rows), len(rows[0]), (x.to_scalar() for r in rows for x in r))

    # access

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        return self._e

    def __getitem__(self, idx):
        i, j = idx
        return self._e[i * self.cols + j]

    def row(self, i):
        return self._e[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return self._e[j::self.cols]

    def tolist(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def _require_square(self):
        if self.rows != self.cols:
            raise ShapeError(f"matrix is {self.rows}x{self.cols}, not square")

    def is_zero(self) -> bool:
        return not any(self._e)

    def is_diagonal(self) -> bool:
        c = self.cols
        return all(not x for k, x in enumerate(self._e) if k // c != k % c)

    def is_upper_triangular(self) -> bool:
        c = self.cols
        return all(not x for k, x in enumerate(self._e) if k // c > k % c)

    def diagonal(self):
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    # algebra

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in addition")
        return Matrix(self.rows, self.cols, (a + b for a, b in zip(self._e, other._e)))

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in subtraction")
        return Matrix(self.rows, self.cols, (a - b for a, b in zip(self._e, other._e)))

    def __neg__(self):
        return Matrix(self.rows, self.cols, (-a for a in self._e))

    def scale(self, s) -> Matrix:
        s = Scalar.coerce(s)
        return Matrix(self.rows, self.cols, (s * a for a in self._e))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        z = Scalar.zero()
        out = [z] * (n * p)
        B = other._e
        for i in range(n):
            base = i * m
            acc = [None] * p
            for k in range(m):
                a = self._e[base + k]
                if not a:
                    continue
                rb = k * p
                for j in range(p):
                    b = B[rb + j]
                    if b:
                        t = a * b
                        acc[j] = t if acc[j] is None else acc[j] + t
            for j in range(p):
                if acc[j] is not None:
                    out[i * p + j] = acc[j]
        return Matrix(n, p, out)

    def __pow__(self, k: int) -> Matrix:
        self._require_square()
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    @property
    def T(self) -> Matrix:
        return Matrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def conj(self) -> Matrix:
        return Matrix(self.rows, self.cols, (a.conj() for a in self._e))

    def trace(self) -> Scalar:
        self._require_square()
        return reduce(lambda a, b: a + b, self.diagonal(), Scalar.zero())

    def kron(self, other: Matrix) -> Matrix:
        r, c = self.rows * other.rows, self.cols * other.cols
        out = []
        for i1 in range(self.rows):
            for i2 in range(other.rows):
                for j1 in range(self.cols):
                    a = self[i1, j1]
                    for j2 in range(other.cols):
                        out.append(a * other[i2, j2] if a else a)
        return Matrix(r, c, out)

    def commutes_with(self, other: Matrix) -> bool:
        return self @ other == other @ self

    def submatrix(self, rows, cols) -> Matrix:
        return Matrix(len(rows), len(cols), (self[i, j] for i in rows for j in cols))

    def det(self) -> Scalar:
        self._require_square()
        if self.is_upper_triangular() or self.T.is_upper_triangular():
            return reduce(lambda a, b: a * b, self.diagonal(), Scalar.one())
        d = _det_k(to_k(self))
        return d.to_scalar()

    def inverse(self) -> Matrix:
        self._require_square()
        if self.is_diagonal():
            return Matrix.diag([x.inverse() for x in self.diagonal()])
        return Matrix.from_ratfunc_rows(inverse_k(to_k(self)))

    def flatten(self):
        return self._e

    # comparison / io

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._e))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.to_json()})"

    def to_json(self):
        return [[render_scalar(x) for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data, sess=None) -> Matrix:
        if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
            raise ShapeError("a matrix must be a non-empty list of rows")
        return cls.from_rows([[parse_scalar(x, sess) if isinstance(x, str) else x for x in r] for r in data])


# ---------------------------------------------------------------------------
# fraction-field helpers (internal)

def to_k(M: Matrix):
    return [[RatFunc(x, _reduced=True) for x in M.row(i)] for i in range(M.rows)]


def _det_k(rows):
    rows = [list(r) for r in rows]
    n = len(rows)
    det = RatFunc.of(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c]), None)
        if piv is None:
            return RatFunc.of(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c][c]
        det = det * p
        inv = p.inverse()
        for r in range(c + 1, n):
            f = rows[r][c]
            if f:
                f = f * inv
                rows[r] = [a - f * b if b else a for a, b in zip(rows[r], rows[c])]
    return det


def inverse_k(rows):
    n = len(rows)
    one, zero = RatFunc.of(1), RatFunc.of(0)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise NotInvertible("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [x * inv if x else x for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b if b else a for a, b in zip(aug[r], aug[c])]
    return [r[n:] for r in aug]


def matmul_k(A, B):
    n, m, p = len(A), len(B), len(B[0])
    zero = RatFunc.of(0)
    out = []
    for i in range(n):
        row = [zero] * p
        for k in range(m):
            a = A[i][k]
            if a:
                for j in range(p):
                    if B[k][j]:
                        row[j] = row[j] + a * B[k][j]
        out.append(row)
    return out


def rref_sparse(rows, ncols):
    """Reduced row echelon form of sparse rows (dicts col -> RatFunc).

    Returns (pivot_rows, pivots) where pivot_rows[i] has a 1 at column pivots[i]
    and zeros at every other pivot column.
    """
    pivot_rows: list[dict] = []
    pivots: list[int] = []
    where: dict[int, int] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        # eliminate existing pivots
        changed = True
        while changed:
            changed = False
            for c in sorted(row):
                if c in where:
                    f = row[c]
                    prow = pivot_rows[where[c]]
                    for cc, vv in prow.items():
                        nv = row.get(cc, None)
                        nv = -(f * vv) if nv is None else nv - f * vv
                        if nv:
                            row[cc] = nv
                        else:
                            row.pop(cc, None)
                    changed = True
                    break
        if not row:
            continue
        c0 = min(row)
        inv = row[c0].inverse()
        row = {c: v * inv for c, v in row.items()}
        # clear the new pivot column from existing rows
        for idx, prow in enumerate(pivot_rows):
            if c0 in prow:
                f = prow[c0]
                for cc, vv in row.items():
                    nv = prow.get(cc, None)
                    nv = -(f * vv) if nv is None else nv - f * vv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        where[c0] = len(pivot_rows)
        pivot_rows.append(row)
        pivots.append(c0)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [pivot_rows[i] for i in order], [pivots[i] for i in order]


def _scalar_vector(vec_k: list) -> tuple:
    """Clear denominators and normalise a fraction-field vector to a primitive Scalar vector."""
    if all(v.is_scalar() for v in vec_k):
        return normalize_vector([v.num for v in vec_k])
    den = common_denominator(vec_k)
    out = []
    for v in vec_k:
        if v.is_zero():
            out.append(v.num)
        else:
            out.append(exact_divide(v.num * den, v.den))
    return normalize_vector(out)


def normalize_vector(vec) -> tuple:
    """Divide out the content and make the first nonzero entry's unit part 1."""
    nz = [x for x in vec if x]
    if not nz:
        return tuple(vec)
    if all(len(x.terms) > 1 for x in nz):
        g = reduce(laurent_gcd, nz)
        if len(g.terms) > 1:
            vec = [exact_divide(x, g) if x else x for x in vec]
    lead = next(x for x in vec if x)
    u = unit_part(lead).inverse()
    return tuple(x * u if x else x for x in vec)


def nullspace(rows, ncols) -> list[tuple]:
    """Primitive Scalar basis of the kernel of the sparse system ``rows``."""
    prows, pivots = rref_sparse(rows, ncols)
    pivset = set(pivots)
    zero = RatFunc.of(0)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = [zero] * ncols
        vec[f] = RatFunc.of(1)
        for prow, p in zip(prows, pivots):
            v = prow.get(f)
            if v:
                vec[p] = -v
        basis.append(_scalar_vector(vec))
    return basis


def matrix_rows_sparse(M: Matrix):
    return [{j: RatFunc(x, _reduced=True) for j, x in enumerate(M.row(i)) if x} for i in range(M.rows)]


def rank(M: Matrix) -> int:
    return len(rref_sparse(matrix_rows_sparse(M), M.cols)[1])


# ---------------------------------------------------------------------------

class Subspace:
    """A subspace of K^n with a canonical basis: reduced echelon, each vector primitive."""

    __slots__ = ("n", "basis", "pivots")

    def __init__(self, n: int, vectors=()):
        self.n = n
        rows = []
        for v in vectors:
            if len(v) != n:
                raise ShapeError(f"vector of length {len(v)} in ambient dimension {n}")
            rows.append({j: RatFunc(Scalar.coerce(x), _reduced=True) for j, x in enumerate(v) if x})
        prows, pivots = rref_sparse(rows, n)
        zero = RatFunc.of(0)
        basis = []
        for prow in prows:
            vec = [zero] * n
            for c, val in prow.items():
                vec[c] = val
            basis.append(_scalar_vector(vec))
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def ambient(cls, n: int) -> Subspace:
        one, z = Scalar.one(), Scalar.zero()
        return cls(n, [[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zero_space(cls, n: int) -> Subspace:
        return cls(n, [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim})"

    def basis_matrix(self) -> Matrix:
        """n x dim matrix whose columns are the basis vectors."""
        if not self.basis:
            raise ShapeError("zero subspace has no basis matrix")
        return Matrix(self.n, self.dim, (self.basis[j][i] for i in range(self.n) for j in range(self.dim)))

    def contains(self, v) -> bool:
        return Subspace(self.n, list(self.basis) + [tuple(v)]).dim == self.dim

    def __contains__(self, v):
        return self.contains(v)

    def issubset(self, other: Subspace) -> bool:
        return Subspace(self.n, list(self.basis) + list(other.basis)).dim == other.dim

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.n, list(self.basis) + list(other.basis))

    def intersection(self, other: Subspace) -> Subspace:
        if not self.basis or not other.basis:
            return Subspace.zero_space(self.n)
        # solve sum a_i u_i = sum b_j v_j
        d1 = self.dim
        cols = list(self.basis) + [tuple(-x for x in v) for v in other.basis]
        rows = [{j: RatFunc(c[i], _reduced=True) for j, c in enumerate(cols) if c[i]} for i in range(self.n)]
        vecs = []
        for sol in nullspace(rows, len(cols)):
            v = [Scalar.zero()] * self.n
            for j in range(d1):
                if sol[j]:
                    v = [a + sol[j] * b for a, b in zip(v, self.basis[j])]
            vecs.append(v)
        return Subspace(self.n, vecs)

    def coordinates(self, v) -> list[RatFunc]:
        """Coordinates of v in the canonical basis (fraction-field values)."""
        coords = []
        resid = [RatFunc(Scalar.coerce(x), _reduced=True) for x in v]
        for b, p in zip(self.basis, self.pivots):
            c = resid[p] / RatFunc(b[p], _reduced=True) if resid[p] else RatFunc.of(0)
            coords.append(c)
            if c:
                resid = [r - c * RatFunc(x, _reduced=True) if x else r for r, x in zip(resid, b)]
        if any(resid):
            raise ValueError("vector is not in the subspace")
        return coords

    def pivot_coordinates(self, v) -> list[RatFunc]:
        """Coordinates of a vector already known to lie in the subspace (read off at the pivots)."""
        out = []
        for b, p in zip(self.basis, self.pivots):
            x = v[p]
            out.append(RatFunc(x, _reduced=True) / RatFunc(b[p], _reduced=True) if x else RatFunc.of(0))
        return out

    def matrices(self, rows: int, cols: int | None = None) -> list[Matrix]:
        cols = rows if cols is None else cols
        return [Matrix(rows, cols, v) for v in self.basis]


# ---------------------------------------------------------------------------
# polynomials: lists of Scalars, lowest degree first

def poly_trim(p):
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def poly_mul(a, b):
    z = Scalar.zero()
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return out


def poly_eval(p, x):
    acc = Scalar.zero() if isinstance(x, Scalar) else RatFunc.of(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_from_roots(roots):
    p = [Scalar.one()]
    for r in roots:
        p = poly_mul(p, [-r, Scalar.one()])
    return p


def poly_str(p) -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        body = render_scalar(c)
        if k:
            x = "x" if k == 1 else f"x^{k}"
            body = x if body == "1" else f"({body})*{x}"
        terms.append(body)
    return " + ".join(terms) or "0"


def _berkowitz(A, zero, one):
    """Coefficients of det(xI - A), highest degree first, for a square list-of-lists A."""
    n = len(A)
    vect = [one, -A[0][0]]
    for r in range(1, n):
        R = A[r][:r]
        vec = [A[i][r] for i in range(r)]
        col = [one, -A[r][r]]
        for _ in range(r):
            s = zero
            for a, b in zip(R, vec):
                if a and b:
                    s = s + a * b
            col.append(-s)
            nxt = []
            for i in range(r):
                t = zero
                for j in range(r):
                    if A[i][j] and vec[j]:
                        t = t + A[i][j] * vec[j]
                nxt.append(t)
            vec = nxt
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                if col[i - j] and vect[j]:
                    s = s + col[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect


def char_poly(M: Matrix) -> list[Scalar]:
    """det(xI - M) as a coefficient list, lowest degree first (Berkowitz, division free)."""
    M._require_square()
    if M.is_upper_triangular() or M.T.is_upper_triangular():
        return poly_from_roots(M.diagonal())
    return list(reversed(_berkowitz(M.tolist(), Scalar.zero(), Scalar.one())))


def _upper_hull_slopes(points):
    """Slopes (with horizontal lengths) of the upper convex hull of sorted points."""
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or below segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out.append((Fraction(y2 - y1, 1) / (x2 - x1), x2 - x1))
    return out


def monomial_roots(p) -> list[Monomial]:
    """Roots of a monic polynomial that splits into factors (x - zeta q^e).

    Candidate exponents come from the Newton polygon with respect to the degree
    in q; candidate roots of unity are all roots of unity of the session field.
    """
    p = poly_trim([Scalar.coerce(c) for c in p])
    if p[-1] != Scalar.one():
        raise ValueError("polynomial must be monic")
    sess = p[-1].session
    F = sess.field
    roots: list[Monomial] = []
    if not p[0]:
        raise NotMonomialSplit("polynomial has the root 0")
    points = [(k, max(c.terms)) for k, c in enumerate(p) if c]
    for slope, length in _upper_hull_slopes(points):
        e = -slope
        if sess.denominator_bound % e.denominator:
            raise NotMonomialSplit(f"root exponent {e} exceeds the session denominator bound")
        found = 0
        for k in range(F.root_order):
            lam = Scalar.from_cyclo(F.root(k), e, sess)
            while found < length and not poly_eval(p, lam):
                roots.append(Monomial(k, e, sess))
                p = _deflate(p, lam)
                found += 1
            if found == length:
                break
        if found < length:
            raise NotMonomialSplit(f"polynomial does not split into monomials (slope {e})")
    return sorted(roots)


def _deflate(p, lam):
    """Divide p by (x - lam), assuming lam is a root."""
    n = len(p) - 1
    out = [None] * n
    acc = p[n]
    for k in range(n - 1, -1, -1):
        out[k] = acc
        acc = p[k] + acc * lam
    return out


def eigenvalues(M: Matrix) -> list[Monomial]:
    M._require_square()
    if M.is_upper_triangular() or M.T.is_upper_triangular():
        out = []
        for d in M.diagonal():
            m = d.as_monomial()
            if m is None:
                raise NotMonomialSplit(f"diagonal entry {d} is not a monomial")
            out.append(m)
        return sorted(out)
    return monomial_roots(char_poly(M))


def kernel(M: Matrix) -> Subspace:
    return Subspace(M.cols, nullspace(matrix_rows_sparse(M), M.cols))


def eigenspace(M: Matrix, lam) -> Subspace:
    lam = lam.to_scalar() if isinstance(lam, Monomial) else Scalar.coerce(lam)
    return kernel(M - Matrix.identity(M.rows).scale(lam))


def eigenspaces(M: Matrix) -> list[tuple[Monomial, Subspace]]:
    distinct = sorted(set(eigenvalues(M)))
    if M.is_diagonal():
        out = []
        n = M.rows
        one, z = Scalar.one(), Scalar.zero()
        for lam in distinct:
            s = lam.to_scalar()
            vecs = [[one if i == j else z for i in range(n)] for j in range(n) if M[j, j] == s]
            out.append((lam, Subspace(n, vecs)))
        return out
    return [(lam, eigenspace(M, lam)) for lam in distinct]


def _poly_k_gcd(a, b):
    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        a = list(a)
        inv = b[-1].inverse()
        while len(a) >= len(b) and a:
            c = a[-1] * inv
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                if bj:
                    a[shift + j] = a[shift + j] - c * bj
            a = trim(a[:-1] if not a[-1] else a)
        a, b = b, a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _poly_k_div(a, b):
    a = list(a)
    inv = b[-1].inverse()
    out = [RatFunc.of(0)] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        out[i] = c
        for j, bj in enumerate(b):
            a[i + j] = a[i + j] - c * bj
    return out


def _poly_matrix_eval_k(p, Mk):
    n = len(Mk)
    zero = RatFunc.of(0)
    acc = [[zero] * n for _ in range(n)]
    for c in reversed(p):
        acc = matmul_k(acc, Mk)
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    return acc


def is_semisimple(M: Matrix) -> bool:
    """True iff the minimal polynomial of M is squarefree."""
    M._require_square()
    if M.is_diagonal():
        return True
    n = M.rows
    try:
        distinct = sorted(set(eigenvalues(M)))
    except NotMonomialSplit:
        distinct = None
    if distinct is not None:
        prod = Matrix.identity(n)
        for lam in distinct:
            prod = prod @ (M - Matrix.identity(n).scale(lam.to_scalar()))
            if prod.is_zero():
                return True
        return prod.is_zero()
    p = [RatFunc(c, _reduced=True) for c in char_poly(M)]
    dp = [p[k] * k for k in range(1, len(p))]
    g = _poly_k_gcd(p, dp)
    rad = _poly_k_div(p, g)
    val = _poly_matrix_eval_k(rad, to_k(M))
    return not any(x for r in val for x in r)


def intertwiner_space(pairs) -> Subspace:
    """Basis of {X : X A_i = B_i X for all i}, as vectors of length n^2 (row-major)."""
    pairs = list(pairs)
    if not pairs:
        raise ShapeError("need at least one pair")
    n = pairs[0][0].rows
    for A, B in pairs:
        if A.shape != (n, n) or B.shape != (n, n):
            raise ShapeError("all matrices must be square of the same size")
    rows = []
    for A, B in pairs:
        for r in range(n):
            for c in range(n):
                eq = {}
                for k in range(n):
                    a = A[k, c]
                    if a:
                        idx = r * n + k
                        eq[idx] = eq.get(idx, RatFunc.of(0)) + RatFunc(a, _reduced=True)
                    b = B[r, k]
                    if b:
                        idx = k * n + c
                        eq[idx] = eq.get(idx, RatFunc.of(0)) - RatFunc(b, _reduced=True)
                eq = {k: v for k, v in eq.items() if v}
                if eq:
                    rows.append(eq)
    return Subspace(n * n, nullspace(rows, n * n))


def invariant_subspace(M_list, V: Subspace | None = None) -> Subspace:
    """Largest subspace of V fixed pointwise by every matrix in M_list."""
    M_list = list(M_list)
    if not M_list:
        raise ShapeError("need at least one matrix")
    n = M_list[0].rows
    if any(M.shape != (n, n) for M in M_list):
        raise ShapeError("matrices must be square of the same size")
    V = V if V is not None else Subspace.ambient(n)
    if V.n != n:
        raise ShapeError("subspace and matrices have different dimensions")
    if V.dim == 0:
        return V
    P = V.basis_matrix()
    I = Matrix.identity(n)
    rows = []
    for M in M_list:
        rows.extend(matrix_rows_sparse((M - I) @ P))
    sols = nullspace(rows, V.dim)
    vecs = [(P @ Matrix(V.dim, 1, s)).flatten() for s in sols]
    return Subspace(n, vecs)


def restrict(M: Matrix, V: Subspace) -> Matrix:
    """Matrix of M on an M-stable subspace V, in V's canonical basis (exact Scalars)."""
    cols = []
    for b in V.basis:
        img = (M @ Matrix(V.n, 1, b)).flatten()
        cols.append(V.coordinates(img))
    d = V.dim
    return Matrix.from_ratfunc_rows([[cols[j][i] for j in range(d)] for i in range(d)])


def restricted_eigenvalues(M: Matrix, V: Subspace) -> list[Monomial]:
    """Eigenvalues of an M-stable subspace's restriction."""
    if V.dim == 0:
        return []
    cols = []
    for b in V.basis:
        img = (M @ Matrix(V.n, 1, b)).flatten()
        cols.append(V.coordinates(img))
    d = V.dim
    rows = [[cols[j][i] for j in range(d)] for i in range(d)]
    if all(x.is_scalar() for r in rows for x in r):
        return eigenvalues(Matrix.from_ratfunc_rows(rows))
    coeffs = _berkowitz(rows, RatFunc.of(0), RatFunc.of(1))
    return monomial_roots([c.to_scalar() for c in reversed(coeffs)])


def vector_kron(u, v):
    return tuple(a * b for a, b in product(u, v))
