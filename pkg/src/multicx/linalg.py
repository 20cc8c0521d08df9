"""Exact dense linear algebra over a ground field.

Everything is deterministic: kernels, images and quotient representatives
are always returned in reduced row echelon form, so identical inputs give
byte-identical outputs across runs.
"""

from .errors import ContainmentViolation


class Matrix:
    """Immutable dense matrix over a Field; rows are tuples of scalars.

    Zero-row and zero-column shapes are fully supported since bigraded
    components are very often empty.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, nrows, ncols, rows):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(tuple(r) for r in rows)
        if len(self.rows) != nrows or any(len(r) != ncols for r in self.rows):
            raise ValueError("row data does not match declared shape")

    @classmethod
    def zero(cls, field, nrows, ncols):
        row = (field.zero,) * ncols
        return cls(field, nrows, ncols, (row,) * nrows)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n,
                   tuple(tuple(field.one if i == j else field.zero for j in range(n))
                         for i in range(n)))

    @classmethod
    def from_rows(cls, field, rows):
        rows = [tuple(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_entries(cls, field, nrows, ncols, entries):
        """Build from a sparse {(i, j): value} mapping."""
        data = [[field.zero] * ncols for _ in range(nrows)]
        for (i, j), v in entries.items():
            data[i][j] = v
        return cls(field, nrows, ncols, data)

    def is_zero(self):
        z = self.field.zero
        return all(v == z for row in self.rows for v in row)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.rows!r})"

    def __add__(self, other):
        f = self.field
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in matrix sum")
        return Matrix(f, self.nrows, self.ncols,
                      [tuple(f.add(a, b) for a, b in zip(r1, r2))
                       for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.field
        return Matrix(f, self.nrows, self.ncols,
                      [tuple(f.neg(a) for a in r) for r in self.rows])

    def scale(self, c):
        f = self.field
        return Matrix(f, self.nrows, self.ncols,
                      [tuple(f.mul(c, a) for a in r) for r in self.rows])

    def __mul__(self, other):
        f = self.field
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} * "
                             f"{other.nrows}x{other.ncols}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        if other.nrows == 0:
            return Matrix.zero(f, self.nrows, other.ncols)
        out = []
        for r in self.rows:
            out_row = []
            for c in cols:
                acc = f.zero
                for a, b in zip(r, c):
                    if a != f.zero and b != f.zero:
                        acc = f.add(acc, f.mul(a, b))
                out_row.append(acc)
            out.append(tuple(out_row))
        return Matrix(f, self.nrows, other.ncols, out)

    def apply(self, vec):
        """Matrix-vector product; vec is a sequence of length ncols."""
        f = self.field
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(
            _dot(f, row, vec) for row in self.rows
        )

    def transpose(self):
        return Matrix(self.field, self.ncols, self.nrows,
                      list(zip(*self.rows)) if self.rows else [() for _ in range(self.ncols)])


def _dot(f, u, v):
    acc = f.zero
    for a, b in zip(u, v):
        if a != f.zero and b != f.zero:
            acc = f.add(acc, f.mul(a, b))
    return acc


def vstack(mats):
    mats = list(mats)
    if not mats:
        raise ValueError("vstack of nothing")
    f = mats[0].field
    ncols = mats[0].ncols
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend(m.rows)
    return Matrix(f, len(rows), ncols, rows)


def hstack(mats):
    mats = list(mats)
    if not mats:
        raise ValueError("hstack of nothing")
    f = mats[0].field
    nrows = mats[0].nrows
    rows = []
    for i in range(nrows):
        row = []
        for m in mats:
            if m.nrows != nrows:
                raise ValueError("hstack row mismatch")
            row.extend(m.rows[i])
        rows.append(tuple(row))
    return Matrix(f, nrows, sum(m.ncols for m in mats), rows)


def block_diag(field, mats):
    nrows = sum(m.nrows for m in mats)
    ncols = sum(m.ncols for m in mats)
    data = [[field.zero] * ncols for _ in range(nrows)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.rows):
            for j, v in enumerate(row):
                data[r0 + i][c0 + j] = v
        r0 += m.nrows
        c0 += m.ncols
    return Matrix(field, nrows, ncols, data)


def rref(mat):
    """Reduced row echelon form; returns (Matrix, pivot column tuple)."""
    f = mat.field
    rows = [list(r) for r in mat.rows]
    pivots = []
    r = 0
    for c in range(mat.ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != f.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != f.zero:
                coef = rows[i][c]
                rows[i] = [f.sub(a, f.mul(coef, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    nonzero = rows[:r]
    return Matrix(f, r, mat.ncols, nonzero), tuple(pivots)


def rank(mat):
    return rref(mat)[0].nrows


def row_space(mat):
    """Canonical (rref) basis of the row space; rows are the basis vectors."""
    return rref(mat)[0]


def column_space(mat):
    """Canonical basis of the column space, as row vectors of length nrows."""
    return row_space(mat.transpose())


def kernel(mat):
    """Canonical basis of the null space of mat, one vector per row.

    Built from the rref free columns, then re-echelonized so the result
    is in reduced row echelon form.
    """
    f = mat.field
    R, pivots = rref(mat)
    pivset = set(pivots)
    free = [c for c in range(mat.ncols) if c not in pivset]
    vecs = []
    for c in free:
        v = [f.zero] * mat.ncols
        v[c] = f.one
        for i, p in enumerate(pivots):
            v[p] = f.neg(R.rows[i][c])
        vecs.append(tuple(v))
    basis = Matrix(f, len(vecs), mat.ncols, vecs)
    return rref(basis)[0]


def solve(mat, target):
    """One solution x of mat @ x = target, or None if the system is infeasible.

    When None is returned the caller can certify infeasibility via
    rank([mat | target]) > rank(mat); `solve_certified` packages that.
    """
    f = mat.field
    if len(target) != mat.nrows:
        raise ValueError("target length mismatch")
    aug = Matrix(f, mat.nrows, mat.ncols + 1,
                 [row + (t,) for row, t in zip(mat.rows, target)])
    R, pivots = rref(aug)
    if mat.ncols in pivots:
        return None
    x = [f.zero] * mat.ncols
    for i, p in enumerate(pivots):
        x[p] = R.rows[i][mat.ncols]
    return tuple(x)


def solve_certified(mat, target):
    """Like solve, but returns (x, certificate) with a rank certificate on failure."""
    x = solve(mat, target)
    if x is not None:
        return x, None
    base = rank(mat)
    aug = Matrix(mat.field, mat.nrows, mat.ncols + 1,
                 [row + (t,) for row, t in zip(mat.rows, target)])
    return None, {"rank": base, "rank_augmented": rank(aug)}


def reduce_mod_rows(basis, pivots, vec):
    """Subtract the projection of vec onto the span of rref rows `basis`."""
    f = basis.field
    v = list(vec)
    for i, p in enumerate(pivots):
        if v[p] != f.zero:
            coef = v[p]
            row = basis.rows[i]
            v = [f.sub(a, f.mul(coef, b)) for a, b in zip(v, row)]
    return tuple(v)


def in_span(basis_rref, pivots, vec):
    f = basis_rref.field
    red = reduce_mod_rows(basis_rref, pivots, vec)
    return all(v == f.zero for v in red)


class Subquotient:
    """Presentation of span(cycles)/span(boundaries) inside an ambient space.

    Representatives are the lexicographically least reduced-echelon coset
    representatives; `project` maps any ambient vector of the cycle span to
    its coordinates in that basis and `lift` embeds coordinates back.
    """

    def __init__(self, field, ambient_dim, cycles, boundaries):
        self.field = field
        self.ambient_dim = ambient_dim
        self.cycle_basis, self._cycle_piv = rref(cycles)
        self.boundary_basis, self._bnd_piv = rref(boundaries)
        for row in self.boundary_basis.rows:
            if not in_span(self.cycle_basis, self._cycle_piv, row):
                raise ContainmentViolation("boundaries are not contained in cycles")
        reduced = [reduce_mod_rows(self.boundary_basis, self._bnd_piv, row)
                   for row in self.cycle_basis.rows]
        self.reps, self._rep_piv = rref(Matrix(field, len(reduced), ambient_dim, reduced))
        self.dim = self.reps.nrows

    def project(self, vec):
        """Coordinates of [vec] in the representative basis."""
        f = self.field
        red = reduce_mod_rows(self.boundary_basis, self._bnd_piv, vec)
        coords = tuple(red[p] for p in self._rep_piv)
        # confirm vec was actually in cycles + boundaries
        recon = [f.zero] * self.ambient_dim
        for c, row in zip(coords, self.reps.rows):
            if c != f.zero:
                recon = [f.add(a, f.mul(c, b)) for a, b in zip(recon, row)]
        if tuple(recon) != tuple(red):
            raise ContainmentViolation("vector is not in the cycle span")
        return coords

    def lift(self, coords):
        """Ambient representative of the class with the given coordinates."""
        f = self.field
        out = [f.zero] * self.ambient_dim
        for c, row in zip(coords, self.reps.rows):
            if c != f.zero:
                out = [f.add(a, f.mul(c, b)) for a, b in zip(out, row)]
        return tuple(out)

    def contains_in_boundaries(self, vec):
        return in_span(self.boundary_basis, self._bnd_piv, vec)


def subquotient(field, ambient_dim, cycles, boundaries):
    return Subquotient(field, ambient_dim, cycles, boundaries)


def vecmat(field, vec, mat):
    """Row vector times matrix; len(vec) must equal mat.nrows."""
    if len(vec) != mat.nrows:
        raise ValueError("vector/matrix size mismatch")
    out = [field.zero] * mat.ncols
    for c, row in zip(vec, mat.rows):
        if c != field.zero:
            out = [field.add(a, field.mul(c, b)) for a, b in zip(out, row)]
    return tuple(out)


def zero_vector(field, n):
    return (field.zero,) * n


def unit_vector(field, n, i):
    return tuple(field.one if j == i else field.zero for j in range(n))
