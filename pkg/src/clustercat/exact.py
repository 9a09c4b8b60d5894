"""Small exact linear algebra over the rationals.

Dense list-of-rows matrices with Fraction entries.  Every system in this
package is tiny (representation spaces of Dynkin quivers), so plain
Gaussian elimination is all that is needed; shapes with zero rows or
columns are legal everywhere and must be passed explicitly where they
cannot be inferred.
"""

from __future__ import annotations

from fractions import Fraction

Row = list[Fraction]
Mat = list[Row]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac_matrix(rows) -> Mat:
    return [[Fraction(x) for x in row] for row in rows]


def zero_matrix(nrows: int, ncols: int) -> Mat:
    return [[ZERO] * ncols for _ in range(nrows)]


def mat_mul(a: Mat, b: Mat, b_cols: int) -> Mat:
    """a @ b where b has b_cols columns (explicit for empty b)."""
    return [
        [sum((a[i][t] * b[t][j] for t in range(len(b))), ZERO) for j in range(b_cols)]
        for i in range(len(a))
    ]


def mat_vec(a: Mat, v: Row) -> Row:
    return [sum((row[t] * v[t] for t in range(len(v))), ZERO) for row in a]


def vstack(blocks: list[Mat], ncols: int) -> Mat:
    out: Mat = []
    for block in blocks:
        for row in block:
            assert len(row) == ncols
            out.append(list(row))
    return out


def rref(rows: Mat, width: int) -> tuple[Mat, list[int]]:
    """Reduced row echelon form: (echelon rows, pivot column indices)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Mat, width: int) -> int:
    return len(rref(rows, width)[1])


class KernelSpace:
    """Solution space of A x = 0, with coordinates along the free columns."""

    def __init__(self, rows: Mat, width: int):
        ech, pivots = rref(rows, width)
        pivot_set = set(pivots)
        self.width = width
        self.free = [c for c in range(width) if c not in pivot_set]
        self.basis: list[Row] = []
        for f in self.free:
            v = [ZERO] * width
            v[f] = ONE
            for row, p in zip(ech, pivots):
                v[p] = -row[f]
            self.basis.append(v)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v: Row) -> Row:
        """Coordinates of v in the kernel basis; v must lie in the kernel."""
        c = [v[f] for f in self.free]
        recon = [ZERO] * self.width
        for coeff, b in zip(c, self.basis):
            if coeff:
                for j in range(self.width):
                    recon[j] += coeff * b[j]
        if recon != [Fraction(x) for x in v]:
            raise ValueError("vector not in kernel")
        return c


class QuotientSpace:
    """Coordinates on k^dim modulo the span of the given row vectors."""

    def __init__(self, spanning_rows: Mat, dim: int):
        self.ambient = dim
        self.ech, self.pivots = rref(spanning_rows, dim)
        pivot_set = set(self.pivots)
        # standard basis vectors at the non-pivot coordinates descend to a basis
        self.coords_idx = [c for c in range(dim) if c not in pivot_set]

    @property
    def dim(self) -> int:
        return len(self.coords_idx)

    def project(self, v: Row) -> Row:
        w = [Fraction(x) for x in v]
        for row, p in zip(self.ech, self.pivots):
            f = w[p]
            if f:
                for j in range(p, self.ambient):
                    w[j] -= f * row[j]
        return [w[c] for c in self.coords_idx]
