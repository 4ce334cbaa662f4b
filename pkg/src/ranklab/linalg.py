"""Dense linear algebra over GF(2) and GF(2^m).

GF(2) matrices pack each row into one arbitrary-precision int (bit j =
column j), so a row operation is a single whole-row XOR no matter how
wide the matrix is.  Extension-field matrices keep rows as lists of
element masks next to their Field.  Everything is a value: operations
return fresh objects and never mutate their inputs.

Randomized constructors draw from an explicit ``random.Random`` handle
and are rejection-based, so results are reproducible from the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .field import BasisVector, Field

__all__ = [
    "MatFq",
    "MatFqm",
    "LinearSystemFq",
    "rref",
    "rank",
    "right_nullspace_basis",
    "solve_homogeneous",
    "solve_fq",
    "inverse",
    "independent_rows",
    "random_invertible",
    "random_full_rank",
    "rref_ext",
    "rank_ext",
    "right_nullspace_ext",
    "inverse_ext",
    "solve_ext",
    "random_invertible_ext",
    "expand_system",
    "dot_fq",
    "vec_add",
    "vec_scale",
    "vec_mat_ext",
    "vec_mat_fq",
]


# ---------------------------------------------------------------------------
# GF(2): rows are int bit masks
# ---------------------------------------------------------------------------

class MatFq:
    """Dense GF(2) matrix, one int per row (bit j = column j)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: list[int]):
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        mask = (1 << ncols) - 1
        for r in rows:
            if r & ~mask:
                raise ValueError("row has bits beyond the column count")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = list(rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "MatFq":
        return cls(nrows, ncols, [0] * nrows)

    @classmethod
    def identity(cls, n: int) -> "MatFq":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_entries(cls, entries: list[list[int]]) -> "MatFq":
        rows = [sum((b & 1) << j for j, b in enumerate(er)) for er in entries]
        ncols = len(entries[0]) if entries else 0
        return cls(len(entries), ncols, rows)

    def get(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def copy(self) -> "MatFq":
        return MatFq(self.nrows, self.ncols, self.rows)

    def transpose(self) -> "MatFq":
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            bit = 1 << i
            while r:
                lb = r & -r
                out[lb.bit_length() - 1] |= bit
                r ^= lb
        return MatFq(self.ncols, self.nrows, out)

    def mul(self, other: "MatFq") -> "MatFq":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        orows = other.rows
        out = []
        for r in self.rows:
            acc = 0
            while r:
                lb = r & -r
                acc ^= orows[lb.bit_length() - 1]
                r ^= lb
            out.append(acc)
        return MatFq(self.nrows, other.ncols, out)

    def left_mul_vec(self, v: int) -> int:
        """v (bit mask over rows) times this matrix."""
        acc = 0
        rows = self.rows
        while v:
            lb = v & -v
            acc ^= rows[lb.bit_length() - 1]
            v ^= lb
        return acc

    def stack(self, other: "MatFq") -> "MatFq":
        if self.ncols != other.ncols:
            raise ValueError("dimension mismatch")
        return MatFq(self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatFq)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(self.rows)))

    def __repr__(self) -> str:
        return f"MatFq({self.nrows}x{self.ncols})"


def dot_fq(row: int, v: int) -> int:
    return (row & v).bit_count() & 1


def _lsb(x: int) -> int:
    return (x & -x).bit_length() - 1


def _echelon(rows) -> dict[int, int]:
    """Forward elimination with lowest-bit pivots: {pivot column: row}."""
    pivots: dict[int, int] = {}
    get = pivots.get
    for r in rows:
        while r:
            c = (r & -r).bit_length() - 1
            p = get(c)
            if p is None:
                pivots[c] = r
                break
            r ^= p
    return pivots


def _echelon_reduced(rows) -> dict[int, int]:
    """Fully reduced pivot rows (each pivot column appears in one row)."""
    pivots = _echelon(rows)
    for c in sorted(pivots, reverse=True):
        r = pivots[c]
        x = r ^ (1 << c)
        while x:
            lb = x & -x
            q = pivots.get(lb.bit_length() - 1)
            if q is not None:
                r ^= q
            x ^= lb
        pivots[c] = r
    return pivots


def rref(mat: MatFq) -> MatFq:
    """Canonical reduced row echelon form (same shape, zero rows last)."""
    pivots = _echelon_reduced(mat.rows)
    rows = [pivots[c] for c in sorted(pivots)]
    rows += [0] * (mat.nrows - len(rows))
    return MatFq(mat.nrows, mat.ncols, rows)


def rank(mat: MatFq) -> int:
    return len(_echelon(mat.rows))


def right_nullspace_basis(mat: MatFq) -> MatFq:
    """Rows spanning {v : mat . v^T = 0}; (ncols - rank) of them."""
    pivots = _echelon_reduced(mat.rows)
    free = [c for c in range(mat.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = 1 << f
        for c, row in pivots.items():
            if (row >> f) & 1:
                v |= 1 << c
        basis.append(v)
    return MatFq(len(basis), mat.ncols, basis)


def independent_rows(mat: MatFq) -> list[int]:
    """Indices of the first maximal linearly independent set of rows."""
    pivots: dict[int, int] = {}
    out = []
    for i, r in enumerate(mat.rows):
        while r:
            c = (r & -r).bit_length() - 1
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                out.append(i)
                break
            r ^= p
    return out


def inverse(mat: MatFq) -> MatFq:
    if mat.nrows != mat.ncols:
        raise ValueError("only square matrices have inverses")
    n = mat.nrows
    aug = [mat.rows[i] | (1 << (n + i)) for i in range(n)]
    pivots = _echelon_reduced(aug)
    if sorted(pivots)[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    rows = [pivots[c] >> n for c in range(n)]
    return MatFq(n, n, rows)


def solve_fq(mat: MatFq, b: int) -> int | None:
    """One solution x of mat . x^T = b (bit i of b = row i), or None."""
    n = mat.ncols
    aug = [mat.rows[i] | (((b >> i) & 1) << n) for i in range(mat.nrows)]
    pivots = _echelon_reduced(aug)
    if n in pivots:
        return None  # a row reduced to (0 ... 0 | 1)
    x = 0
    for c, row in pivots.items():
        if (row >> n) & 1:
            x |= 1 << c
    return x


def random_full_rank(r: int, c: int, rng: random.Random) -> MatFq:
    """Uniform r x c GF(2) matrix conditioned on rank r (r <= c)."""
    if r > c:
        raise ValueError("cannot have rank beyond the column count")
    if r == 0:
        return MatFq(0, c, [])
    while True:
        rows = [rng.getrandbits(c) for _ in range(r)]
        if len(_echelon(rows)) == r:
            return MatFq(r, c, rows)


def random_invertible(n: int, rng: random.Random) -> MatFq:
    return random_full_rank(n, n, rng)


# ---------------------------------------------------------------------------
# GF(2^m): rows are lists of element masks
# ---------------------------------------------------------------------------

class MatFqm:
    """Dense matrix over GF(2^m)."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: list[list[int]]):
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("row data does not match the declared shape")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [list(r) for r in rows]

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "MatFqm":
        return cls(field, nrows, ncols, [[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatFqm":
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(field, n, n, rows)

    def _check_same_field(self, other: "MatFqm") -> None:
        if self.field != other.field:
            raise ValueError("operands live in different fields")

    def add(self, other: "MatFqm") -> "MatFqm":
        self._check_same_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("dimension mismatch")
        rows = [[a ^ b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        return MatFqm(self.field, self.nrows, self.ncols, rows)

    sub = add  # characteristic 2

    def mul(self, other: "MatFqm") -> "MatFqm":
        self._check_same_field(other)
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        fmul = self.field.mul
        ocols = list(zip(*other.rows)) if other.rows else []
        rows = []
        for r in self.rows:
            out = []
            for col in ocols:
                acc = 0
                for a, b in zip(r, col):
                    if a and b:
                        acc ^= fmul(a, b)
                out.append(acc)
            rows.append(out)
        return MatFqm(self.field, self.nrows, other.ncols, rows)

    def mul_fq(self, q: MatFq) -> "MatFqm":
        """Right-multiply by a GF(2) matrix."""
        if self.ncols != q.nrows:
            raise ValueError("dimension mismatch")
        qt = q.transpose()
        rows = []
        for r in self.rows:
            out = []
            for j in range(q.ncols):
                acc = 0
                col = qt.rows[j]
                while col:
                    lb = col & -col
                    acc ^= r[lb.bit_length() - 1]
                    col ^= lb
                out.append(acc)
            rows.append(out)
        return MatFqm(self.field, self.nrows, q.ncols, rows)

    def frobenius(self, l: int) -> "MatFqm":
        frob = self.field.frobenius
        rows = [[frob(x, l) for x in r] for r in self.rows]
        return MatFqm(self.field, self.nrows, self.ncols, rows)

    def transpose(self) -> "MatFqm":
        rows = [list(col) for col in zip(*self.rows)] if self.rows else [[] for _ in range(self.ncols)]
        return MatFqm(self.field, self.ncols, self.nrows, rows)

    def take_cols(self, cols: list[int]) -> "MatFqm":
        rows = [[r[c] for c in cols] for r in self.rows]
        return MatFqm(self.field, self.nrows, len(cols), rows)

    def stack(self, other: "MatFqm") -> "MatFqm":
        self._check_same_field(other)
        if self.ncols != other.ncols:
            raise ValueError("dimension mismatch")
        return MatFqm(self.field, self.nrows + other.nrows, self.ncols,
                      self.rows + other.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatFqm)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"MatFqm({self.nrows}x{self.ncols} over GF(2^{self.field.m}))"


def _rref_ext_rows(field: Field, rows: list[list[int]], ncols: int):
    """In-place RREF of row lists; returns pivot column list."""
    fmul, finv = field.mul, field.inv
    pivots = []
    pr = 0
    for c in range(ncols):
        piv = None
        for r in range(pr, len(rows)):
            if rows[r][c]:
                piv = r
                break
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        lead = rows[pr][c]
        if lead != 1:
            s = finv(lead)
            rows[pr] = [fmul(s, x) if x else 0 for x in rows[pr]]
        prow = rows[pr]
        for r in range(len(rows)):
            if r != pr and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x ^ (fmul(f, p) if p else 0) for x, p in zip(rows[r], prow)]
        pivots.append(c)
        pr += 1
        if pr == len(rows):
            break
    return pivots


def rref_ext(mat: MatFqm) -> MatFqm:
    rows = [r[:] for r in mat.rows]
    _rref_ext_rows(mat.field, rows, mat.ncols)
    return MatFqm(mat.field, mat.nrows, mat.ncols, rows)


def rank_ext(mat: MatFqm) -> int:
    rows = [r[:] for r in mat.rows]
    return len(_rref_ext_rows(mat.field, rows, mat.ncols))


def row_space_rref(mat: MatFqm) -> MatFqm:
    """Canonical generator of the row space (RREF with zero rows dropped)."""
    rows = [r[:] for r in mat.rows]
    pivots = _rref_ext_rows(mat.field, rows, mat.ncols)
    return MatFqm(mat.field, len(pivots), mat.ncols, rows[: len(pivots)])


def right_nullspace_ext(mat: MatFqm) -> MatFqm:
    """Rows spanning {v : mat . v^T = 0} over GF(2^m)."""
    rows = [r[:] for r in mat.rows]
    pivots = _rref_ext_rows(mat.field, rows, mat.ncols)
    pivot_set = set(pivots)
    free = [c for c in range(mat.ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [0] * mat.ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = rows[i][f]  # -x = x in characteristic 2
        basis.append(v)
    return MatFqm(mat.field, len(basis), mat.ncols, basis)


def inverse_ext(mat: MatFqm) -> MatFqm:
    if mat.nrows != mat.ncols:
        raise ValueError("only square matrices have inverses")
    n = mat.nrows
    rows = [mat.rows[i] + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    pivots = _rref_ext_rows(mat.field, rows, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return MatFqm(mat.field, n, n, [r[n:] for r in rows[:n]])


def solve_ext(mat: MatFqm, b: list[int]) -> list[int] | None:
    """One solution x of mat . x = b over GF(2^m), or None if inconsistent."""
    if len(b) != mat.nrows:
        raise ValueError("dimension mismatch")
    n = mat.ncols
    rows = [mat.rows[i] + [b[i]] for i in range(mat.nrows)]
    pivots = _rref_ext_rows(mat.field, rows, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x


def random_invertible_ext(field: Field, n: int, rng: random.Random) -> MatFqm:
    while True:
        rows = [[field.random_element(rng) for _ in range(n)] for _ in range(n)]
        mat = MatFqm(field, n, n, rows)
        if rank_ext(mat) == n:
            return mat


# ---------------------------------------------------------------------------
# homogeneous GF(2) systems from extension-field equations
# ---------------------------------------------------------------------------

@dataclass
class LinearSystemFq:
    """Homogeneous linear system over GF(2): coeff . x^T = 0."""

    coeff: MatFq
    labels: tuple[str, ...] | None = None

    @property
    def nvars(self) -> int:
        return self.coeff.ncols


def solve_homogeneous(system: LinearSystemFq) -> MatFq:
    """Basis of the solution space, one solution per row."""
    return right_nullspace_basis(system.coeff)


def expand_system(coeff_ext: MatFqm, basis: BasisVector) -> LinearSystemFq:
    """Split each GF(2^m) equation in GF(2) unknowns into m GF(2) equations.

    Writing every coefficient in the given basis turns one equation
    sum_j x_j * beta_j = 0 into one GF(2) equation per basis coordinate;
    the solution set over GF(2) is unchanged.
    """
    field = coeff_ext.field
    if basis.field != field:
        raise ValueError("basis field does not match the coefficients")
    m = field.m
    ncols = coeff_ext.ncols
    out: list[int] = []
    if ncols == 0:
        return LinearSystemFq(MatFq(m * coeff_ext.nrows, 0, [0] * (m * coeff_ext.nrows)))
    poly = basis.kind == "polynomial"
    for row in coeff_ext.rows:
        masks = row if poly else [basis.coords(x) for x in row]
        arr = np.array(masks, dtype=np.uint64)
        for l in range(m):
            bits = ((arr >> l) & 1).astype(np.uint8)
            out.append(int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little"))
    return LinearSystemFq(MatFq(m * coeff_ext.nrows, ncols, out))


# ---------------------------------------------------------------------------
# vectors over GF(2^m) (plain lists of masks)
# ---------------------------------------------------------------------------

def vec_add(u, v) -> list[int]:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return [a ^ b for a, b in zip(u, v)]


def vec_scale(field: Field, gamma: int, v) -> list[int]:
    fmul = field.mul
    return [fmul(gamma, x) if x else 0 for x in v]


def vec_mat_ext(field: Field, v, mat: MatFqm) -> list[int]:
    """Row vector times matrix over GF(2^m)."""
    if mat.field != field:
        raise ValueError("operands live in different fields")
    if len(v) != mat.nrows:
        raise ValueError("dimension mismatch")
    fmul = field.mul
    out = [0] * mat.ncols
    for a, row in zip(v, mat.rows):
        if not a:
            continue
        for j, b in enumerate(row):
            if b:
                out[j] ^= fmul(a, b)
    return out


def vec_mat_fq(v, mat: MatFq) -> list[int]:
    """Row vector over GF(2^m) times a GF(2) matrix."""
    if len(v) != mat.nrows:
        raise ValueError("dimension mismatch")
    t = mat.transpose()
    out = []
    for j in range(mat.ncols):
        acc = 0
        col = t.rows[j]
        while col:
            lb = col & -col
            acc ^= v[lb.bit_length() - 1]
            col ^= lb
        out.append(acc)
    return out
