"""Rank-metric machinery: Moore matrices, Gabidulin codes, and friends.

Vectors over GF(2^m) are tuples/lists of element masks accompanied by
their Field.  The rank weight of a vector is the GF(2)-rank of its
m x n coordinate expansion; the rank support is the GF(2)-span of its
components.

The decoder is a syndrome decoder: it finds the minimal annihilator
polynomial of the error-locator span from a twisted linear recurrence
on the syndromes, intersects its root space with the dual support, and
solves for the error values.  It corrects any error of rank weight up
to floor((n-k)/2); beyond that, behaviour is unspecified (it raises or
may return a different nearby codeword).
"""

from __future__ import annotations

import random
from typing import NamedTuple

from . import linalg
from .field import BasisVector, Field, normal_basis, polynomial_basis
from .linalg import MatFq, MatFqm

__all__ = [
    "NotGabidulinError",
    "DecodingFailureError",
    "DecodeResult",
    "GabidulinCode",
    "rank_weight",
    "rank_support",
    "expansion_matrix",
    "moore_matrix",
    "partial_circulant",
    "is_moore",
    "moore_decompose",
    "support_decomposition",
    "random_vector_of_rank",
    "random_gabidulin_code",
    "recover_generating_vector",
    "generating_vector_system",
    "dual_generating_vector",
    "frobenius_code",
    "code_intersection",
]


class NotGabidulinError(Exception):
    """The input does not generate a Gabidulin code."""


class DecodingFailureError(Exception):
    """No codeword within the decoding radius."""


# ---------------------------------------------------------------------------
# rank weight and support
# ---------------------------------------------------------------------------

def expansion_matrix(field: Field, v) -> MatFq:
    """m x n GF(2) matrix whose column t holds the coordinates of v[t]."""
    m = field.m
    rows = [sum(((x >> i) & 1) << t for t, x in enumerate(v)) for i in range(m)]
    return MatFq(m, len(v), rows)


def rank_weight(field: Field, v) -> int:
    return linalg.rank(MatFq(len(v), field.m, [field.check(x) for x in v]))


def rank_support(field: Field, v) -> tuple[int, ...]:
    """Canonical GF(2)-basis of the span of the components of v."""
    mat = linalg.rref(MatFq(len(v), field.m, [field.check(x) for x in v]))
    return tuple(r for r in mat.rows if r)


# ---------------------------------------------------------------------------
# Moore and partial circulant matrices
# ---------------------------------------------------------------------------

def moore_matrix(field: Field, a, k: int) -> MatFqm:
    """k x n matrix whose row i is the entrywise 2^i-power of a."""
    if k < 1:
        raise ValueError("need at least one row")
    sqr = field.sqr
    row = [field.check(x) for x in a]
    rows = [row]
    for _ in range(k - 1):
        row = [sqr(x) for x in row]
        rows.append(row)
    return MatFqm(field, k, len(a), rows)


def partial_circulant(field: Field, a, k: int) -> MatFqm:
    """First k rows of the cyclic-shift circulant of a."""
    n = len(a)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got {k}")
    row = [field.check(x) for x in a]
    rows = [row]
    for _ in range(k - 1):
        row = [row[-1]] + row[:-1]
        rows.append(row)
    return MatFqm(field, k, n, rows)


def is_moore(mat: MatFqm) -> bool:
    sqr = mat.field.sqr
    for prev, cur in zip(mat.rows, mat.rows[1:]):
        if any(sqr(x) != y for x, y in zip(prev, cur)):
            return False
    return True


def moore_decompose(target: MatFqm, basis_moore: MatFqm) -> MatFq:
    """Q over GF(2) with basis_moore . Q = target.

    ``basis_moore`` must be a Moore matrix generated by a basis vector
    of the field; Q holds the coordinates of target's first row in that
    basis, column by column.
    """
    field = target.field
    if field != basis_moore.field:
        raise ValueError("operands live in different fields")
    if not is_moore(target) or not is_moore(basis_moore):
        raise ValueError("inputs must be Moore matrices")
    if target.nrows != basis_moore.nrows:
        raise ValueError("row counts differ")
    basis = BasisVector(field, basis_moore.rows[0])
    coords = [basis.coords(x) for x in target.rows[0]]
    m, n = field.m, target.ncols
    rows = [sum(((c >> s) & 1) << t for t, c in enumerate(coords)) for s in range(m)]
    return MatFq(m, n, rows)


def support_decomposition(field: Field, a) -> tuple[tuple[int, ...], MatFq]:
    """Factor a as (a', 0) . Q with rk(a') = rk(a) and Q invertible.

    a' is the canonical rank-support basis of a; Q's first rows give
    the coordinates of each component, padded to an invertible matrix.
    """
    n = len(a)
    support = rank_support(field, a)
    l = len(support)
    w = MatFq(l, field.m, list(support)).transpose()  # m x l
    cols = []
    for x in a:
        c = linalg.solve_fq(w, x)
        if c is None:  # pragma: no cover - support spans the components
            raise RuntimeError("component outside its own support")
        cols.append(c)
    rows = [sum(((c >> u) & 1) << t for t, c in enumerate(cols)) for u in range(l)]
    # pad with standard basis rows that keep the rank growing
    pivots = dict(linalg._echelon(rows))
    for j in range(n):
        if len(rows) == n:
            break
        cand = 1 << j
        r = cand
        while r:
            c = (r & -r).bit_length() - 1
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                rows.append(cand)
                break
            r ^= p
    q = MatFq(n, n, rows)
    return support, q


# ---------------------------------------------------------------------------
# random vectors of prescribed rank weight
# ---------------------------------------------------------------------------

def random_vector_of_rank(field: Field, n: int, r: int, rng: random.Random) -> tuple[int, ...]:
    """Length-n vector over GF(2^m) with rank weight exactly r."""
    if not 0 <= r <= min(n, field.m):
        raise ValueError(f"rank must be in [0, {min(n, field.m)}], got {r}")
    if r == 0:
        return (0,) * n
    # rank-r support basis times a full-rank coefficient matrix
    support = linalg.random_full_rank(r, field.m, rng)
    coeffs = linalg.random_full_rank(r, n, rng)
    out = [0] * n
    for u in range(r):
        b = support.rows[u]
        crow = coeffs.rows[u]
        while crow:
            lb = crow & -crow
            out[lb.bit_length() - 1] ^= b
            crow ^= lb
    return tuple(out)


# ---------------------------------------------------------------------------
# Gabidulin codes
# ---------------------------------------------------------------------------

class DecodeResult(NamedTuple):
    codeword: tuple[int, ...]
    error: tuple[int, ...]
    message: tuple[int, ...]


class GabidulinCode:
    """The [n, k] code spanned by the Moore matrix of a rank-n vector g."""

    def __init__(self, field: Field, n: int, k: int, g):
        g = tuple(field.check(x) for x in g)
        if len(g) != n:
            raise ValueError("generating vector length does not match n")
        if not 1 <= k <= n <= field.m:
            raise ValueError(f"need 1 <= k <= n <= m, got k={k} n={n} m={field.m}")
        if rank_weight(field, g) != n:
            raise ValueError("generating vector must have full rank weight")
        self.field = field
        self.n = n
        self.k = k
        self.g = g
        self._gen: MatFqm | None = None
        self._gen_rref: MatFqm | None = None
        self._dual: tuple[int, ...] | None = None
        self._dual_moore: MatFqm | None = None
        self._msg_solver: tuple[list[int], MatFqm] | None = None

    # -- derived matrices, cached -------------------------------------------

    def generator(self) -> MatFqm:
        if self._gen is None:
            self._gen = moore_matrix(self.field, self.g, self.k)
        return self._gen

    def _generator_rref(self) -> MatFqm:
        if self._gen_rref is None:
            self._gen_rref = linalg.row_space_rref(self.generator())
        return self._gen_rref

    def dual_vector(self) -> tuple[int, ...]:
        """Generating vector of the [n, n-k] dual code."""
        if self.k >= self.n:
            raise ValueError("the dual generating vector needs k < n")
        if self._dual is None:
            h_arb = linalg.right_nullspace_ext(self.generator())
            self._dual = recover_generating_vector(h_arb)
        return self._dual

    def _dual_moore_matrix(self) -> MatFqm:
        if self._dual_moore is None:
            self._dual_moore = moore_matrix(self.field, self.dual_vector(), self.n - self.k)
        return self._dual_moore

    # -- coding -------------------------------------------------------------

    def encode(self, msg) -> tuple[int, ...]:
        if len(msg) != self.k:
            raise ValueError(f"message length must be {self.k}")
        return tuple(linalg.vec_mat_ext(self.field, list(msg), self.generator()))

    def contains(self, v) -> bool:
        stacked = self._generator_rref().stack(MatFqm(self.field, 1, self.n, [list(v)]))
        return linalg.rank_ext(stacked) == self.k

    def _solve_message(self, c) -> tuple[int, ...]:
        if self._msg_solver is None:
            rows = [r[:] for r in self.generator().rows]
            piv = linalg._rref_ext_rows(self.field, rows, self.n)
            inv = linalg.inverse_ext(self.generator().take_cols(piv))
            self._msg_solver = (piv, inv)
        piv, inv = self._msg_solver
        return tuple(linalg.vec_mat_ext(self.field, [c[j] for j in piv], inv))

    def _syndromes(self, v) -> list[int]:
        h = self._dual_moore_matrix()
        fmul = self.field.mul
        out = []
        for row in h.rows:
            acc = 0
            for a, b in zip(v, row):
                if a and b:
                    acc ^= fmul(a, b)
            out.append(acc)
        return out

    def decode(self, y) -> DecodeResult:
        """Recover (codeword, error, message) from y = c + e, rk(e) <= t.

        Raises DecodingFailureError when no codeword lies within rank
        distance t = floor((n-k)/2) of y.
        """
        field = self.field
        y = tuple(field.check(x) for x in y)
        if len(y) != self.n:
            raise ValueError(f"received word length must be {self.n}")
        zero = (0,) * self.n
        if self.k == self.n:
            return DecodeResult(y, zero, self._solve_message(y))
        syn = self._syndromes(y)
        if not any(syn):
            return DecodeResult(y, zero, self._solve_message(y))
        t = (self.n - self.k) // 2
        frob = field.frobenius
        nsyn = len(syn)
        for r in range(t, 0, -1):
            neq = nsyn - r
            rows = [[frob(syn[j + l], -j) for l in range(r)] for j in range(neq)]
            rhs = [frob(syn[j + r], -j) for j in range(neq)]
            lam = linalg.solve_ext(MatFqm(field, neq, r, rows), rhs)
            if lam is None:
                continue
            lam.append(1)  # monic annihilator of the locator span
            result = self._try_error(y, syn, lam, t)
            if result is not None:
                return result
        raise DecodingFailureError("no codeword within the decoding radius")

    def _try_error(self, y, syn, lam, t: int) -> DecodeResult | None:
        field = self.field
        m, n = field.m, self.n
        fmul, frob = field.mul, field.frobenius
        # root space of z -> sum_l lam_l z^[l], as a GF(2)-linear kernel
        images = []
        for b in range(m):
            z = 1 << b
            acc = 0
            for l, c in enumerate(lam):
                if c:
                    acc ^= fmul(c, frob(z, l))
            images.append(acc)
        kernel = linalg.right_nullspace_basis(MatFq(m, m, images).transpose())
        locs = [v for v in kernel.rows]
        if not locs or len(locs) > t:
            return None
        # error values from the syndrome equations
        vmat = MatFqm(field, len(syn), len(locs),
                      [[frob(x, j) for x in locs] for j in range(len(syn))])
        values = linalg.solve_ext(vmat, syn)
        if values is None:
            return None
        # locator coordinates over the dual support
        h = self.dual_vector()
        w = expansion_matrix(field, h)
        err = [0] * n
        for x, val in zip(locs, values):
            brow = linalg.solve_fq(w, x)
            if brow is None:
                return None
            while brow:
                lb = brow & -brow
                err[lb.bit_length() - 1] ^= val
                brow ^= lb
        if rank_weight(field, err) > t:
            return None
        c = tuple(a ^ b for a, b in zip(y, err))
        if any(self._syndromes(c)):
            return None
        return DecodeResult(c, tuple(err), self._solve_message(c))

    # -- value semantics ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GabidulinCode)
            and self.field == other.field
            and (self.n, self.k, self.g) == (other.n, other.k, other.g)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.k, self.g))

    def __repr__(self) -> str:
        return f"GabidulinCode(n={self.n}, k={self.k}, m={self.field.m})"


def random_gabidulin_code(field: Field, n: int, k: int, rng: random.Random) -> GabidulinCode:
    return GabidulinCode(field, n, k, random_vector_of_rank(field, n, n, rng))


# ---------------------------------------------------------------------------
# generating-vector recovery from an arbitrary generator matrix
# ---------------------------------------------------------------------------

def _resolve_basis(field: Field, basis) -> BasisVector:
    if isinstance(basis, BasisVector):
        if basis.field != field:
            raise ValueError("basis field mismatch")
        return basis
    if basis == "polynomial":
        return polynomial_basis(field)
    if basis == "normal":
        return normal_basis(field, alpha=None)  # deterministic scan
    raise ValueError(f"unknown basis choice {basis!r}")


def generating_vector_system(g_arb: MatFqm, basis="polynomial"):
    """The GF(2) system whose solutions X give Moore generators M . X.

    Returns (system, moore, basis_vector) where ``moore`` is the Moore
    matrix of the basis vector with as many rows as g_arb.
    """
    field = g_arb.field
    k, n = g_arb.nrows, g_arb.ncols
    if linalg.rank_ext(g_arb) != k:
        raise ValueError("input is not a full-rank generator matrix")
    bv = _resolve_basis(field, basis)
    h = linalg.right_nullspace_ext(g_arb)  # (n-k) x n parity check
    m = field.m
    moore = moore_matrix(field, bv.elems, k)
    fmul = field.mul
    rows = []
    for i in range(k):
        mrow = moore.rows[i]
        for j in range(h.nrows):
            hrow = h.rows[j]
            coeff = [0] * (m * n)
            for s in range(m):
                ms = mrow[s]
                if not ms:
                    continue
                base = s * n
                for tt in range(n):
                    ht = hrow[tt]
                    if ht:
                        coeff[base + tt] = fmul(ms, ht)
            rows.append(coeff)
    ext = MatFqm(field, len(rows), m * n, rows)
    return linalg.expand_system(ext, polynomial_basis(field)), moore, bv


def recover_generating_vector(g_arb: MatFqm, basis="polynomial") -> tuple[int, ...]:
    """Generating vector of the code spanned by an arbitrary generator.

    Raises NotGabidulinError when the row space is not a Gabidulin code
    (empty solution space, or the reconstructed Moore matrix fails the
    span check).
    """
    system, _, bv = generating_vector_system(g_arb, basis)
    field = g_arb.field
    k, n = g_arb.nrows, g_arb.ncols
    null = linalg.solve_homogeneous(system)
    if null.nrows == 0:
        raise NotGabidulinError("the row space is not a Gabidulin code")
    sol = null.rows[0]
    g_prime = [0] * n
    elems = bv.elems
    for s in range(field.m):
        if (sol >> (s * n)) & ((1 << n) - 1):
            a_s = elems[s]
            chunk = (sol >> (s * n)) & ((1 << n) - 1)
            while chunk:
                lb = chunk & -chunk
                g_prime[lb.bit_length() - 1] ^= a_s
                chunk ^= lb
    candidate = moore_matrix(field, g_prime, k)
    if linalg.row_space_rref(candidate) != linalg.row_space_rref(g_arb):
        raise NotGabidulinError("reconstructed matrix does not span the input code")
    return tuple(g_prime)


def dual_generating_vector(code: GabidulinCode) -> tuple[int, ...]:
    """Generating vector h of the [n, n-k] dual code."""
    return code.dual_vector()


def frobenius_code(code: GabidulinCode, l: int) -> GabidulinCode:
    frob = code.field.frobenius
    return GabidulinCode(code.field, code.n, code.k, [frob(x, l) for x in code.g])


def code_intersection(c1: MatFqm, c2: MatFqm) -> MatFqm:
    """Generator matrix of the intersection of two row spaces."""
    if c1.field != c2.field:
        raise ValueError("operands live in different fields")
    if c1.ncols != c2.ncols:
        raise ValueError("dimension mismatch")
    stacked = linalg.right_nullspace_ext(c1).stack(linalg.right_nullspace_ext(c2))
    return linalg.right_nullspace_ext(stacked)
