"""GF(2^m) arithmetic on bit-mask encoded elements.

An element of GF(2^m) is a plain int whose bit i is the coefficient of
x^i in the polynomial basis, reduced modulo an irreducible degree-m
modulus.  0 and 1 are the additive and multiplicative identities, and
addition is XOR (characteristic 2, so subtraction equals addition).
Elements carry no wrapper object; a `Field` instance fixes (m, modulus)
and is passed around alongside them, which keeps vectors and matrices
cheap.

The default modulus for each degree is the irreducible polynomial with
the smallest integer encoding, found by a deterministic search, so that
serialized keys are portable across builds.

Serialization conventions (shared by every file format downstream):
element = lowercase hex of the bit mask (alpha in GF(8) is "2"),
field header = ``q=2 m=<m> mod=0x<hex>``.
"""

from __future__ import annotations

import random

__all__ = [
    "Field",
    "BasisVector",
    "field_new",
    "smallest_irreducible",
    "is_irreducible",
    "polynomial_basis",
    "normal_basis",
    "find_normal_element",
    "is_basis",
    "expand",
    "contract",
    "element_to_hex",
    "element_from_hex",
    "parse_field_header",
]

MIN_DEGREE = 2
MAX_DEGREE = 64  # one machine word per element

# byte -> same bits spread to even positions, for fast squaring
_SPREAD = tuple(
    sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)
)


# ---------------------------------------------------------------------------
# polynomial arithmetic over GF(2), ints as coefficient masks
# ---------------------------------------------------------------------------

def _poly_mul(a: int, b: int) -> int:
    p = 0
    while a:
        lb = a & -a
        p ^= b << (lb.bit_length() - 1)
        a ^= lb
    return p


def _poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _poly_mod(a: int, b: int) -> int:
    return _poly_divmod(a, b)[1]


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _poly_mulmod(a: int, b: int, f: int) -> int:
    return _poly_mod(_poly_mul(a, b), f)


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int, m: int) -> bool:
    """Rabin test: x^(2^m) == x mod f, and gcd(x^(2^(m/p)) - x, f) = 1."""
    if f.bit_length() - 1 != m:
        return False
    x = 0b10
    # x^(2^j) mod f by repeated squaring
    powers = [x]
    for _ in range(m):
        powers.append(_poly_mulmod(powers[-1], powers[-1], f))
    if powers[m] != x:
        return False
    for p in _prime_factors(m):
        g = _poly_gcd(powers[m // p] ^ x, f)
        if g != 1:
            return False
    return True


def smallest_irreducible(m: int) -> int:
    """Degree-m irreducible polynomial with the smallest integer encoding."""
    if not MIN_DEGREE <= m <= MAX_DEGREE:
        raise ValueError(f"extension degree must be in [{MIN_DEGREE}, {MAX_DEGREE}], got {m}")
    top = 1 << m
    # an irreducible polynomial needs a nonzero constant term
    for low in range(1, top, 2):
        if is_irreducible(top | low, m):
            return top | low
    raise RuntimeError(f"no irreducible polynomial of degree {m}")  # pragma: no cover


# ---------------------------------------------------------------------------
# the field itself
# ---------------------------------------------------------------------------

class Field:
    """GF(2^m) with a fixed irreducible modulus.

    All methods take and return bare int masks.  Operands must already
    belong to this field; containers that carry a Field reference
    (matrices, codes, keys) are responsible for rejecting mixed-field
    arithmetic.
    """

    q = 2

    __slots__ = ("m", "modulus", "mask", "_red")

    def __init__(self, m: int, modulus: int | None = None):
        if not MIN_DEGREE <= m <= MAX_DEGREE:
            raise ValueError(f"extension degree must be in [{MIN_DEGREE}, {MAX_DEGREE}], got {m}")
        if modulus is None:
            modulus = smallest_irreducible(m)
        elif not is_irreducible(modulus, m):
            raise ValueError(f"0x{modulus:x} is not irreducible of degree {m}")
        self.m = m
        self.modulus = modulus
        self.mask = (1 << m) - 1
        # _red[b] = x^(m+b) mod modulus; products have degree <= 2m-2
        red = []
        r = modulus & self.mask
        for _ in range(m):
            red.append(r)
            r <<= 1
            if r >> m & 1:
                r = (r & self.mask) ^ red[0]
        self._red = tuple(red)

    # -- basic arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add

    def _reduce(self, p: int) -> int:
        r = p & self.mask
        hi = p >> self.m
        red = self._red
        while hi:
            lb = hi & -hi
            r ^= red[lb.bit_length() - 1]
            hi ^= lb
        return r

    def mul(self, a: int, b: int) -> int:
        p = 0
        while a:
            lb = a & -a
            p ^= b << (lb.bit_length() - 1)
            a ^= lb
        return self._reduce(p)

    def sqr(self, a: int) -> int:
        p = 0
        shift = 0
        while a:
            p |= _SPREAD[a & 0xFF] << shift
            a >>= 8
            shift += 16
        return self._reduce(p)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        # extended Euclid, invariant s_i * a == r_i (mod modulus)
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 ^ _poly_mul(q, s1)
        return s0

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.sqr(a) if a else 0
            e >>= 1
        return r

    def frobenius(self, a: int, l: int) -> int:
        """a^(2^l), with l reduced mod m (negative l allowed)."""
        for _ in range(l % self.m):
            a = self.sqr(a)
        return a

    # -- helpers ------------------------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a <= self.mask:
            raise ValueError(f"0x{a:x} is not an element of GF(2^{self.m})")
        return a

    def random_element(self, rng: random.Random) -> int:
        return rng.getrandbits(self.m)

    def random_nonzero(self, rng: random.Random) -> int:
        while True:
            a = rng.getrandbits(self.m)
            if a:
                return a

    def header(self) -> str:
        return f"q=2 m={self.m} mod=0x{self.modulus:x}"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    def __repr__(self) -> str:
        return f"Field(m={self.m}, modulus=0x{self.modulus:x})"


def field_new(m: int) -> Field:
    """GF(2^m) with the default (smallest) modulus."""
    return Field(m)


def parse_field_header(text: str) -> Field:
    """Parse ``q=2 m=<m> mod=0x<hex>`` back into a Field."""
    parts = dict(tok.split("=", 1) for tok in text.split())
    if parts.get("q") != "2":
        raise ValueError(f"unsupported field header: {text!r}")
    return Field(int(parts["m"]), int(parts["mod"], 16))


def element_to_hex(a: int) -> str:
    return format(a, "x")


def element_from_hex(s: str, field: Field) -> int:
    return field.check(int(s, 16))


# ---------------------------------------------------------------------------
# bases of GF(2^m) over GF(2)
# ---------------------------------------------------------------------------

def _mask_rank(masks) -> int:
    """Rank over GF(2) of a collection of bit masks."""
    pivots: list[int] = []
    for v in masks:
        for p in pivots:
            if v.bit_length() == p.bit_length():
                v ^= p
        if v:
            pivots.append(v)
            pivots.sort(key=int.bit_length, reverse=True)
    return len(pivots)


def _mask_matrix_inverse(rows: list[int], m: int) -> list[int]:
    """Invert an m x m GF(2) matrix given as row masks (raises if singular)."""
    aug = [rows[i] | (1 << (m + i)) for i in range(m)]
    for col in range(m):
        piv = None
        for r in range(col, m):
            if (aug[r] >> col) & 1:
                piv = r
                break
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(m):
            if r != col and (aug[r] >> col) & 1:
                aug[r] ^= aug[col]
    return [row >> m for row in aug]


def is_basis(field: Field, elems) -> bool:
    elems = tuple(elems)
    return len(elems) == field.m and _mask_rank(elems) == field.m


class BasisVector:
    """An ordered basis of GF(2^m) over GF(2).

    ``coords`` and ``combine`` translate between elements and their
    GF(2) coordinate masks (bit i = coefficient of elems[i]).  For the
    polynomial basis the coordinates are the element mask itself.
    """

    __slots__ = ("field", "elems", "kind", "_invcols")

    def __init__(self, field: Field, elems, kind: str = "other"):
        elems = tuple(field.check(e) for e in elems)
        if len(elems) != field.m or _mask_rank(elems) != field.m:
            raise ValueError("elements do not form a basis")
        self.field = field
        self.elems = elems
        self.kind = kind
        if kind == "polynomial":
            self._invcols = None
        else:
            inv_rows = _mask_matrix_inverse(list(elems), field.m)
            # column masks of the inverse matrix, for coordinate extraction
            self._invcols = tuple(
                sum(((inv_rows[i] >> j) & 1) << i for i in range(field.m))
                for j in range(field.m)
            )

    def coords(self, x: int) -> int:
        """GF(2) coordinate mask of x with respect to this basis."""
        if self._invcols is None:
            return x
        c = 0
        for j, col in enumerate(self._invcols):
            c |= ((x & col).bit_count() & 1) << j
        return c

    def combine(self, coords: int) -> int:
        """Element with the given coordinate mask."""
        x = 0
        elems = self.elems
        while coords:
            lb = coords & -coords
            x ^= elems[lb.bit_length() - 1]
            coords ^= lb
        return x

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BasisVector)
            and self.field == other.field
            and self.elems == other.elems
        )

    def __hash__(self) -> int:
        return hash((self.field, self.elems))

    def __repr__(self) -> str:
        return f"BasisVector(kind={self.kind}, elems={[hex(e) for e in self.elems]})"


def polynomial_basis(field: Field) -> BasisVector:
    return BasisVector(field, [1 << i for i in range(field.m)], kind="polynomial")


def _is_normal(field: Field, a: int) -> bool:
    powers = []
    x = a
    for _ in range(field.m):
        powers.append(x)
        x = field.sqr(x)
    return _mask_rank(powers) == field.m


def find_normal_element(field: Field, rng: random.Random | None = None) -> int:
    """An alpha whose m Frobenius powers are linearly independent.

    Without an rng the search is a deterministic ascending scan, so
    callers that need reproducible output (the attack assembler) get it
    without threading a seed through.
    """
    if rng is None:
        for a in range(2, 1 << field.m):
            if _is_normal(field, a):
                return a
        raise RuntimeError("no normal element found")  # pragma: no cover
    while True:
        a = rng.getrandbits(field.m)
        if a > 1 and _is_normal(field, a):
            return a


def normal_basis(field: Field, alpha: int | None = None,
                 rng: random.Random | None = None) -> BasisVector:
    """Basis (alpha^[m-1], ..., alpha^[1], alpha) for a normal alpha."""
    if alpha is None:
        alpha = find_normal_element(field, rng)
    elems = [alpha]
    x = alpha
    for _ in range(field.m - 1):
        x = field.sqr(x)
        elems.append(x)
    return BasisVector(field, elems[::-1], kind="normal")


def expand(x: int, basis: BasisVector) -> int:
    """Coordinate mask of x in the given basis (GF(2)-linear bijection)."""
    return basis.coords(basis.field.check(x))


def contract(coords: int, basis: BasisVector) -> int:
    """Inverse of expand."""
    if coords >> basis.field.m:
        raise ValueError("coordinate mask wider than the basis")
    return basis.combine(coords)
