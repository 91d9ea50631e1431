"""Independent brute-force oracles used by the test suite.

Everything here is deliberately naive and kept separate from the
library so the two sides of each check share no code:

* exact cyclotomic arithmetic and closure enumeration of finite
  subgroups of SU(2), used to validate the Du Val delta table,
* cofactor-expansion determinants and k x k minor gcds, used to
  validate Smith normal forms,
* full-grid isotropic vector search without pruning,
* 2x2 integer matrix powering.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd


# ----------------------------------------------------------------------
# integer polynomials (coefficient lists, low degree first)


def _poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_divmod_exact(a, b):
    """Divide integer polynomials; b must be monic and divide a exactly."""
    a = list(a)
    db = len(b) - 1
    assert b[-1] == 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    assert all(c == 0 for c in a), "non-exact polynomial division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n == 1:
        return (-1, 1)
    poly = [0] * (n + 1)
    poly[0] = -1
    poly[n] = 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CycField:
    """Q(zeta_n) with elements as coefficient tuples modulo Phi_n."""

    def __init__(self, n: int):
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.deg = len(self.phi) - 1

    def reduce(self, coeffs) -> tuple[Fraction, ...]:
        c = [Fraction(x) for x in coeffs]
        for i in range(len(c) - 1, self.deg - 1, -1):
            top = c[i]
            if top:
                for j in range(self.deg + 1):
                    c[i - self.deg + j] -= top * self.phi[j]
        c = c[: self.deg]
        c += [Fraction(0)] * (self.deg - len(c))
        return tuple(c)

    def zero(self):
        return self.reduce([])

    def one(self):
        return self.reduce([1])

    def rational(self, q):
        return self.reduce([Fraction(q)])

    def zeta(self, k: int = 1):
        """zeta_n^k in the power basis."""
        k %= self.n
        return self.reduce([0] * k + [1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        prod = [Fraction(0)] * (2 * self.deg)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.reduce(prod)


def _mat2_mul(field, a, b):
    """2x2 matrices over a CycField stored as 4-tuples (row major)."""
    a00, a01, a10, a11 = a
    b00, b01, b10, b11 = b
    m, ad = field.mul, field.add
    return (
        ad(m(a00, b00), m(a01, b10)),
        ad(m(a00, b01), m(a01, b11)),
        ad(m(a10, b00), m(a11, b10)),
        ad(m(a10, b01), m(a11, b11)),
    )


def closure_order(field, generators, limit: int = 4096) -> int:
    """Order of the matrix group generated by closing under products."""
    identity = (field.one(), field.zero(), field.zero(), field.one())
    seen = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for g in frontier:
            for h in generators:
                p = _mat2_mul(field, g, h)
                if p not in seen:
                    seen.add(p)
                    new.append(p)
        if len(seen) > limit:
            raise RuntimeError(f"closure exceeded {limit} elements")
        frontier = new
    return len(seen)


def _quaternion_matrix(field, i_unit, a, b, c, d):
    """The SU(2) image of a + bi + cj + dk; a,b,c,d are field elements."""
    top_left = field.add(a, field.mul(b, i_unit))
    top_right = field.add(c, field.mul(d, i_unit))
    bot_left = field.add(field.neg(c), field.mul(d, i_unit))
    bot_right = field.sub(a, field.mul(b, i_unit))
    return (top_left, top_right, bot_left, bot_right)


def binary_group_order(kind: str, n: int) -> int:
    """Order of the finite SL(2,C) subgroup attached to a Du Val type.

    Enumerated by closure from standard generators with exact
    cyclotomic entries; completely independent of the library's tables.
    """
    if kind == "A":
        field = CycField(n + 1)
        z = field.zeta(1)
        zinv = field.zeta(n)
        g = (z, field.zero(), field.zero(), zinv)
        return closure_order(field, [g])
    if kind == "D":
        m = n - 2
        field = CycField(2 * m)
        z = field.zeta(1)
        zinv = field.zeta(2 * m - 1)
        x = (z, field.zero(), field.zero(), zinv)
        j = (field.zero(), field.one(), field.rational(-1), field.zero())
        return closure_order(field, [x, j])
    if kind == "E" and n == 6:
        field = CycField(4)
        i_unit = field.zeta(1)
        half = Fraction(1, 2)
        omega = _quaternion_matrix(
            field,
            i_unit,
            field.rational(half),
            field.rational(half),
            field.rational(half),
            field.rational(half),
        )
        qi = _quaternion_matrix(
            field, i_unit, field.zero(), field.one(), field.zero(), field.zero()
        )
        return closure_order(field, [omega, qi])
    if kind == "E" and n == 7:
        field = CycField(8)
        i_unit = field.zeta(2)
        half = Fraction(1, 2)
        omega = _quaternion_matrix(
            field,
            i_unit,
            field.rational(half),
            field.rational(half),
            field.rational(half),
            field.rational(half),
        )
        # (1 + i)/sqrt(2) = zeta_8 acts diagonally
        s = (field.zeta(1), field.zero(), field.zero(), field.zeta(7))
        return closure_order(field, [omega, s])
    if kind == "E" and n == 8:
        field = CycField(20)
        i_unit = field.zeta(5)
        # sqrt(5) as the quadratic Gauss sum over the 5th roots of unity
        sqrt5 = field.reduce([0])
        for k, sign in ((1, 1), (2, -1), (3, -1), (4, 1)):
            term = field.zeta(4 * k)
            sqrt5 = field.add(sqrt5, term if sign > 0 else field.neg(term))
        assert field.mul(sqrt5, sqrt5) == field.rational(5)
        one = field.one()
        half = field.rational(Fraction(1, 2))
        phi = field.mul(field.add(one, sqrt5), half)  # golden ratio
        phi_inv = field.mul(field.sub(sqrt5, one), half)
        omega = _quaternion_matrix(field, i_unit, half, half, half, half)
        q = _quaternion_matrix(
            field,
            i_unit,
            field.mul(phi, half),
            field.mul(phi_inv, half),
            half,
            field.zero(),
        )
        return closure_order(field, [omega, q])
    raise ValueError(f"no generator data for {kind}{n}")


# ----------------------------------------------------------------------
# integer matrix oracles


def det_cofactor(rows) -> int:
    """Determinant by recursive cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        a = rows[0][j]
        if a == 0:
            continue
        minor = [
            [rows[i][c] for c in range(n) if c != j] for i in range(1, n)
        ]
        total += (-1) ** j * a * det_cofactor(minor)
    return total


def minors_gcd(rows, k: int) -> int:
    """gcd of all k x k minors (0 if every minor vanishes)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    g = 0
    for rsel in itertools.combinations(range(m), k):
        for csel in itertools.combinations(range(n), k):
            sub = [[rows[i][j] for j in csel] for i in rsel]
            g = gcd(g, det_cofactor(sub))
            if g == 1:
                return 1
    return g


def brute_isotropic(rows, bound: int):
    """All nonzero vectors x with |x_i| <= bound and x.G.x = 0."""
    n = len(rows)
    found = []
    for x in itertools.product(range(-bound, bound + 1), repeat=n):
        if not any(x):
            continue
        val = sum(rows[i][j] * x[i] * x[j] for i in range(n) for j in range(n))
        if val == 0:
            found.append(x)
    return found


def mat2_power_order(t, limit: int = 12):
    """Multiplicative order of a 2x2 integer matrix, or None if > limit."""
    ident = ((1, 0), (0, 1))
    cur = t
    for k in range(1, limit + 1):
        if cur == ident:
            return k
        cur = (
            (
                cur[0][0] * t[0][0] + cur[0][1] * t[1][0],
                cur[0][0] * t[0][1] + cur[0][1] * t[1][1],
            ),
            (
                cur[1][0] * t[0][0] + cur[1][1] * t[1][0],
                cur[1][0] * t[0][1] + cur[1][1] * t[1][1],
            ),
        )
    return None
