"""Exact integer lattice toolkit.

Smith normal form with unimodular transforms, Gram matrices of ADE
configurations and of the rank-22 even unimodular lattice of signature
(3,19), inertia signatures by rational congruence, saturated orthogonal
complements, and bounded search for isotropic vectors (the evidence
side of Meyer's theorem on indefinite forms of rank >= 5).

No floating point is used anywhere: matrices are Python integers and
the signature routine works over Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .dynkin import AdeConfig, DuValType

__all__ = [
    "IntegerGram",
    "SnfResult",
    "MeyerReport",
    "smith_normal_form",
    "determinant",
    "mat_mul",
    "gram_of_config",
    "k3_gram",
    "signature",
    "orthogonal_complement",
    "isotropic_search",
    "evaluate_form",
    "meyer_gate",
]

Matrix = Sequence[Sequence[int]]


def _copy_int_matrix(a: Matrix) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in a]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
    return rows


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> list[list[int]]:
    """Integer matrix product."""
    m = len(a)
    inner = len(b)
    if m and inner != len(a[0]):
        raise ValueError("dimension mismatch")
    n = len(b[0]) if inner else 0
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        arow = a[i]
        orow = out[i]
        for k in range(inner):
            aik = arow[k]
            if aik:
                brow = b[k]
                for j in range(n):
                    orow[j] += aik * brow[j]
    return out


@dataclass(frozen=True)
class IntegerGram:
    """A symmetric integer matrix viewed as the Gram matrix of a lattice."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Matrix) -> "IntegerGram":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def is_even(self) -> bool:
        return all(self.rows[i][i] % 2 == 0 for i in range(self.dim))


@dataclass(frozen=True)
class SnfResult:
    """U A V = D with U, V unimodular and D the Smith normal form."""

    u: tuple[tuple[int, ...], ...]
    d: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        m = len(self.d)
        n = len(self.d[0]) if m else 0
        return tuple(self.d[i][i] for i in range(min(m, n)))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def smith_normal_form(a: Matrix) -> SnfResult:
    """Smith normal form of an arbitrary rectangular integer matrix.

    Returns (U, D, V) with U A V = D, |det U| = |det V| = 1, and
    D diagonal, nonnegative, with d1 | d2 | ... followed by zeros.
    """
    m_rows = _copy_int_matrix(a)
    m = len(m_rows)
    n = len(m_rows[0]) if m else 0
    u = _identity(m)
    v = _identity(n)
    mat = m_rows

    def row_op(i: int, k: int, q: int) -> None:
        mi, mk = mat[i], mat[k]
        for j in range(n):
            mi[j] -= q * mk[j]
        ui, uk = u[i], u[k]
        for j in range(m):
            ui[j] -= q * uk[j]

    def col_op(j: int, k: int, q: int) -> None:
        for r in range(m):
            mat[r][j] -= q * mat[r][k]
        for r in range(n):
            v[r][j] -= q * v[r][k]

    def row_swap(i: int, k: int) -> None:
        mat[i], mat[k] = mat[k], mat[i]
        u[i], u[k] = u[k], u[i]

    def col_swap(j: int, k: int) -> None:
        for r in range(m):
            mat[r][j], mat[r][k] = mat[r][k], mat[r][j]
        for r in range(n):
            v[r][j], v[r][k] = v[r][k], v[r][j]

    for t in range(min(m, n)):
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = mat[i][j]
                if x and (best is None or abs(x) < abs(mat[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])

        while True:
            restart = False
            for i in range(t + 1, m):
                if mat[i][t] == 0:
                    continue
                row_op(i, t, mat[i][t] // mat[t][t])
                if mat[i][t]:
                    row_swap(i, t)  # strictly smaller pivot
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, n):
                if mat[t][j] == 0:
                    continue
                col_op(j, t, mat[t][j] // mat[t][t])
                if mat[t][j]:
                    col_swap(j, t)
                    restart = True
                    break
            if restart:
                continue
            d = mat[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if mat[i][j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, -1)  # pull the offending row into row t

    for t in range(min(m, n)):
        if mat[t][t] < 0:
            for j in range(n):
                mat[t][j] = -mat[t][j]
            for j in range(m):
                u[t][j] = -u[t][j]

    return SnfResult(
        u=tuple(tuple(row) for row in u),
        d=tuple(tuple(row) for row in mat),
        v=tuple(tuple(row) for row in v),
    )


def determinant(a: Matrix) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    mat = _copy_int_matrix(a)
    n = len(mat)
    if n and len(mat[0]) != n:
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            for i in range(k + 1, n):
                if mat[i][k]:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = mat[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * pivot - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = pivot
    return sign * mat[n - 1][n - 1]


def _block_diag(blocks: list[list[list[int]]]) -> list[list[int]]:
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[offset + i][offset + j] = b[i][j]
        offset += k
    return out


def gram_of_config(c: AdeConfig) -> IntegerGram:
    """Negated block-diagonal Cartan matrix of an ADE configuration.

    This is the Gram matrix of the sublattice spanned by the
    exceptional (-2)-curves; it is negative definite of rank r with
    |det| the product of the Cartan determinants.
    """
    blocks = []
    for t in c.entries:
        cart = t.cartan_matrix()
        blocks.append([[-x for x in row] for row in cart])
    return IntegerGram.from_rows(_block_diag(blocks))


_U_BLOCK = [[0, 1], [1, 0]]


def k3_gram() -> IntegerGram:
    """Gram matrix of U + U + U + E8(-1) + E8(-1).

    The rank-22 even unimodular lattice of signature (3,19) carried by
    the second cohomology of a K3 surface.
    """
    e8_neg = [[-x for x in row] for row in DuValType("E", 8).cartan_matrix()]
    return IntegerGram.from_rows(
        _block_diag([_U_BLOCK, _U_BLOCK, _U_BLOCK, e8_neg, e8_neg])
    )


def signature(g: IntegerGram) -> tuple[int, int, int]:
    """Inertia (positive, negative, zero) of a symmetric integer matrix.

    Computed by symmetric congruence elimination over Fraction, with
    the usual rank-2 trick when the trailing diagonal is entirely zero.
    """
    n = g.dim
    mat = [[Fraction(x) for x in row] for row in g.rows]
    pos = neg = null = 0
    for k in range(n):
        if mat[k][k] == 0:
            swap = None
            for i in range(k + 1, n):
                if mat[i][i] != 0:
                    swap = i
                    break
            if swap is not None:
                mat[k], mat[swap] = mat[swap], mat[k]
                for row in mat:
                    row[k], row[swap] = row[swap], row[k]
            else:
                off = None
                for i in range(k + 1, n):
                    if mat[k][i] != 0:
                        off = i
                        break
                if off is None:
                    null += 1
                    continue
                # both diagonals vanish: adding row/col `off` makes
                # the pivot 2 * mat[k][off] != 0
                for j in range(n):
                    mat[k][j] += mat[off][j]
                for i in range(n):
                    mat[i][k] += mat[i][off]
        pivot = mat[k][k]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = mat[i][k] / pivot
            if f:
                for j in range(n):
                    mat[i][j] -= f * mat[k][j]
                for j in range(n):
                    mat[j][i] -= f * mat[j][k]
    return (pos, neg, null)


def orthogonal_complement(
    ambient: IntegerGram, vectors: Sequence[Sequence[int]]
) -> tuple[tuple[int, ...], ...]:
    """Saturated integral basis of {x : x . v = 0 for all given v}.

    The pairing matrix rows are v^T G; its kernel is computed through
    the Smith normal form, so the returned basis spans a primitive
    sublattice.  An empty vector list returns the standard basis.
    """
    n = ambient.dim
    vecs = [list(map(int, v)) for v in vectors]
    for v in vecs:
        if len(v) != n:
            raise ValueError("vector dimension does not match the ambient lattice")
    if not vecs:
        return tuple(tuple(row) for row in _identity(n))
    pairing = [
        [sum(v[i] * ambient.rows[i][j] for i in range(n)) for j in range(n)]
        for v in vecs
    ]
    snf = smith_normal_form(pairing)
    rank = snf.rank
    basis = []
    for j in range(rank, n):
        basis.append(tuple(snf.v[i][j] for i in range(n)))
    return tuple(basis)


def evaluate_form(g: IntegerGram, x: Sequence[int]) -> int:
    """The value x . G . x."""
    n = g.dim
    if len(x) != n:
        raise ValueError("vector dimension mismatch")
    return sum(g.rows[i][j] * x[i] * x[j] for i in range(n) for j in range(n))


def isotropic_search(g: IntegerGram, bound: int) -> tuple[int, ...] | None:
    """First nonzero x with |x_i| <= bound and x . G . x = 0, or None.

    Coordinates are explored in the order 0, 1, -1, 2, -2, ...; the
    first hit of the depth-first search is returned, which makes the
    result the minimum in the ordering that compares coordinates left
    to right by (absolute value, then positive before negative).

    Subtrees are cut when the exact reachable range of the remaining
    coordinates (per-coordinate quadratic extremes plus off-diagonal
    bounds) cannot cancel the value pinned down by the fixed prefix,
    and when the prefix is still zero but the trailing block of the
    form is definite, so that no nonzero tail can vanish.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    n = g.dim
    if n == 0:
        return None
    rows = g.rows
    b2 = bound * bound
    # off_bound[k] = sum over k <= i < j of 2 |G_ij| B^2
    off_bound = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        off_bound[k] = off_bound[k + 1]
        for j in range(k + 1, n):
            off_bound[k] += 2 * abs(rows[k][j]) * b2
    # trailing-block definiteness: no nonzero vector on a definite block
    # evaluates to zero
    tail_definite = [False] * (n + 1)
    for k in range(n):
        block = IntegerGram.from_rows([row[k:] for row in rows[k:]])
        pos, neg, null = signature(block)
        tail_definite[k] = null == 0 and (pos == 0 or neg == 0) and block.dim > 0

    x = [0] * n
    cross = [0] * n  # cross[i] = sum_{j < level} G[i][j] * x[j]
    values = [0]
    for v in range(1, bound + 1):
        values.append(v)
        values.append(-v)

    def quad_range(c: int, a: int) -> tuple[int, int]:
        # extremes of a v^2 + 2 c v over integer v in [-B, B]
        lo = hi = 0
        for v in (bound, -bound):
            val = a * v * v + 2 * c * v
            lo = min(lo, val)
            hi = max(hi, val)
        if a:
            vertex = round(Fraction(-c, a))
            if -bound <= vertex <= bound:
                val = a * vertex * vertex + 2 * c * vertex
                lo = min(lo, val)
                hi = max(hi, val)
        return lo, hi

    def last_level(partial: int, nonzero: bool) -> int | None:
        # minimal root of a v^2 + 2 c v + partial = 0 in the value order
        a = rows[n - 1][n - 1]
        c = cross[n - 1]
        roots: list[int] = []
        if a == 0 and c == 0:
            if partial == 0:
                return 0 if nonzero else 1 if bound >= 1 else None
            return None
        if a == 0:
            if partial % (2 * c) == 0:
                roots.append(-partial // (2 * c))
        else:
            disc = c * c - a * partial
            if disc >= 0:
                s = isqrt(disc)
                if s * s == disc:
                    for num in (-c + s, -c - s):
                        if num % a == 0:
                            roots.append(num // a)
        roots = [
            v for v in set(roots) if abs(v) <= bound and (nonzero or v != 0)
        ]
        if not roots:
            return None
        return min(roots, key=lambda v: (abs(v), -v))

    def dfs(level: int, partial: int, nonzero: bool) -> tuple[int, ...] | None:
        if level == n:
            if nonzero and partial == 0:
                return tuple(x)
            return None
        if not nonzero and tail_definite[level]:
            return None
        if level == n - 1:
            v = last_level(partial, nonzero)
            if v is None:
                return None
            x[level] = v
            return tuple(x)
        rmin = -off_bound[level]
        rmax = off_bound[level]
        for i in range(level, n):
            lo, hi = quad_range(cross[i], rows[i][i])
            rmin += lo
            rmax += hi
        if partial + rmin > 0 or partial + rmax < 0:
            return None
        saved = [cross[i] for i in range(level + 1, n)]
        for v in values:
            x[level] = v
            new_partial = partial + 2 * v * cross[level] + rows[level][level] * v * v
            for i in range(level + 1, n):
                cross[i] = saved[i - level - 1] + rows[i][level] * v
            hit = dfs(level + 1, new_partial, nonzero or v != 0)
            if hit is not None:
                return hit
        x[level] = 0
        for i in range(level + 1, n):
            cross[i] = saved[i - level - 1]
        return None

    return dfs(0, 0, False)


@dataclass(frozen=True)
class MeyerReport:
    """Outcome of the bounded isotropic search with the rank/indefiniteness
    hypotheses of Meyer's theorem spelled out.

    An exhausted search under the hypotheses is only a bound warning,
    never a refutation: the theorem guarantees an isotropic vector
    exists, just not inside the box."""

    signature: tuple[int, int, int]
    bound: int
    vector: tuple[int, ...] | None

    @property
    def rank(self) -> int:
        return self.signature[0] + self.signature[1]

    @property
    def indefinite(self) -> bool:
        return self.signature[0] > 0 and self.signature[1] > 0

    @property
    def hypotheses_hold(self) -> bool:
        return self.indefinite and self.rank >= 5

    @property
    def exhausted(self) -> bool:
        return self.vector is None

    @property
    def hypotheses_hold_but_exhausted(self) -> bool:
        return self.hypotheses_hold and self.exhausted


def meyer_gate(g: IntegerGram, bound: int) -> MeyerReport:
    """Run the bounded isotropic search and report it against the
    hypotheses of Meyer's theorem (indefinite, rank >= 5)."""
    sig = signature(g)
    vec = isotropic_search(g, bound)
    return MeyerReport(signature=sig, bound=bound, vector=vec)
