"""Genus-zero 2-orbifold classification and coset enumeration.

A sphere with cone points of orders m_1 <= ... <= m_k is governed by
its orbifold Euler characteristic chi = 2 - sum(1 - 1/m_j):

* chi > 0 or k <= 2: the orbifold fundamental group is finite
  (trivial for k <= 1, cyclic of order gcd(m_1, m_2) for k = 2, a
  spherical von Dyck group of order 2/chi for k >= 3),
* chi = 0: euclidean, exactly the signatures (2,3,6), (2,4,4),
  (3,3,3) and (2,2,2,2),
* chi < 0: hyperbolic, the group is an infinite Fuchsian group.

The group orders are double-checked by an independent Todd-Coxeter
style coset enumeration on the presentation

    < g_1, ..., g_k | g_j^{m_j}, g_1 g_2 ... g_k >.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "OrbifoldSignature",
    "OrbifoldClass",
    "SPHERICAL_OR_BAD",
    "EUCLIDEAN",
    "HYPERBOLIC",
    "EUCLIDEAN_SIGNATURES",
    "orbifold_euler_characteristic",
    "classify",
    "group_order_oracle",
    "coset_enumeration_order",
]

SPHERICAL_OR_BAD = "spherical_or_bad"
EUCLIDEAN = "euclidean"
HYPERBOLIC = "hyperbolic"

EUCLIDEAN_SIGNATURES = frozenset(
    {(2, 3, 6), (2, 4, 4), (3, 3, 3), (2, 2, 2, 2)}
)


@dataclass(frozen=True)
class OrbifoldSignature:
    """Multiset of cone point orders, stored sorted with 1s dropped."""

    cone_orders: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        orders = []
        for m in self.cone_orders:
            m = int(m)
            if m < 1:
                raise ValueError(f"cone order must be >= 1, got {m}")
            if m > 1:
                orders.append(m)
        object.__setattr__(self, "cone_orders", tuple(sorted(orders)))

    @classmethod
    def parse(cls, text: str) -> "OrbifoldSignature":
        text = text.strip()
        if not text:
            return cls()
        return cls(tuple(int(part) for part in text.split(",")))

    @property
    def k(self) -> int:
        return len(self.cone_orders)

    def __str__(self) -> str:
        return "(" + ",".join(str(m) for m in self.cone_orders) + ")"


def orbifold_euler_characteristic(s: OrbifoldSignature) -> Fraction:
    """chi = 2 - sum(1 - 1/m) over the cone orders, exactly."""
    chi = Fraction(2)
    for m in s.cone_orders:
        chi -= 1 - Fraction(1, m)
    return chi


@dataclass(frozen=True)
class OrbifoldClass:
    """Classification result; `order` is the group order in the
    spherical-or-bad case and None otherwise."""

    kind: str
    order: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind == SPHERICAL_OR_BAD


def classify(s: OrbifoldSignature) -> OrbifoldClass:
    """Finite / euclidean / hyperbolic trichotomy of the signature.

    Few cone points make the group finite regardless of chi (trivial
    for k <= 1, cyclic of order gcd for k = 2, the "bad" orbifolds
    included); from three cone points on, the sign of chi decides, and
    2/chi is the (integer) order of the spherical von Dyck group.
    """
    orders = s.cone_orders
    if len(orders) == 0 or len(orders) == 1:
        return OrbifoldClass(SPHERICAL_OR_BAD, 1)
    if len(orders) == 2:
        return OrbifoldClass(SPHERICAL_OR_BAD, gcd(orders[0], orders[1]))
    chi = orbifold_euler_characteristic(s)
    if chi > 0:
        order = Fraction(2) / chi
        if order.denominator != 1:
            raise AssertionError(
                f"positive chi with non-integer 2/chi at {s}: {order}"
            )
        return OrbifoldClass(SPHERICAL_OR_BAD, int(order))
    if chi == 0:
        if orders not in EUCLIDEAN_SIGNATURES:
            raise AssertionError(f"chi = 0 outside the euclidean table: {s}")
        return OrbifoldClass(EUCLIDEAN)
    return OrbifoldClass(HYPERBOLIC)


# ----------------------------------------------------------------------
# Todd-Coxeter coset enumeration

_SENT = -1


class _CosetLimit(Exception):
    pass


def coset_enumeration_order(
    ngens: int, relators: list[list[int]], limit: int
) -> int | None:
    """Order of <g_0..g_{ngens-1} | relators>, or None if the
    enumeration does not close within `limit` defined cosets.

    Relator words use symbol 2*g for generator g and 2*g + 1 for its
    inverse.  The coset table keeps inverse edges consistent on
    creation and handles coincidences with a union-find merge, so a
    closed table is a genuine permutation representation and the count
    of live cosets is the group order.
    """
    width = 2 * ngens
    for rel in relators:
        for sym in rel:
            if not 0 <= sym < width:
                raise ValueError(f"relator symbol {sym} out of range")
    parent: list[int] = []
    table: list[list[int]] = []

    def new_coset() -> int:
        if len(parent) >= limit:
            raise _CosetLimit
        parent.append(len(parent))
        table.append([_SENT] * width)
        return len(parent) - 1

    def find(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def step(c: int, sym: int) -> int:
        c = find(c)
        d = table[c][sym]
        if d == _SENT:
            d = new_coset()
            table[c][sym] = d
            table[d][sym ^ 1] = c
        return find(d)

    def unify(a: int, b: int) -> None:
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            parent[b] = a
            row_a, row_b = table[a], table[b]
            for sym in range(width):
                nb = row_b[sym]
                if nb == _SENT:
                    continue
                na = row_a[sym]
                if na == _SENT:
                    row_a[sym] = nb
                else:
                    stack.append((na, nb))

    try:
        new_coset()
        visit = 0
        while visit < len(parent):
            if find(visit) == visit:
                for rel in relators:
                    c = find(visit)
                    d = c
                    for sym in rel:
                        d = step(d, sym)
                    unify(d, c)
            visit += 1
    except _CosetLimit:
        return None
    return sum(1 for c in range(len(parent)) if find(c) == c)


def group_order_oracle(s: OrbifoldSignature, limit: int) -> int | None:
    """Coset enumeration on <g_1..g_k | g_j^{m_j}, g_1...g_k>.

    Returns the exact group order when the enumeration closes within
    `limit` cosets, None (inconclusive) otherwise.  Only desk-scale
    signatures are accepted: at most 4 cone points of order at most 8.
    """
    if s.k > 4:
        raise ValueError(f"oracle accepts at most 4 cone points, got {s.k}")
    if any(m > 8 for m in s.cone_orders):
        raise ValueError(f"oracle accepts cone orders up to 8, got {s}")
    if limit < 1:
        raise ValueError("limit must be positive")
    k = s.k
    relators = [[2 * j] * m for j, m in enumerate(s.cone_orders)]
    relators.append([2 * j for j in range(k)])
    return coset_enumeration_order(k, relators, limit)
