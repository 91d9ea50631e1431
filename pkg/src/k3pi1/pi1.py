"""SL(2,Z) monodromy representations and coinvariant quotients of Z^2.

When the base orbifold of an elliptic fibration is simply connected,
the fundamental group of the open surface is the quotient of the fiber
lattice Z^2 by the subgroup generated by the images of I - T_j, where
T_j runs over the local monodromy matrices.  This module validates
such representations (determinant one, identity product, and an
optional per-entry consistency check against a declared Kodaira type
via the conjugation invariants trace and multiplicative order) and
computes the quotient through the Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .kodaira import KodairaType
from .lattice import smith_normal_form

__all__ = [
    "Mat2",
    "IDENTITY",
    "MINUS_IDENTITY",
    "MonodromyClass",
    "MonodromyRep",
    "AbelianGroup",
    "RepresentationError",
    "DetNotOne",
    "ProductNotIdentity",
    "ClassMismatch",
    "mat_mul2",
    "mat_det2",
    "mat_trace2",
    "mat_power2",
    "kodaira_class_of",
    "validate_representation",
    "coinvariant_quotient",
]

Mat2 = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Mat2 = ((1, 0), (0, 1))
MINUS_IDENTITY: Mat2 = ((-1, 0), (0, -1))


def as_mat2(entries: Sequence[Sequence[int]]) -> Mat2:
    if len(entries) != 2 or any(len(row) != 2 for row in entries):
        raise ValueError("expected a 2x2 matrix")
    return (
        (int(entries[0][0]), int(entries[0][1])),
        (int(entries[1][0]), int(entries[1][1])),
    )


def mat_mul2(a: Mat2, b: Mat2) -> Mat2:
    return (
        (
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ),
        (
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ),
    )


def mat_det2(a: Mat2) -> int:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def mat_trace2(a: Mat2) -> int:
    return a[0][0] + a[1][1]


def mat_power2(a: Mat2, k: int) -> Mat2:
    if k < 0:
        raise ValueError("negative powers not supported")
    out = IDENTITY
    base = a
    while k:
        if k & 1:
            out = mat_mul2(out, base)
        base = mat_mul2(base, base)
        k >>= 1
    return out


class RepresentationError(ValueError):
    pass


class DetNotOne(RepresentationError):
    def __init__(self, index: int, det: int):
        super().__init__(f"matrix {index} has determinant {det}, expected 1")
        self.index = index


class ProductNotIdentity(RepresentationError):
    def __init__(self, product: Mat2):
        super().__init__(f"ordered product is {product}, expected the identity")
        self.product = product


class ClassMismatch(RepresentationError):
    def __init__(self, index: int, declared: KodairaType, actual: "MonodromyClass"):
        super().__init__(
            f"matrix {index} declared {declared.label} but its trace/order "
            f"class is {actual.value}"
        )
        self.index = index


class MonodromyClass(Enum):
    """Conjugation-invariant bucket of an SL(2,Z) element.

    The trace decides everything for |trace| <= 2: traces 1, 0, -1 give
    the elements of multiplicative order 6, 4, 3; trace 2 is the
    identity or a nontrivial unipotent (type I_n); trace -2 is minus
    the identity (type I*_0) or minus a unipotent (type I*_n, n >= 1).
    Hyperbolic elements (|trace| > 2) do not occur as local monodromies
    of elliptic fibrations.
    """

    IDENTITY = "identity"
    UNIPOTENT = "I_n"
    MINUS_IDENTITY = "I*_0"
    MINUS_UNIPOTENT = "I*_n"
    ORDER_SIX = "II/II*"
    ORDER_FOUR = "III/III*"
    ORDER_THREE = "IV/IV*"
    UNRECOGNIZED = "unrecognized"


def kodaira_class_of(t: Mat2) -> MonodromyClass:
    """Trace/order class bucket of a determinant-one integer matrix."""
    t = as_mat2(t)
    det = mat_det2(t)
    if det != 1:
        raise ValueError(f"matrix has determinant {det}, expected 1")
    tr = mat_trace2(t)
    if tr > 2 or tr < -2:
        return MonodromyClass.UNRECOGNIZED
    if tr == 2:
        return MonodromyClass.IDENTITY if t == IDENTITY else MonodromyClass.UNIPOTENT
    if tr == -2:
        return (
            MonodromyClass.MINUS_IDENTITY
            if t == MINUS_IDENTITY
            else MonodromyClass.MINUS_UNIPOTENT
        )
    if tr == 1:
        return MonodromyClass.ORDER_SIX
    if tr == 0:
        return MonodromyClass.ORDER_FOUR
    return MonodromyClass.ORDER_THREE


def expected_class(fiber: KodairaType) -> MonodromyClass:
    """The bucket a monodromy matrix of the given fiber type must hit."""
    if fiber.base == "I":
        return MonodromyClass.UNIPOTENT
    if fiber.base == "I*":
        return (
            MonodromyClass.MINUS_IDENTITY
            if fiber.n == 0
            else MonodromyClass.MINUS_UNIPOTENT
        )
    return {
        "II": MonodromyClass.ORDER_SIX,
        "II*": MonodromyClass.ORDER_SIX,
        "III": MonodromyClass.ORDER_FOUR,
        "III*": MonodromyClass.ORDER_FOUR,
        "IV": MonodromyClass.ORDER_THREE,
        "IV*": MonodromyClass.ORDER_THREE,
    }[fiber.base]


@dataclass(frozen=True)
class MonodromyRep:
    """An ordered tuple of 2x2 integer matrices, optionally annotated
    with the Kodaira type each entry is supposed to represent."""

    matrices: tuple[Mat2, ...]
    declared: tuple[KodairaType | None, ...] = ()

    def __post_init__(self) -> None:
        mats = tuple(as_mat2(m) for m in self.matrices)
        object.__setattr__(self, "matrices", mats)
        declared = tuple(self.declared)
        if not declared:
            declared = (None,) * len(mats)
        if len(declared) != len(mats):
            raise ValueError("declared labels do not match the matrix count")
        object.__setattr__(self, "declared", declared)

    def __len__(self) -> int:
        return len(self.matrices)


def validate_representation(rep: MonodromyRep) -> tuple[MonodromyClass, ...]:
    """Check determinants, the identity product, and declared classes.

    Returns the per-matrix class buckets on success and raises
    DetNotOne / ProductNotIdentity / ClassMismatch otherwise.
    """
    for idx, t in enumerate(rep.matrices):
        det = mat_det2(t)
        if det != 1:
            raise DetNotOne(idx, det)
    product = IDENTITY
    for t in rep.matrices:
        product = mat_mul2(product, t)
    if product != IDENTITY:
        raise ProductNotIdentity(product)
    classes = tuple(kodaira_class_of(t) for t in rep.matrices)
    for idx, (cls, declared) in enumerate(zip(classes, rep.declared)):
        if declared is not None and cls is not expected_class(declared):
            raise ClassMismatch(idx, declared, cls)
    return classes


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group as invariant factors d_1 | d_2 | ...

    0 encodes a free factor; factors equal to 1 are dropped, zeros come
    last, so the trivial group is the empty tuple.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        factors = tuple(int(d) for d in self.invariant_factors if d != 1)
        for d in factors:
            if d < 0:
                raise ValueError("invariant factors must be nonnegative")
        nonzero = [d for d in factors if d]
        zeros = [d for d in factors if d == 0]
        if tuple(nonzero + zeros) != factors:
            raise ValueError("zeros must come after the nonzero factors")
        for a, b in zip(nonzero, nonzero[1:]):
            if b % a:
                raise ValueError(f"broken divisibility chain {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        total = 1
        for d in self.invariant_factors:
            total *= d
        return total

    def describe(self) -> str:
        if self.is_trivial:
            return "1"
        parts = []
        free = self.rank
        for d in self.invariant_factors:
            if d:
                parts.append(f"Z/{d}")
        if free == 1:
            parts.append("Z")
        elif free > 1:
            parts.append(f"Z^{free}")
        return " x ".join(parts)

    def __str__(self) -> str:
        return self.describe()


def coinvariant_quotient(
    rep: MonodromyRep, subset: Iterable[int] | None = None
) -> AbelianGroup:
    """Z^2 modulo the columns of I - T_j for j in the chosen subset.

    `subset` holds 0-based indices into the representation; None means
    all entries.  The empty subset leaves Z^2 untouched, encoded as
    invariant factors (0, 0).
    """
    k = len(rep.matrices)
    if subset is None:
        indices = list(range(k))
    else:
        indices = sorted(set(int(j) for j in subset))
        for j in indices:
            if not 0 <= j < k:
                raise ValueError(f"subset index {j} out of range 0..{k - 1}")
    cols: list[tuple[int, int]] = []
    for j in indices:
        t = rep.matrices[j]
        cols.append((1 - t[0][0], -t[1][0]))
        cols.append((-t[0][1], 1 - t[1][1]))
    if not cols:
        return AbelianGroup((0, 0))
    stacked = [
        [c[0] for c in cols],
        [c[1] for c in cols],
    ]
    diag = smith_normal_form(stacked).diagonal
    factors = [diag[i] if i < len(diag) else 0 for i in range(2)]
    nonzero = [d for d in factors if d]
    zeros = [0] * (2 - len(nonzero))
    return AbelianGroup(tuple(nonzero + zeros))
