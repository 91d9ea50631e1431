"""Kodaira singular fiber tables and decorations.

Each singular fiber type of an elliptic surface carries: an ordered
list of components with multiplicities, the dual graph of the
components (edge weights are intersection numbers), a canonical SL(2,Z)
monodromy representative, and its Euler number.  A decoration marks a
proper subset of the components as "removed": the removed curves are
the ones contracted to Du Val points, the kept components determine the
cone order of the base orbifold as the gcd of their multiplicities.

Component naming, fixed once and for all:

* I_1 and II: a single component c0 (no nonempty decorations),
* I_n (n >= 2): a cycle c0..c{n-1}, all multiplicity 1 (for n = 2 the
  two components meet twice, recorded as one edge of weight 2),
* III: c0, c1 meeting tangentially (one edge of weight 2),
* IV: c0, c1, c2 through one point, modelled as three simple edges,
* I*_n: tails t1..t4 of multiplicity 1 and a chain c0..cn of
  multiplicity 2, with t1, t2 on c0 and t3, t4 on cn,
* IV*: center z of multiplicity 3 with three arms a1-a2, b1-b2, d1-d2
  of multiplicities 1-2,
* III*: chain c1..c7 of multiplicities 1,2,3,4,3,2,1 with a branch b1
  of multiplicity 2 on c4,
* II*: chain c1..c8 of multiplicities 1,2,3,4,5,6,4,2 with a branch b1
  of multiplicity 3 on c6.

The monodromy representatives are the usual ones: conjugation freedom
is deliberately not resolved here; consumers match matrices to types
only through conjugation invariants (trace and multiplicative order).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Sequence

from .dynkin import AdeConfig, DuValType, NotAdeError, recognize_ade

__all__ = [
    "KodairaType",
    "FiberData",
    "Decoration",
    "DecorationSummary",
    "FibrationSummary",
    "DecorationOutcome",
    "DecorationError",
    "UnknownComponent",
    "FullSupportRemoved",
    "NotAdeRemovedSet",
    "EulerSumMismatch",
    "fiber_data",
    "validate_decoration",
    "validate_k3_fibration",
    "decoration_outcomes",
    "K3_EULER_NUMBER",
]

K3_EULER_NUMBER = 24

_PLAIN = ("II", "III", "IV", "IV*", "III*", "II*")
_PLAIN_EULER = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}
_LABEL_RE = re.compile(r"^(I\*|I|II\*|II|III\*|III|IV\*|IV)(\d*)$")

Mat2 = tuple[tuple[int, int], tuple[int, int]]


class DecorationError(ValueError):
    """Base class for invalid decorations and fibrations."""


class UnknownComponent(DecorationError):
    pass


class FullSupportRemoved(DecorationError):
    pass


class NotAdeRemovedSet(DecorationError):
    pass


class EulerSumMismatch(DecorationError):
    def __init__(self, actual: int):
        super().__init__(
            f"fiber Euler numbers sum to {actual}, a K3 surface needs {K3_EULER_NUMBER}"
        )
        self.actual = actual


@dataclass(frozen=True, order=True)
class KodairaType:
    """A Kodaira fiber label: I_n (n >= 1), II, III, IV, I*_n (n >= 0),
    IV*, III*, II*."""

    base: str
    n: int | None = None

    def __post_init__(self) -> None:
        if self.base == "I":
            if self.n is None or self.n < 1:
                raise ValueError(f"type I needs n >= 1, got {self.n}")
        elif self.base == "I*":
            if self.n is None or self.n < 0:
                raise ValueError(f"type I* needs n >= 0, got {self.n}")
        elif self.base in _PLAIN:
            if self.n is not None:
                raise ValueError(f"type {self.base} takes no index")
        else:
            raise ValueError(f"invalid Kodaira base {self.base!r}")

    @property
    def label(self) -> str:
        if self.n is None:
            return self.base
        return f"{self.base}{self.n}"

    @property
    def euler(self) -> int:
        if self.base == "I":
            return self.n
        if self.base == "I*":
            return self.n + 6
        return _PLAIN_EULER[self.base]

    @classmethod
    def parse(cls, label: str) -> "KodairaType":
        m = _LABEL_RE.match(label)
        if not m:
            raise ValueError(f"invalid Kodaira label {label!r}")
        base, digits = m.groups()
        if base in ("I", "I*"):
            if not digits:
                raise ValueError(f"label {label!r} needs an index")
            return cls(base, int(digits))
        if digits:
            raise ValueError(f"label {label!r} takes no index")
        return cls(base)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class FiberData:
    """Canonical table entry for one Kodaira fiber type."""

    fiber: KodairaType
    components: tuple[tuple[str, int], ...]
    dual_graph: tuple[tuple[str, str, int], ...]
    monodromy: Mat2
    euler: int

    @property
    def component_ids(self) -> tuple[str, ...]:
        return tuple(cid for cid, _ in self.components)

    def multiplicity(self, cid: str) -> int:
        for c, m in self.components:
            if c == cid:
                return m
        raise KeyError(cid)


def _monodromy(t: KodairaType) -> Mat2:
    if t.base == "I":
        return ((1, t.n), (0, 1))
    if t.base == "I*":
        return ((-1, -t.n), (0, -1))
    return {
        "II": ((1, 1), (-1, 0)),
        "III": ((0, 1), (-1, 0)),
        "IV": ((0, 1), (-1, -1)),
        "IV*": ((-1, -1), (1, 0)),
        "III*": ((0, -1), (1, 0)),
        "II*": ((0, -1), (1, 1)),
    }[t.base]


def _build_fiber(t: KodairaType) -> FiberData:
    comps: list[tuple[str, int]] = []
    edges: list[tuple[str, str, int]] = []
    if t.base == "I":
        n = t.n
        if n == 1:
            comps = [("c0", 1)]
        elif n == 2:
            comps = [("c0", 1), ("c1", 1)]
            edges = [("c0", "c1", 2)]
        else:
            comps = [(f"c{i}", 1) for i in range(n)]
            edges = [(f"c{i}", f"c{(i + 1) % n}", 1) for i in range(n)]
    elif t.base == "II":
        comps = [("c0", 1)]
    elif t.base == "III":
        comps = [("c0", 1), ("c1", 1)]
        edges = [("c0", "c1", 2)]
    elif t.base == "IV":
        comps = [("c0", 1), ("c1", 1), ("c2", 1)]
        edges = [("c0", "c1", 1), ("c0", "c2", 1), ("c1", "c2", 1)]
    elif t.base == "I*":
        n = t.n
        comps = [("t1", 1), ("t2", 1), ("t3", 1), ("t4", 1)]
        comps += [(f"c{i}", 2) for i in range(n + 1)]
        edges = [("t1", "c0", 1), ("t2", "c0", 1)]
        edges += [(f"c{i}", f"c{i + 1}", 1) for i in range(n)]
        edges += [("t3", f"c{n}", 1), ("t4", f"c{n}", 1)]
    elif t.base == "IV*":
        comps = [("z", 3)]
        for arm in ("a", "b", "d"):
            comps += [(f"{arm}1", 1), (f"{arm}2", 2)]
            edges += [(f"{arm}1", f"{arm}2", 1), (f"{arm}2", "z", 1)]
    elif t.base == "III*":
        mults = [1, 2, 3, 4, 3, 2, 1]
        comps = [(f"c{i + 1}", m) for i, m in enumerate(mults)]
        comps.append(("b1", 2))
        edges = [(f"c{i}", f"c{i + 1}", 1) for i in range(1, 7)]
        edges.append(("b1", "c4", 1))
    else:  # II*
        mults = [1, 2, 3, 4, 5, 6, 4, 2]
        comps = [(f"c{i + 1}", m) for i, m in enumerate(mults)]
        comps.append(("b1", 3))
        edges = [(f"c{i}", f"c{i + 1}", 1) for i in range(1, 8)]
        edges.append(("b1", "c6", 1))
    mono = _monodromy(t)
    det = mono[0][0] * mono[1][1] - mono[0][1] * mono[1][0]
    assert det == 1, t.label
    return FiberData(
        fiber=t,
        components=tuple(comps),
        dual_graph=tuple(edges),
        monodromy=mono,
        euler=t.euler,
    )


@lru_cache(maxsize=None)
def fiber_data(t: KodairaType) -> FiberData:
    """Canonical component/multiplicity/monodromy data for a fiber type."""
    return _build_fiber(t)


@dataclass(frozen=True)
class Decoration:
    """A fiber type plus the set of component ids marked as removed."""

    fiber: KodairaType
    removed: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "removed", frozenset(self.removed))

    @property
    def is_trivial(self) -> bool:
        return not self.removed


@dataclass(frozen=True)
class DecorationSummary:
    """Result of validating one decoration."""

    m: int
    removed_config: AdeConfig


def validate_decoration(d: Decoration) -> DecorationSummary:
    """Check a decoration and compute (kept gcd m, removed ADE config).

    The removed set must be a proper subset of the components and its
    induced subgraph must be a disjoint union of ADE diagrams with no
    repeated intersections.  m is the gcd of the multiplicities of the
    kept components (computed over all components when nothing is
    removed; the tests check this is always 1).
    """
    data = fiber_data(d.fiber)
    ids = set(data.component_ids)
    unknown = d.removed - ids
    if unknown:
        raise UnknownComponent(
            f"{d.fiber.label}: unknown component(s) {sorted(unknown)}"
        )
    if d.removed == ids:
        raise FullSupportRemoved(
            f"{d.fiber.label}: the removed set must be a proper subset of the fiber"
        )
    kept = [m for cid, m in data.components if cid not in d.removed]
    m = 0
    for mult in kept:
        m = gcd(m, mult)
    if not d.removed:
        return DecorationSummary(m=m, removed_config=AdeConfig())
    induced = []
    for u, v, w in data.dual_graph:
        if u in d.removed and v in d.removed:
            if w > 1:
                raise NotAdeRemovedSet(
                    f"{d.fiber.label}: components {u}, {v} meet {w} times"
                )
            induced.append((u, v))
    try:
        types = recognize_ade(sorted(d.removed), induced)
    except NotAdeError as exc:
        raise NotAdeRemovedSet(f"{d.fiber.label}: {exc}") from exc
    return DecorationSummary(m=m, removed_config=AdeConfig(tuple(types)))


@dataclass(frozen=True)
class FibrationSummary:
    """Aggregate of a validated list of decorated fibers."""

    decorations: tuple[Decoration, ...]
    summaries: tuple[DecorationSummary, ...]
    config: AdeConfig
    euler_total: int

    @property
    def r(self) -> int:
        return self.config.rank

    @property
    def cone_multiplicities(self) -> tuple[int, ...]:
        """m_j of the decorated (nonempty removed set) fibers, input order."""
        return tuple(
            s.m
            for d, s in zip(self.decorations, self.summaries)
            if not d.is_trivial
        )


def validate_k3_fibration(fibers: Sequence[Decoration]) -> FibrationSummary:
    """Validate decorations and require the fiber Euler numbers to sum to 24."""
    decorations = tuple(fibers)
    summaries = tuple(validate_decoration(d) for d in decorations)
    total = sum(d.fiber.euler for d in decorations)
    if total != K3_EULER_NUMBER:
        raise EulerSumMismatch(total)
    config = AdeConfig()
    for s in summaries:
        config = config + s.removed_config
    return FibrationSummary(
        decorations=decorations,
        summaries=summaries,
        config=config,
        euler_total=total,
    )


# ----------------------------------------------------------------------
# decoration outcome classes (used by the exhaustive trichotomy sweep)


@dataclass(frozen=True)
class DecorationOutcome:
    """One class of decorations of a fiber type.

    Decorations are grouped by their observable result (m, removed
    config); `removed` holds one representative subset.
    """

    fiber: KodairaType
    m: int
    config: AdeConfig
    removed: frozenset[str]


def _sort_key(o: DecorationOutcome):
    return (o.m, tuple((t.kind, t.n) for t in o.config.entries))


def _outcomes_by_subsets(t: KodairaType) -> list[DecorationOutcome]:
    data = fiber_data(t)
    ids = data.component_ids
    seen: dict[tuple, DecorationOutcome] = {}
    for mask in range(2 ** len(ids) - 1):
        removed = frozenset(cid for k, cid in enumerate(ids) if mask >> k & 1)
        summary = validate_decoration(Decoration(t, removed))
        key = (summary.m, summary.removed_config.entries)
        if key not in seen:
            seen[key] = DecorationOutcome(
                fiber=t, m=summary.m, config=summary.removed_config, removed=removed
            )
    return sorted(seen.values(), key=_sort_key)


def _arc_multisets(budget: int) -> Iterator[list[int]]:
    """Multisets of arc lengths l_i >= 1 with sum(l_i + 1) <= budget."""

    def rec(max_part: int, room: int, acc: list[int]) -> Iterator[list[int]]:
        yield list(acc)
        for part in range(min(max_part, room - 1), 0, -1):
            acc.append(part)
            yield from rec(part, room - part - 1, acc)
            acc.pop()

    yield from rec(budget - 1, budget, [])


def _outcomes_cycle(t: KodairaType) -> list[DecorationOutcome]:
    """Outcome classes for I_n, n >= 3, without subset enumeration.

    Removed sets are disjoint unions of arcs of the n-cycle with at
    least one kept component between consecutive arcs; the outcome is
    the multiset of arc lengths, always with m = 1.
    """
    n = t.n
    seen: dict[tuple, DecorationOutcome] = {}
    empty = Decoration(t, frozenset())
    seen[()] = DecorationOutcome(t, validate_decoration(empty).m, AdeConfig(), frozenset())
    for arcs in _arc_multisets(n):
        if not arcs:
            continue
        key = tuple(sorted(arcs))
        if key in seen:
            continue
        removed = []
        pos = 0
        for length in arcs:
            removed += [f"c{pos + i}" for i in range(length)]
            pos += length + 1
        config = AdeConfig(tuple(DuValType("A", length) for length in arcs))
        seen[key] = DecorationOutcome(t, 1, config, frozenset(removed))
    return sorted(seen.values(), key=_sort_key)


def _istar_end_piece(tails_removed: int, run: int) -> DuValType:
    """Type of the component formed by an end run of the chain plus the
    removed tails at that end."""
    if tails_removed == 0:
        return DuValType("A", run)
    if tails_removed == 1:
        return DuValType("A", run + 1)
    if run == 1:
        return DuValType("A", 3)
    return DuValType("D", run + 2)


def _istar_full_span_piece(a: int, b: int, chain: int) -> DuValType:
    """Type when the whole chain is removed together with a + b tails."""
    total = chain + a + b
    if max(a, b) <= 1:
        return DuValType("A", total)
    if total == 3:
        return DuValType("A", 3)
    return DuValType("D", total)


def _outcomes_istar(t: KodairaType) -> list[DecorationOutcome]:
    """Outcome classes for I*_n without subset enumeration.

    A removed set is (a tails at the c0 end, b tails at the cn end,
    a set of chain runs).  Runs touching an end absorb the removed
    tails there; interior runs give A pieces.  m = 2 exactly when all
    four tails are removed, since the kept chain components all have
    multiplicity 2.
    """
    n = t.n
    chain = n + 1
    seen: dict[tuple, DecorationOutcome] = {}

    def emit(m: int, pieces: list[DuValType], removed: Iterable[str]) -> None:
        config = AdeConfig(tuple(pieces))
        key = (m, config.entries)
        if key not in seen:
            seen[key] = DecorationOutcome(t, m, config, frozenset(removed))

    left_tails = ["t1", "t2"]
    right_tails = ["t3", "t4"]
    for a in range(3):
        for b in range(3):
            tail_ids = left_tails[:a] + right_tails[:b]
            # whole chain removed
            if not (a == 2 and b == 2):
                piece = _istar_full_span_piece(a, b, chain)
                emit(1, [piece], tail_ids + [f"c{i}" for i in range(chain)])
            # proper chain patterns: prefix run p, suffix run s, interior
            # runs; p + s <= chain - 1 keeps the runs from merging
            m = 2 if (a == 2 and b == 2) else 1
            for p in range(chain):
                for s in range(chain - p):
                    window = chain - p - s - 2
                    for interior in _arc_multisets(window + 1):
                        if p == 0 and s == 0 and not interior and not tail_ids:
                            continue  # empty removal, handled below
                        pieces = []
                        removed = list(tail_ids)
                        if p > 0:
                            pieces.append(_istar_end_piece(a, p))
                            removed += [f"c{i}" for i in range(p)]
                        elif a:
                            pieces += [DuValType("A", 1)] * a
                        if s > 0:
                            pieces.append(_istar_end_piece(b, s))
                            removed += [f"c{chain - 1 - i}" for i in range(s)]
                        elif b:
                            pieces += [DuValType("A", 1)] * b
                        pos = p + 1
                        for length in interior:
                            pieces.append(DuValType("A", length))
                            removed += [f"c{pos + i}" for i in range(length)]
                            pos += length + 1
                        emit(m, pieces, removed)
    empty = Decoration(t, frozenset())
    emit(validate_decoration(empty).m, [], [])
    return sorted(seen.values(), key=_sort_key)


@lru_cache(maxsize=None)
def decoration_outcomes(t: KodairaType) -> tuple[DecorationOutcome, ...]:
    """All decoration classes of a fiber type, one representative each.

    Fiber types with at most 13 components are enumerated by brute
    force over subsets; larger I_n and I*_n use the structural
    enumerations above (cross-validated against brute force in the
    tests).
    """
    n_comps = len(fiber_data(t).components)
    if n_comps <= 13:
        return tuple(_outcomes_by_subsets(t))
    if t.base == "I":
        return tuple(_outcomes_cycle(t))
    if t.base == "I*":
        return tuple(_outcomes_istar(t))
    raise AssertionError(f"unexpected large fiber {t.label}")
