"""End-to-end analysis of normal K3 surface data.

Input is either a bare ADE configuration (the Du Val singularities of
the normal surface) or a decorated elliptic fibration (Kodaira fibers
with removed component sets summing to Euler number 24).  The pipeline
computes

* the orbifold Euler number 24 - sum(n_k + 1 - 1/delta_k), exactly,
* the rank gate: r <= 15 forces a finite fundamental group of the
  smooth locus, and is sharp (a normal Kummer surface has r = 16),
* for fibered input, the base orbifold signature given by the gcds of
  the kept component multiplicities, its finite / euclidean /
  hyperbolic classification, and the resulting verdict: finite
  fundamental group, a torus cover ramified in finitely many points,
  or the hyperbolic contradiction case that no such surface realizes,
* optionally, the quotient of the fiber lattice Z^2 by the images of
  I - T_j when a monodromy representation is supplied and the base
  orbifold is simply connected.

`trichotomy_sweep` enumerates every decorated fiber configuration
class within the Euler budget and tallies the classifications; it is
expected to find no hyperbolic instance, and only euclidean instances
with r >= 16 and orbifold Euler number exactly zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .dynkin import AdeConfig, local_euler_contribution
from .kodaira import (
    Decoration,
    FibrationSummary,
    K3_EULER_NUMBER,
    KodairaType,
    decoration_outcomes,
    validate_k3_fibration,
)
from .orbifold import (
    EUCLIDEAN,
    HYPERBOLIC,
    SPHERICAL_OR_BAD,
    OrbifoldClass,
    OrbifoldSignature,
    classify,
)
from .pi1 import AbelianGroup, MonodromyRep, coinvariant_quotient, validate_representation

__all__ = [
    "RANK_GATE_BOUND",
    "RankGate",
    "NormalK3Input",
    "Verdict",
    "FiberReport",
    "Report",
    "SweepInstance",
    "SweepResult",
    "orbifold_euler_number",
    "rank_gate",
    "analyze",
    "trichotomy_sweep",
]

RANK_GATE_BOUND = 15

FINITE_FUNDAMENTAL_GROUP = "FiniteFundamentalGroup"
TORUS_COVER = "TorusCover"
UNREALIZABLE_HYPERBOLIC = "UnrealizableHyperbolic"


def orbifold_euler_number(c: AdeConfig) -> Fraction:
    """24 minus the sum of the local contributions n + 1 - 1/delta.

    May be negative for configurations no normal K3 surface realizes;
    the value is reported as is.
    """
    total = Fraction(K3_EULER_NUMBER)
    for t in c.entries:
        total -= local_euler_contribution(t)
    return total


@dataclass(frozen=True)
class RankGate:
    """r <= 15 guarantees a finite fundamental group of the smooth locus."""

    r: int
    passes: bool


def rank_gate(c: AdeConfig) -> RankGate:
    """Evaluate the rank bound; when it passes, the orbifold Euler
    number must come out >= 3/2 (minimum at fifteen A_1 points), which
    is asserted as an internal consistency check."""
    r = c.rank
    passes = r <= RANK_GATE_BOUND
    if passes:
        e = orbifold_euler_number(c)
        if e < Fraction(3, 2):
            raise AssertionError(
                f"rank {r} <= {RANK_GATE_BOUND} but orbifold Euler number {e} < 3/2"
            )
    return RankGate(r=r, passes=passes)


@dataclass(frozen=True)
class NormalK3Input:
    """Either a bare singularity configuration or a decorated fibration."""

    singularities: AdeConfig | None = None
    fibers: tuple[Decoration, ...] | None = None
    monodromy: MonodromyRep | None = None

    def __post_init__(self) -> None:
        if (self.singularities is None) == (self.fibers is None):
            raise ValueError(
                "exactly one of singularities/fibers must be provided"
            )
        if self.monodromy is not None and self.fibers is None:
            raise ValueError("a monodromy representation needs fibered input")

    @classmethod
    def bare(cls, config: AdeConfig) -> "NormalK3Input":
        return cls(singularities=config)

    @classmethod
    def fibered(
        cls,
        decorations: Sequence[Decoration],
        monodromy: MonodromyRep | None = None,
    ) -> "NormalK3Input":
        return cls(fibers=tuple(decorations), monodromy=monodromy)


@dataclass(frozen=True)
class Verdict:
    kind: str
    orbifold_order: int | None = None
    cone_orders: tuple[int, ...] | None = None
    abelian_quotient: AbelianGroup | None = None


@dataclass(frozen=True)
class FiberReport:
    decoration: Decoration
    m: int
    removed_config: AdeConfig


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Report:
    """Everything the pipeline derives from one input."""

    kind: str
    config: AdeConfig
    r: int
    e_orb: Fraction
    gate: RankGate
    fibers: tuple[FiberReport, ...] | None = None
    cone_orders: tuple[int, ...] | None = None
    classification: OrbifoldClass | None = None
    verdict: Verdict | None = None
    rank_gate_consistent: bool | None = None
    euclidean_euler_zero: bool | None = None
    monodromy_quotient: AbelianGroup | None = None
    monodromy_quotient_trivial: bool | None = None

    def to_json_dict(self) -> dict:
        fibers = None
        if self.fibers is not None:
            fibers = [
                {
                    "kodaira": f.decoration.fiber.label,
                    "removed": sorted(f.decoration.removed),
                    "m": f.m,
                    "removed_config": list(f.removed_config.labels),
                }
                for f in self.fibers
            ]
        return {
            "kind": self.kind,
            "r": self.r,
            "e_orb": _frac_str(self.e_orb),
            "singularities": list(self.config.labels),
            "fibers": fibers,
            "cone_orders": list(self.cone_orders) if self.cone_orders is not None else None,
            "classification": self.classification.kind if self.classification else None,
            "orbifold_order": self.classification.order if self.classification else None,
            "verdict": self.verdict.kind if self.verdict else None,
            "rank_gate": {"r": self.gate.r, "passes": self.gate.passes},
            "rank_gate_consistent": self.rank_gate_consistent,
            "euclidean_euler_zero": self.euclidean_euler_zero,
            "monodromy_quotient": (
                list(self.monodromy_quotient.invariant_factors)
                if self.monodromy_quotient is not None
                else None
            ),
            "monodromy_quotient_trivial": self.monodromy_quotient_trivial,
        }

    def to_json(self) -> str:
        """Canonical JSON: sorted keys, rationals as "p/q", two-space indent."""
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


def _analyze_bare(config: AdeConfig) -> Report:
    gate = rank_gate(config)
    e_orb = orbifold_euler_number(config)
    verdict = None
    if gate.passes:
        verdict = Verdict(FINITE_FUNDAMENTAL_GROUP)
    elif e_orb == 0:
        # covered-by-a-torus criterion: orbifold Euler number zero
        verdict = Verdict(TORUS_COVER)
    return Report(
        kind="bare",
        config=config,
        r=config.rank,
        e_orb=e_orb,
        gate=gate,
        verdict=verdict,
    )


def _analyze_fibered(input_: NormalK3Input) -> Report:
    summary: FibrationSummary = validate_k3_fibration(input_.fibers)
    config = summary.config
    e_orb = orbifold_euler_number(config)
    gate = rank_gate(config)
    signature = OrbifoldSignature(summary.cone_multiplicities)
    cls = classify(signature)

    quotient = None
    quotient_trivial = None
    if input_.monodromy is not None:
        rep = input_.monodromy
        if len(rep) != len(input_.fibers):
            raise ValueError(
                f"monodromy has {len(rep)} matrices for {len(input_.fibers)} fibers"
            )
        validate_representation(rep)
        if cls.kind == SPHERICAL_OR_BAD and cls.order == 1:
            quotient = coinvariant_quotient(rep)
            quotient_trivial = quotient.is_trivial

    if cls.kind == SPHERICAL_OR_BAD:
        verdict = Verdict(
            FINITE_FUNDAMENTAL_GROUP,
            orbifold_order=cls.order,
            cone_orders=signature.cone_orders,
            abelian_quotient=quotient,
        )
    elif cls.kind == EUCLIDEAN:
        verdict = Verdict(TORUS_COVER, cone_orders=signature.cone_orders)
    else:
        verdict = Verdict(UNREALIZABLE_HYPERBOLIC, cone_orders=signature.cone_orders)

    rank_gate_consistent = (not gate.passes) or verdict.kind == FINITE_FUNDAMENTAL_GROUP
    euclidean_euler_zero = (e_orb == 0) if cls.kind == EUCLIDEAN else None

    fiber_reports = tuple(
        FiberReport(decoration=d, m=s.m, removed_config=s.removed_config)
        for d, s in zip(summary.decorations, summary.summaries)
    )
    return Report(
        kind="fibered",
        config=config,
        r=config.rank,
        e_orb=e_orb,
        gate=gate,
        fibers=fiber_reports,
        cone_orders=signature.cone_orders,
        classification=cls,
        verdict=verdict,
        rank_gate_consistent=rank_gate_consistent,
        euclidean_euler_zero=euclidean_euler_zero,
        monodromy_quotient=quotient,
        monodromy_quotient_trivial=quotient_trivial,
    )


def analyze(input_: NormalK3Input) -> Report:
    """Run the full pipeline on one input; deterministic."""
    if input_.singularities is not None:
        return _analyze_bare(input_.singularities)
    return _analyze_fibered(input_)


# ----------------------------------------------------------------------
# exhaustive trichotomy sweep


@dataclass(frozen=True)
class SweepInstance:
    """One configuration class found by the sweep: the multiset of
    nontrivial decoration outcomes, with the derived invariants."""

    outcomes: tuple[tuple[str, int, tuple[str, ...], int], ...]
    # entries are (fiber label, m, removed config labels, count)
    cone_orders: tuple[int, ...]
    classification: str
    r: int
    e_orb: Fraction

    def describe(self) -> str:
        parts = [
            f"{count} x {label}[m={m}; {'+'.join(cfg) if cfg else '-'}]"
            for label, m, cfg, count in self.outcomes
        ]
        return (
            f"{self.classification} cones={list(self.cone_orders)} r={self.r} "
            f"e_orb={self.e_orb} via " + (", ".join(parts) if parts else "no decorations")
        )


@dataclass
class SweepResult:
    total: int
    counts: dict[str, int]
    euclidean: list[SweepInstance]
    hyperbolic: list[SweepInstance]
    violations: list[str]

    @property
    def consistent(self) -> bool:
        return not self.violations


def _sweep_items(euler_sum: int) -> list[dict]:
    """All (fiber type, nontrivial outcome) pairs with euler <= budget."""
    types: list[KodairaType] = []
    for base in ("II", "III", "IV", "IV*", "III*", "II*"):
        t = KodairaType(base)
        if t.euler <= euler_sum:
            types.append(t)
    for n in range(1, euler_sum + 1):
        types.append(KodairaType("I", n))
    for n in range(0, euler_sum - 5):
        types.append(KodairaType("I*", n))

    items = []
    for t in sorted(types, key=lambda t: (t.euler, t.label)):
        for outcome in decoration_outcomes(t):
            if outcome.config.rank == 0:
                continue
            items.append(
                {
                    "type": t,
                    "euler": t.euler,
                    "m": outcome.m,
                    "config": outcome.config,
                    "rank": outcome.config.rank,
                    "contrib": sum(
                        (local_euler_contribution(p) for p in outcome.config.entries),
                        Fraction(0),
                    ),
                    "removed": outcome.removed,
                }
            )
    return items


def trichotomy_sweep(
    euler_sum: int = K3_EULER_NUMBER, collect_limit: int | None = None
) -> SweepResult:
    """Enumerate every decorated-fibration class within the Euler budget.

    Decorations of one fiber are grouped by their outcome (m, removed
    configuration); fibers with nothing removed influence none of the
    derived invariants and only fill the Euler budget, so enumeration
    runs over multisets of nontrivial outcomes with total Euler number
    at most `euler_sum`.

    Outcomes with m = 1 carry no cone point and cannot change the
    classification, so the sweep walks the multisets of m >= 2 outcomes
    (all from starred fibers, at most four fit the budget) and counts
    their m = 1 completions with a knapsack table; the completions are
    expanded one by one only for euclidean or hyperbolic cone parts,
    where each full instance is checked against r >= 16, orbifold Euler
    number zero, and the rank gate.  Hyperbolic instances and failed
    checks are recorded as violations.
    """
    items = _sweep_items(euler_sum)
    denom = lcm(*(it["contrib"].denominator for it in items)) if items else 1
    for it in items:
        it["scaled"] = int(it["contrib"] * denom)
    full_scaled = euler_sum * denom
    cone_items = [it for it in items if it["m"] >= 2]
    flat_items = [it for it in items if it["m"] == 1]

    # ways[b] = number of multisets of m = 1 outcomes with total Euler b
    ways = [0] * (euler_sum + 1)
    ways[0] = 1
    for it in flat_items:
        e = it["euler"]
        for b in range(e, euler_sum + 1):
            ways[b] += ways[b - e]
    completions_within = [0] * (euler_sum + 1)
    acc = 0
    for b in range(euler_sum + 1):
        acc += ways[b]
        completions_within[b] = acc

    counts = {SPHERICAL_OR_BAD: 0, EUCLIDEAN: 0, HYPERBOLIC: 0}
    euclidean: list[SweepInstance] = []
    hyperbolic: list[SweepInstance] = []
    violations: list[str] = []
    total = 0

    classify_cache: dict[tuple[int, ...], OrbifoldClass] = {}

    def classify_cones(cones: tuple[int, ...]) -> OrbifoldClass:
        cls = classify_cache.get(cones)
        if cls is None:
            cls = classify(OrbifoldSignature(cones))
            classify_cache[cones] = cls
        return cls

    cone_chosen: list[tuple[int, int]] = []  # (cone item index, count)
    flat_chosen: list[tuple[int, int]] = []

    def build_instance(cones, cls, r, e_orb) -> SweepInstance:
        outcomes = []
        for source, chosen in ((cone_items, cone_chosen), (flat_items, flat_chosen)):
            for idx, count in chosen:
                it = source[idx]
                outcomes.append(
                    (it["type"].label, it["m"], it["config"].labels, count)
                )
        return SweepInstance(
            outcomes=tuple(outcomes),
            cone_orders=cones,
            classification=cls.kind,
            r=r,
            e_orb=e_orb,
        )

    def check_infinite_instance(cones, cls, r: int, scaled: int) -> None:
        e_orb = Fraction(full_scaled - scaled, denom)
        instance = build_instance(cones, cls, r, e_orb)
        if cls.kind == HYPERBOLIC:
            if collect_limit is None or len(hyperbolic) < collect_limit:
                hyperbolic.append(instance)
            violations.append(f"hyperbolic instance: {instance.describe()}")
        else:
            if collect_limit is None or len(euclidean) < collect_limit:
                euclidean.append(instance)
            if r < 16:
                violations.append(
                    f"euclidean instance with r < 16: {instance.describe()}"
                )
            if e_orb != 0:
                violations.append(
                    f"euclidean instance with e_orb != 0: {instance.describe()}"
                )
        if r <= RANK_GATE_BOUND:
            violations.append(
                f"rank gate passed on an infinite class: {instance.describe()}"
            )

    def expand_completions(cones, cls, start: int, budget: int, r: int, scaled: int) -> None:
        nonlocal total
        total += 1
        counts[cls.kind] += 1
        check_infinite_instance(cones, cls, r, scaled)
        for idx in range(start, len(flat_items)):
            it = flat_items[idx]
            e = it["euler"]
            if e > budget:
                break
            count = 0
            left = budget
            while left >= e:
                count += 1
                left -= e
                flat_chosen.append((idx, count))
                expand_completions(
                    cones, cls, idx + 1, left,
                    r + count * it["rank"], scaled + count * it["scaled"],
                )
                flat_chosen.pop()

    cone_stack: list[int] = []

    def rec(start: int, budget: int, r: int, scaled: int) -> None:
        nonlocal total
        cones = tuple(sorted(cone_stack))
        cls = classify_cones(cones)
        if cls.kind == SPHERICAL_OR_BAD:
            n = completions_within[budget]
            total += n
            counts[SPHERICAL_OR_BAD] += n
        else:
            expand_completions(cones, cls, 0, budget, r, scaled)
        for idx in range(start, len(cone_items)):
            it = cone_items[idx]
            e = it["euler"]
            if e > budget:
                break
            m = it["m"]
            count = 0
            pushed = 0
            left = budget
            while left >= e:
                count += 1
                left -= e
                cone_stack.append(m)
                pushed += 1
                cone_chosen.append((idx, count))
                rec(idx + 1, left, r + count * it["rank"], scaled + count * it["scaled"])
                cone_chosen.pop()
            for _ in range(pushed):
                cone_stack.pop()

    rec(0, euler_sum, 0, 0)
    return SweepResult(
        total=total,
        counts=counts,
        euclidean=euclidean,
        hyperbolic=hyperbolic,
        violations=violations,
    )
