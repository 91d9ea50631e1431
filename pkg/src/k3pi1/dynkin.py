"""Du Val (ADE) singularity data and recognition of ADE diagrams.

A Du Val singularity is a quotient C^2/G for a finite subgroup G of
SL(2,C).  Its minimal resolution replaces the point by a configuration
of (-2)-curves whose dual graph is a Dynkin diagram of type A_n,
D_n (n >= 4), E_6, E_7 or E_8.  Each type carries three integers used
throughout the pipeline:

* rank n: the number of exceptional curves,
* delta: the order of the local fundamental group G
  (A_n: cyclic of order n+1; D_n: binary dihedral of order 4(n-2);
  E_6/E_7/E_8: binary tetrahedral/octahedral/icosahedral of orders
  24/48/120),
* the determinant of the Cartan matrix (A_n: n+1; D_n: 4; E_6: 3;
  E_7: 2; E_8: 1).

The delta table is validated in the test suite by brute-force closure
enumeration of the corresponding subgroups of SU(2) with exact
cyclotomic matrix entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator

__all__ = [
    "DuValType",
    "AdeConfig",
    "NotAdeError",
    "du_val_data",
    "local_euler_contribution",
    "recognize_ade",
    "enumerate_ade_configs",
]

_E_DELTA = {6: 24, 7: 48, 8: 120}
_E_CARTAN_DET = {6: 3, 7: 2, 8: 1}


class NotAdeError(ValueError):
    """A graph (or graph component) is not a disjoint union of ADE diagrams."""


@dataclass(frozen=True, order=True)
class DuValType:
    """A Dynkin label: kind in {A, D, E} with the usual rank restrictions."""

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind == "A":
            ok = self.n >= 1
        elif self.kind == "D":
            ok = self.n >= 4
        elif self.kind == "E":
            ok = self.n in (6, 7, 8)
        else:
            ok = False
        if not ok:
            raise ValueError(f"invalid Du Val type {self.kind}{self.n}")

    @property
    def rank(self) -> int:
        return self.n

    @property
    def delta(self) -> int:
        """Order of the local fundamental group."""
        if self.kind == "A":
            return self.n + 1
        if self.kind == "D":
            return 4 * (self.n - 2)
        return _E_DELTA[self.n]

    @property
    def cartan_det(self) -> int:
        if self.kind == "A":
            return self.n + 1
        if self.kind == "D":
            return 4
        return _E_CARTAN_DET[self.n]

    @property
    def label(self) -> str:
        return f"{self.kind}{self.n}"

    @classmethod
    def parse(cls, label: str) -> "DuValType":
        """Parse labels of the form "A12", "D4", "E8" (case-sensitive)."""
        if len(label) < 2 or label[0] not in "ADE" or not label[1:].isdigit():
            raise ValueError(f"invalid Du Val label {label!r}")
        return cls(label[0], int(label[1:]))

    def diagram_edges(self) -> list[tuple[int, int]]:
        """Edges of the Dynkin diagram on vertices 0..n-1.

        A_n is the path 0-1-...-(n-1).  D_n is the path 0..n-3 with the
        two extra vertices n-2, n-1 attached to vertex n-3.  E_n is the
        path 0..n-2 with vertex n-1 attached to vertex 2.
        """
        n = self.n
        if self.kind == "A":
            return [(i, i + 1) for i in range(n - 1)]
        if self.kind == "D":
            edges = [(i, i + 1) for i in range(n - 3)]
            edges += [(n - 3, n - 2), (n - 3, n - 1)]
            return edges
        edges = [(i, i + 1) for i in range(n - 2)]
        edges.append((2, n - 1))
        return edges

    def cartan_matrix(self) -> list[list[int]]:
        """Positive-definite Cartan matrix: 2 on the diagonal, -1 per edge."""
        n = self.n
        mat = [[0] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = 2
        for i, j in self.diagram_edges():
            mat[i][j] = -1
            mat[j][i] = -1
        return mat

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class AdeConfig:
    """A multiset of Du Val types, stored as a canonically sorted tuple."""

    entries: tuple[DuValType, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "AdeConfig":
        return cls(tuple(DuValType.parse(lab) for lab in labels))

    @property
    def rank(self) -> int:
        """Total number of exceptional curves, r."""
        return sum(t.rank for t in self.entries)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(t.label for t in self.entries)

    def union(self, other: "AdeConfig") -> "AdeConfig":
        return AdeConfig(self.entries + other.entries)

    def __add__(self, other: "AdeConfig") -> "AdeConfig":
        return self.union(other)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "[" + ", ".join(self.labels) + "]"


def du_val_data(t: DuValType) -> tuple[int, int, int]:
    """Return (rank, local group order, Cartan determinant) of a type."""
    return (t.rank, t.delta, t.cartan_det)


def local_euler_contribution(t: DuValType) -> Fraction:
    """Contribution n + 1 - 1/delta of one singular point to the Euler number.

    Summed over all singular points this equals 24 minus the orbifold
    Euler number of the normal surface.
    """
    return Fraction(t.n + 1) - Fraction(1, t.delta)


def _classify_component(
    nodes: list[Hashable], adj: dict[Hashable, list[Hashable]], edge_count: int
) -> DuValType:
    size = len(nodes)
    if edge_count >= size:
        raise NotAdeError(f"component of size {size} contains a cycle")
    degrees = {v: len(adj[v]) for v in nodes}
    if any(d >= 4 for d in degrees.values()):
        raise NotAdeError("vertex of degree >= 4")
    branch = [v for v in nodes if degrees[v] == 3]
    if not branch:
        return DuValType("A", size)
    if len(branch) > 1:
        raise NotAdeError("more than one branch vertex")
    center = branch[0]
    arms = []
    for start in adj[center]:
        length = 0
        prev, cur = center, start
        while True:
            length += 1
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
        arms.append(length)
    a, b, c = sorted(arms)
    if a == 1 and b == 1:
        return DuValType("D", c + 3)
    if (a, b) == (1, 2) and c in (2, 3, 4):
        return DuValType("E", c + 4)
    raise NotAdeError(f"branch vertex with arm lengths {(a, b, c)}")


def recognize_ade(
    nodes: Iterable[Hashable], edges: Iterable[tuple[Hashable, Hashable]]
) -> list[DuValType]:
    """Classify a simple undirected graph as a disjoint union of ADE diagrams.

    Returns the component types in canonical sorted order, or raises
    NotAdeError naming the obstruction (cycle, high-degree vertex, two
    branch vertices, bad arm lengths, self-loop, repeated edge).
    """
    node_list = list(nodes)
    node_set = set(node_list)
    adj: dict[Hashable, list[Hashable]] = {v: [] for v in node_list}
    seen_edges = set()
    edge_list = []
    for u, v in edges:
        if u == v:
            raise NotAdeError(f"self-loop at {u!r}")
        if u not in node_set or v not in node_set:
            raise ValueError(f"edge ({u!r}, {v!r}) uses unknown vertex")
        key = frozenset((u, v))
        if key in seen_edges:
            raise NotAdeError(f"repeated edge between {u!r} and {v!r}")
        seen_edges.add(key)
        adj[u].append(v)
        adj[v].append(u)
        edge_list.append((u, v))

    types = []
    unvisited = dict.fromkeys(node_list)
    while unvisited:
        root = next(iter(unvisited))
        comp = [root]
        del unvisited[root]
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w in unvisited:
                        del unvisited[w]
                        comp.append(w)
                        nxt.append(w)
            frontier = nxt
        comp_set = set(comp)
        n_edges = sum(1 for u, v in edge_list if u in comp_set)
        types.append(_classify_component(comp, adj, n_edges))
    return sorted(types)


def _all_types_of_rank(n: int) -> list[DuValType]:
    out = [DuValType("A", n)]
    if n >= 4:
        out.append(DuValType("D", n))
    if n in (6, 7, 8):
        out.append(DuValType("E", n))
    return out


def enumerate_ade_configs(max_rank: int) -> Iterator[AdeConfig]:
    """Yield every ADE multiset with total rank <= max_rank, once each.

    The empty configuration is included.  Enumeration is deterministic:
    entries are chosen in non-increasing canonical order.
    """
    types: list[DuValType] = []
    for n in range(max_rank, 0, -1):
        types.extend(sorted(_all_types_of_rank(n), reverse=True))

    chosen: list[DuValType] = []

    def rec(start: int, budget: int) -> Iterator[AdeConfig]:
        yield AdeConfig(tuple(chosen))
        for idx in range(start, len(types)):
            t = types[idx]
            if t.rank > budget:
                continue
            chosen.append(t)
            yield from rec(idx, budget - t.rank)
            chosen.pop()

    yield from rec(0, max_rank)
