"""Brute-force checks that stay independent of the factorization code.

Fan validity is decided combinatorially: every chamber of B(n) must lie in
exactly one maximal cone, and any two maximal cones must meet in a common
face, i.e. the label of their intersection must be a contraction of both.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator, Optional

from .errors import DimensionMismatch, NotAFace, TooLarge
from .fan import Cone, Fan, chamber_counts, cones_containing, star_subdivide_rays
from .lattice import is_unimodular_extendable
from .preposet import Preposet

ENUMERATION_MAX_N = 4


@dataclass(frozen=True)
class Failure:
    kind: str
    detail: object

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail}


@dataclass
class ValidationReport:
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def kinds(self) -> set[str]:
        return {f.kind for f in self.failures}

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": [f.to_json() for f in self.failures]}


def intersection_preposet(p: Preposet, q: Preposet) -> Preposet:
    """Label of the intersection of two cones: the closure of both relation sets."""
    if p.n != q.n:
        raise DimensionMismatch(f"n = {p.n} vs n = {q.n}")
    return Preposet.from_relations(p.n, p.relations() | q.relations())


def _meet_in_face(p: Preposet, q: Preposet) -> bool:
    meet = intersection_preposet(p, q)
    return meet.is_contraction_of(p) and meet.is_contraction_of(q)


def validate_fan(fan: Fan) -> ValidationReport:
    report = ValidationReport()
    trees = []
    for c in fan.maximal:
        p = c.label
        if not (p.is_connected() and p.is_antisymmetric() and p.is_tree()):
            report.failures.append(Failure("non-tree-label", p.to_json()))
            continue
        trees.append(c)
        if not is_unimodular_extendable(c.rays):
            report.failures.append(Failure("non-unimodular", [r.to_json() for r in c.rays]))

    counts = chamber_counts(fan) if all(c.label.is_antisymmetric() for c in fan.maximal) else None
    if counts is None:
        # non-poset labels: count extensions directly
        counts = {
            order: sum(c.label.extended_by(order) for c in fan.maximal)
            for order in permutations(range(1, fan.n + 1))
        }
    for order, count in counts.items():
        if count == 0:
            report.failures.append(Failure("uncovered-order", list(order)))
        elif count > 1:
            report.failures.append(Failure("doubly-covered-order", list(order)))

    for i, a in enumerate(trees):
        for b in trees[i + 1:]:
            if not _meet_in_face(a.label, b.label):
                report.failures.append(
                    Failure(
                        "bad-intersection",
                        [a.label.generating_relations(), b.label.generating_relations()],
                    )
                )
    return report


def verify_step(before: Fan, after: Fan, tau: Cone) -> bool:
    """Check ``after`` is the star subdivision of ``before`` at ``tau`` and is valid."""
    if not cones_containing(before, tau):
        raise NotAFace(f"{tau.label} is not a face of the fan")
    expected = star_subdivide_rays(before, tau)
    got = sorted(tuple(v.coords for v in rs) for rs in after.ray_sets() if rs is not None)
    want = sorted(tuple(v.coords for v in rs) for rs in expected.ray_sets)
    if len(after.ray_sets()) != len(got) or got != want:
        return False
    return validate_fan(after).ok


# -- exhaustive corpus ----------------------------------------------------


def _pruefer_trees(n: int) -> Iterator[list[tuple[int, int]]]:
    """All labelled spanning trees of K_n, as undirected edge lists."""
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(1, 2)]
        return
    for seq in product(range(1, n + 1), repeat=n - 2):
        degree = [1] * (n + 1)
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = next(v for v in range(1, n + 1) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [v for v in range(1, n + 1) if degree[v] == 1]
        edges.append((u, w))
        yield edges


def tree_posets(n: int) -> Iterator[Preposet]:
    """Every tree poset on [n]; there are n^(n-2) * 2^(n-1) of them."""
    for edges in _pruefer_trees(n):
        for flips in product((False, True), repeat=len(edges)):
            rels = [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)]
            yield Preposet.from_relations(n, rels)


def enumerate_coarsenings(n: int, time_budget: Optional[float] = None) -> list[Fan]:
    """All complete smooth fans refined by B(n), found by exact cover search.

    Candidate blocks are the chamber sets of tree posets. Chambers are covered
    in lexicographic order; every new block must be disjoint from the chosen
    ones and meet each of them in a common face.
    """
    if not 2 <= n <= ENUMERATION_MAX_N:
        raise TooLarge(f"enumeration is limited to 2 <= n <= {ENUMERATION_MAX_N}")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    chambers = list(permutations(range(1, n + 1)))
    index = {c: i for i, c in enumerate(chambers)}
    by_chamber: dict[int, list[tuple[int, Preposet]]] = {i: [] for i in range(len(chambers))}
    for p in tree_posets(n):
        # the union of the block's chambers is cut out by the relations they share
        exts = p.linear_extensions()
        shared = frozenset.intersection(*(Preposet.chain(e).relations() for e in exts))
        assert Preposet.from_relations(n, shared) == p
        mask = 0
        for e in exts:
            mask |= 1 << index[e]
        by_chamber[index[exts[0]]].append((mask, p))
    # a block can only be placed when its least chamber is the least uncovered one
    full = (1 << len(chambers)) - 1
    found: list[Fan] = []
    chosen: list[Preposet] = []
    compatible: dict[tuple[Preposet, Preposet], bool] = {}

    def meets(p: Preposet, q: Preposet) -> bool:
        if (p, q) not in compatible:
            compatible[p, q] = _meet_in_face(p, q)
        return compatible[p, q]

    def search(covered: int):
        if deadline is not None and time.monotonic() > deadline:
            raise TooLarge("enumeration exceeded its time budget")
        if covered == full:
            found.append(Fan.from_labels(n, chosen))
            return
        first = (~covered & (covered + 1)).bit_length() - 1
        for mask, p in by_chamber[first]:
            if mask & covered:
                continue
            if all(meets(p, q) for q in chosen):
                chosen.append(p)
                search(covered | mask)
                chosen.pop()

    search(0)
    return sorted(found, key=lambda f: [c.sort_key() for c in f.maximal])
