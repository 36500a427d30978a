"""Factor a complete smooth coarsening of B(n) into star subdivisions.

While some maximal cone is labelled by a tree poset that is not a chain, its
Hasse diagram has a class ``b`` with at least two lower covers ``a_i -> b``.
Cutting those covers splits [n] into blocks ``A_1, ..., A_k`` and the block
``B`` around ``b``; the face ``tau`` spanned by the rays of the cut edges is
subdivided, which adds the ray ``e_B``. On the poset side each cone through
``tau`` is replaced by k cones: in the j-th one every ``a_i -> b`` with
``i != j`` becomes ``a_i -> a_j``. Upper covers are handled by reversing
every relation, doing the same, and reversing back.

A center is only usable when every maximal cone through ``tau`` meets it in
the same shape, with all cut covers ending at one common class. Otherwise the
star subdivision produces simplicial cones that are not unions of Weyl
chambers (already for n = 4). ``find_center`` therefore scans the branched
classes in a fixed order and takes the first admissible one.

Every step adds exactly one ray and the process stops at B(n).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import (
    DimensionMismatch,
    InadmissibleCenter,
    InternalVerificationFailure,
    InvalidFan,
    StaleCenter,
)
from .fan import (
    Cone,
    Fan,
    braid_fan,
    cones_containing,
    is_complete_coarsening,
    is_smooth,
    max_n,
)
from .lattice import LatticeVector, indicator
from .preposet import Block, Preposet

DOWN = "down"
UP = "up"


@dataclass(frozen=True)
class SubdivisionCenter:
    sigma: Cone
    b: Block
    orientation: str
    k: int
    parts: tuple[Block, ...]  # A_1, ..., A_k, then B
    tau: Cone

    @property
    def hub_side(self) -> Block:
        return self.parts[-1]

    def new_ray(self) -> LatticeVector:
        n = self.sigma.n
        if self.orientation == DOWN:
            return indicator(n, self.hub_side)
        return indicator(n, set(range(1, n + 1)) - set(self.hub_side))

    def to_json(self) -> dict:
        return {
            "center_cone": self.sigma.to_json(),
            "hub_class": list(self.b),
            "orientation": self.orientation,
            "tau_rays": [r.to_json() for r in self.tau.rays],
        }


def center_at(sigma: Cone, hub: int, orientation: str) -> SubdivisionCenter:
    """The center given by the covers entering (``down``) or leaving (``up``) class ``hub``."""
    p = sigma.label
    if orientation == DOWN:
        hub_edges = [e for e in p.covers if e[1] == hub]
        neighbours = [lo for lo, _ in hub_edges]
    elif orientation == UP:
        hub_edges = [e for e in p.covers if e[0] == hub]
        neighbours = [hi for _, hi in hub_edges]
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    if len(hub_edges) < 2:
        raise ValueError(f"class {p.classes[hub]} has fewer than two {orientation} covers")
    blocks = p.split_components(hub_edges)

    def part_of(c):
        x = p.classes[c][0]
        return next(blk for blk in blocks if x in blk)

    parts = tuple(part_of(c) for c in sorted(neighbours)) + (part_of(hub),)
    tau_label = p.contract([e for e in p.covers if e not in hub_edges])
    return SubdivisionCenter(sigma, p.classes[hub], orientation, len(hub_edges), parts, Cone(tau_label))


def candidate_centers(fan: Fan) -> Iterator[SubdivisionCenter]:
    """Every branched class of every non-chamber cone, in canonical order.

    Cones in fan order; within a cone, classes with down-degree >= 2 by
    smallest element, then classes with up-degree >= 2.
    """
    for sigma in fan.maximal:
        p = sigma.label
        if p.is_linear_order():
            continue
        degrees = list(p.degrees().values())
        for c, (down, _) in enumerate(degrees):
            if down >= 2:
                yield center_at(sigma, c, DOWN)
        for c, (_, up) in enumerate(degrees):
            if up >= 2:
                yield center_at(sigma, c, UP)


def _oriented(p: Preposet, orientation: str) -> Preposet:
    return p if orientation == DOWN else p.opposite()


def _cut_covers(p: Preposet, parts: tuple[Block, ...]) -> list[tuple[int, int]]:
    """Covers of ``p`` joining different parts, ordered by the part of their lower end.

    Raises ``StaleCenter`` unless they are exactly one cover from each A_i into B.
    """
    where = {x: i for i, blk in enumerate(parts) for x in blk}
    hub_part = len(parts) - 1
    cross = [(lo, hi) for lo, hi in p.covers if where[p.classes[lo][0]] != where[p.classes[hi][0]]]
    cross.sort(key=lambda e: where[p.classes[e[0]][0]])
    if [where[p.classes[lo][0]] for lo, _ in cross] != list(range(hub_part)) or any(
        where[p.classes[hi][0]] != hub_part for _, hi in cross
    ):
        raise StaleCenter(f"{p} does not contain the center face")
    return cross


def is_admissible(fan: Fan, center: SubdivisionCenter) -> bool:
    """True iff every maximal cone through ``center.tau`` has its cut covers sharing one hub."""
    containing = cones_containing(fan, center.tau)
    if not containing:
        raise StaleCenter(f"{center.tau.label} is not a face of the fan")
    for sigma in containing:
        p = _oriented(sigma.label, center.orientation)
        if len({hi for _, hi in _cut_covers(p, center.parts)}) != 1:
            return False
    return True


def find_center(fan: Fan) -> Optional[SubdivisionCenter]:
    """The first admissible center, or ``None`` when ``fan`` is B(n)."""
    if not is_smooth(fan):
        raise InvalidFan("find_center needs a smooth fan")
    branched = False
    for center in candidate_centers(fan):
        branched = True
        if is_admissible(fan, center):
            return center
    if branched:
        raise InternalVerificationFailure("no admissible subdivision center exists")
    return None


def _rewire_down(p: Preposet, parts: tuple[Block, ...]) -> list[Preposet]:
    cross = _cut_covers(p, parts)
    hubs = {hi for _, hi in cross}
    if len(hubs) != 1:
        raise InadmissibleCenter(f"{p} meets the center along covers ending at different classes")
    b = p.classes[hubs.pop()][0]
    lowers = [p.classes[lo][0] for lo, _ in cross]
    cut = {(a, b) for a in lowers}
    kept = [r for r in p.generating_relations() if r not in cut]
    out = []
    for j, aj in enumerate(lowers):
        rels = kept + [(aj, b)] + [(ai, aj) for i, ai in enumerate(lowers) if i != j]
        out.append(Preposet.from_relations(p.n, rels))
    return out


def rewire(p: Preposet, center: SubdivisionCenter) -> list[Preposet]:
    """Labels of the k cones that replace the cone labelled ``p``."""
    if center.orientation == DOWN:
        return _rewire_down(p, center.parts)
    return [q.opposite() for q in _rewire_down(p.opposite(), center.parts)]


def subdivide_at_center(fan: Fan, center: SubdivisionCenter) -> tuple[LatticeVector, Fan]:
    containing = cones_containing(fan, center.tau)
    if not containing:
        raise StaleCenter(f"{center.tau.label} is not a face of the fan")
    new_ray = center.new_ray()
    cones = [c for c in fan.maximal if c not in set(containing)]
    for sigma in containing:
        cones.extend(Cone(q) for q in rewire(sigma.label, center))
    result = Fan(fan.n, tuple(cones))
    before = set(fan.rays())
    if new_ray in before or set(result.rays()) != before | {new_ray}:
        raise InternalVerificationFailure(f"subdividing at {center.tau.label} did not add exactly {new_ray}")
    return new_ray, result


@dataclass(frozen=True)
class Step:
    center: SubdivisionCenter
    new_ray: LatticeVector
    result: Fan

    def to_json(self, verbose: bool = False) -> dict:
        out = self.center.to_json()
        out["new_ray"] = self.new_ray.to_json()
        out["result_ray_count"] = len(self.result.rays())
        if verbose:
            out["result"] = self.result.to_json()
        return out


@dataclass(frozen=True)
class FactorizationTrace:
    initial: Fan
    steps: tuple[Step, ...]
    final: Fan

    @property
    def n(self) -> int:
        return self.initial.n

    def __len__(self):
        return len(self.steps)

    def fans(self) -> list[Fan]:
        return [self.initial] + [s.result for s in self.steps]

    def added_rays(self) -> list[LatticeVector]:
        return [s.new_ray for s in self.steps]

    def to_json(self, verbose: bool = False) -> dict:
        return {
            "n": self.n,
            "initial": self.initial.to_json(),
            "steps": [s.to_json(verbose) for s in self.steps],
            "final": "braid",
        }


def _check_input(fan: Fan) -> None:
    if fan.n > max_n():
        raise InvalidFan(f"n = {fan.n} exceeds the bound {max_n()}")
    if not is_smooth(fan):
        raise InvalidFan("fan is not smooth: some maximal label is not a tree poset")
    coverage = is_complete_coarsening(fan)
    if not coverage.ok:
        raise InvalidFan(f"chamber {coverage.witness} lies in {coverage.count} maximal cones")


def factor_to_braid(fan: Fan, verify: bool = False) -> FactorizationTrace:
    """Star-subdivide ``fan`` until it becomes B(n).

    With ``verify`` every step is rechecked by the brute-force oracle.
    """
    from .oracle import validate_fan

    _check_input(fan)
    try:
        return _factor(fan, verify)
    except InternalVerificationFailure as exc:
        # chamber counts can be right while two cones overlap badly; blame the
        # input, not the algorithm, when the oracle rejects it
        report = validate_fan(fan)
        if not report.ok:
            raise InvalidFan(f"fan fails validation: {sorted(report.kinds())}") from exc
        raise


def _factor(fan: Fan, verify: bool) -> FactorizationTrace:
    from .oracle import verify_step

    steps = []
    current = fan
    while (center := find_center(current)) is not None:
        new_ray, result = subdivide_at_center(current, center)
        if verify and not verify_step(current, result, center.tau):
            raise InternalVerificationFailure(f"step {len(steps) + 1} failed verification")
        steps.append(Step(center, new_ray, result))
        current = result
    deficit = (2**fan.n - 2) - len(fan.rays())
    if current != braid_fan(fan.n, bound=max(fan.n, 2)) or len(steps) != deficit:
        raise InternalVerificationFailure(
            f"ended after {len(steps)} steps, expected {deficit} steps ending at B({fan.n})"
        )
    return FactorizationTrace(fan, tuple(steps), current)


@dataclass(frozen=True)
class StrongFactorization:
    first: FactorizationTrace
    second: FactorizationTrace
    common: Fan

    def __iter__(self):
        return iter((self.first, self.second))

    def to_json(self, verbose: bool = False) -> dict:
        return {
            "n": self.common.n,
            "common": "braid",
            "first": self.first.to_json(verbose),
            "second": self.second.to_json(verbose),
        }


def strong_factorize(a: Fan, b: Fan, verify: bool = False) -> StrongFactorization:
    """Both fans subdivide down to B(n), their common refinement."""
    if a.n != b.n:
        raise DimensionMismatch(f"fans live in n = {a.n} and n = {b.n}")
    first = factor_to_braid(a, verify)
    second = factor_to_braid(b, verify)
    return StrongFactorization(first, second, first.final)
