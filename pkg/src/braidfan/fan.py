"""Cones and fans refined by the braid arrangement fan.

Every cone is described by its preposet label; for tree labels the ray
generators are read off the Hasse diagram (one ray per cover edge) and cached.
Fans keep only their maximal cones, sorted in a canonical order: ascending by
the sorted tuple of ray coordinates, with ray-less (non-tree) labels last.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import (
    DimensionMismatch,
    EmptyInput,
    InvalidDimension,
    InvalidFan,
    InvalidRay,
    NotAFace,
    NotATreePreposet,
    NotSmooth,
)
from .lattice import LatticeVector, indicator, is_unimodular_extendable, sum_vectors
from .preposet import Preposet

DEFAULT_MAX_N = 8
MAX_N_ENV = "BRAIDFAN_MAX_N"

Order = tuple[int, ...]


def max_n() -> int:
    """Upper bound on n for factorial-time operations; overridable from the environment."""
    value = os.environ.get(MAX_N_ENV)
    return int(value) if value else DEFAULT_MAX_N


def rays_of(p: Preposet) -> tuple[LatticeVector, ...]:
    """Ray generators of the cone of a connected tree preposet, sorted.

    Cutting the cover ``a -> b`` splits the tree in two; the ray is the
    indicator vector of the half containing ``b``.
    """
    if not p.is_tree():
        raise NotATreePreposet(f"{p} is not a connected tree preposet")
    if p.n < 2:
        raise InvalidDimension("cones live in the lattice for n >= 2")
    rays = []
    for lo, hi in p.covers:
        upper = p.classes[hi][0]
        part = next(b for b in p._split({(lo, hi)}) if upper in b)
        rays.append(indicator(p.n, part))
    return tuple(sorted(rays))


def preposet_of_rays(n: int, rays: Iterable[LatticeVector]) -> Preposet:
    """The preposet of all ``i <= j`` satisfied by every ray.

    For a simplicial braid-coarsening cone this recovers its label.
    """
    rays = list(rays)
    for r in rays:
        if r.n != n:
            raise DimensionMismatch(f"ray {r} does not live in n = {n}")
        if r.is_zero():
            raise InvalidRay("the zero vector is not a ray")
    rels = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j and all(r.coords[i - 1] <= r.coords[j - 1] for r in rays)
    ]
    return Preposet.from_relations(n, rels)


@dataclass(frozen=True)
class Cone:
    label: Preposet
    rays: Optional[tuple[LatticeVector, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.label.is_connected():
            raise InvalidFan(f"cone label {self.label} is not connected")
        if self.rays is None and self.label.is_tree() and self.label.n >= 2:
            object.__setattr__(self, "rays", rays_of(self.label))

    @classmethod
    def from_relations(cls, n: int, rels: Iterable[tuple[int, int]]) -> "Cone":
        return cls(Preposet.from_relations(n, rels))

    @classmethod
    def chamber(cls, order: Sequence[int]) -> "Cone":
        return cls(Preposet.chain(order))

    @property
    def n(self) -> int:
        return self.label.n

    @property
    def dimension(self) -> int:
        return self.label.dimension

    def sort_key(self):
        if self.rays is not None:
            return (0, tuple(r.coords for r in self.rays))
        return (1, (self.label.classes, self.label.covers))

    def contains_face(self, tau: "Cone") -> bool:
        return tau.label.is_contraction_of(self.label)

    def to_json(self) -> dict:
        out = {"relations": [list(r) for r in self.label.generating_relations()]}
        out.update(self.label.to_json())
        del out["n"]
        if self.rays is not None:
            out["rays"] = [r.to_json() for r in self.rays]
        return out


@dataclass(frozen=True)
class Fan:
    n: int
    maximal: tuple[Cone, ...]

    def __post_init__(self):
        if self.n < 2:
            raise InvalidDimension(f"n must be at least 2, got {self.n}")
        cones = tuple(sorted(set(self.maximal), key=Cone.sort_key))
        if any(c.n != self.n for c in cones):
            raise DimensionMismatch(f"every cone of the fan must live in n = {self.n}")
        object.__setattr__(self, "maximal", cones)

    @classmethod
    def from_labels(cls, n: int, labels: Iterable[Preposet]) -> "Fan":
        return cls(n, tuple(Cone(p) for p in labels))

    def labels(self) -> list[Preposet]:
        return [c.label for c in self.maximal]

    def rays(self) -> tuple[LatticeVector, ...]:
        out = set()
        for c in self.maximal:
            if c.rays is not None:
                out.update(c.rays)
        return tuple(sorted(out))

    def ray_sets(self) -> list[tuple[LatticeVector, ...]]:
        return [c.rays for c in self.maximal]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "maximal_cones": [c.to_json() for c in self.maximal],
            "ray_count": len(self.rays()),
        }

    def __len__(self):
        return len(self.maximal)


def braid_fan(n: int, bound: Optional[int] = None) -> Fan:
    """The fan of Weyl chambers: one maximal cone per linear order of [n]."""
    bound = max_n() if bound is None else bound
    if not 2 <= n <= bound:
        raise InvalidDimension(f"braid fan needs 2 <= n <= {bound}, got {n}")
    return Fan(n, tuple(Cone.chamber(order) for order in permutations(range(1, n + 1))))


def is_smooth(fan: Fan, check: bool = False) -> bool:
    """Every maximal label is a tree poset.

    With ``check`` the answer is cross-checked against unimodularity of the
    maximal ray sets; disagreement raises ``AssertionError``.
    """
    ok = all(p.is_antisymmetric() and p.is_tree() for p in fan.labels())
    if check and ok:
        assert all(is_unimodular_extendable(c.rays) for c in fan.maximal)
    return ok


class Coverage(NamedTuple):
    ok: bool
    witness: Optional[Order]
    count: int  # labels extended by the witness


def chamber_counts(fan: Fan) -> dict[Order, int]:
    """How many maximal labels each linear order extends."""
    counts = {order: 0 for order in permutations(range(1, fan.n + 1))}
    for p in fan.labels():
        for order in p.linear_extensions():
            counts[order] += 1
    return counts


def is_complete_coarsening(fan: Fan) -> Coverage:
    """Each chamber of B(n) lies in exactly one maximal cone.

    On failure the witness is the lexicographically least linear order
    extending zero or several labels.
    """
    if not is_smooth(fan):
        raise NotSmooth("completeness is only decided for smooth fans")
    if fan.n > max_n():
        raise InvalidDimension(f"n = {fan.n} exceeds the bound {max_n()}")
    for order, count in chamber_counts(fan).items():
        if count != 1:
            return Coverage(False, order, count)
    return Coverage(True, None, 1)


def cones_containing(fan: Fan, tau: Cone, check: bool = False) -> list[Cone]:
    """Maximal cones having ``tau`` as a face."""
    out = [c for c in fan.maximal if c.contains_face(tau)]
    if check:
        for c in out:
            assert set(tau.rays) <= set(c.rays)
    return out


@dataclass(frozen=True)
class SubdividedFan:
    """Result of a ray-level star subdivision.

    ``fan`` is set when every new ray set is the ray set of a tree-labelled
    braid-coarsening cone, and is ``None`` otherwise.
    """

    n: int
    new_ray: LatticeVector
    ray_sets: tuple[tuple[LatticeVector, ...], ...]
    fan: Optional[Fan]


def relabel(n: int, ray_set: Iterable[LatticeVector]) -> Optional[Cone]:
    """The braid-coarsening cone spanned by ``ray_set``, if there is one."""
    ray_set = tuple(sorted(ray_set))
    p = preposet_of_rays(n, ray_set)
    if p.is_tree() and rays_of(p) == ray_set:
        return Cone(p, ray_set)
    return None


def star_subdivide_rays(fan: Fan, tau: Cone) -> SubdividedFan:
    """Star subdivision of ``fan`` at the face ``tau``, computed on ray sets.

    Each maximal cone containing ``tau`` is replaced by the cones spanned by
    its rays with one ray of ``tau`` swapped for the sum of all rays of ``tau``.
    """
    if tau.rays is None:
        raise NotATreePreposet("the center must be labelled by a tree preposet")
    if not tau.rays:
        raise EmptyInput("cannot subdivide at the zero cone")
    containing = cones_containing(fan, tau)
    if not containing:
        raise NotAFace(f"{tau.label} is not a face of the fan")
    v0 = sum_vectors(tau.rays)
    inside = set(containing)
    ray_sets = []
    for sigma in fan.maximal:
        if sigma not in inside:
            ray_sets.append(sigma.rays)
            continue
        for r in tau.rays:
            ray_sets.append(tuple(sorted((set(sigma.rays) - {r}) | {v0})))
    ray_sets = tuple(sorted(set(ray_sets), key=lambda rs: tuple(v.coords for v in rs)))
    cones = [relabel(fan.n, rs) for rs in ray_sets]
    new_fan = None if any(c is None for c in cones) else Fan(fan.n, tuple(cones))
    return SubdividedFan(fan.n, v0, ray_sets, new_fan)
