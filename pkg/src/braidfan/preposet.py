"""Preposets on [n] = {1, ..., n} and their Hasse diagrams.

A preposet is stored canonically: the equivalence classes sorted by their
minimum element, and the cover edges of the quotient poset as pairs of class
indices ``(lower, upper)`` sorted lexicographically. Two preposets are equal
exactly when they are the same relation.

Internally the reflexive-transitive closure is kept as bitmasks: bit ``j`` of
``up[i]`` is set when ``i+1 <= j+1`` (0-based positions).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import DimensionMismatch, InvalidEdge, InvalidRelation, NotAPoset, NotATree

Block = tuple[int, ...]
Edge = tuple[int, int]


class Properties(NamedTuple):
    connected: bool
    antisymmetric: bool
    tree: bool
    linear_order: bool


def _close(n: int, up: list[int]) -> list[int]:
    for k in range(n):
        bit = 1 << k
        row = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= row
    return up


def _from_closure(n: int, up: list[int]) -> "Preposet":
    mask_of_class = []
    class_index = [-1] * n
    for i in range(n):
        if class_index[i] >= 0:
            continue
        members = [j for j in range(n) if (up[i] >> j) & 1 and (up[j] >> i) & 1]
        for j in members:
            class_index[j] = len(mask_of_class)
        mask_of_class.append(members)
    classes = tuple(tuple(j + 1 for j in members) for members in mask_of_class)
    reps = [members[0] for members in mask_of_class]
    m = len(classes)
    # strictly-above sets on classes
    above = []
    for c in range(m):
        row = up[reps[c]]
        above.append({class_index[j] for j in range(n) if (row >> j) & 1} - {c})
    covers = []
    for c in range(m):
        for d in above[c]:
            if not any(d in above[e] for e in above[c] if e != d):
                covers.append((c, d))
    covers.sort()
    p = Preposet(n, classes, tuple(covers))
    p.__dict__["up"] = tuple(up)
    return p


@dataclass(frozen=True)
class Preposet:
    n: int
    classes: tuple[Block, ...]
    covers: tuple[Edge, ...]

    # -- construction -----------------------------------------------------

    @classmethod
    def from_relations(cls, n: int, rels: Iterable[tuple[int, int]]) -> "Preposet":
        """Reflexive-transitive closure of ``rels``, given as 1-based pairs ``(lo, hi)``."""
        if n < 1:
            raise InvalidRelation(f"n must be positive, got {n}")
        up = [1 << i for i in range(n)]
        for lo, hi in rels:
            if not (1 <= lo <= n and 1 <= hi <= n):
                raise InvalidRelation(f"relation ({lo}, {hi}) has an element outside [1, {n}]")
            up[lo - 1] |= 1 << (hi - 1)
        return _from_closure(n, _close(n, up))

    @classmethod
    def chain(cls, order: Iterable[int]) -> "Preposet":
        """The linear order ``order[0] < order[1] < ...``."""
        order = list(order)
        return cls.from_relations(len(order), zip(order, order[1:]))

    # -- closure data -----------------------------------------------------

    @cached_property
    def up(self) -> tuple[int, ...]:
        up = [0] * self.n
        for block in self.classes:
            mask = sum(1 << (i - 1) for i in block)
            for i in block:
                up[i - 1] = mask
        for lo, hi in self.covers:
            up[self.classes[lo][0] - 1] |= 1 << (self.classes[hi][0] - 1)
        return tuple(_close(self.n, up))

    def le(self, i: int, j: int) -> bool:
        return bool((self.up[i - 1] >> (j - 1)) & 1)

    def relations(self) -> frozenset[tuple[int, int]]:
        """All pairs ``(i, j)`` with ``i != j`` and ``i <= j``."""
        return frozenset(
            (i + 1, j + 1)
            for i in range(self.n)
            for j in range(self.n)
            if i != j and (self.up[i] >> j) & 1
        )

    def generating_relations(self) -> list[tuple[int, int]]:
        """A small relation set whose closure is this preposet."""
        rels = []
        for block in self.classes:
            for x in block[1:]:
                rels += [(block[0], x), (x, block[0])]
        rels += [(self.classes[lo][0], self.classes[hi][0]) for lo, hi in self.covers]
        return sorted(rels)

    def class_of(self, element: int) -> int:
        for c, block in enumerate(self.classes):
            if element in block:
                return c
        raise InvalidRelation(f"{element} is not in [1, {self.n}]")

    # -- classification ---------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.classes) - 1

    def _components(self, edges: Iterable[Edge]) -> list[int]:
        parent = list(range(len(self.classes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return [find(c) for c in range(len(self.classes))]

    @cached_property
    def _connected(self) -> bool:
        return len(set(self._components(self.covers))) == 1

    def is_connected(self) -> bool:
        return self._connected

    def is_antisymmetric(self) -> bool:
        return len(self.classes) == self.n

    def is_tree(self) -> bool:
        return len(self.covers) == len(self.classes) - 1 and self._connected

    def is_linear_order(self) -> bool:
        if not self.is_antisymmetric() or len(self.covers) != self.n - 1:
            return False
        down, upd = self._degree_lists()
        return all(d <= 1 for d in down) and all(u <= 1 for u in upd) and self.is_connected()

    def properties(self) -> Properties:
        return Properties(
            connected=self.is_connected(),
            antisymmetric=self.is_antisymmetric(),
            tree=self.is_tree(),
            linear_order=self.is_linear_order(),
        )

    def _degree_lists(self) -> tuple[list[int], list[int]]:
        down = [0] * len(self.classes)
        upd = [0] * len(self.classes)
        for lo, hi in self.covers:
            upd[lo] += 1
            down[hi] += 1
        return down, upd

    def degrees(self) -> dict[Block, tuple[int, int]]:
        """Map each class to ``(down_degree, up_degree)`` in the Hasse diagram."""
        down, upd = self._degree_lists()
        return {block: (down[c], upd[c]) for c, block in enumerate(self.classes)}

    # -- operations -------------------------------------------------------

    def opposite(self) -> "Preposet":
        return Preposet.from_relations(self.n, [(j, i) for i, j in self.generating_relations()])

    def contract(self, edges: Iterable[Edge]) -> "Preposet":
        """Merge the two classes of every cover edge in ``edges``."""
        edges = set(edges)
        extra = set(edges) - set(self.covers)
        if extra:
            raise InvalidEdge(f"{sorted(extra)} are not cover edges")
        rels = self.generating_relations()
        rels += [(self.classes[hi][0], self.classes[lo][0]) for lo, hi in edges]
        return Preposet.from_relations(self.n, rels)

    def all_contractions(self) -> list["Preposet"]:
        """Every contraction, ordered by the number of merged edges."""
        if not self.is_tree():
            raise NotATree("contractions are only enumerated for tree preposets")
        out, seen = [], set()
        for size in range(len(self.covers) + 1):
            for subset in combinations(self.covers, size):
                q = self.contract(subset)
                if q not in seen:
                    seen.add(q)
                    out.append(q)
        return out

    def is_contraction_of(self, other: "Preposet") -> bool:
        """True iff this preposet is obtained from ``other`` by contracting covers.

        The only candidate edge set is the covers of ``other`` whose endpoints
        fall in a common class here; it works iff contracting it reproduces us.
        """
        if self.n != other.n:
            raise DimensionMismatch(f"n = {self.n} vs n = {other.n}")
        if not other.is_tree():
            raise NotATree("is_contraction_of requires a tree preposet")
        # contracting only adds relations
        if any(a & ~b for a, b in zip(other.up, self.up)):
            return False
        same = []
        for lo, hi in other.covers:
            a, b = other.classes[lo][0] - 1, other.classes[hi][0] - 1
            if (self.up[a] >> b) & 1 and (self.up[b] >> a) & 1:
                same.append((lo, hi))
        return other.contract(same) == self

    def split_components(self, cuts: Iterable[Edge]) -> list[Block]:
        """Blocks of [n] left connected after deleting the edges ``cuts``."""
        if not self.is_tree():
            raise NotATree("split_components requires a tree preposet")
        cuts = set(cuts)
        if not cuts <= set(self.covers):
            raise InvalidEdge(f"{sorted(cuts - set(self.covers))} are not cover edges")
        return self._split(cuts)

    def _split(self, cuts: set[Edge]) -> list[Block]:
        roots = self._components(e for e in self.covers if e not in cuts)
        parts: dict[int, list[int]] = {}
        for c, r in enumerate(roots):
            parts.setdefault(r, []).extend(self.classes[c])
        return sorted(tuple(sorted(p)) for p in parts.values())

    def extended_by(self, order: tuple[int, ...]) -> bool:
        """True iff the total order ``order`` (listed bottom to top) contains this preposet."""
        pos = [0] * self.n
        for k, x in enumerate(order):
            pos[x - 1] = k
        for i in range(self.n):
            row = self.up[i]
            for j in range(self.n):
                if i != j and (row >> j) & 1 and pos[i] > pos[j]:
                    return False
        return True

    def linear_extensions(self) -> list[tuple[int, ...]]:
        """All total orders containing this poset, in lexicographic order."""
        if not self.is_antisymmetric():
            raise NotAPoset("linear extensions are defined for posets only")
        n = self.n
        below = [0] * n  # strict lower sets
        for i in range(n):
            for j in range(n):
                if i != j and (self.up[i] >> j) & 1:
                    below[j] |= 1 << i
        out: list[tuple[int, ...]] = []
        prefix: list[int] = []

        def extend(placed: int):
            if len(prefix) == n:
                out.append(tuple(prefix))
                return
            for x in range(n):
                if not (placed >> x) & 1 and below[x] & ~placed == 0:
                    prefix.append(x + 1)
                    extend(placed | (1 << x))
                    prefix.pop()

        extend(0)
        return out

    # -- serialization ----------------------------------------------------

    def cover_blocks(self) -> list[tuple[Block, Block]]:
        return [(self.classes[lo], self.classes[hi]) for lo, hi in self.covers]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "classes": [list(b) for b in self.classes],
            "covers": [list(e) for e in self.covers],
        }

    def to_dot(self, name: str = "P") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  edge [dir=none];"]
        for c, block in enumerate(self.classes):
            label = "{" + ",".join(map(str, block)) + "}"
            lines.append(f'  c{c} [label="{label}"];')
        for lo, hi in self.covers:
            lines.append(f"  c{lo} -> c{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        cls = " ".join("{" + ",".join(map(str, b)) + "}" for b in self.classes)
        cov = ", ".join(f"{lo}->{hi}" for lo, hi in self.covers)
        return f"Preposet(n={self.n}; {cls}; covers {cov or 'none'})"


def from_relations(n: int, rels: Iterable[tuple[int, int]]) -> Preposet:
    return Preposet.from_relations(n, rels)
