"""The four labelled tree families and their combinatorial constants.

Families are value objects carrying counting data plus the recursion
template used by the generating-function engine.  Sizes are measured in
the family's own unit: nodes for binary trees, nodes (odd only) for
complete binary trees, edges for the two plane families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """The n-th Catalan number, comb(2n, n) / (n + 1)."""
    if n < 0:
        raise ValueError("Catalan index must be non-negative")
    return comb(2 * n, n) // (n + 1)


# Side-expansion kinds used by the recursion templates: a subtree hung with
# a -1 label shift ("down"), a +1 shift ("up"), or no shift ("plain").
Template = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class TreeFamily:
    """One labelled tree family.

    gamma4 is the fourth power of the profile rescaling constant gamma,
    kept exact; gamma itself is irrational for three of the families.
    labellings_per_edge is 1 when labels are determined by shape.
    """

    name: str
    tag: str
    size_unit: str
    growth_base: int
    gamma4: Fraction
    labellings_per_edge: int
    template: Template | None

    @property
    def gamma(self) -> float:
        return float(self.gamma4) ** 0.25

    def valid_size(self, size: int) -> bool:
        if self.name == "binary":
            return size >= 1
        if self.name == "complete":
            return size >= 1 and size % 2 == 1
        return size >= 0

    def series_index(self, size: int) -> int:
        """Exponent of t carrying this size in the family's series."""
        if not self.valid_size(size):
            raise ValueError(f"invalid {self.name} size {size}")
        if self.name == "complete":
            return (size - 1) // 2
        return size

    def size_of_index(self, idx: int) -> int:
        if idx < 0:
            raise ValueError("series index must be non-negative")
        if self.name == "complete":
            return 2 * idx + 1
        return idx

    def count(self, size: int) -> int:
        """Number of labelled objects of the given size."""
        if not self.valid_size(size):
            if self.name == "complete" and size >= 0 and size % 2 == 0:
                return 0
            raise ValueError(f"invalid {self.name} size {size}")
        idx = self.series_index(size)
        return catalan(idx) * self.labellings_per_edge ** (idx if self.size_unit == "edges" else 0)

    def node_count(self, size: int) -> int:
        """Number of nodes of an object of the given size."""
        if not self.valid_size(size):
            raise ValueError(f"invalid {self.name} size {size}")
        if self.size_unit == "edges":
            return size + 1
        return size

    def sizes_upto(self, max_size: int) -> list[int]:
        lo = 1 if self.name in ("binary", "complete") else 0
        step = 2 if self.name == "complete" else 1
        return list(range(lo, max_size + 1, step))

    def __repr__(self):
        return f"TreeFamily({self.name})"


BINARY = TreeFamily(
    name="binary",
    tag="Binary",
    size_unit="nodes",
    growth_base=4,
    gamma4=Fraction(1, 2),
    labellings_per_edge=1,
    template=(("down", "up"),),
)

COMPLETE_BINARY = TreeFamily(
    name="complete",
    tag="CompleteBinary",
    size_unit="nodes",
    growth_base=4,
    gamma4=Fraction(1),
    labellings_per_edge=1,
    template=None,
)

PLANE_PM1 = TreeFamily(
    name="plane_pm1",
    tag="PlanePM1",
    size_unit="edges",
    growth_base=8,
    gamma4=Fraction(2),
    labellings_per_edge=2,
    template=(("down", "plain"), ("up", "plain")),
)

PLANE_0PM1 = TreeFamily(
    name="plane_0pm1",
    tag="Plane0PM1",
    size_unit="edges",
    growth_base=12,
    gamma4=Fraction(9, 2),
    labellings_per_edge=3,
    template=(("plain", "plain"), ("down", "plain"), ("up", "plain")),
)

FAMILIES: dict[str, TreeFamily] = {
    f.name: f for f in (BINARY, COMPLETE_BINARY, PLANE_PM1, PLANE_0PM1)
}


def get_family(name: str) -> TreeFamily:
    """Look up a family by registry name or tag."""
    if name in FAMILIES:
        return FAMILIES[name]
    for fam in FAMILIES.values():
        if fam.tag == name:
            return fam
    raise KeyError(f"unknown tree family {name!r}; choices: {sorted(FAMILIES)}")


def increments(family: TreeFamily) -> tuple[int, ...]:
    """Edge label increments available to the family."""
    if family.name == "plane_0pm1":
        return (-1, 0, 1)
    return (-1, 1)
