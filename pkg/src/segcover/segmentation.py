"""Connected components of the element co-occurrence graph via union-find.

Two elements co-occur when some subset contains both.  The graph is never
materialised: each subset's elements are union-ed against its first element
(star unions), which realises the near-linear disjoint-set bound.  Every
subset lies entirely inside one component, so the instance splits into
independent subinstances whose covers merge back without repair.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .core import Cover, Instance, SuccinctSet, cover_is_feasible


class UnionFind:
    """Disjoint sets over 0..n-1 with union by rank and path compression."""

    __slots__ = ("parent", "rank")

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        rank = self.rank
        if rank[ra] < rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if rank[ra] == rank[rb]:
            rank[ra] += 1
        return True

    def component_count(self) -> int:
        return sum(1 for x, p in enumerate(self.parent) if x == p)


@dataclass(frozen=True)
class Component:
    """One independent piece: original element ids, subfamily, and the remap."""

    elements: SuccinctSet
    subfamily: Tuple[int, ...]
    subinstance: Instance
    element_ids: Tuple[int, ...]


@dataclass(frozen=True)
class Segmentation:
    """Partition of an instance into components, ordered by smallest element."""

    instance: Instance
    components: Tuple[Component, ...]


def find_groups(inst: Instance) -> Segmentation:
    """Split an instance along the connected components of co-occurrence."""
    uf = UnionFind(inst.n)
    for s in inst.subsets:
        it = iter(s)
        first = next(it)
        for e in it:
            uf.union(first, e)

    comp_of = [0] * inst.n
    comp_elements: List[List[int]] = []
    root_to_comp: dict[int, int] = {}
    for e in range(inst.n):
        root = uf.find(e)
        comp = root_to_comp.get(root)
        if comp is None:
            comp = len(comp_elements)
            root_to_comp[root] = comp
            comp_elements.append([])
        comp_of[e] = comp
        comp_elements[comp].append(e)

    local_of = [0] * inst.n
    for elements in comp_elements:
        for local, e in enumerate(elements):
            local_of[e] = local

    comp_subsets: List[List[SuccinctSet]] = [[] for _ in comp_elements]
    comp_families: List[List[int]] = [[] for _ in comp_elements]
    for sid, s in enumerate(inst.subsets):
        comp = comp_of[next(iter(s))]
        sub_n = len(comp_elements[comp])
        comp_subsets[comp].append(
            SuccinctSet.from_indices(sub_n, (local_of[e] for e in s))
        )
        comp_families[comp].append(sid)

    components = []
    for elements, subsets, family in zip(comp_elements, comp_subsets, comp_families):
        components.append(
            Component(
                elements=SuccinctSet.from_indices(inst.n, elements),
                subfamily=tuple(family),
                subinstance=Instance(len(elements), subsets),
                element_ids=tuple(elements),
            )
        )
    return Segmentation(instance=inst, components=tuple(components))


def merge_partial_covers(seg: Segmentation, partials: Sequence[Cover]) -> Cover:
    """Combine per-component covers into a cover of the original instance.

    Each partial must be feasible for its component's subinstance; the merge
    then needs no repair because components share no elements.
    """
    if len(partials) != len(seg.components):
        raise ValueError(
            f"expected {len(seg.components)} partial covers, got {len(partials)}"
        )
    merged = Cover.empty(seg.instance.n)
    for index, (comp, partial) in enumerate(zip(seg.components, partials)):
        if not cover_is_feasible(partial, comp.subinstance):
            raise ValueError(f"partial cover for component {index} is infeasible")
        for local_sid in partial.chosen:
            orig = comp.subfamily[local_sid]
            merged.add(orig, seg.instance.subsets[orig])
    return merged


def segmentation_csv(seg: Segmentation) -> str:
    """Diagnostic dump: one line per component with its size and family size."""
    lines = ["component,n_elements,n_subsets"]
    for i, comp in enumerate(seg.components):
        lines.append(f"{i},{len(comp.element_ids)},{len(comp.subfamily)}")
    return "\n".join(lines) + "\n"
