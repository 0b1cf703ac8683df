"""Deterministic greedy baseline: always take the largest marginal gain."""
from __future__ import annotations

from .core import Cover, Instance, SuccinctSet


def greedy_solve(inst: Instance) -> Cover:
    """Pick the subset covering the most uncovered elements until feasible.

    Ties break toward the lowest subset id.  Gains are recomputed each pick
    with word-parallel intersection counts; subsets are visited in descending
    cardinality so the scan can stop once no remaining subset can beat the
    incumbent gain (a subset never gains more than its size).
    """
    cover = Cover.empty(inst.n)
    if inst.n == 0:
        return cover
    uncovered = SuccinctSet.full(inst.n)
    order = sorted(range(inst.m), key=lambda sid: (-inst.subsets[sid].cardinality(), sid))
    cards = [inst.subsets[sid].cardinality() for sid in order]
    subsets = inst.subsets
    while uncovered:
        ubits = uncovered._bits
        best_gain = 0
        best_sid = -1
        for sid, card in zip(order, cards):
            if card < best_gain:
                break
            gain = (subsets[sid]._bits & ubits).bit_count()
            if gain > best_gain or (gain == best_gain and 0 < gain and sid < best_sid):
                best_gain = gain
                best_sid = sid
        if best_sid < 0:
            raise RuntimeError("no subset covers a remaining element")
        cover.add(best_sid, subsets[best_sid])
        uncovered.difference_inplace(subsets[best_sid])
    return cover
