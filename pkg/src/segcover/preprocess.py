"""Instance reduction: force unique coverers, drop dominated subsets.

The default is a single pass: (1) every subset that is the only coverer of
some element is forced into the solution and its elements marked covered;
(2) any remaining subset whose original element set is contained in another
remaining subset's original set is excluded (equal sets keep the lowest id),
as is any subset left with an empty restriction to the uncovered elements.

``fixpoint=True`` instead alternates forcing and dominance until stable,
with dominance evaluated on the restricted (residual) element sets.  This
reduces strictly more but is a different, more aggressive contract; both
modes preserve feasibility and the optimal cardinality.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .core import Cover, Instance, SuccinctSet


@dataclass(frozen=True)
class ReductionReport:
    """Reduction bookkeeping: what was forced, excluded, covered, and kept.

    The counting identities hold exactly:
    ``original.n == covered.cardinality() + residual.n`` and
    ``original.m == len(forced) + len(excluded) + residual.m``.
    """

    original: Instance
    forced: Tuple[int, ...]
    excluded: Tuple[int, ...]
    covered: SuccinctSet
    residual: Instance
    element_to_original: Tuple[int, ...]
    subset_to_original: Tuple[int, ...]

    def lift_cover(self, residual_cover: Cover) -> Cover:
        """Translate a residual cover back to original ids, forced ids first."""
        cover = Cover.empty(self.original.n)
        for sid in self.forced:
            cover.add(sid, self.original.subsets[sid])
        for sid in residual_cover.chosen:
            orig = self.subset_to_original[sid]
            cover.add(orig, self.original.subsets[orig])
        return cover

    def summary(self) -> dict:
        return {
            "elements": self.original.n,
            "covered": self.covered.cardinality(),
            "uncovered": self.residual.n,
            "subsets": self.original.m,
            "forced": len(self.forced),
            "excluded": len(self.excluded),
            "remaining": self.residual.m,
        }


def _force_unique_coverers(
    inst: Instance,
    active: List[bool],
    forced: List[int],
    covered: SuccinctSet,
) -> bool:
    """One forcing sweep over uncovered elements; returns True if anything fired."""
    degree = [0] * inst.n
    last = [-1] * inst.n
    for sid, s in enumerate(inst.subsets):
        if not active[sid]:
            continue
        for e in s:
            degree[e] += 1
            last[e] = sid
    fired = False
    for e in range(inst.n):
        if e in covered:
            continue
        if degree[e] == 1:
            sid = last[e]
            if active[sid]:
                active[sid] = False
                forced.append(sid)
                covered.union_inplace(inst.subsets[sid])
                fired = True
    return fired


def _dominated(
    inst: Instance,
    candidates: Sequence[int],
    restrict_mask: int,
) -> List[int]:
    """Ids whose (masked) element set is inside another candidate's set.

    Equal sets keep the lowest id.  The predicate only quantifies over other
    candidates, so it is order-free and deterministic; supersets of a subset
    are found through the coverer list of its lowest-degree element.
    """
    masked = {sid: inst.subsets[sid]._bits & restrict_mask for sid in candidates}
    coverers: dict[int, List[int]] = {}
    for sid in candidates:
        bits = masked[sid]
        while bits:
            low = bits & -bits
            coverers.setdefault(low.bit_length() - 1, []).append(sid)
            bits ^= low
    dominated = []
    for sid in candidates:
        bits = masked[sid]
        if bits == 0:
            continue
        rarest = min(
            (low.bit_length() - 1 for low in _iter_low_bits(bits)),
            key=lambda e: len(coverers[e]),
        )
        for other in coverers[rarest]:
            if other == sid:
                continue
            other_bits = masked[other]
            if bits & ~other_bits == 0 and (bits != other_bits or other < sid):
                dominated.append(sid)
                break
    return dominated


def _iter_low_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low
        bits ^= low


def reduce(inst: Instance, fixpoint: bool = False) -> ReductionReport:
    """Reduce an instance, reporting forced/excluded subsets and the residual.

    Always succeeds; a fully reducible instance yields an empty residual.
    """
    active = [True] * inst.m
    forced: List[int] = []
    excluded: List[int] = []
    covered = SuccinctSet(inst.n)
    universe = (1 << inst.n) - 1

    _force_unique_coverers(inst, active, forced, covered)
    while True:
        remaining = [sid for sid in range(inst.m) if active[sid]]
        restrict = universe & ~covered._bits if fixpoint else universe
        for sid in _dominated(inst, remaining, restrict):
            active[sid] = False
            excluded.append(sid)
        for sid in remaining:
            if active[sid] and inst.subsets[sid]._bits & ~covered._bits == 0:
                active[sid] = False
                excluded.append(sid)
        if not fixpoint:
            break
        if not _force_unique_coverers(inst, active, forced, covered):
            break

    element_map = [e for e in range(inst.n) if e not in covered]
    local_of = {e: i for i, e in enumerate(element_map)}
    subset_map = [sid for sid in range(inst.m) if active[sid]]
    residual_n = len(element_map)
    residual_subsets = []
    for sid in subset_map:
        bits = inst.subsets[sid]._bits & ~covered._bits
        members = []
        while bits:
            low = bits & -bits
            members.append(local_of[low.bit_length() - 1])
            bits ^= low
        residual_subsets.append(SuccinctSet.from_indices(residual_n, members))
    residual = Instance(residual_n, residual_subsets)

    excluded.sort()
    return ReductionReport(
        original=inst,
        forced=tuple(forced),
        excluded=tuple(excluded),
        covered=covered,
        residual=residual,
        element_to_original=tuple(element_map),
        subset_to_original=tuple(subset_map),
    )


TABLE_COLUMNS = ("|X|", "X_cov", "X_uncov", "|F|", "F_inc", "F_exc", "F_left")


def format_reduction_table(rows: Iterable[Tuple[str, ReductionReport]]) -> str:
    """Plain-text reduction summary table, one row per named report."""
    header = ("instance",) + TABLE_COLUMNS
    body = []
    for name, report in rows:
        s = report.summary()
        body.append(
            (
                name,
                str(s["elements"]),
                str(s["covered"]),
                str(s["uncovered"]),
                str(s["subsets"]),
                str(s["forced"]),
                str(s["excluded"]),
                str(s["remaining"]),
            )
        )
    widths = [max(len(header[i]), *(len(r[i]) for r in body)) if body else len(header[i]) for i in range(len(header))]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header))]
    for row in body:
        lines.append("  ".join(cell.rjust(widths[i]) if i else cell.ljust(widths[i]) for i, cell in enumerate(row)))
    return "\n".join(lines)
