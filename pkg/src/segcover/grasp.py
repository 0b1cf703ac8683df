"""Randomized greedy construction and the sequential GRASP improvement loop.

Construction is element-first: the uncovered element with the smallest
degree (fewest covering subsets) defines the candidate list, and one of four
score functions of the candidate's fresh-coverage count ranks it.  In
intensification mode the best-scored candidate wins deterministically; in
diversification mode candidates are drawn with probability proportional to
one minus their score, clamped below by a tiny epsilon so ill-scaled scores
(above one) still leave a valid distribution.

The improvement loop repeatedly deletes a fixed fraction of the incumbent,
rebuilds with the construction procedure, prunes redundant picks, and keeps
the result only on strict improvement; the intensify/diversify flag simply
records whether the previous iteration improved.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from .core import Cover, Instance, SuccinctSet, cover_is_feasible

WEIGHT_EPSILON = 1e-6


def _inverse(c: int) -> float:
    return 1.0 / c

def _inverse_sqrt(c: int) -> float:
    return 1.0 / math.sqrt(c)

def _inverse_log(c: int) -> float:
    return 1.0 / math.log(c + 1)

def _inverse_square(c: int) -> float:
    return 1.0 / (c * c)


@dataclass(frozen=True)
class EvalFunction:
    """A strictly decreasing score of the fresh-coverage count (>= 1)."""

    tag: str
    fn: Callable[[int], float]

    def __call__(self, count: int) -> float:
        return self.fn(count)


EVAL_FUNCTIONS: Tuple[EvalFunction, ...] = (
    EvalFunction("inverse", _inverse),
    EvalFunction("inverse-sqrt", _inverse_sqrt),
    EvalFunction("inverse-log", _inverse_log),
    EvalFunction("inverse-square", _inverse_square),
)


@dataclass(frozen=True)
class GraspParams:
    num_iter: int = 300
    max_rm: float = 0.5
    seed: int = 0
    eval_set: Tuple[EvalFunction, ...] = EVAL_FUNCTIONS

    def __post_init__(self) -> None:
        if self.num_iter < 0:
            raise ValueError(f"num_iter must be >= 0, got {self.num_iter}")
        if not 0.0 < self.max_rm < 1.0:
            raise ValueError(f"max_rm must lie in (0, 1), got {self.max_rm}")
        if not self.eval_set:
            raise ValueError("eval_set must not be empty")


@dataclass(frozen=True)
class RowMap:
    """Per-element coverage index, sorted ascending by degree then element id.

    Each entry is ``(element, degree, covering subset ids)``.  Degrees count
    covering subsets of the instance and never change during construction,
    so one sorted index serves a whole solve; covered elements are skipped
    with a monotone cursor.
    """

    instance: Instance
    entries: Tuple[Tuple[int, int, Tuple[int, ...]], ...]

    def next_uncovered(
        self, uncovered: SuccinctSet, cursor: int
    ) -> Tuple[int, int, Tuple[int, ...]]:
        """(new cursor, element, coverer ids) of the first uncovered entry."""
        ubits = uncovered._bits
        entries = self.entries
        for i in range(cursor, len(entries)):
            element, _, coverer_ids = entries[i]
            if (ubits >> element) & 1:
                return i, element, coverer_ids
        raise RuntimeError("uncovered elements missing from the row map")


def create_row_map(inst: Instance) -> RowMap:
    coverers = inst.coverers()
    entries = sorted(
        ((e, len(ids), tuple(ids)) for e, ids in enumerate(coverers)),
        key=lambda entry: (entry[1], entry[0]),
    )
    return RowMap(instance=inst, entries=tuple(entries))


def find_best_candidate(
    candidates: Sequence[Tuple[int, SuccinctSet]],
    f: EvalFunction,
    uncovered: SuccinctSet,
    improve: bool,
    rng: random.Random,
) -> int:
    """Select a subset id from (id, members) candidates.

    Intensifying: the candidate minimising ``f(fresh coverage)``, ties to the
    lowest id.  Diversifying: a draw weighted by ``max(eps, 1 - f(count))``;
    when every weight clamps to eps the draw is uniform.
    """
    if not candidates:
        raise ValueError("candidate list is empty")
    ubits = uncovered._bits
    scores = []
    for sid, members in candidates:
        count = (members._bits & ubits).bit_count()
        if count == 0:
            raise ValueError(f"candidate subset {sid} covers nothing uncovered")
        scores.append((sid, f(count)))
    if improve:
        return min(scores, key=lambda pair: (pair[1], pair[0]))[0]
    weights = [max(WEIGHT_EPSILON, 1.0 - score) for _, score in scores]
    return rng.choices([sid for sid, _ in scores], weights=weights, k=1)[0]


def rand_construct(
    partial: Cover,
    uncovered: SuccinctSet,
    rowmap: RowMap,
    improve: bool,
    rng: random.Random,
    eval_set: Tuple[EvalFunction, ...] = EVAL_FUNCTIONS,
) -> Cover:
    """Complete ``partial`` until ``uncovered`` is empty; mutates both.

    Each round: take the lowest-degree uncovered element, rank the subsets
    covering it with a score function drawn uniformly from ``eval_set``, and
    add the selected subset.
    """
    if partial.covered._bits & uncovered._bits:
        raise ValueError("partial cover overlaps the uncovered set")
    inst = rowmap.instance
    subsets = inst.subsets
    cursor = 0
    while uncovered:
        cursor, element, coverer_ids = rowmap.next_uncovered(uncovered, cursor)
        if not coverer_ids:
            raise RuntimeError(f"no subset covers element {element}; corrupt instance")
        f = rng.choice(eval_set)
        candidates = [(sid, subsets[sid]) for sid in coverer_ids]
        chosen = find_best_candidate(candidates, f, uncovered, improve, rng)
        partial.add(chosen, subsets[chosen])
        uncovered.difference_inplace(subsets[chosen])
    return partial


def remove_sets(
    c: Cover,
    inst: Instance,
    max_rm: float,
    rng: random.Random,
    uniform_count: bool = False,
) -> Cover:
    """Drop ``max(1, floor(max_rm * |C|))`` chosen subsets uniformly at random.

    Returns a new, generally infeasible partial with recomputed coverage.
    ``uniform_count=True`` instead draws the removal count uniformly from
    1..that maximum.
    """
    if not 0.0 < max_rm < 1.0:
        raise ValueError(f"max_rm must lie in (0, 1), got {max_rm}")
    if len(c) == 0:
        raise ValueError("cannot remove subsets from an empty cover")
    count = max(1, int(max_rm * len(c)))
    if uniform_count:
        count = rng.randint(1, count)
    removed = set(rng.sample(c.chosen, count))
    kept = [sid for sid in c.chosen if sid not in removed]
    covered = SuccinctSet(inst.n)
    for sid in kept:
        covered.union_inplace(inst.subsets[sid])
    return Cover(kept, covered)


def remove_redundant_sets(c: Cover, inst: Instance) -> Cover:
    """Drop every subset whose removal keeps the cover feasible.

    Chosen subsets are scanned in descending cardinality (ties toward the
    higher id), so large sets get evicted first; the result is 1-minimal.
    """
    if not cover_is_feasible(c, inst):
        raise ValueError("cover must be feasible before redundancy removal")
    counts = [0] * inst.n
    for sid in c.chosen:
        for e in inst.subsets[sid]:
            counts[e] += 1
    dropped = set()
    order = sorted(c.chosen, key=lambda sid: (-inst.subsets[sid].cardinality(), -sid))
    for sid in order:
        members = list(inst.subsets[sid])
        if all(counts[e] >= 2 for e in members):
            dropped.add(sid)
            for e in members:
                counts[e] -= 1
    kept = [sid for sid in c.chosen if sid not in dropped]
    covered = SuccinctSet(inst.n)
    for sid in kept:
        covered.union_inplace(inst.subsets[sid])
    return Cover(kept, covered)


TraceFn = Callable[[int, int, bool, bool], None]


def improvement_loop(
    best: Cover,
    inst: Instance,
    rowmap: RowMap,
    params: GraspParams,
    rng: random.Random,
    trace: Optional[TraceFn] = None,
) -> Cover:
    """Run ``params.num_iter`` destroy/reconstruct/prune rounds on ``best``.

    Acceptance is strict improvement only; ``trace`` (if given) receives
    ``(iteration, new size, accepted, improve flag)`` per round.
    """
    if inst.n == 0:
        return best
    improve = True
    universe = SuccinctSet.full(inst.n)
    for iteration in range(1, params.num_iter + 1):
        candidate = remove_sets(best, inst, params.max_rm, rng)
        uncovered = universe.difference(candidate.covered)
        candidate = rand_construct(
            candidate, uncovered, rowmap, improve, rng, params.eval_set
        )
        candidate = remove_redundant_sets(candidate, inst)
        accepted = len(candidate) < len(best)
        if accepted:
            best = candidate
        improve = accepted
        if trace is not None:
            trace(iteration, len(candidate), accepted, improve)
    return best


def _grasp_run(
    inst: Instance,
    params: GraspParams,
    rng: random.Random,
    trace: Optional[TraceFn] = None,
) -> Cover:
    """Diversified initial construction, prune, then the improvement loop."""
    if inst.n == 0:
        return Cover.empty(0)
    rowmap = create_row_map(inst)
    cover = rand_construct(
        Cover.empty(inst.n), SuccinctSet.full(inst.n), rowmap, False, rng, params.eval_set
    )
    cover = remove_redundant_sets(cover, inst)
    return improvement_loop(cover, inst, rowmap, params, rng, trace)


def grasp_solve(
    inst: Instance,
    params: Optional[GraspParams] = None,
    trace: Optional[TraceFn] = None,
) -> Cover:
    """Sequential GRASP; deterministic in (instance, params.seed)."""
    params = params if params is not None else GraspParams()
    rng = random.Random(params.seed)
    return _grasp_run(inst, params, rng, trace)
