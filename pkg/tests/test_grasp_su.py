import random

import pytest

from segcover.core import Cover, cover_is_feasible
from segcover.grasp import GraspParams, grasp_solve
from segcover.grasp_su import (
    SuParams,
    grasp_su_solve,
    local_search,
    rpd,
    rpd_star,
    run_components,
)
from segcover.greedy import greedy_solve
from segcover.io import GeneratorConfig, generate_segmentable
from segcover.segmentation import find_groups, merge_partial_covers

from conftest import make_instance
from oracles import brute_force_min_cover, random_covering_family, to_instance


def test_two_component_toy():
    inst = make_instance(3, ((1, 2), (3,)))
    cover = grasp_su_solve(inst, SuParams(grasp=GraspParams(num_iter=5, seed=1)))
    assert sorted(cover.chosen) == [0, 1]
    assert cover_is_feasible(cover, inst)


def test_single_component_matches_sequential_grasp(twelve):
    params = GraspParams(num_iter=30, seed=17)
    sequential = grasp_solve(twelve, params)
    segmented = grasp_su_solve(twelve, SuParams(grasp=params))
    assert segmented.chosen == sequential.chosen


def test_identical_results_for_any_thread_count():
    inst = generate_segmentable(GeneratorConfig(n=400, m=200, groups=8, seed=5))
    covers = [
        grasp_su_solve(inst, SuParams(grasp=GraspParams(num_iter=10, seed=3), threads=t))
        for t in (1, 2, 3)
    ]
    assert covers[0].chosen == covers[1].chosen == covers[2].chosen


def test_phase_times_reported():
    inst = generate_segmentable(GeneratorConfig(n=200, m=100, groups=4, seed=2))
    times = {}
    grasp_su_solve(inst, SuParams(grasp=GraspParams(num_iter=5, seed=1)), phase_times=times)
    assert set(times) == {"segment_ms", "solve_ms", "merge_ms"}
    assert all(v >= 0.0 for v in times.values())


def test_merged_cardinality_is_component_sum_before_pruning():
    inst = generate_segmentable(GeneratorConfig(n=300, m=120, groups=6, seed=8))
    seg = find_groups(inst)
    params = SuParams(grasp=GraspParams(num_iter=5, seed=4))
    partials = run_components([c.subinstance for c in seg.components], params)
    merged = merge_partial_covers(seg, partials)
    assert len(merged) == sum(len(p) for p in partials)


def test_feasible_across_many_random_segmentable_instances():
    rng = random.Random(0)
    for _ in range(40):
        k = rng.choice((2, 4, 8))
        n = rng.randint(k, 300)
        m = rng.randint(k, 60)
        cfg = GeneratorConfig(n=n, m=m, groups=k, density=0.2, seed=rng.randrange(10**9))
        inst = generate_segmentable(cfg)
        cover = grasp_su_solve(inst, SuParams(grasp=GraspParams(num_iter=3, seed=1)))
        assert cover_is_feasible(cover, inst)


class TestLocalSearch:
    def test_optimal_component_cannot_improve(self):
        rng = random.Random(11)
        subsets = random_covering_family(rng, 10, 6)
        inst = to_instance(10, subsets)
        opt, combo = brute_force_min_cover(10, subsets)
        cover = Cover.empty(10)
        for sid in combo:
            cover.add(sid, inst.subsets[sid])
        out = local_search(cover, inst, GraspParams(num_iter=25, seed=0), random.Random(0))
        assert len(out) == opt

    def test_planted_redundancy_is_removed(self, twelve):
        cover = Cover.empty(12)
        for sid in (0, 1, 3, 5):  # subset 3 is redundant here
            cover.add(sid, twelve.subsets[sid])
        out = local_search(cover, twelve, GraspParams(num_iter=0, seed=0), random.Random(0))
        assert len(out) < 4

    def test_zero_iterations_returns_pruned_input(self, twelve):
        cover = Cover.empty(12)
        for sid in (0, 1, 5):
            cover.add(sid, twelve.subsets[sid])
        out = local_search(cover, twelve, GraspParams(num_iter=0, seed=0), random.Random(0))
        assert out.chosen == [0, 1, 5]

    def test_infeasible_input_rejected(self, twelve):
        cover = Cover.empty(12)
        cover.add(0, twelve.subsets[0])
        with pytest.raises(ValueError, match="feasible"):
            local_search(cover, twelve, GraspParams(num_iter=1, seed=0), random.Random(0))


class TestDeviationMetrics:
    def test_rpd(self):
        assert rpd(5, 5) == 0.0
        assert rpd(4, 3) == pytest.approx(1 / 3)
        assert rpd(96, 96) == 0.0
        with pytest.raises(ValueError):
            rpd(4, 0)

    def test_rpd_star(self):
        assert rpd_star(3, 4) == 0.25
        assert rpd_star(4, 4) == 0.0
        assert rpd_star(5, 4) == -0.25
        with pytest.raises(ValueError):
            rpd_star(4, 0)


def test_params_validation():
    with pytest.raises(ValueError):
        SuParams(threads=0)
    with pytest.raises(ValueError):
        SuParams(segmentation_source="voronoi")


def test_usually_no_worse_than_greedy_on_segmentable_instances():
    rng = random.Random(99)
    wins = 0
    runs = 12
    for _ in range(runs):
        cfg = GeneratorConfig(
            n=rng.randint(200, 500), m=rng.randint(80, 160),
            groups=rng.choice((2, 4, 8)), density=0.08, seed=rng.randrange(10**9),
        )
        inst = generate_segmentable(cfg)
        su = grasp_su_solve(inst, SuParams(grasp=GraspParams(num_iter=60, seed=7)))
        if rpd_star(len(su), len(greedy_solve(inst))) >= 0.0:
            wins += 1
    assert wins >= runs * 0.9
