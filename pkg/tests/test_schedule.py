import math
import unittest
import numpy as np
from schreierlab.actions import build_action
from schreierlab.errors import DegenerateSchedule, PipelineStageFailed, PointOutOfRange, ScheduleInfeasible
from schreierlab.graph import build_graph
from schreierlab.lemmas import (
    TraceMode, best_schedule, growth_trace, proof_schedule, smallest_feasible_schedule, theorem_pipeline,
)
from schreierlab.lemmas.pipeline import fill_count
from schreierlab.lemmas.schedule import probability_floor
from schreierlab.lemmas.trace import BLOCK_BUDGET_INEQUALITY, prop1_blocks
from schreierlab.sampling import SeededRng, sample_multiset


class TestProofSchedule(unittest.TestCase):
    """Schedule arithmetic on logs, including astronomically large n."""

    def test_huge_degree(self):
        n = 2 ** 1000
        schedule = proof_schedule(n, 18000, 0.5, 8.0)
        self.assertEqual(schedule.D, math.floor(8.0 * 1000 * math.log(2) / math.log(18000)))
        self.assertEqual(schedule.h, 18000 // schedule.D)
        self.assertTrue(schedule.feasible_hD)
        self.assertEqual(schedule.to_dict()["n"], str(n))

    def test_desk_scale_values(self):
        schedule = proof_schedule(10 ** 6, 52, 0.5, 8.0)
        self.assertEqual((schedule.D, schedule.h), (27, 1))
        self.assertTrue(schedule.feasible_hD)
        self.assertFalse(schedule.feasible_growth)
        self.assertFalse(schedule.feasible)

    def test_small_constant(self):
        schedule = proof_schedule(10 ** 6, 52, 0.5, 0.5)
        self.assertEqual((schedule.D, schedule.h), (1, 52))
        self.assertFalse(schedule.feasible_growth)
        with self.assertRaises(DegenerateSchedule):
            proof_schedule(10 ** 6, 52, 0.5, 0.1)

    def test_bad_arguments(self):
        for n, k, eps, C in ((1, 10, 0.5, 1.0), (100, 1, 0.5, 1.0), (100, 10, 1.5, 1.0), (100, 10, 0.5, -1.0)):
            with self.subTest(n=n, k=k, eps=eps, C=C), self.assertRaises(ValueError):
                proof_schedule(n, k, eps, C)

    def test_growth_is_monotone_in_constant(self):
        """Once feasible, a larger C stays feasible below k log k / (e log n)."""
        n, k = 10 ** 6, 5000
        flags = [proof_schedule(n, k, 0.5, C).feasible_growth for C in np.linspace(1.0, 50.0, 200)]
        first = flags.index(True)
        self.assertTrue(all(flags[first:]))

    def test_smallest_feasible(self):
        schedule = smallest_feasible_schedule(1000, 1000, 0.5)
        self.assertEqual((schedule.D, schedule.h), (3, 333))
        self.assertTrue(schedule.feasible)
        self.assertAlmostEqual(schedule.probability_floor, 1 - 6 / 333 ** 3)

    def test_infeasible_and_best(self):
        with self.assertRaises(ScheduleInfeasible) as ctx:
            smallest_feasible_schedule(10 ** 4, 28, 0.5)
        self.assertEqual(ctx.exception.inequality, "h^(D/2) > n")
        schedule = best_schedule(10 ** 4, 28, 0.5)
        self.assertEqual((schedule.D, schedule.h), (9, 3))
        self.assertFalse(schedule.feasible)

    def test_probability_floor(self):
        self.assertAlmostEqual(probability_floor(4, 10, 0.5), 1 - 8 / 1000)
        # a single element per stage gives no guarantee at all
        self.assertEqual(probability_floor(3, 1, 0.5), 0.0)
        self.assertEqual(probability_floor(50, 2, 0.5), 0.0)
        self.assertEqual(probability_floor(3, 0, 0.5), 0.0)


class TestGrowthTrace(unittest.TestCase):
    """Stage-by-stage sphere growth."""

    def test_lemma6_stages(self):
        instance = build_action("sym:n=2000")
        generators = sample_multiset(instance, 28, SeededRng(3))
        trace = growth_trace(instance, 0, 28, 0.5, TraceMode.LEMMA6, generators=generators, allow_infeasible=True)
        self.assertEqual((trace.blocks, trace.block_size, trace.radius), (9, 3, 9))
        self.assertFalse(trace.schedule_feasible)
        self.assertEqual(len(trace.stages), 10)
        self.assertEqual(trace.stages[0], 1)
        for before, after in zip(trace.stages, trace.stages[1:]):
            self.assertLessEqual(before, after)
            self.assertLessEqual(after, min(3 * before, instance.degree))

        # X_D is a subset of the sphere of radius D in the graph on the used elements
        graph = build_graph(instance, generators.slice(0, 27))
        self.assertTrue(trace.final_set.issubset(graph.sphere(0, trace.radius)))

    def test_lemma6_fails_at_first_stage_when_k_is_large(self):
        instance = build_action("cyclic:m=16")
        trace = growth_trace(instance, 0, 64, 0.5, TraceMode.LEMMA6, rng=SeededRng(4))
        self.assertEqual((trace.blocks, trace.block_size), (2, 32))
        self.assertTrue(trace.schedule_feasible)
        self.assertEqual(trace.failure_stage, 1)
        self.assertTrue(trace.certified)
        self.assertTrue(trace.reached_target)
        self.assertEqual(trace.seed, SeededRng(4).seed)

    def test_lemma6_reaches_target(self):
        instance = build_action("sym:n=10000")
        reached = 0
        for trial in range(20):
            trace = growth_trace(instance, 0, 28, 0.5, TraceMode.LEMMA6, rng=SeededRng(trial), allow_infeasible=True)
            reached += trace.reached_target
        self.assertGreaterEqual(reached, 18)

    def test_lemma6_without_feasible_schedule(self):
        instance = build_action("sym:n=10000")
        with self.assertRaises(ScheduleInfeasible):
            growth_trace(instance, 0, 28, 0.5, TraceMode.LEMMA6, rng=SeededRng(1))

    def test_prop1_block_budget(self):
        self.assertEqual(prop1_blocks(16, 0.5), (48, 2))
        instance = build_action("sym:n=64")
        with self.assertRaises(ScheduleInfeasible) as ctx:
            growth_trace(instance, 0, 16, 0.5, TraceMode.PROP1, rng=SeededRng(2))
        self.assertEqual(ctx.exception.inequality, BLOCK_BUDGET_INEQUALITY)

        trace = growth_trace(instance, 0, 16, 0.5, TraceMode.PROP1, rng=SeededRng(2), allow_infeasible=True)
        self.assertIsNotNone(trace.inner)
        self.assertEqual(trace.blocks, 4)
        self.assertEqual(trace.radius, trace.inner.radius + 4)
        self.assertEqual(trace.stages[0], trace.inner.final_size)
        self.assertFalse(trace.schedule_feasible)
        self.assertIn("inner", trace.to_dict())
        for floor in (trace.probability_floor, trace.inner.probability_floor):
            self.assertGreaterEqual(floor, 0.0)
            self.assertLessEqual(floor, 1.0)

    def test_prop1_needs_four_elements(self):
        instance = build_action("sym:n=64")
        with self.assertRaises(ScheduleInfeasible):
            growth_trace(instance, 0, 3, 0.5, TraceMode.PROP1, rng=SeededRng(2), allow_infeasible=True)

    def test_bad_point(self):
        instance = build_action("sym:n=64")
        with self.assertRaises(PointOutOfRange):
            growth_trace(instance, 64, 16, 0.5, TraceMode.LEMMA6, rng=SeededRng(2), allow_infeasible=True)


class TestTheoremPipeline(unittest.TestCase):
    """Growth, fill and doubling on one random instance."""

    def test_fill_count(self):
        self.assertEqual(fill_count(64, 4, 1024), math.ceil(64 * math.log(64)))
        self.assertEqual(fill_count(64, 1, 100), 100)

    def test_certificate_bounds_the_diameter(self):
        instance = build_action("sym:n=64")
        record = theorem_pipeline(instance, 0, 32, 0.5, SeededRng(10), allow_infeasible=True)
        self.assertTrue(record.precondition_met)
        self.assertTrue(record.diameter.connected)
        self.assertEqual(record.fill_radius, record.growth.radius + 1)
        self.assertEqual(record.reverse_fill_radius, record.reverse_growth.radius + 1)
        self.assertEqual(record.doubling_diameter_bound, record.fill_radius + record.reverse_fill_radius)
        self.assertEqual(record.consumed, 2 * 8 + record.fill_count + record.reverse_fill_count)
        self.assertFalse(record.budget_ok)
        self.assertTrue(record.cross_check_ok)
        self.assertGreaterEqual(record.doubling_diameter_bound, record.diameter.upper)

    def test_growth_failure(self):
        instance = build_action("sym:n=64")
        with self.assertRaises(PipelineStageFailed) as ctx:
            theorem_pipeline(instance, 0, 32, 0.5, SeededRng(10))
        self.assertEqual(ctx.exception.stage, "growth")
        with self.assertRaises(PipelineStageFailed) as ctx:
            theorem_pipeline(instance, 0, 3, 0.5, SeededRng(10), allow_infeasible=True)
        self.assertEqual(ctx.exception.stage, "growth")

    def test_fill_failure(self):
        """One fill element cannot carry a handful of points onto 4096."""
        instance = build_action("abelian:m=2,d=12")
        with self.assertRaises(PipelineStageFailed) as ctx:
            theorem_pipeline(instance, 0, 16, 0.5, SeededRng(11), allow_infeasible=True, max_fill_per_side=1)
        self.assertEqual(ctx.exception.stage, "fill")


if __name__ == '__main__':
    unittest.main()
