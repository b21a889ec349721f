import csv
import io
import json
import os
import tempfile
import unittest
import xml.etree.ElementTree as ET
from dataclasses import replace
from schreierlab.config import AppConfig
from schreierlab.errors import UsageError
from schreierlab.experiments.emit import emit_csv, format_csv, format_json
from schreierlab.experiments.k_rule import KRule
from schreierlab.experiments.plot import SVG_NS, ratio_series, render_svg
from schreierlab.experiments.sweep import (
    CSV_HEADER, ResultRow, SweepConfig, diameter_ratio, cayley_baseline, run_sweep,
)


def cycle_config(**overrides) -> SweepConfig:
    values = dict(families=("cyclic",), n_values=(12, 13), k_rule=KRule.parse("fixed:1"),
                  trials=10, seed=5, timing=False)
    values.update(overrides)
    return SweepConfig(**values)


class TestKRule(unittest.TestCase):
    """Rules mapping n to k."""

    def test_rules(self):
        self.assertEqual(KRule.parse("power:0.5").k_for(4096), 24)
        self.assertEqual(KRule.parse("fraction:0.5").k_for(100), 10)
        self.assertEqual(KRule.parse("fixed:3").k_for(10 ** 6), 3)
        self.assertEqual(str(KRule.parse("power:0.5")), "power:0.5")

    def test_bad_rules(self):
        for text in ("power", "linear:2", "fixed:0", "fixed:2.5", "power:-1", "fraction:x"):
            with self.subTest(text=text), self.assertRaises(UsageError):
                KRule.parse(text)


class TestSweep(unittest.TestCase):
    """Sweep rows, ordering and reproducibility."""

    def test_rows_are_complete_and_sorted(self):
        rows = run_sweep(cycle_config())
        self.assertEqual(len(rows), 20)
        self.assertEqual([row.sort_key for row in rows], sorted(row.sort_key for row in rows))
        self.assertEqual({row.n for row in rows}, {12, 13})
        self.assertTrue(all(row.k == 1 for row in rows))

    def test_single_shift_gives_a_directed_cycle(self):
        """A connected cycle graph has diameter n - 1 and no covering radius."""
        for row in run_sweep(cycle_config()):
            if row.connected:
                self.assertEqual(row.diam_exact, row.n - 1)
                self.assertIsNone(row.covering_radius)
                self.assertEqual(row.ratio, 0.0)
                self.assertEqual(row.method, "all-pairs")
            else:
                self.assertIsNone(row.diam_exact)
                self.assertIsNone(row.ratio)

    def test_reproducible_across_worker_counts(self):
        serial = format_csv(run_sweep(cycle_config(max_workers=1)))
        parallel = format_csv(run_sweep(cycle_config(max_workers=4)))
        self.assertEqual(serial, parallel)
        self.assertNotEqual(serial, format_csv(run_sweep(cycle_config(seed=6))))

    def test_power_rule_on_symmetric_groups(self):
        rows = run_sweep(SweepConfig(families=("sym",), n_values=(16, 32), k_rule=KRule.parse("power:0.5"),
                                     trials=3, timing=False))
        self.assertEqual([row.k for row in rows], [5, 5, 5, 7, 7, 7])
        for row in rows:
            if row.connected:
                self.assertLessEqual(row.diam_lower, row.diam_upper)
                self.assertIsNotNone(row.ratio)
                self.assertIsNone(row.cayley_baseline)

    def test_distinct_generators(self):
        """All 12 distinct shifts of Z_12 reach every point in one step; 13 cannot be drawn."""
        rows = run_sweep(cycle_config(n_values=(12,), k_rule=KRule.parse("fixed:12"), trials=2, distinct=True))
        self.assertTrue(all(row.connected and row.diam_exact == 1 for row in rows))
        rows = run_sweep(cycle_config(n_values=(12,), k_rule=KRule.parse("fixed:13"), trials=1, distinct=True))
        self.assertFalse(rows[0].connected)
        self.assertIn("distinct", rows[0].error)

    def test_default_settings_are_byte_identical(self):
        """Wall-clock times stay out of rows unless timing is switched on."""
        config = SweepConfig.from_settings(AppConfig(), ["cyclic"], [12], k_rule=KRule.parse("fixed:2"), trials=4)
        first, second = run_sweep(config), run_sweep(config)
        self.assertTrue(all(row.elapsed_ms is None for row in first))
        self.assertEqual(format_csv(first), format_csv(second))
        timed = run_sweep(replace(config, timing=True))
        self.assertTrue(all(row.elapsed_ms is not None for row in timed))

    def test_bad_config(self):
        with self.assertRaises(UsageError):
            cycle_config(families=())
        with self.assertRaises(UsageError):
            cycle_config(families=("torus",))
        with self.assertRaises(UsageError):
            cycle_config(trials=0)

    def test_from_settings_applies_overrides(self):
        config = SweepConfig.from_settings(AppConfig(), ["sym"], [64], trials=7, seed=None)
        self.assertEqual(config.trials, 7)
        self.assertEqual(config.seed, 0)
        self.assertEqual(str(config.k_rule), "power:0.5")
        self.assertEqual(config.retry_cap, AppConfig().sampling.distinct_retry_cap)
        self.assertFalse(config.distinct)

    def test_ratio_and_baseline(self):
        self.assertEqual(diameter_ratio(0, 100, 5), 0.0)
        self.assertAlmostEqual(diameter_ratio(4, 2 ** 10, 2 ** 5), 2.0)
        self.assertIsNone(cayley_baseline(100, 2))
        self.assertIsNotNone(cayley_baseline(2 ** 16, 100))


class TestEmit(unittest.TestCase):
    """CSV and JSON output."""

    def setUp(self):
        self.rows = [
            ResultRow(family="cyclic", n=12, k=1, trial=0, seed=3, connected=True,
                      diam_lower=11, diam_upper=11, diam_exact=11, ratio=0.0),
            ResultRow(family="cyclic", n=12, k=1, trial=1, seed=4, connected=False),
        ]

    def test_empty_sweep_is_header_only(self):
        self.assertEqual(format_csv([]), ",".join(CSV_HEADER) + "\n")

    def test_csv_cells(self):
        records = list(csv.DictReader(io.StringIO(format_csv(self.rows))))
        self.assertEqual(records[0]["connected"], "true")
        self.assertEqual(records[0]["ratio"], "0.000000")
        self.assertEqual(records[0]["covering_radius"], "")
        self.assertEqual(records[1]["connected"], "false")
        self.assertEqual(records[1]["diam_exact"], "")

    def test_json(self):
        data = json.loads(format_json(self.rows))
        self.assertEqual(len(data), 2)
        self.assertIsNone(data[1]["diam_exact"])
        self.assertIn("method", data[0])

    def test_emit_to_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "rows.csv")
            emit_csv(self.rows, path)
            with open(path, encoding="utf-8") as f:
                self.assertEqual(f.read(), format_csv(self.rows))


class TestPlot(unittest.TestCase):
    """SVG rendering of the ratio column."""

    def rows(self, ratios_by_n):
        return [
            ResultRow(family="sym", n=n, k=4, trial=t, seed=0, connected=True,
                      diam_lower=1, diam_upper=1, ratio=ratio)
            for n, ratios in ratios_by_n.items() for t, ratio in enumerate(ratios)
        ]

    def test_series(self):
        series = ratio_series(self.rows({64: [1.0, 2.0, 4.0], 16: [3.0]}))
        self.assertEqual([round(top, 6) for _, top, _ in series], [3.0, 4.0])
        self.assertEqual([mid for _, _, mid in series], [3.0, 2.0])

    def test_single_point(self):
        text = render_svg(self.rows({64: [1.5]}))
        self.assertTrue(text.startswith('<?xml'))
        root = ET.fromstring(text.encode("utf-8"))
        self.assertEqual(len(root.findall(f"{{{SVG_NS}}}circle")), 1)

    def test_polylines_follow_n(self):
        root = ET.fromstring(render_svg(self.rows({16: [1.0], 64: [2.0], 256: [3.0]})).encode("utf-8"))
        lines = {line.get("class"): line for line in root.findall(f"{{{SVG_NS}}}polyline")}
        self.assertEqual(lines["median"].get("stroke-dasharray"), "6,4")
        coords = [tuple(map(float, pair.split(","))) for pair in lines["max"].get("points").split()]
        xs = [x for x, _ in coords]
        ys = [y for _, y in coords]
        self.assertEqual(xs, sorted(xs))
        # larger ratios sit higher, i.e. at smaller y
        self.assertEqual(ys, sorted(ys, reverse=True))

    def test_mixed_families(self):
        rows = self.rows({16: [1.0]}) + [ResultRow(family="cyclic", n=16, k=1, trial=0, seed=0, connected=False)]
        with self.assertRaises(ValueError):
            render_svg(rows)


if __name__ == '__main__':
    unittest.main()
