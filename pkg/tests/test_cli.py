import csv
import json
import os
import signal
import tempfile
from pathlib import Path
from unittest.mock import patch

from src.constant import VERSION
from workers.cli import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main
from workers.config import OUTPUT_DIR
from workers.output import resolve_path
from workers.utils import format_cell
from tests.base import Base


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as handle:
        lines = handle.read().split("\n")
    metadata = json.loads(lines[0][2:])
    rows = list(csv.reader(line for line in lines[1:] if line))
    return metadata, rows[0], rows[1:]


class TestCli(Base):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def run_cli(self, *args):
        return main(["--quiet", *args])

    def test_single_walk_csv(self):
        out = self.dir / "walk.csv"
        self.assertEqual(self.run_cli("--command", "single-walk", "--steps", "1", "--out", str(out)), EXIT_OK)
        metadata, header, rows = read_csv(out)
        self.assertEqual(header, ["m", "P", "envelope"])
        self.assertEqual([row[0] for row in rows], ["-1", "0", "1"])
        self.assertEqual([float(row[1]) for row in rows], [0.5, 0.0, 0.5])
        self.assertEqual(rows[0][2], "")
        self.assertEqual(metadata["version"], VERSION)
        self.assertEqual(metadata["config"]["command"], "single-walk")
        self.assertEqual(metadata["config"]["kind"], "S")

    def test_lf_line_endings(self):
        out = self.dir / "walk.csv"
        self.run_cli("--command", "single-walk", "--steps", "4", "--out", str(out))
        self.assertNotIn(b"\r", out.read_bytes())
        self.assertTrue(out.read_text().startswith("# "))

    def test_single_walk_normalized(self):
        out = self.dir / "walk.csv"
        self.run_cli("--command", "single-walk", "--steps", "100", "--out", str(out))
        _, _, rows = read_csv(out)
        self.assertAlmostEqual(sum(float(row[1]) for row in rows), 1.0, delta=1e-10)

    def test_meeting_series_fermion(self):
        out = self.dir / "fermion.csv"
        code = self.run_cli(
            "--command", "meeting-series", "--kind", "fermion", "--start", "S", "--d", "0",
            "--steps", "20", "--out", str(out),
        )
        self.assertEqual(code, EXIT_OK)
        _, header, rows = read_csv(out)
        self.assertEqual(header, ["t", "meeting", "overall", "estimate"])
        self.assertTrue(all(float(row[1]) == 0.0 for row in rows))

    def test_meeting_series_with_oracle(self):
        out = self.dir / "psi.json"
        code = self.run_cli(
            "--command", "meeting-series", "--kind", "psi-", "--d", "2", "--steps", "15",
            "--oracle", "--format", "json", "--out", str(out),
        )
        self.assertEqual(code, EXIT_OK)
        document = json.loads(out.read_text())
        self.assertEqual(document["columns"], ["t", "meeting", "overall", "estimate"])
        self.assertEqual(len(document["data"]["t"]), 15)
        self.assertLessEqual(document["metadata"]["oracle"]["max_deviation"], 1e-10)

    def test_deterministic_output(self):
        first, second = self.dir / "a.csv", self.dir / "b.csv"
        args = ("--command", "meeting-series", "--kind", "classical", "--d", "3", "--steps", "40", "--seed", "11")
        self.run_cli(*args, "--out", str(first))
        self.run_cli(*args, "--out", str(second))
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_sweep_writes_width_file(self):
        out = self.dir / "sweep.csv"
        code = self.run_cli("--command", "overall-sweep", "--steps", "12", "--workers", "1", "--out", str(out))
        self.assertEqual(code, EXIT_OK)
        _, header, rows = read_csv(out)
        self.assertEqual(header, ["d", "separation", "quantum", "classical"])
        self.assertEqual(len(rows), 13)
        _, width_header, width_rows = read_csv(self.dir / "sweep-width.csv")
        self.assertEqual(width_header, ["T", "quantum_width", "classical_width"])
        self.assertEqual([row[0] for row in width_rows], ["3", "6", "9", "12"])

    def test_sweep_json_single_document(self):
        out = self.dir / "sweep.json"
        self.run_cli("--command", "overall-sweep", "--kind", "RL", "--steps", "8", "--workers", "1",
                     "--format", "json", "--out", str(out))
        document = json.loads(out.read_text())
        self.assertEqual(set(document), {"sweep", "width"})
        self.assertEqual(document["sweep"]["data"]["separation"], [2 * d for d in range(9)])

    def test_sweep_independent_of_workers(self):
        one, two = self.dir / "one.csv", self.dir / "two.csv"
        self.run_cli("--command", "overall-sweep", "--steps", "10", "--workers", "1", "--out", str(one))
        self.run_cli("--command", "overall-sweep", "--steps", "10", "--workers", "2", "--out", str(two))
        self.assertEqual(read_csv(one)[1:], read_csv(two)[1:])

    def test_usage_errors(self):
        self.assertEqual(self.run_cli("--command", "overall-sweep", "--kind", "psi+"), EXIT_USAGE)
        self.assertEqual(self.run_cli("--command", "single-walk", "--steps", "0"), EXIT_USAGE)
        self.assertEqual(self.run_cli("--command", "walk"), EXIT_USAGE)
        self.assertEqual(self.run_cli("--command", "meeting-series", "--d", "-1"), EXIT_USAGE)
        self.assertEqual(self.run_cli("--command", "meeting-series", "--kind", "boson", "--start", "psi+"), EXIT_USAGE)

    def test_signal_handlers_left_untouched(self):
        before = signal.getsignal(signal.SIGINT)
        self.run_cli("--command", "single-walk", "--steps", "2", "--out", str(self.dir / "walk.csv"))
        self.assertIs(signal.getsignal(signal.SIGINT), before)
        self.run_cli("--command", "overall-sweep", "--steps", "4", "--workers", "1", "--out", str(self.dir / "sweep.csv"))
        self.assertIs(signal.getsignal(signal.SIGINT), before)

    def test_interrupted_sweep_writes_nothing(self):
        out = self.dir / "sweep.csv"
        with patch("workers.pool.get_shutdown_flag", return_value=True):
            code = self.run_cli("--command", "overall-sweep", "--steps", "4", "--workers", "1", "--out", str(out))
        self.assertEqual(code, EXIT_RUNTIME)
        self.assertFalse(out.exists())

    def test_unwritable_output(self):
        blocker = self.dir / "file"
        blocker.write_text("x")
        code = self.run_cli("--command", "single-walk", "--steps", "2", "--out", str(blocker / "walk.csv"))
        self.assertEqual(code, EXIT_RUNTIME)


class TestOutputHelpers(Base):

    def test_relative_paths_use_output_dir(self):
        self.assertEqual(resolve_path("run.csv", "default.csv"), Path(OUTPUT_DIR) / "run.csv")
        self.assertEqual(resolve_path(None, "default.csv").name, "default.csv")
        absolute = os.path.abspath("x.csv")
        self.assertEqual(str(resolve_path(absolute, "default.csv")), absolute)

    def test_format_cell(self):
        self.assertEqual(format_cell(None), "")
        self.assertEqual(format_cell(0.1), "0.1")
        self.assertEqual(format_cell(3), "3")
