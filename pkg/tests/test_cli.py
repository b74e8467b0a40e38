"""End-to-end CLI runs through run.main."""
import contextlib
import io
import json
import os
import sys
import tempfile
import unittest
from pathlib import Path
from unittest import mock

repo_root = Path(__file__).resolve().parents[1]
sys.path.append(str(repo_root))

import run  # noqa: E402
from core.config import config  # noqa: E402
from core.graph import read_graph6_lines  # noqa: E402


def invoke(*argv: str):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run.main(list(argv))
    return code, out.getvalue(), err.getvalue()


class GraphCommandsTest(unittest.TestCase):
    def test_product(self):
        self.assertEqual(invoke("product", "A_", "A_"), (0, "Cr\n", ""))

    def test_factorize(self):
        self.assertEqual(invoke("factorize", "Cr"), (0, "A_ 2\n", ""))

    def test_charpoly(self):
        self.assertEqual(invoke("charpoly", "Bw")[1], "-2 -3 0 1\n")
        self.assertEqual(invoke("charpoly", "Bw", "--pretty")[1], "x^3 - 3x - 2\n")
        self.assertEqual(invoke("charpoly", "A_", "--kind", "laplacian")[1], "0 -2 1\n")

    def test_iso(self):
        self.assertEqual(invoke("iso", "Bg", "Bo")[:2], (0, "isomorphic\n"))
        self.assertEqual(invoke("iso", "Bg", "Bw")[:2], (1, "non-isomorphic\n"))

    def test_input_errors_exit_2(self):
        code, _, err = invoke("product", "B", "A_")
        self.assertEqual(code, 2)
        self.assertTrue(err.startswith("ERROR:"))
        self.assertEqual(invoke("factorize", "@")[0], 2)

    def test_usage_error(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                run.main(["construct"])
        self.assertEqual(ctx.exception.code, 2)

    def test_count_triplets(self):
        self.assertEqual(invoke("count-triplets", "--p", "3", "--q", "2"), (0, "7\n", ""))
        self.assertEqual(invoke("count-triplets", "--p", "2", "--q", "2")[1], "2\n")

    def test_verify_invalid_family(self):
        with tempfile.TemporaryDirectory() as tmp:
            fam = Path(tmp) / "pair.g6"
            fam.write_text("Bg\nBo\n", encoding="utf-8")
            code, out, _ = invoke("verify", str(fam))
        self.assertEqual(code, 1)
        cert = json.loads(out)
        self.assertFalse(cert["valid"])
        self.assertIn("members 0 and 1", cert["checks"]["non_isomorphic"]["witness"])


class ConfigErrorTest(unittest.TestCase):
    def setUp(self):
        self.saved = dict(vars(config))
        config.threads = None

    def tearDown(self):
        vars(config).update(self.saved)

    def write_config(self, tmp: str, data: dict) -> str:
        path = Path(tmp) / "bad.config.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    def test_garbage_thread_environment_exits_2(self):
        with mock.patch.dict(os.environ, {"COSPEC_THREADS": "abc"}):
            code, out, err = invoke("count-triplets", "--p", "2", "--q", "2")
        self.assertEqual((code, out), (2, ""))
        self.assertIn("COSPEC_THREADS", err)

    def test_wrong_value_types_exit_2(self):
        for data in ({"iso_size_cap": "x"}, {"threads": 2.5}, {"base_dir": 7}):
            with tempfile.TemporaryDirectory() as tmp:
                code, _, err = invoke("--config", self.write_config(tmp, data),
                                      "count-triplets", "--p", "2", "--q", "2")
            self.assertEqual(code, 2, data)
            self.assertTrue(err.startswith("ERROR: Invalid config:"))
            vars(config).update(self.saved)
            config.threads = None

    def test_malformed_json_exits_2(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "broken.json"
            path.write_text("{not json", encoding="utf-8")
            self.assertEqual(invoke("--config", str(path), "count-triplets", "--p", "2", "--q", "2")[0], 2)

    def test_threads_flag_must_be_positive(self):
        self.assertEqual(invoke("--threads", "0", "count-triplets", "--p", "2", "--q", "2")[0], 2)


class PipelineTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.TemporaryDirectory()
        root = Path(cls.tmp.name)
        cls.corpus = root / "corpus.g6"
        code, _, _ = invoke("gen-corpus", "--nmax", "7", "--out", str(cls.corpus))
        assert code == 0
        cls.seeds = root / "seeds"
        code, _, _ = invoke("find-seeds", str(cls.corpus), "--prime", "--out-dir", str(cls.seeds))
        assert code == 0
        by_order = {}
        for path in sorted(cls.seeds.glob("*.g6")):
            order = read_graph6_lines(path.read_text(encoding="utf-8"))[0][1].n
            by_order.setdefault(order, path)
        cls.seed6, cls.seed7 = by_order[6], by_order[7]
        code, _, _ = invoke("find-seeds", str(cls.corpus), "--out-dir", str(root / "all_seeds"))
        assert code == 0
        for path in sorted((root / "all_seeds").glob("*.g6")):
            members = read_graph6_lines(path.read_text(encoding="utf-8"))
            if members[0][1].n == 7 and len(members) >= 3:
                cls.seed7_three = path
                break
        cls.root = root

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    def test_corpus_file(self):
        self.assertEqual(len(self.corpus.read_text(encoding="utf-8").splitlines()), 996)

    def test_seed_files_verify(self):
        code, out, _ = invoke("verify", str(self.seed6), "--out", str(self.root / "seed6.cert.json"))
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("valid"))

    def test_check_conditions(self):
        code, out, _ = invoke("check-conditions", str(self.seed6), str(self.seed7))
        self.assertEqual(code, 0)
        self.assertIn("condition 2: holds - gcd(6, 7) = 1", out)
        code, out, _ = invoke("check-conditions", str(self.seed6), str(self.seed6))
        self.assertEqual(code, 1)
        self.assertIn("cross-spectra: EQUAL", out)

    def test_theorem1(self):
        out_dir = self.root / "t1"
        code, out, _ = invoke("construct", "theorem1", str(self.seed6), str(self.seed7),
                              "--out", str(out_dir), "--csv")
        self.assertEqual(code, 0)
        self.assertTrue(out.rstrip().endswith("valid"))
        cert = json.loads((out_dir / "theorem1_adjacency.cert.json").read_text(encoding="utf-8"))
        p = len(read_graph6_lines(self.seed6.read_text(encoding="utf-8")))
        q = len(read_graph6_lines(self.seed7.read_text(encoding="utf-8")))
        self.assertTrue(cert["valid"])
        self.assertEqual(len(cert["members"]), p * q)
        self.assertEqual(cert["order"], 42)
        self.assertTrue((out_dir / "theorem1_adjacency.csv").exists())
        members = read_graph6_lines((out_dir / "theorem1_adjacency.g6").read_text(encoding="utf-8"))
        self.assertEqual(len(members), p * q)

    def test_theorem2_explicit_and_auto_pair(self):
        p = len(read_graph6_lines(self.seed6.read_text(encoding="utf-8")))
        q = len(read_graph6_lines(self.seed7.read_text(encoding="utf-8")))
        out_dir = self.root / "t2"
        code, out, _ = invoke("construct", "theorem2", str(self.seed6), str(self.seed7),
                              "--i", "1", "--j", "0", "--out", str(out_dir))
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith(f"theorem2: {p + q - 1} members on 42 vertices (condition coprime-pair)"))
        self.assertTrue(out.rstrip().endswith("valid"))
        cert = json.loads((out_dir / "theorem2_adjacency.cert.json").read_text(encoding="utf-8"))
        self.assertIn({"i": 1, "j": 0}, cert["provenance"])
        code, out, _ = invoke("construct", "theorem2", str(self.seed6), str(self.seed7), "--out", str(out_dir),
                              "--name", "auto")
        self.assertEqual(code, 0)
        self.assertTrue((out_dir / "auto.g6").exists())

    def test_theorem2_rejects_half_a_pair(self):
        code, _, err = invoke("construct", "theorem2", str(self.seed6), str(self.seed7), "--i", "0",
                              "--out", str(self.root / "t2bad"))
        self.assertEqual(code, 2)
        self.assertTrue(err.startswith("ERROR:"))

    def test_theorem1_with_three_member_seed(self):
        out_dir = self.root / "t1x3"
        p = len(read_graph6_lines(self.seed6.read_text(encoding="utf-8")))
        q = len(read_graph6_lines(self.seed7_three.read_text(encoding="utf-8")))
        code, out, _ = invoke("construct", "theorem1", str(self.seed6), str(self.seed7_three), "--out", str(out_dir))
        self.assertEqual(code, 0)
        self.assertGreaterEqual(p * q, 6)
        cert = json.loads((out_dir / "theorem1_adjacency.cert.json").read_text(encoding="utf-8"))
        self.assertTrue(cert["valid"])
        self.assertEqual(len(cert["members"]), p * q)

    def test_count_triplets_three_by_two_universe(self):
        code, out, _ = invoke("count-triplets", "--p", "3", "--q", "2",
                              "--universe", str(self.seed7_three), str(self.seed6))
        self.assertEqual(code, 0)
        closed, brute = out.splitlines()
        self.assertEqual(closed, "7")
        self.assertGreaterEqual(int(brute.split(": ")[1]), 7)

    def test_fallback_and_refusal(self):
        code, _, _ = invoke("construct", "fallback", str(self.seed6), str(self.seed7),
                            "--out", str(self.root / "fb"))
        self.assertEqual(code, 0)
        code, _, err = invoke("construct", "theorem1", str(self.seed6), str(self.seed6),
                              "--out", str(self.root / "refused"))
        self.assertEqual(code, 1)
        self.assertIn("not distinct", err)

    def test_theorem3(self):
        code, out, _ = invoke("construct", "theorem3", str(self.seed6), "--k", "1", "--out", str(self.root / "t3"))
        self.assertEqual(code, 0)
        code, _, _ = invoke("construct", "theorem3", str(self.seed6), "--out", str(self.root / "t3"))
        self.assertEqual(code, 2)

    def test_count_triplets_universe(self):
        code, out, _ = invoke("count-triplets", "--p", "2", "--q", "2",
                              "--universe", str(self.seed6), str(self.seed7))
        self.assertEqual(code, 0)
        closed, brute = out.splitlines()
        self.assertEqual(closed, "2")
        self.assertTrue(brute.startswith("brute-force: "))

    def test_deterministic_output(self):
        first = invoke("find-seeds", str(self.corpus))
        second = invoke("find-seeds", str(self.corpus))
        self.assertEqual(first, second)
        self.assertEqual(first[0], 0)
        self.assertTrue(first[1].rstrip().splitlines()[-1].startswith("# found"))


if __name__ == "__main__":
    unittest.main()
