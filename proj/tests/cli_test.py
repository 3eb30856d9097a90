"""Integration tests for the gmra command-line tool.

Usage: cli_test.py <path-to-gmra> <problems-dir>
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest

GMRA = ""
PROBLEMS = ""


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("GMRA_TOL", None)
    if env:
        full_env.update(env)
    proc = subprocess.run([GMRA, *args], capture_output=True, text=True, env=full_env, timeout=60)
    return proc.returncode, proc.stdout, proc.stderr


def run_json(*args, env=None):
    code, out, err = run(*args, "--json", env=env)
    return code, json.loads(out)


def problem(name):
    return os.path.join(PROBLEMS, name + ".json")


class Commands(unittest.TestCase):
    def test_mtilde_journe(self):
        code, doc = run_json("mtilde", problem("journe"))
        self.assertEqual(code, 0)
        self.assertEqual(doc, {"mtilde": [{"interval": ["0", "1"], "value": 1}]})

    def test_sigma_centered(self):
        code, doc = run_json("sigma", problem("journe"), "--convention", "centered")
        self.assertEqual(code, 0)
        self.assertEqual(doc["sigma"][1], [["-1/7", "1/7"]])
        self.assertEqual(doc["sigma"][0], [["-1/2", "-3/7"], ["-2/7", "2/7"], ["3/7", "1/2"]])

    def test_validate_and_check_filter(self):
        for name in ["haar", "shannon", "journe", "journe_rank2", "cantor3", "haar3_2wavelet"]:
            code, doc = run_json("validate", problem(name))
            self.assertEqual(code, 0, name)
            self.assertTrue(doc["valid"], name)
            code, doc = run_json("check-filter", problem(name), "--trials", "3")
            self.assertEqual(code, 0, name)
            self.assertIn("SHSH*+SGSG*=I", doc["cuntz"]["residuals"])

    def test_unnormalized_fails_verification(self):
        code, doc = run_json("check-filter", problem("haar_unnormalized"))
        self.assertEqual(code, 2)
        self.assertGreaterEqual(doc["H"]["max_residual"], 1.0)

    def test_equiv_exit_codes(self):
        code, doc = run_json("equiv", problem("haar"), problem("haar_negated"))
        self.assertEqual(code, 2)
        self.assertEqual(doc["obstruction"]["kind"], "ConstantRatio")
        self.assertAlmostEqual(doc["obstruction"]["ratio"]["re"], -1.0, places=12)
        code, doc = run_json("equiv", problem("haar"), problem("haar_conjugated"))
        self.assertEqual(code, 0)
        self.assertLessEqual(doc["witness_residual"], 1e-9)
        code, doc = run_json("equiv", "catalog:journe", "catalog:haar")
        self.assertEqual(code, 2)
        self.assertEqual(doc["obstruction"]["kind"], "MultiplicityMismatch")

    def test_purity(self):
        code, doc = run_json("purity", problem("journe"))
        self.assertEqual(code, 0)
        self.assertEqual(doc["verdict"], "Pure")
        code, doc = run_json("purity", problem("constant_eigenfilter"))
        self.assertEqual(code, 0)
        self.assertEqual(doc["verdict"], "NotPure")
        self.assertEqual(doc["lambda"], {"re": 1.0, "im": 0.0})

    def test_purity_unknown_exits_three(self):
        doc = {"version": 1, "endomorphism": {"N": 2}, "multiplicity": 1,
               "filters": {"H": [[{"terms": [{"freq": "1", "re": 1}]}]]}}
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
            json.dump(doc, f)
        try:
            code, out = run_json("purity", f.name)
            self.assertEqual(code, 3)
            self.assertEqual(out["verdict"], "Unknown")
        finally:
            os.unlink(f.name)

    def test_construct_rank2(self):
        code, doc = run_json("construct", problem("journe_rank2"), "--down", "1", "--convention", "centered")
        self.assertEqual(code, 0)
        v = doc["negative"][0]["V"]
        self.assertEqual(v[0], [["-2/7", "-1/4"], ["-1/7", "1/7"], ["1/4", "2/7"]])
        self.assertEqual(v[1], [["-1/14", "1/14"]])

    def test_construct_haar_ledger(self):
        code, doc = run_json("construct", problem("haar"), "--depth", "3")
        self.assertEqual(code, 0)
        self.assertEqual([w["weight"] for w in doc["W"]], [1, 2, 4, 8])
        self.assertEqual(doc["V0"], [[["0", "1"]]])

    def test_construct_refuses_eigenfilter(self):
        code, out, err = run("construct", problem("constant_eigenfilter"))
        self.assertEqual(code, 2)
        self.assertIn("NotPureIsometry", err)

    def test_cascade(self):
        code, doc = run_json("cascade", problem("cantor3"), "--iters", "80", "--samples", "257")
        self.assertEqual(code, 0)
        self.assertEqual(doc["verdict"], "DegeneratesToZero")
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "haar.csv")
            code, _, _ = run("cascade", problem("haar"), "--samples", "17", "--csv", path)
            self.assertEqual(code, 0)
            with open(path) as f:
                lines = f.read().splitlines()
            self.assertEqual(lines[0], "omega,re,im")
            self.assertEqual(len(lines), 18)

    def test_cascade_rejects_matrix_filter(self):
        code, doc = run_json("cascade", problem("journe"))
        self.assertEqual(code, 4)
        self.assertEqual(doc["error"]["code"], "NotApplicable")

    def test_complement(self):
        code, doc = run_json("complement", problem("journe"), "--grid", "16")
        self.assertEqual(code, 0)
        self.assertTrue(doc["report"]["passed"])
        self.assertEqual(doc["G"]["grid"], 32)

    def test_catalog(self):
        code, doc = run_json("catalog", "list")
        self.assertEqual(code, 0)
        self.assertIn("journe", [e["name"] for e in doc["entries"]])
        code, doc = run_json("catalog", "show", "haar_negated", "--check")
        self.assertEqual(code, 0)
        self.assertTrue(doc["check"]["passed"])
        self.assertTrue(any(e["provenance"] == "published" for e in doc["expectations"]))


class Robustness(unittest.TestCase):
    def test_input_errors_exit_four(self):
        self.assertEqual(run("mtilde", "/nonexistent.json")[0], 4)
        self.assertEqual(run("catalog", "show", "nope")[0], 4)
        self.assertEqual(run("frobnicate")[0], 4)
        self.assertEqual(run("cascade", problem("haar"), "--samples", "x")[0], 4)
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
            f.write('{"version": 1, "endomorphism": {"N": 2}, "multiplicity": [{"interval": ["0", "q"], "value": 1}]}')
        try:
            code, doc = run_json("mtilde", f.name)
            self.assertEqual(code, 4)
            self.assertIn("multiplicity[0].interval[1]", doc["error"]["message"])
        finally:
            os.unlink(f.name)

    def test_output_is_byte_identical(self):
        for args in [("construct", problem("journe"), "--down", "2"), ("check-filter", problem("cantor3")),
                     ("equiv", problem("haar"), problem("haar_conjugated")), ("complement", problem("haar"))]:
            first = run(*args, "--json", "--seed", "5")
            second = run(*args, "--json", "--seed", "5")
            self.assertEqual(first, second, args)

    def test_floats_use_seventeen_digits(self):
        _, out, _ = run("catalog", "show", "haar", "--json")
        self.assertIn("0.70710678118654746", out)

    def test_tolerance_environment(self):
        code, doc = run_json("check-filter", problem("haar_unnormalized"), env={"GMRA_TOL": "5"})
        self.assertEqual(code, 0)
        code, doc = run_json("check-filter", problem("haar_unnormalized"), "--tol", "1e-9", env={"GMRA_TOL": "5"})
        self.assertEqual(code, 2)
        self.assertEqual(run("mtilde", problem("haar"), env={"GMRA_TOL": "abc"})[0], 0)
        self.assertEqual(run("validate", problem("haar"), env={"GMRA_TOL": "abc"})[0], 4)


if __name__ == "__main__":
    GMRA = os.path.abspath(sys.argv.pop(1))
    PROBLEMS = os.path.abspath(sys.argv.pop(1))
    unittest.main(verbosity=2)
