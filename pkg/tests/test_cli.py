"""End-to-end command behavior, exit codes and frozen report text."""
from __future__ import annotations

import json

import pytest

from lcplie.cli import main

from conftest import CORPUS_DIR, corpus_text

SOL3_ANALYSIS = """\
dim: 3
abelian: no
unimodular: yes
solvable: yes
nilpotent: no
semisimple: no
derived algebra: span{u, b} (dim 2)
radical: span{u, a, b} (dim 3)
center: 0 (dim 0)
trace form: 0
killing signature: (1, 0, 2)
"""

LEMMA51_DIAG21 = """\
hypotheses: integral: yes; E1 invariant: yes; E2 invariant: yes; (A - I)|E1 invertible: yes
det(A - I) = 0
witness x = (0, 1)
hyperplane W = 0 (dim 0)
density refuted: projections of lattice points onto E2 lie in W + Z * p2(x/|x|^2)
"""


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


def corpus(name: str) -> str:
    return str(CORPUS_DIR / name)


class TestValidate:
    def test_sol3(self, run):
        code, out, err = run("validate", corpus("sol3.json"))
        assert code == 0
        assert out == "jacobi: ok\nmetric: ok\ntheta: ok (closed)\nvalid: yes\n"
        assert err == ""

    def test_triple_document(self, run):
        code, out, _ = run("validate", corpus("sol3_triple.json"))
        assert code == 0
        assert out == "triple: ok\nvalid: yes\n"

    def test_jacobi_failure_names_the_triple(self, run, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(
            json.dumps(
                {
                    "dim": 3,
                    "basis": ["e1", "e2", "e3"],
                    "brackets": [
                        {"i": 0, "j": 1, "c": {"0": "1"}},
                        {"i": 0, "j": 2, "c": {"1": "1"}},
                    ],
                }
            )
        )
        code, out, _ = run("validate", str(bad))
        assert code == 2
        assert "jacobi: FAIL at basis triples (e1, e2, e3)" in out
        assert out.endswith("valid: no\n")

    def test_missing_file_is_an_io_error(self, run, tmp_path):
        code, _, err = run("validate", str(tmp_path / "absent.json"))
        assert code == 1
        assert err.startswith("error: ")

    def test_truncated_file_is_a_parse_error(self, run, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text('{"dim": 3,')
        code, _, err = run("validate", str(broken))
        assert code == 1
        assert "invalid JSON" in err

    def test_schema_violation_is_a_parse_error(self, run, tmp_path):
        doc = tmp_path / "doc.json"
        doc.write_text('{"dim": 1, "basis": ["x"], "brackets": [], "theta": [0.5]}')
        code, _, err = run("validate", str(doc))
        assert code == 1


class TestAnalyze:
    def test_sol3_report(self, run):
        code, out, _ = run("analyze", corpus("sol3.json"))
        assert code == 0
        assert out == SOL3_ANALYSIS

    def test_sl2_report(self, run):
        code, out, _ = run("analyze", corpus("sl2.json"))
        assert code == 0
        assert "radical: 0 (dim 0)\n" in out
        assert "semisimple: yes\n" in out
        assert "killing signature: (2, 1, 0)\n" in out

    def test_abelian_report(self, run):
        code, out, _ = run("analyze", corpus("abelian_r3.json"))
        assert code == 0
        assert "abelian: yes\n" in out

    def test_document_without_algebra_fields(self, run):
        code, _, err = run("analyze", corpus("sol3_triple.json"))
        assert code == 2
        assert "no algebra fields" in err


class TestLcpDetect:
    def test_sol3(self, run):
        code, out, _ = run("lcp", "detect", corpus("sol3.json"))
        assert code == 0
        assert out == "valid: yes\nadapted: yes\nmaximal: yes\nflat factor: span{u} (dim 1)\n"

    def test_invalid_factor_lists_violations(self, run, tmp_path):
        data = json.loads(corpus_text("sol3.json"))
        data["flat_factor"] = [["0", "0", "1"]]
        doc = tmp_path / "doc.json"
        doc.write_text(json.dumps(data))
        code, out, _ = run("lcp", "detect", str(doc))
        assert code == 2
        assert "valid: no" in out
        assert "violation: flat factor is not parallel for the conformal connection" in out

    def test_missing_metric_is_semantic(self, run, tmp_path):
        data = json.loads(corpus_text("sol3.json"))
        del data["metric"]
        doc = tmp_path / "doc.json"
        doc.write_text(json.dumps(data))
        code, _, err = run("lcp", "detect", str(doc))
        assert code == 2
        assert "no metric" in err


class TestLcpMaxFlat:
    def test_sol3(self, run):
        code, out, _ = run("lcp", "max-flat", corpus("sol3.json"))
        assert code == 0
        assert out == "flat factor = span{u} (dim 1)\nclassification: lcp\nadapted: yes\n"

    def test_conformally_flat_plane(self, run, tmp_path):
        doc = tmp_path / "plane.json"
        doc.write_text(
            json.dumps(
                {
                    "dim": 2,
                    "basis": ["x", "y"],
                    "brackets": [],
                    "metric": "identity",
                    "theta": ["1", "0"],
                }
            )
        )
        code, out, _ = run("lcp", "max-flat", str(doc))
        assert code == 0
        assert "classification: conformally-flat" in out

    def test_no_factor(self, run, tmp_path):
        doc = tmp_path / "heis4.json"
        doc.write_text(
            json.dumps(
                {
                    "dim": 4,
                    "basis": ["x", "y", "z", "w"],
                    "brackets": [{"i": 0, "j": 1, "c": {"2": "1"}}],
                    "metric": "identity",
                    "theta": ["1", "0", "0", "0"],
                }
            )
        )
        code, out, _ = run("lcp", "max-flat", str(doc))
        assert code == 0
        assert "flat factor = 0 (dim 0)" in out
        assert "classification: none" in out

    def test_non_unimodular_input_is_rejected(self, run, tmp_path):
        doc = tmp_path / "aff.json"
        doc.write_text(
            json.dumps(
                {
                    "dim": 2,
                    "basis": ["a", "b"],
                    "brackets": [{"i": 0, "j": 1, "c": {"1": "1"}}],
                    "metric": "identity",
                    "theta": ["1", "0"],
                }
            )
        )
        code, _, err = run("lcp", "max-flat", str(doc))
        assert code == 2
        assert "unimodular" in err


class TestLcpFromTriple:
    def test_sol3_output_is_byte_identical_to_the_corpus_file(self, run):
        code, out, _ = run("lcp", "from-triple", corpus("sol3_triple.json"))
        assert code == 0
        assert out == corpus_text("sol3.json")

    def test_rot4_output(self, run):
        code, out, _ = run("lcp", "from-triple", corpus("rot4_triple.json"))
        assert code == 0
        assert out == corpus_text("rot4.json")

    def test_document_without_triple(self, run):
        code, _, err = run("lcp", "from-triple", corpus("sol3.json"))
        assert code == 2
        assert "no triple block" in err

    def test_invalid_triple_is_semantic(self, run, tmp_path):
        data = json.loads(corpus_text("rot4_triple.json"))
        data["triple"]["beta"][0] = [["0", "1"], ["0", "0"]]
        doc = tmp_path / "doc.json"
        doc.write_text(json.dumps(data))
        code, _, err = run("lcp", "from-triple", str(doc))
        assert code == 2
        assert "skew" in err


class TestLcpCharBound:
    def test_sol3_bound(self, run):
        code, out, _ = run("lcp", "char-bound", corpus("sol3.json"))
        assert code == 0
        assert out == "bound = span{b} (dim 1)\n"

    def test_candidate_breakdown(self, run):
        code, out, _ = run(
            "lcp", "char-bound", corpus("sol3.json"), "--candidate", '[["0", "1", "0"]]'
        )
        assert code == 0
        assert out == (
            "bound = span{b} (dim 1)\n"
            "candidate: span{a} (dim 1)\n"
            "theta vanishes: no\n"
            "action trivial: no\n"
            "abelian: yes\n"
            "in radical: yes\n"
            "in commutator: no\n"
        )

    def test_candidate_outside_complement(self, run):
        code, _, err = run(
            "lcp", "char-bound", corpus("sol3.json"), "--candidate", '[["1", "0", "0"]]'
        )
        assert code == 2

    def test_malformed_candidate(self, run):
        code, _, err = run("lcp", "char-bound", corpus("sol3.json"), "--candidate", "[[0.5]]")
        assert code == 2
        assert "candidate" in err


class TestLattice:
    def test_snf(self, run):
        code, out, _ = run("lattice", "snf", corpus("lat_upper23.json"))
        assert code == 0
        assert out.startswith("divisors: (1, 6)\n")

    def test_index(self, run):
        code, out, _ = run("lattice", "index", corpus("lat_upper23.json"))
        assert code == 0
        assert out == "index: 6\n"

    def test_infinite_index(self, run, tmp_path):
        doc = tmp_path / "singular.json"
        doc.write_text('{"matrix": [[2, 4], [1, 2]]}')
        code, out, _ = run("lattice", "index", str(doc))
        assert code == 0
        assert out == "index: infinite\n"

    def test_lemma51_witness_case(self, run):
        code, out, _ = run("lattice", "lemma51", corpus("lat_diag21_split.json"))
        assert code == 0
        assert out == LEMMA51_DIAG21

    def test_lemma51_invertible_case(self, run):
        code, out, _ = run("lattice", "lemma51", corpus("lat_fib_split.json"))
        assert code == 0
        assert "conclusion holds: finite index 1\n" in out

    def test_lemma51_without_split_block(self, run):
        code, _, err = run("lattice", "lemma51", corpus("lat_upper23.json"))
        assert code == 2
        assert "split" in err

    def test_non_square_matrix_is_a_parse_error(self, run, tmp_path):
        doc = tmp_path / "rect.json"
        doc.write_text('{"matrix": [[1, 0, 0], [0, 1, 0]]}')
        code, _, err = run("lattice", "snf", str(doc))
        assert code == 1


class TestJsonOutput:
    JSON_COMMANDS = (
        ("lcp", "detect", "sol3.json"),
        ("lcp", "max-flat", "sol3.json"),
        ("lcp", "char-bound", "sol3.json"),
        ("lattice", "snf", "lat_upper23.json"),
        ("lattice", "index", "lat_diag23.json"),
        ("lattice", "lemma51", "lat_diag21_split.json"),
        ("lattice", "lemma51", "lat_fib_split.json"),
    )

    def test_json_is_deterministic_and_parseable(self, run):
        for *head, name in self.JSON_COMMANDS:
            first = run(*head, corpus(name), "--json")
            second = run(*head, corpus(name), "--json")
            assert first == second
            assert first[0] == 0
            payload = json.loads(first[1])
            assert isinstance(payload, dict)

    def test_detect_payload_shape(self, run):
        code, out, _ = run("lcp", "detect", corpus("sol3.json"), "--json")
        assert code == 0
        assert json.loads(out) == {
            "valid": True,
            "violations": [],
            "adapted": True,
            "maximal": True,
            "flat_factor": [["1", "0", "0"]],
        }

    def test_lemma51_payload_shape(self, run):
        code, out, _ = run("lattice", "lemma51", corpus("lat_diag21_split.json"), "--json")
        assert code == 0
        assert json.loads(out) == {
            "hypotheses": {
                "integral": True,
                "e1_invariant": True,
                "e2_invariant": True,
                "restriction_invertible": True,
            },
            "det_a_minus_i": 0,
            "index": None,
            "witness": {"x": [0, 1], "hyperplane": []},
        }
