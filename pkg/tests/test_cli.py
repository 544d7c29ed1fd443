import json

import pytest

from piexp import cli, io as pio, suites
from piexp.algebra import validate
from piexp.constructions import exchange, full_matrix, grassmann_truncated, tensor_product, ut


@pytest.fixture
def docs(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return {
        "ut2": write("ut2.json", {"family": {"ut": 2}}),
        "m2ut2": write("m2ut2.json", {"family": {"matrix": [{"ut": 2}, 2]}}),
        "ut2g": write("ut2g.json", {"family": {"ut": 2, "degrees": [[0], [1], [0]]}}),
        "m2g": write("m2g.json", {"family": {"full_matrix": 2, "elementary": [0, 1]}}),
        "field": write("f.json", {"family": {"field": True}}),
        "ff": write("ff.json", {"name": "F+F", "dim": 2, "table": [[0, 0, 0, "1"], [1, 1, 1, 1]]}),
        "bad": write("bad.json", {"dim": 2, "table": [[0, 0, 1, "1"], [1, 0, 1, "1"], [0, 1, 0, "1"]]}),
        "qz3": write("qz3.json", {"dim": 3, "table": [[a, b, (a + b) % 3, 1] for a in range(3) for b in range(3)]}),
        "both": write("both.json", {"dim": 1, "table": [], "family": {"field": True}}),
        "range": write("range.json", {"dim": 2, "table": [[0, 0, 5, "1"]]}),
        "rat": write("rat.json", {"dim": 1, "table": [[0, 0, 0, "1/0"]]}),
        "poly": write("p.txt", "x1 x2 - x2 x1"),
    }


def run(capsys, *argv):
    code = cli.main(["--format", "json", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_document_roundtrip_is_byte_identical(tmp_path):
    for S in (ut(3), tensor_product(ut(2), ut(2)), full_matrix(2, elementary=(0, 1)),
              full_matrix(2, involution="symplectic"), grassmann_truncated(2), exchange(ut(2))):
        doc = pio.to_document(S)
        text = pio.dumps(doc)
        again = pio.from_document(json.loads(text))
        assert pio.dumps(pio.to_document(again)) == text
        assert again.algebra.table == S.algebra.table and again.structure == S.structure
        assert validate(again.algebra) is None


def test_canonicalize_reduces_and_sorts():
    doc = {"dim": 2, "table": [[1, 1, 1, "2/2"], [0, 0, 0, 1]], "unit": ["2/2", "4/4"]}
    canon = pio.canonicalize(doc)
    assert canon["table"] == [[0, 0, 0, "1"], [1, 1, 1, "1"]]
    assert canon["unit"] == ["1", "1"]
    assert pio.canonicalize(canon) == canon
    fam = pio.canonicalize({"family": {"ut": 2}})
    assert fam == {"dim": 3, "family": {"ut": 2}, "name": "UT2"}
    assert pio.canonicalize(fam) == fam


def test_save_and_load(tmp_path):
    p = tmp_path / "a.json"
    pio.save(ut(2), p)
    S = pio.load(p)
    assert S.dim == 3 and S.algebra.table == ut(2).algebra.table


@pytest.mark.parametrize("key", ["bad", "both", "range", "rat"])
def test_input_errors_exit_2(capsys, docs, key):
    code, report, _ = run(capsys, "validate", docs[key])
    assert code == 2 and report["status"] == "input error"


def test_missing_file_exit_2(capsys, tmp_path):
    code, report, _ = run(capsys, "validate", str(tmp_path / "nope.json"))
    assert code == 2


def test_bad_table_reports_triple(capsys, docs):
    _, report, _ = run(capsys, "validate", docs["bad"])
    assert "associativity violation at (" in report["error"]


def test_explicit_field_sum_loads(capsys, docs):
    code, report, _ = run(capsys, "info", docs["ff"])
    assert code == 0 and report["results"]["component_dims"] == [1, 1]


def test_nonsplit_exit_3(capsys, docs):
    code, report, _ = run(capsys, "exponent", docs["qz3"])
    assert code == 3 and report["error"].startswith("NonSplit")


def test_exponent_and_info(capsys, docs):
    code, report, _ = run(capsys, "exponent", docs["ut2"])
    assert code == 0
    assert report["results"]["value"] == 2
    assert report["results"]["witness_product"] == "(e11) · (e12) · (e22)"
    code, report, _ = run(capsys, "info", docs["m2ut2"])
    assert report["results"]["component_dims"] == [4, 4]


def test_codim_commands(capsys, docs):
    _, report, _ = run(capsys, "codim", docs["ut2"], "-m", "4")
    assert report["results"]["codimension"] == 18 and report["results"]["strategy"] == "exact"
    _, report, _ = run(capsys, "codim", docs["ut2"], "-m", "3", "--strategy", "sampled", "--seed", "4")
    assert report["results"]["codimension"] == 6 and report["seeds"]["seed"] == 4


def test_identity_and_contain(capsys, docs):
    code, report, _ = run(capsys, "identity", docs["field"], "--poly", docs["poly"])
    assert code == 0 and report["results"]["identity"] is True
    code, report, _ = run(capsys, "identity", docs["ut2"], "--poly", docs["poly"], "--expect", "yes")
    assert code == 1 and report["results"]["identity"] is False
    code, report, _ = run(capsys, "contain", "-m", "4", docs["ut2"], docs["m2ut2"])
    assert code == 0 and report["results"]["holds"] is False
    assert report["results"]["counterexample"] == "x1 x2 x3 x4 - x1 x2 x4 x3 - x2 x1 x3 x4 + x2 x1 x4 x3"


def test_verify_commands(capsys, docs):
    code, report, _ = run(capsys, "verify", "main-theorem", "--base", docs["ut2"], "--nmax", "3")
    assert code == 0
    assert [(r["n"], r["lhs"], r["rhs"], r["equal"]) for r in report["results"]["rows"]] == \
        [(1, 2, 2, True), (2, 8, 8, True), (3, 18, 18, True)]
    code, report, _ = run(capsys, "verify", "tensor-theorem", "--a", docs["ut2g"], "--s", docs["m2g"])
    assert code == 0 and report["results"]["lhs"] == 8
    code, report, _ = run(capsys, "verify", "tensor-theorem", "--a", docs["ut2"], "--s", docs["ut2"])
    assert code == 2
    code, report, _ = run(capsys, "verify", "regev", "-m", "3", docs["ut2"], docs["ut2"])
    assert code == 0 and report["results"]["rows"][-1]["c_m(A)c_m(B)"] == 36


def test_paper_examples_pass(capsys):
    code, report, _ = run(capsys, "verify", "paper-examples")
    assert code == 0
    names = {c["name"]: c for c in report["results"]["checks"]}
    assert names["exp(UT2 (x) UT2)"]["actual"] == 3
    assert names["witness sequence"]["actual"] == [1, 2, 4]
    assert names["nilpotency index of J(UT2 (x) UT2)"]["actual"] == 3
    assert names["semisimple component dims"]["actual"] == [1, 1, 1, 1]


@pytest.mark.parametrize("key,value", [("exp(UT2)", 3), ("exp(UT2 (x) UT2)", 4), ("witness sequence", [1, 3, 4]),
                                       ("nilpotency index of J(UT2 (x) UT2)", 2), ("c_m(UT2), m = 1..4", [1, 2, 6, 17])])
def test_mutated_expectation_never_exits_0(capsys, monkeypatch, key, value):
    mutated = dict(suites.EXPECTED)
    mutated[key] = value
    monkeypatch.setattr(suites, "EXPECTED", mutated)
    code, report, _ = run(capsys, "verify", "paper-examples")
    assert code == 1 and report["status"] == "check failed"


def test_threads_do_not_change_reports(capsys, docs):
    for argv in (["verify", "main-theorem", "--base", docs["ut2"], "--nmax", "3"],
                 ["codim", docs["m2ut2"], "-m", "3"], ["verify", "paper-examples"]):
        _, _, one = run(capsys, "--threads", "1", *argv)
        _, _, many = run(capsys, *argv)
        assert one == many


def test_text_and_json_carry_the_same_numbers(capsys, docs):
    cli.main(["--format", "text", "codim", docs["ut2"], "-m", "4"])
    text = capsys.readouterr().out
    assert '"codimension": 18' in text
    code = cli.main(["codim", docs["ut2"], "-m", "4", "--format", "json"])
    assert code == 0 and json.loads(capsys.readouterr().out)["results"]["codimension"] == 18


def test_timings_only_on_request(capsys, docs):
    _, report, _ = run(capsys, "validate", docs["ut2"])
    assert "timings" not in report
    _, report, _ = run(capsys, "--timings", "validate", docs["ut2"])
    assert report["timings"]["total_seconds"] >= 0
