import json

from qsu2.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_nf(capsys):
    code, out, _ = run(capsys, "eval", "d a", "--algebra", "G",
                       "--action", "nf")
    assert code == 0
    assert out.strip() == "1 + q^-1 b c"


def test_eval_star(capsys):
    code, out, _ = run(capsys, "eval", "b", "--action", "star")
    assert code == 0
    assert out.strip() == "-q c"


def test_eval_haar_reduced(capsys):
    code, out, _ = run(capsys, "eval", "b c", "--action", "haar")
    assert code == 0
    assert out.strip() == "-q/(q^2 + 1)"


def test_haar_with_specialization(capsys):
    code, out, _ = run(capsys, "haar", "b c", "--q", "1/2")
    assert code == 0
    assert "at q = 1/2: -2/5" in out


def test_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "eval", "((b", "--action", "nf")
    assert code == 2
    assert "parse error" in err


def test_domain_error_exit_3(capsys):
    code, _, err = run(capsys, "eval", "b^-1", "--algebra", "G_b",
                       "--action", "star")
    assert code == 3
    assert "domain error" in err


def test_verify_exit_0(capsys):
    code, out, _ = run(capsys, "verify", "haar", "--format", "text")
    assert code == 0
    assert "0 failed" in out


def test_verify_negative_control_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "hopf_negative_control",
                       "--format", "json")
    assert code == 1
    rep = json.loads(out)
    failed = [c for c in rep["checks"] if c["status"] == "fail"]
    assert failed and any("witness" in c for c in failed)


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "resolution", "--n", "1",
                       "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema_version"] == 1
    assert all("paper_anchor" in c for c in rep["checks"])
    names = [c["name"] for c in rep["checks"]]
    assert names == sorted(names)


def test_verify_deterministic_given_seed(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "verify", "gram", "--n", "0..2",
                           "--seed", "7", "--format", "json")
        assert code == 0
        rep = json.loads(out)
        rep.pop("runtime_ms")  # wall-clock field excluded from determinism
        outs.append(json.dumps(rep, sort_keys=True))
    assert outs[0] == outs[1]


def test_resolution_command(capsys):
    code, out, _ = run(capsys, "resolution", "--n", "2", "--q", "1/2")
    assert code == 0
    rep = json.loads(out)
    assert rep["alpha_exact"] == "q^4/(q^4 + q^2 + 1)"
    assert rep["alpha_at_q"] == "1/21"
    assert rep["matrix_is_scalar"] and rep["chart_agreement"]
    assert all(c["matches_closed_form"] for c in rep["lemma_checks"])


def test_resolution_tsv(capsys):
    code, out, _ = run(capsys, "resolution", "--n", "1", "--format", "tsv")
    assert code == 0
    assert out.startswith("key\tvalue")


def test_unknown_suite_exit_2(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2


def test_tsv_format(capsys):
    code, out, _ = run(capsys, "verify", "haar", "--format", "tsv")
    assert code == 0
    assert out.splitlines()[0] == "name\tstatus\tpaper_anchor\twitness"
