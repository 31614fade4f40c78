import json

import pytest

from kaltools.cli import main
from kaltools.verify import verify_paper


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def dfa_files(tmp_path, capsys):
    paths = {}
    for name, argv in {
        "k": ["gen", "prop2k", "--k", "2"],
        "l": ["gen", "prop2l", "--ell", "3"],
        "b2": ["gen", "modcount", "--letter", "b", "--mod", "2", "--alphabet", "abc"],
        "c2": ["gen", "modcount", "--letter", "c", "--mod", "2", "--alphabet", "abc"],
        "star": ["gen", "star", "--letters", "ab", "--alphabet", "abcd"],
        "content": ["gen", "content", "--letters", "ab", "--alphabet", "abc"],
    }.items():
        code, out, _ = run(capsys, *argv)
        assert code == 0
        paths[name] = tmp_path / f"{name}.dfa"
        paths[name].write_text(out)
    return paths


def test_gen_emits_text_format(dfa_files):
    text = dfa_files["k"].read_text().splitlines()
    assert text[:4] == ["alphabet a b c", "states 2", "initial 0", "finals 1"]
    assert len([line for line in text if line.startswith("trans")]) == 6


def test_kal_and_minimize(capsys, dfa_files):
    code, out, _ = run(capsys, "kal", str(dfa_files["k"]), str(dfa_files["l"]), "--marker", "a", "--minimize")
    assert code == 0
    assert "states 16" in out
    code, out, _ = run(capsys, "minimize", str(dfa_files["content"]))
    assert code == 0 and "states 5" in out


def test_monoid_green_schutz(capsys, dfa_files, tmp_path):
    code, out, _ = run(capsys, "monoid", str(dfa_files["content"]))
    data = json.loads(out)
    assert data["size"] == 5 and set(data["letters"]) == {"a", "b", "c"}
    mon = tmp_path / "content.json"
    mon.write_text(out)
    code, out, _ = run(capsys, "green", str(mon))
    assert json.loads(out) == {"jTrivial": True, "isGroup": False, "rho": 4, "lambda": 4}

    code, out, _ = run(capsys, "monoid", str(dfa_files["star"]))
    two = tmp_path / "two.json"
    two.write_text(out)
    code, out, _ = run(capsys, "schutz", str(two), str(two))
    assert json.loads(out) == {"m": 2, "n": 2, "size": 64}
    code, out, _ = run(capsys, "schutz", str(two), str(two), "--enumerate")
    assert json.loads(out)["size"] == 64
    code, _, err = run(capsys, "schutz", str(two), str(two), "--enumerate", "--cap", "10")
    assert code == 3 and "size limit" in err


def test_mu_image_output(capsys, dfa_files):
    code, out, _ = run(capsys, "mu-image", str(dfa_files["b2"]), str(dfa_files["c2"]), "--marker", "a")
    data = json.loads(out)
    assert code == 0 and data["size"] == 64
    assert len(data["elements"]) == 64 and len(data["accept"]) > 0
    assert data["elements"][0] == {"p11": 0, "p22": 0, "p12": []}
    # the marker letter contributes the pair (1, 1), i.e. (0, 0) in index terms
    assert data["elements"][data["letters"]["a"]]["p12"] == [[0, 0]]


def test_xi(capsys):
    code, out, _ = run(capsys, "xi", "--variety", "sl", "--alphabet", "ab")
    data = json.loads(out)
    assert data["xi_size"] == 97 and data["bound"] == 4 * 2 ** 32
    assert data["mu_image_sizes"] == {"a": 30, "b": 30}
    code, out, _ = run(capsys, "xi", "--variety", "trivial", "--alphabet", "a")
    assert json.loads(out)["xi_size"] == 2


def test_input_errors(capsys, tmp_path, dfa_files):
    bad = tmp_path / "bad.dfa"
    bad.write_text("alphabet a\nstates 1\ninitial 0\nfinals\n")
    assert run(capsys, "minimize", str(bad))[0] == 2
    assert run(capsys, "minimize", str(tmp_path / "missing.dfa"))[0] == 2
    assert run(capsys, "kal", str(dfa_files["k"]), str(dfa_files["l"]), "--marker", "z")[0] == 2
    assert run(capsys, "gen", "prop2k", "--k", "1")[0] == 2
    broken = tmp_path / "m.json"
    broken.write_text("{not json")
    assert run(capsys, "green", str(broken))[0] == 2


def test_verify_json_and_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--json")
    data = json.loads(out)
    names = [c["name"] for c in data["checks"]]
    assert len(names) == len(set(names)) > 30
    assert data["overall"] == all(c["pass"] for c in data["checks"])
    assert code == (0 if data["overall"] else 1)


def test_verify_perturbed_expected_fails(capsys, tmp_path):
    override = tmp_path / "expected.json"
    override.write_text(json.dumps({"ex1_mu_image": 23}))
    code, out, _ = run(capsys, "verify", "--json", "--expected", str(override))
    data = json.loads(out)
    assert code == 1 and data["overall"] is False
    entry = next(c for c in data["checks"] if c["name"] == "ex1_mu_image")
    assert entry == {"name": "ex1_mu_image", "expected": 23, "computed": 22,
                     "relation": "eq", "pass": False, "kind": "published"}


def test_verify_is_deterministic():
    first, second = verify_paper(), verify_paper()
    assert json.dumps(first.to_json()) == json.dumps(second.to_json())
    assert first.to_text() == second.to_text()


def test_verify_reports_errors_instead_of_crashing(monkeypatch):
    import kaltools.verify as v

    class Broken:
        def __call__(self, m, n):
            raise RuntimeError("synthetic")

        def cache_clear(self):
            pass

    monkeypatch.setattr(v, "_mod_image", Broken())
    report = v.verify_paper()
    broken = [c for c in report.checks if c.name.startswith("mu_image_mod")]
    assert broken and all(not c.passed and "synthetic" in c.error for c in broken)
    assert not report.overall
