import io
import json

import pytest

from platlab.cli import EXIT_ALARM, EXIT_ERROR, EXIT_OK, Config, main
from platlab.corpus import WHITEHEAD_BRAID, WHITEHEAD_PD


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def whitehead_file(tmp_path):
    p = tmp_path / "whitehead.json"
    p.write_text(json.dumps(WHITEHEAD_PD))
    return str(p)


@pytest.fixture
def hopf_file(tmp_path, capsys):
    main(["close", "A(2,3)", "--strands", "4"])
    p = tmp_path / "hopf.json"
    p.write_text(capsys.readouterr().out)
    return str(p)


def test_close_hopf(capsys):
    code, out, _ = run(capsys, "close", "--plat", "A(2,3)", "--strands", "4")
    assert code == EXIT_OK
    pd = json.loads(out)
    assert len(pd["crossings"]) == 2 and len(pd["components"]) == 2


def test_close_identity_is_unlink(capsys):
    code, out, _ = run(capsys, "close", "--plat", "", "--strands", "4")
    assert code == EXIT_OK
    assert json.loads(out)["crossings"] == []


def test_close_rejects_non_pure(capsys):
    code, _, err = run(capsys, "close", "--plat", "s1")
    assert code == EXIT_ERROR and "not pure" in err


def test_close_gauss_and_trace(capsys):
    code, out, _ = run(capsys, "close", "--trace", "s1^2", "--gauss")
    assert code == EXIT_OK and "|" in out


def test_invariants_hopf(capsys, hopf_file):
    code, out, _ = run(capsys, "invariants", hopf_file, "--mu-len", "2", "--output", "json")
    assert code == EXIT_OK
    record = json.loads(out)
    [mu12] = [v for v in record["mu"] if v["I"] == [1, 2]]
    assert abs(mu12["value"]) == 1


def test_invariants_whitehead_text_and_json_agree(capsys, whitehead_file):
    code, out, _ = run(capsys, "invariants", whitehead_file, "--mu-len", "4", "--conway")
    assert code == EXIT_OK
    assert "mu(1122) = " in out and "z^3" in out
    code, out, _ = run(capsys, "--output", "json", "invariants", whitehead_file, "--mu-len", "4", "--conway")
    record = json.loads(out)
    assert record["lk"] == [[0, 0], [0, 0]]
    assert abs(record["conway"]["3"]) == 1 and set(record["conway"]) == {"3"}
    [v] = [v for v in record["mu"] if v["I"] == [1, 1, 2, 2]]
    assert abs(v["value"]) == 1 and v["delta"] == 0


def test_invariants_from_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, "invariants", "-", "--profile", "2", stdin="O1+ U1+", monkeypatch=monkeypatch)
    assert code == EXIT_OK and "matches unlink: True" in out


def test_invariants_mu_len_beyond_cap(capsys, whitehead_file):
    code, _, err = run(capsys, "invariants", whitehead_file, "--mu-len", "5", "--magnus-cap", "4")
    assert code == EXIT_ERROR and "cap" in err


def test_group_longitudes(capsys, hopf_file):
    code, out, _ = run(capsys, "group", hopf_file, "--longitudes", "--output", "json")
    assert code == EXIT_OK
    record = json.loads(out)
    assert len(record["generators"]) == 2
    assert record["W"] in (["x2^-1", "x1^-1"], ["x2", "x1"])


def test_verify_certificate_file(capsys, tmp_path):
    cert = {"pd": WHITEHEAD_PD, "collection": [[0, 3], [2, 4]], "target": "unlink:2"}
    p = tmp_path / "cert.json"
    p.write_text(json.dumps(cert))
    code, out, _ = run(capsys, "verify", str(p))
    assert code == EXIT_OK and out.startswith("verified")


def test_verify_malformed(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{}")
    code, _, err = run(capsys, "verify", str(p))
    assert code == EXIT_ERROR and "malformed" in err


def test_theorem1_whitehead(capsys):
    code, out, _ = run(capsys, "theorem1", WHITEHEAD_BRAID, "--m", "1")
    assert code == EXIT_OK and "consistent: True" in out
    code, out, _ = run(capsys, "theorem1", WHITEHEAD_BRAID, "--m", "2", "--output", "json")
    record = json.loads(out)
    assert code == EXIT_OK
    assert record["mu_vanish_through_m+2"] is False
    assert len(record["first_nonvanishing_mu"]["I"]) == 4


def test_scan_commands(capsys, hopf_file, whitehead_file):
    code, out, _ = run(capsys, "scan", hopf_file)
    assert code == EXIT_OK and out.startswith("nontrivial")
    code, out, _ = run(capsys, "scan", whitehead_file, "--brunnian")
    assert "nontrivial" in out and "brunnian: True" in out


def test_decompose_commands(capsys):
    code, out, _ = run(capsys, "decompose", "[x1,x2]", "--m", "2")
    assert code == EXIT_OK and out.strip() == "[x1,x2]"
    code, _, err = run(capsys, "decompose", "x1", "--m", "2")
    assert code == EXIT_ERROR


def test_env_overrides(capsys, monkeypatch, whitehead_file):
    monkeypatch.setenv("PLATLAB_OUTPUT", "json")
    code, out, _ = run(capsys, "invariants", whitehead_file)
    assert json.loads(out)["components"] == 2
    monkeypatch.setenv("PLATLAB_MAGNUS_CAP", "zero")
    code, _, err = run(capsys, "invariants", whitehead_file)
    assert code == EXIT_ERROR


def test_config_validation():
    with pytest.raises(ValueError):
        Config(magnus_cap=0)
    with pytest.raises(ValueError):
        Config(output="xml")


def test_alarm_exit_code_is_distinct():
    assert len({EXIT_OK, EXIT_ERROR, EXIT_ALARM}) == 3
