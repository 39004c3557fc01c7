import json

import pytest
from hypothesis import given

from strategies import partial_actions
from pargal.cli import main
from pargal.errors import ParseError
from pargal.fixtures import ec6r, ex0, theta
from pargal.jsonio import action_to_json, dumps, load_action, parse_action, parse_group


@given(partial_actions())
def test_json_round_trip(a):
    desc = json.loads(dumps(action_to_json(a)))
    b = parse_action(desc)
    assert b == a and b.labels == a.labels


def test_group_descriptors():
    assert parse_group({"cyclic_product": [2, 3]}).n == 6
    G = parse_group({"table": [[0, 1], [1, 0]], "names": ["1", "s"]})
    assert G.names == ("1", "s")
    for bad in ([], {"nothing": 1}, {"table": [[0, 1], [1, 1]]}):
        with pytest.raises(ParseError):
            parse_group(bad)


def test_action_descriptor_defaults_and_errors():
    a = parse_action({"group": {"cyclic_product": [4]}, "points": 2, "sigma": {"g": {"0": 1}, "g^3": {"1": 0}}})
    assert a == theta()
    by_index = parse_action({"group": {"cyclic_product": [4]}, "points": 2, "sigma": {"3": {"1": 0}, "g": {"0": 1}}})
    assert by_index == theta()
    for bad in (
        {"points": 2},
        {"group": {"cyclic_product": [4]}, "points": -1},
        {"group": {"cyclic_product": [4]}, "points": 2, "sigma": {"g": {"0": 5}}},
        {"group": {"cyclic_product": [4]}, "points": 2, "sigma": {"h": {}}},
        {"group": {"cyclic_product": [4]}, "points": 2, "sigma": {"g": {"0": 1}}, "dom": {"g": [1]}},
        {"group": {"cyclic_product": [4]}, "points": 2, "labels": ["a"]},
    ):
        with pytest.raises(ParseError):
            parse_action(bad)


def test_load_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_action(p)
    with pytest.raises(ParseError):
        load_action(tmp_path / "missing.json")


def test_shipped_fixtures_match_library(fixture_dir):
    assert load_action(fixture_dir / "ex0.json") == ex0()
    assert load_action(fixture_dir / "ec6r.json") == ec6r()
    assert load_action(fixture_dir / "theta.json") == theta()


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_exit_codes(capsys, fixture_dir, tmp_path):
    assert run(capsys, "validate", fixture_dir / "ex0.json")[0] == 0
    code, out, _ = run(capsys, "validate", fixture_dir / "broken_p3.json")
    assert code == 1 and "P3 fails" in out
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert run(capsys, "validate", bad)[0] == 2


def test_reproduce_exit_codes(capsys):
    code, out, _ = run(capsys, "reproduce", "ex0")
    assert code == 0 and "15/15" in out
    assert run(capsys, "reproduce", "ec6r")[0] == 0


def test_reproduce_theta_example_reports_field_diff(capsys):
    code, out, _ = run(capsys, "reproduce", "sec52")
    assert code == 1
    assert "MISMATCH theta~_g:" in out and "MISMATCH theta~_g^2" not in out


def test_report_quotient_ec6r(capsys, fixture_dir):
    code, out, _ = run(capsys, "report", fixture_dir / "ec6r.json", "quotient", "--subgroup", "g^3")
    assert code == 0
    assert "gH: 1~ = e1" in out and "g^2H: 1~ = e3+e6" in out and "a(e3+e6) -> ae1" in out


def test_report_empty_and_unknown(capsys, fixture_dir):
    code, out, _ = run(capsys, "report", fixture_dir / "theta.json")
    assert code == 0 and out.startswith("== input ==")
    code, _, err = run(capsys, "report", fixture_dir / "theta.json", "frobnicate")
    assert code == 2 and "unknown op" in err


def test_report_is_byte_deterministic(capsys, fixture_dir, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        run(capsys, "report", fixture_dir / "ex0.json", "globalize", "quotient", "galois", "star", "idem",
            "pi", "clifford", "--subgroup", "g^2", "--out", path)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_emitted_actions_reparse(capsys, fixture_dir, tmp_path):
    path = tmp_path / "star.json"
    assert run(capsys, "star", fixture_dir / "theta.json", fixture_dir / "theta.json", "--out", path)[0] == 0
    a = load_action(path)
    assert a.n_points == 3


def test_other_commands(capsys, fixture_dir, tmp_path):
    ex, th = fixture_dir / "ex0.json", fixture_dir / "theta.json"
    assert run(capsys, "globalize", ex)[1].startswith("globalization on 4 points")
    assert "R(e1+e3)" in run(capsys, "invariants", ex, "--subgroup", "g^2")[1]
    assert run(capsys, "galois", th, "--ring", "fp:5")[0] == 0
    assert run(capsys, "iso", ex, ex)[0] == 0
    assert run(capsys, "iso", ex, th, "--global-pair")[0] == 1
    code, out, _ = run(capsys, "idem", th, "--route", "b")
    assert code == 0 and "routes agree: None" in out
    assert run(capsys, "pi", th)[0] == 0
    rep = tmp_path / "cl.json"
    assert run(capsys, "clifford", th, ex, "--budget", "16", "--out", rep)[0] == 0
    data = json.loads(rep.read_text())
    assert {"semilattice", "components", "idempotents", "nodes"} <= set(data)
    assert run(capsys, "galois", th, "--ring", "fp:4")[0] == 2
    assert run(capsys, "quotient", ex, "--subgroup", "h")[0] == 2
