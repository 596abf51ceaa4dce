import json
from pathlib import Path

import fixcat

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.fixcat.json")


CECH = ("cech", "--doc", fixture_path("pseudocircle"), "--site", "pseudocircle",
        "--cover", "UV", "--presheaf", "comp", "--max-degree", "1", "--json")


def test_listing_without_a_command(cli):
    code, out = cli()
    assert code == 0
    assert out.startswith("commands:")
    for name in ("fixpoints", "cech", "fix-additive", "site-check", "chain", "log", "Homotopy"):
        assert name in out
    assert "_common" not in out


def test_fixed_points_of_a_swap(cli):
    code, out = cli("fixpoints", "--doc", fixture_path("codiscrete"), "--functor", "F")
    assert code == 0
    assert "2 fixed points of F" in out
    assert "(A|A>B)" in out


def test_cech_json_report(cli):
    code, out = cli(*CECH)
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "pass"
    assert data["command"] == "cech"
    assert data["report"]["cohomology"] == [{"degree": 0, "invariants": [2]},
                                            {"degree": 1, "invariants": [2]}]


def test_json_output_is_deterministic(cli):
    assert cli(*CECH) == cli(*CECH)


def test_failed_property_exits_one(cli):
    code, out = cli("balanced", "--doc", fixture_path("walking_arrow"))
    assert code == 1
    assert "not balanced" in out


def test_broken_reference_exits_two(cli):
    code, out = cli("validate", "--doc", fixture_path("broken_reference"), "--json")
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "ReferenceError"


def test_broken_composition_exits_two(cli):
    code, out = cli("validate", "--doc", fixture_path("broken_composition"))
    assert code == 2
    assert "AssociativityViolation" in out


def test_unknown_command_exits_two(cli):
    code, out = cli("homotopy-groups", "--doc", fixture_path("hexagon"))
    assert code == 2
    assert "UnknownCommand" in out


def test_missing_document_exits_two(cli):
    code, out = cli("fixpoints", "--functor", "F")
    assert code == 2
    assert "--doc" in out


def test_missing_entity_exits_two(cli):
    code, _ = cli("fixpoints", "--doc", fixture_path("codiscrete"), "--functor", "H")
    assert code == 2


def test_homotopy_chain(cli):
    code, out = cli("chain", "homotopy", "--doc", fixture_path("hexagon"), "--functor", "flip")
    assert code == 0
    assert "Homotopy" in out
    assert "L(flip) = 2" in out


def test_chain_json_collects_steps(cli):
    code, out = cli("chain", "fixed_points", "--doc", fixture_path("codiscrete"),
                    "--functor", "F", "--json")
    data = json.loads(out)
    assert code == 0
    assert [s["command"] for s in data["steps"]] == ["fixpoints", "strict", "fixcat-build"]


def test_unknown_chain_exits_two(cli):
    code, _ = cli("chain", "nowhere", "--doc", fixture_path("hexagon"))
    assert code == 2


def test_ini_override_applies_when_no_flag(cli, tmp_path):
    ini = tmp_path / "custom.ini"
    ini.write_text("[command:cech]\nmax_degree = 1\n", encoding="utf-8")
    argv = [a for a in CECH if a not in ("--max-degree", "1")]
    code, out = cli(*argv, "--config", str(ini))
    assert code == 0
    assert json.loads(out)["report"]["max_degree"] == 1

    code, out = cli(*argv, "--config", str(ini), "--max-degree", "2")
    assert json.loads(out)["report"]["max_degree"] == 2


def test_missing_config_exits_two(cli, tmp_path):
    code, _ = cli("validate", "--config", str(tmp_path / "absent.ini"))
    assert code == 2


def test_log_needs_logging(cli):
    code, _ = cli("log")
    assert code == 2


def test_proptest_runs_without_a_document(cli):
    code, out = cli("proptest", "--suite", "snf", "--trials", "5", "--seed", "3", "--json")
    assert code == 0
    suite = json.loads(out)["report"]["suites"][0]
    assert suite["suite"] == "snf" and suite["seed"] == 3 and suite["ok"]


def test_proptest_unknown_suite(cli):
    code, _ = cli("proptest", "--suite", "nonesuch")
    assert code == 2


def test_fix_additive_on_matrices(cli):
    code, out = cli("fix-additive", "--doc", fixture_path("matrix"), "--functor", "M.id",
                    "--enrichment", "M")
    assert code == 0
    assert "additive: True" in out


def test_transport_searches_for_an_isomorphism(cli):
    code, out = cli("transport", "--doc", fixture_path("codiscrete"), "--functor", "F",
                    "--functor2", "Id")
    assert code == 0
    assert "2 fixed points of F ↔ 2 of Id" in out


def test_certify_along_a_transformation(cli):
    code, out = cli("certify", "--doc", fixture_path("hexagon"), "--transformation", "lift", "--json")
    assert code == 0
    report = json.loads(out)["report"]
    assert report["functor"] == "pin_a"
    assert report["companion"]["functor"] == "pin_ab"
    assert report["companion"]["lefschetz"] == report["lefschetz"] == 1
    assert report["consistent"]


def test_runs_are_logged_with_their_verdicts(tmp_path, capsys):
    ini = tmp_path / "logged.ini"
    ini.write_text(f"[logging]\ndb_dir = {tmp_path}\n", encoding="utf-8")
    hexagon = fixture_path("hexagon")
    assert fixcat.main(["validate", "--doc", hexagon, "--config", str(ini)]) == 0
    assert fixcat.main(["fixpoints", "--doc", hexagon, "--functor", "nonesuch", "--config", str(ini)]) == 2
    capsys.readouterr()

    assert fixcat.main(["log", "--runs", "--config", str(ini)]) == 0
    out = capsys.readouterr().out
    assert "✓ validate" in out and "⚠ fixpoints" in out
    assert "exit 2  MissingEntity" in out
    assert fixcat.main(["log", "--verdict", "error", "--config", str(ini)]) == 0
    out = capsys.readouterr().out
    assert "fixpoints" in out and "✓ validate" not in out
    assert fixcat.main(["log", "--verdict", "loud", "--config", str(ini)]) == 2
