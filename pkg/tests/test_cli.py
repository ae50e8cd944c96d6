import json
import pathlib


import qfca.cli as cli

HERE = pathlib.Path(__file__).parent
ROOT = HERE.parent
CONTEXTS = ROOT / "contexts"
DATA = HERE / "data"

ALL_CONTEXT_FILES = sorted(CONTEXTS.glob("*.json")) + [DATA / "inline_two.json"]


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def test_validate_ok(capsys):
    for path in ALL_CONTEXT_FILES:
        code, out = run(capsys, "validate", path)
        assert code == 0, path
        assert json.loads(out)["ok"] is True


def test_validate_broken_compose_names_triple(capsys):
    code, out = run(capsys, "validate", DATA / "broken_compose.json")
    assert code == 1
    report = json.loads(out)
    assert report["ok"] is False
    issues = [i for r in report["reports"] for i in r["issues"]]
    assoc = [i for i in issues if i["code"] == "compose.associative"]
    assert assoc and ["m", "1", "m"] in [i["where"] for i in assoc]


def test_unknown_preset_usage_error(capsys):
    code = cli.main(["validate", str(DATA / "unknown_preset.json")])
    assert code == 2


def test_malformed_inputs_usage_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["validate", str(bad)]) == 2
    missing = tmp_path / "missing.json"
    missing.write_text("{}")
    assert cli.main(["validate", str(missing)]) == 2
    assert cli.main(["validate", str(tmp_path / "absent.json")]) == 2
    incomplete = tmp_path / "incomplete_functor.json"
    doc = json.loads((CONTEXTS / "fix_2id.json").read_text())
    doc["functors"]["partial"] = {"from": "A", "to": "A", "map": {"a1": "a1"}}
    incomplete.write_text(json.dumps(doc))
    assert cli.main(["validate", str(incomplete)]) == 2


def test_concepts_fca_diamond_dot(capsys):
    code, out = run(capsys, "concepts", CONTEXTS / "fix_2id.json",
                    "--mode", "fca", "--out", "dot", "--oracle")
    assert code == 0
    assert out.count("[label=") == 4
    assert out.count("->") == 4  # the four cover edges of the diamond


def test_concepts_rst_chain(capsys):
    code, out = run(capsys, "concepts", CONTEXTS / "fix_l3.json",
                    "--mode", "rst", "--out", "dot", "--oracle")
    assert code == 0
    assert out.count("[label=") == 2 and out.count("->") == 1


def test_concepts_json_type_filter(capsys):
    code, out = run(capsys, "concepts", CONTEXTS / "fix_dl3.json",
                    "--mode", "rst", "--type", "1", "--oracle")
    assert code == 0
    data = json.loads(out)
    assert list(data["types"].keys()) == ["1"]


def test_concepts_unknown_type(capsys):
    code = cli.main(["concepts", str(CONTEXTS / "fix_dl3.json"), "--type", "9"])
    assert code == 2


def test_concepts_oracle_mismatch_fault_injection(capsys, monkeypatch):
    # simulate a buggy closure by dropping a concept from the computed lattice
    real = cli.fca_lattice

    def broken(phi, cap=None, verify=True):
        lattice = real(phi, cap, verify)
        from qfca.concept import ConceptLattice
        return ConceptLattice("fca", phi, lattice.concepts[:-1])

    monkeypatch.setattr(cli, "fca_lattice", broken)
    code, out = run(capsys, "concepts", CONTEXTS / "fix_2id.json",
                    "--mode", "fca", "--oracle")
    assert code == 3
    diff = json.loads(out)
    assert diff["oracle"] == "mismatch" and diff["diff"]["missing"]


def test_girard_outputs(capsys, tmp_path):
    code, out = run(capsys, "girard", CONTEXTS / "fix_l3.json")
    assert code == 0 and json.loads(out)["summary"] == "Girard, d=(0)"
    code, out = run(capsys, "girard", CONTEXTS / "godel3.json")
    assert code == 0
    assert json.loads(out)["summary"] == "not Girard; best cyclic family d=(0)"
    path = tmp_path / "b4.json"
    path.write_text(json.dumps(
        {"quantaloid": {"preset": {"name": "frame-diagonal", "boolean": 2}}}))
    code, out = run(capsys, "girard", path)
    assert code == 0 and json.loads(out)["girard"] is True


def test_verify_props_pass(capsys):
    for prop in ("k-eq-m-tr", "yoneda", "dense-cond", "isbell-adjunction",
                 "kan-adjunction", "elementary-identities", "thm33", "thm51",
                 "mphi-rep", "kphi-rep", "elementary-rep", "girard-probe"):
        code, out = run(capsys, "verify", CONTEXTS / "fix_l3.json", "--prop", prop)
        assert code == 0, (prop, out)
        assert json.loads(out)["passed"] is True


def test_verify_multi_typed_central_identity(capsys):
    code, out = run(capsys, "verify", CONTEXTS / "fix_dl3.json", "--prop", "k-eq-m-tr")
    assert code == 0
    names = [c["name"] for c in json.loads(out)["conditions"]]
    assert {"lattice-equality@0", "lattice-equality@1", "lattice-equality@2"} <= set(names)


def test_verify_multi_typed_theorems(capsys):
    for prop in ("thm33", "kphi-rep", "elementary-identities"):
        code, out = run(capsys, "verify", CONTEXTS / "fix_dl3.json", "--prop", prop)
        assert code == 0, (prop, out)
        assert json.loads(out)["passed"] is True


def test_verify_k_eq_m_neg(capsys):
    code, out = run(capsys, "verify", CONTEXTS / "fix_l3.json", "--prop", "k-eq-m-neg")
    assert code == 0 and json.loads(out)["passed"] is True
    code = cli.main(["verify", str(CONTEXTS / "godel3.json"), "--prop", "k-eq-m-neg"])
    assert code == 2  # precondition: the quantaloid is not Girard


def test_verify_rst_kind(capsys):
    code, out = run(capsys, "verify", CONTEXTS / "fix_2id.json", "--prop", "thm33",
                    "--data", "kind=rst")
    assert code == 0 and json.loads(out)["passed"] is True


def test_verify_user_supplied_data(capsys, tmp_path):
    # an explicitly wrong user representation is rejected with exit 3
    doc = json.loads((CONTEXTS / "fix_2id.json").read_text())
    doc["categories"]["X"] = {
        "objects": [{"label": "pt", "type": "*"}],
        "hom": [["pt", "pt", "1"]],
    }
    doc["functors"]["F"] = {"from": "A", "to": "X", "map": {"a1": "pt", "a2": "pt"}}
    doc["functors"]["G"] = {"from": "B", "to": "X", "map": {"b1": "pt", "b2": "pt"}}
    path = tmp_path / "user.json"
    path.write_text(json.dumps(doc))
    code, out = run(capsys, "verify", path, "--prop", "mphi-rep",
                    "--data", "F=F", "G=G", "X=X")
    assert code == 3
    assert json.loads(out)["passed"] is False


def test_tr_output(capsys):
    code, out = run(capsys, "tr", CONTEXTS / "fix_l3.json")
    assert code == 0
    data = json.loads(out)
    assert len(data["residual_members"]) == 3
    values = {e[2] for e in data["residual_context"]}
    assert values == {"1/2", "1"}
    for m in data["residual_members"]:
        assert m["provenance"]


def test_round_trip(capsys):
    for path in ALL_CONTEXT_FILES:
        doc = cli.load_document(str(path))
        once = cli.serialize_document(doc)
        again = cli.serialize_document(cli.parse_document(once))
        assert once == again
        assert cli.parse_document(once) == doc


def test_byte_identical_outputs(capsys):
    fixtures = [
        ("concepts", CONTEXTS / "fix_dl3.json", "--mode", "rst", "--out", "dot"),
        ("concepts", CONTEXTS / "fix_2id.json", "--mode", "fca", "--out", "json"),
        ("girard", CONTEXTS / "fix_dl3.json"),
        ("verify", CONTEXTS / "fix_l3.json", "--prop", "k-eq-m-tr"),
        ("tr", CONTEXTS / "fix_dl3.json"),
    ]
    for argv in fixtures:
        _, out1 = run(capsys, *argv)
        _, out2 = run(capsys, *argv)
        assert out1 == out2 and out1


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("QFCA_BUDGET", "1")
    code = cli.main(["concepts", str(CONTEXTS / "fix_2id.json"), "--oracle"])
    assert code == 1  # the enumeration cap trips and surfaces as an error
