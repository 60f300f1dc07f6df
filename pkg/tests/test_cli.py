import json

from qfold.cli import main
from qfold.corpus import corpus_entry, entry_to_dict
from qfold.generators import random_graded_pair
from qfold.linalg import Mat
from qfold.module_lab import framed_module
from qfold.quiver_core import a_quiver, flip_automorphism, quiver_to_dict
from qfold.serialize import matmap_to_obj, module_to_dict, sigma_to_dict, witness_to_dict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_split_corpus_human_and_json(capsys):
    code, out = run(capsys, "split", "--corpus", "D4-swap")
    assert code == 0
    assert "type A5" in out
    code, out = run(capsys, "split", "--corpus", "D4-swap", "--json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["vertices"]) == 5
    assert payload["labels"]["3@1/1"]["orbit"] == ["3", "4"]
    assert "automorphism" in payload


def test_split_rejects_non_admissible(capsys):
    code, _out = run(capsys, "split", "--corpus", "A4-flip")
    assert code == 1


def test_quotient_output(capsys):
    code, out = run(capsys, "quotient", "--corpus", "A3-flip", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["vertices"] == ["1", "2"]
    assert len(payload["edges"]) == 1


def test_fold_examples(capsys):
    code, out = run(capsys, "fold", "--corpus", "A3-flip", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["folded_type"] == "C2"
    assert payload["folded_cartan"] == [[2, -1], [-2, 2]]

    code, out = run(capsys, "fold", "--corpus", "D4-swap", "--json")
    payload = json.loads(out)
    assert payload["base_type"] == "D4"
    assert payload["split_type"] == "A5"
    assert payload["folded_type"] == "B3"


def test_fold_reads_file_and_stdin(tmp_path, capsys, monkeypatch):
    doc = entry_to_dict(corpus_entry("A5-flip"))
    path = tmp_path / "a5.json"
    path.write_text(json.dumps(doc))
    code, out = run(capsys, "fold", "--file", str(path), "--json")
    assert code == 0
    assert json.loads(out)["folded_type"] == "C3"


def test_branch_table_and_conservation(capsys):
    code, out = run(capsys, "branch", "--corpus", "D3-swap", "--framing", "0,1,0", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 4
    assert payload["dimension_conserved"] is True
    assert payload["summands"] == [{"weight": [1, 0], "multiplicity": 1, "dim": 4}]
    code, out = run(capsys, "branch", "--corpus", "D3-swap", "--framing",
                    json.dumps({"1@2/2": 1}))
    assert code == 0
    assert "conserved: True" in out


def test_dims_identity_twist(capsys):
    code, out = run(capsys, "dims", "--corpus", "D4-swap",
                    "--v", "1,1,1,1", "--w", "1,1,1,1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert isinstance(payload, list) and len(payload) == 4
    assert sorted(c["dim"] for c in payload) == [0, 0, 0, 4]


def test_usage_errors_exit_one(capsys):
    assert main(["split"]) == 1          # no source
    assert main(["nonsense"]) == 1       # unknown subcommand
    assert main(["split", "--corpus", "missing-entry"]) == 1


def test_determinism_byte_identical(capsys):
    _code, first = run(capsys, "verify-all", "--seed", "3", "--json")
    _code, second = run(capsys, "verify-all", "--seed", "3", "--json")
    assert first == second


def module_doc():
    a3 = a_quiver(3)
    flip = flip_automorphism(a3, 3)
    m1 = framed_module(
        a3, {"1": 1, "2": 1, "3": 1}, {"1": 1, "2": 1, "3": 1},
        B={"e2*": Mat.rational([[1]])},
        J={"1": Mat.rational([[1]]), "2": Mat.rational([[1]]), "3": Mat.rational([[0]])})
    return {
        "quiver": quiver_to_dict(a3, flip),
        "module": module_to_dict(m1),
        "g": matmap_to_obj({"1": Mat.rational([[1]]), "2": Mat.rational([[2]]),
                            "3": Mat.rational([[1]])}),
    }


def test_module_check_and_transition(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(module_doc()))
    code, out = run(capsys, "module", "check", str(path), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["relations_ok"] and payload["stable"]

    code, out = run(capsys, "module", "transition", str(path), "--json")
    assert code == 0
    assert json.loads(out)["witness"] is None


def test_module_witness_reports_eigenvalues(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(module_doc()))
    code, out = run(capsys, "module", "witness", str(path), "--json")
    assert code == 0
    payload = json.loads(out)
    report = payload["fixed_vertex_eigenvalues"]["2"]
    assert report["other"] == 2
    assert sorted(report["rational_eigenvalues"]) == [["1/2", 1], ["2", 1]]


def test_module_theta_round_trip(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(module_doc()))
    code, out = run(capsys, "module", "theta", str(path), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["module"]["J"]["3"]["data"] == [["1"]]


def test_module_theorem5(tmp_path, capsys):
    import random
    a3 = a_quiver(3)
    flip = flip_automorphism(a3, 3)
    rng = random.Random(5)
    xi, sub, m, sigma, wsub, wit = random_graded_pair(rng, a3, flip)
    doc = {
        "quiver": quiver_to_dict(a3, flip),
        "module": module_to_dict(m),
        "sub": module_to_dict(sub),
        "xi": matmap_to_obj(xi),
        "sigma": sigma_to_dict(sigma),
        "witness": witness_to_dict(wit),
        "witness_sub": witness_to_dict(wsub),
    }
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(doc))
    code, out = run(capsys, "module", "theorem5", str(path), "--json")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_verify_all_passes(capsys):
    code, out = run(capsys, "verify-all", "--seed", "7", "--json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 13
    assert all(entry["status"] == "pass" for entry in payload.values())


def test_branch_affine_fold_is_input_error(capsys):
    # the folded Cartan matrix of the affine split is not finite type
    code, _ = run(capsys, "branch", "--corpus", "affineA3-flip", "--framing",
                  "0,0,0,0,1")
    assert code == 1


def test_quotient_non_admissible_exit_code(capsys):
    assert main(["quotient", "--corpus", "A4-flip"]) == 1


def test_dims_requires_orbit_constant(capsys):
    code, _ = run(capsys, "dims", "--corpus", "D4-swap",
                  "--v", "1,1,1,2", "--w", "1,1,1,1")
    assert code == 1
