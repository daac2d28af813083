import json
import pathlib

import pytest

from homcert.cli import main
from homcert.documents import parse_document

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def fx(name: str) -> str:
    return str(FIXTURES / f"{name}.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def out_doc(text: str):
    return parse_document(text)


# -- happy paths -------------------------------------------------------


@pytest.mark.parametrize("name", ["module_z_cyclic6", "module_z4_cyclic2",
                                  "module_z_0", "module_f5_0", "module_z4_0"])
def test_resolve_emits_complex(capsys, name):
    code, out, _ = run(capsys, "resolve", fx(name))
    assert code == 0
    assert out_doc(out).kind == "complex"


@pytest.mark.parametrize("name", ["module_z_cyclic6", "complex_z_mult2",
                                  "chain_map_z", "chain_map_z4"])
def test_dualize_accepts_three_kinds(capsys, name):
    code, out, _ = run(capsys, "dualize", fx(name))
    assert code == 0
    assert out_doc(out).kind == parse_document(
        pathlib.Path(fx(name)).read_text()).kind


def test_generator_emits_package(capsys):
    code, out, _ = run(capsys, "generator", fx("module_z4_cyclic2"))
    assert code == 0
    doc = out_doc(out)
    assert doc.kind == "generator_package"
    assert doc.payload.complete


def test_check_qiso_passes_on_orthogonal_target(capsys, tmp_path):
    target = tmp_path / "q.json"
    target.write_text(pathlib.Path(fx("complex_z4_0")).read_text())
    code, out, _ = run(capsys, "check-qiso", fx("package_z4_cyclic2"),
                       str(target), "--window=-3..3")
    assert code == 0
    doc = out_doc(out)
    assert doc.kind == "verdict" and doc.payload.ok


def test_homology_window(capsys):
    code, out, _ = run(capsys, "homology", fx("complex_z_mult2"), "--window=-1..0")
    assert code == 0
    doc = out_doc(out)
    assert doc.payload.code == "homology_computed"
    h0 = doc.payload.details["0"]
    assert h0["presentation"]["entries"] == [[2]]
    hm1 = doc.payload.details["-1"]
    assert hm1["presentation"]["rows"] == 0


def test_homology_text_format(capsys):
    code, out, _ = run(capsys, "--format", "text", "homology",
                       fx("complex_z_mult2"), "--window=-1..0")
    assert code == 0
    assert "H^0 = R/(2)" in out
    assert "H^-1 = 0" in out


@pytest.mark.parametrize("tag", ["z", "f5", "z4"])
def test_flat_cert_free_case(capsys, tag):
    code, out, _ = run(capsys, "flat-cert", fx(f"relation_{tag}"))
    assert code == 0
    assert out_doc(out).kind == "certificate"


def test_flat_cert_cycle_hypothesis_failure_exits_1(capsys, tmp_path):
    rel = tmp_path / "rel.json"
    rel.write_text(json.dumps({
        "version": "1", "ring": {"kind": "Zmod", "n": 4}, "kind": "relation",
        "payload": {"a": {"rows": 1, "cols": 1, "entries": [[2]]},
                    "z": {"rows": 1, "cols": 1, "entries": [[2]]}}}))
    code, out, _ = run(capsys, "flat-cert", str(rel), fx("complex_z4_periodic"),
                       "--degree=0")
    assert code == 1
    doc = out_doc(out)
    assert doc.kind == "verdict"
    assert doc.payload.code == "hom_hypothesis_fails"


def test_decompose_right_module(capsys):
    code, out, _ = run(capsys, "decompose", fx("module_z_right6"))
    assert code == 0
    doc = out_doc(out)
    assert doc.kind == "build_tree"
    assert doc.payload.free_leaf_count() == 2


@pytest.mark.parametrize("tag", ["z", "f5", "z4"])
def test_split_check_contractible_passes(capsys, tag):
    code, out, _ = run(capsys, "split-check", fx(f"contractible_{tag}"),
                       "--window=-6..5")
    assert code == 0
    assert out_doc(out).payload.code == "split_exact"


def test_split_check_failure_exits_1(capsys):
    code, out, _ = run(capsys, "split-check", fx("complex_z_mult2"),
                       "--window=-4..3")
    assert code == 1
    assert not out_doc(out).payload.ok


def test_split_check_with_bound_runs_collapse(capsys, tag="z"):
    code, out, _ = run(capsys, "split-check", fx(f"contractible_{tag}"),
                       "--window=-6..5", "--bound=1")
    assert code == 0
    assert out_doc(out).payload.code == "collapsed"


# -- machine output is itself round-trip stable ------------------------


def test_cli_output_is_byte_stable(capsys):
    code, out, _ = run(capsys, "resolve", fx("module_z_cyclic6"))
    assert code == 0
    from homcert.documents import emit_document
    assert emit_document(parse_document(out)) == out


# -- exit-status matrix for errors -------------------------------------


def test_wrong_document_kind_exits_2(capsys):
    code, _, err = run(capsys, "resolve", fx("relation_z"))
    assert code == 2 and "expected" in err


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "resolve", str(FIXTURES / "nope.json"))
    assert code == 2


def test_malformed_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code, _, err = run(capsys, "homology", str(bad), "--window=0..0")
    assert code == 2 and "syntax" in err


def test_bad_window_exits_2(capsys):
    code, _, err = run(capsys, "homology", fx("complex_z_mult2"), "--window=oops")
    assert code == 2 and "window" in err


def test_unknown_command_exits_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_help_exits_0(capsys):
    assert run(capsys, "--help")[0] == 0
