import json

import pytest

from clustercat.cli import main

from conftest import A2, A3


@pytest.fixture
def a2_path(tmp_path):
    p = tmp_path / "a2.quiver"
    p.write_text(A2, encoding="utf-8")
    return str(p)


@pytest.fixture
def a3_path(tmp_path):
    p = tmp_path / "a3.quiver"
    p.write_text(A3, encoding="utf-8")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ar_json(capsys, a2_path):
    code, out, _ = run(capsys, "ar", "--quiver", a2_path)
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["dynkin"] == {"family": "A", "rank": 2}
    assert len(payload["modules"]) == 3
    assert payload["tau"] == [{"from": "m3", "to": "m2"}]
    assert payload["hom"][0][0] == 1


def test_ar_tsv_sections(capsys, a2_path):
    code, out, _ = run(capsys, "ar", "--quiver", a2_path, "--format", "tsv")
    assert code == 0
    for section in ("# modules", "# arrows", "# tau", "# hom", "# ext"):
        assert section in out
    assert "m1\t1,1\t1\t2" in out


def test_ar_a1_single_row(capsys, tmp_path):
    p = tmp_path / "a1.quiver"
    p.write_text("vertices 1\n", encoding="utf-8")
    code, out, _ = run(capsys, "ar", "--quiver", str(p))
    payload = json.loads(out)
    assert code == 0
    assert len(payload["modules"]) == 1
    assert payload["tau"] == []


def test_ar_cycle_exits_2(capsys, tmp_path):
    p = tmp_path / "cycle.quiver"
    p.write_text("vertices 3\narrow 1 2\narrow 2 3\narrow 3 1\n", encoding="utf-8")
    code, _, err = run(capsys, "ar", "--quiver", str(p))
    assert code == 2
    assert "cycle" in err


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "ar", "--quiver", "/nonexistent/q.quiver")
    assert code == 2
    assert "error" in err


def test_ind_counts(capsys, a2_path):
    code, out, _ = run(capsys, "ind", "--quiver", a2_path, "--m", "3")
    payload = json.loads(out)
    assert code == 0
    assert payload["m"] == 3
    assert len(payload["objects"]) == 15
    tiers = {r["tier"] for r in payload["objects"]}
    assert tiers == {0, 1, 2}


def test_hom_pair(capsys, a2_path):
    code, out, _ = run(capsys, "hom", "--quiver", a2_path, "--m", "2", "m1[0]", "m1[0]")
    payload = json.loads(out)
    assert code == 0
    assert payload["hom"] == 1
    assert payload["ext"] == 0


def test_hom_pair_self_ext_zero_everywhere(capsys, a3_path):
    code, out, _ = run(capsys, "hom", "--quiver", a3_path, "--m", "2")
    payload = json.loads(out)
    assert code == 0
    for x in payload["ids"]:
        assert payload["ext"][x][x] == 0
        assert payload["hom"][x][x] == 1


def test_hom_malformed_object_exits_2(capsys, a2_path):
    code, _, err = run(capsys, "hom", "--quiver", a2_path, "m1[", "m1[0]")
    assert code == 2
    assert "syntax" in err


def test_hom_unknown_id_exits_2(capsys, a2_path):
    code, _, err = run(capsys, "hom", "--quiver", a2_path, "m9[0]", "m1[0]")
    assert code == 2
    assert "unknown" in err


def test_hom_single_object_usage_error(capsys, a2_path):
    with pytest.raises(SystemExit) as info:
        main(["hom", "--quiver", a2_path, "m1[0]"])
    assert info.value.code == 2


def test_tilting_listing(capsys, a3_path):
    code, out, _ = run(capsys, "tilting", "--quiver", a3_path)
    payload = json.loads(out)
    assert code == 0
    assert payload["count"] == 14
    assert len(payload["tilting_objects"]) == 14
    assert all(len(members) == 3 for members in payload["tilting_objects"])


def test_tilting_members_scale_with_m(capsys, a3_path):
    code, out, _ = run(capsys, "tilting", "--quiver", a3_path, "--m", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["count"] == 14
    assert all(len(members) == 6 for members in payload["tilting_objects"])


def test_graph_json(capsys, a2_path):
    code, out, _ = run(capsys, "graph", "--quiver", a2_path, "--m", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["connected"] is True
    assert len(payload["vertices"]) == 5
    assert len(payload["edges"]) == 5


def test_graph_dot(capsys, a2_path):
    code, out, _ = run(capsys, "graph", "--quiver", a2_path, "--format", "dot")
    assert code == 0
    assert out.startswith("graph tilting {")
    assert out.rstrip().endswith("}")
    assert out.count(" -- ") == 5


def test_dot_rejected_outside_graph(capsys, a2_path):
    with pytest.raises(SystemExit) as info:
        main(["tilting", "--quiver", a2_path, "--format", "dot"])
    assert info.value.code == 2


def test_endo_report(capsys, a2_path):
    code, out, _ = run(capsys, "endo", "1", "--quiver", a2_path, "--m", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["vertex"] == "T1"
    assert payload["pattern_ok"] is True
    assert payload["dim_E"] == 0
    assert payload["block_dims"] == [[3, 0], [0, 3]]


def test_endo_vertex_out_of_range(capsys, a2_path):
    code, _, err = run(capsys, "endo", "9", "--quiver", a2_path)
    assert code == 2
    assert "out of range" in err


def test_verify_restricted_battery(capsys):
    code, out, _ = run(capsys, "verify", "--battery", "A2")
    payload = json.loads(out)
    assert code == 0
    assert payload["passed"] is True
    assert payload["battery"] == ["A2"]
    assert payload["checks_failed"] == 0


def test_verify_fault_injection_fails_with_named_invariant(capsys):
    code, out, _ = run(capsys, "verify", "--battery", "A2", "--inject-fault", "hom-table")
    payload = json.loads(out)
    assert code == 1
    assert payload["passed"] is False
    failing = {
        ch["name"]
        for cell in payload["cells"]
        for ch in cell["checks"]
        if not ch["passed"]
    }
    assert "oracle-hom-equivalence" in failing


def test_verify_unknown_battery_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--battery", "B7"])
    assert info.value.code == 2


def test_m_must_be_positive(capsys, a2_path):
    with pytest.raises(SystemExit) as info:
        main(["ind", "--quiver", a2_path, "--m", "0"])
    assert info.value.code == 2


def test_outputs_deterministic(capsys, a3_path):
    _, first, _ = run(capsys, "graph", "--quiver", a3_path, "--m", "2")
    _, second, _ = run(capsys, "graph", "--quiver", a3_path, "--m", "2")
    assert first == second
    _, t1, _ = run(capsys, "tilting", "--quiver", a3_path, "--format", "tsv")
    _, t2, _ = run(capsys, "tilting", "--quiver", a3_path, "--format", "tsv")
    assert t1 == t2


def test_out_flag_writes_file(tmp_path, capsys, a2_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "ind", "--quiver", a2_path, "--out", str(target))
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["schema_version"] == 1
