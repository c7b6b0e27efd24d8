import json
import subprocess
import sys
from pathlib import Path

import pytest

from ordiv import graphs as gr
from ordiv.cli import FIGURES, main
from ordiv.export import dot_content_lines, from_json
from ordiv.groups import cyclic_group
from ordiv.odgraph import od_graph

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_z30(capsys):
    code, out, _ = run(capsys, "group", "Z:30")
    assert code == 0
    assert "order classes: 1:1, 2:1, 3:2, 5:4, 6:2, 10:4, 15:8, 30:8" in out
    assert "exponent: 30" in out and "cyclic: true" in out


def test_group_d3_and_ea(capsys):
    _, out, _ = run(capsys, "group", "D:3")
    assert "order classes: 1:1, 2:3, 3:2" in out and "abelian: false" in out
    _, out, _ = run(capsys, "group", "EA:3^2")
    assert "order classes: 1:1, 3:8" in out and "elementary abelian: true" in out


def test_classify(capsys):
    _, out, _ = run(capsys, "classify", "D:3")
    assert "star: yes, S_6 centred at e" in out
    _, out, _ = run(capsys, "classify", "Z:15")
    assert "star: no" in out and "part sizes [1, 6, 8]" in out and "chromatic number: 3" in out
    assert "cyclic-equivalents agree: true" in out
    code, out, _ = run(capsys, "classify", "Z:130")
    assert code == 0 and "chromatic number: refused" in out


def test_od_json(capsys):
    code, out, _ = run(capsys, "od", "Z:15")
    assert code == 0
    graph, doc = from_json(out)
    assert graph.vertex_count == 15 and graph.edge_count == 62
    assert doc["group_spec"] == "Z:15"
    assert graph == od_graph(cyclic_group(15)).graph
    _, out, _ = run(capsys, "od", "Z:1")
    graph, _ = from_json(out)
    assert graph.vertex_count == 1 and graph.edge_count == 0


def test_od_classify_block(capsys):
    _, out, _ = run(capsys, "od", "Z:8", "--classify")
    cls = json.loads(out)["classification"]
    assert cls["part_sizes"] == [1, 1, 2, 4] and cls["chromatic_number"] == 4


def test_lattice(capsys):
    _, out, _ = run(capsys, "lattice", "12")
    g12, _ = from_json(out)
    assert g12.vertex_count == 6 and g12.edge_count == 12
    _, out, _ = run(capsys, "lattice", "8", "--extended")
    e8, _ = from_json(out)
    assert gr.is_isomorphic(e8, od_graph(cyclic_group(8)).graph)
    _, out, _ = run(capsys, "lattice", "1")
    k1, _ = from_json(out)
    assert k1.vertex_count == 1 and k1.edge_count == 0


def test_output_is_deterministic(capsys):
    for argv in (["od", "A:4"], ["od", "D:6", "--format", "dot"], ["lattice", "60", "--extended"]):
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b


@pytest.mark.parametrize("argv", [["group", "Q:8"], ["group", "S:7"], ["od", "Z:0"], ["lattice", "0"],
                                  ["verify", "--theorem", "X1"], ["verify"]])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["od", "Z:4", "--format", "png"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [["group", "Z:600"], ["lattice", "1000"], ["--max-order", "100", "od", "D:60"],
                                  ["verify", "--theorem", "C11", "--max-n", "1000"]])
def test_caps_exit_3(capsys, argv):
    assert main(argv) == 3


def test_figure_fixtures(tmp_path, capsys):
    assert main(["figures", "--out", str(tmp_path)]) == 0
    for name, _ in FIGURES:
        assert (tmp_path / f"{name}.json").read_bytes() == (FIXTURES / f"{name}.json").read_bytes()
        assert dot_content_lines((tmp_path / f"{name}.dot").read_text()) == \
            dot_content_lines((FIXTURES / f"{name}.dot").read_text())


def test_fig1_is_star_centred_at_identity():
    graph, doc = from_json((FIXTURES / "fig1.json").read_text())
    assert graph.vertex_count == 6 and gr.is_star(graph) == 0
    assert doc["vertices"][0]["order"] == 1


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "C11")
    assert code == 0 and out.strip().endswith("1/1 pass")
    code, out, _ = run(capsys, "verify", "--theorem", "C12", "--max-n", "20")
    assert code == 1 and "Z:1" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "T7", "--theorem", "T9", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] == doc["total"] == 2
    assert [r["theorem_id"] for r in doc["reports"]] == ["T7", "T9"]
    assert "elapsed" not in doc["reports"][0]
    _, again, _ = run(capsys, "verify", "--theorem", "T7", "--theorem", "T9", "--json")
    assert again == out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "ordiv", "group", "Z:4"], capture_output=True, text=True)
    assert res.returncode == 0 and "order classes: 1:1, 2:1, 4:2" in res.stdout
