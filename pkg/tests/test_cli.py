import json

import pytest

from artinwpd.cli import EXIT_CHECK, EXIT_INPUT, EXIT_OK, InputError, RunConfig, main
from artinwpd.defgraph import format_graph
from graphs import commuting_edge, g4, star

G4_TEXT = """# four generators, two factors
vertices: a b c d
edge: a c 3
edge: a d 2
edge: b c 2
edge: b d 2
"""


@pytest.fixture
def g4_file(tmp_path):
    path = tmp_path / "g4.txt"
    path.write_text(G4_TEXT)
    return path


def test_g4_file_parses_to_the_builder_graph(g4_file):
    from artinwpd.defgraph import parse_graph

    assert parse_graph(g4_file.read_text()) == g4()


def test_classify(g4_file, capsys):
    assert main(["classify", str(g4_file)]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "eligible"
    assert report["k"] == 2


def test_construct_prints_certificate(g4_file, capsys):
    assert main(["construct", str(g4_file)]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert "".join(doc["gamma"]["letters"]) == "acabdacbd" * 2
    assert doc["counts"]["gamma_length"] == 18


def test_construct_is_byte_stable(g4_file, tmp_path):
    first, second = tmp_path / "1.json", tmp_path / "2.json"
    assert main(["construct", str(g4_file), "-o", str(first)]) == EXIT_OK
    assert main(["construct", str(g4_file), "-o", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_construct_then_verify(g4_file, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert main(["construct", str(g4_file), "-o", str(cert)]) == EXIT_OK
    assert main(["verify", str(cert)]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is True


def test_tampered_certificate_names_the_step(g4_file, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    main(["construct", str(g4_file), "-o", str(cert)])
    doc = json.loads(cert.read_text())
    doc["key4"]["steps"][5]["tag"] = "KEY0-1" if doc["key4"]["steps"][5]["tag"] != "KEY0-1" else "KEY"
    cert.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", str(cert)]) == EXIT_CHECK
    err = capsys.readouterr().err
    assert "verification failed at steps[5]" in err


def test_lcm_flag(g4_file, capsys):
    assert main(["construct", str(g4_file), "--lcm"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert "".join(doc["gamma"]["letters"]) == "acabd" * 2


def test_ineligible_graph_exits_one(tmp_path, capsys):
    path = tmp_path / "star.txt"
    path.write_text(format_graph(star(3)))
    assert main(["construct", str(path)]) == EXIT_CHECK
    assert "not eligible" in capsys.readouterr().err


@pytest.mark.parametrize(
    "text",
    [
        "vertices: a b\nedge: a b 1\n",
        "vertices: a\nedge: a z 3\n",
        "nonsense\n",
        "vertices: a a\n",
    ],
)
def test_malformed_graphs_exit_two(tmp_path, capsys, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    assert main(["classify", str(path)]) == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error:")


def test_missing_file_exits_two(tmp_path):
    assert main(["construct", str(tmp_path / "absent.txt")]) == EXIT_INPUT


def test_verify_rejects_non_json(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    assert main(["verify", str(path)]) == EXIT_INPUT


def test_negative_radius_is_an_input_error(g4_file):
    assert main(["shadow", str(g4_file), "-R", "-1"]) == EXIT_INPUT


def test_config_validation():
    with pytest.raises(InputError):
        RunConfig("shadow", radius=-2)
    with pytest.raises(InputError):
        RunConfig("construct", exact_limit=1)
    with pytest.raises(InputError):
        RunConfig("dihedral-sweep", m_max=2)


def test_dihedral_sweep_table(capsys):
    assert main(["dihedral-sweep", "100"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "m,passed,cases,order"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 98
    assert all(r[1] == "true" for r in rows)
    assert [int(r[3]) for r in rows if r[3]] == [2 * m for m in range(3, 13)]


def test_dihedral_sweep_figures(tmp_path):
    csv_path, png = tmp_path / "sweep.csv", tmp_path / "sweep.png"
    assert main(["dihedral-sweep", "20", "--csv", str(csv_path), "--png", str(png)]) == EXIT_OK
    assert csv_path.read_text().splitlines()[0] == "m,passed,cases,order"
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_shadow_outputs(g4_file, tmp_path, capsys):
    dot, png = tmp_path / "s.dot", tmp_path / "s.png"
    assert main(["shadow", str(g4_file), "-R", "2", "--dot", str(dot), "--png", str(png)]) == EXIT_OK
    result = json.loads(capsys.readouterr().out)
    assert result["wording"] == "W-shadow verified"
    assert result["statistics"]["vertices"] == 81
    assert result["coset_checks"]["ok"]
    assert dot.read_text().startswith("graph shadow {")
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_shadow_on_ineligible_graph(tmp_path, capsys):
    path = tmp_path / "edge.txt"
    path.write_text(format_graph(commuting_edge()))
    assert main(["shadow", str(path), "-R", "2"]) == EXIT_OK
    result = json.loads(capsys.readouterr().out)
    assert result["coset_checks"] is None
    assert result["statistics"]["vertices"] == 9
