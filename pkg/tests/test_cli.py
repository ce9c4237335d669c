import io

import pytest

from toric_implicit.cli import run
from toric_implicit.exactpoly import format_poly
from toric_implicit.parsing import parse_polynomial

from conftest import FIXTURES


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def kv(text, sep=": "):
    return dict(line.split(sep, 1) for line in text.splitlines() if sep in line)


def test_bounds_example2(fixture_path):
    code, out = call("bounds", fixture_path("example2.json"))
    d = kv(out)
    assert code == 0
    assert d["nu0_projective"] == "5" and d["nu0_multiprojective"] == "2"
    assert d["seed"] == "0"


def test_matrix_header_example1(fixture_path):
    code, out = call("matrix", fixture_path("example1.json"), "--nu", "3")
    header = out.splitlines()[0].split()
    assert code == 0 and header[:2] == ["34", "51"]
    assert header[2:] == ["X1", "Y1", "X2", "Y2", "X3", "Y3"]
    r, c, _, form = out.splitlines()[1].split(" ", 3)
    assert parse_polynomial(form, header[2:]).total_degree() == 1


def test_verify_example3(fixture_path):
    code, out = call("verify", fixture_path("example3.json"), "--H", fixture_path("example3_H.txt"),
                     "--G", fixture_path("example3_G.txt"), "--k", "2")
    assert code == 0 and kv(out)["result"] == "PASS"
    code, out = call("verify", fixture_path("example3.json"), "--H", fixture_path("example3_H.txt"),
                     "--G", fixture_path("example3_G.txt"), "--k", "1")
    assert code == 1 and kv(out)["result"] == "FAIL"


def test_machine_format(fixture_path):
    code, out = call("verify", fixture_path("cuspidal.json"), "--H", fixture_path("cuspidal_H.txt"),
                     "--format", "machine")
    assert code == 0 and kv(out, "\t")["result"] == "PASS"


def test_implicit_and_oracle_agree(fixture_path):
    _, out = call("implicit", fixture_path("cuspidal.json"))
    assert kv(out)["implicit"] == "X0*X2^2 - X1^3"
    _, out = call("oracle", fixture_path("cuspidal.json"))
    assert kv(out)["implicit"] == "X1^3 - X2^2"


def test_membership_cli(fixture_path):
    _, out = call("membership", fixture_path("cuspidal.json"), "--point", "1,1,1")
    assert kv(out)["on_hypersurface"] == "true"
    _, out = call("membership", fixture_path("cuspidal.json"), "--point", "1,2,3/7")
    assert kv(out)["on_hypersurface"] == "false"


def test_polytope_example3(fixture_path):
    code, out = call("polytope", fixture_path("example3.json"))
    d = kv(out)
    assert d["newton_lattice_points"] == "12"
    assert d["lattice_index"] == "2" and d["gamma"] == "1" and d["normal"] == "true"


def test_errors_exit_2(fixture_path, tmp_path, capsys):
    assert call("implicit", fixture_path("example1.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("bounds", str(bad))[0] == 2
    with pytest.raises(SystemExit) as info:
        run(["frobnicate"])
    assert info.value.code == 2


def test_deterministic_output(fixture_path):
    args = ("verify", fixture_path("example3.json"), "--H", fixture_path("example3_H.txt"),
            "--G", fixture_path("example3_G.txt"), "--k", "2", "--seed", "4")
    assert call(*args) == call(*args)
    assert "seed: 4" in call(*args)[1]


def test_canonical_text_round_trip():
    roster = ("X1", "Y1", "X2", "Y2", "X3", "Y3", "X4", "Y4")
    H = parse_polynomial(open(FIXTURES / "example3_H.txt").read(), roster)
    assert parse_polynomial(format_poly(H), roster) == H
