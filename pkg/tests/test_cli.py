import json
import shutil
import subprocess

import pytest

from ncsys.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, diffop_system_from_json, run
from ncsys.diffop import FormalMap, omega_Ft
from ncsys.ncs import system_from_json, verify_ncs


def _json(capsys, argv, code=EXIT_OK):
    assert run(argv + ["--json"]) == code
    return json.loads(capsys.readouterr().out)


def test_manifest(capsys):
    assert run(["--manifest"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["version"]
    assert "polynomial" in data["grammar"]
    assert data["defaults"]["degree"] == 6


def test_invert_catalan(capsys):
    out = _json(capsys, ["invert", "--map", "z - t*z^2", "--order", "4", "--commutative", "--tree-expansion"])
    text = json.dumps(out)
    for c in ("2*z^3", "5*z^4", "14*z^5"):
        assert c in text


def test_dlog_text(capsys):
    assert run(["dlog", "--map", "z - t*z^2", "--order", "4", "--commutative"]) == EXIT_OK
    assert "3/2*t^3*z^4" in capsys.readouterr().out


def test_cm_checks_jacobian(capsys):
    assert run(["cm", "--vars", "z1,z2", "--H", "z2^2, z1^2", "--max-m", "4", "--commutative"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "C_3 = (4*z1*z2^3, 4*z1^3*z2)" in out
    assert "agrees" in out


def test_nsym_expand(capsys):
    assert run(["nsym-expand", "--expr", "Ps2", "--basis", "L"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "L1*L1" in out and "2*L2" in out


def test_trees_enum(capsys):
    out = _json(capsys, ["trees-enum", "--labels", "1", "--max-weight", "4"])
    assert len(out) == 1 + 2 + 4 + 9
    assert run(["trees", "enum", "--labels", "1,2", "--max-weight", "2"]) == EXIT_OK
    capsys.readouterr()


def test_trees_system_json_round_trip(capsys):
    out = _json(capsys, ["trees-system", "--labels", "1,2", "--order", "3", "--verify"])
    assert out["verify"]["valid"]
    assert "terms" in out
    sys_ = system_from_json(out)
    assert verify_ncs(sys_).valid


def test_trees_rank(capsys):
    out = _json(capsys, ["trees", "rank", "--labels", "1,2,3", "--weight", "3"])
    assert out["rank"] == 4


def test_diffop_system_json_round_trip(capsys):
    argv = ["diffop-system", "--vars", "z1,z2", "--map", "z1 - t*z2*z1, z2", "--order", "3", "--degree", "4"]
    out = _json(capsys, argv + ["--verify"])
    sys_ = diffop_system_from_json(out)
    fm = FormalMap.parse("z1 - t*z2*z1, z2", ["z1", "z2"], order=3, degree=4)
    assert sys_ == omega_Ft(fm)


@pytest.mark.parametrize("argv", [
    ["verify", "--system", "trees", "--labels", "1", "--order", "4"],
    ["verify", "--system", "nsym", "--order", "4"],
    ["verify", "--system", "random", "--tag", "H", "--seed", "5"],
    ["verify", "--system", "random", "--tag", "D", "--carrier", "qq"],
    ["verify", "--system", "diffop", "--map", "z - t*z^3", "--commutative", "--order", "3"],
])
def test_verify_passes(capsys, argv):
    assert run(argv) == EXIT_OK
    assert "all residuals zero" in capsys.readouterr().out


def test_verify_file_detects_corruption(tmp_path, capsys):
    out = _json(capsys, ["trees-system", "--labels", "1", "--order", "3"])
    out["h"], out["m"] = out["m"], out["h"]
    out["h"][1] = out["h"][1] + " + (0 (1) (1))"
    path = tmp_path / "sys.json"
    path.write_text(json.dumps({k: v for k, v in out.items() if k in ("order", "carrier", *"fgdhm")}))
    assert run(["verify", "--system", "file", "--file", str(path)]) == EXIT_FAILED
    assert "FAILED" in capsys.readouterr().out


def test_translate_targets(capsys):
    assert run(["translate", "--lhs", "Ps2", "--rhs", "Ph2", "--target", "nsym"]) == EXIT_OK
    assert run(["translate", "--lhs", "Ps3", "--rhs", "Xi3", "--target", "nsym"]) == EXIT_FAILED
    assert run(["translate", "--lhs", "Ps3", "--rhs", "Xi3", "--target", "abelian"]) == EXIT_OK
    assert run(["translate", "--lhs", "S2", "--rhs", "L1*L1 - L2", "--target", "trees", "--labels", "1,2"]) == EXIT_OK
    assert run(["translate", "--lhs", "Ps3", "--rhs", "Xi3", "--target", "diffop",
                "--map", "z - t*z^2", "--commutative"]) == EXIT_FAILED
    capsys.readouterr()


def test_pair_modes(capsys):
    assert _json(capsys, ["pair", "--nsym", "Ps2", "--qsym", "M[1,1]"])["value"] == "-1"
    assert _json(capsys, ["pair", "--tree", "(0 (1) (1))", "--forest", "{(1), (1)}"])["value"] == "2"
    out = _json(capsys, ["pair", "--forest", "{(1 (2))}", "--labels", "1,2"])
    assert out["qsym"] == "M[2,1] + M[3]"


@pytest.mark.parametrize("argv", [
    ["invert", "--map", "z - t*"],
    ["invert", "--map", "z - t"],
    ["pair", "--nsym", "Ps2"],
    ["verify", "--system", "diffop"],
    ["trees-enum", "--labels", "0,1"],
    ["nosuch"],
    [],
])
def test_usage_errors_exit_one(capsys, argv):
    assert run(argv) == EXIT_USAGE
    capsys.readouterr()


def test_console_script():
    exe = shutil.which("ncs")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "nsym-expand", "--expr", "S2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "-L2 + L1*L1"
