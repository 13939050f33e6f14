import subprocess
import sys

import pytest

from brk.cli import main
from brk.io import format_cert, load_cert


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rank_case3(capsys):
    code, out, _ = run(capsys, "rank", "case3.space")
    assert code == 0
    assert out == "bounded rank: 4 (certified by vanishing of all 5-minors)\n"


def test_rank_full(capsys):
    code, out, _ = run(capsys, "rank", "catalog:unit:3")
    assert code == 0 and out.startswith("generic rank: 3")


def test_atkinson_case4(capsys):
    code, out, _ = run(capsys, "atkinson", "case4.space", "--seed", "7")
    assert code == 0
    assert out.splitlines()[0] == "at_L=2 at_R=2 r=4; at_L+at_R ≤ r: OK"


def test_border_check(capsys):
    code, out, _ = run(capsys, "border-check", "caseIV_br9.cert", "caseIV.tensor")
    assert code == 0
    assert out == "certificate VERIFIED: R̄ ≤ 9 at scale t^6\n"


def test_border_check_failure_exit_code(capsys, tmp_path):
    d = load_cert("wstate_br2.cert")
    p = tmp_path / "w.cert"
    p.write_text(format_cert(d))
    code, out, _ = run(capsys, "border-check", str(p), "catalog:unit:2")
    assert code == 1 and out.startswith("certificate FAILED")


def test_usage_errors(capsys):
    assert run(capsys, "rank", "missing.space")[0] == 2
    assert run(capsys, "rank", "catalog:nope")[0] == 2
    assert run(capsys, "koszul", "catalog:unit:3", "--restrict-dim", "9")[0] == 2
    assert run(capsys, "border-check", "case3.space", "caseIV.tensor")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["catalog"], "case3"),
        (["catalog", "skew:5"], "space 10 5 5"),
        (["catalog", "wstate"], "tensor 2 2 2"),
        (["symmetry", "catalog:sextonion"], "dim extended symmetry algebra: 20"),
        (["kernel", "catalog:jplex_O58"], "degrees (right, left): (2, 2)"),
        (["kernel", "case3.space", "--right", "catalog:case3_d3", "--left", "catalog:case3_d1"], "2/4/2"),
        (["koszul", "catalog:skewcw2_kron_w", "--restrict-dim", "3"], "border rank ≥ 9"),
        (["strassen", "catalog:sextonion", "--factor", "B"], "border rank ≥ 9"),
        (["rnd", "case3.space"], "certified (RND(E) = E)"),
        (["kron", "catalog:skewcw2", "catalog:wstate"], "rank 4 ≤ r·m = 2·2 = 4: OK"),
        (["bounds", "catalog:case4_tensor"], "border rank determined: 9 ≤ R̄ ≤ 9"),
        (["annihilator", "catalog:koszul:4"], "linear annihilator: dimension 4"),
        (["blowup", "catalog:skewcw2_nf", "--family", "b"], "rank 4 ≤ k·r = 4: OK"),
        (["blowup", "catalog:skewcw2_nf", "--family", "random:3", "--seed", "2"], "OK"),
    ],
)
def test_subcommands(capsys, argv, needle):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert needle in out


def test_reports_are_deterministic(capsys):
    for argv in (["atkinson", "case3.space"], ["rnd", "case4.space", "--seed", "3"], ["bounds", "catalog:sextonion"]):
        first = run(capsys, *argv)
        assert run(capsys, *argv) == first


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "brk.cli", "rank", "case4.space"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "bounded rank: 4 (certified by vanishing of all 5-minors)\n"
