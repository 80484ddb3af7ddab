import json

from click.testing import CliRunner

from smallres.cli import EXIT_FAIL, EXIT_USAGE, cli, main, parse_real, parse_t_list


def run(tmp_path, *args):
    return CliRunner().invoke(cli, ["--quiet", "--out-dir", str(tmp_path), *args], standalone_mode=False)


def test_parse_real():
    assert parse_real("2/3") == 2 / 3
    assert abs(parse_real("cbrt(1/2)") - 0.5 ** (1 / 3)) < 1e-15
    assert parse_real("(1/2)^(1/3)") == 0.5 ** (1 / 3)
    assert parse_t_list("2/3, cbrt(1/2), 0.95") == [2 / 3, 0.5 ** (1 / 3), 0.95]


def test_help_lists_subcommands():
    out = CliRunner().invoke(cli, ["--help"]).output
    for name in ("versal-identity", "discriminant", "resolution", "charts", "classify",
                 "example-singularities", "figures", "boundary-limit", "all"):
        assert name in out


def test_classify_family(tmp_path):
    res = run(tmp_path, "classify", "--family", "b1=-2t,b2=0,b4=t,g3=i*t^2")
    assert res.return_value == 0
    data = json.loads((tmp_path / "report-classify.json").read_text())
    assert any("T(3,3,6)" in c["claim"] for c in data["checks"])


def test_figures_writes_svg(tmp_path):
    res = run(tmp_path, "figures", "--k", "2", "--m", "6", "--eps", "1", "--t", "2/3", "--resolution", "200")
    assert res.return_value == 0
    assert (tmp_path / "curve_k2_m6_0.svg").exists()


def test_example_singularities(tmp_path):
    assert run(tmp_path, "example-singularities", "--k", "1", "--m", "3").return_value == 0


def test_usage_errors(tmp_path):
    assert main(["--out-dir", str(tmp_path), "example-singularities", "--m", "3"]) == EXIT_USAGE
    assert main(["--out-dir", str(tmp_path), "figures", "--t", "abc"]) == EXIT_USAGE
    assert main(["--out-dir", str(tmp_path), "classify", "--family", "b1=t"]) == EXIT_USAGE
    assert main(["--out-dir", str(tmp_path), "nonsense"]) == EXIT_USAGE


def test_boundary_limit_exit_status(tmp_path):
    # |S| decays like sqrt(t): above 1e-3 at t = 1e-4, so the run reports a failed check
    assert main(["--quiet", "--out-dir", str(tmp_path), "boundary-limit"]) == EXIT_FAIL
    data = json.loads((tmp_path / "report-boundary-limit.json").read_text())
    statuses = {c["name"]: c["status"] for c in data["checks"]}
    assert statuses["boundary-limit.limit.P.w=(1+i)"] == "pass"
    assert statuses["boundary-limit.limit.S.w=i"] == "pass"
