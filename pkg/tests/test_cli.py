import json

import pytest

from henonlat.cli import RunConfig, main, parse_int_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestParseIntList:
    def test_single(self):
        assert parse_int_list("7") == [7]

    def test_comma(self):
        assert parse_int_list("7,9,11") == [7, 9, 11]
        assert parse_int_list("-2,0,2") == [-2, 0, 2]

    def test_range(self):
        assert parse_int_list("15:21:2") == [15, 17, 19, 21]
        assert parse_int_list("-2:2") == [-2, -1, 0, 1, 2]

    def test_bad_range(self):
        with pytest.raises(ValueError):
            parse_int_list("5:1")
        with pytest.raises(ValueError):
            parse_int_list("1:5:0")
        with pytest.raises(ValueError):
            parse_int_list("1:5:2:9")


class TestRunConfig:
    def test_round_trip(self):
        cfg = RunConfig(command="sweep", d_values=[7, 9], c_values=[-1, 0],
                        grid_step="1/4", fmt="csv", seed=3,
                        iterations=500, epsilon=1e-3)
        again = RunConfig.from_json(cfg.to_json())
        assert again == cfg

    def test_validate_rejects_even_degree_dynamics(self):
        cfg = RunConfig(command="periodic", d_values=[4])
        with pytest.raises(ValueError):
            cfg.validate()

    def test_validate_rejects_bad_format(self):
        with pytest.raises(ValueError):
            RunConfig(command="poly", fmt="yaml").validate()

    def test_validate_accepts_even_degree_elsewhere(self):
        RunConfig(command="verify", d_values=[10]).validate()


class TestPolyCommands:
    def test_eval(self, capsys):
        code, out, _ = run(capsys, "poly", "eval", "--d", "3", "--x", "2")
        assert code == 0
        assert out.strip() == "-1"

    def test_eval_linear(self, capsys):
        code, out, _ = run(capsys, "poly", "eval", "--d", "1", "--x", "5")
        assert code == 0
        assert out.strip() == "5"

    def test_eval_rational_input(self, capsys):
        code, out, _ = run(capsys, "poly", "eval", "--family",
                           "compressing", "--d", "2", "--x", "1/2")
        assert out.strip() == "71/8"

    def test_coeffs(self, capsys):
        code, out, _ = run(capsys, "poly", "coeffs", "--d", "3")
        assert out.strip() == "x^3/6 - 7x/6"

    def test_table(self, capsys):
        code, out, _ = run(capsys, "poly", "table", "--d", "3")
        assert out.splitlines()[0] == "-4,-6"


class TestExitCodes:
    def test_passing_check_is_zero(self, capsys):
        code, _, _ = run(capsys, "verify", "sigma", "--dmax", "30")
        assert code == 0

    def test_failing_check_is_one(self, capsys):
        code, _, err = run(capsys, "compress", "check", "--d", "3",
                           "--m", "11")
        assert code == 1
        assert json.loads(err.splitlines()[-1])["error"] == "check_failed"

    def test_usage_error_is_two(self, capsys):
        code, _, err = run(capsys, "periodic", "--d", "4")
        assert code == 2
        assert json.loads(err.splitlines()[-1])["error"] == \
            "invalid_argument"

    def test_argparse_error_is_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["poly", "eval", "--d", "3"])
        assert exc.value.code == 2

    def test_service_rejection_is_two(self, capsys):
        code, _, err = run(capsys, "verify", "escape-padic", "--d", "5",
                           "--p", "9")
        assert code == 2
        assert json.loads(err.splitlines()[-1])["error"] == \
            "invalid_argument"

    def test_unreachable_server_is_three(self, capsys):
        # nothing listens on port 1, so the connect is refused at once
        code, _, err = run(capsys, "--server", "http://127.0.0.1:1",
                           "periodic", "--d", "7")
        assert code == 3
        assert json.loads(err.splitlines()[-1])["error"] == \
            "connection_failed"


class TestPeriodicCommand:
    def test_csv_row(self, capsys):
        code, out, _ = run(capsys, "periodic", "--d", "7")
        assert code == 0
        assert out.splitlines() == [
            "d,d_mod_6,c,count,longest_cycle,n_cycles,elapsed_ms",
            "7,1,0,49,22,13,0",
        ]

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "periodic", "--d", "7",
                           "--format", "json")
        body = json.loads(out)
        assert body["count"] == 49

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "cell.csv"
        code, out, err = run(capsys, "periodic", "--d", "7",
                             "--out", str(target))
        assert code == 0
        assert out == ""
        assert "7,1,0,49,22,13,0" in target.read_text()


class TestSweepCommand:
    def test_csv(self, capsys):
        code, out, err = run(capsys, "sweep", "--d", "7,9", "--c", "0")
        assert code == 0
        assert out.splitlines()[1:] == ["7,1,0,49,22,13,0",
                                        "9,3,0,89,20,15,0"]

    def test_mismatch_note_goes_to_stderr(self, capsys):
        code, out, err = run(capsys, "sweep", "--d", "13", "--c", "1")
        assert code == 0
        assert "longest 60 != fitted 41" in err
        assert "outside fit range" in err

    def test_byte_identical_runs(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "sweep", "--d", "7,9,11", "--c=-1:1", "--out", str(a))
        run(capsys, "sweep", "--d", "7,9,11", "--c=-1:1", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestCycleCommand:
    def test_dump(self, capsys):
        code, out, _ = run(capsys, "cycle", "dump", "--d", "3")
        body = json.loads(out)
        assert body["n_cycles"] == len(body["cycles"]) == 7


class TestHinfCommands:
    def test_periods(self, capsys):
        code, out, _ = run(capsys, "hinf", "periods", "--range", "60")
        body = json.loads(out)
        assert body["table"][0] == [4, 12, 20, 4, 20, 12]
        assert len(body["exceptions"]) == 17

    def test_orbit(self, capsys):
        code, out, _ = run(capsys, "hinf", "orbit", "--x", "1", "--y", "0",
                           "--iters", "2")
        assert out.splitlines() == ["step,x,y", "0,1,0", "1,0,-1",
                                    "2,-1,-1"]

    def test_atlas_file_and_determinism(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["hinf", "atlas", "--box", "2", "--eps", "1e-3",
                "--iters", "20", "--seed", "5"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()
        lines = a.read_text().splitlines()
        assert lines[0] == "base_x,base_y,period_class,step,x,y"
        assert len(lines) == 1 + 25 * 21

    def test_atlas_svg(self, capsys):
        code, out, _ = run(capsys, "hinf", "atlas", "--box", "1",
                           "--iters", "3", "--format", "svg")
        assert code == 0
        assert out.startswith("<svg")


class TestCompressCommands:
    def test_search(self, capsys):
        code, out, _ = run(capsys, "compress", "search", "--degree", "2",
                           "--m", "8")
        body = json.loads(out)
        assert body["polynomials"] == ["x^2/2 - 9x/2 + 11",
                                       "x^2/2 - 9x/2 + 12"]

    def test_check_pass(self, capsys):
        code, out, _ = run(capsys, "compress", "check", "--coeffs",
                           "11,-9/2,1/2", "--m", "8")
        assert code == 0
        assert json.loads(out)["passed"] is True


class TestRadiusCommand:
    def test_single_place(self, capsys):
        code, out, _ = run(capsys, "radius", "--d", "7", "--place", "inf")
        assert json.loads(out)["radius"] == "7"

    def test_exception_scan(self, capsys):
        code, out, _ = run(capsys, "radius", "--exceptions",
                           "--dmax", "99", "--pmax", "50")
        assert json.loads(out)["exceptions"] == [[2, 3]]


class TestVerifyCommands:
    def test_cd_bounds_which(self, capsys):
        code, out, _ = run(capsys, "verify", "cd-bounds", "--which",
                           "outer", "--d", "10")
        body = json.loads(out)
        assert code == 0
        assert body["reports"][0]["check"] == "cd_sup"

    def test_tail(self, capsys):
        code, out, _ = run(capsys, "verify", "tail", "--d", "7",
                           "--cap", "507")
        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_convergence(self, capsys):
        code, out, _ = run(capsys, "verify", "convergence",
                           "--kmax", "30")
        assert code == 0

    def test_eight_step(self, capsys):
        code, out, _ = run(capsys, "verify", "eight-step", "--d", "7")
        assert code == 0
        assert json.loads(out)["offsets"] == [-3]
