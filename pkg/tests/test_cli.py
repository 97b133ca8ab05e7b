import json

import pytest

from discwitness.cli import main

CIRCLE = {"type": "circle", "center": [0, 0], "radius": 1}
ELLIPSE = {"type": "ellipse", "a": 2, "b": 1, "center": [0, 0], "rotation": 0}
NONCONVEX = {"type": "support_fourier", "a0": 1, "cos": [0, 0, 0.5]}
THREE_LOBE = {"type": "support_fourier", "a0": 1, "cos": [0, 0, 0.1]}


@pytest.fixture
def shape_file(tmp_path):
    def write(spec, name="shape.json"):
        path = tmp_path / name
        path.write_text(json.dumps(spec))
        return str(path)

    return write


def run(args):
    return main(args)


class TestExitCodes:
    def test_profile_circle(self, shape_file, tmp_path):
        out = tmp_path / "out.json"
        assert run(["profile", "--shape", shape_file(CIRCLE),
                    "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["verdict"] == "disc"
        assert report["fitted_circle"]["radius"] == pytest.approx(1.0)

    def test_nonconvex_is_validation_error(self, shape_file, capsys):
        assert run(["profile", "--shape", shape_file(NONCONVEX)]) == 2
        assert "NotStrictlyConvex" in capsys.readouterr().err

    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(["profile", "--shape", str(bad)]) == 2
        assert "MalformedSpec" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert run(["profile", "--shape", str(tmp_path / "nope.json")]) == 2


class TestMoments:
    def test_row_count_and_header(self, shape_file, tmp_path):
        out = tmp_path / "m.csv"
        assert run(["moments", "--shape", shape_file(ELLIPSE),
                    "--n-max", "40", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "n,frame_deg,method,re,im,log_scale,abs"
        assert len(lines) == 1 + 41 * 3

    def test_deterministic_output(self, shape_file, tmp_path):
        args = ["moments", "--shape", shape_file(ELLIPSE), "--n-max", "3"]
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        run(args + ["--out", str(out1)])
        run(args + ["--out", str(out2)])
        assert out1.read_bytes() == out2.read_bytes()


class TestSubcommands:
    def test_asymptotics_csv(self, shape_file, tmp_path):
        out = tmp_path / "a.csv"
        assert run(["asymptotics", "--shape", shape_file(ELLIPSE),
                    "--m-list", "50,100", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "m,ratio_f_abs_err,ratio_g_abs_err,combined_abs_err"
        # symmetric ellipse: combined column blank
        assert lines[1].endswith(",")

    def test_inscribed(self, shape_file, tmp_path):
        out = tmp_path / "i.json"
        assert run(["inscribed", "--shape", shape_file(ELLIPSE),
                    "--out", str(out)]) == 0
        rep = json.loads(out.read_text())
        assert rep["radius"] == pytest.approx(1.0, abs=1e-6)

    def test_identities_and_residuals(self, shape_file, tmp_path):
        out = tmp_path / "r.json"
        assert run(["identities", "--shape", shape_file(ELLIPSE),
                    "--out", str(out)]) == 0
        assert json.loads(out.read_text())["p_zero_consistent"] is True
        assert run(["residuals", "--shape", shape_file(ELLIPSE),
                    "--out", str(out)]) == 0
        assert json.loads(out.read_text())["p"] == 0

    def test_report_combined(self, shape_file, tmp_path):
        out = tmp_path / "rep.json"
        assert run(["report", "--shape", shape_file(ELLIPSE),
                    "--out", str(out)]) == 0
        rep = json.loads(out.read_text())
        assert rep["verdict"] == "not_disc"
        assert "residuals" in rep and "inscribed" in rep and "witness" in rep
        assert rep["witness"]["inequality_report"]["L_gt_two_r"] is True


class TestOptimizeRoundTrip:
    def test_optimized_shape_reloads_everywhere(self, shape_file, tmp_path):
        final = tmp_path / "final.json"
        trace = tmp_path / "trace.csv"
        assert run(["optimize", "--shape", shape_file(THREE_LOBE),
                    "--out", str(final), "--trace-out", str(trace)]) == 0
        spec = json.loads(final.read_text())
        assert spec["type"] == "support_fourier"
        header = trace.read_text().splitlines()[0]
        assert header == "iter,J,circle_distance,min_rho"
        for cmd in ("profile", "moments", "asymptotics", "inscribed",
                    "identities", "residuals", "report"):
            assert run([cmd, "--shape", str(final),
                        "--out", str(tmp_path / "x.out")]) == 0
