import json
import math

import pytest

from hermicert.cli import main

SQRT2 = math.sqrt(2)


def write(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


@pytest.fixture
def files(tmp_path):
    paths = {}
    paths["sys"] = write(
        tmp_path / "sys.json", {"variables": ["x"], "polynomials": ["x^2-2"]}
    )
    paths["roots"] = write(
        tmp_path / "roots.json",
        {
            "accuracy_E": "1e-10",
            "bound_M": "2",
            "points": [[[repr(SQRT2), "0"]], [[repr(-SQRT2), "0"]]],
        },
    )
    paths["tmp"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_build_writes_expected_matrix(files, capsys):
    code, payload = run(capsys, "build", "--system", files["sys"], "--roots", files["roots"])
    assert code == 0
    assert payload["entries"] == [["2", "0", "4"], ["0", "4", "0"], ["4", "0", "8"]]
    assert payload["basis"] == ["1", "x"]
    assert payload["labels"] == ["1", "x", "x^2"]
    assert payload["provenance"]["k"] == 2


def test_certify_reports_certified(files, capsys, tmp_path):
    herm = str(tmp_path / "herm.json")
    assert main(["build", "--system", files["sys"], "--roots", files["roots"], "--out", herm]) == 0
    capsys.readouterr()
    code, report = run(capsys, "certify", "--system", files["sys"], "--hermite", herm, "--g", "x")
    assert code == 0
    assert report["status"] == "certified"
    assert report["mult_matrices"][0]["entries"] == [["0", "2"], ["1", "0"]]
    assert report["signatures"] == {"H1": 2, "Hg": 0}


def test_certify_fail_exit_code(files, capsys, tmp_path):
    herm = str(tmp_path / "herm.json")
    main(["build", "--system", files["sys"], "--roots", files["roots"], "--out", herm])
    data = json.loads((tmp_path / "herm.json").read_text())
    data["entries"][0][0] = "3"
    (tmp_path / "herm.json").write_text(json.dumps(data))
    capsys.readouterr()
    code, report = run(capsys, "certify", "--system", files["sys"], "--hermite", herm)
    assert code == 3
    assert report["status"] == "fail"
    assert isinstance(report["failed_step"], int)


def test_ball_verdicts_and_exit_codes(files, capsys, tmp_path):
    herm = str(tmp_path / "herm.json")
    main(["build", "--system", files["sys"], "--roots", files["roots"], "--out", herm])
    capsys.readouterr()
    code, v = run(
        capsys, "ball", "--system", files["sys"], "--hermite", herm,
        "--center", "7/5", "--eps2", "1/100",
    )
    assert code == 0 and v["verdict"] == "true" and (v["sigma_H1"], v["sigma_Hg"]) == (2, 0)
    code, v = run(
        capsys, "ball", "--system", files["sys"], "--hermite", herm,
        "--center", "7/5", "--eps2", "1/10000",
    )
    assert code == 4 and v["verdict"] == "false" and (v["sigma_H1"], v["sigma_Hg"]) == (2, 2)


def test_count_real(files, capsys, tmp_path):
    herm = str(tmp_path / "herm.json")
    main(["build", "--system", files["sys"], "--roots", files["roots"], "--out", herm])
    capsys.readouterr()
    code, v = run(capsys, "count-real", "--system", files["sys"], "--hermite", herm)
    assert code == 0 and v["real_root_count"] == 2


def test_nonneg_verdicts(tmp_path, capsys):
    circle = write(
        tmp_path / "circle.json", {"variables": ["x", "y"], "polynomials": ["x^2+y^2-1"]}
    )
    lroots = write(
        tmp_path / "lroots.json",
        {
            "accuracy_E": "1e-8",
            "bound_M": "2",
            "points": [
                [["1", "0"], ["0", "0"], ["-0.5", "0"]],
                [["-1", "0"], ["0", "0"], ["0.5", "0"]],
            ],
        },
    )
    code, v = run(
        capsys, "nonneg", "--system", circle, "--g", "x+2", "--roots", lroots,
        "--assume-smooth-bounded",
    )
    assert code == 0 and v["verdict"] == "true"
    assert v["sigma_Hg"] == 2 and v["sigma_Hg2"] == 2
    assert v["bezout_bound"] == 8
    assert v["lagrange_system"]["variables"] == ["x", "y", "l1"]
    assert v["assume_smooth_bounded"] is True
    code, v = run(capsys, "nonneg", "--system", circle, "--g", "x", "--roots", lroots)
    assert code == 4 and v["verdict"] == "false"
    assert (v["sigma_Hg"], v["sigma_Hg2"]) == (0, 2)


def test_refine_moves_points_to_roots(tmp_path, capsys):
    sys_path = write(tmp_path / "s.json", {"variables": ["x"], "polynomials": ["x^2-2"]})
    rough = write(
        tmp_path / "rough.json",
        {"accuracy_E": "1e-1", "bound_M": "2", "points": [[["1.5", "0"]], [["-1.4", "0"]]]},
    )
    code, v = run(capsys, "refine", "--system", sys_path, "--roots", rough, "--iters", "4")
    assert code == 0
    assert abs(float(v["points"][0][0][0]) - SQRT2) < 1e-12
    assert abs(float(v["points"][1][0][0]) + SQRT2) < 1e-12
    assert len(v["residuals"]) == 2


def test_filter_roots_cli(tmp_path, capsys):
    sys_a = write(
        tmp_path / "sa.json", {"variables": ["x", "y"], "polynomials": ["x^2-1", "y^2-1"]}
    )
    sys_b = write(
        tmp_path / "sb.json", {"variables": ["x", "y"], "polynomials": ["x^2-1", "x+y"]}
    )
    roots_a = write(
        tmp_path / "ra.json",
        {
            "accuracy_E": "1e-9",
            "bound_M": "2",
            "points": [
                [["1", "0"], ["1", "0"]],
                [["1", "0"], ["-1", "0"]],
                [["-1", "0"], ["1", "0"]],
                [["-1", "0"], ["-1", "0"]],
            ],
            "radii": ["1e-6", "1e-6", "1e-6", "1e-6"],
        },
    )
    roots_b = write(
        tmp_path / "rb.json",
        {
            "accuracy_E": "1e-9",
            "bound_M": "2",
            "points": [[["1", "0"], ["-1", "0"]], [["-1", "0"], ["1", "0"]]],
            "radii": ["1e-6", "1e-6"],
        },
    )
    code, v = run(
        capsys, "filter-roots", "--system", sys_a, "--system", sys_b,
        "--roots", roots_a, "--roots", roots_b,
    )
    assert code == 0
    assert len(v["points"]) == 2
    assert v["inconclusive"] is False


def test_reconstruct_rational_cli(capsys):
    code, v = run(capsys, "reconstruct-rational", "0.3333333", "100")
    assert code == 0 and v["result"] == "1/3"
    code, v = run(capsys, "reconstruct-rational", "0.707106781", "10")
    assert code == 2 and v["result"] is None


def test_nonradical_build_and_certify(tmp_path, capsys):
    sys3 = write(tmp_path / "s3.json", {"variables": ["x"], "polynomials": ["x^3-3*x+2"]})
    roots3 = write(
        tmp_path / "r3.json",
        {
            "accuracy_E": "1e-8",
            "bound_M": "3",
            "points": [[["1", "0"]], [["1", "0"]], [["-2", "0"]]],
        },
    )
    basis3 = write(tmp_path / "b3.json", {"monomials": ["1", "x", "x^2"]})
    herm3 = str(tmp_path / "h3.json")
    code = main(
        ["build", "--system", sys3, "--roots", roots3, "--basis", basis3, "--out", herm3]
    )
    assert code == 0
    capsys.readouterr()
    data = json.loads((tmp_path / "h3.json").read_text())
    assert data["kbar"] == 2 and data["basis"] == ["1", "x"] and data["provenance"]["k"] == 3
    code, report = run(capsys, "certify", "--system", sys3, "--hermite", herm3)
    assert code == 0 and report["status"] == "certified"
    assert report["H1"]["entries"] == [["2", "-1"], ["-1", "5"]]
    assert report["weighted_H1"]["entries"] == [["3", "0"], ["0", "6"]]
    assert report["mult_matrices"][0]["entries"] == [["0", "2"], ["1", "-1"]]


def test_pipeline_with_ball(files, capsys):
    code, v = run(
        capsys, "pipeline", "--system", files["sys"], "--roots", files["roots"],
        "--g", "x", "--center", "7/5", "--eps2", "1/100",
    )
    assert code == 0
    assert v["real_root_count"] == 2
    assert v["ball"]["verdict"] == "true"
    assert v["certificate"]["status"] == "certified"


def test_bad_json_is_usage_error(tmp_path, files, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, v = run(capsys, "build", "--system", str(bad), "--roots", files["roots"])
    assert code == 1 and "error" in v


def test_missing_file_is_usage_error(files, capsys):
    code, v = run(capsys, "build", "--system", "/nonexistent.json", "--roots", files["roots"])
    assert code == 1 and "error" in v


def test_construction_failure_exit_code(tmp_path, capsys):
    sys_path = write(tmp_path / "s.json", {"variables": ["x"], "polynomials": ["x^2-2"]})
    # duplicated points cannot yield a well-conditioned basis
    dup = write(
        tmp_path / "dup.json",
        {"accuracy_E": "1e-6", "bound_M": "2", "points": [[["0.5", "0"]], [["0.5", "0"]]]},
    )
    code, v = run(capsys, "build", "--system", sys_path, "--roots", dup)
    assert code == 2 and "error" in v


def test_reconstruction_failure_exit_code(tmp_path, capsys):
    sys_path = write(tmp_path / "s.json", {"variables": ["x"], "polynomials": ["x^2-2"]})
    basis = write(tmp_path / "b.json", {"monomials": ["1", "x"]})
    # accuracy far too poor: degree-4 bound 2*E*k*n*d*M^(d-1) >= 1
    coarse = write(
        tmp_path / "coarse.json",
        {
            "accuracy_E": "0.01",
            "bound_M": "2",
            "points": [[[repr(SQRT2), "0"]], [[repr(-SQRT2), "0"]]],
        },
    )
    code, v = run(capsys, "build", "--system", sys_path, "--roots", coarse, "--basis", basis)
    assert code == 2
    assert v["error"]["type"] == "ReconstructionFailedError"


def test_outputs_are_byte_identical_across_runs(files, tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    argv = ["build", "--system", files["sys"], "--roots", files["roots"]]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
