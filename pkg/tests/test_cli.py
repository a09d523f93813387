"""CLI contract: exit codes, schema validation, determinism, batch isolation."""

import json

from tateshift.cli import (
    EXIT_COMPUTE,
    EXIT_OK,
    EXIT_VALIDATION,
    dumps,
    main,
    run_batch,
    run_job,
)


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_blueshift_cube_example(capsys):
    code, report = run_cli(
        capsys, ["blueshift", '{"p":2,"A":[2,2,2],"C":[1,1,1]}']
    )
    assert code == EXIT_OK
    assert report["lower_t"] == 2
    assert report["upper_rank"] == 3


def test_blueshift_flags_equivalent(capsys):
    code, report = run_cli(
        capsys, ["blueshift", "--p", "3", "--A", "2,2,2", "--C", "1,1,1"]
    )
    assert code == EXIT_OK
    assert report["lower_t"] == 2


def test_blueshift_explain_scan(capsys):
    code, report = run_cli(
        capsys, ["blueshift", '{"p":2,"A":[2,2,2],"C":[1,1,1]}', "--explain"]
    )
    assert code == EXIT_OK
    scan = {row["j"]: row["term"] for row in report["j_scan"]}
    assert scan[2] == 2 and scan[1] == 0


def test_tate_honda_zero_certificate(capsys):
    code, report = run_cli(
        capsys, ["tate", '{"p":2,"A":[1],"C":[1]}', "--fgl", "honda", "--n", "1"]
    )
    assert code == EXIT_OK
    assert report["status"] == "ZERO"
    assert report["witness"]["certificate"]["length"] == 2


def test_fgl_four_series_mod4(capsys):
    code, report = run_cli(
        capsys,
        ["fgl", "--kind", "multiplicative", "--p", "2", "--modulus-power", "2",
         "--j", "2"],
    )
    assert code == EXIT_OK
    terms = report["pj_series"]["series"]["terms"]
    assert terms == [
        {"coeff": "2", "exp": [2]},
        {"coeff": "1", "exp": [4]},
    ]


def test_roots_scalar_job(capsys):
    job = json.dumps({"modulus": 7, "f": ["2", "4", "1"], "tuple": ["1", "2"]})
    code, report = run_cli(capsys, ["roots", job])
    assert code == EXIT_OK
    assert report["case"] == "Vieta"
    assert report["recovered"] == [["2"], ["4"]]


def test_roots_cramer_job_with_witnesses(capsys):
    job = json.dumps(
        {"modulus": 5, "f": ["0", "4", "0", "1"], "tuple": ["1", "4"]}
    )
    code, report = run_cli(capsys, ["roots", job, "--explain"])
    assert code == EXIT_OK
    assert report["case"] == "Cramer"
    assert report["recovered"] == [["0"], ["4"]]
    assert report["witnesses"]["det_vandermonde"] == ["3"]
    assert report["elimination_trace"]


def test_roots_invalid_tuple_reported(capsys):
    job = json.dumps({"modulus": 4, "f": ["0", "0", "1"], "tuple": ["0", "1"]})
    code, report = run_cli(capsys, ["roots", job])
    assert code == EXIT_OK
    assert report["tuple_valid"] is False


def test_vanish_cert_exact_ring(capsys):
    job = json.dumps({
        "ring": {"type": "exact", "vars": ["x1", "x2"],
                 "relations": [["-1", "0", "1"], ["-1", "0", "1"]]},
        # monomial order 1, x1, x2, x1*x2: gens x1-1, x2-1, x1x2-1
        "gens": [["-1", "1", "0", "0"], ["-1", "0", "1", "0"],
                 ["-1", "0", "0", "1"]],
        "max_len": 4,
    })
    code, report = run_cli(capsys, ["vanish-cert", job])
    assert code == EXIT_OK
    assert report["found"] is True
    assert report["length"] == 3
    assert report["product_is_zero"] is True


def test_schema_rejects_unknown_field():
    code, report = run_job("blueshift", {"p": 2, "A": [1], "C": [1], "bogus": 1})
    assert code == EXIT_VALIDATION
    assert "bogus" in report["error"]["message"]


def test_schema_rejects_missing_field():
    code, report = run_job("blueshift", {"p": 2, "A": [1]})
    assert code == EXIT_VALIDATION


def test_computation_error_carries_module_name():
    # cap too small for the requested p^j-series
    code, report = run_job(
        "fgl",
        {"kind": "multiplicative", "p": 2, "modulus_power": 2, "cap": 2, "j": 3},
    )
    assert code == EXIT_COMPUTE
    assert report["error"]["name"] == "CapTooSmall"
    assert report["error"]["module"] == "fgl"


def test_byte_stable_output(capsys):
    argv = ["bgroup", "--p", "2", "--exponents", "1,1", "--fgl", "honda",
            "--n", "1", "--euler-classes"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second


def test_batch_empty_file(tmp_path):
    path = tmp_path / "jobs.ndjson"
    path.write_text("")
    code, report = run_batch(path.read_text().splitlines())
    assert code == EXIT_OK
    assert report == {"jobs": []}


def test_batch_two_jobs_in_order(tmp_path):
    lines = [
        json.dumps({"command": "blueshift",
                    "params": {"p": 2, "A": [2], "C": [1]}}),
        json.dumps({"command": "blueshift",
                    "params": {"p": 2, "A": [1, 1], "C": [1, 1]}}),
    ]
    code, report = run_batch(lines)
    assert code == EXIT_OK
    assert [j["line"] for j in report["jobs"]] == [1, 2]
    assert report["jobs"][0]["report"]["exact"] == 1
    assert report["jobs"][1]["report"]["exact"] == 2


def test_batch_isolates_invalid_job():
    lines = [
        json.dumps({"command": "blueshift",
                    "params": {"p": 2, "A": [2], "C": [1]}}),
        "{not json",
    ]
    code, report = run_batch(lines)
    assert code == EXIT_VALIDATION
    assert report["jobs"][0]["exit_code"] == EXIT_OK
    assert report["jobs"][0]["report"]["exact"] == 1
    assert report["jobs"][1]["exit_code"] == EXIT_VALIDATION


def test_batch_out_files(tmp_path):
    out = tmp_path / "report.json"
    lines = [
        json.dumps({"command": "blueshift",
                    "params": {"p": 2, "A": [2], "C": [1]},
                    "out": str(out)}),
    ]
    code, report = run_batch(lines)
    assert code == EXIT_OK
    assert json.loads(out.read_text())["exact"] == 1


def test_batch_rejects_unknown_job_fields():
    lines = [json.dumps({"command": "blueshift", "params": {}, "extra": 1})]
    code, report = run_batch(lines)
    assert code == EXIT_VALIDATION


def test_ring_json_roundtrip_byte_stable():
    from tateshift import ring_core

    alg = ring_core.FiniteAlgebra.from_presentation(
        ring_core.BaseModulus(4), ["x", "y"], [[0, 2, 1], [0, 0, 1]]
    )
    blob = dumps(ring_core.algebra_to_json(alg))
    again = ring_core.algebra_from_json(json.loads(blob))
    assert dumps(ring_core.algebra_to_json(again)) == blob
    e = again.gen(0) + again.from_int(3)
    coords = ring_core.element_to_json(e)
    assert ring_core.element_from_json(again, coords) == e


def test_env_var_default_cap(capsys, monkeypatch):
    monkeypatch.setenv("TATESHIFT_CAP", "9")
    code, report = run_cli(
        capsys, ["fgl", "--kind", "multiplicative", "--p", "2",
                 "--modulus-power", "2"]
    )
    assert code == EXIT_OK
    assert report["F"]["cap"] == 9
    monkeypatch.setenv("TATESHIFT_CAP", "banana")
    code, report = run_cli(
        capsys, ["fgl", "--kind", "multiplicative", "--p", "2"]
    )
    assert code == EXIT_VALIDATION


def test_periodicity_certificate_reaches_bounds_report():
    from tateshift.classifying import AbelianPGroup, SubgroupSpec
    from tateshift.tate_blueshift import build_law, periodicity_report

    law = build_law("honda", 2, n=1, exponents=[1])
    report = periodicity_report(law, AbelianPGroup(2, [1]), SubgroupSpec([1]))
    cert = report["bounds"]["vanishing_certificate"]
    assert cert["length"] == 2


def test_roots_presented_ring(capsys):
    # Z/4[x]/(x^2+2x): f = y^2 - y with roots {0, 1}, a Vieta case
    job = json.dumps({
        "ring": {"base": "4", "vars": ["x"], "relations": [["0", "2", "1"]]},
        "f": [["0", "0"], ["3", "0"], ["1", "0"]],
        "tuple": [["0", "0"], ["1", "0"]],
    })
    code, report = run_cli(capsys, ["roots", job])
    assert code == EXIT_OK
    assert report["case"] == "Vieta"
    assert report["recovered"] == [["0", "0"], ["3", "0"]]


def test_tate_exact_mode_cli(capsys):
    code, report = run_cli(
        capsys,
        ["tate", '{"p":2,"A":[1,1],"C":[1,1]}', "--exact", "--max-cert-len", "5"],
    )
    assert code == EXIT_OK
    assert report["status"] == "ZERO"
    assert report["mode"] == "exact"
    assert report["witness"]["certificate"]["length"] == 3
