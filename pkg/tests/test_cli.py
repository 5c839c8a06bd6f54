import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from metaplectic import cli
from metaplectic.checks import CheckResult
from metaplectic.fock import FockPolynomial
from metaplectic.matrix_io import matrix_from_json, matrix_to_json, polynomial_from_json, polynomial_to_json

from helpers import random_group_element


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr()


def test_decompose_identity(tmp_path, capsys):
    path = write(tmp_path, "g.json", matrix_to_json(np.eye(4)))
    code, out = run(["decompose", path], capsys)
    assert code == 0
    assert json.loads(out.out)["lambdas"] == [0.0, 0.0]


def test_compactify_command(tmp_path, capsys):
    t = 0.5
    path = write(tmp_path, "g.json", matrix_to_json(np.diag([np.exp(t), np.exp(-t)])))
    code, out = run(["compactify", path], capsys)
    data = json.loads(out.out)
    assert code == 0
    assert np.allclose(matrix_from_json(data["s"])[0, 0], np.tanh(t))
    assert np.isclose(np.cos(data["thetas"][0]), np.tanh(t))


def test_matcoef_identity(tmp_path, capsys):
    one = write(tmp_path, "one.json", polynomial_to_json(FockPolynomial.constant(1)))
    code, out = run(["matcoef", "--phi", one, "--psi", one], capsys)
    data = json.loads(out.out)
    assert code == 0 and data["coefficient"] == [1.0, 0.0]
    assert data["bound"] >= 1


def test_matcoef_lift_sign(tmp_path, capsys):
    rng = np.random.default_rng(1)
    g = write(tmp_path, "g.json", matrix_to_json(random_group_element(1, rng)))
    z = write(tmp_path, "z.json", polynomial_to_json(FockPolynomial.monomial((1,))))
    _, plus = run(["matcoef", "--phi", z, "--psi", z, "--matrix", g], capsys)
    _, minus = run(["matcoef", "--phi", z, "--psi", z, "--matrix", g, "--lift-sign", "-1"], capsys)
    a, b = json.loads(plus.out)["coefficient"], json.loads(minus.out)["coefficient"]
    assert np.allclose(a, [-x for x in b])


def test_weights_assign(capsys):
    code, out = run(["weights", "assign", "--scheme", "half-cover:+2p", "--lambda", "4,2"], capsys)
    assert code == 0
    assert json.loads(out.out)["blocks"]["half-cover:+2p"]["p"] == 1


def test_weights_certify_csv(tmp_path, capsys):
    out_path = tmp_path / "cert.csv"
    code, _ = run(["--out", str(out_path), "weights", "certify", "--n", "1", "--bound", "4",
                   "--scheme", "odd-cover:+p", "--csv"], capsys)
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "scheme,lambda,p" and len(lines) == 1 + 15


def test_verify_weights_suite(capsys):
    code, out = run(["verify", "--suite", "weights", "--n", "2", "--bound", "10"], capsys)
    report = json.loads(out.out)
    assert code == 0 and all(r["passed"] for r in report["results"])
    assert "seed" in report


def test_verify_injected_failure(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", {"quadrature": {"grid_nodes": 8, "radial_nodes": 64},
                                       "tolerances": {"jacobian": 1e-30}})
    code, out = run(["verify", "--suite", "jacobian", "--n", "1", "--config", cfg], capsys)
    assert code == 2
    assert not json.loads(out.out)["results"][0]["passed"]


@given(st.lists(st.booleans(), min_size=1, max_size=6))
def test_exit_code_reflects_report(flags):
    results = [CheckResult(f"c{i}", 0.0, 1.0, f) for i, f in enumerate(flags)]
    assert cli.exit_code_for(results) == (0 if all(flags) else 2)


def test_validation_errors(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", {"rows": [[2.0, 0.0], [0.0, 3.0]]})
    assert run(["decompose", bad], capsys)[0] == 1
    assert run(["decompose", str(tmp_path / "missing.json")], capsys)[0] == 1
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    code, out = run(["decompose", str(junk)], capsys)
    assert code == 1 and "invalid JSON" in out.err
    assert run(["weights", "assign", "--lambda", "1,0"], capsys)[0] == 1


def test_unknown_flag_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["decompose", "--frobnicate"])
    assert exc.value.code == 1


@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_matrix_json_round_trip(seed, n):
    rng = np.random.default_rng(seed)
    g = random_group_element(n, rng)
    assert np.array_equal(matrix_from_json(json.loads(json.dumps(matrix_to_json(g)))), g)
    k = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    assert np.array_equal(matrix_from_json(json.loads(json.dumps(matrix_to_json(k, n)))), k)


def test_polynomial_json_round_trip():
    f = FockPolynomial(2, {(1, 0): 1 + 2j, (0, 3): -0.5})
    g = polynomial_from_json(json.loads(json.dumps(polynomial_to_json(f))))
    assert g == f
