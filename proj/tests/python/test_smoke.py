import json
import math
import os
import subprocess

import pytest

import modelmult as mm


def test_finite_blaschke_and_kernel_norm():
    u = mm.InnerFunction.finite_blaschke([0.5, 0.3j])
    assert u.degree() == 2
    value, err = u.eval(0.1 + 0.2j)
    assert abs(value) < 1 and err <= 1e-8
    lam = 0.2 - 0.1j
    formula = mm.kernel_norm_sq(u, lam)
    assert formula == pytest.approx((1 - abs(u(lam)) ** 2) / (1 - abs(lam) ** 2), rel=1e-13)
    assert abs(formula - mm.kernel_norm_sq_quadrature(u, lam)) < 1e-9


def test_multiplier_dimension():
    basis = mm.multiplier_basis([0], [0, 0, 0])
    assert basis["dimension"] == 3
    assert mm.toeplitz_kernel_dim([0.5], [0.5])["dimension"] == 1


def test_descriptor_round_trip_and_errors():
    d = {"type": "atomic_singular", "atoms": [{"angle_turns": 0.0, "weight": 1.0}]}
    s = mm.InnerFunction.from_json(d)
    assert s.to_json() == d
    assert abs(s(0.5) - math.exp(-3.0)) < 1e-14
    with pytest.raises(mm.DescriptorError):
        mm.InnerFunction.from_json({"type": "finite_blaschke", "zeros": [[0.1, 0], {"x": 1}]})
    with pytest.raises(mm.DomainError):
        mm.InnerFunction.finite_blaschke([0.2])(2.0)


def test_clark_and_products():
    mu = mm.clark_measure(mm.InnerFunction.atomic_singular([(0.0, 1.0)]), 20)
    assert len(mu["atoms"]) == 41
    p = mm.eval_product("E1", 2j)
    assert p["relative_error_bound"] <= 1e-9
    r = mm.lyubarskii_seip_ratio(0.1, mm.zero_midpoints(0.1, 5))
    assert r["min_ratio"] > 0
    assert abs(mm.cayley(3.0)) == pytest.approx(1.0, abs=1e-15)


def test_fixtures_and_cli_in_process():
    assert "example-3.5" in mm.fixture_names()
    res = mm.verify_example("u-alpha-sublevel")
    assert res["passed"] is True
    code, out, _ = mm.run_cli(["kernel-dim", "--u-zeros", "0.5", "--v-zeros", "0.5"])
    assert code == 0 and json.loads(out)["result"]["dimension"] == 1
    code, out, _ = mm.run_cli(["frobnicate"])
    assert code == 64


@pytest.mark.skipif(not os.environ.get("MODELMULT_CLI"), reason="CLI binary path not provided")
def test_cli_binary_matches_in_process():
    exe = os.environ["MODELMULT_CLI"]
    args = ["mult-basis", "--u-zeros", "0", "--v-zeros", "0,0,0"]
    proc = subprocess.run([exe, *args], capture_output=True, text=True, check=True)
    assert proc.stdout == mm.run_cli(args)[1]
