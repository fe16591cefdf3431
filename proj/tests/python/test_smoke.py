import math

import numpy as np
import pytest

import esale


def test_operator_is_sbp():
    op = esale.operator(4)
    Q, E = op["Q"], op["E"]
    assert np.allclose(Q + Q.T, E, atol=1e-13)
    assert math.isclose(sum(op["H"]), 2.0, rel_tol=1e-14)
    D = op["D"]
    x = np.array(op["nodes"])
    assert np.allclose(D @ x**4, 4 * x**3, atol=1e-12)


def test_entropy_variable_round_trip():
    gas = esale.GasParams()
    u = esale.state_from_primitive(1.3, [0.2, -0.1, 0.4], 2.1, gas)
    w = esale.entropy_vars(u, gas)
    assert np.allclose(esale.state_from_entropy_vars(w, gas), u, rtol=1e-13)


def test_ismail_roe_consistency():
    gas = esale.GasParams()
    u = esale.state_from_primitive(0.8, [0.5, 0.0, -0.3], 1.7, gas)
    for m in (1, 2, 3):
        assert np.allclose(esale.ismail_roe_flux(u, u, m, gas), esale.physical_flux(u, m, gas), atol=1e-14)
    assert math.isclose(esale.log_mean(2.0, 2.0), 2.0)


def test_audits_pass():
    assert esale.operator_audit(4)["passed"]
    assert esale.flux_audit(200)["passed"]
    assert esale.viscous_audit(50)["passed"]


def test_short_freestream_run():
    r = esale.run("freestream", p=2, grid=[3, 3, 1], t_final=0.05)
    assert r.t_reached == pytest.approx(0.05)
    assert r.max_state_deviation < 1e-12


def test_bad_options():
    with pytest.raises(AttributeError):
        esale.run("vortex", nonsense=1)
    with pytest.raises(esale.ConfigError):
        esale.run("vortex", p=0)
    assert esale.reference_l2("vortex", 3, 6) is not None
