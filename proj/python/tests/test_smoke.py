import json

import numpy as np
import pytest

import symred

SO3 = {"group": "so3", "mu": [0.0, 0.0, 1.0], "seed": 7}


def test_catalog():
    assert "so3" in symred.catalog_names()
    assert symred.algebra_dim("sl3r") == 8
    c = np.array(symred.structure_constants("so3")).reshape(3, 3, 3)
    assert c[0, 1, 2] == 1.0
    assert np.allclose(c, -c.transpose(1, 0, 2))


def test_stabilizer():
    basis = symred.stabilizer_basis("so3", np.array([0.0, 0.0, 1.0]))
    assert basis.shape == (3, 1)
    assert abs(abs(basis[2, 0]) - 1.0) < 1e-12


def test_reduce_flagship():
    report, code = symred.run_command("reduce", SO3)
    assert code == 0
    assert report["schema_version"] == symred.schema_version
    assert report["context"]["dims"] == {"delta": 1, "w1": 2, "w2": 2, "s": 1}
    assert report["reduced"]["sigma"] == -1.0
    assert all(c["passed"] for c in report["checks"])


def test_json_string_config_and_determinism():
    a, _ = symred.run_command("curvature", json.dumps(SO3))
    b, _ = symred.run_command("curvature", SO3)
    a.pop("timings")
    b.pop("timings")
    assert a == b


def test_error_exit_codes():
    report, code = symred.run_command("reduce", {"group": "sl2r", "mu": [0.0, 1.0, 0.0]})
    assert code == 3
    assert report["error"]["kind"] == "NonReductiveStabilizer"
    _, code = symred.run_command("reduce", {"group": "so3", "mu": [1.0]})
    assert code == 2


def test_negative_control_verify():
    report, code = symred.run_command("verify", dict(SO3, connection="baseline"))
    assert code == 1
    assert [c["name"] for c in report["checks"] if not c["passed"]] == ["connection.nabla_omega"]


def test_library_errors_raise():
    with pytest.raises(symred.SymredError):
        symred.algebra_dim("so4")
