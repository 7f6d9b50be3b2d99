import math

import numpy as np
import pytest
from scipy import special

import ncfourier as ncf


@pytest.mark.parametrize("nu", [0, 1, 2.5, 7])
def test_bessel_matches_scipy(nu):
    for x in [0.1, 1.0, 3.7, 12.0, 40.0]:
        assert ncf.bessel_j(nu, x) == pytest.approx(special.jv(nu, x), abs=1e-13, rel=1e-12)


def test_bessel_zero_matches_scipy():
    assert ncf.bessel_zero(1, 1) == pytest.approx(special.jn_zeros(1, 1)[0], abs=1e-12)
    assert ncf.bessel_zero(0, 5) == pytest.approx(special.jn_zeros(0, 5)[-1], abs=1e-12)


def test_plancherel_on_the_circle():
    spec = ncf.group("so2", 6)
    g = ncf.GroupFunction.random(spec, seed=3, decay=0.5)
    samples = np.asarray(g.samples())
    norm_sq = np.mean(np.abs(samples) ** 2)
    assert np.linalg.norm(g.weyl()) ** 2 == pytest.approx(norm_sq, rel=1e-12)


def test_weyl_multiplicative_on_so3():
    spec = ncf.group("so3", 2)
    a = ncf.GroupFunction.random(spec, seed=1)
    b = ncf.GroupFunction.random(spec, seed=2)
    lhs = a.convolve(b).weyl()
    rhs = a.weyl() @ b.weyl()
    assert np.max(np.abs(lhs - rhs)) <= 1e-10 * np.max(np.abs(rhs))


def test_rank_of_a_single_block():
    spec = ncf.group("so3", 3)
    u = np.arange(1, 6, dtype=complex).reshape(5, 1)
    g = ncf.GroupFunction.from_blocks(spec, {2: u @ u.conj().T})
    assert ncf.numerical_rank(g.weyl()) == 5


def test_c2_calibration():
    c2, residual = ncf.calibrate_c2()
    assert c2 == pytest.approx(1 / (2 * math.pi), rel=1e-10)
    assert residual <= 1e-8


def test_gaussian_transform_has_rank_one():
    for a, rank, sigma1, ratio in ncf.gaussian_rank_scan(1, [0.5, 2.0, 6.0], 16):
        assert rank == 1
        assert ratio <= 1e-8
        assert sigma1 > 0


def test_sphere_hup_verdicts():
    at_zero = ncf.sphere_hup(special.jn_zeros(1, 1)[0])
    assert at_zero["fails_at"] == 1
    clear = ncf.sphere_hup(1.0)
    assert clear["fails_at"] is None
    assert clear["values"][0] == pytest.approx(special.jv(0, 1.0), abs=1e-14)


def test_experiment_runner():
    assert "plancherel-weyl" in ncf.experiments()
    rows, ok = ncf.run_experiment("plancherel-weyl", {"count_per_group": 5}, seed=11)
    assert ok
    assert len(rows) == 10
    assert {"defect", "pass"} <= set(rows[0])
    with pytest.raises(KeyError):
        ncf.run_experiment("no-such-experiment")
    with pytest.raises(ValueError):
        ncf.run_experiment("cesaro", {"no_such_param": 1})
