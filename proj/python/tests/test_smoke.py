import math

import pytest

import gompgof


def test_gompertz_cdf_quantile_round_trip():
    for u in (1e-6, 0.1, 0.5, 0.9, 1 - 1e-9):
        x = gompgof.gompertz_quantile(2.0, 1.5, u)
        assert gompgof.gompertz_cdf(2.0, 1.5, x) == pytest.approx(u, rel=1e-12)


def test_gompertz_pdf_closed_form():
    eta, b, x = 0.5, 2.0, 0.7
    expected = eta * b * math.exp(b * x) * math.exp(-eta * (math.exp(b * x) - 1))
    assert gompgof.gompertz_pdf(eta, b, x) == pytest.approx(expected, rel=1e-13)


def test_sampling_is_reproducible():
    a = gompgof.gompertz_sample(1.0, 1.0, 50, 7)
    b = gompgof.gompertz_sample(1.0, 1.0, 50, 7)
    assert a == b and len(a) == 50
    assert gompgof.sample("gamma k=3", 20, 7) == gompgof.sample("gamma k=3", 20, 7)


def test_fit_recovers_parameters():
    x = gompgof.gompertz_sample(2.0, 1.0, 10000, 11)
    f = gompgof.fit(x)
    assert f.converged and not f.fallback_used
    assert f.eta_hat == pytest.approx(2.0, rel=0.1)
    assert f.b_hat == pytest.approx(1.0, rel=0.1)
    assert abs(gompgof.score(f.b_hat, x)) < 1e-8


def test_closed_form_matches_piecewise():
    x = gompgof.gompertz_sample(1.0, 1.0, 40, 3)
    f = gompgof.fit(x)
    y = [f.b_hat * v for v in x]
    for a in (0.5, 1.0, 4.0):
        t1 = gompgof.t_statistic(y, f.eta_hat, a, "piecewise")
        t2 = gompgof.t_statistic(y, f.eta_hat, a, "closed")
        assert t2 == pytest.approx(t1, rel=1e-8)


def test_edf_statistics_on_uniform_grid():
    n = 10
    u = [(2 * j - 1) / (2 * n) for j in range(1, n + 1)]
    assert gompgof.ks(u) == pytest.approx(1 / (2 * n))
    assert gompgof.cm(u) == pytest.approx(1 / (12 * n))


def test_gof_outcomes():
    x = gompgof.gompertz_sample(1.0, 1.0, 50, 5)
    out = gompgof.gof(x, tests=["stein", "ks"], a=[1.0, 2.0], bootstrap=99, seed=9)
    assert [o.test for o in out] == ["stein", "stein", "ks"]
    assert out[0].a == 1.0 and out[2].a is None
    for o in out:
        assert 0.0 <= o.p_value <= 1.0
        assert o.B == 99
    again = gompgof.gof(x, tests=["stein", "ks"], a=[1.0, 2.0], bootstrap=99, seed=9, threads=2)
    assert [o.statistic for o in out] == [o.statistic for o in again]
    assert [o.p_value for o in out] == [o.p_value for o in again]


def test_lifetable_functions():
    p = gompgof.hazard_to_pmf([0.5, 0.5, 1.0])
    assert p == pytest.approx([0.5, 0.25, 0.25])
    t = gompgof.truncate_pmf(p, 0, 3)
    assert t == pytest.approx([0.0, 0.5, 0.5])
    ages = gompgof.sample_lifetimes(p, 100, 1)
    assert len(ages) == 100 and set(ages) <= {0.0, 1.0, 2.0}


def test_simulate_returns_csv():
    text = gompgof.simulate(
        "scenario = go eta=1 b=1\nn = 20\na = 1\ntests = stein\nreplications = 20\nbootstrap = 49\nseed = 1\n"
    )
    lines = text.strip().splitlines()
    assert len(lines) >= 2


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        gompgof.gompertz_cdf(-1.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        gompgof.fit([1.0, 1.0, 1.0])
