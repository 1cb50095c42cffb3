import math

import pytest

import confdop

AU = 1.495978707e11


def mission(alpha, add_noise=True, n_obs=400, seed=3):
    return confdop.SimConfig(
        alpha_true=alpha,
        r0=20 * AU,
        v_radial=12000.0,
        t_start=0.0,
        t_end=50 * AU / 12000.0,
        n_obs=n_obs,
        seed=seed,
        add_noise=add_noise,
    )


def test_transform_identity_and_origin():
    e = confdop.Event(1.0, 2.0)
    same = confdop.transform_finite(confdop.GroupParameter.from_beta4(0.0, c=1.0), e)
    assert (same.r, same.x4) == (1.0, 2.0)
    origin = confdop.transform_finite(confdop.GroupParameter.from_beta4(0.3, c=1.0), confdop.Event(0.0, 0.0))
    assert (origin.r, origin.x4) == (0.0, 0.0)


def test_transform_known_value():
    out = confdop.transform_finite(confdop.GroupParameter.from_beta4(0.05, c=1.0), confdop.Event(1.0, 2.0))
    assert out.r == pytest.approx(1.2383900928792569817, rel=1e-14)
    assert out.x4 == pytest.approx(2.2910216718266254058, rel=1e-14)


def test_flow_oracle_agrees():
    p = confdop.GroupParameter.from_beta4(-0.05, c=1.0)
    e = confdop.Event(1.0, 2.0)
    exact = confdop.transform_finite(p, e)
    flowed = confdop.flow_oracle(p, e, steps=2000)
    assert flowed.r == pytest.approx(exact.r, rel=1e-9)
    assert flowed.x4 == pytest.approx(exact.x4, rel=1e-9)


def test_noiseless_fit_recovers_alpha():
    fit = confdop.fit_alpha(confdop.simulate(mission(2.19e-18, add_noise=False)))
    assert abs(fit.alpha_hat - 2.19e-18) < 1e-12 * 2.19e-18
    assert fit.n_used == 400
    assert confdop.decide_metric(fit) in ("MinkowskiConsistent", "ConformalDetected")


def test_csv_round_trip():
    records = confdop.simulate(mission(2.19e-18, n_obs=5))
    text = confdop.to_csv(records)
    back = confdop.read_csv(text)
    assert [r.epoch for r in back] == [r.epoch for r in records]
    assert [r.doppler_frac_text for r in back] == [r.doppler_frac_text for r in records]
    assert confdop.to_csv(back) == text


def test_sign_comparison():
    s = confdop.sign_comparison_report(confdop.PIONEER_ANOMALY_RATE, confdop.HUBBLE_RATE)
    assert s["opposite_sign"]
    assert math.isclose(s["magnitude_ratio"], 1.28, abs_tol=0.01)


def test_group_suite_passes():
    report = confdop.run_suite("group", cases=200)
    assert report["passed"]
    assert report["cases"] == 200


def test_errors_raise():
    with pytest.raises(confdop.ConfdopError):
        confdop.SimConfig(r0=1.0, v_radial=0.0, t_start=0.0, t_end=1.0, n_obs=1)
    with pytest.raises(confdop.ConfdopError):
        confdop.read_csv("not,a,header\n")
