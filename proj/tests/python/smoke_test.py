"""Smoke tests for the _core extension module and the CLI binary.

Run directly (PYTHONPATH must contain the built module) or through ctest,
which wires PYTHONPATH, SPILLNET_CLI and SPILLNET_FIXTURE_DIR.
"""

import json
import os
import subprocess
import sys
import tempfile

import numpy as np

import _core as sn


def approx(a, b, tol=1e-8):
    return abs(a - b) < tol


def test_simulation_and_var_fit():
    phi = [np.array([[0.5, 0.1], [0.0, 0.3]])]
    sigma = np.eye(2)
    returns = sn.simulate_var(phi, sigma, 20000, seed=1)
    assert returns.shape == (20000, 2)
    panel = sn.make_panel(returns)
    est = sn.fit_var(panel, 1)
    assert np.abs(est.phi[0] - phi[0]).max() < 0.03
    assert est.stable
    assert sn.select_lag(panel, 3) == 1


def test_connectedness_identities():
    phi = sn.random_stable_var(4, 1, radius=0.6, seed=5)
    sigma = sn.random_covariance(4, seed=6)
    returns = sn.simulate_var(phi, sigma, 4000, seed=7)
    est = sn.fit_var(sn.make_panel(returns), 1)
    fevd = sn.gfevd(est, 10)
    assert np.allclose(fevd.normalized.sum(axis=1), 1.0, atol=1e-10)
    assert fevd.raw.min() >= 0.0

    rep = sn.indices(fevd, est.tickers)
    assert approx(rep.net.sum(), 0.0)
    assert approx(rep.tci, rep.receiver.mean())
    assert approx(rep.tci, rep.giver.mean())
    assert np.abs(rep.npdc + rep.npdc.T).max() == 0.0
    assert rep.pci.min() >= 0.0 and rep.pci.max() <= 1.0
    assert rep.pii.min() >= -1.0 and rep.pii.max() <= 1.0

    text = sn.render_report_text(rep)
    assert "Inc.Own" in text and "NPT" in text


def test_tvp_filter_and_dynamic():
    phi = [np.array([[0.4, 0.1], [0.0, 0.3]])]
    returns = sn.simulate_var(phi, np.eye(2), 5000, seed=11)
    panel = sn.make_panel(returns)

    cfg = sn.TvpConfig()
    cfg.kappa1 = 1.0
    cfg.kappa2 = 1.0
    cfg.prior_window = 500  # kappa2 = 1 freezes S at S_0, so estimate it well
    cfg.inflation = 0.0
    path = sn.tvp_filter(panel, cfg)
    assert len(path) == len(panel) - 1 - 500 + 1

    ols = sn.fit_var(panel, 1)
    final = sn.snapshot(path, len(path) - 1)
    assert np.abs(final.phi[0] - ols.phi[0]).max() < 1e-6

    dyn = sn.dynamic_indices(path, 10)
    assert dyn.failed_dates == 0
    static_rep = sn.indices(sn.gfevd(ols, 10), ols.tickers)
    assert abs(dyn.per_date[-1].tci - static_rep.tci) < 1.0


def test_diagnostics():
    rng = np.random.default_rng(3)
    x = rng.standard_normal(5000)
    d = sn.describe(x)
    assert abs(d.skewness) < 0.2
    assert d.jb_pvalue > 1e-6
    stat, pvalue = sn.ljung_box(x, 20, False)
    assert stat >= 0.0 and 0.0 <= pvalue <= 1.0

    walk = np.cumsum(rng.standard_normal(1500))
    assert sn.adf_test(walk).pvalue > 0.01
    diff = np.diff(walk)
    assert sn.adf_test(diff).pvalue < 0.01

    t = 600
    X = np.column_stack([np.ones(t), rng.standard_normal(t)])
    y = X @ np.array([0.0, 1.0]) + 0.1 * rng.standard_normal(t)
    r = sn.chow_test(y, X, t // 2)
    assert r.pvalue > 1e-6


def test_network_and_errors():
    shares = np.array([[0.7, 0.3], [0.1, 0.9]])
    # synthesize a FEVD-like table through a 2-variable static system
    phi = [np.zeros((2, 2))]
    sigma = np.array([[1.0, 0.5], [0.5, 1.0]])
    est_returns = sn.simulate_var(phi, sigma, 2000, seed=13)
    est = sn.fit_var(sn.make_panel(est_returns), 1)
    rep = sn.indices(sn.gfevd(est, 10), est.tickers)
    net = sn.build_network(rep, 0.75)
    dot = sn.emit_dot(net)
    assert dot.startswith("digraph")
    assert sn.emit_dot(net) == dot
    parsed = json.loads(sn.emit_json(net))
    assert parsed["schema"] == "spillnet.network.v1"
    assert len(parsed["nodes"]) == 2

    try:
        sn.fit_var(sn.make_panel(est_returns[:4]), 2)
        raise AssertionError("expected a data error")
    except ValueError:
        pass
    del shares


def test_cli_binary():
    cli = os.environ.get("SPILLNET_CLI")
    fixtures = os.environ.get("SPILLNET_FIXTURE_DIR")
    if not cli or not fixtures:
        print("skipping CLI checks (SPILLNET_CLI not set)")
        return

    config = os.path.join(fixtures, "config_small3.json")
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "out")
        proc = subprocess.run([cli, "static", "-c", config, "-o", out],
                              capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        assert os.path.exists(os.path.join(out, "static_report.txt"))

        # validation failure -> exit 2
        bad = os.path.join(tmp, "bad.json")
        with open(bad, "w") as f:
            json.dump({"inputs": [{"ticker": "A", "path": "missing.csv"}]}, f)
        proc = subprocess.run([cli, "static", "-c", bad], capture_output=True, text=True)
        assert proc.returncode == 2, (proc.returncode, proc.stderr)
        assert proc.stderr.startswith("error:config:")

        # inverted date range -> validation error, exit 2
        bad2 = os.path.join(tmp, "bad_dates.json")
        with open(bad2, "w") as f:
            json.dump({"inputs": [{"ticker": "AAA",
                                   "path": os.path.join(fixtures, "small3", "AAA.csv")}],
                       "start_date": "2020-01-01", "end_date": "2015-01-01"}, f)
        proc = subprocess.run([cli, "static", "-c", bad2], capture_output=True, text=True)
        assert proc.returncode == 2, (proc.returncode, proc.stderr)

        # data fault (disjoint calendars) -> exit 3
        for name, day in (("a", "2015-01-06"), ("b", "2016-01-06")):
            with open(os.path.join(tmp, f"{name}.csv"), "w") as f:
                f.write(f"date,price\n{day},100\n")
        disjoint = os.path.join(tmp, "disjoint.json")
        with open(disjoint, "w") as f:
            json.dump({"inputs": [{"ticker": "A", "path": "a.csv"},
                                  {"ticker": "B", "path": "b.csv"}]}, f)
        proc = subprocess.run([cli, "static", "-c", disjoint], capture_output=True, text=True)
        assert proc.returncode == 3, (proc.returncode, proc.stderr)
        assert proc.stderr.startswith("error:data:")

        # environment-variable output override
        env = dict(os.environ)
        env["SPILLNET_OUTPUT_DIR"] = os.path.join(tmp, "env_out")
        proc = subprocess.run([cli, "diagnostics", "-c", config],
                              capture_output=True, text=True, env=env)
        assert proc.returncode == 0, proc.stderr
        assert os.path.exists(os.path.join(tmp, "env_out", "descriptive_stats.txt"))


def test_statsmodels_cross_check():
    """Optional parity check against the statsmodels stack, when present."""
    try:
        from statsmodels.stats.diagnostic import acorr_ljungbox
        from statsmodels.stats.stattools import jarque_bera
        from statsmodels.tsa.api import VAR
        from statsmodels.tsa.stattools import adfuller
    except ImportError:
        print("skipping statsmodels cross-check (not installed)")
        return

    rng = np.random.default_rng(123)
    walk = np.cumsum(rng.standard_normal(1500))
    mine = sn.adf_test(walk)
    ref = adfuller(walk, regression="c", autolag="AIC")
    assert abs(mine.statistic - ref[0]) < 1e-8
    assert mine.chosen_lag == ref[2]
    assert abs(mine.pvalue - ref[1]) < 1e-8

    y = rng.standard_normal(800)
    stat, _ = sn.ljung_box(y, 20, True)
    u = y - y.mean()
    lb = acorr_ljungbox(u ** 2, lags=[20])
    assert abs(stat - lb["lb_stat"].iloc[0]) < 1e-8

    d = sn.describe(y)
    jb, jbp, skew, kurt = jarque_bera(y)
    assert abs(d.jb_stat - jb) < 1e-8 and abs(d.jb_pvalue - jbp) < 1e-8
    assert abs(d.skewness - skew) < 1e-10 and abs(d.excess_kurtosis - (kurt - 3)) < 1e-10

    phi = [np.array([[0.5, 0.15], [-0.1, 0.3]])]
    sigma = np.array([[1.0, 0.3], [0.3, 0.8]])
    returns = sn.simulate_var(phi, sigma, 3000, seed=77)
    est = sn.fit_var(sn.make_panel(returns), 1)
    vr = VAR(returns).fit(1, trend="c")
    sm_sigma = vr.sigma_u.values if hasattr(vr.sigma_u, "values") else vr.sigma_u
    assert np.abs(est.phi[0] - vr.coefs[0]).max() < 1e-10
    assert np.abs(est.sigma - sm_sigma).max() < 1e-10

    horizon = 10
    ma = vr.ma_rep(horizon - 1)
    num = np.zeros((2, 2))
    den = np.zeros(2)
    for h in range(horizon):
        ps = ma[h] @ sm_sigma
        num += ps ** 2
        den += np.diag(ps @ ma[h].T)
    d_ref = num / (np.diag(sm_sigma)[None, :] * den[:, None])
    l_ref = d_ref / d_ref.sum(axis=1, keepdims=True)
    fevd = sn.gfevd(est, horizon)
    assert np.abs(fevd.normalized - l_ref).max() < 1e-12


def main():
    tests = [
        test_simulation_and_var_fit,
        test_connectedness_identities,
        test_tvp_filter_and_dynamic,
        test_diagnostics,
        test_network_and_errors,
        test_cli_binary,
        test_statsmodels_cross_check,
    ]
    for test in tests:
        test()
        print(f"ok: {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
