"""Volatility spillover connectedness toolkit.

Python surface over the C++ core: return-panel construction, diagnostic
tests, static and time-varying-parameter VAR estimation, generalized
forecast-error variance decomposition, the connectedness index family, and
spillover network export.
"""

import os

from spillnet._core import (  # noqa: F401
    AdfResult,
    ChowResult,
    ConnectednessReport,
    DescriptiveStats,
    DeterministicSpec,
    DynamicConnectedness,
    FevdTable,
    RawSeries,
    ReturnPanel,
    SpilloverNetwork,
    Transform,
    TvpConfig,
    TvpPath,
    VarEstimate,
    adf_test,
    build_network,
    build_panel,
    chow_test,
    describe,
    dynamic_indices,
    emit_dot,
    emit_json,
    fit_var,
    gfevd,
    indices,
    init_prior,
    ljung_box,
    load_csv,
    ma_coefficients,
    make_panel,
    random_covariance,
    random_stable_var,
    render_report_csv,
    render_report_text,
    run_diagnostics,
    run_dynamic,
    run_static,
    select_lag,
    simulate_var,
    snapshot,
    tvp_filter,
)

__version__ = "0.1.0"


def cli_path():
    """Location of the bundled command-line tool, when installed as a wheel."""
    path = os.path.join(os.path.dirname(__file__), "bin", "spillnet")
    return path if os.path.exists(path) else None
