"""Outage bounds and Monte-Carlo simulation for multi-hop AF relaying with
Nakagami-m co-channel interference."""

from ._core import (
    ConfigError,
    ConvergenceError,
    DomainError,
    GainReport,
    HopParams,
    McEstimate,
    OutageBounds,
    SystemConfig,
    db_to_linear,
    end_to_end_sir,
    gains,
    hop_sir_cdf,
    hop_sir_pdf,
    linear_to_db,
    lower_bound_cdf,
    outage_bounds,
    run_experiment_csv,
    sample_e2e,
    simulate_outage,
    upper_bound_cdf,
    upper_bound_cdf_asymptote,
    upper_bound_cdf_worst_hop,
)

__all__ = [name for name in dir() if not name.startswith("_")]
