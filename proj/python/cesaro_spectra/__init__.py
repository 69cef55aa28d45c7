"""Spectra of integration operators T_g f = ∫ f g' on Hardy and Bergman spaces."""

from ._core import (
    ConfigError,
    DomainError,
    NumericalError,
    Space,
    Symbol,
    UnsupportedSpace,
    __version__,
    a2_verdict,
    classify,
    exp_series,
    gj_level_log_power,
    resolvent_apply,
    run_cli,
    spectral_radius_estimate,
    spectrum_map,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "NumericalError",
    "Space",
    "Symbol",
    "UnsupportedSpace",
    "__version__",
    "a2_verdict",
    "classify",
    "exp_series",
    "gj_level_log_power",
    "resolvent_apply",
    "run_cli",
    "spectral_radius_estimate",
    "spectrum_map",
]
