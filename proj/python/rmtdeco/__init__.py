"""Python access to the rmtdeco simulation core."""

from ._core import (
    ConfigError,
    DimensionError,
    __version__,
    build_strong,
    build_weak,
    closed_forms_csv,
    coe_min_purity_mc,
    f_uniform,
    i_infinity,
    i_min_coe,
    purity,
    run_config,
    run_strong,
    run_weak,
    sample_spectrum,
    short_time_coefficient,
    spectral_averages,
    stationary_purity_mc,
    time_scales,
    weak_variance,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
