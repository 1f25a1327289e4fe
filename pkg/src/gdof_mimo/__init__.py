"""GDOF of the 3-user partially asymmetric M x N MIMO interference channel."""

from .channel_model import (
    ChannelInstance,
    SystemConfig,
    derive_seed,
    exponent_table,
    generate_channel,
    link_exponent,
    logdet_gram,
    logdet_rate,
)
from .closed_form import GdofResult, Regime, face_values, gdof, piecewise_cases, regime_of
from .deterministic_model import build_shift_channel, check_assumptions, det_sym_capacity
from .errors import AssumptionError, BoundaryError, DomainError, GdofError, NumericalError, UnboundedError
from .high_snr import PrelogSpec, estimate_slope, numeric_logdet, predicted_prelog
from .hk_achievable import achievable_rate_point, achievable_sym_rate, generate_bounds
from .outer_bounds import min_outer, outer_proxies, recipe_catalog

__version__ = "0.1.0"

__all__ = [
    "AssumptionError", "BoundaryError", "ChannelInstance", "DomainError", "GdofError", "GdofResult",
    "NumericalError", "PrelogSpec", "Regime", "SystemConfig", "UnboundedError", "achievable_rate_point",
    "achievable_sym_rate", "build_shift_channel", "check_assumptions", "derive_seed", "det_sym_capacity",
    "estimate_slope", "exponent_table", "face_values", "gdof", "generate_bounds", "generate_channel",
    "link_exponent", "logdet_gram", "logdet_rate", "min_outer", "numeric_logdet", "outer_proxies",
    "piecewise_cases", "predicted_prelog", "recipe_catalog", "regime_of",
]
