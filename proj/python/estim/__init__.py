"""Adjoint-gradient parameter identification for ODE models."""

from ._estim import (
    ConfigError,
    DivergenceError,
    LineSearchError,
    default_config_text,
    estimate,
    gradient,
    gradient_check,
    model_info,
    model_names,
    objective,
    simulate,
)

__all__ = [
    "ConfigError",
    "DivergenceError",
    "LineSearchError",
    "default_config_text",
    "estimate",
    "gradient",
    "gradient_check",
    "model_info",
    "model_names",
    "objective",
    "simulate",
]
