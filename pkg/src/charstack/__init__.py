"""E-series and mixed series of character stacks, with finite-field cross-checks."""

from .character_stack import (
    CharStackConfig,
    EigenGroup,
    PunctureSpec,
    build,
    eseries,
    four_punctured_sphere,
    mixed_poincare,
    twisted_config,
)
from .exact_algebra import RatFun, var
from .hlrv import hlrv_H, specialize_E, specialize_mixed
from .lambda_series import GradedSeries, plelog, plexp

__all__ = [
    "CharStackConfig",
    "EigenGroup",
    "GradedSeries",
    "PunctureSpec",
    "RatFun",
    "build",
    "eseries",
    "four_punctured_sphere",
    "hlrv_H",
    "mixed_poincare",
    "plelog",
    "plexp",
    "specialize_E",
    "specialize_mixed",
    "twisted_config",
    "var",
]
