"""Bivariate orthogonal polynomial families and Gaussian cubature rules.

The heavy lifting happens in the compiled extension; this package re-exports
the main operations.
"""

from ._core import (
    deltoid_g,
    family,
    moments,
    posdef_fail_degree,
    rule,
    svg_plot,
    verify_rule,
)

__all__ = [
    "deltoid_g",
    "family",
    "moments",
    "posdef_fail_degree",
    "rule",
    "svg_plot",
    "verify_rule",
]

__version__ = "0.1.0"
