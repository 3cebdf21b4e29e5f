# SPDX-License-Identifier: Apache-2.0
"""Python bindings for the friction-walk simulator core."""

from ._core import (  # noqa: F401
    PhysParams,
    check_names,
    constants,
    lambda_mgf,
    meanfield,
    rate_function,
    run_check,
    scattering_rate,
    simulate,
)

__all__ = [
    "PhysParams",
    "check_names",
    "constants",
    "lambda_mgf",
    "meanfield",
    "rate_function",
    "run_check",
    "scattering_rate",
    "simulate",
]
