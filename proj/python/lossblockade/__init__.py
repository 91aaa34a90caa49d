"""Python bindings for the lossblockade C++ library."""

import json

from ._core import (
    NumericalFailure,
    SingularParameter,
    SystemParams,
    __version__,
    analytic,
    excitation_spectrum,
    hep,
    lindblad,
    one_photon_eigenvalues,
    preset,
    preset_names,
    sweep_loss,
    two_photon_eigenvalues,
    upper_branch_detuning,
)
from ._core import critical_points as _critical_points


def critical_points(params, gamma_tip_grid, threads=0):
    """Critical points along a tracked-detuning loss sweep, as a dict."""
    return json.loads(_critical_points(params, list(gamma_tip_grid), threads))


__all__ = [
    "NumericalFailure",
    "SingularParameter",
    "SystemParams",
    "__version__",
    "analytic",
    "critical_points",
    "excitation_spectrum",
    "hep",
    "lindblad",
    "one_photon_eigenvalues",
    "preset",
    "preset_names",
    "sweep_loss",
    "two_photon_eigenvalues",
    "upper_branch_detuning",
]
