"""Asymptotic PCA performance under heteroscedastic noise.

Thin re-export of the compiled extension module.
"""

try:
    from . import _hetpca as _ext  # installed wheel layout
except ImportError:
    import _hetpca as _ext  # in-tree build directory on PYTHONPATH

import sys as _sys

_sys.modules.setdefault("_hetpca", _ext)

from _hetpca import (  # noqa: F401,E402
    ComponentPrediction,
    IdentityReport,
    NoiseProfile,
    OverallPrediction,
    RecoveryBounds,
    amplitude_bias_alt,
    average_inverse_variance,
    check_spectrum_identities,
    eval_A,
    eval_B,
    eval_B_prime,
    generate,
    homoscedastic_bounds,
    pca,
    pca_complex,
    predict_component,
    predict_homoscedastic,
    predict_overall,
    psi_inverse,
    run_trial,
    solve_alpha,
    solve_beta,
)

__all__ = [
    "ComponentPrediction",
    "IdentityReport",
    "NoiseProfile",
    "OverallPrediction",
    "RecoveryBounds",
    "amplitude_bias_alt",
    "average_inverse_variance",
    "check_spectrum_identities",
    "eval_A",
    "eval_B",
    "eval_B_prime",
    "generate",
    "homoscedastic_bounds",
    "pca",
    "pca_complex",
    "predict_component",
    "predict_homoscedastic",
    "predict_overall",
    "psi_inverse",
    "run_trial",
    "solve_alpha",
    "solve_beta",
]
