"""Single-machine restricted kernel machine classifier baseline.

Training solves one bordered system (equivalent to the published RKM
solution, with unknowns reordered to [h; b]):

    [ (1/g) K + eta I   e ] [h]   [ y ]
    [ e^T               0 ] [b] = [ 0 ]

The source formulation gives only the training system; the decision rule
used here, score(x) = (1/g) kernel(x, X) h + b, is reconstructed from the
least-squares SVM decision function that the RKM reformulates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import as_matrix, as_vector
from .errors import DimensionMismatch
from .kernels import KernelSpec, gram
from .solver import BorderedSystem, SolveReport, check_balance, solve_bordered


@dataclass(frozen=True)
class RkmModel:
    X: np.ndarray
    y: np.ndarray
    h: np.ndarray
    b: float
    gamma: float
    eta: float
    kernel: KernelSpec
    fit_diag: SolveReport | None = None


def fit_rkm(X, y, gamma: float, eta: float, kernel: KernelSpec) -> RkmModel:
    x = as_matrix(X, "X")
    yv = as_vector(y, "y")
    n = x.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    if yv.shape[0] != n:
        raise DimensionMismatch(f"X has {n} rows but y has length {yv.shape[0]}")
    if not np.all(np.isin(yv, (-1.0, 1.0))):
        raise ValueError("labels must be +1 or -1")
    if not np.isfinite(gamma) or gamma <= 0 or not np.isfinite(eta) or eta <= 0:
        raise ValueError("gamma and eta must be strictly positive")
    k = gram(kernel, x, x).values
    system = BorderedSystem(
        core=k / gamma + eta * np.eye(n),
        border=np.ones(n),
        border_sign=+1,
        rhs_top=yv,
        rhs_bottom=0.0,
    )
    rep = solve_bordered(system)
    check_balance("rkm system", rep.solution[:n].sum(), 0.0)
    return RkmModel(
        X=x,
        y=yv,
        h=rep.solution[:n],
        b=float(rep.solution[n]),
        gamma=gamma,
        eta=eta,
        kernel=kernel,
        fit_diag=rep,
    )


def rkm_scores(model: RkmModel, X) -> np.ndarray:
    x = as_matrix(X, "X")
    if x.shape[1] != model.X.shape[1]:
        raise DimensionMismatch(
            f"X has {x.shape[1]} features, model was trained with {model.X.shape[1]}"
        )
    kq = gram(model.kernel, x, model.X).values
    return (kq @ model.h) / model.gamma + model.b


def predict_rkm(model: RkmModel, X) -> np.ndarray:
    """Predict +/-1 labels; a zero score maps to +1."""
    return np.where(rkm_scores(model, X) >= 0.0, 1, -1).astype(np.int64)
