"""Twin restricted kernel machine for regression (TRKM-R).

Both systems run over the full sample. With K = kernel(X, X) and e ones:

    [ (1/g1) K + eta1 I   -e ] [h1]   [ -Y + (1/g1) K e ]
    [ e^T                  0 ] [b1] = [ n               ]

    [ (1/g2) K + eta2 I    e ] [h2]   [ Y + (1/g2) K e ]
    [ e^T                  0 ] [b2] = [ n              ]

so sum(h1) = sum(h2) = n after every fit. The predictor averages the two
dual-form functions; there is no epsilon tube, the model is purely
least-squares-style. Targets are used unscaled here; any normalization is
the data layer's responsibility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import as_matrix, as_vector
from .errors import DimensionMismatch, SingularSystem
from .kernels import KernelSpec, gram
from .solver import BorderedSystem, SolveReport, check_balance, solve_bordered


@dataclass(frozen=True)
class TrkmRegressorHyperparams:
    gamma1: float
    gamma2: float
    eta1: float
    eta2: float
    kernel: KernelSpec

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "eta1", "eta2"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be strictly positive, got {v!r}")

    @classmethod
    def equal_penalty(cls, gamma: float, eta: float, kernel: KernelSpec):
        return cls(gamma, gamma, eta, eta, kernel)


@dataclass(frozen=True)
class TrkmRegressorModel:
    X: np.ndarray
    Y: np.ndarray
    h1: np.ndarray
    b1: float
    h2: np.ndarray
    b2: float
    hyperparams: TrkmRegressorHyperparams
    fit_diag: tuple[SolveReport, SolveReport] | None = None


def fit_regressor(X, Y, hp: TrkmRegressorHyperparams) -> TrkmRegressorModel:
    x = as_matrix(X, "X")
    y = as_vector(Y, "Y")
    n = x.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    if y.shape[0] != n:
        raise DimensionMismatch(f"X has {n} rows but Y has length {y.shape[0]}")
    k = gram(hp.kernel, x, x).values
    e = np.ones(n)
    ke = k @ e

    sys1 = BorderedSystem(
        core=k / hp.gamma1 + hp.eta1 * np.eye(n),
        border=e,
        border_sign=-1,
        rhs_top=-y + ke / hp.gamma1,
        rhs_bottom=float(n),
    )
    sys2 = BorderedSystem(
        core=k / hp.gamma2 + hp.eta2 * np.eye(n),
        border=e,
        border_sign=+1,
        rhs_top=y + ke / hp.gamma2,
        rhs_bottom=float(n),
    )
    try:
        rep1 = solve_bordered(sys1)
    except SingularSystem as exc:
        raise SingularSystem(f"lower-function system: {exc}") from exc
    try:
        rep2 = solve_bordered(sys2)
    except SingularSystem as exc:
        raise SingularSystem(f"upper-function system: {exc}") from exc

    check_balance("lower-function system", rep1.solution[:n].sum(), float(n))
    check_balance("upper-function system", rep2.solution[:n].sum(), float(n))
    return TrkmRegressorModel(
        X=x,
        Y=y,
        h1=rep1.solution[:n],
        b1=float(rep1.solution[n]),
        h2=rep2.solution[:n],
        b2=float(rep2.solution[n]),
        hyperparams=hp,
        fit_diag=(rep1, rep2),
    )


def regression_components(model: TrkmRegressorModel, X) -> tuple[np.ndarray, np.ndarray]:
    """The two dual-form component functions g1, g2 at each row of X."""
    x = as_matrix(X, "X")
    if x.shape[1] != model.X.shape[1]:
        raise DimensionMismatch(
            f"X has {x.shape[1]} features, model was trained with {model.X.shape[1]}"
        )
    hp = model.hyperparams
    kq = gram(hp.kernel, x, model.X).values
    e = np.ones(model.X.shape[0])
    g1 = (kq @ (e - model.h1)) / hp.gamma1 + model.b1
    g2 = (kq @ (model.h2 - e)) / hp.gamma2 + model.b2
    return g1, g2


def predict_regression(model: TrkmRegressorModel, X) -> np.ndarray:
    """Elementwise mean of the two component functions."""
    g1, g2 = regression_components(model, X)
    return (g1 + g2) / 2.0


def slack_vectors(model: TrkmRegressorModel) -> tuple[np.ndarray, np.ndarray]:
    """Fitted error vectors in kernel form; eta_i * h_i equals xi_i at a fit."""
    hp = model.hyperparams
    k = gram(hp.kernel, model.X, model.X).values
    e = np.ones(model.X.shape[0])
    phi_w1 = (k @ (e - model.h1)) / hp.gamma1
    phi_w2 = (k @ (model.h2 - e)) / hp.gamma2
    xi1 = phi_w1 + e * model.b1 - model.Y
    xi2 = model.Y - phi_w2 - e * model.b2
    return xi1, xi2
