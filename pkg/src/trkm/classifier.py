"""Twin restricted kernel machine for binary classification (TRKM-C).

Fitting solves two bordered linear systems, one per class. With
K_aa = kernel(A, A), K_ab = kernel(A, B) and e_i ones vectors:

    [ (1/g1) K_aa + eta1 I   e1 ] [h1]   [ e1 + (1/g1) K_ab e2 ]
    [ e1^T                   0  ] [b1] = [ n2                  ]

    [ (1/g2) K_bb + eta2 I   e2 ] [h2]     [ e2 + (1/g2) K_ba e1 ]
    [ e2^T                   0  ] [b2] = - [ n1                  ]

The bottom rows force the balance constraints sum(h1) = n2 and
sum(h2) = -n1. Weight vectors are never materialized for Gaussian
kernels; prediction is dual-form throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import as_matrix
from .errors import DimensionMismatch, EmptyClass, SingularSystem
from .kernels import KernelSpec, gram
from .solver import BorderedSystem, SolveReport, check_balance, solve_bordered


@dataclass(frozen=True)
class TrkmClassifierHyperparams:
    """Per-class weight-norm (gamma) and hidden-feature (eta) regularizers."""

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
        """Common convention: same penalties for both class systems."""
        return cls(gamma, gamma, eta, eta, kernel)


@dataclass(frozen=True)
class TrkmClassifierModel:
    """Fitted dual variables plus the stored class matrices."""

    A: np.ndarray
    B: np.ndarray
    h1: np.ndarray
    b1: float
    h2: np.ndarray
    b2: float
    hyperparams: TrkmClassifierHyperparams
    fit_diag: tuple[SolveReport, SolveReport] | None = None


def fit_classifier(A, B, hp: TrkmClassifierHyperparams) -> TrkmClassifierModel:
    """Fit both class systems; aborts whole fit if either system is singular."""
    a = as_matrix(A, "A")
    b = as_matrix(B, "B")
    if a.shape[0] == 0:
        raise EmptyClass("class +1 has no samples")
    if b.shape[0] == 0:
        raise EmptyClass("class -1 has no samples")
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatch(
            f"A has {a.shape[1]} features but B has {b.shape[1]}"
        )
    n1, n2 = a.shape[0], b.shape[0]
    k_aa = gram(hp.kernel, a, a).values
    k_ab = gram(hp.kernel, a, b).values
    k_bb = gram(hp.kernel, b, b).values

    sys1 = BorderedSystem(
        core=k_aa / hp.gamma1 + hp.eta1 * np.eye(n1),
        border=np.ones(n1),
        border_sign=+1,
        rhs_top=np.ones(n1) + (k_ab @ np.ones(n2)) / hp.gamma1,
        rhs_bottom=float(n2),
    )
    sys2 = BorderedSystem(
        core=k_bb / hp.gamma2 + hp.eta2 * np.eye(n2),
        border=np.ones(n2),
        border_sign=+1,
        rhs_top=-(np.ones(n2) + (k_ab.T @ np.ones(n1)) / hp.gamma2),
        rhs_bottom=-float(n1),
    )
    try:
        rep1 = solve_bordered(sys1)
    except SingularSystem as exc:
        raise SingularSystem(f"class +1 system: {exc}") from exc
    try:
        rep2 = solve_bordered(sys2)
    except SingularSystem as exc:
        raise SingularSystem(f"class -1 system: {exc}") from exc

    check_balance("class +1 system", rep1.solution[:n1].sum(), float(n2))
    check_balance("class -1 system", rep2.solution[:n2].sum(), -float(n1))
    return TrkmClassifierModel(
        A=a,
        B=b,
        h1=rep1.solution[:n1],
        b1=float(rep1.solution[n1]),
        h2=rep2.solution[:n2],
        b2=float(rep2.solution[n2]),
        hyperparams=hp,
        fit_diag=(rep1, rep2),
    )


def decision_values(model: TrkmClassifierModel, X) -> tuple[np.ndarray, np.ndarray]:
    """Dual-form scores of both hyperplanes for each row of X."""
    x = as_matrix(X, "X")
    if x.shape[1] != model.A.shape[1]:
        raise DimensionMismatch(
            f"X has {x.shape[1]} features, model was trained with {model.A.shape[1]}"
        )
    hp = model.hyperparams
    k_xa = gram(hp.kernel, x, model.A).values
    k_xb = gram(hp.kernel, x, model.B).values
    e1 = np.ones(model.A.shape[0])
    e2 = np.ones(model.B.shape[0])
    g1 = (k_xa @ model.h1 - k_xb @ e2) / hp.gamma1 + model.b1
    g2 = (k_xb @ model.h2 + k_xa @ e1) / hp.gamma2 + model.b2
    return g1, g2


def predict_labels(model: TrkmClassifierModel, X) -> np.ndarray:
    """Predict +/-1 labels; a zero combined score maps to +1."""
    g1, g2 = decision_values(model, X)
    return np.where(g1 + g2 >= 0.0, 1, -1).astype(np.int64)


def slack_vectors(model: TrkmClassifierModel) -> tuple[np.ndarray, np.ndarray]:
    """Fitted error vectors of both systems, in kernel form.

    xi1 = e1 - phi(A) w1 - e1 b1 and xi2 = -e2 - phi(B) w2 - e2 b2, with the
    weight vectors expanded through the kernel so nothing is materialized.
    At a stationary point eta_i * h_i equals xi_i.
    """
    hp = model.hyperparams
    k_aa = gram(hp.kernel, model.A, model.A).values
    k_ab = gram(hp.kernel, model.A, model.B).values
    k_bb = gram(hp.kernel, model.B, model.B).values
    e1 = np.ones(model.A.shape[0])
    e2 = np.ones(model.B.shape[0])
    phi_a_w1 = (k_aa @ model.h1 - k_ab @ e2) / hp.gamma1
    phi_b_w2 = (k_bb @ model.h2 + k_ab.T @ e1) / hp.gamma2
    xi1 = e1 - phi_a_w1 - e1 * model.b1
    xi2 = -e2 - phi_b_w2 - e2 * model.b2
    return xi1, xi2
