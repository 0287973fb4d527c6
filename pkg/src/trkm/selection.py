"""Train/test splitting, k-fold cross-validation, and exhaustive grid search.

The protocol mirrors the usual benchmark setup: a random 70:30 split,
then five-fold cross-validation over the full penalty/bandwidth grid on
the training side. Grid cells are scored by mean fold accuracy
(classification, percent) or mean fold RMSE (regression). Cells whose fit
hits a singular system are recorded as failures and scored as worst
(-inf accuracy / +inf RMSE) rather than aborting the sweep; best-cell ties
break to the first cell in iteration order (gamma outer, eta middle,
sigma inner, each ascending).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .classifier import TrkmClassifierHyperparams, fit_classifier, predict_labels
from .data import CLASSIFY, REGRESS, Dataset
from .errors import DegenerateSplit, EmptyClass, SingularSystem, TooFewSamples
from .kernels import gaussian
from .metrics import classification_accuracy, regression_errors
from .regressor import TrkmRegressorHyperparams, fit_regressor, predict_regression
from .rkm import fit_rkm, predict_rkm

TRKM = "trkm"
RKM = "rkm"

# Published benchmark search ranges: penalties 10^-5..10^5, bandwidth 2^-5..2^5.
PENALTY_GRID = tuple(10.0**k for k in range(-5, 6))
SIGMA_GRID = tuple(2.0**k for k in range(-5, 6))


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.7
    seed: int = 0
    stratified: bool = False

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train_fraction must be in (0, 1), got {self.train_fraction}")


@dataclass(frozen=True)
class GridSpec:
    gamma_values: tuple[float, ...] = PENALTY_GRID
    eta_values: tuple[float, ...] = PENALTY_GRID
    sigma_values: tuple[float, ...] = SIGMA_GRID
    equal_penalties: bool = True
    folds: int = 5

    def __post_init__(self):
        if not self.gamma_values or not self.eta_values or not self.sigma_values:
            raise ValueError("grid value lists must be non-empty")
        if self.folds < 2:
            raise ValueError(f"folds must be >= 2, got {self.folds}")


@dataclass(frozen=True)
class GridCell:
    params: dict
    mean_score: float
    fold_scores: tuple[float, ...]
    error: str = ""


@dataclass(frozen=True)
class GridResult:
    best_params: dict
    best_cv_score: float
    table: tuple[GridCell, ...] = field(repr=False)
    task: str = CLASSIFY


def _largest_remainder(counts: np.ndarray, total: int) -> np.ndarray:
    """Apportion ``total`` across groups proportionally to ``counts``."""
    quotas = total * counts / counts.sum()
    alloc = np.floor(quotas).astype(int)
    remainder = quotas - alloc
    short = total - int(alloc.sum())
    order = np.argsort(-remainder, kind="stable")
    for g in order[:short]:
        alloc[g] += 1
    return alloc


def split(dataset: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Deterministic random partition; stratified mode preserves class ratio."""
    n = dataset.n
    if n < 2:
        raise DegenerateSplit(f"cannot split {n} samples")
    n_train = int(np.floor(spec.train_fraction * n))
    if n_train == 0 or n_train == n:
        raise DegenerateSplit(
            f"fraction {spec.train_fraction} leaves an empty side for n={n}"
        )
    rng = np.random.default_rng(spec.seed)
    if not spec.stratified:
        perm = rng.permutation(n)
        train_idx = np.sort(perm[:n_train])
        test_idx = np.sort(perm[n_train:])
    else:
        if dataset.task != CLASSIFY:
            raise ValueError("stratified splitting requires class labels")
        classes = np.array([-1, 1])
        members = [np.flatnonzero(dataset.target == c) for c in classes]
        counts = np.array([len(m) for m in members])
        if (counts == 0).any():
            raise DegenerateSplit("a class has no samples")
        alloc = _largest_remainder(counts, n_train)
        if (alloc == 0).any() or (alloc == counts).any():
            raise DegenerateSplit(
                "stratified split would leave a class absent from train or test"
            )
        train_parts, test_parts = [], []
        for take, idx in zip(alloc, members):
            perm = idx[rng.permutation(len(idx))]
            train_parts.append(perm[:take])
            test_parts.append(perm[take:])
        train_idx = np.sort(np.concatenate(train_parts))
        test_idx = np.sort(np.concatenate(test_parts))
    return dataset.subset(train_idx), dataset.subset(test_idx)


def kfold_indices(n: int, k: int, seed: int = 0) -> list[tuple[np.ndarray, np.ndarray]]:
    """Shuffled k-fold partition of range(n); fold sizes differ by at most 1."""
    if k < 2:
        raise ValueError(f"folds must be >= 2, got {k}")
    if k > n:
        raise TooFewSamples(f"cannot make {k} folds from {n} samples")
    perm = np.random.default_rng(seed).permutation(n)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        valid = np.sort(perm[start:start + size])
        train = np.sort(np.concatenate([perm[:start], perm[start + size:]]))
        folds.append((train, valid))
        start += size
    return folds


def _grid_points(grid: GridSpec) -> list[dict]:
    gammas = sorted(grid.gamma_values)
    etas = sorted(grid.eta_values)
    sigmas = sorted(grid.sigma_values)
    if grid.equal_penalties:
        return [
            {"gamma": g, "eta": e, "sigma": s}
            for g in gammas for e in etas for s in sigmas
        ]
    return [
        {"gamma": g1, "gamma2": g2, "eta": e1, "eta2": e2, "sigma": s}
        for g1 in gammas for g2 in gammas
        for e1 in etas for e2 in etas
        for s in sigmas
    ]


def _fit_score(x_train, y_train, x_valid, y_valid, params, task, model_kind):
    kernel = gaussian(params["sigma"])
    if task == CLASSIFY:
        if model_kind == RKM:
            m = fit_rkm(x_train, y_train, params["gamma"], params["eta"], kernel)
            pred = predict_rkm(m, x_valid)
        else:
            hp = TrkmClassifierHyperparams(
                gamma1=params["gamma"],
                gamma2=params.get("gamma2", params["gamma"]),
                eta1=params["eta"],
                eta2=params.get("eta2", params["eta"]),
                kernel=kernel,
            )
            a = x_train[y_train == 1]
            b = x_train[y_train == -1]
            m = fit_classifier(a, b, hp)
            pred = predict_labels(m, x_valid)
        return classification_accuracy(pred, y_valid)
    hp = TrkmRegressorHyperparams(
        gamma1=params["gamma"],
        gamma2=params.get("gamma2", params["gamma"]),
        eta1=params["eta"],
        eta2=params.get("eta2", params["eta"]),
        kernel=kernel,
    )
    m = fit_regressor(x_train, y_train, hp)
    return regression_errors(predict_regression(m, x_valid), y_valid).rmse


def grid_search(
    train_set: Dataset,
    grid: GridSpec,
    task: str,
    model_kind: str = TRKM,
    seed: int = 0,
    threads: int = 1,
) -> GridResult:
    """Evaluate every grid cell by k-fold cross-validation on the training set."""
    if task not in (CLASSIFY, REGRESS):
        raise ValueError(f"unknown task {task!r}")
    if task != train_set.task:
        raise ValueError(f"dataset task is {train_set.task!r}, grid search asked for {task!r}")
    if model_kind not in (TRKM, RKM):
        raise ValueError(f"unknown model kind {model_kind!r}")
    if model_kind == RKM and task == REGRESS:
        raise ValueError("the RKM baseline supports classification only")
    folds = kfold_indices(train_set.n, grid.folds, seed)
    points = _grid_points(grid)
    worst = float("-inf") if task == CLASSIFY else float("inf")
    x, y = train_set.X, np.asarray(train_set.target, dtype=float)

    def eval_cell(params: dict) -> GridCell:
        scores = []
        for train_idx, valid_idx in folds:
            try:
                scores.append(
                    _fit_score(
                        x[train_idx], y[train_idx], x[valid_idx], y[valid_idx],
                        params, task, model_kind,
                    )
                )
            except (SingularSystem, EmptyClass) as exc:
                return GridCell(
                    params=params, mean_score=worst,
                    fold_scores=tuple(scores), error=str(exc),
                )
        return GridCell(
            params=params,
            mean_score=float(np.mean(scores)),
            fold_scores=tuple(scores),
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            table = tuple(pool.map(eval_cell, points))
    else:
        table = tuple(eval_cell(p) for p in points)

    best = table[0]
    for cell in table[1:]:
        if (task == CLASSIFY and cell.mean_score > best.mean_score) or (
            task == REGRESS and cell.mean_score < best.mean_score
        ):
            best = cell
    return GridResult(
        best_params=best.params,
        best_cv_score=best.mean_score,
        table=table,
        task=task,
    )
