"""Command-line interface: train, predict, gridsearch, benchmark, stats.

Exit codes: 0 success, 2 usage errors, 3 data errors (unreadable or
malformed files, mismatched columns), 4 numerical failures (singular
systems, degenerate statistics). All result files are written atomically
(temp file + rename) and contain no timestamps, so a rerun with the same
seed produces byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import model_io
from .classifier import (
    TrkmClassifierHyperparams,
    fit_classifier,
    predict_labels,
)
from .data import (
    CLASSIFY,
    REGRESS,
    Dataset,
    apply_normalization,
    load_csv,
    load_feature_matrix,
    map_labels,
    normalize_minmax,
    parse_feature_table,
)
from .errors import (
    DATA_ERRORS,
    NUMERIC_ERRORS,
    FeatureCountMismatch,
    IoError,
    ParseError,
)
from .kernels import GAUSSIAN, LINEAR, KernelSpec, gaussian, linear
from .metrics import classification_accuracy, regression_errors
from .regressor import (
    TrkmRegressorHyperparams,
    fit_regressor,
    predict_regression,
)
from .rkm import fit_rkm, predict_rkm
from .selection import (
    PENALTY_GRID,
    RKM,
    SIGMA_GRID,
    TRKM,
    GridSpec,
    SplitSpec,
    grid_search,
    split,
)
from .stats import (
    HIGHER,
    LOWER,
    NEMENYI_Q_05,
    friedman_test,
    nemenyi_cd,
    rank_models,
    win_tie_loss,
)


# ---------------------------------------------------------------------------
# atomic output helpers

def _write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".trkm-out-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _write_json(path: str, obj) -> None:
    _write_text(path, json.dumps(obj, indent=2) + "\n")


def _out_path(args, name: str) -> str:
    return os.path.join(args.output_dir, name)


# ---------------------------------------------------------------------------
# shared pieces

def _kernel_from_args(kernel: str, sigma: float | None) -> KernelSpec:
    if kernel == LINEAR:
        return linear()
    if sigma is None:
        raise ParseError("--sigma is required for the gaussian kernel")
    return gaussian(sigma)


def _load_dataset(args) -> Dataset:
    if args.task == CLASSIFY:
        if args.label_col is None:
            raise ParseError("--label-col is required for --task classify")
        return load_csv(
            args.data, label_column=_column(args.label_col),
            delimiter=args.delimiter, header=not args.no_header,
        )
    if args.target_col is None:
        raise ParseError("--target-col is required for --task regress")
    return load_csv(
        args.data, target_column=_column(args.target_col),
        delimiter=args.delimiter, header=not args.no_header,
    )


def _column(ref: str):
    """Column flags accept a 0-based index or a header name."""
    try:
        return int(ref)
    except ValueError:
        return ref


def _fit_from_params(dataset: Dataset, kind: str, hp_dict: dict, kernel: KernelSpec):
    """Fit one model on a whole dataset; returns (model, model_io kind)."""
    if dataset.task == CLASSIFY:
        if kind == RKM:
            model = fit_rkm(
                dataset.X, dataset.target.astype(float),
                hp_dict["gamma"], hp_dict["eta"], kernel,
            )
            return model, model_io.KIND_RKM
        hp = TrkmClassifierHyperparams(
            gamma1=hp_dict["gamma"], gamma2=hp_dict.get("gamma2", hp_dict["gamma"]),
            eta1=hp_dict["eta"], eta2=hp_dict.get("eta2", hp_dict["eta"]),
            kernel=kernel,
        )
        a = dataset.X[dataset.target == 1]
        b = dataset.X[dataset.target == -1]
        model = fit_classifier(a, b, hp)
        return model, model_io.KIND_CLASSIFIER
    hp = TrkmRegressorHyperparams(
        gamma1=hp_dict["gamma"], gamma2=hp_dict.get("gamma2", hp_dict["gamma"]),
        eta1=hp_dict["eta"], eta2=hp_dict.get("eta2", hp_dict["eta"]),
        kernel=kernel,
    )
    model = fit_regressor(dataset.X, dataset.target, hp)
    return model, model_io.KIND_REGRESSOR


def _predict_with(saved: model_io.SavedModel, x: np.ndarray):
    if saved.kind == model_io.KIND_CLASSIFIER:
        return predict_labels(saved.model, x)
    if saved.kind == model_io.KIND_RKM:
        return predict_rkm(saved.model, x)
    return predict_regression(saved.model, x)


def _fit_report(model, kind: str) -> str:
    lines = []
    if kind == model_io.KIND_RKM:
        rep = model.fit_diag
        lines.append(
            f"system: residual {rep.residual_norm:.3e}, "
            f"condition estimate {rep.condition_estimate:.3e}"
        )
        lines.append(f"balance: sum(h) = {model.h.sum():.9g} (expected 0)")
        return "\n".join(lines)
    rep1, rep2 = model.fit_diag
    if kind == model_io.KIND_CLASSIFIER:
        names = ("class +1 system", "class -1 system")
        n1, n2 = model.A.shape[0], model.B.shape[0]
        expect = (f"{n2}", f"{-n1}")
    else:
        names = ("lower-function system", "upper-function system")
        n = model.X.shape[0]
        expect = (f"{n}", f"{n}")
    for name, rep in zip(names, (rep1, rep2)):
        lines.append(
            f"{name}: residual {rep.residual_norm:.3e}, "
            f"condition estimate {rep.condition_estimate:.3e}"
        )
    lines.append(f"balance: sum(h1) = {model.h1.sum():.9g} (expected {expect[0]})")
    lines.append(f"balance: sum(h2) = {model.h2.sum():.9g} (expected {expect[1]})")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# train

def cmd_train(args) -> int:
    dataset = _load_dataset(args)
    normalization = None
    if not args.no_normalize:
        dataset = normalize_minmax(dataset)
        normalization = dataset.normalization
    kernel = _kernel_from_args(args.kernel, args.sigma)
    hp = {"gamma": args.gamma, "eta": args.eta}
    if args.gamma2 is not None:
        hp["gamma2"] = args.gamma2
    if args.eta2 is not None:
        hp["eta2"] = args.eta2
    model, kind = _fit_from_params(dataset, args.model_kind, hp, kernel)
    saved = model_io.SavedModel(
        model=model, kind=kind, task=dataset.task,
        normalization=normalization, label_mapping=dataset.label_mapping,
    )
    model_io.save_model(saved, args.model_out)
    print(f"task: {dataset.task}  model: {kind}")
    print(f"data: {args.data} (n={dataset.n}, features={dataset.n_features})")
    print(_fit_report(model, kind))
    print(f"model written to {args.model_out}")
    return 0


# ---------------------------------------------------------------------------
# predict

def cmd_predict(args) -> int:
    saved = model_io.load_model(args.model)
    truth_col = args.label_col if args.label_col is not None else args.target_col
    if args.label_col is not None and saved.task != CLASSIFY:
        raise ParseError("--label-col given but the model is a regressor")
    if args.target_col is not None and saved.task != REGRESS:
        raise ParseError("--target-col given but the model is a classifier")

    raw_truth = None
    if truth_col is not None:
        x, raw_truth, _ = parse_feature_table(
            args.data, _column(truth_col), args.delimiter, not args.no_header
        )
    else:
        x, _ = load_feature_matrix(args.data, args.delimiter, not args.no_header)

    trained_m = (
        saved.model.A.shape[1]
        if saved.kind == model_io.KIND_CLASSIFIER
        else saved.model.X.shape[1]
    )
    if x.shape[1] != trained_m:
        raise FeatureCountMismatch(
            f"data has {x.shape[1]} feature columns, model expects {trained_m}"
        )
    if saved.normalization is not None:
        dataset = Dataset(X=x, target=np.zeros(x.shape[0]), task=saved.task)
        x = apply_normalization(dataset, saved.normalization).X

    pred = _predict_with(saved, x)

    lines = ["prediction"]
    if saved.task == CLASSIFY and saved.label_mapping is not None:
        inverse = {code: raw for raw, code in saved.label_mapping}
        lines += [inverse[int(v)] for v in pred]
    else:
        lines += [repr(float(v)) if saved.task == REGRESS else str(int(v)) for v in pred]
    _write_text(args.output, "\n".join(lines) + "\n")
    print(f"{len(pred)} predictions written to {args.output}")

    if raw_truth is not None:
        if saved.task == CLASSIFY:
            if saved.label_mapping is not None:
                lookup = dict(saved.label_mapping)
                unknown = sorted({t for t in raw_truth if t not in lookup})
                if unknown:
                    raise ParseError(f"truth labels {unknown} unknown to the model")
                truth = np.array([lookup[t] for t in raw_truth], dtype=np.int64)
            else:
                truth, _ = map_labels(raw_truth)
            acc = classification_accuracy(pred, truth)
            print(f"accuracy: {acc:.4f}%")
        else:
            truth = np.array([float(t) for t in raw_truth])
            err = regression_errors(pred, truth)
            print(f"rmse: {err.rmse:.8g}")
            print(f"mae: {err.mae:.8g}")
            print(f"pos_error: {err.pos_error:.8g}")
            print(f"neg_error: {err.neg_error:.8g}")
    return 0


# ---------------------------------------------------------------------------
# gridsearch

def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ParseError(f"bad grid list {text!r}") from None


def cmd_gridsearch(args) -> int:
    dataset = _load_dataset(args)
    normalization = None
    if not args.no_normalize:
        dataset = normalize_minmax(dataset)
        normalization = dataset.normalization
    grid = GridSpec(
        gamma_values=_float_list(args.gamma_grid),
        eta_values=_float_list(args.eta_grid),
        sigma_values=_float_list(args.sigma_grid),
        equal_penalties=not args.per_class_penalties,
        folds=args.folds,
    )
    result = grid_search(
        dataset, grid, dataset.task,
        model_kind=args.model_kind, seed=args.seed, threads=args.threads,
    )
    blob = {
        "task": result.task,
        "model_kind": args.model_kind,
        "seed": args.seed,
        "folds": grid.folds,
        "best_params": result.best_params,
        "best_cv_score": result.best_cv_score,
        "cells": [
            {
                "params": cell.params,
                "mean_score": cell.mean_score,
                "fold_scores": list(cell.fold_scores),
                "error": cell.error,
            }
            for cell in result.table
        ],
    }
    _write_json(args.grid_out, blob)
    print(f"evaluated {len(result.table)} grid cells "
          f"({grid.folds}-fold cross-validation)")
    print(f"best params: {result.best_params}  cv score: {result.best_cv_score:.6g}")
    print(f"grid table written to {args.grid_out}")

    kernel = gaussian(result.best_params["sigma"])
    model, kind = _fit_from_params(dataset, args.model_kind, result.best_params, kernel)
    saved = model_io.SavedModel(
        model=model, kind=kind, task=dataset.task,
        normalization=normalization, label_mapping=dataset.label_mapping,
    )
    model_io.save_model(saved, args.model_out)
    print(f"best model retrained on the full training data: {args.model_out}")
    return 0


# ---------------------------------------------------------------------------
# stats reporting shared by `stats` and `benchmark`

def _read_scores_csv(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            rows = [line.rstrip("\n").split(",") for line in fh if line.strip()]
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if len(rows) < 2 or len(rows[0]) < 3:
        raise ParseError(f"{path}: need a header plus rows of dataset,score,score,...")
    model_names = [c.strip() for c in rows[0][1:]]
    dataset_names, matrix = [], []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(rows[0]):
            raise ParseError(f"{path}: line {i} has {len(row)} columns, "
                             f"expected {len(rows[0])}")
        dataset_names.append(row[0].strip())
        try:
            matrix.append([float(c) for c in row[1:]])
        except ValueError:
            raise ParseError(f"{path}: line {i}: non-numeric score") from None
    return model_names, dataset_names, np.array(matrix, dtype=float)


def _stats_report(model_names, dataset_names, matrix, better, q_alpha, critical_value):
    ranks = rank_models(matrix, better)
    report = {
        "better": better,
        "models": list(model_names),
        "datasets": list(dataset_names),
        "scores": [[float(v) for v in row] for row in matrix],
        "average_ranks": [float(v) for v in ranks.average_ranks],
    }
    lines = []
    n_datasets, p = matrix.shape
    lines.append(f"{p} models compared over {n_datasets} datasets "
                 f"({'higher' if better == HIGHER else 'lower'} scores are better)")
    lines.append("")
    lines.append("average ranks (1 = best):")
    for name, rank in zip(model_names, ranks.average_ranks):
        lines.append(f"  {name:<24s} {rank:.4f}")

    if n_datasets >= 2:
        fr = friedman_test(ranks, critical_value)
        report["friedman"] = {
            "chi2": fr.chi2, "ff": fr.ff, "df1": fr.df1, "df2": fr.df2,
            "critical_value": fr.critical_value, "reject_null": fr.reject_null,
        }
        lines.append("")
        lines.append(f"friedman: chi2 = {fr.chi2:.4f}, F = {fr.ff:.4f} "
                     f"(df {fr.df1}, {fr.df2})")
        if critical_value is not None:
            verdict = "rejected" if fr.reject_null else "not rejected"
            lines.append(f"null hypothesis {verdict} at critical value {critical_value:g}")

    q = q_alpha if q_alpha is not None else NEMENYI_Q_05.get(p)
    if q is not None:
        cd = nemenyi_cd(p, n_datasets, q)
        report["nemenyi"] = {"q_alpha": q, "critical_difference": cd}
        lines.append(f"nemenyi critical difference (q = {q:g}): {cd:.4f}")

    wtl_rows = []
    lines.append("")
    lines.append("pairwise win-tie-loss (row model vs column model):")
    header = " " * 26 + "".join(f"{name:>18s}" for name in model_names[:-1])
    lines.append(header)
    for i in range(1, p):
        cells = []
        for j in range(i):
            w = win_tie_loss(matrix[:, i], matrix[:, j], better)
            wtl_rows.append({
                "row": model_names[i], "column": model_names[j],
                "wins": w.wins, "ties": w.ties, "losses": w.losses,
                "threshold": w.threshold,
            })
            cells.append(f"[{w.wins:d},{w.ties:d},{w.losses:d}]")
        lines.append(f"  {model_names[i]:<24s}" + "".join(f"{c:>18s}" for c in cells))
    threshold = n_datasets / 2.0 + 1.96 * np.sqrt(n_datasets) / 2.0
    lines.append(f"significance threshold: more than {threshold:.2f} wins")
    report["win_tie_loss"] = wtl_rows
    report["win_threshold"] = threshold
    return "\n".join(lines) + "\n", report


def cmd_stats(args) -> int:
    model_names, dataset_names, matrix = _read_scores_csv(args.scores_file)
    text, report = _stats_report(
        model_names, dataset_names, matrix,
        args.better, args.q_alpha, args.critical_value,
    )
    _write_text(_out_path(args, "stats_report.txt"), text)
    _write_json(_out_path(args, "stats_report.json"), report)
    sys.stdout.write(text)
    print(f"reports written to {_out_path(args, 'stats_report.txt')} and .json")
    return 0


# ---------------------------------------------------------------------------
# benchmark

def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def _benchmark_dataset(ds_cfg: dict, cfg: dict, args) -> dict:
    """Score every configured model on one dataset; returns per-model scores."""
    task = cfg.get("task", CLASSIFY)
    if task == CLASSIFY:
        dataset = load_csv(
            ds_cfg["path"], label_column=_column(str(ds_cfg["label_column"])),
            delimiter=ds_cfg.get("delimiter", ","), header=ds_cfg.get("header", True),
        )
    else:
        dataset = load_csv(
            ds_cfg["path"], target_column=_column(str(ds_cfg["target_column"])),
            delimiter=ds_cfg.get("delimiter", ","), header=ds_cfg.get("header", True),
        )
    split_cfg = cfg.get("split", {})
    seeds = split_cfg.get("seeds", [cfg.get("seed", args.seed)])
    fraction = split_cfg.get("train_fraction", 0.7)
    stratified = split_cfg.get("stratified", task == CLASSIFY)
    normalize = cfg.get("normalize", True)

    per_model: dict[str, list[float]] = {m["name"]: [] for m in cfg["models"]}
    for seed in seeds:
        train, test = split(
            dataset, SplitSpec(train_fraction=fraction, seed=seed, stratified=stratified)
        )
        if normalize:
            train = normalize_minmax(train)
            test = apply_normalization(test, train.normalization)
        for m_cfg in cfg["models"]:
            kind = m_cfg.get("kind", TRKM)
            if "fixed" in m_cfg:
                params = dict(m_cfg["fixed"])
            else:
                g_cfg = m_cfg.get("grid", {})
                grid = GridSpec(
                    gamma_values=tuple(g_cfg.get("gamma", PENALTY_GRID)),
                    eta_values=tuple(g_cfg.get("eta", PENALTY_GRID)),
                    sigma_values=tuple(g_cfg.get("sigma", SIGMA_GRID)),
                    equal_penalties=g_cfg.get("equal_penalties", True),
                    folds=g_cfg.get("folds", 5),
                )
                params = grid_search(
                    train, grid, task, model_kind=kind,
                    seed=seed, threads=args.threads,
                ).best_params
            kernel = gaussian(params["sigma"])
            model, _ = _fit_from_params(train, kind, params, kernel)
            if task == CLASSIFY:
                pred = (
                    predict_rkm(model, test.X) if kind == RKM
                    else predict_labels(model, test.X)
                )
                score = classification_accuracy(pred, test.target)
            else:
                score = regression_errors(
                    predict_regression(model, test.X), test.target
                ).rmse
            per_model[m_cfg["name"]].append(score)
    return {name: float(np.mean(vals)) for name, vals in per_model.items()}


def cmd_benchmark(args) -> int:
    if args.scores_file is not None:
        model_names, dataset_names, matrix = _read_scores_csv(args.scores_file)
        better = args.better
        failures = []
    else:
        cfg = _load_config(args.config)
        if not cfg.get("datasets") or not cfg.get("models"):
            raise ParseError(f"{args.config}: need at least one dataset and one model")
        task = cfg.get("task", CLASSIFY)
        better = HIGHER if task == CLASSIFY else LOWER
        model_names = [m["name"] for m in cfg["models"]]
        dataset_names, rows, failures = [], [], []
        for ds_cfg in cfg["datasets"]:
            name = ds_cfg.get("name", ds_cfg["path"])
            try:
                scores = _benchmark_dataset(ds_cfg, cfg, args)
            except (*DATA_ERRORS, *NUMERIC_ERRORS) as exc:
                failures.append({"dataset": name, "error": str(exc)})
                print(f"warning: dataset {name} failed: {exc}", file=sys.stderr)
                continue
            dataset_names.append(name)
            rows.append([scores[m] for m in model_names])
        if not rows:
            raise ParseError("every dataset failed; nothing to rank")
        matrix = np.array(rows, dtype=float)

    scores_lines = ["dataset," + ",".join(model_names)]
    for name, row in zip(dataset_names, matrix):
        scores_lines.append(name + "," + ",".join(repr(float(v)) for v in row))
    _write_text(_out_path(args, "scores.csv"), "\n".join(scores_lines) + "\n")

    text, report = _stats_report(
        model_names, dataset_names, matrix, better, args.q_alpha, args.critical_value
    )
    report["failures"] = failures
    if failures:
        text += "failed datasets:\n" + "".join(
            f"  {f['dataset']}: {f['error']}\n" for f in failures
        )
    _write_text(_out_path(args, "stats_report.txt"), text)
    _write_json(_out_path(args, "stats_report.json"), report)
    sys.stdout.write(text)
    print(f"score matrix written to {_out_path(args, 'scores.csv')}")
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trkm",
        description="Twin restricted kernel machines: training, prediction, "
                    "grid search, benchmarking, and comparison statistics.",
    )
    parser.add_argument("--seed", type=int, default=0, help="global random seed")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for grid evaluation")
    parser.add_argument("--output-dir", default=".", help="directory for result files")
    sub = parser.add_subparsers(dest="command", required=True)

    # accept the global flags after the subcommand too; SUPPRESS keeps the
    # subparser from clobbering the top-level defaults when a flag is absent
    global_opts = argparse.ArgumentParser(add_help=False)
    global_opts.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    global_opts.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    global_opts.add_argument("--output-dir", default=argparse.SUPPRESS)

    common_data = argparse.ArgumentParser(add_help=False)
    common_data.add_argument("--data", required=True, help="CSV file")
    common_data.add_argument("--label-col", help="label column (classification)")
    common_data.add_argument("--target-col", help="target column (regression)")
    common_data.add_argument("--delimiter", default=",")
    common_data.add_argument("--no-header", action="store_true")

    p_train = sub.add_parser("train", parents=[global_opts, common_data],
                             help="fit one model with fixed hyperparameters")
    p_train.add_argument("--task", required=True, choices=(CLASSIFY, REGRESS))
    p_train.add_argument("--model-kind", choices=(TRKM, RKM), default=TRKM)
    p_train.add_argument("--gamma", type=float, required=True,
                         help="weight-norm regularizer (gamma1; also gamma2 unless --gamma2)")
    p_train.add_argument("--eta", type=float, required=True,
                         help="hidden-feature regularizer (eta1; also eta2 unless --eta2)")
    p_train.add_argument("--gamma2", type=float, help="second-system gamma override")
    p_train.add_argument("--eta2", type=float, help="second-system eta override")
    p_train.add_argument("--kernel", choices=(GAUSSIAN, LINEAR), default=GAUSSIAN)
    p_train.add_argument("--sigma", type=float, help="gaussian bandwidth")
    p_train.add_argument("--no-normalize", action="store_true",
                         help="skip min-max feature normalization")
    p_train.add_argument("--model-out", default=None)
    p_train.set_defaults(func=cmd_train)

    p_pred = sub.add_parser("predict", parents=[global_opts],
                            help="predict with a saved model")
    p_pred.add_argument("--model", required=True)
    p_pred.add_argument("--data", required=True)
    p_pred.add_argument("--label-col", help="truth labels for accuracy reporting")
    p_pred.add_argument("--target-col", help="truth targets for error reporting")
    p_pred.add_argument("--delimiter", default=",")
    p_pred.add_argument("--no-header", action="store_true")
    p_pred.add_argument("--output", default=None)
    p_pred.set_defaults(func=cmd_predict)

    p_grid = sub.add_parser("gridsearch", parents=[global_opts, common_data],
                            help="cross-validated grid search, then retrain the best cell")
    p_grid.add_argument("--task", required=True, choices=(CLASSIFY, REGRESS))
    p_grid.add_argument("--model-kind", choices=(TRKM, RKM), default=TRKM)
    p_grid.add_argument("--gamma-grid", default=",".join(repr(v) for v in PENALTY_GRID))
    p_grid.add_argument("--eta-grid", default=",".join(repr(v) for v in PENALTY_GRID))
    p_grid.add_argument("--sigma-grid", default=",".join(repr(v) for v in SIGMA_GRID))
    p_grid.add_argument("--folds", type=int, default=5)
    p_grid.add_argument("--per-class-penalties", action="store_true",
                        help="search gamma/eta per class instead of tying them")
    p_grid.add_argument("--no-normalize", action="store_true")
    p_grid.add_argument("--grid-out", default=None)
    p_grid.add_argument("--model-out", default=None)
    p_grid.set_defaults(func=cmd_gridsearch)

    p_bench = sub.add_parser("benchmark", parents=[global_opts],
                             help="train/score many models over many datasets, then rank")
    group = p_bench.add_mutually_exclusive_group(required=True)
    group.add_argument("--config", help="JSON benchmark configuration")
    group.add_argument("--scores-file",
                       help="precomputed dataset-by-model score CSV (skips training)")
    p_bench.add_argument("--better", choices=(HIGHER, LOWER), default=HIGHER,
                         help="score direction for --scores-file mode")
    p_bench.add_argument("--q-alpha", type=float, default=None)
    p_bench.add_argument("--critical-value", type=float, default=None)
    p_bench.set_defaults(func=cmd_benchmark)

    p_stats = sub.add_parser("stats", parents=[global_opts],
                             help="rank/Friedman/Nemenyi/sign-test on a score CSV")
    p_stats.add_argument("--scores-file", required=True)
    p_stats.add_argument("--better", choices=(HIGHER, LOWER), default=HIGHER)
    p_stats.add_argument("--q-alpha", type=float, default=None)
    p_stats.add_argument("--critical-value", type=float, default=None)
    p_stats.set_defaults(func=cmd_stats)

    return parser


def _apply_default_paths(args) -> None:
    if getattr(args, "model_out", None) is None and hasattr(args, "model_out"):
        args.model_out = _out_path(args, "model.json")
    if getattr(args, "grid_out", None) is None and hasattr(args, "grid_out"):
        args.grid_out = _out_path(args, "grid_results.json")
    if getattr(args, "output", None) is None and hasattr(args, "output"):
        args.output = _out_path(args, "predictions.csv")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _apply_default_paths(args)
    try:
        return args.func(args)
    except NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
