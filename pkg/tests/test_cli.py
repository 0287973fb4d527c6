import json
import os

import numpy as np
import pytest

from trkm.cli import main
from trkm.synthetic import blobs, crossplane, sine, write_classification_csv, write_regression_csv

from conftest import DATA_DIR


@pytest.fixture
def blob_csv(tmp_path):
    x, y = blobs(12, 5.0, seed=0)
    path = tmp_path / "blobs.csv"
    write_classification_csv(str(path), x, y)
    return str(path)


@pytest.fixture
def sine_csv(tmp_path):
    x, y = sine(40, seed=3)
    path = tmp_path / "sine.csv"
    write_regression_csv(str(path), x, y)
    return str(path)


def run(*argv):
    return main(list(argv))


def test_train_then_predict_classifier(tmp_path, blob_csv, capsys):
    model_path = str(tmp_path / "model.json")
    code = run(
        "--output-dir", str(tmp_path),
        "train", "--task", "classify", "--data", blob_csv, "--label-col", "label",
        "--gamma", "0.1", "--eta", "0.001", "--sigma", "4",
        "--model-out", model_path,
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "residual" in out and "balance" in out and "condition" in out
    assert os.path.exists(model_path)

    pred_path = str(tmp_path / "preds.csv")
    code = run(
        "predict", "--model", model_path, "--data", blob_csv,
        "--label-col", "label", "--output", pred_path,
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "accuracy: 100.0000%" in out
    lines = open(pred_path).read().strip().splitlines()
    assert lines[0] == "prediction"
    assert len(lines) == 25  # header + 24 predictions
    assert set(lines[1:]) <= {"-1", "1"}


def test_predict_regressor_prints_four_metrics(tmp_path, sine_csv, capsys):
    model_path = str(tmp_path / "model.json")
    assert run(
        "train", "--task", "regress", "--data", sine_csv, "--target-col", "target",
        "--gamma", "0.001", "--eta", "0.001", "--sigma", "1",
        "--model-out", model_path,
    ) == 0
    capsys.readouterr()
    assert run(
        "predict", "--model", model_path, "--data", sine_csv,
        "--target-col", "target", "--output", str(tmp_path / "p.csv"),
    ) == 0
    out = capsys.readouterr().out
    for key in ("rmse:", "mae:", "pos_error:", "neg_error:"):
        assert key in out


def test_missing_required_flag_exits_2(capsys):
    assert run("train", "--task", "classify") == 2
    assert "usage" in capsys.readouterr().err


def test_unreadable_data_exits_3(tmp_path, capsys):
    assert run(
        "train", "--task", "classify", "--data", str(tmp_path / "nope.csv"),
        "--label-col", "y", "--gamma", "1", "--eta", "1", "--sigma", "1",
        "--model-out", str(tmp_path / "m.json"),
    ) == 3


def test_singular_fit_exits_4_naming_the_system(tmp_path, capsys):
    path = tmp_path / "dup.csv"
    path.write_text("a,b,label\n0,0,1\n0,0,1\n1,1,-1\n2,2,-1\n")
    code = run(
        "train", "--task", "classify", "--data", str(path), "--label-col", "label",
        "--kernel", "linear", "--no-normalize",
        "--gamma", "1e300", "--eta", "1e-300",
        "--model-out", str(tmp_path / "m.json"),
    )
    assert code == 4
    assert "class +1 system" in capsys.readouterr().err


def test_feature_count_mismatch_exits_3(tmp_path, blob_csv, capsys):
    model_path = str(tmp_path / "model.json")
    assert run(
        "train", "--task", "classify", "--data", blob_csv, "--label-col", "label",
        "--gamma", "1", "--eta", "1", "--sigma", "1", "--model-out", model_path,
    ) == 0
    wide = tmp_path / "wide.csv"
    wide.write_text("a,b,c\n1,2,3\n")
    assert run(
        "predict", "--model", model_path, "--data", str(wide),
        "--output", str(tmp_path / "p.csv"),
    ) == 3
    err = capsys.readouterr().err
    assert "3" in err and "2" in err  # both counts appear in the message


def test_gridsearch_single_cell_equals_train(tmp_path, blob_csv):
    grid_model = str(tmp_path / "grid_model.json")
    assert run(
        "--output-dir", str(tmp_path),
        "gridsearch", "--task", "classify", "--data", blob_csv, "--label-col", "label",
        "--gamma-grid", "0.1", "--eta-grid", "0.001", "--sigma-grid", "4",
        "--folds", "2", "--grid-out", str(tmp_path / "grid.json"),
        "--model-out", grid_model,
    ) == 0
    train_model = str(tmp_path / "train_model.json")
    assert run(
        "train", "--task", "classify", "--data", blob_csv, "--label-col", "label",
        "--gamma", "0.1", "--eta", "0.001", "--sigma", "4",
        "--model-out", train_model,
    ) == 0
    grid_doc = json.load(open(grid_model))
    train_doc = json.load(open(train_model))
    assert grid_doc["payload"] == train_doc["payload"]
    table = json.load(open(tmp_path / "grid.json"))
    assert len(table["cells"]) == 1
    assert table["best_params"] == {"gamma": 0.1, "eta": 0.001, "sigma": 4.0}


def test_gridsearch_default_grid_has_1331_cells(tmp_path):
    x, y = blobs(8, 5.0, seed=4)
    data = tmp_path / "tiny.csv"
    write_classification_csv(str(data), x, y)
    grid_out = str(tmp_path / "grid.json")
    assert run(
        "gridsearch", "--task", "classify", "--data", str(data),
        "--label-col", "label",
        "--grid-out", grid_out, "--model-out", str(tmp_path / "m.json"),
    ) == 0
    table = json.load(open(grid_out))
    assert len(table["cells"]) == 11 * 11 * 11


def test_gridsearch_table_is_deterministic(tmp_path, blob_csv):
    out1 = str(tmp_path / "g1.json")
    out2 = str(tmp_path / "g2.json")
    for out in (out1, out2):
        assert run(
            "--seed", "5",
            "gridsearch", "--task", "classify", "--data", blob_csv,
            "--label-col", "label",
            "--gamma-grid", "0.01,1", "--eta-grid", "0.1,1", "--sigma-grid", "0.5,2",
            "--folds", "3", "--grid-out", out,
            "--model-out", str(tmp_path / "m.json"),
        ) == 0
    assert open(out1).read() == open(out2).read()


def test_stats_command_replicates_published_tables(tmp_path, capsys):
    scores = str(DATA_DIR / "reference" / "classification_accuracy.csv")
    assert run(
        "--output-dir", str(tmp_path),
        "stats", "--scores-file", scores, "--better", "higher",
        "--critical-value", "2.2657",
    ) == 0
    report = json.load(open(tmp_path / "stats_report.json"))
    assert report["friedman"]["reject_null"] is True
    assert abs(report["friedman"]["chi2"] - 48.95) <= 0.03 * 48.95
    assert abs(report["nemenyi"]["critical_difference"] - 1.2567) < 0.0005
    published_ranks = [4.98, 4.00, 3.86, 2.77, 3.16, 2.20]
    assert all(
        abs(got - want) <= 0.05
        for got, want in zip(report["average_ranks"], published_ranks)
    )
    trkm_vs_svm = [
        w for w in report["win_tie_loss"]
        if w["row"] == "TRKM-C" and w["column"] == "SVM"
    ]
    assert (trkm_vs_svm[0]["wins"], trkm_vs_svm[0]["ties"], trkm_vs_svm[0]["losses"]) == (31, 1, 4)
    text = open(tmp_path / "stats_report.txt").read()
    assert "average ranks" in text and "friedman" in text


def test_benchmark_scores_file_mode(tmp_path):
    scores = str(DATA_DIR / "reference" / "regression_rmse.csv")
    assert run(
        "--output-dir", str(tmp_path),
        "benchmark", "--scores-file", scores, "--better", "lower",
    ) == 0
    report = json.load(open(tmp_path / "stats_report.json"))
    assert abs(report["friedman"]["chi2"] - 35.44) < 0.01
    assert report["average_ranks"] == [3.2, 4.0, 4.8, 1.7, 1.3]


def benchmark_config(tmp_path, n_datasets=2, seeds=(0,)):
    paths = []
    for i in range(n_datasets):
        x, y = blobs(10 + 2 * i, 4.0 + i, seed=i)
        p = tmp_path / f"ds{i}.csv"
        write_classification_csv(str(p), x, y)
        paths.append(str(p))
    cfg = {
        "task": "classify",
        "split": {"train_fraction": 0.7, "stratified": True, "seeds": list(seeds)},
        "datasets": [
            {"name": f"ds{i}", "path": p, "label_column": "label"}
            for i, p in enumerate(paths)
        ],
        "models": [
            {"name": "TRKM-C", "kind": "trkm",
             "fixed": {"gamma": 0.1, "eta": 0.01, "sigma": 1.0}},
            {"name": "RKM", "kind": "rkm",
             "fixed": {"gamma": 0.1, "eta": 0.01, "sigma": 1.0}},
        ],
    }
    cfg_path = tmp_path / "bench.json"
    cfg_path.write_text(json.dumps(cfg))
    return str(cfg_path)


def test_benchmark_end_to_end(tmp_path):
    cfg = benchmark_config(tmp_path)
    out = tmp_path / "out"
    assert run("--output-dir", str(out), "benchmark", "--config", cfg) == 0
    scores = open(out / "scores.csv").read().strip().splitlines()
    assert scores[0] == "dataset,TRKM-C,RKM"
    assert len(scores) == 3
    report = json.load(open(out / "stats_report.json"))
    ranks = np.array(report["average_ranks"])
    assert np.allclose(ranks.sum(), 3.0)  # two models: row ranks sum to 3


def test_benchmark_missing_dataset_warns_but_succeeds(tmp_path, capsys):
    cfg_path = benchmark_config(tmp_path)
    cfg = json.load(open(cfg_path))
    cfg["datasets"].append({"name": "ghost", "path": str(tmp_path / "ghost.csv"),
                            "label_column": "label"})
    open(cfg_path, "w").write(json.dumps(cfg))
    out = tmp_path / "out"
    assert run("--output-dir", str(out), "benchmark", "--config", cfg_path) == 0
    assert "ghost" in capsys.readouterr().err
    report = json.load(open(out / "stats_report.json"))
    assert [f["dataset"] for f in report["failures"]] == ["ghost"]
    assert report["datasets"] == ["ds0", "ds1"]


def test_benchmark_is_byte_identical_across_reruns(tmp_path):
    cfg = benchmark_config(tmp_path, n_datasets=3, seeds=(0, 1))
    outs = []
    for name in ("run1", "run2"):
        out = tmp_path / name
        assert run("--seed", "7", "--output-dir", str(out),
                   "benchmark", "--config", cfg) == 0
        outs.append(out)
    for fname in ("scores.csv", "stats_report.txt", "stats_report.json"):
        a = (outs[0] / fname).read_bytes()
        b = (outs[1] / fname).read_bytes()
        assert a == b, fname
