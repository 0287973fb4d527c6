"""Versioned model files with exact float round-tripping.

Layout: a JSON document ``{"format_version": 1, "checksum": "...",
"payload": {...}}``. Every real number in the payload is stored as C99
hexadecimal float text (``float.hex()``), so loading reproduces each value
bit for bit and predictions after a save/load round trip are bitwise
identical. The checksum is the SHA-256 of the canonical payload encoding
(sorted keys, no whitespace). Files are written atomically
(temp file + rename). Loading rejects unknown versions before anything
else, then verifies the checksum.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .classifier import TrkmClassifierHyperparams, TrkmClassifierModel
from .errors import CorruptModel, IoError, VersionMismatch
from .kernels import KernelSpec
from .regressor import TrkmRegressorHyperparams, TrkmRegressorModel
from .rkm import RkmModel

FORMAT_VERSION = 1

KIND_CLASSIFIER = "trkm_classifier"
KIND_REGRESSOR = "trkm_regressor"
KIND_RKM = "rkm"


@dataclass(frozen=True)
class SavedModel:
    """A numeric model plus the preprocessing metadata needed at predict time."""

    model: TrkmClassifierModel | TrkmRegressorModel | RkmModel
    kind: str
    task: str
    normalization: tuple[tuple[float, float], ...] | None = None
    label_mapping: tuple[tuple[str, int], ...] | None = None


def _hex(v: float) -> str:
    return float(v).hex()


def _unhex(s) -> float:
    try:
        return float.fromhex(s)
    except (TypeError, ValueError) as exc:
        raise CorruptModel(f"bad float field {s!r}") from exc


def _encode_array(a: np.ndarray) -> dict:
    flat = np.asarray(a, dtype=float).ravel(order="C")
    return {"shape": list(a.shape), "values": [_hex(v) for v in flat]}


def _decode_array(blob) -> np.ndarray:
    try:
        shape = tuple(int(s) for s in blob["shape"])
        values = [_unhex(v) for v in blob["values"]]
    except (KeyError, TypeError) as exc:
        raise CorruptModel(f"malformed array field: {exc}") from exc
    arr = np.array(values, dtype=float)
    if arr.size != int(np.prod(shape)):
        raise CorruptModel("array size does not match its shape")
    return arr.reshape(shape)


def _encode_kernel(spec: KernelSpec) -> dict:
    return {
        "family": spec.family,
        "sigma": _hex(spec.sigma) if spec.sigma is not None else None,
    }


def _decode_kernel(blob) -> KernelSpec:
    sigma = blob.get("sigma")
    return KernelSpec(blob["family"], _unhex(sigma) if sigma is not None else None)


def _payload(saved: SavedModel) -> dict:
    m = saved.model
    if saved.kind == KIND_CLASSIFIER:
        hp = m.hyperparams
        body = {
            "hyperparams": {
                "gamma1": _hex(hp.gamma1), "gamma2": _hex(hp.gamma2),
                "eta1": _hex(hp.eta1), "eta2": _hex(hp.eta2),
                "kernel": _encode_kernel(hp.kernel),
            },
            "A": _encode_array(m.A), "B": _encode_array(m.B),
            "h1": _encode_array(m.h1), "b1": _hex(m.b1),
            "h2": _encode_array(m.h2), "b2": _hex(m.b2),
        }
    elif saved.kind == KIND_REGRESSOR:
        hp = m.hyperparams
        body = {
            "hyperparams": {
                "gamma1": _hex(hp.gamma1), "gamma2": _hex(hp.gamma2),
                "eta1": _hex(hp.eta1), "eta2": _hex(hp.eta2),
                "kernel": _encode_kernel(hp.kernel),
            },
            "X": _encode_array(m.X), "Y": _encode_array(m.Y),
            "h1": _encode_array(m.h1), "b1": _hex(m.b1),
            "h2": _encode_array(m.h2), "b2": _hex(m.b2),
        }
    elif saved.kind == KIND_RKM:
        body = {
            "hyperparams": {
                "gamma": _hex(m.gamma), "eta": _hex(m.eta),
                "kernel": _encode_kernel(m.kernel),
            },
            "X": _encode_array(m.X), "y": _encode_array(m.y),
            "h": _encode_array(m.h), "b": _hex(m.b),
        }
    else:
        raise ValueError(f"unknown model kind {saved.kind!r}")
    return {
        "kind": saved.kind,
        "task": saved.task,
        "normalization": (
            None
            if saved.normalization is None
            else [[_hex(lo), _hex(hi)] for lo, hi in saved.normalization]
        ),
        "label_mapping": (
            None
            if saved.label_mapping is None
            else [[raw, int(code)] for raw, code in saved.label_mapping]
        ),
        "body": body,
    }


def _checksum(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def save_model(saved: SavedModel, path: str) -> None:
    """Write the model file atomically."""
    payload = _payload(saved)
    doc = {
        "format_version": FORMAT_VERSION,
        "checksum": _checksum(payload),
        "payload": payload,
    }
    text = json.dumps(doc, indent=1)
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".trkm-model-")
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


def load_model(path: str) -> SavedModel:
    """Read, version-check, checksum-verify, and reconstruct a model file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptModel(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise CorruptModel(f"{path}: missing format_version")
    if doc["format_version"] != FORMAT_VERSION:
        raise VersionMismatch(
            f"{path}: format version {doc['format_version']!r}, expected {FORMAT_VERSION}"
        )
    payload = doc.get("payload")
    if payload is None or "checksum" not in doc:
        raise CorruptModel(f"{path}: missing payload or checksum")
    if _checksum(payload) != doc["checksum"]:
        raise CorruptModel(f"{path}: checksum mismatch")
    try:
        return _reconstruct(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptModel(f"{path}: malformed payload ({exc})") from exc


def _reconstruct(payload: dict) -> SavedModel:
    kind = payload["kind"]
    body = payload["body"]
    normalization = payload.get("normalization")
    if normalization is not None:
        normalization = tuple((_unhex(lo), _unhex(hi)) for lo, hi in normalization)
    label_mapping = payload.get("label_mapping")
    if label_mapping is not None:
        label_mapping = tuple((str(raw), int(code)) for raw, code in label_mapping)

    if kind == KIND_CLASSIFIER:
        hp_blob = body["hyperparams"]
        hp = TrkmClassifierHyperparams(
            gamma1=_unhex(hp_blob["gamma1"]), gamma2=_unhex(hp_blob["gamma2"]),
            eta1=_unhex(hp_blob["eta1"]), eta2=_unhex(hp_blob["eta2"]),
            kernel=_decode_kernel(hp_blob["kernel"]),
        )
        model = TrkmClassifierModel(
            A=_decode_array(body["A"]), B=_decode_array(body["B"]),
            h1=_decode_array(body["h1"]), b1=_unhex(body["b1"]),
            h2=_decode_array(body["h2"]), b2=_unhex(body["b2"]),
            hyperparams=hp,
        )
    elif kind == KIND_REGRESSOR:
        hp_blob = body["hyperparams"]
        hp = TrkmRegressorHyperparams(
            gamma1=_unhex(hp_blob["gamma1"]), gamma2=_unhex(hp_blob["gamma2"]),
            eta1=_unhex(hp_blob["eta1"]), eta2=_unhex(hp_blob["eta2"]),
            kernel=_decode_kernel(hp_blob["kernel"]),
        )
        model = TrkmRegressorModel(
            X=_decode_array(body["X"]), Y=_decode_array(body["Y"]),
            h1=_decode_array(body["h1"]), b1=_unhex(body["b1"]),
            h2=_decode_array(body["h2"]), b2=_unhex(body["b2"]),
            hyperparams=hp,
        )
    elif kind == KIND_RKM:
        hp_blob = body["hyperparams"]
        model = RkmModel(
            X=_decode_array(body["X"]), y=_decode_array(body["y"]),
            h=_decode_array(body["h"]), b=_unhex(body["b"]),
            gamma=_unhex(hp_blob["gamma"]), eta=_unhex(hp_blob["eta"]),
            kernel=_decode_kernel(hp_blob["kernel"]),
        )
    else:
        raise CorruptModel(f"unknown model kind {kind!r}")
    task = payload["task"]
    return SavedModel(
        model=model, kind=kind, task=task,
        normalization=normalization, label_mapping=label_mapping,
    )
