"""Model persistence as JSON documents: kind, params, and fitted state."""

from __future__ import annotations

import json
from pathlib import Path
from types import MappingProxyType

from . import _ESTIMATORS, TrainedModel, validate_params

FORMAT = "smelldetect-model-v1"


def model_to_document(model: TrainedModel) -> dict:
    return {
        "format": FORMAT,
        "kind": model.kind,
        "params": dict(model.params),
        "feature_count": model.feature_count,
        "feature_names": list(model.feature_names),
        "seed": model.seed,
        "state": model.estimator.to_state(),
    }


def model_from_document(doc: dict) -> TrainedModel:
    if doc.get("format") != FORMAT:
        raise ValueError(f"not a {FORMAT} document")
    kind = doc["kind"]
    params = validate_params(kind, doc["params"])
    est_cls = _ESTIMATORS[kind]
    estimator = est_cls.from_state(doc["state"], **params)
    return TrainedModel(
        kind=kind,
        params=MappingProxyType(params),
        feature_count=doc["feature_count"],
        estimator=estimator,
        seed=doc.get("seed", 0),
        feature_names=tuple(doc.get("feature_names", ())),
    )


def save_model(model: TrainedModel, path) -> None:
    Path(path).write_text(
        json.dumps(model_to_document(model), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def load_model(path) -> TrainedModel:
    return model_from_document(json.loads(Path(path).read_text(encoding="utf-8")))
