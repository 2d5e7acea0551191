"""
Versioned JSON store for fitted cognitive models.

The document carries a format version, the sigma floor, metadata and one
entry per factor tagged by family (poly, gp or the closed-form field).
"""

import json
from pathlib import Path
from typing import Annotated, Any, Literal, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from core.domain.errors import ModelVersionError, ParseError
from core.domain.models import (
    CognitiveModel,
    GpHyperParams,
    GpModel,
    PolyModel,
    Standardizer,
)
from core.domain.synth import FieldRegressor, LatentField

MODEL_FORMAT_VERSION = 1


class _Doc(BaseModel):
    model_config = ConfigDict(extra="forbid")


class StandardizerDoc(_Doc):
    mean: list[float]
    scale: list[float]


class PolyDoc(_Doc):
    family: Literal["poly"] = "poly"
    target: str
    order: int
    ridge_lambda: float
    standardizer: StandardizerDoc
    intercept: float
    coef: list[float]


class GpHyperDoc(_Doc):
    amplitude: float
    length_scale: list[float]
    linear_offset: float
    linear_slope: float
    noise: float


class GpDoc(_Doc):
    family: Literal["gp"] = "gp"
    target: str
    hyper: GpHyperDoc
    standardizer: StandardizerDoc
    x_train: list[list[float]]
    dual_coef: list[float]


class FieldDoc(_Doc):
    family: Literal["field"] = "field"
    target: str
    alpha: float
    beta: float
    s0: float
    s1: float
    t0: float
    t1: float


RegressorDoc = Annotated[Union[PolyDoc, GpDoc, FieldDoc], Field(discriminator="family")]


class ModelDocument(_Doc):
    format_version: int
    sigma_floor: float
    metadata: dict[str, Any] = {}
    b: RegressorDoc
    sigma_x: RegressorDoc
    sigma_y: RegressorDoc


def _std_doc(s: Standardizer) -> StandardizerDoc:
    return StandardizerDoc(**s.to_dict())


def _to_doc(m) -> PolyDoc | GpDoc | FieldDoc:
    if isinstance(m, PolyModel):
        return PolyDoc(
            target=m.target,
            order=m.order,
            ridge_lambda=m.ridge_lambda,
            standardizer=_std_doc(m.standardizer),
            intercept=m.intercept,
            coef=np.asarray(m.coef, dtype=float).tolist(),
        )
    if isinstance(m, GpModel):
        h = m.hyper
        return GpDoc(
            target=m.target,
            hyper=GpHyperDoc(
                amplitude=h.amplitude,
                length_scale=list(h.length_scale),
                linear_offset=h.linear_offset,
                linear_slope=h.linear_slope,
                noise=h.noise,
            ),
            standardizer=_std_doc(m.standardizer),
            x_train=np.asarray(m.x_train, dtype=float).tolist(),
            dual_coef=np.asarray(m.dual_coef, dtype=float).tolist(),
        )
    if isinstance(m, FieldRegressor):
        f = m.field
        return FieldDoc(
            target=m.target, alpha=f.alpha, beta=f.beta, s0=f.s0, s1=f.s1, t0=f.t0, t1=f.t1
        )
    raise TypeError(f"cannot serialize regressor of type {type(m).__name__}")


def _from_doc(doc: PolyDoc | GpDoc | FieldDoc):
    if isinstance(doc, PolyDoc):
        return PolyModel(
            target=doc.target,
            order=doc.order,
            ridge_lambda=doc.ridge_lambda,
            standardizer=Standardizer.from_dict(doc.standardizer.model_dump()),
            intercept=doc.intercept,
            coef=np.asarray(doc.coef, dtype=float),
        )
    if isinstance(doc, GpDoc):
        return GpModel(
            target=doc.target,
            hyper=GpHyperParams(**doc.hyper.model_dump()),
            standardizer=Standardizer.from_dict(doc.standardizer.model_dump()),
            x_train=np.asarray(doc.x_train, dtype=float).reshape(-1, 3),
            dual_coef=np.asarray(doc.dual_coef, dtype=float),
        )
    params = doc.model_dump(exclude={"family", "target"})
    return FieldRegressor(LatentField(**params), doc.target)


def dump_model(model: CognitiveModel) -> str:
    doc = ModelDocument(
        format_version=MODEL_FORMAT_VERSION,
        sigma_floor=model.sigma_floor,
        metadata=model.metadata,
        b=_to_doc(model.model_b),
        sigma_x=_to_doc(model.model_sx),
        sigma_y=_to_doc(model.model_sy),
    )
    return json.dumps(doc.model_dump(), indent=2, sort_keys=True)


def parse_model(text: str, source: str = "<string>") -> CognitiveModel:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: {e.msg}", line=e.lineno) from e
    if not isinstance(raw, dict):
        raise ParseError(f"{source}: model document must be a JSON object")
    version = raw.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelVersionError(
            f"{source}: model format version {version!r}, expected {MODEL_FORMAT_VERSION}"
        )
    try:
        doc = ModelDocument.model_validate(raw)
    except ValidationError as e:
        raise ParseError(f"{source}: invalid model document: {e}") from e
    return CognitiveModel(
        model_b=_from_doc(doc.b),
        model_sx=_from_doc(doc.sigma_x),
        model_sy=_from_doc(doc.sigma_y),
        sigma_floor=doc.sigma_floor,
        metadata=dict(doc.metadata),
    )


def save_model(model: CognitiveModel, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_model(model) + "\n", encoding="utf-8")
    logger.bind(path=str(path)).info("Model saved")
    return path


def load_model(path: str | Path) -> CognitiveModel:
    path = Path(path)
    return parse_model(path.read_text(encoding="utf-8"), str(path))


__all__ = [
    "MODEL_FORMAT_VERSION",
    "ModelDocument",
    "dump_model",
    "parse_model",
    "save_model",
    "load_model",
]
