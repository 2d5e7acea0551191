import json
from pathlib import Path

import numpy as np
import pytest

from core.adapters.stores import MODEL_FORMAT_VERSION, dump_model, load_model, parse_model, save_model
from core.domain.errors import ModelVersionError, ParseError
from core.domain.geometry import enumerate_grid, published_grid
from core.domain.models import GpHyperGrid, fit_cognitive_model
from core.domain.synth import LatentField
from core.domain.trials import CognitiveFactors

SMALL_GRID = GpHyperGrid(amplitudes=(1.0,), length_scales=(1.0,), linear_slopes=(1.0,), noises=(1e-4,))
FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


@pytest.fixture(scope="module")
def inputs():
    field = LatentField()
    cells = enumerate_grid(published_grid()).valid_cells()
    factors = [CognitiveFactors(c.params, *field.factors(c.params), n_used=20) for c in cells]
    x = np.array([c.params.as_tuple() for c in cells])
    return factors, x


@pytest.mark.parametrize("family,orders", [("poly", (1,)), ("poly", (3,)), ("gp", (1,))])
def test_predictions_survive_round_trip(tmp_path, inputs, family, orders):
    factors, x = inputs
    model = fit_cognitive_model(factors, family=family, orders=orders, hyper_grid=SMALL_GRID).model
    path = save_model(model, tmp_path / "models" / "model.json")
    back = load_model(path)
    np.testing.assert_array_equal(back.predict_many(x), model.predict_many(x))
    assert back.metadata == model.metadata
    assert back.sigma_floor == model.sigma_floor


def test_field_model_round_trip(field_model, inputs):
    _, x = inputs
    back = parse_model(dump_model(field_model))
    np.testing.assert_array_equal(back.predict_many(x), field_model.predict_many(x))


def test_version_mismatch(field_model):
    doc = json.loads(dump_model(field_model))
    doc["format_version"] = MODEL_FORMAT_VERSION + 1
    with pytest.raises(ModelVersionError):
        parse_model(json.dumps(doc))


def test_malformed(field_model):
    with pytest.raises(ParseError):
        parse_model("{not json")
    doc = json.loads(dump_model(field_model))
    del doc["sigma_x"]
    with pytest.raises(ParseError):
        parse_model(json.dumps(doc))


def test_fixture_document(inputs):
    model = load_model(FIXTURES / "field_model.json")
    _, x = inputs
    assert model.predict_many(x).shape == (len(x), 3)
