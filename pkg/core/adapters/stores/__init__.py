from .model_json import (
    MODEL_FORMAT_VERSION,
    ModelDocument,
    dump_model,
    parse_model,
    save_model,
    load_model,
)

__all__ = [
    "MODEL_FORMAT_VERSION",
    "ModelDocument",
    "dump_model",
    "parse_model",
    "save_model",
    "load_model",
]
