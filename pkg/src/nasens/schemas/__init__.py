"""JSON schemas for certificates, N-set listings and the claims table."""

import json
from functools import lru_cache
from importlib import resources

import jsonschema


@lru_cache(maxsize=None)
def load(name):
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text())


def validate(doc, name):
    """Raise ``ValueError`` when ``doc`` does not match schema ``name``."""
    try:
        jsonschema.validate(doc, load(name))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise ValueError(f"{name} document invalid at '{path}': {exc.message}") from None
