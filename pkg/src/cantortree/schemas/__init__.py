"""JSON schemas for profile documents and the CLI's reports."""

import json
from importlib import resources

NAMES = ("profile", "pants_report", "lemmas_report", "dirichlet_report")


def load_schema(name):
    """Schema ``name`` (one of ``NAMES``) as a dict."""
    if name not in NAMES:
        raise KeyError(f"unknown schema {name!r}; expected one of {NAMES}")
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text(encoding="utf-8"))
