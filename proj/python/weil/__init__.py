"""Classification of Weil classes on abelian varieties from isogeny-level data."""

import json

from . import _core
from ._core import WeilError, __version__, fixture_names, hodge_test, sha256

__all__ = [
    "WeilError",
    "__version__",
    "classify",
    "example",
    "fixture_names",
    "hodge_test",
    "oracle",
    "sha256",
    "validate",
]


def _text(document):
    return document if isinstance(document, str) else json.dumps(document)


def example(name, seed=0):
    """Input document of a built-in example, as a dict."""
    return json.loads(_core.example(name, seed))


def classify(document, threads=1, oracle=False, precision=50, tolerance="1e-8", raw=False):
    """Report for an input document (dict or JSON text). raw=True returns the canonical text."""
    text = _core.classify(_text(document), threads, oracle, precision, str(tolerance))
    return text if raw else json.loads(text)


def oracle(which, document, precision=50, tolerance="1e-8"):
    """Run one oracle: "wedge", "hodge-type" or "witness"."""
    return json.loads(_core.oracle(which, _text(document), precision, str(tolerance)))


def validate(document):
    """List of (path, message) violations; empty when the datum is valid."""
    return _core.validate(_text(document))
