"""Density degree sets of curves and surfaces, backed by the C++ engine."""

import json as _json

from . import _core
from ._core import FactError, NeedsFact, SchemaError, n_general, n_index1, n_pointed, request_kinds

__all__ = [
    "FactError",
    "NeedsFact",
    "SchemaError",
    "evaluate",
    "materialize",
    "n_general",
    "n_index1",
    "n_pointed",
    "request_kinds",
    "rules",
    "selftest",
]


def evaluate(kind, data, assume=(), strict=True, window=200, curves=None):
    """Bounds for a request; `data` and `curves` are JSON-compatible objects."""
    out = _core.evaluate(kind, _json.dumps(data), list(assume), strict, window,
                         "" if curves is None else _json.dumps(curves))
    return _json.loads(out)


def rules():
    return _json.loads(_core.rules())


def selftest(path):
    return _core.selftest(str(path))


def materialize(spec, bound=200):
    return _core.materialize(_json.dumps(spec), bound)
