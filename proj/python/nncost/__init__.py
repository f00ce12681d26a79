"""FLOPs, energy and carbon footprint of layer-chain neural networks."""

import json

from . import _nncost
from ._nncost import __version__

__all__ = [
    "NncostError",
    "analyze",
    "compare",
    "curve",
    "parse_spec",
    "normalize_spec",
    "network_cost",
    "hardware_profiles",
    "zoo",
    "handle",
    "__version__",
]


class NncostError(Exception):
    """Raised for invalid inputs. Carries the error code, CLI exit code and location."""

    def __init__(self, message, code, exit_code, line=None, column=None):
        super().__init__(message)
        self.message = message
        self.code = code
        self.exit_code = exit_code
        self.line = line
        self.column = column


def _call(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except _nncost.Error as e:
        raise NncostError(*e.args) from None


def _body(request):
    return request if isinstance(request, str) else json.dumps(request)


def analyze(request):
    """Run an analysis. `request` is a dict or JSON text shaped like POST /api/v1/analyze."""
    return json.loads(_call(_nncost.analyze, _body(request)))


def compare(request):
    return json.loads(_call(_nncost.compare, _body(request)))


def curve(request):
    return json.loads(_call(_nncost.curve, _body(request)))


def parse_spec(text, strict=True):
    """Parse `.nnspec` text into its JSON form."""
    return json.loads(_call(_nncost.parse_spec, text, strict))


def normalize_spec(text, strict=True):
    """Canonical `.nnspec` serialization of `text`."""
    return _call(_nncost.normalize_spec, text, strict)


def network_cost(text, strict=True):
    return json.loads(_call(_nncost.network_cost, text, strict))


def hardware_profiles():
    return json.loads(_nncost.hardware_profiles())


def zoo():
    return json.loads(_nncost.zoo())


def handle(method, path, body=None, content_type="application/json"):
    """Dispatch one /api/v1 request in-process. Returns (status, parsed JSON body)."""
    status, text = _nncost.handle(method, path, content_type, "" if body is None else _body(body))
    return status, json.loads(text)
