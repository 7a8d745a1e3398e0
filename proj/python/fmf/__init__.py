"""Full-Metadata Format files: reading, writing, units and quantity search."""

import json
from fractions import Fraction

from ._fmf import Document, FmfError, Index
from . import _fmf

__all__ = [
    "Document",
    "FmfError",
    "Index",
    "convert",
    "feature_vector",
    "parse",
    "parse_quantity",
    "parse_value",
    "read",
    "value",
]

_BASE = ("m", "kg", "s", "A", "K", "mol", "cd", "EUR")


def _dims(pairs):
    return {name: Fraction(n, d) for name, (n, d) in zip(_BASE, pairs) if n}


def parse(data):
    """Returns (Document, diagnostics) for raw bytes or text."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    return _fmf.parse(data)


def read(path):
    return _fmf.read(str(path))


def value(document, section, key):
    """The typed value of one item, as plain Python data."""
    return json.loads(document.value_json(section, key))


def parse_value(text):
    tag, encoded = _fmf.parse_value(text)
    return tag, json.loads(encoded)


def parse_quantity(text):
    q = _fmf.parse_quantity(text)
    q["dimension"] = _dims(q["dimension"])
    return q


def feature_vector(text):
    """(q0, {base unit: exponent}) with q0 in coherent SI units."""
    q0, pairs = _fmf.feature_vector(text)
    return q0, _dims(pairs)


def convert(text, target):
    return _fmf.convert(text, target)
