"""Series file format and text rendering.

File format::

    {"n": 2, "order": 3,
     "terms": [{"exp": [0, 0], "num": "1", "den": "1"}, ...]}

Terms are written in graded-lex order, canonical form only.  Readers accept
any term order, duplicates and zeros, and canonicalize.
"""

import json
from fractions import Fraction

from .errors import ArgumentError
from .series import TruncatedSeries, make_series


def series_to_dict(f):
    return {
        "n": f.n,
        "order": f.order,
        "terms": [
            {"exp": list(alpha), "num": str(c.numerator), "den": str(c.denominator)}
            for alpha, c in f.coeffs.items()
        ],
    }


def series_from_dict(doc):
    try:
        n = int(doc["n"])
        order = int(doc["order"])
        terms = [
            (tuple(t["exp"]), Fraction(int(t["num"]), int(t["den"])))
            for t in doc.get("terms", [])
        ]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ArgumentError(f"malformed series document: {exc}") from exc
    return make_series(n, order, terms)


def dumps_series(f):
    return json.dumps(series_to_dict(f), indent=2) + "\n"


def loads_series(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"series file is not valid JSON: {exc}") from exc
    return series_from_dict(doc)


def write_series(f, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_series(f))


def read_series(path):
    with open(path, encoding="utf-8") as fh:
        return loads_series(fh.read())


def _monomial(alpha):
    parts = []
    for i, e in enumerate(alpha, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_series(f):
    """Render as an expression the parser reads back to the same series."""
    if not isinstance(f, TruncatedSeries):
        raise ArgumentError("format_series expects a TruncatedSeries")
    if not f.coeffs:
        return "0"
    pieces = []
    for alpha, c in f.coeffs.items():
        mono = _monomial(alpha)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f"{sign} {body}")
    return " ".join(pieces)
