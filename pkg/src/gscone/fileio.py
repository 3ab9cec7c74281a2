"""Text and JSON formats for valuations and matroids.

Valuation text format::

    n=5
    {1,2}: -1
    {1,2,3}: -2
    {}: 0

Unlisted subsets default to 0.  The JSON form is
``{"n": 5, "values": {"1,2": "-1", ...}}`` with ``""`` for the empty set.

Matroid text format::

    n=3
    bases: {1,2} {1,3} {2,3}
"""

import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import InputError, ParseError
from .subsets import MAX_ITEMS, format_key, format_set, parse_items

_HEADER = re.compile(r"^n\s*=\s*(\d+)$")
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_ROW = re.compile(r"^(\{[^}]*\})\s*:\s*(\S+)$")


def _parse_rational(text, path=None, line=None):
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ParseError("bad rational %r" % text, path, line)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError("zero denominator in %r" % text, path, line) from None


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_header(lines, path):
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError("empty file, expected 'n=<int>'", path, 1) from None
    m = _HEADER.match(line)
    if not m:
        raise ParseError("expected 'n=<int>', got %r" % line, path, lineno)
    n = int(m.group(1))
    if n > MAX_ITEMS:
        raise ParseError("n=%d exceeds the limit of %d" % (n, MAX_ITEMS), path, lineno)
    return n


def parse_valuation_text(text, path=None):
    from .valuation import Valuation

    lines = _content_lines(text)
    n = _parse_header(lines, path)
    table = {}
    for lineno, line in lines:
        m = _ROW.match(line)
        if not m:
            raise ParseError("expected '{i,j,...}: <rational>', got %r" % line, path, lineno)
        try:
            S = parse_items(m.group(1), n)
        except ParseError as exc:
            raise ParseError(str(exc), path, lineno) from None
        if S in table:
            raise ParseError("duplicate entry for %s" % format_set(S), path, lineno)
        table[S] = _parse_rational(m.group(2), path, lineno)
    return Valuation.from_dict(n, table)


def format_valuation_text(v, skip_zero=False):
    out = ["n=%d" % v.n]
    for S, x in enumerate(v.values):
        if skip_zero and x == 0:
            continue
        out.append("%s: %s" % (format_set(S), x))
    return "\n".join(out) + "\n"


def valuation_to_json(v):
    return {"n": v.n, "values": {format_key(S): str(x) for S, x in enumerate(v.values)}}


def valuation_from_json(obj, path=None):
    from .valuation import Valuation

    if not isinstance(obj, dict) or "n" not in obj or "values" not in obj:
        raise ParseError("JSON valuation needs keys 'n' and 'values'", path)
    n = obj["n"]
    if not isinstance(n, int) or not 0 <= n <= MAX_ITEMS:
        raise ParseError("bad n %r" % (n,), path)
    if not isinstance(obj["values"], dict):
        raise ParseError("'values' must be an object", path)
    table = {}
    for key, x in obj["values"].items():
        S = parse_items(key, n)
        if S in table:
            raise ParseError("duplicate entry for %s" % format_set(S), path)
        table[S] = _parse_rational(str(x), path)
    return Valuation.from_dict(n, table)


def load_valuation(path):
    """Read a valuation from a ``.json`` file or the text format."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError("%s: %s" % (path, exc.strerror)) from None
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, path, exc.lineno) from None
        return valuation_from_json(obj, path)
    return parse_valuation_text(text, path)


def save_valuation(v, path):
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(valuation_to_json(v), indent=1) + "\n", encoding="utf-8")
    else:
        path.write_text(format_valuation_text(v), encoding="utf-8")


def parse_matroid_text(text, path=None):
    from .matroid import Matroid

    lines = _content_lines(text)
    n = _parse_header(lines, path)
    bases = None
    for lineno, line in lines:
        if not line.startswith("bases:"):
            raise ParseError("expected 'bases: {..} {..}', got %r" % line, path, lineno)
        if bases is not None:
            raise ParseError("duplicate 'bases:' line", path, lineno)
        body = line[len("bases:"):]
        found = re.findall(r"\{[^}]*\}", body)
        if re.sub(r"\{[^}]*\}", "", body).strip():
            raise ParseError("junk between basis sets", path, lineno)
        bases = []
        for tok in found:
            try:
                bases.append(parse_items(tok, n))
            except ParseError as exc:
                raise ParseError(str(exc), path, lineno) from None
    if not bases:
        raise ParseError("no bases given", path)
    try:
        return Matroid(n, bases)
    except InputError as exc:
        raise ParseError(str(exc), path) from None


def format_matroid_text(m):
    return "n=%d\nbases: %s\n" % (m.n, " ".join(format_set(B) for B in m.bases))


def load_matroid(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError("%s: %s" % (path, exc.strerror)) from None
    return parse_matroid_text(text, path)
