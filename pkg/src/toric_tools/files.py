"""Versioned YAML input files and JSON-ready report encoding.

Every input file starts with ``format: 1``.  Fans::

    format: 1
    rays: [[1, 0], [0, 1], [-1, 0], [0, -1]]
    cones: [[0, 1], [1, 2], [2, 3], [3, 0]]

Binomial systems::

    format: 1
    characteristic: 2
    variables: [x, y, u2]
    weights: [8, 12, 30]
    binomials:
      - {m: [0, 2, 0], n: [3, 0, 0]}
      - {m: [0, 0, 4], n: [15, 0, 0], lambda: 1, deformation: [{exponent: [0, 0, 1], coeff: -1}]}
    gamma: [[8], [12], [30]]      # optional, defaults to the weights

Preorders::

    format: 1
    rank: 2
    rows: [[1, 0], [0, 1]]
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Any

import yaml

from .binomial import Binomial, BinomialSystem
from .cones import Cone
from .errors import InputError
from .fans import Fan, validate_fan
from .preorders import Preorder
from .series import CoefficientField

FORMAT_VERSION = 1


class ParseError(InputError):
    pass


def load_document(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    return parse_document(text, str(path))


def parse_document(text: str, source: str = "<input>") -> dict:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ParseError(f"{source}: {where}: {getattr(e, 'problem', None) or e}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: expected a mapping at top level")
    if doc.get("format") != FORMAT_VERSION:
        raise ParseError(f"{source}: field 'format': expected {FORMAT_VERSION}, got {doc.get('format')!r}")
    return doc


def _field(doc: dict, name: str, source: str, default: Any = ...):
    if name not in doc:
        if default is ...:
            raise ParseError(f"{source}: missing field '{name}'")
        return default
    return doc[name]


def _int_vector(v, where: str) -> tuple[int, ...]:
    if not isinstance(v, (list, tuple)) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise ParseError(f"{where}: expected a list of integers, got {v!r}")
    return tuple(v)


def _int_matrix(rows, where: str) -> list[tuple[int, ...]]:
    if not isinstance(rows, list):
        raise ParseError(f"{where}: expected a list of integer lists")
    return [_int_vector(r, f"{where}[{i}]") for i, r in enumerate(rows)]


def fan_from_doc(doc: dict, source: str = "<input>") -> Fan:
    rays = _int_matrix(_field(doc, "rays", source), f"{source}: field 'rays'")
    cones = _int_matrix(_field(doc, "cones", source), f"{source}: field 'cones'")
    r = doc.get("rank") or (len(rays[0]) if rays else None)
    if r is None:
        raise ParseError(f"{source}: field 'rank' is required when there are no rays")
    cone_list = []
    for i, idx in enumerate(cones):
        for j in idx:
            if not 0 <= j < len(rays):
                raise ParseError(f"{source}: field 'cones[{i}]': ray index {j} out of range")
        cone_list.append(Cone.from_generators([rays[j] for j in idx], r))
    return validate_fan(cone_list or [Cone.zero(r)], r)


def fan_to_doc(f: Fan) -> dict:
    rays = list(f.rays)
    index = {v: i for i, v in enumerate(rays)}
    return {
        "format": FORMAT_VERSION,
        "rank": f.ambient_rank,
        "rays": [list(v) for v in rays],
        "cones": [[index[v] for v in c.rays] for c in f.maximal_cones],
    }


def load_fan(path) -> Fan:
    return fan_from_doc(load_document(path), str(path))


def system_from_doc(doc: dict, source: str = "<input>") -> tuple[BinomialSystem, list | None]:
    char = _field(doc, "characteristic", source)
    if not isinstance(char, int):
        raise ParseError(f"{source}: field 'characteristic': expected an integer")
    fld = CoefficientField(char)
    variables = tuple(map(str, _field(doc, "variables", source)))
    weights = _int_vector(_field(doc, "weights", source), f"{source}: field 'weights'")
    raw = _field(doc, "binomials", source)
    if not isinstance(raw, list):
        raise ParseError(f"{source}: field 'binomials': expected a list")
    binomials, deformations = [], []
    for i, b in enumerate(raw):
        where = f"{source}: field 'binomials[{i}]'"
        if not isinstance(b, dict):
            raise ParseError(f"{where}: expected a mapping")
        m = _int_vector(_field(b, "m", where), f"{where}.m")
        n = _int_vector(_field(b, "n", where), f"{where}.n")
        lam = b.get("lambda", 1)
        try:
            binomials.append(Binomial(m, n, Fraction(str(lam))))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"{where}: {e}") from None
        terms = []
        for j, t in enumerate(b.get("deformation", [])):
            terms.append(
                (
                    _int_vector(_field(t, "exponent", f"{where}.deformation[{j}]"), f"{where}.deformation[{j}]"),
                    Fraction(str(t.get("coeff", 1))),
                )
            )
        deformations.append(tuple(terms))
    gamma = doc.get("gamma")
    if gamma is not None:
        gamma = _int_matrix(gamma, f"{source}: field 'gamma'")
    system = BinomialSystem(variables, weights, fld, tuple(binomials), tuple(deformations))
    return system, gamma


def load_system(path):
    return system_from_doc(load_document(path), str(path))


def preorder_from_doc(doc: dict, source: str = "<input>") -> Preorder:
    rows = _int_matrix(_field(doc, "rows", source), f"{source}: field 'rows'")
    r = doc.get("rank") or (len(rows[0]) if rows else None)
    if r is None:
        raise ParseError(f"{source}: field 'rank' is required for the trivial preorder")
    return Preorder(r, tuple(rows))


def load_preorder(path) -> Preorder:
    return preorder_from_doc(load_document(path), str(path))


def parse_vector(text: str) -> tuple[int, ...]:
    """'1,-2,3' -> (1, -2, 3)."""
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"cannot read integer vector from {text!r}") from None


def parse_terms(text: str) -> dict[int, Fraction]:
    """'12:1,15:1' -> {12: 1, 15: 1}; coefficients may be rationals 'a/b'."""
    out: dict[int, Fraction] = {}
    for item in text.split(","):
        exp, _, coeff = item.partition(":")
        try:
            out[int(exp)] = out.get(int(exp), 0) + Fraction(coeff or "1")
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot read term {item!r} (expected exponent:coefficient)") from None
    return out


def encode(obj):
    """Exact JSON encoding: rationals become 'a/b' strings, tuples become lists."""
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(obj, Cone):
        return [list(r) for r in obj.generators]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if hasattr(obj, "__int__"):
        return int(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")
