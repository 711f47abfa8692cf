"""JSON schemas for posets, scalars, elements, maps and preserver data.

Key formats: a poset is {"elements": [...], "covers": [[a, b], ...]}; an
algebra element is {"coeffs": {"x,y": scalar, ...}}; an endomorphism is
{"basis_order": ["x,y", ...], "matrix": [[scalar, ...], ...]} with column
j holding the image of basis vector j.  Rational scalars serialize as
integers or "num/den" strings, prime-field scalars as integers in [0, p).
All round-trips are bit-exact.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import AlgebraElement
from .analysis import LinearEndomorphism
from .errors import SchemaError
from .fields import Field, PrimeScalar, is_prime, prime_field, rationals
from .poset import Poset
from .structure import BasisBijection, ShiftData
from .synthesis import Decomposition


def parse_field_spec(text: str) -> Field:
    t = text.strip()
    if t in ("Q", "q", "rationals"):
        return rationals()
    if t.lower().startswith("fp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise SchemaError("--field", "p", f"not an integer: {t[3:]!r}")
        if not is_prime(p):
            raise SchemaError("--field", "p", f"{p} is not prime")
        return prime_field(p)
    raise SchemaError("--field", "kind", f"expected 'Q' or 'Fp:<p>', got {text!r}")


def field_spec_string(field: Field) -> str:
    return "Q" if field.is_rational else f"Fp:{field.p}"


def scalar_to_json(s):
    if isinstance(s, Fraction):
        return int(s) if s.denominator == 1 else f"{s.numerator}/{s.denominator}"
    if isinstance(s, PrimeScalar):
        return s.value
    raise SchemaError("scalar", "value", f"unserializable scalar {s!r}")


def scalar_from_json(field: Field, value, source: str = "scalar"):
    if field.is_rational:
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise SchemaError(source, "value", f"bad rational {value!r}")
        raise SchemaError(source, "value", f"expected int or 'num/den', got {value!r}")
    if isinstance(value, int):
        return PrimeScalar(value, field.p)
    raise SchemaError(source, "value", f"expected an integer mod {field.p}, got {value!r}")


def poset_to_json(poset: Poset) -> dict:
    return {
        "elements": list(poset.elements),
        "covers": [[a, b] for a, b in poset.covers],
    }


def poset_from_json(doc, source: str = "poset") -> Poset:
    if not isinstance(doc, dict):
        raise SchemaError(source, "", "expected an object")
    if "elements" not in doc or not isinstance(doc["elements"], list):
        raise SchemaError(source, "elements", "expected a list of labels")
    if "covers" not in doc or not isinstance(doc["covers"], list):
        raise SchemaError(source, "covers", "expected a list of [a, b] pairs")
    covers = []
    for k, entry in enumerate(doc["covers"]):
        if not isinstance(entry, list) or len(entry) != 2:
            raise SchemaError(source, f"covers[{k}]", "expected a pair [a, b]")
        covers.append((entry[0], entry[1]))
    return Poset(doc["elements"], covers)


def _label_lookup(poset: Poset) -> dict:
    return {str(x): x for x in poset.elements}


def _parse_pair_key(poset: Poset, key: str, source: str):
    lookup = _label_lookup(poset)
    parts = key.split(",")
    if len(parts) != 2 or parts[0] not in lookup or parts[1] not in lookup:
        raise SchemaError(source, key, "expected a key of the form 'x,y'")
    return lookup[parts[0]], lookup[parts[1]]


def pair_key(pair) -> str:
    return f"{pair[0]},{pair[1]}"


def element_to_json(elem: AlgebraElement) -> dict:
    return {
        "coeffs": {
            pair_key(p): scalar_to_json(elem.coeffs[p]) for p in elem.support
        }
    }


def element_from_json(poset: Poset, field: Field, doc,
                      source: str = "element") -> AlgebraElement:
    if not isinstance(doc, dict) or not isinstance(doc.get("coeffs"), dict):
        raise SchemaError(source, "coeffs", "expected an object of coefficients")
    coeffs = {}
    for key, raw in doc["coeffs"].items():
        pair = _parse_pair_key(poset, key, source)
        if not poset.leq(*pair):
            raise SchemaError(source, key, "pair is not comparable in the poset")
        coeffs[pair] = scalar_from_json(field, raw, source)
    return AlgebraElement(poset, field, coeffs)


def endomorphism_to_json(endo: LinearEndomorphism) -> dict:
    return {
        "basis_order": [pair_key(p) for p in endo.poset.comparable_pairs],
        "matrix": [[scalar_to_json(s) for s in row] for row in endo.matrix],
    }


def endomorphism_from_json(poset: Poset, field: Field, doc,
                           source: str = "map") -> LinearEndomorphism:
    if not isinstance(doc, dict):
        raise SchemaError(source, "", "expected an object")
    order = doc.get("basis_order")
    matrix = doc.get("matrix")
    dim = len(poset.comparable_pairs)
    if not isinstance(order, list) or len(order) != dim:
        raise SchemaError(source, "basis_order",
                          f"expected {dim} basis keys for this poset")
    declared = [_parse_pair_key(poset, key, source) for key in order]
    if set(declared) != set(poset.comparable_pairs):
        raise SchemaError(source, "basis_order",
                          "keys must enumerate every comparable pair once")
    if not isinstance(matrix, list) or len(matrix) != dim or any(
        not isinstance(row, list) or len(row) != dim for row in matrix
    ):
        raise SchemaError(source, "matrix", f"expected a {dim}x{dim} array")
    parsed = [
        [scalar_from_json(field, entry, source) for entry in row]
        for row in matrix
    ]
    # Reorder rows and columns from the declared basis to the canonical one.
    position = {pair: k for k, pair in enumerate(declared)}
    canon = poset.comparable_pairs
    reordered = [
        [parsed[position[canon[i]]][position[canon[j]]] for j in range(dim)]
        for i in range(dim)
    ]
    return LinearEndomorphism(poset, field, reordered)


def theta_to_json(theta: BasisBijection) -> dict:
    return {
        "map": {
            pair_key(p): pair_key(theta[p])
            for p in theta.poset.strict_pairs
        }
    }


def theta_from_json(poset: Poset, doc, source: str = "theta") -> BasisBijection:
    if not isinstance(doc, dict) or not isinstance(doc.get("map"), dict):
        raise SchemaError(source, "map", "expected an object of pair keys")
    mapping = {}
    for key, value in doc["map"].items():
        src = _parse_pair_key(poset, key, source)
        dst = _parse_pair_key(poset, str(value), source)
        mapping[src] = dst
    return BasisBijection(poset, mapping)


def scalar_map_to_json(poset: Poset, mapping) -> dict:
    return {
        pair_key(p): scalar_to_json(mapping[p]) for p in poset.strict_pairs
    }


def scalar_map_from_json(poset: Poset, field: Field, doc,
                         source: str = "scalars") -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(source, "", "expected an object of pair keys")
    out = {}
    for key, raw in doc.items():
        pair = _parse_pair_key(poset, key, source)
        out[pair] = scalar_from_json(field, raw, source)
    for pair in poset.strict_pairs:
        if pair not in out:
            raise SchemaError(source, pair_key(pair), "missing strict pair")
    return out


def alpha_to_json(alpha: ShiftData) -> list:
    return [
        element_to_json(alpha.image_of(p)) for p in alpha.poset.comparable_pairs
    ]


def alpha_from_json(poset: Poset, field: Field, doc,
                    source: str = "alpha") -> ShiftData:
    if not isinstance(doc, list) or len(doc) != len(poset.comparable_pairs):
        raise SchemaError(
            source, "",
            f"expected a list of {len(poset.comparable_pairs)} diagonal elements",
        )
    images = {}
    for pair, entry in zip(poset.comparable_pairs, doc):
        images[pair] = element_from_json(poset, field, entry, source)
    return ShiftData(poset, field, images)


def kappa_to_json(kappa) -> list:
    return [scalar_to_json(k) for k in kappa]


def kappa_from_json(field: Field, doc, source: str = "kappa") -> tuple:
    if not isinstance(doc, list):
        raise SchemaError(source, "", "expected a list of scalars")
    return tuple(scalar_from_json(field, k, source) for k in doc)


def decomposition_to_json(d: Decomposition) -> dict:
    return {
        "alpha": alpha_to_json(d.alpha),
        "theta": theta_to_json(d.theta),
        "sigma": scalar_map_to_json(d.theta.poset, d.sigma),
        "c": scalar_map_to_json(d.theta.poset, d.c),
        "kappa": kappa_to_json(d.kappa),
    }


def decomposition_from_json(poset: Poset, field: Field, doc,
                            source: str = "decomposition") -> Decomposition:
    if not isinstance(doc, dict):
        raise SchemaError(source, "", "expected an object")
    for key in ("alpha", "theta", "sigma", "c", "kappa"):
        if key not in doc:
            raise SchemaError(source, key, "missing")
    return Decomposition(
        alpha=alpha_from_json(poset, field, doc["alpha"], f"{source}.alpha"),
        theta=theta_from_json(poset, doc["theta"], f"{source}.theta"),
        sigma=scalar_map_from_json(poset, field, doc["sigma"], f"{source}.sigma"),
        c=scalar_map_from_json(poset, field, doc["c"], f"{source}.c"),
        kappa=kappa_from_json(field, doc["kappa"], f"{source}.kappa"),
    )


def load_json(path: str):
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise SchemaError(path, "", "file not found")
    except json.JSONDecodeError as exc:
        raise SchemaError(path, "", f"malformed JSON: {exc}")


def dump_json(path: str, doc) -> None:
    with open(path, "w") as handle:
        json.dump(doc, handle, indent=2)
        handle.write("\n")
