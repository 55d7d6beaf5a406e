"""Case files: JSON documents describing one extension and its supplied data.

Numbers are exact: integers, or rationals written as "num/den" strings.
Group elements are exponent vectors in the group's invariant-factor basis.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import jsonschema

from .cyclotomic import Cyclotomic
from .dirichlet import DirichletGroup, PlaceSpec
from .errors import InconsistentSets, SchemaError, UnknownElement
from .groups import FiniteAbelianGroup
from .stickelberger import LValueTable

SCHEMA_VERSION = 1

_RATIONAL = {"oneOf": [{"type": "integer"},
                       {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"}]}
_ELEMENT = {"type": "array", "items": {"type": "integer"}}
_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_TERMS = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {"element": _ELEMENT, "coefficient": _RATIONAL},
        "required": ["element", "coefficient"],
        "additionalProperties": False,
    },
}
_PROVENANCE = {"type": "string", "minLength": 1}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "group"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "description": {"type": "string"},
        "group": {
            "type": "object",
            "required": ["invariants"],
            "additionalProperties": False,
            "properties": {
                "invariants": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
                "c": _ELEMENT,
            },
        },
        "base_field": {
            "type": "object",
            "required": ["degree"],
            "additionalProperties": False,
            "properties": {
                "name": {"type": "string"},
                "degree": {"type": "integer", "minimum": 1},
                "conductor": {"type": "integer", "minimum": 1},
                "kernel": {"type": "array", "items": {"type": "integer"}},
            },
        },
        "places": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "kind"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string", "minLength": 1},
                    "kind": {"enum": ["S", "T", "none"]},
                    "archimedean": {"type": "boolean"},
                    "prime": {"type": "integer", "minimum": 2},
                    "norm": {"type": "integer", "minimum": 2},
                    "decomposition": {"type": "array", "items": _ELEMENT},
                    "inertia": {"type": "array", "items": _ELEMENT},
                    "frobenius": _ELEMENT,
                    "sigma": {"type": "boolean"},
                    "sigma_prime": {"type": "boolean"},
                    "provenance": _PROVENANCE,
                },
            },
        },
        "l_values": {
            "type": "object",
            "required": ["values"],
            "additionalProperties": False,
            "properties": {
                "provenance": _PROVENANCE,
                "values": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["character", "m", "coefficients"],
                        "additionalProperties": False,
                        "properties": {
                            "character": _ELEMENT,
                            "m": {"type": "integer", "minimum": 1},
                            "coefficients": {"type": "array", "items": _RATIONAL},
                        },
                    },
                },
            },
        },
        "class_group": {"$ref": "#/$defs/class_group"},
        "class_group_plus": {
            "type": "object",
            "required": ["invariants"],
            "additionalProperties": False,
            "properties": {
                "provenance": _PROVENANCE,
                "invariants": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            },
        },
        "nabla": {
            "type": "object",
            "required": ["prime", "matrix"],
            "additionalProperties": False,
            "properties": {
                "provenance": _PROVENANCE,
                "prime": {"type": "integer", "minimum": 2},
                "precision": {"type": "integer", "minimum": 4},
                "t": {"type": "integer", "minimum": 0},
                "matrix": {"type": "array", "items": {"type": "array", "items": _TERMS}},
            },
        },
        "bs_unit": {
            "type": "object",
            "required": ["prime_label", "valuations"],
            "additionalProperties": False,
            "properties": {
                "provenance": _PROVENANCE,
                "prime_label": {"type": "string"},
                "generator": {"type": "string"},
                "theta_exponent": {"type": "integer"},
                "valuations": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["sigma", "ord"],
                        "additionalProperties": False,
                        "properties": {"sigma": _ELEMENT, "ord": {"type": "integer"}},
                    },
                },
                "absolute_value_one": {"$ref": "#/$defs/attestation"},
                "t_congruence": {"$ref": "#/$defs/attestation"},
            },
        },
        "parameters": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "p": {"type": "integer", "minimum": 2},
                "t": {"type": "integer", "minimum": 0},
                "n": {"type": "integer", "minimum": 1},
                "annihilation_exponent": {"type": "integer", "minimum": 0},
                "precision": {"type": "integer", "minimum": 4},
            },
        },
        "assumptions": {
            "type": "object",
            "additionalProperties": False,
            "properties": {k: {"type": "boolean"} for k in ("A", "B", "B_p", "C")},
        },
        "provenance": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "$defs": {
        "class_group": {
            "type": "object",
            "required": ["invariants", "actions"],
            "additionalProperties": False,
            "properties": {
                "provenance": _PROVENANCE,
                "label": {"type": "string"},
                "invariants": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "actions": {"type": "array", "items": _MATRIX},
            },
        },
        "attestation": {
            "type": "object",
            "required": ["attested"],
            "additionalProperties": False,
            "properties": {"attested": {"type": "boolean"}, "provenance": _PROVENANCE,
                           "detail": {"type": "string"}},
        },
    },
}

# blocks whose numbers come from outside and must name their source
_EXTERNAL = ("l_values", "class_group", "class_group_plus", "nabla", "bs_unit")


def rational(x):
    return Fraction(x)


@dataclass
class CasePlace:
    label: str
    kind: str
    archimedean: bool = False
    prime: int = None
    norm: int = None
    decomposition: list = None
    inertia: list = field(default_factory=list)
    frobenius: tuple = None
    sigma: bool = False
    sigma_prime: bool = False

    def spec(self):
        """The place as consumed by the L-value and Stickelberger code."""
        if self.archimedean:
            inertia = tuple(self.inertia)
            return PlaceSpec(self.label, "archimedean", None, None, self.frobenius, inertia, bool(inertia))
        inertia = tuple(g for g in self.inertia if any(g))
        return PlaceSpec(self.label, "finite", self.norm, self.prime, self.frobenius, inertia, bool(inertia))

    def local(self):
        from .ritter_weiss import LocalPlace
        kind = "" if self.kind == "none" else self.kind
        return LocalPlace(self.label, self.decomposition, list(self.inertia), self.frobenius,
                          kind, self.archimedean)


@dataclass
class CaseFile:
    path: str
    raw: dict
    group: FiniteAbelianGroup
    degree: int
    places: list
    dirichlet: object = None
    l_values: LValueTable = None
    class_group: dict = None
    class_group_plus: dict = None
    nabla: dict = None
    bs_unit: dict = None
    parameters: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @property
    def name(self):
        return self.raw.get("name", Path(self.path).stem if self.path else "case")

    def places_of(self, kind):
        return [v for v in self.places if v.kind == kind]

    def place(self, label):
        for v in self.places:
            if v.label == label:
                return v
        raise UnknownElement(f"no place labelled {label!r}")

    @property
    def assumptions(self):
        return dict(self.raw.get("assumptions", {}))

    @property
    def n(self):
        return self.parameters.get("n", self.degree)

    @property
    def over_Q(self):
        return self.dirichlet is not None


def _pointer(path):
    return "/" + "/".join(str(p) for p in path)


def validate(doc):
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(f"{_pointer(err.absolute_path)}: {err.message}", pointer=_pointer(err.absolute_path))


def _element(G, v, where):
    v = tuple(v)
    if len(v) != G.rank or any(not 0 <= x < d for x, d in zip(v, G.invariants)):
        raise UnknownElement(f"{where}: {list(v)} is not an element of {G}")
    return v


def _group(doc):
    inv = doc["group"]["invariants"]
    c = doc["group"].get("c")
    G = FiniteAbelianGroup(inv)
    c = _element(G, c, "/group/c") if c is not None else None
    return FiniteAbelianGroup(inv, c)


def _places(doc, G, dg):
    seen = set()
    places = []
    for i, p in enumerate(doc.get("places", [])):
        where = f"/places/{i}"
        if p["label"] in seen:
            raise InconsistentSets(f"{where}: duplicate place label {p['label']!r}")
        seen.add(p["label"])
        arch = p.get("archimedean", False)
        if not arch and "prime" not in p:
            raise SchemaError(f"{where}: finite places need a prime", pointer=where)
        place = CasePlace(p["label"], p["kind"], arch, p.get("prime"), p.get("norm", p.get("prime")),
                          sigma=p.get("sigma", p["kind"] == "S"),
                          sigma_prime=p.get("sigma_prime", p["kind"] == "T"))
        if dg is not None and "decomposition" not in p:
            spec = dg.archimedean() if arch else dg.place(p["prime"])
            place.inertia = [tuple(g) for g in spec.inertia]
            place.frobenius = tuple(spec.frobenius)
            place.decomposition = [place.frobenius] + list(place.inertia)
        else:
            if "decomposition" in p:
                place.decomposition = [_element(G, g, f"{where}/decomposition") for g in p["decomposition"]]
            place.inertia = [_element(G, g, f"{where}/inertia") for g in p.get("inertia", [])]
            if "frobenius" in p:
                place.frobenius = _element(G, p["frobenius"], f"{where}/frobenius")
        places.append(place)
    S = {v.label for v in places if v.kind == "S"}
    T = {v.label for v in places if v.kind == "T"}
    if S & T:
        raise InconsistentSets(f"places in both S and T: {sorted(S & T)}")
    if any(v.sigma and v.sigma_prime for v in places):
        raise InconsistentSets("a place is flagged for both Sigma and Sigma'")
    return places


def _l_values(doc, G):
    block = doc.get("l_values")
    if block is None:
        return None
    values = {}
    for i, entry in enumerate(block["values"]):
        chi = _element(G, entry["character"], f"/l_values/values/{i}/character")
        coeffs = [rational(x) for x in entry["coefficients"]]
        den = 1
        for q in coeffs:
            den = den * q.denominator // _gcd(den, q.denominator)
        values[chi] = Cyclotomic(entry["m"], [int(q * den) for q in coeffs], den)
    return LValueTable(G, values, block.get("provenance", "unprovenanced"))


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def _class_group(block, G, where):
    if block is None:
        return None
    k = len(block["invariants"])
    gens = [g for g, d in zip(range(G.rank), G.invariants) if d > 1]
    if len(block["actions"]) != len(gens):
        raise SchemaError(f"{where}/actions: need one matrix per nontrivial group generator",
                          pointer=f"{where}/actions")
    for j, A in enumerate(block["actions"]):
        if len(A) != k or any(len(r) != k for r in A):
            raise SchemaError(f"{where}/actions/{j}: matrix must be {k} x {k}", pointer=f"{where}/actions/{j}")
    return dict(block)


def _bs_unit(block, G, places):
    if block is None:
        return None
    labels = {v.label: v for v in places}
    if block["prime_label"] not in labels:
        raise UnknownElement(f"/bs_unit/prime_label: no place labelled {block['prime_label']!r}")
    P = labels[block["prime_label"]]
    if P.kind in ("S", "T"):
        raise InconsistentSets(f"the prime {P.label} must lie outside S and T")
    if P.decomposition is not None and any(any(g) for g in P.decomposition):
        raise InconsistentSets(f"the prime {P.label} must split completely (trivial decomposition group)")
    vals = {}
    for i, entry in enumerate(block["valuations"]):
        g = _element(G, entry["sigma"], f"/bs_unit/valuations/{i}/sigma")
        if g in vals:
            raise InconsistentSets(f"/bs_unit/valuations/{i}: repeated element {list(g)}")
        vals[g] = entry["ord"]
    missing = [g for g in G.elements if g not in vals]
    if missing:
        raise InconsistentSets(f"/bs_unit/valuations: no valuation for {[list(g) for g in missing]}")
    out = dict(block)
    out["valuations"] = vals
    return out


def _nabla(block, G):
    if block is None:
        return None
    out = dict(block)
    rows = []
    for i, row in enumerate(block["matrix"]):
        new = []
        for j, terms in enumerate(row):
            d = {}
            for k, term in enumerate(terms):
                g = _element(G, term["element"], f"/nabla/matrix/{i}/{j}/{k}/element")
                d[g] = d.get(g, 0) + rational(term["coefficient"])
            new.append(d)
        rows.append(new)
    out["matrix"] = rows
    return out


def _check_provenance(doc, strict):
    missing = [b for b in _EXTERNAL if b in doc and "provenance" not in doc[b]]
    if missing and strict:
        raise SchemaError(f"blocks without provenance: {missing}", pointer=f"/{missing[0]}")
    return [f"block {b!r} carries no provenance" for b in missing]


def parse_case(doc, path="", strict_provenance=False):
    validate(doc)
    warnings = _check_provenance(doc, strict_provenance)
    G = _group(doc)
    base = doc.get("base_field", {"degree": 1})
    dg = None
    if base["degree"] == 1 and "conductor" in base:
        dg = DirichletGroup(base["conductor"], tuple(base.get("kernel", ())))
        if tuple(dg.group.invariants) != tuple(G.invariants) or dg.group.c != G.c:
            raise InconsistentSets(
                f"group block {G} does not match the Dirichlet group {dg.group} of the conductor")
        G = dg.group
    places = _places(doc, G, dg)
    case = CaseFile(path, doc, G, base["degree"], places, dg,
                    _l_values(doc, G),
                    _class_group(doc.get("class_group"), G, "/class_group"),
                    doc.get("class_group_plus"),
                    _nabla(doc.get("nabla"), G),
                    _bs_unit(doc.get("bs_unit"), G, places),
                    dict(doc.get("parameters", {})),
                    warnings)
    return case


def load_case(path, strict_provenance=False):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as err:
        raise SchemaError(f"{path}: not UTF-8 ({err})", pointer="") from err
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"{path}: not valid JSON ({err})", pointer="") from err
    return parse_case(doc, str(path), strict_provenance)


def bundled_case(name="q_zeta3_T5.case"):
    """Path of a case file shipped with the package."""
    from importlib.resources import files
    return files("brumer_stark") / "data" / name
