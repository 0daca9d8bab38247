"""Generated conceptual data model: a UML class-model core.

Cardinalities and attribute multiplicities are (min, max) pairs where
max None means unbounded. Models are treated as immutable once the
engine has produced them; the refiner and the repair machinery return
fresh copies.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .diagnostics import Diagnostic
from .errors import SchemaViolation
from .graphs import cycles

Card = tuple[int, int | None]

UNBOUNDED: Card = (0, None)


def card_to_json(card: Card) -> list:
    return [card[0], card[1]]


def card_from_json(value, path: str) -> Card:
    if (not isinstance(value, list) or len(value) != 2
            or not isinstance(value[0], int) or isinstance(value[0], bool)
            or not (value[1] is None or (isinstance(value[1], int) and not isinstance(value[1], bool)))):
        raise SchemaViolation(path, f"expected [min, max|null], got {value!r}")
    return (value[0], value[1])


def format_card(card: Card) -> str:
    lo, hi = card
    if hi is None:
        return f"{lo}..*"
    if lo == hi:
        return str(lo)
    return f"{lo}..{hi}"


@dataclass
class Attribute:
    name: str
    datatype: str
    multiplicity: Card = (0, None)


@dataclass
class Relationship:
    name: str
    source: str
    target: str
    source_card: Card = (0, None)
    target_card: Card = (0, None)
    inverse_name: str | None = None

    def key(self) -> tuple[str, str, str]:
        return (self.name, self.source, self.target)


@dataclass
class EntityType:
    name: str
    attributes: list[Attribute] = field(default_factory=list)
    composite: bool = False

    def attribute_names(self) -> set[str]:
        return {a.name for a in self.attributes}


@dataclass(frozen=True)
class Provenance:
    """Which rule produced an element, and from which ontology construct.

    rule 0 marks elements introduced outside the engine (repairs).
    """

    rule: int
    source: str


@dataclass
class ConceptualModel:
    entity_types: dict[str, EntityType] = field(default_factory=dict)
    relationships: list[Relationship] = field(default_factory=list)
    generalizations: set[tuple[str, str]] = field(default_factory=set)
    provenance: dict[str, Provenance] = field(default_factory=dict)


# Stable element keys, used by provenance, traces, and diagnostics.
def entity_key(name: str) -> str:
    return f"entity:{name}"


def attr_key(entity: str, attr: str) -> str:
    return f"attr:{entity}.{attr}"


def rel_key(rel: Relationship) -> str:
    return f"rel:{rel.name}@{rel.source}->{rel.target}"


def gen_key(sub: str, sup: str) -> str:
    return f"gen:{sub}->{sup}"


def element_keys(model: ConceptualModel) -> set[str]:
    keys = set()
    for name, entity in model.entity_types.items():
        keys.add(entity_key(name))
        keys.update(attr_key(name, a.name) for a in entity.attributes)
    keys.update(rel_key(r) for r in model.relationships)
    keys.update(gen_key(s, p) for s, p in model.generalizations)
    return keys


def copy_model(model: ConceptualModel) -> ConceptualModel:
    return ConceptualModel(
        entity_types={
            name: EntityType(name=e.name,
                             attributes=[replace(a) for a in e.attributes],
                             composite=e.composite)
            for name, e in model.entity_types.items()
        },
        relationships=[replace(r) for r in model.relationships],
        generalizations=set(model.generalizations),
        provenance=dict(model.provenance),
    )


class ModelCounts(NamedTuple):
    entity_types: int
    relationships: int
    attributes: int
    generalizations: int


def model_counts(model: ConceptualModel) -> ModelCounts:
    return ModelCounts(
        entity_types=len(model.entity_types),
        relationships=len(model.relationships),
        attributes=sum(len(e.attributes) for e in model.entity_types.values()),
        generalizations=len(model.generalizations),
    )


def _bad_card(card: Card) -> bool:
    lo, hi = card
    return lo < 0 or (hi is not None and lo > hi)


def validate_model(model: ConceptualModel) -> list[Diagnostic]:
    """Structural (not ontological) validation of a model."""
    diags: list[Diagnostic] = []

    def check_ref(name: str, referrer: str):
        if name not in model.entity_types:
            diags.append(Diagnostic(
                "CDM_DANGLING_REFERENCE", (referrer, name),
                f"{referrer} references undeclared entity type {name!r}"))

    for rel in sorted(model.relationships, key=Relationship.key):
        check_ref(rel.source, rel_key(rel))
        check_ref(rel.target, rel_key(rel))
        for end, card in (("source", rel.source_card), ("target", rel.target_card)):
            if _bad_card(card):
                diags.append(Diagnostic(
                    "CDM_BAD_CARDINALITY", (rel_key(rel),),
                    f"{rel_key(rel)} has empty {end} cardinality {card}"))
    for sub, sup in sorted(model.generalizations):
        check_ref(sub, gen_key(sub, sup))
        check_ref(sup, gen_key(sub, sup))

    dup_rels = Counter(r.key() for r in model.relationships)
    for key, count in sorted(dup_rels.items()):
        if count > 1:
            diags.append(Diagnostic(
                "CDM_DUPLICATE_RELATIONSHIP", key,
                f"{count} relationships share (name, source, target) {key}"))

    for name in sorted(model.entity_types):
        entity = model.entity_types[name]
        dup_attrs = Counter(a.name for a in entity.attributes)
        for attr, count in sorted(dup_attrs.items()):
            if count > 1:
                diags.append(Diagnostic(
                    "CDM_DUPLICATE_ATTRIBUTE", (name, attr),
                    f"entity type {name!r} declares attribute {attr!r} {count} times"))
        for a in entity.attributes:
            if _bad_card(a.multiplicity):
                diags.append(Diagnostic(
                    "CDM_BAD_CARDINALITY", (attr_key(name, a.name),),
                    f"attribute {attr_key(name, a.name)} has empty multiplicity "
                    f"{a.multiplicity}"))

    for comp in cycles(model.generalizations):
        members = tuple(sorted(comp))
        diags.append(Diagnostic(
            "CDM_GENERALIZATION_CYCLE", members,
            "generalization cycle through " + ", ".join(members)))

    return diags


# ---------------------------------------------------------------------------
# Canonical JSON (the normative model interchange format)

def model_to_json_obj(model: ConceptualModel) -> dict:
    entity_objs = []
    for name in sorted(model.entity_types):
        entity = model.entity_types[name]
        entity_objs.append({
            "name": name,
            "composite": entity.composite,
            "attributes": [
                {"name": a.name, "datatype": a.datatype,
                 "multiplicity": card_to_json(a.multiplicity)}
                for a in sorted(entity.attributes, key=lambda a: a.name)
            ],
        })
    rel_objs = []
    for rel in sorted(model.relationships, key=Relationship.key):
        obj = {
            "name": rel.name, "source": rel.source, "target": rel.target,
            "source_card": card_to_json(rel.source_card),
            "target_card": card_to_json(rel.target_card),
        }
        if rel.inverse_name is not None:
            obj["inverse_name"] = rel.inverse_name
        rel_objs.append(obj)
    return {
        "entity_types": entity_objs,
        "relationships": rel_objs,
        "generalizations": [list(pair) for pair in sorted(model.generalizations)],
        "provenance": {
            key: {"rule": p.rule, "source": p.source}
            for key, p in sorted(model.provenance.items())
        },
    }


def model_to_json(model: ConceptualModel) -> bytes:
    text = json.dumps(model_to_json_obj(model), sort_keys=True, indent=2,
                      ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def _require(obj, key, types, path):
    if not isinstance(obj, dict):
        raise SchemaViolation(path, f"expected object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaViolation(f"{path}.{key}", "missing required key")
    value = obj[key]
    if not isinstance(value, types) or isinstance(value, bool) and types is not bool:
        raise SchemaViolation(f"{path}.{key}",
                              f"wrong type {type(value).__name__}")
    return value


def model_from_json_obj(obj: dict, path: str = "$") -> ConceptualModel:
    if not isinstance(obj, dict):
        raise SchemaViolation(path, "top level must be an object")
    model = ConceptualModel()
    for i, e in enumerate(_require(obj, "entity_types", list, path)):
        epath = f"{path}.entity_types[{i}]"
        name = _require(e, "name", str, epath)
        if name in model.entity_types:
            raise SchemaViolation(epath, f"duplicate entity type {name!r}")
        attrs = []
        for j, a in enumerate(e.get("attributes", [])):
            apath = f"{epath}.attributes[{j}]"
            attrs.append(Attribute(
                name=_require(a, "name", str, apath),
                datatype=_require(a, "datatype", str, apath),
                multiplicity=card_from_json(a.get("multiplicity", [0, None]),
                                            f"{apath}.multiplicity"),
            ))
        composite = e.get("composite", False)
        if not isinstance(composite, bool):
            raise SchemaViolation(f"{epath}.composite", "expected boolean")
        model.entity_types[name] = EntityType(name=name, attributes=attrs,
                                              composite=composite)
    for i, r in enumerate(_require(obj, "relationships", list, path)):
        rpath = f"{path}.relationships[{i}]"
        inverse = r.get("inverse_name")
        if inverse is not None and not isinstance(inverse, str):
            raise SchemaViolation(f"{rpath}.inverse_name", "expected string or absent")
        model.relationships.append(Relationship(
            name=_require(r, "name", str, rpath),
            source=_require(r, "source", str, rpath),
            target=_require(r, "target", str, rpath),
            source_card=card_from_json(r.get("source_card", [0, None]),
                                       f"{rpath}.source_card"),
            target_card=card_from_json(r.get("target_card", [0, None]),
                                       f"{rpath}.target_card"),
            inverse_name=inverse,
        ))
    for i, pair in enumerate(_require(obj, "generalizations", list, path)):
        gpath = f"{path}.generalizations[{i}]"
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)):
            raise SchemaViolation(gpath, f"expected [sub, super], got {pair!r}")
        model.generalizations.add((pair[0], pair[1]))
    prov = obj.get("provenance", {})
    if not isinstance(prov, dict):
        raise SchemaViolation(f"{path}.provenance", "expected object")
    for key, entry in prov.items():
        ppath = f"{path}.provenance[{key!r}]"
        model.provenance[key] = Provenance(
            rule=_require(entry, "rule", int, ppath),
            source=_require(entry, "source", str, ppath),
        )
    return model


def model_from_json(data: bytes | str) -> ConceptualModel:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("$", f"not valid JSON: {exc}") from exc
    return model_from_json_obj(obj)
