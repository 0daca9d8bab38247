"""Parse ontology files into the in-memory Ontology.

Two frontends share one contract: the parse either fails or yields an
ontology that satisfies every structural invariant.

* RDF/XML (convenience): exactly the construct vocabulary the mapping
  rules consume -- class declarations, subClassOf, object/datatype
  properties with domain/range/functional/inverseOf, value and
  cardinality restrictions, intersectionOf/unionOf, labels/comments.
  Anything else is skipped with a warning (lenient) or aborts (strict).
* JSON interchange (normative fixture format): strict schema, canonical
  writer, byte-stable round trips.

Anonymous restriction and boolean classes get synthetic names
``_anon:<n>`` in document order so later stages can refer to them.
"""
from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, field
from typing import BinaryIO

from .diagnostics import Diagnostic
from .errors import (MalformedInput, SchemaViolation, UnresolvedReference,
                     UnsupportedConstruct)
from .ontology import (ClassKind, ConstraintKind, OntoClass, Ontology,
                       OntoProperty, PropertyKind, RestrictionSpec,
                       is_builtin, is_datatype, validate_ontology)

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
XML_NS = "http://www.w3.org/XML/1998/namespace"

_PREFIXES = {RDF_NS: "rdf", RDFS_NS: "rdfs", OWL_NS: "owl", XSD_NS: "xsd"}


def _tag(ns: str, local: str) -> str:
    return "{%s}%s" % (ns, local)


def _pretty_tag(tag: str) -> str:
    if tag.startswith("{"):
        ns, _, local = tag[1:].partition("}")
        prefix = _PREFIXES.get(ns)
        return f"{prefix}:{local}" if prefix else local
    return tag


RDF_RDF = _tag(RDF_NS, "RDF")
RDF_ABOUT = _tag(RDF_NS, "about")
RDF_ID = _tag(RDF_NS, "ID")
RDF_RESOURCE = _tag(RDF_NS, "resource")
RDF_TYPE = _tag(RDF_NS, "type")
XML_BASE = _tag(XML_NS, "base")
OWL_ONTOLOGY = _tag(OWL_NS, "Ontology")
OWL_CLASS = _tag(OWL_NS, "Class")
OWL_RESTRICTION = _tag(OWL_NS, "Restriction")
OWL_OBJECT_PROPERTY = _tag(OWL_NS, "ObjectProperty")
OWL_DATATYPE_PROPERTY = _tag(OWL_NS, "DatatypeProperty")
OWL_FUNCTIONAL_PROPERTY = _tag(OWL_NS, "FunctionalProperty")
OWL_ON_PROPERTY = _tag(OWL_NS, "onProperty")
OWL_SOME_VALUES = _tag(OWL_NS, "someValuesFrom")
OWL_ALL_VALUES = _tag(OWL_NS, "allValuesFrom")
OWL_CARDINALITY = _tag(OWL_NS, "cardinality")
OWL_MIN_CARDINALITY = _tag(OWL_NS, "minCardinality")
OWL_MAX_CARDINALITY = _tag(OWL_NS, "maxCardinality")
OWL_INTERSECTION_OF = _tag(OWL_NS, "intersectionOf")
OWL_UNION_OF = _tag(OWL_NS, "unionOf")
OWL_INVERSE_OF = _tag(OWL_NS, "inverseOf")
RDFS_SUBCLASS_OF = _tag(RDFS_NS, "subClassOf")
RDFS_DOMAIN = _tag(RDFS_NS, "domain")
RDFS_RANGE = _tag(RDFS_NS, "range")
RDFS_LABEL = _tag(RDFS_NS, "label")
RDFS_COMMENT = _tag(RDFS_NS, "comment")

ANON_PREFIX = "_anon:"

_CLASS_KINDS = {k.value for k in ClassKind}
_PROPERTY_KINDS = {k.value for k in PropertyKind}
_CONSTRAINT_KINDS = {k.value for k in ConstraintKind}


@dataclass
class ReaderConfig:
    strict: bool = False
    base_iri: str | None = None


@dataclass
class ReadReport:
    ontology: Ontology
    warnings: list[Diagnostic] = field(default_factory=list)
    skipped_constructs: dict[str, int] = field(default_factory=dict)


def _as_bytes(source: bytes | str | BinaryIO) -> bytes:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, str):
        return source.encode("utf-8")
    return source


class _RdfXmlParser:
    def __init__(self, config: ReaderConfig):
        self.config = config
        self.base_iri = config.base_iri
        self.iri = ""
        self.classes: dict[str, OntoClass] = {}
        self.properties: dict[str, OntoProperty] = {}
        self.subsumptions: set[tuple[str, str]] = set()
        self.warnings: list[Diagnostic] = []
        self.skipped: Counter = Counter()
        self.referenced_classes: set[str] = set()
        self.referenced_properties: set[str] = set()
        self.functional_marks: set[str] = set()
        self._anon = 0

    # -- helpers -----------------------------------------------------------

    def _next_anon(self) -> str:
        self._anon += 1
        return f"{ANON_PREFIX}{self._anon}"

    def _local(self, ref: str) -> str:
        if ref == OWL_NS + "Thing":
            return "owl:Thing"
        if ref == OWL_NS + "Nothing":
            return "owl:Nothing"
        if ref.startswith(XSD_NS):
            return ref[len(XSD_NS):]
        if self.base_iri and ref.startswith(self.base_iri + "#"):
            return ref[len(self.base_iri) + 1:]
        if "#" in ref:
            return ref.rsplit("#", 1)[1]
        if "/" in ref:
            return ref.rstrip("/").rsplit("/", 1)[1]
        return ref

    def _node_name(self, el: ET.Element) -> str | None:
        if RDF_ID in el.attrib:
            return el.attrib[RDF_ID]
        if RDF_ABOUT in el.attrib:
            return self._local(el.attrib[RDF_ABOUT])
        return None

    def _skip(self, el: ET.Element):
        name = _pretty_tag(el.tag)
        if self.config.strict:
            raise UnsupportedConstruct(name)
        self.skipped[name] += 1
        self.warnings.append(Diagnostic(
            "READER_SKIPPED", (name,), f"skipped unsupported construct {name}"))

    def _resource_ref(self, el: ET.Element, context: str) -> str:
        ref = el.get(RDF_RESOURCE)
        if ref is None:
            raise MalformedInput(None, f"{context} needs an rdf:resource attribute")
        return self._local(ref)

    def _int_text(self, el: ET.Element, context: str) -> int:
        try:
            return int((el.text or "").strip())
        except ValueError as exc:
            raise MalformedInput(None, f"{context} must be an integer") from exc

    # -- parsing -----------------------------------------------------------

    def parse(self, data: bytes) -> Ontology:
        try:
            root = ET.fromstring(data)
        except ET.ParseError as exc:
            raise MalformedInput(exc.position, str(exc)) from exc
        if root.tag != RDF_RDF:
            raise MalformedInput(None,
                                 f"root element must be rdf:RDF, got {_pretty_tag(root.tag)}")
        base = root.get(XML_BASE)
        if base and not self.base_iri:
            self.base_iri = base.rstrip("#")
        for child in root:
            if not isinstance(child.tag, str):  # comments / PIs
                continue
            if child.tag == OWL_ONTOLOGY:
                about = child.get(RDF_ABOUT, "")
                self.iri = about or (self.base_iri or "")
            elif child.tag == OWL_CLASS:
                self._parse_class(child)
            elif child.tag == OWL_OBJECT_PROPERTY:
                self._parse_property(child, PropertyKind.MUTUAL)
            elif child.tag == OWL_DATATYPE_PROPERTY:
                self._parse_property(child, PropertyKind.INTRINSIC)
            elif child.tag == OWL_FUNCTIONAL_PROPERTY:
                self._parse_functional(child)
            else:
                self._skip(child)
        return self._finish()

    def _declare_class(self, name: str) -> OntoClass:
        if name not in self.classes:
            self.classes[name] = OntoClass(name=name)
        return self.classes[name]

    def _parse_class(self, el: ET.Element, name: str | None = None) -> str:
        name = name or self._node_name(el) or self._next_anon()
        cls = self._declare_class(name)
        for child in el:
            if not isinstance(child.tag, str):
                continue
            if child.tag == RDFS_SUBCLASS_OF:
                if RDF_RESOURCE in child.attrib:
                    sup = self._local(child.attrib[RDF_RESOURCE])
                    self.referenced_classes.add(sup)
                    self.subsumptions.add((name, sup))
                else:
                    sup = self._parse_object_node(child, f"subClassOf of {name}")
                    if sup is not None:
                        self.subsumptions.add((name, sup))
            elif child.tag in (OWL_INTERSECTION_OF, OWL_UNION_OF):
                kind = (ClassKind.INTERSECTION if child.tag == OWL_INTERSECTION_OF
                        else ClassKind.UNION)
                if cls.kind is not ClassKind.NAMED:
                    raise MalformedInput(
                        None, f"class {name!r} declares more than one expression")
                cls.kind = kind
                # operand order carries no meaning; canonicalize at load
                cls.operands = tuple(sorted(self._parse_collection(child, name)))
            elif child.tag == RDFS_LABEL:
                cls.annotations["label"] = (child.text or "").strip()
            elif child.tag == RDFS_COMMENT:
                cls.annotations["comment"] = (child.text or "").strip()
            else:
                self._skip(child)
        return name

    def _parse_collection(self, el: ET.Element, owner: str) -> list[str]:
        members = []
        for item in el:
            if not isinstance(item.tag, str):
                continue
            member = self._parse_node(item, f"expression operand of {owner}")
            if member is not None:
                members.append(member)
        if len(members) < 2:
            raise MalformedInput(None,
                                 f"expression of {owner!r} needs at least two operands")
        return members

    def _parse_object_node(self, container: ET.Element, context: str) -> str | None:
        nested = [c for c in container if isinstance(c.tag, str)]
        if len(nested) != 1:
            raise MalformedInput(None, f"{context} must hold exactly one node")
        return self._parse_node(nested[0], context)

    def _parse_node(self, el: ET.Element, context: str) -> str | None:
        """A class-valued node: a reference, a named/anonymous class
        declaration, or an anonymous restriction. Returns its name."""
        if el.tag == OWL_CLASS:
            name = self._node_name(el)
            has_children = any(isinstance(c.tag, str) for c in el)
            if name is not None and not has_children:
                self.referenced_classes.add(name)
                return name
            return self._parse_class(el, name or self._next_anon())
        if el.tag == OWL_RESTRICTION:
            return self._parse_restriction(el)
        self._skip(el)
        return None

    def _parse_restriction(self, el: ET.Element) -> str:
        name = self._next_anon()
        on_property = None
        filler = None
        constraint = None
        min_card = None
        max_card = None
        for child in el:
            if not isinstance(child.tag, str):
                continue
            if child.tag == OWL_ON_PROPERTY:
                on_property = self._resource_ref(child, "owl:onProperty")
                self.referenced_properties.add(on_property)
            elif child.tag in (OWL_SOME_VALUES, OWL_ALL_VALUES):
                if constraint is not None:
                    raise MalformedInput(None,
                                         f"restriction {name} has multiple constraints")
                constraint = (ConstraintKind.SOME_VALUES
                              if child.tag == OWL_SOME_VALUES
                              else ConstraintKind.ALL_VALUES)
                if RDF_RESOURCE in child.attrib:
                    filler = self._local(child.attrib[RDF_RESOURCE])
                else:
                    filler = self._parse_object_node(child, f"filler of {name}")
            elif child.tag == OWL_CARDINALITY:
                value = self._int_text(child, "owl:cardinality")
                min_card, max_card = value, value
            elif child.tag == OWL_MIN_CARDINALITY:
                min_card = self._int_text(child, "owl:minCardinality")
            elif child.tag == OWL_MAX_CARDINALITY:
                max_card = self._int_text(child, "owl:maxCardinality")
            else:
                self._skip(child)
        if on_property is None:
            raise MalformedInput(None, f"restriction {name} lacks owl:onProperty")
        if min_card is not None or max_card is not None:
            if constraint is not None:
                raise MalformedInput(None,
                                     f"restriction {name} has multiple constraints")
            constraint = ConstraintKind.CARDINALITY
            min_card = min_card or 0
        if constraint is None:
            raise MalformedInput(None, f"restriction {name} lacks a constraint")
        if filler is None:
            # Cardinality restrictions constrain the property itself; the
            # filler defaults to the property's range, resolved at the end.
            filler = ""
        if filler and not is_datatype(filler) and not is_builtin(filler):
            self.referenced_classes.add(filler)
        self.classes[name] = OntoClass(
            name=name, kind=ClassKind.RESTRICTION,
            restriction=RestrictionSpec(
                on_property=on_property, filler=filler,
                constraint=constraint,
                min_card=min_card if constraint is ConstraintKind.CARDINALITY else 0,
                max_card=max_card if constraint is ConstraintKind.CARDINALITY else None,
            ))
        return name

    def _parse_property(self, el: ET.Element, kind: PropertyKind,
                        functional: bool = False) -> str:
        name = self._node_name(el)
        if name is None:
            raise MalformedInput(None, "property declaration without a name")
        domain = None
        range_ = None
        inverse = None
        annotations: dict[str, str] = {}
        for child in el:
            if not isinstance(child.tag, str):
                continue
            if child.tag == RDFS_DOMAIN:
                domain = self._resource_ref(child, "rdfs:domain")
                self.referenced_classes.add(domain)
            elif child.tag == RDFS_RANGE:
                range_ = self._resource_ref(child, "rdfs:range")
                if not is_datatype(range_) and not is_builtin(range_):
                    self.referenced_classes.add(range_)
            elif child.tag == OWL_INVERSE_OF:
                inverse = self._resource_ref(child, "owl:inverseOf")
                self.referenced_properties.add(inverse)
            elif child.tag == RDF_TYPE:
                ref = self._resource_ref(child, "rdf:type")
                if ref == self._local(OWL_NS + "FunctionalProperty"):
                    functional = True
                else:
                    self._skip(child)
            elif child.tag == RDFS_LABEL:
                annotations["label"] = (child.text or "").strip()
            elif child.tag == RDFS_COMMENT:
                annotations["comment"] = (child.text or "").strip()
            else:
                self._skip(child)
        if range_ is None:
            raise MalformedInput(None, f"property {name!r} lacks rdfs:range")
        existing = self.properties.get(name)
        if existing is not None:
            raise MalformedInput(None, f"property {name!r} declared twice")
        self.properties[name] = OntoProperty(
            name=name, kind=kind, range=range_, domain=domain,
            functional=functional, inverse_of=inverse, annotations=annotations)
        return name

    def _parse_functional(self, el: ET.Element):
        has_children = any(isinstance(c.tag, str) for c in el)
        if has_children:
            # full declaration written as owl:FunctionalProperty
            self._parse_property(el, PropertyKind.MUTUAL, functional=True)
            return
        name = self._node_name(el)
        if name is None:
            raise MalformedInput(None, "owl:FunctionalProperty without a name")
        self.functional_marks.add(name)
        self.referenced_properties.add(name)

    # -- post-processing ---------------------------------------------------

    def _finish(self) -> Ontology:
        for name in sorted(self.functional_marks):
            prop = self.properties.get(name)
            if prop is None:
                raise UnresolvedReference(name)
            prop.functional = True
        # cardinality restrictions without an explicit filler take the
        # constrained property's range
        for cls in self.classes.values():
            spec = cls.restriction
            if spec is not None and spec.filler == "":
                prop = self.properties.get(spec.on_property)
                if prop is None:
                    raise UnresolvedReference(spec.on_property)
                cls.restriction = RestrictionSpec(
                    on_property=spec.on_property, filler=prop.range,
                    constraint=spec.constraint, min_card=spec.min_card,
                    max_card=spec.max_card)
        for name in sorted(self.referenced_classes):
            if name not in self.classes and not is_builtin(name):
                raise UnresolvedReference(name)
        for name in sorted(self.referenced_properties):
            if name not in self.properties:
                raise UnresolvedReference(name)
        _complete_inverses(self.properties)
        ontology = Ontology(iri=self.iri, classes=self.classes,
                            properties=self.properties,
                            subsumptions=self.subsumptions)
        errors = [d for d in validate_ontology(ontology) if d.severity == "error"]
        if errors:
            raise MalformedInput(
                None, "document encodes an invalid ontology: "
                + "; ".join(d.message for d in errors))
        return ontology


def _complete_inverses(properties: dict[str, OntoProperty]):
    """inverseOf symmetry is enforced at load: a one-sided declaration gets
    its backlink filled in; a contradictory one is left for validation."""
    for name in sorted(properties):
        prop = properties[name]
        if prop.inverse_of is None or prop.kind is not PropertyKind.MUTUAL:
            continue
        other = properties.get(prop.inverse_of)
        if other is not None and other.inverse_of is None:
            other.inverse_of = name


def read_rdfxml(source: bytes | str | BinaryIO,
                config: ReaderConfig | None = None) -> ReadReport:
    config = config or ReaderConfig()
    parser = _RdfXmlParser(config)
    ontology = parser.parse(_as_bytes(source))
    return ReadReport(ontology=ontology, warnings=parser.warnings,
                      skipped_constructs=dict(parser.skipped))


# ---------------------------------------------------------------------------
# JSON interchange (normative)

def _json_require(obj, key, path):
    if key not in obj:
        raise SchemaViolation(f"{path}.{key}", "missing required key")
    return obj[key]


def _json_str(obj, key, path) -> str:
    value = _json_require(obj, key, path)
    if not isinstance(value, str):
        raise SchemaViolation(f"{path}.{key}", "expected string")
    return value


def _check_keys(obj, allowed, path):
    if not isinstance(obj, dict):
        raise SchemaViolation(path, "expected object")
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaViolation(path, f"unknown keys: {sorted(unknown)}")


def _json_annotations(obj, path) -> dict[str, str]:
    annotations = obj.get("annotations", {})
    if (not isinstance(annotations, dict)
            or not all(isinstance(k, str) and isinstance(v, str)
                       for k, v in annotations.items())):
        raise SchemaViolation(f"{path}.annotations", "expected string map")
    return dict(annotations)


def _parse_json_restriction(obj, path) -> RestrictionSpec:
    _check_keys(obj, {"onProperty", "filler", "constraint"}, path)
    constraint = _json_require(obj, "constraint", path)
    _check_keys(constraint, {"kind", "min", "max"}, f"{path}.constraint")
    kind = _json_str(constraint, "kind", f"{path}.constraint")
    if kind not in _CONSTRAINT_KINDS:
        raise SchemaViolation(f"{path}.constraint.kind",
                              f"unknown constraint kind {kind!r}")
    min_card, max_card = 0, None
    if kind == ConstraintKind.CARDINALITY.value:
        min_card = constraint.get("min", 0)
        max_card = constraint.get("max")
        if not isinstance(min_card, int) or isinstance(min_card, bool):
            raise SchemaViolation(f"{path}.constraint.min", "expected integer")
        if max_card is not None and (not isinstance(max_card, int)
                                     or isinstance(max_card, bool)):
            raise SchemaViolation(f"{path}.constraint.max",
                                  "expected integer or null")
    elif "min" in constraint or "max" in constraint:
        raise SchemaViolation(f"{path}.constraint",
                              f"{kind} takes no min/max bounds")
    return RestrictionSpec(
        on_property=_json_str(obj, "onProperty", path),
        filler=_json_str(obj, "filler", path),
        constraint=ConstraintKind(kind), min_card=min_card, max_card=max_card)


def read_json(source: bytes | str | BinaryIO) -> ReadReport:
    data = _as_bytes(source)
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("$", f"not valid JSON: {exc}") from exc
    _check_keys(obj, {"iri", "classes", "properties", "subsumptions"}, "$")
    iri = obj.get("iri", "")
    if not isinstance(iri, str):
        raise SchemaViolation("$.iri", "expected string")

    classes: dict[str, OntoClass] = {}
    entries = obj.get("classes", [])
    if not isinstance(entries, list):
        raise SchemaViolation("$.classes", "expected array")
    for i, entry in enumerate(entries):
        path = f"$.classes[{i}]"
        _check_keys(entry, {"name", "kind", "operands", "restriction",
                            "annotations"}, path)
        name = _json_str(entry, "name", path)
        kind = _json_str(entry, "kind", path)
        if kind not in _CLASS_KINDS:
            raise SchemaViolation(f"{path}.kind", f"unknown class kind {kind!r}")
        if name in classes:
            raise SchemaViolation(path, f"duplicate class name {name!r}")
        cls = OntoClass(name=name, kind=ClassKind(kind),
                        annotations=_json_annotations(entry, path))
        if cls.is_expression():
            operands = _json_require(entry, "operands", path)
            if (not isinstance(operands, list)
                    or not all(isinstance(o, str) for o in operands)):
                raise SchemaViolation(f"{path}.operands", "expected string array")
            cls.operands = tuple(sorted(operands))
        elif "operands" in entry:
            raise SchemaViolation(f"{path}.operands",
                                  f"{kind} class takes no operands")
        if cls.kind is ClassKind.RESTRICTION:
            cls.restriction = _parse_json_restriction(
                _json_require(entry, "restriction", path), f"{path}.restriction")
        elif "restriction" in entry:
            raise SchemaViolation(f"{path}.restriction",
                                  f"{kind} class takes no restriction")
        classes[name] = cls

    properties: dict[str, OntoProperty] = {}
    entries = obj.get("properties", [])
    if not isinstance(entries, list):
        raise SchemaViolation("$.properties", "expected array")
    for i, entry in enumerate(entries):
        path = f"$.properties[{i}]"
        _check_keys(entry, {"name", "kind", "domain", "range", "functional",
                            "inverseOf", "annotations"}, path)
        name = _json_str(entry, "name", path)
        kind = _json_str(entry, "kind", path)
        if kind not in _PROPERTY_KINDS:
            raise SchemaViolation(f"{path}.kind",
                                  f"unknown property kind {kind!r}")
        if name in properties:
            raise SchemaViolation(path, f"duplicate property name {name!r}")
        functional = _json_require(entry, "functional", path)
        if not isinstance(functional, bool):
            raise SchemaViolation(f"{path}.functional", "expected boolean")
        domain = entry.get("domain")
        if domain is not None and not isinstance(domain, str):
            raise SchemaViolation(f"{path}.domain", "expected string or absent")
        inverse = entry.get("inverseOf")
        if inverse is not None and not isinstance(inverse, str):
            raise SchemaViolation(f"{path}.inverseOf", "expected string or absent")
        properties[name] = OntoProperty(
            name=name, kind=PropertyKind(kind),
            range=_json_str(entry, "range", path), domain=domain,
            functional=functional, inverse_of=inverse,
            annotations=_json_annotations(entry, path))

    subsumptions: set[tuple[str, str]] = set()
    entries = obj.get("subsumptions", [])
    if not isinstance(entries, list):
        raise SchemaViolation("$.subsumptions", "expected array")
    for i, pair in enumerate(entries):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)):
            raise SchemaViolation(f"$.subsumptions[{i}]",
                                  f"expected [sub, super], got {pair!r}")
        subsumptions.add((pair[0], pair[1]))

    _complete_inverses(properties)
    ontology = Ontology(iri=iri, classes=classes, properties=properties,
                        subsumptions=subsumptions)
    errors = [d for d in validate_ontology(ontology) if d.severity == "error"]
    if errors:
        raise SchemaViolation("$", "document encodes an invalid ontology: "
                              + "; ".join(d.message for d in errors))
    return ReadReport(ontology=ontology)


def ontology_to_json_obj(ontology: Ontology) -> dict:
    class_objs = []
    for name in sorted(ontology.classes):
        cls = ontology.classes[name]
        entry: dict = {"name": name, "kind": cls.kind.value}
        if cls.is_expression():
            entry["operands"] = sorted(cls.operands)
        if cls.restriction is not None:
            spec = cls.restriction
            constraint: dict = {"kind": spec.constraint.value}
            if spec.constraint is ConstraintKind.CARDINALITY:
                constraint["min"] = spec.min_card
                constraint["max"] = spec.max_card
            entry["restriction"] = {"onProperty": spec.on_property,
                                    "filler": spec.filler,
                                    "constraint": constraint}
        if cls.annotations:
            entry["annotations"] = dict(cls.annotations)
        class_objs.append(entry)
    property_objs = []
    for name in sorted(ontology.properties):
        prop = ontology.properties[name]
        entry = {"name": name, "kind": prop.kind.value, "range": prop.range,
                 "functional": prop.functional}
        if prop.domain is not None:
            entry["domain"] = prop.domain
        if prop.inverse_of is not None:
            entry["inverseOf"] = prop.inverse_of
        if prop.annotations:
            entry["annotations"] = dict(prop.annotations)
        property_objs.append(entry)
    return {
        "iri": ontology.iri,
        "classes": class_objs,
        "properties": property_objs,
        "subsumptions": [list(pair) for pair in sorted(ontology.subsumptions)],
    }


def write_json(ontology: Ontology) -> bytes:
    """Canonical form: sorted keys, classes/properties/subsumptions ordered
    by name, byte-identical across runs."""
    text = json.dumps(ontology_to_json_obj(ontology), sort_keys=True, indent=2,
                      ensure_ascii=False)
    return (text + "\n").encode("utf-8")
