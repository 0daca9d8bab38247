"""In-memory form of the OWL subset the transformation rules consume.

An Ontology is immutable once loaded: nothing in this package mutates one
after `validate_ontology` has seen it, so concurrent readers are safe.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .diagnostics import Diagnostic
from .errors import UnknownName
from .graphs import cycles


class ClassKind(Enum):
    NAMED = "named"
    INTERSECTION = "intersection"
    UNION = "union"
    RESTRICTION = "restriction"


class PropertyKind(Enum):
    # Mutual = object property between classes; intrinsic = datatype property.
    MUTUAL = "mutual"
    INTRINSIC = "intrinsic"


class ConstraintKind(Enum):
    SOME_VALUES = "someValuesFrom"
    ALL_VALUES = "allValuesFrom"
    CARDINALITY = "cardinality"


OWL_THING = "owl:Thing"
OWL_NOTHING = "owl:Nothing"
BUILTIN_CLASS_NAMES = frozenset({OWL_THING, OWL_NOTHING})

# Datatype vocabulary: anything here (or prefixed "xsd:") is a datatype name,
# everything else must resolve to a declared class.
DATATYPE_NAMES = frozenset({
    "string", "integer", "int", "long", "short", "byte", "float", "double",
    "decimal", "boolean", "date", "dateTime", "time", "duration", "anyURI",
    "base64Binary", "hexBinary", "nonNegativeInteger", "positiveInteger",
})


def is_datatype(name: str) -> bool:
    return name in DATATYPE_NAMES or name.startswith("xsd:")


def is_builtin(name: str) -> bool:
    return name in BUILTIN_CLASS_NAMES


@dataclass(frozen=True)
class RestrictionSpec:
    """One property restriction: on_property constrained over filler.

    min_card/max_card are meaningful only for CARDINALITY constraints;
    max_card None means unbounded.
    """

    on_property: str
    filler: str
    constraint: ConstraintKind
    min_card: int = 0
    max_card: int | None = None


@dataclass
class OntoClass:
    name: str
    kind: ClassKind = ClassKind.NAMED
    operands: tuple[str, ...] = ()
    restriction: RestrictionSpec | None = None
    annotations: dict[str, str] = field(default_factory=dict)

    def is_expression(self) -> bool:
        return self.kind in (ClassKind.INTERSECTION, ClassKind.UNION)


@dataclass
class OntoProperty:
    name: str
    kind: PropertyKind
    range: str
    domain: str | None = None
    functional: bool = False
    inverse_of: str | None = None
    annotations: dict[str, str] = field(default_factory=dict)


@dataclass
class Ontology:
    iri: str = ""
    classes: dict[str, OntoClass] = field(default_factory=dict)
    properties: dict[str, OntoProperty] = field(default_factory=dict)
    subsumptions: set[tuple[str, str]] = field(default_factory=set)


_THING = OntoClass(name=OWL_THING)
_NOTHING = OntoClass(name=OWL_NOTHING)


def resolve(ontology: Ontology, name: str) -> OntoClass | OntoProperty:
    """Look up a declared class or property; builtins yield reserved
    sentinels that are never stored in `classes`."""
    if name in ontology.classes:
        return ontology.classes[name]
    if name in ontology.properties:
        return ontology.properties[name]
    if name == OWL_THING:
        return _THING
    if name == OWL_NOTHING:
        return _NOTHING
    raise UnknownName(name)


def _class_resolves(ontology: Ontology, name: str) -> bool:
    return name in ontology.classes or is_builtin(name)


def validate_ontology(ontology: Ontology) -> list[Diagnostic]:
    """Check every structural invariant; violations come back as data.

    Pure function of the ontology, so validating twice gives the same list.
    """
    diags: list[Diagnostic] = []
    missing: set[str] = set()

    def require_class(name: str):
        if not _class_resolves(ontology, name):
            missing.add(name)

    for sub, sup in sorted(ontology.subsumptions):
        require_class(sub)
        require_class(sup)

    for name in sorted(ontology.classes):
        cls = ontology.classes[name]
        if cls.kind is ClassKind.NAMED:
            if cls.operands or cls.restriction is not None:
                diags.append(Diagnostic(
                    "ONT_BAD_EXPRESSION", (name,),
                    f"named class {name!r} must not carry operands or a restriction"))
        elif cls.is_expression():
            if len(cls.operands) < 2:
                diags.append(Diagnostic(
                    "ONT_BAD_EXPRESSION", (name,),
                    f"{cls.kind.value} class {name!r} needs at least two operands"))
            if cls.restriction is not None:
                diags.append(Diagnostic(
                    "ONT_BAD_EXPRESSION", (name,),
                    f"expression class {name!r} must not carry a restriction"))
            for op in cls.operands:
                require_class(op)
        else:  # restriction class
            if cls.operands:
                diags.append(Diagnostic(
                    "ONT_BAD_RESTRICTION", (name,),
                    f"restriction class {name!r} must not carry operands"))
            spec = cls.restriction
            if spec is None:
                diags.append(Diagnostic(
                    "ONT_BAD_RESTRICTION", (name,),
                    f"restriction class {name!r} has no restriction spec"))
                continue
            prop = ontology.properties.get(spec.on_property)
            if prop is None:
                missing.add(spec.on_property)
            else:
                filler_is_datatype = is_datatype(spec.filler)
                if prop.kind is PropertyKind.INTRINSIC and not filler_is_datatype:
                    diags.append(Diagnostic(
                        "ONT_BAD_RESTRICTION", (name, spec.on_property),
                        f"restriction {name!r} over intrinsic property "
                        f"{spec.on_property!r} needs a datatype filler"))
                if prop.kind is PropertyKind.MUTUAL and filler_is_datatype:
                    diags.append(Diagnostic(
                        "ONT_BAD_RESTRICTION", (name, spec.on_property),
                        f"restriction {name!r} over mutual property "
                        f"{spec.on_property!r} needs a class filler"))
            if not is_datatype(spec.filler):
                require_class(spec.filler)
            if (spec.constraint is ConstraintKind.CARDINALITY
                    and spec.max_card is not None and spec.min_card > spec.max_card):
                diags.append(Diagnostic(
                    "ONT_BAD_RESTRICTION", (name,),
                    f"restriction {name!r} has empty cardinality "
                    f"({spec.min_card} > {spec.max_card})"))

    for name in sorted(ontology.properties):
        prop = ontology.properties[name]
        if prop.kind is PropertyKind.MUTUAL:
            if is_datatype(prop.range):
                diags.append(Diagnostic(
                    "ONT_BAD_PROPERTY", (name,),
                    f"mutual property {name!r} must range over a class, "
                    f"got datatype {prop.range!r}"))
            else:
                require_class(prop.range)
        else:
            if not is_datatype(prop.range):
                diags.append(Diagnostic(
                    "ONT_BAD_PROPERTY", (name,),
                    f"intrinsic property {name!r} must range over a datatype, "
                    f"got {prop.range!r}"))
            if prop.inverse_of is not None:
                diags.append(Diagnostic(
                    "ONT_BAD_PROPERTY", (name,),
                    f"intrinsic property {name!r} must not carry inverseOf"))
        if prop.domain is not None:
            require_class(prop.domain)
        if prop.inverse_of is not None and prop.kind is PropertyKind.MUTUAL:
            other = ontology.properties.get(prop.inverse_of)
            if other is None:
                missing.add(prop.inverse_of)
            elif other.inverse_of != name:
                diags.append(Diagnostic(
                    "ONT_INVERSE_ASYMMETRY", (name, prop.inverse_of),
                    f"{name!r} declares inverse {prop.inverse_of!r} but the "
                    f"inverse does not point back"))

    for name in sorted(missing):
        diags.append(Diagnostic(
            "ONT_UNRESOLVED_NAME", (name,),
            f"referenced name {name!r} is not declared"))

    for comp in cycles(ontology.subsumptions):
        members = tuple(sorted(comp))
        diags.append(Diagnostic(
            "ONT_SUBSUMPTION_CYCLE", members,
            "subsumption cycle through " + ", ".join(members)))

    return diags
