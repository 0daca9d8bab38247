"""Meta-property machinery and the merged ontological validator.

Concepts carry analyst-assigned meta-properties (rigidity, identity,
unity, dependence) from a sidecar file; they are never inferred. The
category table and the three taxonomy axioms come straight from those
flags. Unity is stored and reported but takes part in no check.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

from .cdm import (Attribute, ConceptualModel, Provenance, Relationship,
                  attr_key, copy_model, entity_key, gen_key, rel_key)
from .diagnostics import DemoteToAttribute, Diagnostic, Repair
from .errors import RepairConflict, SchemaViolation, UnknownSubject


class Rigidity(Enum):
    RIGID = "+R"          # the defining property is essential to all instances
    NON_RIGID = "-R"      # essential to some instances only
    ANTI_RIGID = "~R"     # optional for every instance


class Category(Enum):
    TYPE = "Type"
    PHASED_SORTAL = "PhasedSortal"
    ROLE = "Role"
    ATTRIBUTION = "Attribution"
    UNCLASSIFIABLE = "Unclassifiable"


SUBSTANTIAL = frozenset({Category.TYPE, Category.PHASED_SORTAL, Category.ROLE})


@dataclass(frozen=True)
class MetaAnnotation:
    concept: str
    rigidity: Rigidity
    identity: bool                 # carries an identity condition (+I)
    supplies_identity: bool = False
    unity: str | None = None       # "+U", "-U", or unspecified; inert
    dependence: bool = False       # +D

    def __post_init__(self):
        if self.supplies_identity and not self.identity:
            raise ValueError(
                f"{self.concept!r}: a concept that supplies identity carries it (+I)")
        if self.unity not in (None, "+U", "-U"):
            raise ValueError(f"{self.concept!r}: unity must be +U, -U, or unspecified")


def classify_category(a: MetaAnnotation) -> Category:
    """Exact table lookup; dependence is a don't-care for Type and
    Attribution. Anything outside the four patterns is unclassifiable."""
    if a.rigidity is Rigidity.RIGID and a.identity:
        return Category.TYPE
    if a.rigidity is Rigidity.ANTI_RIGID and a.identity and not a.dependence:
        return Category.PHASED_SORTAL
    if a.rigidity is Rigidity.ANTI_RIGID and not a.identity and a.dependence:
        return Category.ROLE
    if a.rigidity is Rigidity.NON_RIGID and not a.identity:
        return Category.ATTRIBUTION
    return Category.UNCLASSIFIABLE


def _ancestors(taxonomy: Iterable[tuple[str, str]]) -> dict[str, set[str]]:
    """Transitive supers per node, walking (sub, super) edges upward."""
    direct: dict[str, set[str]] = {}
    for sub, sup in taxonomy:
        direct.setdefault(sub, set()).add(sup)
        direct.setdefault(sup, set())
    out: dict[str, set[str]] = {}
    for node in direct:
        seen: set[str] = set()
        queue = deque(direct[node])
        while queue:
            current = queue.popleft()
            if current in seen:
                continue
            seen.add(current)
            queue.extend(direct.get(current, ()))
        out[node] = seen
    return out


def effective_identity(taxonomy: Iterable[tuple[str, str]],
                       annotations: Mapping[str, MetaAnnotation]
                       ) -> dict[str, bool]:
    """Identity inheritance: a class whose ancestor supplies identity
    carries +I, whatever its own flag says."""
    ancestors = _ancestors(taxonomy)
    nodes = set(ancestors) | set(annotations)
    carries = {}
    for node in nodes:
        own = node in annotations and annotations[node].identity
        inherited = any(annotations[a].supplies_identity
                        for a in ancestors.get(node, ())
                        if a in annotations)
        carries[node] = own or inherited
    return carries


def _missing_annotation(name: str) -> Diagnostic:
    return Diagnostic("MISSING_ANNOTATION", (name,),
                      f"no meta-annotation for {name!r}")


def check_axioms(taxonomy: Iterable[tuple[str, str]],
                 annotations: Mapping[str, MetaAnnotation]) -> list[Diagnostic]:
    """The three taxonomy axioms, applied per edge after identity
    inheritance. Unannotated nodes are warned about and excluded."""
    edges = set(taxonomy)
    diags: list[Diagnostic] = []
    for node in sorted({n for edge in edges for n in edge}):
        if node not in annotations:
            diags.append(_missing_annotation(node))
    carries = effective_identity(edges, annotations)
    for sub, sup in sorted(edges):
        if sub not in annotations or sup not in annotations:
            continue
        a_sub, a_sup = annotations[sub], annotations[sup]
        if a_sub.rigidity is Rigidity.RIGID and a_sup.rigidity is Rigidity.ANTI_RIGID:
            diags.append(Diagnostic(
                "AXIOM1", (sub, sup),
                f"anti-rigid {sup!r} cannot subsume rigid {sub!r}"))
        if carries[sup] and not carries[sub]:
            diags.append(Diagnostic(
                "AXIOM2", (sub, sup),
                f"{sup!r} holds an identity property that {sub!r} does not"))
        if a_sup.dependence and not a_sub.dependence:
            diags.append(Diagnostic(
                "AXIOM3", (sub, sup),
                f"dependent {sup!r} cannot subsume independent {sub!r}"))
    return diags


def validate_model(model: ConceptualModel,
                   annotations: Mapping[str, MetaAnnotation]) -> list[Diagnostic]:
    """The merged Rules 1-5 over a structurally valid model."""
    diags: list[Diagnostic] = []
    categories: dict[str, Category] = {}
    for name in sorted(model.entity_types):
        if name in annotations:
            categories[name] = classify_category(annotations[name])
        else:
            diags.append(_missing_annotation(name))

    # Rule 1: only substantial things may be entity types.
    for name in sorted(model.entity_types):
        category = categories.get(name)
        if category is None or category in SUBSTANTIAL:
            continue
        repair = None
        if category is Category.ATTRIBUTION:
            hosts = sorted({r.source for r in model.relationships
                            if r.target == name and r.source != name})
            if len(hosts) == 1:
                repair = DemoteToAttribute(name, hosts[0])
                detail = f"; demote into {hosts[0]!r}"
            elif hosts:
                detail = ("; host ambiguous between " + ", ".join(hosts)
                          + ", no repair suggested")
            else:
                detail = "; no incoming relationship names a host"
        else:
            detail = ""
        diags.append(Diagnostic(
            "RULE1", (name,),
            f"{name!r} classifies as {category.value}, not a substantial "
            f"entity{detail}", repair))

    # Rule 2: attribute concepts must look like attributions (-R, -I).
    for ename in sorted(model.entity_types):
        for attr in sorted(model.entity_types[ename].attributes,
                           key=lambda a: a.name):
            a = annotations.get(attr.name)
            if a is None:
                continue
            if a.rigidity is not Rigidity.NON_RIGID or a.identity:
                identity = "+I" if a.identity else "-I"
                diags.append(Diagnostic(
                    "RULE2", (ename, attr.name),
                    f"attribute {attr.name!r} of {ename!r} should carry "
                    f"(-R, -I), got ({a.rigidity.value}, {identity})"))

    # Rule 3: relationships connect substantial things only.
    for rel in sorted(model.relationships, key=Relationship.key):
        for endpoint in (rel.source, rel.target):
            category = categories.get(endpoint)
            if category is not None and category not in SUBSTANTIAL:
                diags.append(Diagnostic(
                    "RULE3", (rel_key(rel), endpoint),
                    f"relationship {rel.name!r} touches non-substantial "
                    f"{endpoint!r} ({category.value})"))

    outgoing = {name: {r.name for r in model.relationships if r.source == name}
                for name in model.entity_types}
    declared = {name: model.entity_types[name].attribute_names() | outgoing[name]
                for name in model.entity_types}
    carries = effective_identity(model.generalizations, annotations)
    ancestors = _ancestors(model.generalizations)

    # Rule 4: composites need identity, >= 2 components, emergent property.
    for name in sorted(model.entity_types):
        entity = model.entity_types[name]
        if not entity.composite:
            continue
        components = sorted({r.target for r in model.relationships
                             if r.source == name and r.target != name})
        problems = []
        if len(components) < 2:
            problems.append("fewer than two component types")
        if not carries.get(name, False):
            problems.append("no identity characteristic")
        component_names: set[str] = set()
        for comp in components:
            component_names |= declared.get(comp, set())
        # the component-pointing relationships are the composition itself,
        # not emergent properties
        own = (entity.attribute_names()
               | {r.name for r in model.relationships
                  if r.source == name and r.target not in components})
        if not (own - component_names):
            problems.append("no emergent property beyond its components")
        if problems:
            diags.append(Diagnostic(
                "RULE4", (name,),
                f"composite {name!r}: " + "; ".join(problems)))

    # Rule 5: a subtype must declare something new, and the taxonomy must
    # satisfy the axioms.
    for sub, sup in sorted(model.generalizations):
        if sub not in model.entity_types or sup not in model.entity_types:
            continue
        inherited: set[str] = set(declared.get(sup, set()))
        for above in ancestors.get(sup, ()):
            inherited |= declared.get(above, set())
        if not (declared.get(sub, set()) - inherited):
            diags.append(Diagnostic(
                "RULE5", (sub, sup),
                f"{sub!r} declares no attribute or relationship beyond "
                f"{sup!r} and its supers"))
    diags.extend(check_axioms(model.generalizations, annotations))

    seen = set()
    unique = []
    for d in diags:
        key = (d.code, d.subjects, d.message)
        if key not in seen:
            seen.add(key)
            unique.append(d)
    return unique


def apply_repairs(model: ConceptualModel,
                  repairs: Iterable[Repair]) -> ConceptualModel:
    """Apply demotions and edge removals; the result is structurally valid."""
    unique: list[Repair] = []
    for repair in repairs:
        if repair not in unique:
            unique.append(repair)
    demotions: dict[str, str] = {}
    removals: set[tuple[str, str]] = set()
    for repair in unique:
        if isinstance(repair, DemoteToAttribute):
            if repair.entity == repair.host:
                raise RepairConflict(f"{repair.entity!r} demoted into itself")
            if demotions.get(repair.entity, repair.host) != repair.host:
                raise RepairConflict(
                    f"{repair.entity!r} demoted into both "
                    f"{demotions[repair.entity]!r} and {repair.host!r}")
            demotions[repair.entity] = repair.host
        else:
            removals.add((repair.sub, repair.super_))
    for entity, host in demotions.items():
        if host in demotions:
            raise RepairConflict(
                f"{host!r} is both demoted and a demotion host")

    out = copy_model(model)
    for entity, host in sorted(demotions.items()):
        if entity not in out.entity_types:
            raise UnknownSubject(entity)
        if host not in out.entity_types:
            raise UnknownSubject(host)
        if entity in out.entity_types[host].attribute_names():
            raise RepairConflict(
                f"{host!r} already declares an attribute {entity!r}")
    for sub, sup in sorted(removals):
        if (sub, sup) not in out.generalizations:
            raise UnknownSubject(gen_key(sub, sup))

    for sub, sup in sorted(removals):
        out.generalizations.discard((sub, sup))
        out.provenance.pop(gen_key(sub, sup), None)

    for entity, host in sorted(demotions.items()):
        incoming = [r for r in out.relationships
                    if r.source == host and r.target == entity]
        multiplicity = incoming[0].target_card if incoming else (0, 1)
        out.entity_types[host].attributes.append(Attribute(
            name=entity, datatype="string", multiplicity=multiplicity))
        out.provenance[attr_key(host, entity)] = Provenance(
            0, f"repair:demote:{entity}")
        dropped_rels = [r for r in out.relationships
                        if entity in (r.source, r.target)]
        out.relationships = [r for r in out.relationships
                             if entity not in (r.source, r.target)]
        for rel in dropped_rels:
            out.provenance.pop(rel_key(rel), None)
        dropped_gens = {e for e in out.generalizations if entity in e}
        out.generalizations -= dropped_gens
        for edge in dropped_gens:
            out.provenance.pop(gen_key(*edge), None)
        removed = out.entity_types.pop(entity)
        out.provenance.pop(entity_key(entity), None)
        for attr in removed.attributes:
            out.provenance.pop(attr_key(entity, attr.name), None)
    return out


# ---------------------------------------------------------------------------
# Annotation sidecar JSON

_RIGIDITY_SYMBOLS = {r.value: r for r in Rigidity}


def annotations_from_json(data: bytes | str) -> dict[str, MetaAnnotation]:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("$", f"not valid JSON: {exc}") from exc
    if not isinstance(obj, list):
        raise SchemaViolation("$", "annotation sidecar must be an array")
    annotations: dict[str, MetaAnnotation] = {}
    for i, entry in enumerate(obj):
        path = f"$[{i}]"
        if not isinstance(entry, dict):
            raise SchemaViolation(path, "expected object")
        unknown = set(entry) - {"concept", "rigidity", "identity", "supplies",
                                "unity", "dependence"}
        if unknown:
            raise SchemaViolation(path, f"unknown keys: {sorted(unknown)}")
        concept = entry.get("concept")
        if not isinstance(concept, str):
            raise SchemaViolation(f"{path}.concept", "expected string")
        if concept in annotations:
            raise SchemaViolation(path, f"duplicate concept {concept!r}")
        rigidity = entry.get("rigidity")
        if rigidity not in _RIGIDITY_SYMBOLS:
            raise SchemaViolation(f"{path}.rigidity",
                                  f"expected +R/-R/~R, got {rigidity!r}")
        identity = entry.get("identity")
        if identity not in ("+I", "-I"):
            raise SchemaViolation(f"{path}.identity",
                                  f"expected +I/-I, got {identity!r}")
        supplies = entry.get("supplies", False)
        if not isinstance(supplies, bool):
            raise SchemaViolation(f"{path}.supplies", "expected boolean")
        unity = entry.get("unity")
        if unity not in (None, "+U", "-U"):
            raise SchemaViolation(f"{path}.unity",
                                  f"expected +U/-U/null, got {unity!r}")
        dependence = entry.get("dependence")
        if dependence not in ("+D", "-D"):
            raise SchemaViolation(f"{path}.dependence",
                                  f"expected +D/-D, got {dependence!r}")
        try:
            annotations[concept] = MetaAnnotation(
                concept=concept, rigidity=_RIGIDITY_SYMBOLS[rigidity],
                identity=identity == "+I", supplies_identity=supplies,
                unity=unity, dependence=dependence == "+D")
        except ValueError as exc:
            raise SchemaViolation(path, str(exc)) from exc
    return annotations


def load_annotations(path: str | Path) -> dict[str, MetaAnnotation]:
    return annotations_from_json(Path(path).read_bytes())


def annotations_to_json(annotations: Mapping[str, MetaAnnotation]) -> bytes:
    entries = []
    for concept in sorted(annotations):
        a = annotations[concept]
        entries.append({
            "concept": concept,
            "rigidity": a.rigidity.value,
            "identity": "+I" if a.identity else "-I",
            "supplies": a.supplies_identity,
            "unity": a.unity,
            "dependence": "+D" if a.dependence else "-D",
        })
    text = json.dumps(entries, sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")
