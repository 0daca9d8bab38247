"""The mapping rules that turn an Ontology into a ConceptualModel.

Rules run in a fixed order so that entity types exist before edges
attach: 1 (classes), 5 (subsumptions), 6 (boolean expressions),
2 (properties), 3/4 (restrictions), then the rule-7 refinement pass.
Every in-scope construct either produces an element or is skipped with
a reason; the trace records both, and replaying it against the source
ontology reproduces the output.
"""
from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field

from .cdm import (Attribute, Card, ConceptualModel, EntityType, Provenance,
                  Relationship, attr_key, copy_model, entity_key, gen_key,
                  rel_key)
from .errors import (DanglingDomainOrRange, InconsistentCardinalities,
                     UnresolvedRoot)
from .graphs import transitive_reduction
from .ontology import (ClassKind, ConstraintKind, OntoClass, Ontology,
                       OntoProperty, PropertyKind, RestrictionSpec,
                       is_builtin, is_datatype, validate_ontology)

# Fixture-format annotation markers the engine interprets.
PART_OF_KEY = "partOf"
DATATYPE_LIKE_KEY = "datatypeLike"
MARKER_TRUE = "true"


@dataclass
class TransformOptions:
    """roots limits the transform to the subgraph reachable from the named
    classes (through subsumption, expressions, and mutual properties);
    None means the whole ontology."""

    roots: set[str] | None = None
    drop_builtins: bool = True


@dataclass(frozen=True)
class TraceEntry:
    rule: int
    input: str
    output: str | None = None
    reason: str | None = None

    def to_json_obj(self) -> dict:
        obj: dict = {"rule": self.rule, "input": self.input, "output": self.output}
        if self.reason is not None:
            obj["reason"] = self.reason
        return obj


@dataclass
class TransformTrace:
    entries: list[TraceEntry] = field(default_factory=list)

    def to_json_obj(self) -> list[dict]:
        return [e.to_json_obj() for e in self.entries]

    def to_json(self) -> bytes:
        text = json.dumps(self.to_json_obj(), sort_keys=True, indent=2,
                          ensure_ascii=False)
        return (text + "\n").encode("utf-8")


def merge_cards(a: Card, b: Card, subject: str = "cardinality merge") -> Card:
    """Tightest bounds consistent with both: interval intersection."""
    lo = max(a[0], b[0])
    if a[1] is None:
        hi = b[1]
    elif b[1] is None:
        hi = a[1]
    else:
        hi = min(a[1], b[1])
    if hi is not None and lo > hi:
        raise InconsistentCardinalities(subject, f"{a} and {b} do not overlap")
    return (lo, hi)


def compute_scope(ontology: Ontology, roots: set[str] | None) -> set[str]:
    """Classes reachable from the roots, walking subsumption, expression
    operands, restriction fillers, and mutual-property edges in both
    directions. Builtins never bridge components."""
    if roots is None:
        return set(ontology.classes)
    for name in sorted(roots):
        if name not in ontology.classes:
            raise UnresolvedRoot(name)
    adjacency: dict[str, set[str]] = defaultdict(set)

    def link(a: str, b: str):
        if is_builtin(a) or is_builtin(b):
            return
        adjacency[a].add(b)
        adjacency[b].add(a)

    for sub, sup in ontology.subsumptions:
        link(sub, sup)
    for cls in ontology.classes.values():
        for op in cls.operands:
            link(cls.name, op)
        if cls.restriction is not None and not is_datatype(cls.restriction.filler):
            link(cls.name, cls.restriction.filler)
    for prop in ontology.properties.values():
        if (prop.kind is PropertyKind.MUTUAL and prop.domain is not None
                and prop.domain in ontology.classes
                and prop.range in ontology.classes):
            link(prop.domain, prop.range)

    seen = set(roots)
    queue = deque(sorted(roots))
    while queue:
        node = queue.popleft()
        for nxt in adjacency.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def map_class(cls: OntoClass) -> EntityType:
    """Rule 1: a concept becomes an entity type (no attributes yet)."""
    if cls.kind is ClassKind.RESTRICTION:
        raise ValueError(f"restriction class {cls.name!r} maps via rules 3-4")
    return EntityType(name=cls.name)


def map_property(prop: OntoProperty) -> Relationship | Attribute:
    """Rule 2: mutual property -> relationship (functional caps the target
    at one); intrinsic property -> attribute on the domain entity type."""
    if prop.domain is None:
        raise DanglingDomainOrRange(prop.name)
    capped: Card = (0, 1) if prop.functional else (0, None)
    if prop.kind is PropertyKind.MUTUAL:
        return Relationship(name=prop.name, source=prop.domain,
                            target=prop.range, source_card=(0, None),
                            target_card=capped, inverse_name=prop.inverse_of)
    return Attribute(name=prop.name, datatype=prop.range, multiplicity=capped)


def _constraint_card(spec: RestrictionSpec) -> Card:
    if spec.constraint is ConstraintKind.SOME_VALUES:
        return (1, None)
    if spec.constraint is ConstraintKind.ALL_VALUES:
        return (0, None)
    return (spec.min_card, spec.max_card)


def map_restriction(host: str, spec: RestrictionSpec,
                    prop: OntoProperty) -> Relationship | Attribute:
    """Rules 3-4: a restriction on a mutual property with a class filler
    becomes a relationship from the host; a datatype filler (or an
    intrinsic property) becomes an attribute of the host."""
    card = _constraint_card(spec)
    if is_datatype(spec.filler):
        return Attribute(name=spec.on_property, datatype=spec.filler,
                         multiplicity=card)
    return Relationship(name=spec.on_property, source=host, target=spec.filler,
                        source_card=(0, None), target_card=card,
                        inverse_name=prop.inverse_of)


def map_expression(cls: OntoClass) -> list[tuple[str, str]]:
    """Rule 6: an intersection inherits from every operand (operands are
    the supers); a union partitions itself into its operands (operands
    are the subs)."""
    if cls.kind is ClassKind.INTERSECTION:
        return [(cls.name, op) for op in sorted(cls.operands)]
    if cls.kind is ClassKind.UNION:
        return [(op, cls.name) for op in sorted(cls.operands)]
    raise ValueError(f"class {cls.name!r} is not a boolean expression")


def _is_composite(ontology: Ontology, name: str) -> bool:
    parts = [p for p in ontology.properties.values()
             if p.kind is PropertyKind.MUTUAL and p.domain == name
             and p.annotations.get(PART_OF_KEY) == MARKER_TRUE]
    return len(parts) >= 2


def transform(ontology: Ontology,
              options: TransformOptions | None = None
              ) -> tuple[ConceptualModel, TransformTrace]:
    options = options or TransformOptions()
    errors = [d for d in validate_ontology(ontology) if d.severity == "error"]
    if errors:
        raise ValueError("ontology failed validation: "
                         + "; ".join(d.message for d in errors))
    scope = compute_scope(ontology, options.roots)
    entries: list[TraceEntry] = []
    model = ConceptualModel()

    def class_kind(name: str) -> ClassKind | None:
        cls = ontology.classes.get(name)
        return cls.kind if cls is not None else None

    def ensure_entity(name: str, rule: int, source: str, composite: bool = False):
        if name not in model.entity_types:
            model.entity_types[name] = EntityType(name=name, composite=composite)
            model.provenance[entity_key(name)] = Provenance(rule, source)
            entries.append(TraceEntry(rule, source, entity_key(name)))

    def in_model(name: str) -> bool:
        return name in model.entity_types

    # rule 1: classes -> entity types
    for name in sorted(ontology.classes):
        cls = ontology.classes[name]
        source = f"class:{name}"
        if name not in scope:
            entries.append(TraceEntry(1, source, None, "out of scope"))
            continue
        if cls.kind is ClassKind.RESTRICTION:
            entries.append(TraceEntry(1, source, None, "restriction class (rules 3-4)"))
            continue
        ensure_entity(name, 1, source, composite=_is_composite(ontology, name))

    # rule 5: subsumption -> generalization
    for sub, sup in sorted(ontology.subsumptions):
        source = f"subsumption:{sub}<{sup}"
        if ClassKind.RESTRICTION in (class_kind(sub), class_kind(sup)):
            entries.append(TraceEntry(5, source, None,
                                      "restriction attachment (rules 3-4)"))
            continue
        if is_builtin(sub) or is_builtin(sup):
            if options.drop_builtins:
                entries.append(TraceEntry(5, source, None, "builtin"))
                continue
            other_in_model = in_model(sub) or in_model(sup)
            for name in (sub, sup):
                if is_builtin(name) and (other_in_model
                                         or is_builtin(sub) and is_builtin(sup)):
                    ensure_entity(name, 1, f"builtin:{name}")
        if not (in_model(sub) and in_model(sup)):
            entries.append(TraceEntry(5, source, None, "out of scope"))
            continue
        if (sub, sup) in model.generalizations:
            entries.append(TraceEntry(5, source, None, "duplicate edge"))
            continue
        model.generalizations.add((sub, sup))
        model.provenance[gen_key(sub, sup)] = Provenance(5, source)
        entries.append(TraceEntry(5, source, gen_key(sub, sup)))

    # rule 6: boolean expressions -> generalization edges
    for name in sorted(ontology.classes):
        cls = ontology.classes[name]
        if not cls.is_expression() or name not in scope:
            continue
        source = f"expression:{name}"
        for sub, sup in map_expression(cls):
            operand = sub if sub != name else sup
            if class_kind(operand) is ClassKind.RESTRICTION:
                entries.append(TraceEntry(6, source, None,
                                          f"restriction operand {operand} (rules 3-4)"))
                continue
            if is_builtin(operand):
                if options.drop_builtins:
                    entries.append(TraceEntry(6, source, None, "builtin"))
                    continue
                ensure_entity(operand, 1, f"builtin:{operand}")
            if not (in_model(sub) and in_model(sup)):
                entries.append(TraceEntry(6, source, None,
                                          f"operand out of scope: {operand}"))
                continue
            if (sub, sup) in model.generalizations:
                entries.append(TraceEntry(6, source, None,
                                          f"duplicate edge {gen_key(sub, sup)}"))
                continue
            model.generalizations.add((sub, sup))
            model.provenance[gen_key(sub, sup)] = Provenance(6, source)
            entries.append(TraceEntry(6, source, gen_key(sub, sup)))

    # rule 2: properties -> relationships / attributes
    for name in sorted(ontology.properties):
        prop = ontology.properties[name]
        source = f"property:{name}"
        if prop.kind is PropertyKind.MUTUAL:
            if (prop.domain is None or not in_model(prop.domain)
                    or not in_model(prop.range)):
                entries.append(TraceEntry(2, source, None,
                                          "dangling domain or range"))
                continue
            rel = map_property(prop)
            model.relationships.append(rel)
            model.provenance.setdefault(rel_key(rel), Provenance(2, source))
            entries.append(TraceEntry(2, source, rel_key(rel)))
        else:
            if prop.domain is None or not in_model(prop.domain):
                entries.append(TraceEntry(2, source, None,
                                          "dangling domain or range"))
                continue
            attr = map_property(prop)
            model.entity_types[prop.domain].attributes.append(attr)
            model.provenance.setdefault(attr_key(prop.domain, attr.name),
                                        Provenance(2, source))
            entries.append(TraceEntry(2, source, attr_key(prop.domain, attr.name)))

    # rules 3-4: restrictions attached to their named hosts
    attachments: list[tuple[str, str]] = []
    for sub, sup in ontology.subsumptions:
        if class_kind(sup) is ClassKind.RESTRICTION and in_model(sub):
            attachments.append((sub, sup))
    for name, cls in ontology.classes.items():
        if cls.kind is ClassKind.INTERSECTION and in_model(name):
            for op in cls.operands:
                if class_kind(op) is ClassKind.RESTRICTION:
                    attachments.append((name, op))
    for host, anon in sorted(attachments):
        spec = ontology.classes[anon].restriction
        prop = ontology.properties[spec.on_property]
        source = f"restriction:{host}<{anon}"
        mapped = map_restriction(host, spec, prop)
        if isinstance(mapped, Attribute):
            rule = 4 if prop.kind is PropertyKind.INTRINSIC else 3
            model.entity_types[host].attributes.append(mapped)
            model.provenance.setdefault(attr_key(host, mapped.name),
                                        Provenance(rule, source))
            entries.append(TraceEntry(rule, source, attr_key(host, mapped.name)))
        else:
            if not in_model(spec.filler):
                entries.append(TraceEntry(3, source, None, "filler out of scope"))
                continue
            model.relationships.append(mapped)
            model.provenance.setdefault(rel_key(mapped), Provenance(3, source))
            entries.append(TraceEntry(3, source, rel_key(mapped)))

    # rule 7: datatype-like demotion, then the generic refinement pass
    model, demote_entries = _demote_datatype_like(ontology, model)
    entries.extend(demote_entries)
    model, refine_trace = refine(model)
    entries.extend(refine_trace.entries)
    return model, TransformTrace(entries)


def _demote_datatype_like(ontology: Ontology, model: ConceptualModel
                          ) -> tuple[ConceptualModel, list[TraceEntry]]:
    """Mutual properties sometimes stand in for intrinsic ones. A
    relationship is demoted to an attribute of its source only when the
    target class has no properties of its own, no subclasses, and is
    explicitly marked datatype-like in the ontology."""

    def is_concept(name: str) -> bool:
        cls = ontology.classes.get(name)
        return cls is not None and cls.kind is not ClassKind.RESTRICTION

    def eligible(name: str) -> bool:
        cls = ontology.classes.get(name)
        if cls is None or cls.annotations.get(DATATYPE_LIKE_KEY) != MARKER_TRUE:
            return False
        if any(p.domain == name for p in ontology.properties.values()):
            return False
        has_subclasses = any(sup == name and is_concept(sub)
                             for sub, sup in ontology.subsumptions)
        return not has_subclasses

    targets = sorted({r.target for r in model.relationships if eligible(r.target)})
    if not targets:
        return model, []

    out = copy_model(model)
    entries: list[TraceEntry] = []
    for target in targets:
        marker = ontology.classes[target].annotations
        datatype = marker.get("datatype", "string")
        kept: list[Relationship] = []
        for rel in out.relationships:
            if rel.target != target:
                kept.append(rel)
                continue
            attr = Attribute(name=rel.name, datatype=datatype,
                             multiplicity=rel.target_card)
            out.entity_types[rel.source].attributes.append(attr)
            old = out.provenance.pop(rel_key(rel), None)
            out.provenance.setdefault(
                attr_key(rel.source, attr.name),
                Provenance(7, old.source if old else rel_key(rel)))
            entries.append(TraceEntry(7, rel_key(rel),
                                      attr_key(rel.source, attr.name),
                                      "demoted to attribute: target is datatype-like"))
        out.relationships = kept
        dropped_gens = {e for e in out.generalizations if target in e}
        if not any(target in (r.source, r.target) for r in out.relationships):
            for edge in sorted(dropped_gens):
                out.generalizations.discard(edge)
                out.provenance.pop(gen_key(*edge), None)
                entries.append(TraceEntry(7, gen_key(*edge), None,
                                          "removed with datatype-like entity type"))
            out.entity_types.pop(target, None)
            out.provenance.pop(entity_key(target), None)
            entries.append(TraceEntry(7, entity_key(target), None,
                                      "removed datatype-like entity type"))
    return out, entries


def refine(model: ConceptualModel) -> tuple[ConceptualModel, TransformTrace]:
    """Rule 7: merge duplicates (tightest cardinalities win) and drop
    generalization edges implied by transitivity. Idempotent."""
    entries: list[TraceEntry] = []
    out = copy_model(model)

    for name in sorted(out.entity_types):
        entity = out.entity_types[name]
        kept: dict[str, Attribute] = {}
        order: list[Attribute] = []
        for attr in entity.attributes:
            key = attr_key(name, attr.name)
            if attr.name in kept:
                survivor = kept[attr.name]
                survivor.multiplicity = merge_cards(
                    survivor.multiplicity, attr.multiplicity, subject=key)
                entries.append(TraceEntry(7, key, key,
                                          "merged duplicate attribute"))
            else:
                kept[attr.name] = attr
                order.append(attr)
        entity.attributes = order

    kept_rels: dict[tuple[str, str, str], Relationship] = {}
    order_rels: list[Relationship] = []
    for rel in out.relationships:
        key = rel.key()
        if key in kept_rels:
            survivor = kept_rels[key]
            survivor.source_card = merge_cards(
                survivor.source_card, rel.source_card, subject=rel_key(rel))
            survivor.target_card = merge_cards(
                survivor.target_card, rel.target_card, subject=rel_key(rel))
            if survivor.inverse_name is None:
                survivor.inverse_name = rel.inverse_name
            entries.append(TraceEntry(7, rel_key(rel), rel_key(survivor),
                                      "merged duplicate relationship"))
        else:
            kept_rels[key] = rel
            order_rels.append(rel)
    out.relationships = order_rels

    reduced = transitive_reduction(out.generalizations)
    for edge in sorted(out.generalizations - reduced):
        out.provenance.pop(gen_key(*edge), None)
        entries.append(TraceEntry(7, gen_key(*edge), None, "transitively implied"))
    out.generalizations = reduced

    return out, TransformTrace(entries)
