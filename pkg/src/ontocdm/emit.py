"""Render a conceptual model as PlantUML text or canonical JSON."""
from __future__ import annotations

from dataclasses import dataclass

from .cdm import (ConceptualModel, Relationship, attr_key, entity_key,
                  format_card, gen_key, model_to_json, rel_key)


@dataclass
class EmitOptions:
    format: str = "plantuml"
    include_provenance_comments: bool = False


def _quote(name: str) -> str:
    return f'"{name}"'


def emit_plantuml(model: ConceptualModel, opts: EmitOptions | None = None) -> str:
    """One class block per entity type, generalization as sub --|> super,
    relationships with cardinalities on both ends. Deterministic: entity
    types by name, edges lexicographic."""
    opts = opts or EmitOptions()
    lines = ["@startuml"]

    def provenance_comment(key: str):
        if not opts.include_provenance_comments:
            return
        entry = model.provenance.get(key)
        if entry is not None:
            lines.append(f"' rule {entry.rule}: {entry.source}")

    for name in sorted(model.entity_types):
        entity = model.entity_types[name]
        provenance_comment(entity_key(name))
        stereotype = " <<composite>>" if entity.composite else ""
        lines.append(f"class {_quote(name)}{stereotype} {{")
        for attr in sorted(entity.attributes, key=lambda a: a.name):
            provenance_comment(attr_key(name, attr.name))
            lines.append(f"  {attr.name}: {attr.datatype}")
        lines.append("}")
    for sub, sup in sorted(model.generalizations):
        provenance_comment(gen_key(sub, sup))
        lines.append(f"{_quote(sub)} --|> {_quote(sup)}")
    for rel in sorted(model.relationships, key=Relationship.key):
        provenance_comment(rel_key(rel))
        lines.append(
            f"{_quote(rel.source)} {_quote(format_card(rel.source_card))} --> "
            f"{_quote(format_card(rel.target_card))} {_quote(rel.target)} "
            f": {rel.name}")
    lines.append("@enduml")
    return "\n".join(lines) + "\n"


def emit_json(model: ConceptualModel) -> bytes:
    """Canonical model JSON; parses back to an equal model."""
    return model_to_json(model)
