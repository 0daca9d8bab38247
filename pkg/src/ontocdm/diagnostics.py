"""Diagnostics and repair descriptors shared by the validators.

A Diagnostic never aborts a run: violations are data. Severity is fixed
per code so that downstream consumers (and the CLI exit status) cannot
re-grade a finding.
"""
from __future__ import annotations

from dataclasses import dataclass, field

# Fixed code -> severity table. RULE1/RULE3/RULE5 and the axioms are the
# model-changing findings; RULE2/RULE4 and missing annotations are advice.
SEVERITY = {
    "AXIOM1": "error",
    "AXIOM2": "error",
    "AXIOM3": "error",
    "RULE1": "error",
    "RULE2": "warning",
    "RULE3": "error",
    "RULE4": "warning",
    "RULE5": "error",
    "MISSING_ANNOTATION": "warning",
    "READER_SKIPPED": "warning",
    "ONT_UNRESOLVED_NAME": "error",
    "ONT_SUBSUMPTION_CYCLE": "error",
    "ONT_BAD_EXPRESSION": "error",
    "ONT_BAD_RESTRICTION": "error",
    "ONT_BAD_PROPERTY": "error",
    "ONT_INVERSE_ASYMMETRY": "error",
    "CDM_DANGLING_REFERENCE": "error",
    "CDM_GENERALIZATION_CYCLE": "error",
    "CDM_DUPLICATE_RELATIONSHIP": "error",
    "CDM_DUPLICATE_ATTRIBUTE": "error",
    "CDM_BAD_CARDINALITY": "error",
}


@dataclass(frozen=True)
class DemoteToAttribute:
    """Turn an entity type into an attribute of the host entity type."""

    entity: str
    host: str

    def to_json_obj(self) -> dict:
        return {"kind": "demote_to_attribute", "entity": self.entity, "host": self.host}


@dataclass(frozen=True)
class RemoveGeneralization:
    """Delete one generalization edge (sub, super)."""

    sub: str
    super_: str

    def to_json_obj(self) -> dict:
        return {"kind": "remove_generalization", "sub": self.sub, "super": self.super_}


Repair = DemoteToAttribute | RemoveGeneralization


def repair_from_json_obj(obj: dict) -> Repair:
    kind = obj.get("kind")
    if kind == "demote_to_attribute":
        return DemoteToAttribute(obj["entity"], obj["host"])
    if kind == "remove_generalization":
        return RemoveGeneralization(obj["sub"], obj["super"])
    raise ValueError(f"unknown repair kind: {kind!r}")


@dataclass(frozen=True)
class Diagnostic:
    code: str
    subjects: tuple[str, ...]
    message: str
    suggested_repair: Repair | None = None
    severity: str = field(default="", compare=False)

    def __post_init__(self):
        if self.code not in SEVERITY:
            raise ValueError(f"unknown diagnostic code: {self.code!r}")
        object.__setattr__(self, "severity", SEVERITY[self.code])

    def to_json_obj(self) -> dict:
        obj = {
            "code": self.code,
            "severity": self.severity,
            "subjects": list(self.subjects),
            "message": self.message,
        }
        if self.suggested_repair is not None:
            obj["repair"] = self.suggested_repair.to_json_obj()
        return obj


def has_errors(diagnostics) -> bool:
    return any(d.severity == "error" for d in diagnostics)


def diagnostics_to_json_obj(diagnostics) -> list[dict]:
    return [d.to_json_obj() for d in diagnostics]
