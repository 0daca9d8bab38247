"""Quantitative evaluation: construct-correlation regression, accuracy
against gold models, and lexical correctness of element names.

The lexical check runs against a pluggable newline-delimited word list
rather than a lexical database; export one from any dictionary you like.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .cdm import ConceptualModel, model_counts
from .errors import DegenerateInput, LexiconUnavailable
from .ontology import ClassKind, Ontology, PropertyKind


@dataclass(frozen=True)
class ConstructCounts:
    """Paired construct tallies for one ontology/model couple."""

    classes: int
    subsumptions: int
    mutual_properties: int
    intrinsic_properties: int
    entity_types: int
    generalizations: int
    relationships: int
    attributes: int


def count_constructs(ontology: Ontology, model: ConceptualModel) -> ConstructCounts:
    concepts = {name for name, cls in ontology.classes.items()
                if cls.kind is not ClassKind.RESTRICTION}
    subsumptions = sum(1 for sub, sup in ontology.subsumptions
                       if sub in concepts and sup in concepts)
    mutual = sum(1 for p in ontology.properties.values()
                 if p.kind is PropertyKind.MUTUAL)
    counts = model_counts(model)
    return ConstructCounts(
        classes=len(concepts),
        subsumptions=subsumptions,
        mutual_properties=mutual,
        intrinsic_properties=len(ontology.properties) - mutual,
        entity_types=counts.entity_types,
        generalizations=counts.generalizations,
        relationships=counts.relationships,
        attributes=counts.attributes,
    )


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    r_squared: float
    n: int

    def to_json_obj(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept,
                "r_squared": self.r_squared, "n": self.n}


def fit_regression(points: Sequence[tuple[float, float]]) -> RegressionResult:
    """Ordinary least squares y = slope*x + intercept with
    R^2 = 1 - SS_res/SS_tot (1 when all y coincide with the fit)."""
    n = len(points)
    if n < 2:
        raise DegenerateInput(f"need at least 2 points, got {n}")
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    if all(x == xs[0] for x in xs):
        raise DegenerateInput("all x values identical")
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    if sxx == 0.0:
        # distinct x values can still underflow to zero spread
        raise DegenerateInput("x values numerically indistinguishable")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - mean_y) ** 2 for y in ys)
    if ss_tot == 0.0:
        r_squared = 1.0 if ss_res == 0.0 else 0.0
    else:
        r_squared = 1.0 - ss_res / ss_tot
    r_squared = min(1.0, max(0.0, r_squared))
    return RegressionResult(slope=slope, intercept=intercept,
                            r_squared=r_squared, n=n)


# Ontology-side field paired with the model-side field it should predict.
CONSTRUCT_PAIRINGS = (
    ("classes", "entity_types"),
    ("subsumptions", "generalizations"),
    ("mutual_properties", "relationships"),
    ("intrinsic_properties", "attributes"),
)


def pairing_key(x_field: str, y_field: str) -> str:
    return f"{x_field}_vs_{y_field}"


def regression_points(counts: Sequence[ConstructCounts]
                      ) -> dict[str, list[tuple[float, float]]]:
    return {
        pairing_key(x, y): [(float(getattr(c, x)), float(getattr(c, y)))
                            for c in counts]
        for x, y in CONSTRUCT_PAIRINGS
    }


def regression_table(counts: Sequence[ConstructCounts]
                     ) -> dict[str, RegressionResult]:
    table = {}
    for key, points in regression_points(counts).items():
        try:
            table[key] = fit_regression(points)
        except DegenerateInput as exc:
            raise DegenerateInput(f"{key}: {exc}") from exc
    return table


# ---------------------------------------------------------------------------
# Accuracy against a gold model

@dataclass(frozen=True)
class KindAccuracy:
    matched: frozenset[str]
    missing: frozenset[str]   # in gold, not generated
    extra: frozenset[str]     # generated, not gold
    recall: float             # the headline accuracy figure
    precision: float

    def to_json_obj(self) -> dict:
        return {"matched": sorted(self.matched), "missing": sorted(self.missing),
                "extra": sorted(self.extra), "recall": self.recall,
                "precision": self.precision}


@dataclass(frozen=True)
class AccuracyReport:
    entity_types: KindAccuracy
    attributes: KindAccuracy
    generalizations: KindAccuracy
    relationships: KindAccuracy
    # endpoint-matched relationships whose names disagree: (endpoints,
    # generated names, gold names)
    relationship_name_mismatches: tuple[tuple[str, tuple[str, ...], tuple[str, ...]], ...] = ()

    def to_json_obj(self) -> dict:
        return {
            "entity_types": self.entity_types.to_json_obj(),
            "attributes": self.attributes.to_json_obj(),
            "generalizations": self.generalizations.to_json_obj(),
            "relationships": self.relationships.to_json_obj(),
            "relationship_name_mismatches": [
                {"endpoints": endpoints, "generated": list(gen), "gold": list(gold)}
                for endpoints, gen, gold in self.relationship_name_mismatches
            ],
        }


def _ratio(hits: int, total: int) -> float:
    return hits / total if total else 1.0


def _kind_accuracy(generated: dict[str, str], gold: dict[str, str]) -> KindAccuracy:
    matched = frozenset(generated.keys() & gold.keys())
    missing = frozenset(gold[k] for k in gold.keys() - generated.keys())
    extra = frozenset(generated[k] for k in generated.keys() - gold.keys())
    return KindAccuracy(
        matched=matched, missing=missing, extra=extra,
        recall=_ratio(len(matched), len(gold)),
        precision=_ratio(len(matched), len(generated)),
    )


def normalize_name(name: str) -> str:
    tokens = tokenize_name(name)
    return "-".join(tokens) if tokens else name.lower()


def compare_models(generated: ConceptualModel,
                   gold: ConceptualModel) -> AccuracyReport:
    """Match elements by normalized name; generalizations as (sub, super)
    pairs; relationships by endpoints, with name disagreements surfaced
    rather than counted as misses."""

    def entity_map(model: ConceptualModel) -> dict[str, str]:
        return {normalize_name(n): n for n in model.entity_types}

    def attribute_map(model: ConceptualModel) -> dict[str, str]:
        out = {}
        for ename, entity in model.entity_types.items():
            for attr in entity.attributes:
                key = f"{normalize_name(ename)}.{normalize_name(attr.name)}"
                out[key] = f"{ename}.{attr.name}"
        return out

    def generalization_map(model: ConceptualModel) -> dict[str, str]:
        return {f"{normalize_name(s)}->{normalize_name(p)}": f"{s}->{p}"
                for s, p in model.generalizations}

    def relationship_maps(model: ConceptualModel):
        endpoints: dict[str, str] = {}
        names: dict[str, set[str]] = {}
        for rel in model.relationships:
            key = f"{normalize_name(rel.source)}->{normalize_name(rel.target)}"
            endpoints.setdefault(key, f"{rel.source}->{rel.target}")
            names.setdefault(key, set()).add(normalize_name(rel.name))
        return endpoints, names

    gen_rels, gen_names = relationship_maps(generated)
    gold_rels, gold_names = relationship_maps(gold)
    relationships = _kind_accuracy(gen_rels, gold_rels)
    mismatches = []
    for key in sorted(relationships.matched):
        if gen_names[key] != gold_names[key]:
            mismatches.append((key, tuple(sorted(gen_names[key])),
                               tuple(sorted(gold_names[key]))))

    return AccuracyReport(
        entity_types=_kind_accuracy(entity_map(generated), entity_map(gold)),
        attributes=_kind_accuracy(attribute_map(generated), attribute_map(gold)),
        generalizations=_kind_accuracy(generalization_map(generated),
                                       generalization_map(gold)),
        relationships=relationships,
        relationship_name_mismatches=tuple(mismatches),
    )


# ---------------------------------------------------------------------------
# Lexical correctness

_SEPARATORS = re.compile(r"[^0-9A-Za-z]+")
_TOKEN = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")


def tokenize_name(name: str) -> list[str]:
    """Lowercase word parts: splits on separators, camel-case boundaries,
    and digit/letter transitions."""
    return [token.lower()
            for chunk in _SEPARATORS.split(name)
            for token in _TOKEN.findall(chunk)]


@dataclass(frozen=True)
class LexicalReport:
    name: str
    tokens: tuple[str, ...]
    all_known: bool
    unknown_tokens: tuple[str, ...]

    def to_json_obj(self) -> dict:
        return {"name": self.name, "tokens": list(self.tokens),
                "all_known": self.all_known,
                "unknown_tokens": list(self.unknown_tokens)}


@dataclass(frozen=True)
class LexicalSummary:
    reports: tuple[LexicalReport, ...]
    percent_correct: float

    def to_json_obj(self) -> dict:
        return {"percent_correct": self.percent_correct,
                "reports": [r.to_json_obj() for r in self.reports]}


def lexical_check(names: Iterable[str], lexicon: set[str]) -> LexicalSummary:
    """A name is lexically correct iff every token is in the lexicon."""
    reports = []
    for name in names:
        tokens = tuple(tokenize_name(name))
        unknown = tuple(t for t in tokens if t not in lexicon)
        reports.append(LexicalReport(name=name, tokens=tokens,
                                     all_known=not unknown and bool(tokens),
                                     unknown_tokens=unknown))
    correct = sum(1 for r in reports if r.all_known)
    percent = 100.0 * correct / len(reports) if reports else 100.0
    return LexicalSummary(reports=tuple(reports), percent_correct=percent)


def load_lexicon(path: str | Path) -> set[str]:
    """One lowercase word per line, UTF-8."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconUnavailable(path) from exc
    return {line.strip().lower() for line in text.splitlines() if line.strip()}


def model_element_names(model: ConceptualModel) -> list[str]:
    """Distinct entity-type, attribute, and relationship names, sorted."""
    names = set(model.entity_types)
    for entity in model.entity_types.values():
        names.update(a.name for a in entity.attributes)
    names.update(r.name for r in model.relationships)
    return sorted(names)
