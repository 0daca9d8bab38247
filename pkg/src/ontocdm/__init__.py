"""ontocdm: derive conceptual data models from domain ontologies.

Pipeline: read an ontology (RDF/XML or JSON interchange), run the
mapping rules to generate a model, validate it against the merged
ontological rules, apply suggested repairs, and score the result with
regression/accuracy/lexical measures.

Functions that share a name across stages (the structural and the
ontological ``validate_model``) live on their submodules: ``cdm`` and
``ontoclean``.
"""

from .cdm import (Attribute, ConceptualModel, EntityType, ModelCounts,
                  Relationship, model_counts, model_from_json, model_to_json)
from .diagnostics import (DemoteToAttribute, Diagnostic, RemoveGeneralization,
                          SEVERITY)
from .emit import EmitOptions, emit_json, emit_plantuml
from .engine import (TransformOptions, TransformTrace, merge_cards, refine,
                     transform)
from .errors import ToolkitError
from .metrics import (AccuracyReport, ConstructCounts, LexicalReport,
                      RegressionResult, compare_models, count_constructs,
                      fit_regression, lexical_check, load_lexicon,
                      regression_table, tokenize_name)
from .ontoclean import (Category, MetaAnnotation, Rigidity, apply_repairs,
                        check_axioms, classify_category, load_annotations)
from .ontology import (ClassKind, ConstraintKind, OntoClass, Ontology,
                       OntoProperty, PropertyKind, RestrictionSpec, resolve,
                       validate_ontology)
from .owl_reader import (ReaderConfig, ReadReport, read_json, read_rdfxml,
                         write_json)

__version__ = "0.1.0"

__all__ = [
    "Attribute", "ConceptualModel", "EntityType", "ModelCounts",
    "Relationship", "model_counts", "model_from_json", "model_to_json",
    "DemoteToAttribute", "Diagnostic", "RemoveGeneralization", "SEVERITY",
    "EmitOptions", "emit_json", "emit_plantuml",
    "TransformOptions", "TransformTrace", "merge_cards", "refine", "transform",
    "ToolkitError",
    "AccuracyReport", "ConstructCounts", "LexicalReport", "RegressionResult",
    "compare_models", "count_constructs", "fit_regression", "lexical_check",
    "load_lexicon", "regression_table", "tokenize_name",
    "Category", "MetaAnnotation", "Rigidity", "apply_repairs", "check_axioms",
    "classify_category", "load_annotations",
    "ClassKind", "ConstraintKind", "OntoClass", "Ontology", "OntoProperty",
    "PropertyKind", "RestrictionSpec", "resolve", "validate_ontology",
    "ReaderConfig", "ReadReport", "read_json", "read_rdfxml", "write_json",
    "__version__",
]
