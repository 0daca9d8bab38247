import pytest

from ontocdm.cdm import (Attribute, ConceptualModel, EntityType, Relationship,
                         copy_model, format_card, model_counts,
                         model_from_json, model_to_json, validate_model)
from ontocdm.errors import SchemaViolation


def small_model():
    model = ConceptualModel()
    model.entity_types["a"] = EntityType("a", [Attribute("x", "string", (0, 1))])
    model.entity_types["b"] = EntityType("b")
    model.relationships.append(Relationship("r", "a", "b"))
    model.generalizations.add(("a", "b"))
    return model


class TestValidateModel:
    def test_dangling_relationship(self):
        model = ConceptualModel()
        model.entity_types["a"] = EntityType("a")
        model.relationships.append(Relationship("r", "a", "ghost"))
        diags = validate_model(model)
        assert [d.code for d in diags] == ["CDM_DANGLING_REFERENCE"]
        assert "ghost" in diags[0].subjects

    def test_generalization_two_cycle(self):
        model = ConceptualModel()
        model.entity_types["a"] = EntityType("a")
        model.entity_types["b"] = EntityType("b")
        model.generalizations = {("a", "b"), ("b", "a")}
        diags = validate_model(model)
        assert [d.code for d in diags] == ["CDM_GENERALIZATION_CYCLE"]
        assert set(diags[0].subjects) == {"a", "b"}

    def test_refined_fixture_model_is_clean(self, golden_model):
        assert validate_model(golden_model) == []

    def test_duplicate_relationship(self):
        model = small_model()
        model.relationships.append(Relationship("r", "a", "b"))
        codes = [d.code for d in validate_model(model)]
        assert "CDM_DUPLICATE_RELATIONSHIP" in codes

    def test_duplicate_attribute(self):
        model = small_model()
        model.entity_types["a"].attributes.append(Attribute("x", "int"))
        codes = [d.code for d in validate_model(model)]
        assert "CDM_DUPLICATE_ATTRIBUTE" in codes

    def test_bad_cardinality(self):
        model = small_model()
        model.relationships[0].target_card = (3, 1)
        codes = [d.code for d in validate_model(model)]
        assert "CDM_BAD_CARDINALITY" in codes


class TestModelCounts:
    def test_empty(self):
        assert model_counts(ConceptualModel()) == (0, 0, 0, 0)

    def test_one_entity_two_attributes(self):
        model = ConceptualModel()
        model.entity_types["a"] = EntityType(
            "a", [Attribute("x", "string"), Attribute("y", "int")])
        assert model_counts(model) == (1, 0, 2, 0)

    def test_mini_tambis_golden_counts(self, golden_model):
        assert model_counts(golden_model) == (21, 7, 13, 17)


class TestJson:
    def test_roundtrip(self, golden_model):
        data = model_to_json(golden_model)
        again = model_from_json(data)
        assert again == golden_model
        assert model_to_json(again) == data

    def test_schema_violation(self):
        with pytest.raises(SchemaViolation):
            model_from_json(b'{"entity_types": [{"name": 3}]}')
        with pytest.raises(SchemaViolation):
            model_from_json(b"[1,2]")

    def test_multiplicity_encoding(self):
        model = small_model()
        data = model_to_json(model)
        again = model_from_json(data)
        assert again.entity_types["a"].attributes[0].multiplicity == (0, 1)
        assert again.relationships[0].source_card == (0, None)


def test_format_card():
    assert format_card((0, None)) == "0..*"
    assert format_card((1, 1)) == "1"
    assert format_card((2, 5)) == "2..5"
    assert format_card((1, None)) == "1..*"


def test_copy_model_is_deep(golden_model):
    clone = copy_model(golden_model)
    clone.entity_types["protein"].attributes.append(Attribute("zz", "string"))
    clone.relationships[0].target_card = (9, 9)
    assert golden_model.entity_types["protein"].attribute_names() != \
        clone.entity_types["protein"].attribute_names()
    assert golden_model.relationships[0].target_card != (9, 9)
