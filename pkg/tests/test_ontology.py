import pytest

from ontocdm.errors import UnknownName
from ontocdm.ontology import (ClassKind, ConstraintKind, OntoClass, Ontology,
                              OntoProperty, PropertyKind, RestrictionSpec,
                              is_builtin, is_datatype, resolve,
                              validate_ontology)


def simple_ontology():
    return Ontology(
        iri="urn:test",
        classes={"a": OntoClass(name="a"), "b": OntoClass(name="b")},
        properties={"p": OntoProperty(name="p", kind=PropertyKind.MUTUAL,
                                      range="b", domain="a")},
        subsumptions={("a", "b")},
    )


class TestResolve:
    def test_declared_class(self, mini_tambis):
        cls = resolve(mini_tambis, "protein")
        assert isinstance(cls, OntoClass)
        assert cls.kind is ClassKind.NAMED
        assert cls.name == "protein"

    def test_declared_property(self, mini_tambis):
        prop = resolve(mini_tambis, "catalysed-by")
        assert isinstance(prop, OntoProperty)
        assert prop.functional

    def test_builtin_sentinels(self):
        empty = Ontology()
        thing = resolve(empty, "owl:Thing")
        assert thing.name == "owl:Thing"
        assert thing is resolve(simple_ontology(), "owl:Thing")
        assert "owl:Thing" not in simple_ontology().classes

    def test_unknown_name(self):
        with pytest.raises(UnknownName):
            resolve(Ontology(), "x")


class TestValidateOntology:
    def test_two_cycle_reports_both_members(self):
        onto = Ontology(classes={"A": OntoClass("A"), "B": OntoClass("B")},
                        subsumptions={("A", "B"), ("B", "A")})
        diags = validate_ontology(onto)
        cycle = [d for d in diags if d.code == "ONT_SUBSUMPTION_CYCLE"]
        assert len(cycle) == 1
        assert set(cycle[0].subjects) == {"A", "B"}

    def test_self_loop_is_a_cycle(self):
        onto = Ontology(classes={"A": OntoClass("A")},
                        subsumptions={("A", "A")})
        codes = [d.code for d in validate_ontology(onto)]
        assert codes == ["ONT_SUBSUMPTION_CYCLE"]

    def test_inverse_asymmetry_single_diagnostic(self):
        onto = Ontology(
            classes={"a": OntoClass("a")},
            properties={
                "p": OntoProperty("p", PropertyKind.MUTUAL, range="a",
                                  domain="a", inverse_of="q"),
                "q": OntoProperty("q", PropertyKind.MUTUAL, range="a",
                                  domain="a"),
            })
        diags = validate_ontology(onto)
        assert [d.code for d in diags] == ["ONT_INVERSE_ASYMMETRY"]

    def test_wellformed_fixture_is_clean(self, mini_tambis):
        assert validate_ontology(mini_tambis) == []

    def test_unresolved_names(self):
        onto = Ontology(classes={"a": OntoClass("a")},
                        subsumptions={("a", "ghost")})
        diags = validate_ontology(onto)
        assert [d.code for d in diags] == ["ONT_UNRESOLVED_NAME"]
        assert diags[0].subjects == ("ghost",)

    def test_intrinsic_with_inverse_rejected(self):
        onto = Ontology(
            classes={"a": OntoClass("a")},
            properties={"p": OntoProperty("p", PropertyKind.INTRINSIC,
                                          range="string", domain="a",
                                          inverse_of="p")})
        codes = {d.code for d in validate_ontology(onto)}
        assert "ONT_BAD_PROPERTY" in codes

    def test_kind_range_agreement(self):
        onto = Ontology(
            classes={"a": OntoClass("a")},
            properties={
                "p": OntoProperty("p", PropertyKind.MUTUAL, range="string",
                                  domain="a"),
                "q": OntoProperty("q", PropertyKind.INTRINSIC, range="a",
                                  domain="a"),
            })
        codes = [d.code for d in validate_ontology(onto)]
        assert codes.count("ONT_BAD_PROPERTY") == 2

    def test_expression_needs_two_operands(self):
        onto = Ontology(classes={
            "a": OntoClass("a"),
            "u": OntoClass("u", ClassKind.UNION, operands=("a",)),
        })
        codes = {d.code for d in validate_ontology(onto)}
        assert "ONT_BAD_EXPRESSION" in codes

    def test_restriction_filler_must_match_property_kind(self):
        onto = Ontology(
            classes={
                "a": OntoClass("a"),
                "_anon:1": OntoClass(
                    "_anon:1", ClassKind.RESTRICTION,
                    restriction=RestrictionSpec(
                        on_property="p", filler="string",
                        constraint=ConstraintKind.SOME_VALUES)),
            },
            properties={"p": OntoProperty("p", PropertyKind.MUTUAL, range="a",
                                          domain="a")},
            subsumptions={("a", "_anon:1")})
        codes = {d.code for d in validate_ontology(onto)}
        assert "ONT_BAD_RESTRICTION" in codes

    def test_validation_is_idempotent(self, mini_tambis):
        onto = Ontology(classes={"A": OntoClass("A"), "B": OntoClass("B")},
                        subsumptions={("A", "B"), ("B", "A")})
        assert validate_ontology(onto) == validate_ontology(onto)
        assert validate_ontology(mini_tambis) == validate_ontology(mini_tambis)


def test_referenced_closure_property(mini_tambis):
    # every name reachable from an edge or operand is declared or builtin
    referenced = set()
    for sub, sup in mini_tambis.subsumptions:
        referenced.update((sub, sup))
    for cls in mini_tambis.classes.values():
        referenced.update(cls.operands)
        if cls.restriction and not is_datatype(cls.restriction.filler):
            referenced.add(cls.restriction.filler)
    for name in referenced:
        assert name in mini_tambis.classes or is_builtin(name)


def test_datatype_table():
    assert is_datatype("string")
    assert is_datatype("xsd:gYear")
    assert not is_datatype("protein")
