import random

import pytest
from hypothesis import given, strategies as st

from conftest import GOLDEN
from genutil import expected_entities_and_generalizations, random_ontology
from ontocdm.cdm import (Attribute, ConceptualModel, EntityType, Relationship,
                         element_keys, model_to_json)
from ontocdm.engine import (TransformOptions, map_class, map_expression,
                            map_property, map_restriction, merge_cards,
                            refine, transform)
from ontocdm.errors import (DanglingDomainOrRange, InconsistentCardinalities,
                            UnresolvedRoot)
from ontocdm.ontology import (ClassKind, ConstraintKind, OntoClass, Ontology,
                              OntoProperty, PropertyKind, RestrictionSpec)


def onto(classes=(), subs=(), props=()):
    return Ontology(
        iri="urn:t",
        classes={c.name: c for c in classes},
        properties={p.name: p for p in props},
        subsumptions=set(subs),
    )


class TestRuleExamples:
    def test_single_class(self):
        model, trace = transform(onto([OntoClass("protein")]))
        assert list(model.entity_types) == ["protein"]
        produced = [e for e in trace.entries if e.output]
        assert len(produced) == 1
        assert produced[0].rule == 1
        assert produced[0].input == "class:protein"
        assert produced[0].output == "entity:protein"

    def test_subsumption_pair(self):
        model, _ = transform(onto([OntoClass("A"), OntoClass("B")],
                                  subs=[("A", "B")]))
        assert set(model.entity_types) == {"A", "B"}
        assert model.generalizations == {("A", "B")}

    def test_mini_tambis_matches_golden(self, mini_tambis):
        model, _ = transform(mini_tambis, TransformOptions(roots={"protein"}))
        golden = (GOLDEN / "mini_tambis_model.json").read_bytes()
        assert model_to_json(model) == golden

    def test_builtin_dropped_by_default(self):
        ontology = onto([OntoClass("species")], subs=[("species", "owl:Thing")])
        model, trace = transform(ontology)
        assert set(model.entity_types) == {"species"}
        assert model.generalizations == set()
        reasons = [e.reason for e in trace.entries if e.rule == 5]
        assert reasons == ["builtin"]

    def test_builtin_kept_on_request(self):
        ontology = onto([OntoClass("species")], subs=[("species", "owl:Thing")])
        model, _ = transform(ontology, TransformOptions(drop_builtins=False))
        assert set(model.entity_types) == {"species", "owl:Thing"}
        assert model.generalizations == {("species", "owl:Thing")}

    def test_te_emits_accession_number_entity(self, mini_tambis_model):
        # the engine maps the named class; only the validator flags it
        assert "accession-number" in mini_tambis_model.entity_types


class TestMapClass:
    def test_named(self):
        entity = map_class(OntoClass("species"))
        assert entity == EntityType("species")

    def test_restriction_rejected(self):
        cls = OntoClass("_anon:1", ClassKind.RESTRICTION,
                        restriction=RestrictionSpec(
                            "p", "a", ConstraintKind.SOME_VALUES))
        with pytest.raises(ValueError):
            map_class(cls)


class TestMapProperty:
    def test_functional_mutual(self):
        rel = map_property(OntoProperty("catalysed-by", PropertyKind.MUTUAL,
                                        range="reaction", domain="enzyme",
                                        functional=True))
        assert rel == Relationship("catalysed-by", "enzyme", "reaction",
                                   (0, None), (0, 1))

    def test_intrinsic(self):
        attr = map_property(OntoProperty("name", PropertyKind.INTRINSIC,
                                         range="string", domain="protein"))
        assert attr == Attribute("name", "string", (0, None))

    def test_missing_domain(self):
        with pytest.raises(DanglingDomainOrRange):
            map_property(OntoProperty("p", PropertyKind.MUTUAL, range="a"))

    def test_inverse_pair_cross_linked(self):
        ontology = onto(
            [OntoClass("enzyme"), OntoClass("reaction")],
            props=[
                OntoProperty("catalysed-by", PropertyKind.MUTUAL,
                             range="reaction", domain="enzyme",
                             functional=True, inverse_of="catalyses"),
                OntoProperty("catalyses", PropertyKind.MUTUAL, range="enzyme",
                             domain="reaction", inverse_of="catalysed-by"),
            ])
        model, _ = transform(ontology)
        by_name = {r.name: r for r in model.relationships}
        assert by_name["catalysed-by"].inverse_name == "catalyses"
        assert by_name["catalyses"].inverse_name == "catalysed-by"
        assert by_name["catalysed-by"].target_card == (0, 1)


class TestMapRestriction:
    PROP = OntoProperty("has-structure", PropertyKind.MUTUAL,
                        range="protein-structure", domain="protein")

    def test_some_values_from(self):
        spec = RestrictionSpec("has-structure", "protein-structure",
                               ConstraintKind.SOME_VALUES)
        rel = map_restriction("protein", spec, self.PROP)
        assert rel == Relationship("has-structure", "protein",
                                   "protein-structure", (0, None), (1, None))

    def test_datatype_filler_becomes_attribute(self):
        iprop = OntoProperty("accession", PropertyKind.INTRINSIC,
                             range="string", domain="protein")
        spec = RestrictionSpec("accession", "string",
                               ConstraintKind.SOME_VALUES)
        attr = map_restriction("protein", spec, iprop)
        assert attr == Attribute("accession", "string", (1, None))

    def test_exact_cardinality_pass_through(self):
        spec = RestrictionSpec("has-structure", "protein-structure",
                               ConstraintKind.CARDINALITY, 1, 1)
        rel = map_restriction("host", spec, self.PROP)
        assert rel.target_card == (1, 1)


class TestMapExpression:
    def test_intersection_operands_are_supers(self):
        cls = OntoClass("c", ClassKind.INTERSECTION, operands=("A", "B"))
        assert map_expression(cls) == [("c", "A"), ("c", "B")]

    def test_union_operands_are_subs(self):
        cls = OntoClass("c", ClassKind.UNION, operands=("A", "B"))
        assert map_expression(cls) == [("A", "c"), ("B", "c")]

    def test_macro_molecular_compound(self, mini_tambis_model):
        gens = mini_tambis_model.generalizations
        assert ("nucleic-acid-compound", "macro-molecular-compound") in gens
        assert ("amino-acid-compound", "macro-molecular-compound") in gens


class TestRefine:
    def test_duplicate_relationship_cardinality_intersection(self):
        model = ConceptualModel()
        model.entity_types["a"] = EntityType("a")
        model.entity_types["b"] = EntityType("b")
        model.relationships = [
            Relationship("r", "a", "b", (0, None), (0, None)),
            Relationship("r", "a", "b", (0, None), (1, 1)),
        ]
        refined, trace = refine(model)
        assert len(refined.relationships) == 1
        assert refined.relationships[0].target_card == (1, 1)
        assert any("merged" in (e.reason or "") for e in trace.entries)

    def test_transitive_reduction(self):
        model = ConceptualModel()
        for name in "ABC":
            model.entity_types[name] = EntityType(name)
        model.generalizations = {("A", "B"), ("B", "C"), ("A", "C")}
        refined, trace = refine(model)
        assert refined.generalizations == {("A", "B"), ("B", "C")}
        removed = [e for e in trace.entries if e.output is None]
        assert [e.input for e in removed] == ["gen:A->C"]

    def test_idempotent(self, mini_tambis_model):
        once, trace = refine(mini_tambis_model)
        twice, trace2 = refine(once)
        assert once == twice
        assert trace2.entries == []

    def test_inconsistent_cardinalities(self):
        model = ConceptualModel()
        model.entity_types["a"] = EntityType("a")
        model.entity_types["b"] = EntityType("b")
        model.relationships = [
            Relationship("r", "a", "b", (0, None), (2, 3)),
            Relationship("r", "a", "b", (0, None), (0, 1)),
        ]
        with pytest.raises(InconsistentCardinalities):
            refine(model)


cards = st.tuples(st.integers(0, 5),
                  st.one_of(st.none(), st.integers(0, 9)))


def compatible(a, b):
    lo = max(a[0], b[0])
    his = [h for h in (a[1], b[1]) if h is not None]
    return not his or lo <= min(his)


class TestMergeCards:
    @given(cards, cards)
    def test_commutative(self, a, b):
        if compatible(a, b):
            assert merge_cards(a, b) == merge_cards(b, a)
        else:
            with pytest.raises(InconsistentCardinalities):
                merge_cards(a, b)

    @given(cards, cards, cards)
    def test_associative(self, a, b, c):
        def fold(order):
            out = order[0]
            for nxt in order[1:]:
                out = merge_cards(out, nxt)
            return out
        try:
            left = merge_cards(merge_cards(a, b), c)
        except InconsistentCardinalities:
            left = None
        try:
            right = merge_cards(a, merge_cards(b, c))
        except InconsistentCardinalities:
            right = None
        # associativity holds whenever both orders are defined
        if left is not None and right is not None:
            assert left == right

    def test_intersection_semantics(self):
        assert merge_cards((0, None), (1, 1)) == (1, 1)
        assert merge_cards((1, 5), (2, None)) == (2, 5)
        assert merge_cards((0, 3), (0, None)) == (0, 3)


class TestScopeAndOptions:
    def test_unresolved_root(self, mini_tambis):
        with pytest.raises(UnresolvedRoot):
            transform(mini_tambis, TransformOptions(roots={"nonsense"}))

    def test_invalid_ontology_rejected(self):
        bad = onto([OntoClass("A"), OntoClass("B")],
                   subs=[("A", "B"), ("B", "A")])
        with pytest.raises(ValueError, match="failed validation"):
            transform(bad)

    def test_disconnected_component_excluded(self):
        ontology = onto([OntoClass("a"), OntoClass("b"), OntoClass("island")],
                        subs=[("a", "b")])
        model, trace = transform(ontology, TransformOptions(roots={"a"}))
        assert set(model.entity_types) == {"a", "b"}
        skipped = [e for e in trace.entries
                   if e.input == "class:island" and e.reason == "out of scope"]
        assert skipped

    def test_roots_pull_whole_protein_neighbourhood(self, mini_tambis_model):
        assert len(mini_tambis_model.entity_types) == 21

    def test_scope_monotonicity(self):
        rng = random.Random(11)
        for _ in range(25):
            ontology = random_ontology(rng)
            concepts = sorted(n for n, c in ontology.classes.items()
                              if c.kind is not ClassKind.RESTRICTION)
            small = set(rng.sample(concepts, k=max(1, len(concepts) // 3)))
            large = small | set(rng.sample(concepts,
                                           k=max(1, len(concepts) // 2)))
            m_small, _ = transform(ontology, TransformOptions(roots=small))
            m_large, _ = transform(ontology, TransformOptions(roots=large))
            assert element_keys(m_small) <= element_keys(m_large)


class TestCountConservation:
    def test_against_replay_oracle(self):
        rng = random.Random(23)
        for _ in range(40):
            ontology = random_ontology(rng)
            model, _ = transform(ontology)
            concepts, reduced = expected_entities_and_generalizations(ontology)
            assert set(model.entity_types) == concepts
            assert model.generalizations == reduced


class TestTraceAndProvenance:
    def test_replay_reproduces_element_keys(self, mini_tambis):
        model, trace = transform(mini_tambis, TransformOptions(roots={"protein"}))
        keys: set[str] = set()
        for entry in trace.entries:
            if entry.rule != 7:
                if entry.output is not None:
                    keys.add(entry.output)
            elif entry.output is None:
                keys.discard(entry.input)
            else:
                keys.discard(entry.input)
                keys.add(entry.output)
        assert keys == element_keys(model)

    def test_provenance_totality(self):
        rng = random.Random(5)
        for _ in range(20):
            ontology = random_ontology(rng)
            model, _ = transform(ontology)
            assert set(model.provenance) == element_keys(model)
            assert all(1 <= p.rule <= 7 for p in model.provenance.values())

    def test_every_construct_mapped_or_skipped(self, mini_tambis):
        _, trace = transform(mini_tambis, TransformOptions(roots={"protein"}))
        seen = {e.input for e in trace.entries}
        for name in mini_tambis.classes:
            assert f"class:{name}" in seen
        for name in mini_tambis.properties:
            assert f"property:{name}" in seen
        for sub, sup in mini_tambis.subsumptions:
            assert (f"subsumption:{sub}<{sup}" in seen
                    or f"restriction:{sub}<{sup}" in seen)


class TestDeterminism:
    def test_byte_identical_output(self, mini_tambis):
        opts = TransformOptions(roots={"protein"})
        first_model, first_trace = transform(mini_tambis, opts)
        second_model, second_trace = transform(mini_tambis, opts)
        assert model_to_json(first_model) == model_to_json(second_model)
        assert first_trace.to_json() == second_trace.to_json()


class TestCompositeFlag:
    def build(self, part_count):
        props = [OntoProperty(f"has-part-{i}", PropertyKind.MUTUAL,
                              range=f"part{i}", domain="whole",
                              annotations={"partOf": "true"})
                 for i in range(part_count)]
        classes = [OntoClass("whole")] + [OntoClass(f"part{i}")
                                          for i in range(part_count)]
        return onto(classes, props=props)

    def test_two_part_properties_mark_composite(self):
        model, _ = transform(self.build(2))
        assert model.entity_types["whole"].composite
        assert not model.entity_types["part0"].composite

    def test_single_part_property_is_not_composite(self):
        model, _ = transform(self.build(1))
        assert not model.entity_types["whole"].composite


class TestDatatypeLikeDemotion:
    def build(self, annotate=True, give_subclass=False, give_property=False):
        code = OntoClass("code")
        if annotate:
            code.annotations = {"datatypeLike": "true", "datatype": "string"}
        classes = [OntoClass("gene"), code]
        subs = []
        props = [OntoProperty("has-code", PropertyKind.MUTUAL, range="code",
                              domain="gene", functional=True)]
        if give_subclass:
            classes.append(OntoClass("subcode"))
            subs.append(("subcode", "code"))
        if give_property:
            props.append(OntoProperty("length", PropertyKind.INTRINSIC,
                                      range="integer", domain="code"))
        return onto(classes, subs, props)

    def test_demotes_marked_leaf_target(self):
        model, trace = transform(self.build())
        assert "code" not in model.entity_types
        attrs = {a.name: a for a in model.entity_types["gene"].attributes}
        assert attrs["has-code"].datatype == "string"
        assert attrs["has-code"].multiplicity == (0, 1)
        assert any(e.rule == 7 and "datatype-like" in (e.reason or "")
                   for e in trace.entries)

    def test_no_marker_no_demotion(self):
        model, _ = transform(self.build(annotate=False))
        assert "code" in model.entity_types

    def test_subclassed_target_not_demoted(self):
        model, _ = transform(self.build(give_subclass=True))
        assert "code" in model.entity_types

    def test_target_with_own_property_not_demoted(self):
        model, _ = transform(self.build(give_property=True))
        assert "code" in model.entity_types
