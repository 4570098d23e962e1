import pytest

from gpdkit.catalog import cyclic_group, klein_four_group
from gpdkit.core import FiniteGroupoid, groupoid_iso_search, trivial_group, validate_groupoid
from gpdkit.morita import weak_equivalence_report
from gpdkit.workbench import (
    InstanceBudget,
    WorkbenchInstances,
    actions_of_group,
    build_instances,
    enumerate_actions,
    generate_weak_equivalences,
    run_law_suite,
    shrink_groupoid,
)


@pytest.fixture(scope="module")
def small_budget():
    return InstanceBudget(max_group_order=4, max_carrier_size=3)


@pytest.fixture(scope="module")
def small_suite(small_budget):
    return run_law_suite(small_budget)


class TestEnumeration:
    def test_trivial_group_has_one_action_per_size(self):
        acts = actions_of_group(trivial_group(), 1)
        assert len(acts) == 1

    def test_z2_on_two_points_has_two_actions(self):
        acts = [a for a in actions_of_group(cyclic_group(2), 2) if len(a.carrier) == 2]
        assert len(acts) == 2  # trivial and the swap, up to relabeling

    def test_klein_enumeration_includes_the_compass_action(self, klein_action):
        acts = [a for a in actions_of_group(klein_four_group(), 4) if len(a.carrier) == 4]
        assert any(groupoid_iso_search(a.induced, klein_action.induced).found for a in acts)

    def test_every_enumerated_action_is_valid(self, small_budget):
        for a in enumerate_actions(small_budget):
            assert validate_groupoid(a.induced).ok

    def test_deterministic_order(self, small_budget):
        first = [a.act for a in enumerate_actions(small_budget)]
        second = [a.act for a in enumerate_actions(small_budget)]
        assert first == second


class TestGenerator:
    def test_soundness(self, small_budget):
        for w in generate_weak_equivalences(small_budget):
            assert weak_equivalence_report(w.functor.functor).is_weak_equivalence, w.kind

    def test_kinds_present(self, small_budget):
        kinds = {w.kind for w in generate_weak_equivalences(small_budget)}
        assert {"identity", "projection", "inclusion", "composite"} <= kinds

    def test_composites_record_their_stages(self, small_budget):
        composites = [w for w in generate_weak_equivalences(small_budget) if w.kind == "composite"]
        assert composites
        for w in composites:
            projection, inclusion = w.stages
            assert projection.cod_action == inclusion.dom_action

    def test_klein_projection_emitted_at_default(self):
        wes = generate_weak_equivalences(InstanceBudget())
        hits = [
            w
            for w in wes
            if w.kind == "projection"
            and w.functor.dom_action.group.order == 4
            and len(w.functor.dom_action.carrier) == 4
            and len(w.functor.cod_action.carrier) == 2
        ]
        assert hits


class TestLawSuite:
    def test_all_laws_pass_at_small_budget(self, small_suite):
        failing = [law for law in small_suite.laws if not law.ok]
        assert not failing, failing

    def test_report_bytes_deterministic(self, small_budget, small_suite):
        again = run_law_suite(small_budget)
        assert again.to_bytes() == small_suite.to_bytes()

    def test_corrupted_table_fails_with_shrunk_witness(self, small_budget):
        base = build_instances(small_budget)
        klein = next(a for a in base.actions if a.group.order == 4 and len(a.carrier) >= 2)
        g = klein.induced
        compose = dict(g.compose)
        key = next(iter(compose))
        compose[key] = next(
            a for a in g.arrows
            if a != compose[key] and g.src[a] == g.src[compose[key]] and g.tgt[a] == g.tgt[compose[key]]
        )
        corrupted = FiniteGroupoid(g.objects, g.arrows, g.src, g.tgt, compose, g.unit, g.inv)
        assert not validate_groupoid(corrupted).ok
        instances = WorkbenchInstances(
            budget=base.budget,
            actions=base.actions,
            weak_equivalences=base.weak_equivalences,
            functor_pairs=base.functor_pairs,
            spans=base.spans,
            extra_groupoids=(corrupted,),
        )
        report = run_law_suite(small_budget, instances)
        law = next(l for l in report.laws if l.name == "core: action groupoids validate")
        assert not law.ok
        assert law.witness and "violates" in law.witness

    def test_shrinker_reduces_a_corrupted_groupoid(self, klein_action):
        g = klein_action.induced
        compose = dict(g.compose)
        key = next(iter(compose))
        compose[key] = next(
            a for a in g.arrows
            if a != compose[key] and g.src[a] == g.src[compose[key]] and g.tgt[a] == g.tgt[compose[key]]
        )
        corrupted = FiniteGroupoid(g.objects, g.arrows, g.src, g.tgt, compose, g.unit, g.inv)
        small = shrink_groupoid(corrupted)
        assert not validate_groupoid(small).ok
        assert len(small.objects) <= len(corrupted.objects)
        assert len(small.arrows) < len(corrupted.arrows)

    def test_seed_does_not_flip_verdicts_in_sampled_regime(self):
        a = run_law_suite(InstanceBudget(max_group_order=4, max_carrier_size=3, max_objects=7, sample_seed=1))
        b = run_law_suite(InstanceBudget(max_group_order=4, max_carrier_size=3, max_objects=7, sample_seed=2))
        assert a.all_ok and b.all_ok
        assert {l.name: l.ok for l in a.laws} == {l.name: l.ok for l in b.laws}

    def test_exhaustive_flag(self):
        assert InstanceBudget().exhaustive
        assert not InstanceBudget(max_objects=7).exhaustive
