"""Instance enumeration and the executable law suite.

Enumerates small group actions (every homomorphism from a catalog group into
the symmetric group of a small carrier, deduplicated up to carrier
relabeling), derives a population of equivariant weak equivalences from
quotient projections and balanced-product inclusions, and runs every stated
algebraic law over the population.  Identical budget and seed give a
byte-identical report.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass

from . import catalog
from .core import (
    ActionGroupoid,
    FiniteGroupoid,
    GroupoidFunctor,
    NaturalTransformation,
    action_groupoid,
    all_subgroups,
    compose_functors,
    groupoid_iso_search,
    identity_functor,
    identity_transformation,
    inverse_transformation,
    is_normal,
    is_subgroup_of,
    subgroup,
    terminal_groupoid,
    trivial_group,
    validate_groupoid,
    validate_nat_trans,
    vertical_compose_nat,
    whisker,
)
from .equivariant import (
    EquivariantFunctor,
    balanced_product,
    compose_equivariant,
    equivariant_anafunctorify,
    equivariant_strict_pullback,
    equivariant_weak_pullback,
    decompose,
    identity_equivariant,
    property_report,
    quotient_action,
)
from .localization import (
    Anafunctor,
    GeneralizedMorphism,
    TwoCellDiagram,
    anafunctorify,
    as_diagram,
    compose_generalized,
    identity_two_cell,
    normalize_two_cell,
    strictify_composition,
    two_cells_equal,
    validate_two_cell,
    vertical_compose_ana,
)
from .morita import (
    morita_oracle,
    skeleton_invariant,
    strict_pullback,
    weak_equivalence_report,
    weak_pullback,
)

DEFAULT_GROUP_ORDER = 8
DEFAULT_CARRIER_SIZE = 4
DEFAULT_OBJECTS = 6

# per-category subsample caps, applied only in the sampled (over-default) regime
SAMPLE_CAPS = {
    "actions": 150,
    "weak_equivalences": 300,
    "functor_pairs": 400,
    "spans": 40,
    "diagrams": 40,
}


@dataclass(frozen=True)
class InstanceBudget:
    max_group_order: int = DEFAULT_GROUP_ORDER
    max_carrier_size: int = DEFAULT_CARRIER_SIZE
    max_objects: int = DEFAULT_OBJECTS
    sample_seed: int = 0

    @property
    def exhaustive(self) -> bool:
        return (
            self.max_group_order <= DEFAULT_GROUP_ORDER
            and self.max_carrier_size <= DEFAULT_CARRIER_SIZE
            and self.max_objects <= DEFAULT_OBJECTS
        )


def _permutations(points: tuple[str, ...]) -> list[tuple[int, ...]]:
    return [tuple(p) for p in itertools.permutations(range(len(points)))]


def actions_of_group(group, max_size: int) -> list[ActionGroupoid]:
    """All actions of ``group`` on carriers of size 1..max_size, up to relabeling.

    An action is a homomorphism into the symmetric group of the carrier;
    homomorphisms are enumerated through a generating sequence and actions
    differing only by a carrier permutation are identified.
    """
    from .core import _generating_sequence  # deterministic greedy generators

    out = []
    gens = _generating_sequence(group)
    for size in range(1, max_size + 1):
        carrier = tuple(f"p{i}" for i in range(size))
        perms = _permutations(carrier)
        identity = tuple(range(size))

        def compose_perm(p, q):
            return tuple(p[q[i]] for i in range(size))

        tables = []
        for images in itertools.product(perms, repeat=len(gens)):
            gen_map = dict(zip(gens, images))
            mapping = {group.unit: identity}
            frontier = [group.unit]
            ok = True
            while frontier and ok:
                nxt = []
                for a in frontier:
                    for x, p in gen_map.items():
                        c = group.mul[(x, a)]
                        img = compose_perm(p, mapping[a])
                        if c in mapping:
                            if mapping[c] != img:
                                ok = False
                                break
                        else:
                            mapping[c] = img
                            nxt.append(c)
                    if not ok:
                        break
                frontier = nxt
            if not ok or len(mapping) != group.order:
                continue
            if any(
                compose_perm(mapping[a], mapping[b]) != mapping[group.mul[(a, b)]]
                for a in group.elements
                for b in group.elements
            ):
                continue
            tables.append(tuple(mapping[g] for g in group.elements))
        canonical = {}
        for table in tables:
            best = None
            for sigma in perms:
                inv_sigma = [0] * size
                for i, j in enumerate(sigma):
                    inv_sigma[j] = i
                relabeled = tuple(
                    tuple(sigma[row[inv_sigma[i]]] for i in range(size)) for row in table
                )
                if best is None or relabeled < best:
                    best = relabeled
            canonical[best] = True
        for table in sorted(canonical):
            act = {
                (g, carrier[i]): carrier[table[gi][i]]
                for gi, g in enumerate(group.elements)
                for i in range(size)
            }
            out.append(action_groupoid(group, carrier, act))
    return out


def enumerate_actions(budget: InstanceBudget):
    """Every catalog-group action within the budget, in a fixed order."""
    for _, group in catalog.group_catalog():
        if group.order > budget.max_group_order:
            continue
        yield from actions_of_group(group, budget.max_carrier_size)


@dataclass(frozen=True)
class GeneratedWeakEquivalence:
    functor: EquivariantFunctor
    kind: str  # identity | projection | inclusion | composite | composite-mixed
    stages: tuple = ()  # (projection, inclusion) when built in that order


def generate_weak_equivalences(budget: InstanceBudget) -> list[GeneratedWeakEquivalence]:
    """Equivariant weak equivalences with known provenance.

    Quotient projections (by free normal subgroups), balanced-product
    inclusions (for every subgroup choice within the budget), identities, and
    projection-then-inclusion composites whose factorization is recorded.
    """
    actions = list(enumerate_actions(budget))
    out: list[GeneratedWeakEquivalence] = []
    for a in actions:
        out.append(GeneratedWeakEquivalence(identity_equivariant(a), "identity"))

    projections = []
    for a in actions:
        for sub in all_subgroups(a.group):
            if len(sub) == 1 or not is_normal(a.group, sub):
                continue
            if any(a.act[(s, x)] == x for s in sub if s != a.group.unit for x in a.carrier):
                continue
            q = quotient_action(a, sub)
            projections.append(q)
            out.append(GeneratedWeakEquivalence(q.projection, "projection"))

    groups = [g for _, g in catalog.group_catalog() if g.order <= budget.max_group_order]
    for big in groups:
        for sub in all_subgroups(big):
            inner_group = subgroup(big, sub)
            for inner in actions_of_group(inner_group, budget.max_carrier_size):
                bp = balanced_product(big, inner)
                out.append(GeneratedWeakEquivalence(bp.inclusion, "inclusion"))

    for q in projections:
        hosts = [q.quotient.group]
        hosts += [g for g in groups if g.order > q.quotient.group.order and is_subgroup_of(q.quotient.group, g)][:1]
        for host in hosts:
            bp = balanced_product(host, q.quotient)
            composite = compose_equivariant(bp.inclusion, q.projection)
            out.append(
                GeneratedWeakEquivalence(composite, "composite", stages=(q.projection, bp.inclusion))
            )
    return out


@dataclass(frozen=True)
class WorkbenchInstances:
    """The instance population a law-suite run works over."""

    budget: InstanceBudget
    actions: tuple[ActionGroupoid, ...]
    weak_equivalences: tuple[GeneratedWeakEquivalence, ...]
    functor_pairs: tuple[tuple[GroupoidFunctor, GroupoidFunctor], ...]
    spans: tuple[tuple[GeneralizedMorphism, ActionGroupoid, ActionGroupoid], ...]
    extra_groupoids: tuple[FiniteGroupoid, ...] = ()


def _span_size(span: GeneralizedMorphism) -> int:
    return len(span.middle.arrows) + len(span.left_foot.arrows) + len(span.right_foot.arrows)


def _left_pullback_arrows(span: GeneralizedMorphism) -> int:
    """Arrow count of the self-pullback of the left leg, without building it."""
    fibers: dict[str, int] = {}
    for c in span.left.arr_map.values():
        fibers[c] = fibers.get(c, 0) + 1
    return sum(n * n for n in fibers.values())


# 2-cell laws build pullbacks over pullback apexes; their instances are gated
# by the size of the left-leg self-pullback to keep that quadratic blowup flat
MAX_CELL_PULLBACK_ARROWS = 40


def build_instances(budget: InstanceBudget, extra_groupoids=()) -> WorkbenchInstances:
    actions = list(enumerate_actions(budget))
    wes = generate_weak_equivalences(budget)

    rng = random.Random(budget.sample_seed)

    def maybe_sample(items: list, cap_key: str) -> list:
        cap = SAMPLE_CAPS[cap_key]
        if budget.exhaustive or len(items) <= cap:
            return items
        picked = sorted(rng.sample(range(len(items)), cap))
        return [items[i] for i in picked]

    actions = maybe_sample(actions, "actions")
    wes = maybe_sample(wes, "weak_equivalences")

    # functors to feed composability-style laws: the generated weak
    # equivalences plus collapse-to-a-point functors, which often are not
    # weak equivalences
    terminal = action_groupoid(trivial_group(), ("*",), {("e", "*"): "*"})
    pool: list[tuple[GroupoidFunctor, ActionGroupoid, ActionGroupoid]] = []
    for w in wes:
        pool.append((w.functor.functor, w.functor.dom_action, w.functor.cod_action))
    for a in actions:
        collapse = GroupoidFunctor(
            a.induced,
            terminal.induced,
            {x: "*" for x in a.carrier},
            {arrow: terminal.arrow_id("e", "*") for arrow in a.induced.arrows},
        )
        pool.append((collapse, a, terminal))

    buckets: dict[tuple, list[int]] = {}
    for i, (f, dom_a, _) in enumerate(pool):
        buckets.setdefault((dom_a.group.elements, dom_a.carrier), []).append(i)
    pairs = []
    for i, (f, _, cod_a) in enumerate(pool):
        key = (cod_a.group.elements, cod_a.carrier)
        for j in buckets.get(key, ()):
            g2, dom2, _ = pool[j]
            if dom2.induced == f.cod:
                pairs.append((f, g2))
    pairs = maybe_sample(pairs, "functor_pairs")

    # spans between action groupoids: identity spans, Morita spans built from
    # projections, and inclusion spans whose left leg is not surjective
    spans: list[tuple[GeneralizedMorphism, ActionGroupoid, ActionGroupoid]] = []
    for a in actions[:12]:
        i = identity_functor(a.induced)
        spans.append((Anafunctor(i, i), a, a))
    for w in wes:
        if w.kind == "projection":
            f = w.functor
            spans.append((GeneralizedMorphism(f.functor, identity_functor(f.dom_action.induced)), f.cod_action, f.dom_action))
            spans.append((GeneralizedMorphism(identity_functor(f.dom_action.induced), f.functor), f.dom_action, f.cod_action))
        elif w.kind == "inclusion":
            f = w.functor
            spans.append((GeneralizedMorphism(f.functor, identity_functor(f.dom_action.induced)), f.cod_action, f.dom_action))
    # a few round trips whose middle is a pullback apex rather than a carrier
    composed = 0
    for span, left_action, _ in list(spans):
        if composed >= 4 or _span_size(span) > 24 or span.left == span.right:
            continue
        if not weak_equivalence_report(span.right).is_weak_equivalence:
            continue
        reverse = GeneralizedMorphism(span.right, span.left)
        spans.append((compose_generalized(span, reverse), left_action, left_action))
        composed += 1
    # keep span middles small: the 2-cell laws build pullbacks over pullbacks
    spans.sort(key=lambda s: _span_size(s[0]))
    spans = spans[: 3 * SAMPLE_CAPS["spans"]]
    spans = spans[: SAMPLE_CAPS["spans"]] if budget.exhaustive else maybe_sample(spans, "spans")
    spans.sort(key=lambda s: _span_size(s[0]))

    return WorkbenchInstances(
        budget=budget,
        actions=tuple(actions),
        weak_equivalences=tuple(wes),
        functor_pairs=tuple(pairs),
        spans=tuple(spans),
        extra_groupoids=tuple(extra_groupoids),
    )


@dataclass(frozen=True)
class LawResult:
    name: str
    instances: int
    ok: bool
    witness: str | None = None


@dataclass(frozen=True)
class SuiteReport:
    budget: InstanceBudget
    laws: tuple[LawResult, ...]

    @property
    def all_ok(self) -> bool:
        return all(law.ok for law in self.laws)

    def to_bytes(self) -> bytes:
        doc = {
            "budget": {
                "max_group_order": self.budget.max_group_order,
                "max_carrier_size": self.budget.max_carrier_size,
                "max_objects": self.budget.max_objects,
                "sample_seed": self.budget.sample_seed,
            },
            "laws": [
                {"name": law.name, "instances": law.instances, "ok": law.ok, "witness": law.witness}
                for law in sorted(self.laws, key=lambda l: l.name)
            ],
            "ok": self.all_ok,
        }
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")


def _delete_object(g: FiniteGroupoid, x: str) -> FiniteGroupoid:
    dead = {a for a in g.arrows if g.src[a] == x or g.tgt[a] == x}
    return _without_arrows(g, dead, drop_objects={x})


def _without_arrows(g: FiniteGroupoid, dead: set[str], drop_objects=frozenset()) -> FiniteGroupoid:
    objects = tuple(o for o in g.objects if o not in drop_objects)
    arrows = tuple(a for a in g.arrows if a not in dead)
    live = set(arrows)
    return FiniteGroupoid(
        objects=objects,
        arrows=arrows,
        src={a: g.src[a] for a in arrows},
        tgt={a: g.tgt[a] for a in arrows},
        compose={
            (a2, a1): c
            for (a2, a1), c in g.compose.items()
            if a2 in live and a1 in live and c in live
        },
        unit={o: g.unit[o] for o in objects},
        inv={a: g.inv[a] for a in arrows},
    )


def _groupoid_fails(g: FiniteGroupoid) -> bool:
    try:
        return not validate_groupoid(g).ok
    except Exception:
        return False  # malformed is a different failure class; stop shrinking into it


def shrink_groupoid(g: FiniteGroupoid) -> FiniteGroupoid:
    """Greedily delete objects, then arrows, while validation still fails."""
    improved = True
    while improved:
        improved = False
        for x in g.objects:
            g2 = _delete_object(g, x)
            if _groupoid_fails(g2):
                g = g2
                improved = True
                break
        if improved:
            continue
        for a in g.arrows:
            if a == g.inv.get(a):
                dead = {a}
            else:
                dead = {a, g.inv[a]}
            g2 = _without_arrows(g, dead)
            if _groupoid_fails(g2):
                g = g2
                improved = True
                break
    return g


def _law(name: str, checks) -> LawResult:
    """Run (description, ok) checks; first failure becomes the law witness."""
    count = 0
    for description, ok in checks:
        count += 1
        if not ok:
            return LawResult(name, count, False, description)
    return LawResult(name, count, True)


def _describe_functor(f: GroupoidFunctor) -> str:
    return (
        f"functor {len(f.dom.objects)}x{len(f.dom.arrows)} -> "
        f"{len(f.cod.objects)}x{len(f.cod.arrows)}"
    )


def run_law_suite(budget: InstanceBudget, instances: WorkbenchInstances | None = None) -> SuiteReport:
    """Execute every module's stated laws over the enumerated instances.

    Failures are data: each failing law carries a minimal witness (groupoid
    witnesses are shrunk by deletion).  Deterministic for a fixed budget and
    seed.
    """
    inst = instances if instances is not None else build_instances(budget)
    laws = []

    def law_action_groupoids_validate():
        seen = []
        for a in inst.actions:
            seen.append(a.induced)
        for w in inst.weak_equivalences:
            seen.append(w.functor.dom_action.induced)
            seen.append(w.functor.cod_action.induced)
        unique, keys = [], set()
        for g in seen:
            key = (g.objects, g.arrows)
            if key not in keys:
                keys.add(key)
                unique.append(g)
        for g in inst.extra_groupoids:
            unique.append(g)
        def checks():
            for g in unique:
                try:
                    rep = validate_groupoid(g)
                except Exception as exc:
                    yield (f"malformed groupoid: {exc}", False)
                    continue
                if rep.ok:
                    yield ("ok", True)
                else:
                    small = shrink_groupoid(g)
                    first = validate_groupoid(small).violations[0]
                    yield (
                        f"groupoid with {len(small.objects)} objects / {len(small.arrows)} arrows "
                        f"violates {first.axiom} at {first.witness}",
                        False,
                    )
        return _law("core: action groupoids validate", checks())

    laws.append(law_action_groupoids_validate())

    def law_transformations_validate():
        def checks():
            for w in inst.weak_equivalences[:40]:
                f = w.functor.functor
                wp = weak_pullback(f, f)
                yield ("comparison natural", validate_nat_trans(wp.comparison).ok)
                left = whisker(wp.comparison, identity_functor(f.cod), "left")
                yield ("left whisker natural", validate_nat_trans(left).ok)
                right = whisker(wp.comparison, identity_functor(wp.apex), "right")
                yield ("right whisker natural", validate_nat_trans(right).ok)
                round_trip = vertical_compose_nat(inverse_transformation(wp.comparison), wp.comparison)
                yield ("stacked with inverse is natural", validate_nat_trans(round_trip).ok)
                yield (
                    "stacked with inverse is the identity",
                    round_trip == identity_transformation(wp.comparison.source),
                )
        return _law("core: whiskers and comparisons validate", checks())

    laws.append(law_transformations_validate())

    def law_iso_search_symmetric():
        small = [a.induced for a in inst.actions if len(a.carrier) <= 4 and a.group.order <= 4][:10]
        def checks():
            for g, h in itertools.combinations(small, 2):
                fwd = groupoid_iso_search(g, h)
                back = groupoid_iso_search(h, g)
                if "budget-exceeded" in (fwd.status, back.status):
                    yield ("budget exceeded", True)
                    continue
                yield (
                    f"asymmetric search on {len(g.objects)}/{len(h.objects)} objects",
                    fwd.found == back.found,
                )
        return _law("core: iso search symmetric", checks())

    laws.append(law_iso_search_symmetric())

    def law_three_for_two():
        def checks():
            for f, g in inst.functor_pairs:
                a = weak_equivalence_report(f).is_weak_equivalence
                b = weak_equivalence_report(g).is_weak_equivalence
                c = weak_equivalence_report(compose_functors(g, f)).is_weak_equivalence
                ok = (not (a and b) or c) and (not (a and c) or b) and (not (b and c) or a)
                yield (f"{_describe_functor(f)} then {_describe_functor(g)}: {a}/{b}/{c}", ok)
        return _law("morita: three-for-two", checks())

    laws.append(law_three_for_two())

    def law_ff_surjective_implies_we():
        def checks():
            seen = set()
            for f, g in inst.functor_pairs:
                for functor in (f, g):
                    key = id(functor)
                    if key in seen:
                        continue
                    seen.add(key)
                    rep = weak_equivalence_report(functor)
                    if rep.ff_map_bijective and rep.object_map_surjective:
                        yield (_describe_functor(functor), rep.is_weak_equivalence)
                    else:
                        yield ("not applicable", True)
        return _law("morita: fully faithful and surjective implies weak equivalence", checks())

    laws.append(law_ff_surjective_implies_we())

    def law_pullback_projections():
        def checks():
            for w in inst.weak_equivalences[:40]:
                # the constructions re-verify their own projection classes;
                # the law confirms the reports from outside as well
                f = w.functor.functor
                rep = weak_equivalence_report(f)
                if rep.is_ssw:
                    sp = strict_pullback(f, f)
                    yield ("strict pr2 ssw", weak_equivalence_report(sp.pr2).is_ssw)
                if rep.is_weak_equivalence:
                    wp = weak_pullback(f, f)
                    yield ("weak pr3 ssw", weak_equivalence_report(wp.pr3).is_ssw)
        return _law("morita: pullback projections keep their class", checks())

    laws.append(law_pullback_projections())

    def law_skeleton_preserved():
        def checks():
            for w in inst.weak_equivalences:
                f = w.functor.functor
                yield (
                    f"{w.kind} {_describe_functor(f)}",
                    skeleton_invariant(f.dom).morita_equal(skeleton_invariant(f.cod)),
                )
        return _law("morita: skeleton invariant preserved", checks())

    laws.append(law_skeleton_preserved())

    def law_factorization_unique():
        def checks():
            for span, _, _ in inst.spans[:10]:
                phi = span.left
                dom, cod = phi.dom, phi.cod
                hom = dom.hom_index()
                psi = identity_functor(dom)
                rep = weak_equivalence_report(phi)
                eta = whisker(identity_transformation(psi), phi, "left")
                candidates = 1
                per_object = []
                for z in dom.objects:
                    opts = hom.get((z, z), [])
                    per_object.append(opts)
                    candidates *= max(len(opts), 1)
                if candidates > 4096 or not rep.ff_map_bijective:
                    yield ("skipped: too many candidates", True)
                    continue
                solutions = 0
                for combo in itertools.product(*per_object):
                    cand = dict(zip(dom.objects, combo))
                    trial = NaturalTransformation(psi, psi, cand)
                    if not validate_nat_trans(trial).ok:
                        continue
                    if whisker(trial, phi, "left") == eta:
                        solutions += 1
                yield (f"{solutions} factorizations through a fully faithful leg", solutions == 1)
                if not rep.is_ssw:
                    continue
                # surjective side: factor a right-whiskered identity back out
                cod_hom = cod.hom_index()
                cod_id = identity_functor(cod)
                target = whisker(identity_transformation(cod_id), phi, "right")
                options = [cod_hom.get((y, y), []) for y in cod.objects]
                total = 1
                for opts in options:
                    total *= max(len(opts), 1)
                if total > 4096:
                    yield ("skipped: too many candidates", True)
                    continue
                solutions = 0
                for combo in itertools.product(*options):
                    trial = NaturalTransformation(cod_id, cod_id, dict(zip(cod.objects, combo)))
                    if not validate_nat_trans(trial).ok:
                        continue
                    if whisker(trial, phi, "right") == target:
                        solutions += 1
                yield (f"{solutions} factorizations through a surjective leg", solutions == 1)
        return _law("morita: factorizations are unique", checks())

    laws.append(law_factorization_unique())

    def law_normalization_idempotent():
        def checks():
            used = 0
            for span, _, _ in inst.spans:
                if not weak_equivalence_report(span.left).is_ssw:
                    continue
                if _left_pullback_arrows(span) > MAX_CELL_PULLBACK_ARROWS:
                    continue
                used += 1
                if used > 15:
                    return
                ana = Anafunctor(span.left, span.right)
                cell = identity_two_cell(ana)
                d = as_diagram(cell)
                n = normalize_two_cell(d)
                again = normalize_two_cell(as_diagram(n))
                yield ("identity cell", again.transformation == n.transformation)
                perturbed = _perturb_diagram(d)
                yield ("perturbed diagram validates", validate_two_cell(perturbed).ok)
                n2 = normalize_two_cell(perturbed)
                yield ("perturbed normal form agrees", n2.transformation == n.transformation)
        return _law("localization: normalization idempotent and stable", checks())

    laws.append(law_normalization_idempotent())

    def law_two_cell_equality_equivalence():
        def checks():
            used = 0
            for span, _, _ in inst.spans:
                if not weak_equivalence_report(span.left).is_ssw:
                    continue
                if _left_pullback_arrows(span) > MAX_CELL_PULLBACK_ARROWS:
                    continue
                used += 1
                if used > 12:
                    return
                ana = Anafunctor(span.left, span.right)
                d1 = as_diagram(identity_two_cell(ana))
                d2 = _perturb_diagram(d1)
                d3 = as_diagram(normalize_two_cell(d2))
                yield ("reflexive", two_cells_equal(d1, d1))
                ab, ba = two_cells_equal(d1, d2), two_cells_equal(d2, d1)
                yield ("symmetric", ab == ba)
                if ab and two_cells_equal(d2, d3):
                    yield ("transitive", two_cells_equal(d1, d3))
        return _law("localization: 2-cell equality is an equivalence", checks())

    laws.append(law_two_cell_equality_equivalence())

    def law_vertical_composition():
        def checks():
            used = 0
            for span, _, _ in inst.spans:
                if not weak_equivalence_report(span.left).is_ssw:
                    continue
                if _left_pullback_arrows(span) > MAX_CELL_PULLBACK_ARROWS:
                    continue
                used += 1
                if used > 12:
                    return
                ana = Anafunctor(span.left, span.right)
                iota = identity_two_cell(ana)
                yield ("unit law", vertical_compose_ana(iota, iota).transformation == iota.transformation)
                assoc1 = vertical_compose_ana(vertical_compose_ana(iota, iota), iota)
                assoc2 = vertical_compose_ana(iota, vertical_compose_ana(iota, iota))
                yield ("associativity", assoc1.transformation == assoc2.transformation)
        return _law("localization: vertical composition unital and associative", checks())

    laws.append(law_vertical_composition())

    def law_strictify_and_replace():
        def checks():
            spans = [s for s, _, _ in inst.spans]
            for f in spans[:10]:
                out = anafunctorify(f)
                yield ("replacement witness validates", validate_two_cell(out.witness).ok)
                yield ("replacement left leg surjective", weak_equivalence_report(out.anafunctor.left).is_ssw)
            by_foot: dict[tuple, list[GeneralizedMorphism]] = {}
            for s in spans:
                by_foot.setdefault((s.left_foot.objects, s.left_foot.arrows), []).append(s)
            used = 0
            for f in spans:
                for g in by_foot.get((f.right_foot.objects, f.right_foot.arrows), ()):
                    if g.left_foot != f.right_foot or not weak_equivalence_report(g.left).is_ssw:
                        continue
                    used += 1
                    if used > 10:
                        return
                    d = strictify_composition(f, g)
                    yield ("strictified diagram validates", validate_two_cell(d).ok)
                    yield (
                        "composite skeletons agree",
                        skeleton_invariant(d.top.middle).morita_equal(skeleton_invariant(d.bottom.middle)),
                    )
        return _law("localization: strictification and span replacement", checks())

    laws.append(law_strictify_and_replace())

    def law_property_invariance():
        def checks():
            effectiveness_divergences = 0
            for w in inst.weak_equivalences:
                f = w.functor
                rep_dom = property_report(f.dom_action)
                rep_cod = property_report(f.cod_action)
                for name in ("free", "transitive"):
                    yield (
                        f"{w.kind}: {name}",
                        rep_dom.verdict(name).value == rep_cod.verdict(name).value,
                    )
                if rep_dom.effective.value != rep_cod.effective.value:
                    effectiveness_divergences += 1
            if budget.max_group_order >= 4 and budget.max_carrier_size >= 4:
                # the four-element two-reflection action on four points loses
                # effectiveness under its half-turn quotient
                yield ("an effectiveness counterexample occurs", effectiveness_divergences > 0)
        return _law("equivariant: invariant verdicts agree, effectiveness may differ", checks())

    laws.append(law_property_invariance())

    def law_decomposition():
        def checks():
            for w in inst.weak_equivalences:
                dec = decompose(w.functor)
                yield (
                    f"{w.kind}: stages compose",
                    compose_functors(dec.inclusion.functor, dec.projection.functor) == w.functor.functor,
                )
                if w.kind == "composite" and w.stages:
                    projection, inclusion = w.stages
                    yield (
                        "recorded projection recovered",
                        dec.quotient.projection.functor == projection.functor,
                    )
                    yield (
                        "recorded inclusion recovered",
                        compose_functors(dec.inclusion.functor, dec.middle_iso.functor) == inclusion.functor,
                    )
        return _law("equivariant: decomposition succeeds and retracts", checks())

    laws.append(law_decomposition())

    def law_equivariant_pullbacks():
        def checks():
            used = 0
            for w in inst.weak_equivalences:
                f = w.functor
                if not weak_equivalence_report(f.functor).is_ssw:
                    continue
                used += 1
                if used > 25:
                    return
                esp = equivariant_strict_pullback(f, f)
                yield ("strict matches plain", compose_functors(esp.plain.pr2, esp.iso) == esp.pr2.functor)
                ewp = equivariant_weak_pullback(f.dom_action, f.functor, f.dom_action, f.functor)
                yield ("weak matches plain", compose_functors(ewp.plain.pr3, ewp.iso) == ewp.pr3.functor)
                rep_foot = property_report(f.dom_action)
                rep_strict = property_report(esp.action)
                rep_weak = property_report(ewp.action)
                for name in ("free", "transitive"):
                    yield (f"strict inherits {name}", rep_strict.verdict(name).value == rep_foot.verdict(name).value)
                    yield (f"weak inherits {name}", rep_weak.verdict(name).value == rep_foot.verdict(name).value)
        return _law("equivariant: pullbacks realize as action groupoids", checks())

    laws.append(law_equivariant_pullbacks())

    def law_span_replacement_equivariant():
        def checks():
            for span, left, right in inst.spans[:20]:
                out = equivariant_anafunctorify(span, left, right)
                yield ("witness validates", validate_two_cell(out.witness).ok)
                yield (
                    "middle matches left foot",
                    morita_oracle(out.middle_action.induced, left.induced),
                )
        return _law("equivariant: spans replace by action-groupoid spans", checks())

    laws.append(law_span_replacement_equivariant())

    def law_generator_soundness():
        def checks():
            for w in inst.weak_equivalences:
                yield (w.kind, weak_equivalence_report(w.functor.functor).is_weak_equivalence)
        return _law("workbench: generator soundness", checks())

    laws.append(law_generator_soundness())

    return SuiteReport(budget=budget, laws=tuple(laws))


def _pair_groupoid() -> FiniteGroupoid:
    """Two objects with exactly one arrow between every ordered pair."""
    objects = ("0", "1")
    arrows = tuple(f"{i}{j}" for i in objects for j in objects)
    return FiniteGroupoid(
        objects=objects,
        arrows=arrows,
        src={a: a[0] for a in arrows},
        tgt={a: a[1] for a in arrows},
        compose={(a2, a1): a1[0] + a2[1] for a2 in arrows for a1 in arrows if a2[0] == a1[1]},
        unit={o: o + o for o in objects},
        inv={a: a[1] + a[0] for a in arrows},
    )


def _collapse_to_terminal(g: FiniteGroupoid) -> GroupoidFunctor:
    t = terminal_groupoid()
    return GroupoidFunctor(g, t, {x: "*" for x in g.objects}, {a: "u" for a in g.arrows})


def _perturb_diagram(d: TwoCellDiagram) -> TwoCellDiagram:
    """Pre-compose the mediator with a surjective weak equivalence onto it.

    The inflation is the product with a two-object indiscrete groupoid, so
    its size is linear in the mediator.
    """
    doubled = strict_pullback(_collapse_to_terminal(d.mediator), _collapse_to_terminal(_pair_groupoid()))
    sigma = doubled.pr1
    return TwoCellDiagram(
        top=d.top,
        bottom=d.bottom,
        to_top=compose_functors(d.to_top, sigma),
        to_bottom=compose_functors(d.to_bottom, sigma),
        left_cell=whisker(d.left_cell, sigma, "right"),
        right_cell=whisker(d.right_cell, sigma, "right"),
    )
