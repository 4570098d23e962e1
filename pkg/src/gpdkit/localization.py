"""Spans of groupoid functors, their compositions, and a decidable 2-cell calculus.

A span is a middle groupoid with two legs; the left leg is always a weak
equivalence, and for anafunctors additionally surjective on objects.  A 2-cell
between parallel spans is presented by a mediating diagram; every such diagram
normalizes to a single natural transformation over the strict pullback of the
left legs, and two diagrams present the same 2-cell exactly when their normal
forms agree pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FiniteGroupoid,
    GroupoidFunctor,
    InternalCheckError,
    MismatchError,
    NaturalTransformation,
    PreconditionError,
    ValidationReport,
    Violation,
    compose_functors,
    identity_functor,
    identity_transformation,
    inverse_transformation,
    render_id,
    validate_nat_trans,
    vertical_compose_nat,
    whisker,
)
from .morita import (
    StrictPullback,
    ff_inverse,
    coff_factorize,
    ff_factorize,
    strict_pullback,
    weak_equivalence_report,
    weak_pullback,
)


@dataclass(frozen=True)
class GeneralizedMorphism:
    """A span whose left leg is a weak equivalence."""

    left: GroupoidFunctor
    right: GroupoidFunctor

    def __post_init__(self):
        if self.left.dom != self.right.dom:
            raise MismatchError("span legs must share their middle groupoid")
        rep = weak_equivalence_report(self.left)
        if not rep.is_weak_equivalence:
            raise PreconditionError(
                f"left leg of a span must be a weak equivalence "
                f"(es witness {rep.es_witness!r}, ff witness {rep.ff_witness!r})"
            )

    @property
    def middle(self) -> FiniteGroupoid:
        return self.left.dom

    @property
    def left_foot(self) -> FiniteGroupoid:
        return self.left.cod

    @property
    def right_foot(self) -> FiniteGroupoid:
        return self.right.cod


@dataclass(frozen=True)
class Anafunctor(GeneralizedMorphism):
    """A span whose left leg is additionally surjective on objects."""

    def __post_init__(self):
        super().__post_init__()
        rep = weak_equivalence_report(self.left)
        if not rep.is_ssw:
            raise PreconditionError(
                f"left leg of an anafunctor must be surjective on objects (witness {rep.obj_witness!r})"
            )


def as_anafunctor(f: GeneralizedMorphism) -> Anafunctor:
    if isinstance(f, Anafunctor):
        return f
    return Anafunctor(f.left, f.right)


@dataclass(frozen=True)
class TwoCellDiagram:
    """One mediating diagram between two parallel spans.

    The mediator maps into both middles by weak equivalences; ``left_cell``
    and ``right_cell`` fill the squares over the left and right feet.
    """

    top: GeneralizedMorphism
    bottom: GeneralizedMorphism
    to_top: GroupoidFunctor
    to_bottom: GroupoidFunctor
    left_cell: NaturalTransformation  # top.left∘to_top ⇒ bottom.left∘to_bottom
    right_cell: NaturalTransformation  # top.right∘to_top ⇒ bottom.right∘to_bottom

    @property
    def mediator(self) -> FiniteGroupoid:
        return self.to_top.dom


@dataclass(frozen=True)
class AnaTwoCell:
    """Normal-form 2-cell: one transformation over the strict pullback of left legs."""

    top: Anafunctor
    bottom: Anafunctor
    transformation: NaturalTransformation  # top.right∘pr1 ⇒ bottom.right∘pr2


def left_leg_pullback(c_top: GeneralizedMorphism, c_bottom: GeneralizedMorphism) -> StrictPullback:
    return strict_pullback(c_top.left, c_bottom.left)


def _check_ana_cell(cell: AnaTwoCell):
    if cell.top.left_foot != cell.bottom.left_foot or cell.top.right_foot != cell.bottom.right_foot:
        raise MismatchError("2-cell endpoints are not parallel spans")
    pb = left_leg_pullback(cell.top, cell.bottom)
    if cell.transformation.source != compose_functors(cell.top.right, pb.pr1):
        raise MismatchError("2-cell transformation source is not top.right over the pullback")
    if cell.transformation.target != compose_functors(cell.bottom.right, pb.pr2):
        raise MismatchError("2-cell transformation target is not bottom.right over the pullback")
    rep = validate_nat_trans(cell.transformation)
    if not rep.ok:
        raise PreconditionError(f"2-cell transformation is not natural: {rep.violations[0]}")


def compose_generalized(f: GeneralizedMorphism, g: GeneralizedMorphism) -> GeneralizedMorphism:
    """Composite span through the arrow-anchored (weak) pullback of the middles."""
    if f.right_foot != g.left_foot:
        raise MismatchError("compose_generalized: spans do not meet over a common groupoid")
    wp = weak_pullback(f.right, g.left)
    return GeneralizedMorphism(
        compose_functors(f.left, wp.pr1),
        compose_functors(g.right, wp.pr3),
    )


def compose_anafunctors(f: Anafunctor, g: Anafunctor) -> Anafunctor:
    """Composite anafunctor through the strict pullback of the middles."""
    if f.right_foot != g.left_foot:
        raise MismatchError("compose_anafunctors: spans do not meet over a common groupoid")
    sp = strict_pullback(f.right, g.left)
    return Anafunctor(
        compose_functors(f.left, sp.pr1),
        compose_functors(g.right, sp.pr2),
    )


def identity_anafunctor(g: FiniteGroupoid) -> Anafunctor:
    i = identity_functor(g)
    return Anafunctor(i, i)


def identity_two_cell(f: Anafunctor) -> AnaTwoCell:
    """The unit 2-cell of an anafunctor, computed from the triple-map inverse.

    Over the self-pullback of the left leg, the component at (y1, y2) is the
    right leg applied to the unique arrow y1 -> y2 sitting over the identity.
    """
    pb = strict_pullback(f.left, f.left)
    inverse = ff_inverse(f.left)
    unit_of = f.left_foot.unit
    component = {}
    for oid, (y1, y2) in pb.object_pairs.items():
        component[oid] = f.right.arr_map[inverse[(y1, y2, unit_of[f.left.obj_map[y1]])]]
    cell = AnaTwoCell(
        f,
        f,
        NaturalTransformation(
            compose_functors(f.right, pb.pr1),
            compose_functors(f.right, pb.pr2),
            component,
        ),
    )
    _check_ana_cell(cell)
    return cell


def as_diagram(cell: AnaTwoCell) -> TwoCellDiagram:
    """Render a normal-form 2-cell as a mediating diagram with a trivial left cell."""
    pb = left_leg_pullback(cell.top, cell.bottom)
    return TwoCellDiagram(
        top=cell.top,
        bottom=cell.bottom,
        to_top=pb.pr1,
        to_bottom=pb.pr2,
        left_cell=identity_transformation(compose_functors(cell.top.left, pb.pr1)),
        right_cell=cell.transformation,
    )


def validate_two_cell(d: TwoCellDiagram) -> ValidationReport:
    """Check every obligation of a mediating diagram, naming each failure."""
    violations = []
    if d.top.left_foot != d.bottom.left_foot or d.top.right_foot != d.bottom.right_foot:
        violations.append(Violation("parallel-feet", ()))
        return ValidationReport.collect(violations)
    if d.to_top.dom != d.to_bottom.dom:
        violations.append(Violation("shared-mediator", ()))
        return ValidationReport.collect(violations)
    if d.to_top.cod != d.top.middle:
        violations.append(Violation("to-top-interface", ()))
    if d.to_bottom.cod != d.bottom.middle:
        violations.append(Violation("to-bottom-interface", ()))
    if violations:
        return ValidationReport.collect(violations)
    rep = weak_equivalence_report(d.to_top)
    if not rep.is_weak_equivalence:
        violations.append(Violation("to-top-weak-equivalence", (rep.es_witness, rep.ff_witness)))
    rep = weak_equivalence_report(d.to_bottom)
    if not rep.is_weak_equivalence:
        violations.append(Violation("to-bottom-weak-equivalence", (rep.es_witness, rep.ff_witness)))
    for name, cell, lega, legb in (
        ("left-cell", d.left_cell, d.top.left, d.bottom.left),
        ("right-cell", d.right_cell, d.top.right, d.bottom.right),
    ):
        if cell.source != compose_functors(lega, d.to_top):
            violations.append(Violation(f"{name}-source", ()))
            continue
        if cell.target != compose_functors(legb, d.to_bottom):
            violations.append(Violation(f"{name}-target", ()))
            continue
        rep = validate_nat_trans(cell)
        if not rep.ok:
            violations.append(Violation(f"{name}-naturality", rep.violations[0].witness))
    return ValidationReport.collect(violations)


def normalize_two_cell(d: TwoCellDiagram) -> AnaTwoCell:
    """Canonical representative of a diagram between anafunctors.

    Pulls the mediator back over the strict pullback of the left legs, factors
    the left-foot data through the bottom left leg (fully faithful), then
    factors the right-foot composite through the pullback projection
    (surjective weak equivalence).  Every intermediate transformation is
    re-validated rather than trusted.
    """
    rep = validate_two_cell(d)
    if not rep.ok:
        raise PreconditionError(f"normalize_two_cell: diagram does not validate: {rep.violations[0]}")
    top, bottom = as_anafunctor(d.top), as_anafunctor(d.bottom)
    pb = strict_pullback(top.left, bottom.left)
    lifted = weak_pullback(pb.pr1, d.to_top)  # pr1 -> pullback apex, pr3 -> mediator

    step1 = whisker(lifted.comparison, top.left, "left")
    step2 = whisker(d.left_cell, lifted.pr3, "right")
    for eta in (step1, step2):
        chk = validate_nat_trans(eta)
        if not chk.ok:
            raise InternalCheckError(f"normalize_two_cell: intermediate failed validation: {chk.violations[0]}")
    mid = ff_factorize(
        bottom.left,
        compose_functors(pb.pr2, lifted.pr1),
        compose_functors(d.to_bottom, lifted.pr3),
        vertical_compose_nat(step2, step1),
    )

    step3 = whisker(lifted.comparison, top.right, "left")
    step4 = whisker(d.right_cell, lifted.pr3, "right")
    step5 = whisker(inverse_transformation(mid), bottom.right, "left")
    for eta in (step3, step4, step5):
        chk = validate_nat_trans(eta)
        if not chk.ok:
            raise InternalCheckError(f"normalize_two_cell: intermediate failed validation: {chk.violations[0]}")
    composite = vertical_compose_nat(step5, vertical_compose_nat(step4, step3))
    nu = coff_factorize(
        lifted.pr1,
        compose_functors(top.right, pb.pr1),
        compose_functors(bottom.right, pb.pr2),
        composite,
    )
    cell = AnaTwoCell(top, bottom, nu)
    _check_ana_cell(cell)
    return cell


def two_cells_equal(d1: TwoCellDiagram, d2: TwoCellDiagram) -> bool:
    """Decide 2-cell equality by comparing normal forms pointwise.

    Both diagrams must connect the same pair of anafunctors (as tables);
    sound and complete because the normal form is unique.
    """
    same_pair = (
        as_anafunctor(d1.top) == as_anafunctor(d2.top)
        and as_anafunctor(d1.bottom) == as_anafunctor(d2.bottom)
    )
    if not same_pair:
        raise MismatchError("two_cells_equal: diagrams do not connect the same pair of spans")
    n1 = normalize_two_cell(d1)
    n2 = normalize_two_cell(d2)
    return n1.transformation == n2.transformation


@dataclass(frozen=True)
class TriplePullback:
    """Strict pullback of three functors into one groupoid, with pairwise projections."""

    apex: FiniteGroupoid
    to_first_pair: GroupoidFunctor
    to_outer_pair: GroupoidFunctor
    to_second_pair: GroupoidFunctor


def _triple_pullback(
    phi1: GroupoidFunctor,
    phi2: GroupoidFunctor,
    phi3: GroupoidFunctor,
    pb12: StrictPullback,
    pb13: StrictPullback,
    pb23: StrictPullback,
) -> TriplePullback:
    g1, g2, g3 = phi1.dom, phi2.dom, phi3.dom
    objects, obj_triples = [], {}
    for x in g1.objects:
        for y in g2.objects:
            if phi1.obj_map[x] != phi2.obj_map[y]:
                continue
            for z in g3.objects:
                if phi2.obj_map[y] == phi3.obj_map[z]:
                    oid = render_id((x, y, z))
                    objects.append(oid)
                    obj_triples[oid] = (x, y, z)
    arrows, arrow_triples = [], {}
    src, tgt, inv = {}, {}, {}
    for a in g1.arrows:
        for b in g2.arrows:
            if phi1.arr_map[a] != phi2.arr_map[b]:
                continue
            for c in g3.arrows:
                if phi2.arr_map[b] == phi3.arr_map[c]:
                    aid = render_id((a, b, c))
                    arrows.append(aid)
                    arrow_triples[aid] = (a, b, c)
                    src[aid] = render_id((g1.src[a], g2.src[b], g3.src[c]))
                    tgt[aid] = render_id((g1.tgt[a], g2.tgt[b], g3.tgt[c]))
                    inv[aid] = render_id((g1.inv[a], g2.inv[b], g3.inv[c]))
    unit = {oid: render_id((g1.unit[x], g2.unit[y], g3.unit[z])) for oid, (x, y, z) in obj_triples.items()}
    by_src: dict[str, list[str]] = {}
    for aid in arrows:
        by_src.setdefault(src[aid], []).append(aid)
    compose = {}
    for a1 in arrows:
        for a2 in by_src.get(tgt[a1], ()):
            xa, ya, za = arrow_triples[a1]
            xb, yb, zb = arrow_triples[a2]
            compose[(a2, a1)] = render_id((g1.compose[(xb, xa)], g2.compose[(yb, ya)], g3.compose[(zb, za)]))
    apex = FiniteGroupoid(tuple(objects), tuple(arrows), src, tgt, compose, unit, inv)

    def project(pb: StrictPullback, keep: tuple[int, int]) -> GroupoidFunctor:
        return GroupoidFunctor(
            apex,
            pb.apex,
            {o: render_id((t[keep[0]], t[keep[1]])) for o, t in obj_triples.items()},
            {a: render_id((t[keep[0]], t[keep[1]])) for a, t in arrow_triples.items()},
        )

    return TriplePullback(apex, project(pb12, (0, 1)), project(pb13, (0, 2)), project(pb23, (1, 2)))


def vertical_compose_ana(c1: AnaTwoCell, c2: AnaTwoCell) -> AnaTwoCell:
    """Stack two normal-form 2-cells.

    The composite component at (y, y'') is c2 at (y', y'') after c1 at
    (y, y'), for any middle object y' over the same left-foot object; the
    factorisation through the outer projection re-verifies that the choice of
    y' does not matter.
    """
    if c1.bottom != c2.top:
        raise MismatchError("vertical_compose_ana: cells do not share a middle span")
    f, g, h = c1.top, c1.bottom, c2.bottom
    pb12 = strict_pullback(f.left, g.left)
    pb13 = strict_pullback(f.left, h.left)
    pb23 = strict_pullback(g.left, h.left)
    triple = _triple_pullback(f.left, g.left, h.left, pb12, pb13, pb23)
    lifted = vertical_compose_nat(
        whisker(c2.transformation, triple.to_second_pair, "right"),
        whisker(c1.transformation, triple.to_first_pair, "right"),
    )
    lam = coff_factorize(
        triple.to_outer_pair,
        compose_functors(f.right, pb13.pr1),
        compose_functors(h.right, pb13.pr2),
        lifted,
    )
    cell = AnaTwoCell(f, h, lam)
    _check_ana_cell(cell)
    return cell


def inverse_two_cell(cell: AnaTwoCell) -> AnaTwoCell:
    """Pointwise inverse, living over the swapped pullback."""
    pb = left_leg_pullback(cell.bottom, cell.top)
    fwd = left_leg_pullback(cell.top, cell.bottom)
    cod = cell.top.right_foot
    component = {}
    for oid, (y2, y1) in pb.object_pairs.items():
        component[oid] = cod.inv[cell.transformation.component[render_id((y1, y2))]]
    out = AnaTwoCell(
        cell.bottom,
        cell.top,
        NaturalTransformation(
            compose_functors(cell.bottom.right, pb.pr1),
            compose_functors(cell.top.right, pb.pr2),
            component,
        ),
    )
    _check_ana_cell(out)
    return out


def strictify_composition(f: GeneralizedMorphism, g: GeneralizedMorphism) -> TwoCellDiagram:
    """The canonical diagram from the weak-pullback composite to the strict one.

    The mediator is the strict composite middle, included into the weak one by
    anchoring each pair at the unit arrow; both filling cells are identities.
    """
    if f.right_foot != g.left_foot:
        raise MismatchError("strictify_composition: spans do not meet over a common groupoid")
    g_ana = as_anafunctor(g)
    wp = weak_pullback(f.right, g_ana.left)
    sp = strict_pullback(f.right, g_ana.left)
    weak_comp = GeneralizedMorphism(compose_functors(f.left, wp.pr1), compose_functors(g_ana.right, wp.pr3))
    strict_comp = GeneralizedMorphism(compose_functors(f.left, sp.pr1), compose_functors(g_ana.right, sp.pr2))

    mid_of = f.right_foot
    obj_map, arr_map = {}, {}
    for oid, (x, y) in sp.object_pairs.items():
        obj_map[oid] = render_id((x, mid_of.unit[f.right.obj_map[x]], y))
    for aid, (k, l) in sp.arrow_pairs.items():
        arr_map[aid] = render_id((k, mid_of.unit[f.right.obj_map[f.right.dom.src[k]]], l))
    inclusion = GroupoidFunctor(sp.apex, wp.apex, obj_map, arr_map)
    rep = weak_equivalence_report(inclusion)
    if not rep.is_weak_equivalence:
        raise InternalCheckError("strictify_composition: unit-anchored inclusion is not a weak equivalence")

    diagram = TwoCellDiagram(
        top=weak_comp,
        bottom=strict_comp,
        to_top=inclusion,
        to_bottom=identity_functor(sp.apex),
        left_cell=identity_transformation(compose_functors(weak_comp.left, inclusion)),
        right_cell=identity_transformation(compose_functors(weak_comp.right, inclusion)),
    )
    chk = validate_two_cell(diagram)
    if not chk.ok:
        raise InternalCheckError(f"strictify_composition: diagram does not validate: {chk.violations[0]}")
    return diagram


@dataclass(frozen=True)
class Anafunctorification:
    anafunctor: Anafunctor
    witness: TwoCellDiagram


def anafunctorify(f: GeneralizedMorphism) -> Anafunctorification:
    """Replace a span by an anafunctor, with a validating diagram between them.

    The new middle is the arrow-anchored pullback of the identity of the left
    foot with the old left leg; its first projection is always surjective.
    """
    wp = weak_pullback(identity_functor(f.left_foot), f.left)
    ana = Anafunctor(wp.pr1, compose_functors(f.right, wp.pr3))

    k = f.middle
    foot = f.left_foot
    obj_map, arr_map = {}, {}
    for z in k.objects:
        x = f.left.obj_map[z]
        obj_map[z] = render_id((x, foot.unit[x], z))
    for a in k.arrows:
        x = f.left.obj_map[k.src[a]]
        arr_map[a] = render_id((f.left.arr_map[a], foot.unit[x], a))
    section = GroupoidFunctor(k, wp.apex, obj_map, arr_map)

    witness = TwoCellDiagram(
        top=f,
        bottom=ana,
        to_top=identity_functor(k),
        to_bottom=section,
        left_cell=identity_transformation(compose_functors(f.left, identity_functor(k))),
        right_cell=identity_transformation(compose_functors(f.right, identity_functor(k))),
    )
    chk = validate_two_cell(witness)
    if not chk.ok:
        raise InternalCheckError(f"anafunctorify: witness diagram does not validate: {chk.violations[0]}")
    return Anafunctorification(ana, witness)
