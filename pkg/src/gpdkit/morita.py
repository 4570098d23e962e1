"""Weak-equivalence decision procedures, pullbacks, and a Morita oracle.

A functor is a weak equivalence when the arrow-anchored object map
(x, h) -> src(h) over pairs with tgt(h) = phi(x) is surjective, and the map
g -> (src(g), tgt(g), phi(g)) into compatible triples is bijective.  In the
finite setting both conditions are decided by exhaustive enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    FiniteGroup,
    FiniteGroupoid,
    GroupoidFunctor,
    InternalCheckError,
    MismatchError,
    NaturalTransformation,
    PreconditionError,
    compose_functors,
    group_isomorphic,
    identity_functor,
    render_id,
    validate_nat_trans,
    whisker,
)


class FiberDisagreementError(ValueError):
    """A transformation disagreed across a fiber it should be constant on.

    Diagnostic only: impossible when the input transformation is natural.
    """


@dataclass(frozen=True)
class WeakEquivalenceReport:
    """Verdicts (with failure witnesses) for the two weak-equivalence maps.

    ``ff_witness`` is ("missing"|"duplicate", (x, x', h)): a compatible triple
    hit by no arrow, or by more than one.
    """

    es_map_surjective: bool
    ff_map_bijective: bool
    object_map_surjective: bool
    es_witness: str | None = None
    ff_witness: tuple | None = None
    obj_witness: str | None = None

    @property
    def is_weak_equivalence(self) -> bool:
        return self.es_map_surjective and self.ff_map_bijective

    @property
    def is_ssw(self) -> bool:
        return self.is_weak_equivalence and self.object_map_surjective


def weak_equivalence_report(phi: GroupoidFunctor) -> WeakEquivalenceReport:
    g, h = phi.dom, phi.cod
    # (x, a) with tgt(a) = phi(x) is sent to src(a); collect the image
    image_objects = set(phi.obj_map.values())
    reachable = set()
    for a in h.arrows:
        if h.tgt[a] in image_objects:
            reachable.add(h.src[a])
    es_witness = next((y for y in h.objects if y not in reachable), None)

    hom = h.hom_index()
    counts: dict[tuple[str, str, str], int] = {}
    for x in g.objects:
        for x2 in g.objects:
            for a in hom.get((phi.obj_map[x], phi.obj_map[x2]), ()):
                counts[(x, x2, a)] = 0
    ff_witness = None
    for b in g.arrows:
        key = (g.src[b], g.tgt[b], phi.arr_map[b])
        if key not in counts:
            ff_witness = ("missing", key)  # only possible for invalid functors
            break
        counts[key] += 1
    if ff_witness is None:
        for key, n in counts.items():
            if n != 1:
                ff_witness = ("missing" if n == 0 else "duplicate", key)
                break

    obj_witness = next((y for y in h.objects if y not in image_objects), None)
    return WeakEquivalenceReport(
        es_map_surjective=es_witness is None,
        ff_map_bijective=ff_witness is None,
        object_map_surjective=obj_witness is None,
        es_witness=es_witness,
        ff_witness=ff_witness,
        obj_witness=obj_witness,
    )


@dataclass(frozen=True)
class StrictPullback:
    apex: FiniteGroupoid
    pr1: GroupoidFunctor
    pr2: GroupoidFunctor
    object_pairs: dict[str, tuple[str, str]] = field(repr=False)
    arrow_pairs: dict[str, tuple[str, str]] = field(repr=False)


def strict_pullback(phi: GroupoidFunctor, psi: GroupoidFunctor) -> StrictPullback:
    """Objectwise and arrowwise fibered product of two functors into one groupoid."""
    if phi.cod != psi.cod:
        raise MismatchError("strict_pullback: functors have different codomains")
    g, h = phi.dom, psi.dom
    objects, object_pairs = [], {}
    for x in g.objects:
        for y in h.objects:
            if phi.obj_map[x] == psi.obj_map[y]:
                oid = render_id((x, y))
                objects.append(oid)
                object_pairs[oid] = (x, y)
    arrows, arrow_pairs = [], {}
    src, tgt, unit, inv = {}, {}, {}, {}
    for a in g.arrows:
        for b in h.arrows:
            if phi.arr_map[a] == psi.arr_map[b]:
                aid = render_id((a, b))
                arrows.append(aid)
                arrow_pairs[aid] = (a, b)
                src[aid] = render_id((g.src[a], h.src[b]))
                tgt[aid] = render_id((g.tgt[a], h.tgt[b]))
                inv[aid] = render_id((g.inv[a], h.inv[b]))
    for oid, (x, y) in object_pairs.items():
        unit[oid] = render_id((g.unit[x], h.unit[y]))
    by_src: dict[str, list[str]] = {}
    for aid in arrows:
        by_src.setdefault(src[aid], []).append(aid)
    compose = {}
    for a1 in arrows:
        for a2 in by_src.get(tgt[a1], ()):
            ga, ha = arrow_pairs[a1]
            gb, hb = arrow_pairs[a2]
            compose[(a2, a1)] = render_id((g.compose[(gb, ga)], h.compose[(hb, ha)]))
    apex = FiniteGroupoid(tuple(objects), tuple(arrows), src, tgt, compose, unit, inv)
    pr1 = GroupoidFunctor(apex, g, {o: p[0] for o, p in object_pairs.items()}, {a: p[0] for a, p in arrow_pairs.items()})
    pr2 = GroupoidFunctor(apex, h, {o: p[1] for o, p in object_pairs.items()}, {a: p[1] for a, p in arrow_pairs.items()})
    out = StrictPullback(apex, pr1, pr2, object_pairs, arrow_pairs)
    if weak_equivalence_report(phi).is_ssw:
        rep = weak_equivalence_report(pr2)
        if not rep.is_ssw:
            raise InternalCheckError("strict pullback along a surjective weak equivalence lost the property on pr2")
    return out


@dataclass(frozen=True)
class WeakPullback:
    """Arrow-anchored pullback: objects (x, k, y) carry a connecting arrow k.

    ``comparison`` is the natural transformation phi∘pr1 ⇒ psi∘pr3 whose
    component at (x, k, y) is k itself.
    """

    apex: FiniteGroupoid
    pr1: GroupoidFunctor
    pr3: GroupoidFunctor
    comparison: NaturalTransformation
    object_triples: dict[str, tuple[str, str, str]] = field(repr=False)
    arrow_triples: dict[str, tuple[str, str, str]] = field(repr=False)


def weak_pullback(phi: GroupoidFunctor, psi: GroupoidFunctor) -> WeakPullback:
    if phi.cod != psi.cod:
        raise MismatchError("weak_pullback: functors have different codomains")
    g, h, k = phi.dom, psi.dom, phi.cod
    hom = k.hom_index()
    objects, object_triples = [], {}
    for x in g.objects:
        for y in h.objects:
            for c in hom.get((phi.obj_map[x], psi.obj_map[y]), ()):
                oid = render_id((x, c, y))
                objects.append(oid)
                object_triples[oid] = (x, c, y)
    arrows, arrow_triples = [], {}
    src, tgt, unit, inv = {}, {}, {}, {}
    for a in g.arrows:
        for b in h.arrows:
            for c in hom.get((phi.obj_map[g.src[a]], psi.obj_map[h.src[b]]), ()):
                aid = render_id((a, c, b))
                arrows.append(aid)
                arrow_triples[aid] = (a, c, b)
                src[aid] = render_id((g.src[a], c, h.src[b]))
                # transported anchor: psi(b) ∘ c ∘ phi(a)^(-1)
                c2 = k.compose[(psi.arr_map[b], k.compose[(c, k.inv[phi.arr_map[a]])])]
                tgt[aid] = render_id((g.tgt[a], c2, h.tgt[b]))
                inv[aid] = render_id((g.inv[a], c2, h.inv[b]))
    for oid, (x, c, y) in object_triples.items():
        unit[oid] = render_id((g.unit[x], c, h.unit[y]))
    by_src: dict[str, list[str]] = {}
    for aid in arrows:
        by_src.setdefault(src[aid], []).append(aid)
    compose = {}
    for a1 in arrows:
        for a2 in by_src.get(tgt[a1], ()):
            ga, ca, ha = arrow_triples[a1]
            gb, _, hb = arrow_triples[a2]
            compose[(a2, a1)] = render_id((g.compose[(gb, ga)], ca, h.compose[(hb, ha)]))
    apex = FiniteGroupoid(tuple(objects), tuple(arrows), src, tgt, compose, unit, inv)
    pr1 = GroupoidFunctor(apex, g, {o: t[0] for o, t in object_triples.items()}, {a: t[0] for a, t in arrow_triples.items()})
    pr3 = GroupoidFunctor(apex, h, {o: t[2] for o, t in object_triples.items()}, {a: t[2] for a, t in arrow_triples.items()})
    comparison = NaturalTransformation(
        compose_functors(phi, pr1),
        compose_functors(psi, pr3),
        {o: t[1] for o, t in object_triples.items()},
    )
    out = WeakPullback(apex, pr1, pr3, comparison, object_triples, arrow_triples)
    rep = validate_nat_trans(comparison)
    if not rep.ok:
        raise InternalCheckError(f"weak pullback comparison transformation is not natural: {rep.violations[0]}")
    if weak_equivalence_report(phi).is_weak_equivalence:
        if not weak_equivalence_report(pr3).is_ssw:
            raise InternalCheckError("weak pullback along a weak equivalence lost the property on pr3")
    return out


def ff_inverse(phi: GroupoidFunctor) -> dict[tuple[str, str, str], str]:
    """The inverse of g -> (src(g), tgt(g), phi(g)); meaningful when bijective."""
    return {(phi.dom.src[a], phi.dom.tgt[a], phi.arr_map[a]): a for a in phi.dom.arrows}


def ff_factorize(
    phi: GroupoidFunctor,
    psi: GroupoidFunctor,
    psi2: GroupoidFunctor,
    eta: NaturalTransformation,
) -> NaturalTransformation:
    """Factor eta: phi∘psi ⇒ phi∘psi2 through the fully faithful phi.

    Returns the unique transformation eta2: psi ⇒ psi2 whose left whisker by
    phi is eta; uniqueness holds because the triple map of phi is bijective.
    """
    rep = weak_equivalence_report(phi)
    if not rep.ff_map_bijective:
        raise PreconditionError(f"ff_factorize: functor is not fully faithful: {rep.ff_witness}")
    if psi.cod != phi.dom or psi2.cod != phi.dom or psi.dom != psi2.dom:
        raise MismatchError("ff_factorize: functors do not share the required interfaces")
    if eta.source != compose_functors(phi, psi) or eta.target != compose_functors(phi, psi2):
        raise MismatchError("ff_factorize: transformation endpoints are not the stated composites")
    inverse = ff_inverse(phi)
    component = {
        z: inverse[(psi.obj_map[z], psi2.obj_map[z], eta.component[z])]
        for z in psi.dom.objects
    }
    eta2 = NaturalTransformation(psi, psi2, component)
    if whisker(eta2, phi, "left") != eta:
        raise InternalCheckError("ff_factorize: factorisation identity failed")
    rep2 = validate_nat_trans(eta2)
    if not rep2.ok:
        raise InternalCheckError(f"ff_factorize: produced transformation is invalid: {rep2.violations[0]}")
    return eta2


def coff_factorize(
    phi: GroupoidFunctor,
    psi: GroupoidFunctor,
    psi2: GroupoidFunctor,
    eta: NaturalTransformation,
) -> NaturalTransformation:
    """Factor eta: psi∘phi ⇒ psi2∘phi through the surjective weak equivalence phi.

    The component at y is read off any point of the fiber over y (least index
    first), then re-verified to agree across the whole fiber.
    """
    rep = weak_equivalence_report(phi)
    if not rep.is_ssw:
        raise PreconditionError("coff_factorize: functor is not a surjective weak equivalence")
    if psi.dom != phi.cod or psi2.dom != phi.cod or psi.cod != psi2.cod:
        raise MismatchError("coff_factorize: functors do not share the required interfaces")
    if eta.source != compose_functors(psi, phi) or eta.target != compose_functors(psi2, phi):
        raise MismatchError("coff_factorize: transformation endpoints are not the stated composites")
    fibers: dict[str, list[str]] = {y: [] for y in phi.cod.objects}
    for x in phi.dom.objects:
        fibers[phi.obj_map[x]].append(x)
    component = {}
    for y in phi.cod.objects:
        fiber = fibers[y]
        values = {eta.component[x] for x in fiber}
        if len(values) != 1:
            raise FiberDisagreementError(f"transformation takes {len(values)} values over the fiber of {y!r}")
        component[y] = eta.component[fiber[0]]
    eta2 = NaturalTransformation(psi, psi2, component)
    if whisker(eta2, phi, "right") != eta:
        raise InternalCheckError("coff_factorize: factorisation identity failed")
    rep2 = validate_nat_trans(eta2)
    if not rep2.ok:
        raise InternalCheckError(f"coff_factorize: produced transformation is invalid: {rep2.violations[0]}")
    return eta2


@dataclass(frozen=True)
class LocallySplitWitness:
    """A covering groupoid splitting a weak equivalence up to a 2-cell."""

    cover: FiniteGroupoid
    projection: GroupoidFunctor  # cover -> codomain, surjective weak equivalence
    section: GroupoidFunctor  # cover -> domain
    cell: NaturalTransformation  # phi ∘ section ⇒ projection


def locally_split_witness(phi: GroupoidFunctor) -> LocallySplitWitness:
    rep = weak_equivalence_report(phi)
    if not rep.is_weak_equivalence:
        raise PreconditionError("locally_split_witness: functor is not a weak equivalence")
    wp = weak_pullback(phi, identity_functor(phi.cod))
    if not weak_equivalence_report(wp.pr3).is_ssw:
        raise InternalCheckError("locally_split_witness: projection is not a surjective weak equivalence")
    return LocallySplitWitness(wp.apex, wp.pr3, wp.pr1, wp.comparison)


@dataclass(frozen=True)
class SkeletonInvariant:
    """Per connected component: (object count, isotropy group of its least object).

    Component sizes are diagnostics only; the Morita comparison matches
    isotropy groups up to isomorphism and ignores sizes.
    """

    components: tuple[tuple[int, FiniteGroup], ...]

    def morita_equal(self, other: "SkeletonInvariant") -> bool:
        if len(self.components) != len(other.components):
            return False
        unused = list(range(len(other.components)))
        for _, mine in self.components:
            hit = next((i for i in unused if group_isomorphic(mine, other.components[i][1])), None)
            if hit is None:
                return False
            unused.remove(hit)
        return True


def connected_components(g: FiniteGroupoid) -> list[tuple[str, ...]]:
    """Object partition under arrow-reachability, ordered by least object index."""
    neighbours: dict[str, set[str]] = {x: set() for x in g.objects}
    for a in g.arrows:
        neighbours[g.src[a]].add(g.tgt[a])
        neighbours[g.tgt[a]].add(g.src[a])
    seen: set[str] = set()
    out = []
    for x in g.objects:
        if x in seen:
            continue
        comp = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for z in neighbours[y]:
                    if z not in comp:
                        comp.add(z)
                        nxt.append(z)
            frontier = nxt
        seen.update(comp)
        out.append(tuple(y for y in g.objects if y in comp))
    return out


def isotropy_group(g: FiniteGroupoid, x: str) -> FiniteGroup:
    loops = tuple(a for a in g.arrows if g.src[a] == x and g.tgt[a] == x)
    return FiniteGroup(
        elements=loops,
        mul={(a, b): g.compose[(a, b)] for a in loops for b in loops},
        unit=g.unit[x],
        inv={a: g.inv[a] for a in loops},
    )


def skeleton_invariant(g: FiniteGroupoid) -> SkeletonInvariant:
    comps = []
    for comp in connected_components(g):
        comps.append((len(comp), isotropy_group(g, comp[0])))
    return SkeletonInvariant(tuple(comps))


def morita_oracle(g: FiniteGroupoid, h: FiniteGroupoid) -> bool:
    """Independent cross-check: components matched by isotropy up to isomorphism."""
    return skeleton_invariant(g).morita_equal(skeleton_invariant(h))
