"""Group-action properties, equivariant functors, and the decomposition theorem.

An equivariant weak equivalence between action groupoids factors as a
quotient projection (by the kernel of its group map, which acts freely)
followed by an inclusion into a balanced product.  Both stages, the
equivariant pullbacks, and the bibundle-style span replacement are
constructed explicitly and re-verified against their contracts rather than
trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    ActionGroupoid,
    FiniteGroup,
    GroupoidFunctor,
    InternalCheckError,
    MismatchError,
    PreconditionError,
    action_groupoid,
    compose_functors,
    direct_product,
    hom_kernel,
    identity_functor,
    identity_transformation,
    is_group_hom,
    is_normal,
    is_subgroup_of,
    orbits,
    render_id,
    stabilizer,
    subgroup,
    validate_functor,
)
from .localization import Anafunctor, GeneralizedMorphism, TwoCellDiagram, validate_two_cell
from .morita import strict_pullback, weak_equivalence_report, weak_pullback

PROPERTY_NAMES = (
    "free",
    "locally_free",
    "transitive",
    "effective",
    "compact",
    "discrete",
    "proper",
    "orbifold",
)

# properties that hold for every finite group action, reported with a flag
TRIVIAL_IN_FINITE_SETTING = ("locally_free", "compact", "discrete", "proper", "orbifold")


@dataclass(frozen=True)
class PropertyVerdict:
    value: bool
    trivial: bool = False
    witness: tuple | None = None


@dataclass(frozen=True)
class PropertyReport:
    free: PropertyVerdict
    locally_free: PropertyVerdict
    transitive: PropertyVerdict
    effective: PropertyVerdict
    compact: PropertyVerdict
    discrete: PropertyVerdict
    proper: PropertyVerdict
    orbifold: PropertyVerdict
    requested: tuple[str, ...] = PROPERTY_NAMES

    def verdict(self, name: str) -> PropertyVerdict:
        return getattr(self, name)

    def selected(self) -> dict[str, PropertyVerdict]:
        return {name: getattr(self, name) for name in self.requested}


def property_report(a: ActionGroupoid, requested=None) -> PropertyReport:
    """Decide each requested action property by direct enumeration.

    A finite group is compact, discrete, and acts properly, and every finite
    groupoid is proper etale (hence an orbifold groupoid); those verdicts are
    reported true with a trivial flag instead of being omitted.
    """
    names = PROPERTY_NAMES if requested is None else tuple(requested)
    for name in names:
        if name not in PROPERTY_NAMES:
            raise ValueError(f"unknown property {name!r}")
    free_witness = None
    for x in a.carrier:
        for g in stabilizer(a, x):
            if g != a.group.unit:
                free_witness = (g, x)
                break
        if free_witness:
            break
    orbit_list = orbits(a)
    transitive_witness = None if len(orbit_list) <= 1 else (orbit_list[0][0], orbit_list[1][0])
    ineffective_witness = None
    for g in a.group.elements:
        if g != a.group.unit and all(a.act[(g, x)] == x for x in a.carrier):
            ineffective_witness = (g,)
            break
    trivially_true = PropertyVerdict(True, trivial=True)
    return PropertyReport(
        free=PropertyVerdict(free_witness is None, witness=free_witness),
        locally_free=trivially_true,
        transitive=PropertyVerdict(transitive_witness is None, witness=transitive_witness),
        effective=PropertyVerdict(ineffective_witness is None, witness=ineffective_witness),
        compact=trivially_true,
        discrete=trivially_true,
        proper=trivially_true,
        orbifold=trivially_true,
        requested=names,
    )


@dataclass(frozen=True)
class EquivariantFunctor:
    """A functor between action groupoids of the form (g, x) -> (hom(g), obj(x))."""

    dom_action: ActionGroupoid
    cod_action: ActionGroupoid
    group_hom: dict[str, str] = field(repr=False)
    obj_map: dict[str, str] = field(repr=False)
    functor: GroupoidFunctor = field(repr=False)


def equivariant_functor(
    dom: ActionGroupoid,
    cod: ActionGroupoid,
    group_hom: dict[str, str],
    obj_map: dict[str, str],
) -> EquivariantFunctor:
    witness = is_group_hom(dom.group, cod.group, group_hom)
    if witness is not None:
        raise PreconditionError(f"group map is not a homomorphism at {witness}")
    if set(obj_map) != set(dom.carrier):
        raise MismatchError("object map keys do not match the domain carrier")
    cod_points = set(cod.carrier)
    for x, y in obj_map.items():
        if y not in cod_points:
            raise MismatchError(f"object map value {y!r} is not a codomain point")
    for g in dom.group.elements:
        for x in dom.carrier:
            if obj_map[dom.act[(g, x)]] != cod.act[(group_hom[g], obj_map[x])]:
                raise PreconditionError(f"object map is not equivariant at ({g!r}, {x!r})")
    arr_map = {
        dom.arrow_id(g, x): cod.arrow_id(group_hom[g], obj_map[x])
        for g in dom.group.elements
        for x in dom.carrier
    }
    functor = GroupoidFunctor(dom.induced, cod.induced, dict(obj_map), arr_map)
    rep = validate_functor(functor)
    if not rep.ok:
        raise InternalCheckError(f"equivariant data produced an invalid functor: {rep.violations[0]}")
    return EquivariantFunctor(dom, cod, dict(group_hom), dict(obj_map), functor)


def identity_equivariant(a: ActionGroupoid) -> EquivariantFunctor:
    return equivariant_functor(a, a, {g: g for g in a.group.elements}, {x: x for x in a.carrier})


def compose_equivariant(f2: EquivariantFunctor, f1: EquivariantFunctor) -> EquivariantFunctor:
    if f1.cod_action != f2.dom_action:
        raise MismatchError("compose_equivariant: actions do not match")
    return equivariant_functor(
        f1.dom_action,
        f2.cod_action,
        {g: f2.group_hom[h] for g, h in f1.group_hom.items()},
        {x: f2.obj_map[y] for x, y in f1.obj_map.items()},
    )


@dataclass(frozen=True)
class EquivariantCheck:
    functor: EquivariantFunctor | None
    witness: str | None = None  # an arrow whose image breaks the required form

    @property
    def ok(self) -> bool:
        return self.functor is not None


def as_equivariant(dom: ActionGroupoid, cod: ActionGroupoid, f: GroupoidFunctor) -> EquivariantCheck:
    """Recover the (unique) group map making f equivariant, if one exists."""
    if f.dom != dom.induced or f.cod != cod.induced:
        raise MismatchError("functor endpoints are not the stated action groupoids")
    rep = validate_functor(f)
    if not rep.ok:
        raise PreconditionError(f"functor is invalid: {rep.violations[0]}")
    group_hom: dict[str, str] = {}
    for g in dom.group.elements:
        images = set()
        for x in dom.carrier:
            aid = dom.arrow_id(g, x)
            h, _ = cod.arrow_pairs[f.arr_map[aid]]
            images.add(h)
            if len(images) > 1:
                return EquivariantCheck(None, witness=aid)
        # an empty carrier leaves the group map unconstrained; use the trivial one
        group_hom[g] = next(iter(images)) if images else cod.group.unit
    if is_group_hom(dom.group, cod.group, group_hom) is not None:
        # unreachable for valid functors over a nonempty carrier
        return EquivariantCheck(None, witness=dom.arrow_id(dom.group.elements[0], dom.carrier[0]))
    return EquivariantCheck(equivariant_functor(dom, cod, group_hom, dict(f.obj_map)))


@dataclass(frozen=True)
class QuotientConstruction:
    """Quotient of an action by a free normal subgroup, with its projection."""

    kernel: FiniteGroup
    quotient: ActionGroupoid
    projection: EquivariantFunctor
    coset_rep: dict[str, str] = field(repr=False)
    orbit_rep: dict[str, str] = field(repr=False)


def quotient_action(a: ActionGroupoid, kernel_elements) -> QuotientConstruction:
    """Quotient group and carrier by a normal subgroup acting freely.

    Cosets and point orbits are collapsed onto least-index representatives so
    the construction is deterministic.
    """
    k = subgroup(a.group, kernel_elements)
    if not is_normal(a.group, k.elements):
        raise PreconditionError("quotient_action: subgroup is not normal")
    for el in k.elements:
        if el == a.group.unit:
            continue
        for x in a.carrier:
            if a.act[(el, x)] == x:
                raise PreconditionError(f"quotient_action: subgroup does not act freely at ({el!r}, {x!r})")
    g = a.group
    coset_rep: dict[str, str] = {}
    for el in g.elements:
        if el in coset_rep:
            continue
        coset = {g.mul[(el, s)] for s in k.elements}
        rep = next(e for e in g.elements if e in coset)
        for member in coset:
            coset_rep[member] = rep
    reps = tuple(dict.fromkeys(coset_rep[el] for el in g.elements))
    qgroup = FiniteGroup(
        elements=reps,
        mul={(r1, r2): coset_rep[g.mul[(r1, r2)]] for r1 in reps for r2 in reps},
        unit=coset_rep[g.unit],
        inv={r: coset_rep[g.inv[r]] for r in reps},
    )
    orbit_rep: dict[str, str] = {}
    for x in a.carrier:
        if x in orbit_rep:
            continue
        orb = {a.act[(s, x)] for s in k.elements}
        rep = next(y for y in a.carrier if y in orb)
        for member in orb:
            orbit_rep[member] = rep
    qcarrier = tuple(dict.fromkeys(orbit_rep[x] for x in a.carrier))
    qact = {(r, p): orbit_rep[a.act[(r, p)]] for r in reps for p in qcarrier}
    quotient = action_groupoid(qgroup, qcarrier, qact)
    projection = equivariant_functor(a, quotient, dict(coset_rep), {x: orbit_rep[x] for x in a.carrier})
    if not weak_equivalence_report(projection.functor).is_ssw:
        raise InternalCheckError("quotient projection is not a surjective weak equivalence")
    return QuotientConstruction(k, quotient, projection, coset_rep, orbit_rep)


@dataclass(frozen=True)
class QuotientFactorization:
    kernel: FiniteGroup
    projection: EquivariantFunctor
    iso: EquivariantFunctor  # quotient -> codomain, bijective on group and carrier


def _is_equivariant_iso(f: EquivariantFunctor) -> bool:
    group_bij = len(set(f.group_hom.values())) == f.cod_action.group.order == f.dom_action.group.order
    carrier_bij = len(set(f.obj_map.values())) == len(f.cod_action.carrier) == len(f.dom_action.carrier)
    return group_bij and carrier_bij


def quotient_factorization(phi: EquivariantFunctor) -> QuotientFactorization:
    """Split a surjective equivariant weak equivalence as iso ∘ quotient projection."""
    if not weak_equivalence_report(phi.functor).is_ssw:
        raise PreconditionError("quotient_factorization: functor is not a surjective weak equivalence")
    g = phi.dom_action.group
    kernel_elements = hom_kernel(g, phi.cod_action.group, phi.group_hom)
    q = quotient_action(phi.dom_action, kernel_elements)
    iso = equivariant_functor(
        q.quotient,
        phi.cod_action,
        {r: phi.group_hom[r] for r in q.quotient.group.elements},
        {p: phi.obj_map[p] for p in q.quotient.carrier},
    )
    if not _is_equivariant_iso(iso):
        raise InternalCheckError("quotient_factorization: comparison with the quotient is not an isomorphism")
    if compose_functors(iso.functor, q.projection.functor) != phi.functor:
        raise InternalCheckError("quotient_factorization: stages do not compose to the input")
    return QuotientFactorization(q.kernel, q.projection, iso)


@dataclass(frozen=True)
class BalancedProduct:
    """Carrier (big x inner)/antidiagonal with the induced big-group action."""

    product: ActionGroupoid
    inclusion: EquivariantFunctor  # inner action -> product action
    class_map: dict[tuple[str, str], str] = field(repr=False)  # (g, x) -> class id
    rep_pairs: dict[str, tuple[str, str]] = field(repr=False)  # class id -> least-index (g, x)


def balanced_product(big: FiniteGroup, inner: ActionGroupoid) -> BalancedProduct:
    """Induce an action of ``big`` from an action of a subgroup of it.

    Points are classes [g, x] with [g * k, x] = [g, k·x]; representatives are
    least-index pairs.  The inclusion x -> [1, x] of the inner action is a
    weak equivalence (re-verified here).
    """
    k = inner.group
    if not is_subgroup_of(k, big):
        raise PreconditionError("balanced_product: inner action group is not a subgroup of the big group")
    g_index = {el: i for i, el in enumerate(big.elements)}
    x_index = {x: i for i, x in enumerate(inner.carrier)}
    class_map: dict[tuple[str, str], str] = {}
    rep_pairs: dict[str, tuple[str, str]] = {}
    order: list[str] = []
    for el in big.elements:
        for x in inner.carrier:
            if (el, x) in class_map:
                continue
            members = [(big.mul[(el, big.inv[s])], inner.act[(s, x)]) for s in k.elements]
            rep = min(members, key=lambda p: (g_index[p[0]], x_index[p[1]]))
            rid = render_id(rep)
            order.append(rid)
            rep_pairs[rid] = rep
            for member in members:
                class_map[member] = rid
    carrier = tuple(order)
    act = {}
    for el in big.elements:
        for rid in carrier:
            rg, rx = rep_pairs[rid]
            act[(el, rid)] = class_map[(big.mul[(el, rg)], rx)]
    product = action_groupoid(big, carrier, act)
    inclusion = equivariant_functor(
        inner,
        product,
        {s: s for s in k.elements},
        {x: class_map[(big.unit, x)] for x in inner.carrier},
    )
    if not weak_equivalence_report(inclusion.functor).is_weak_equivalence:
        raise InternalCheckError("balanced_product: inclusion is not a weak equivalence")
    return BalancedProduct(product, inclusion, class_map, rep_pairs)


@dataclass(frozen=True)
class DecompositionResult:
    """An equivariant weak equivalence split as inclusion ∘ projection."""

    kernel: FiniteGroup
    projection: EquivariantFunctor  # domain -> middle, surjective weak equivalence
    middle: ActionGroupoid  # image group acting on the image carrier
    inclusion: EquivariantFunctor  # middle -> codomain, weak equivalence
    quotient: QuotientConstruction  # kernel quotient of the domain
    middle_iso: EquivariantFunctor  # quotient -> middle, the identifying isomorphism
    carrier_bijection: dict[str, str] = field(repr=False)  # balanced-product class -> codomain point


def decompose(phi: EquivariantFunctor) -> DecompositionResult:
    """Factor an equivariant weak equivalence through its image action.

    The projection stage collapses the kernel of the group map (shown to act
    freely); the inclusion stage embeds the image action.  The middle is
    identified with the kernel quotient, the codomain carrier with the
    balanced product over the image, and property verdicts other than
    effectiveness are checked to agree across all three actions.
    """
    rep = weak_equivalence_report(phi.functor)
    if not rep.is_weak_equivalence:
        raise PreconditionError(
            f"decompose: functor is not a weak equivalence (es {rep.es_witness!r}, ff {rep.ff_witness!r})"
        )
    dom, cod = phi.dom_action, phi.cod_action
    g, h = dom.group, cod.group
    kernel_elements = hom_kernel(g, h, phi.group_hom)
    for el in kernel_elements:
        if el == g.unit:
            continue
        for x in dom.carrier:
            if dom.act[(el, x)] == x:
                raise InternalCheckError(f"decompose: kernel does not act freely at ({el!r}, {x!r})")

    image_elements = tuple(dict.fromkeys(e for e in h.elements if e in set(phi.group_hom.values())))
    image_group = subgroup(h, image_elements)
    image_points = set(phi.obj_map.values())
    image_carrier = tuple(y for y in cod.carrier if y in image_points)
    middle = action_groupoid(
        image_group,
        image_carrier,
        {(el, y): cod.act[(el, y)] for el in image_elements for y in image_carrier},
    )
    projection = equivariant_functor(dom, middle, dict(phi.group_hom), dict(phi.obj_map))
    if not weak_equivalence_report(projection.functor).is_ssw:
        raise InternalCheckError("decompose: projection stage is not a surjective weak equivalence")
    inclusion = equivariant_functor(
        middle,
        cod,
        {el: el for el in image_elements},
        {y: y for y in image_carrier},
    )
    if not weak_equivalence_report(inclusion.functor).is_weak_equivalence:
        raise InternalCheckError("decompose: inclusion stage is not a weak equivalence")
    if compose_functors(inclusion.functor, projection.functor) != phi.functor:
        raise InternalCheckError("decompose: stages do not compose to the input functor")

    quotient = quotient_action(dom, kernel_elements)
    middle_iso = equivariant_functor(
        quotient.quotient,
        middle,
        {r: phi.group_hom[r] for r in quotient.quotient.group.elements},
        {p: phi.obj_map[p] for p in quotient.quotient.carrier},
    )
    if not _is_equivariant_iso(middle_iso):
        raise InternalCheckError("decompose: middle is not isomorphic to the kernel quotient")
    if compose_functors(middle_iso.functor, quotient.projection.functor) != projection.functor:
        raise InternalCheckError("decompose: quotient identification does not commute")

    balanced = balanced_product(h, middle)
    carrier_bijection = {}
    for rid in balanced.product.carrier:
        el, y = balanced.rep_pairs[rid]
        carrier_bijection[rid] = cod.act[(el, y)]
    if sorted(carrier_bijection.values()) != sorted(cod.carrier):
        raise InternalCheckError("decompose: balanced product does not match the codomain carrier")

    rep_dom = property_report(dom)
    rep_mid = property_report(middle)
    rep_cod = property_report(cod)
    for name in PROPERTY_NAMES:
        if name == "effective":
            continue
        if not (rep_dom.verdict(name).value == rep_mid.verdict(name).value == rep_cod.verdict(name).value):
            raise InternalCheckError(f"decompose: property {name!r} not preserved onto the middle")

    return DecompositionResult(
        kernel=subgroup(g, kernel_elements),
        projection=projection,
        middle=middle,
        inclusion=inclusion,
        quotient=quotient,
        middle_iso=middle_iso,
        carrier_bijection=carrier_bijection,
    )


@dataclass(frozen=True)
class EquivariantStrictPullback:
    action: ActionGroupoid  # fibered-product group acting on the fibered-product carrier
    pr1: EquivariantFunctor
    pr2: EquivariantFunctor
    iso: GroupoidFunctor  # action.induced -> plain pullback apex
    plain: object = field(repr=False)  # the underlying morita.StrictPullback


def equivariant_strict_pullback(phi: EquivariantFunctor, psi: EquivariantFunctor) -> EquivariantStrictPullback:
    """Strict pullback of equivariant functors, as an action groupoid.

    The codomain need not satisfy any property list; only the feet matter.
    """
    if phi.cod_action != psi.cod_action:
        raise MismatchError("equivariant_strict_pullback: functors have different codomains")
    if not weak_equivalence_report(phi.functor).is_ssw:
        raise PreconditionError("equivariant_strict_pullback: first functor is not a surjective weak equivalence")
    g, h = phi.dom_action.group, psi.dom_action.group
    pair_elements = []
    pair_decode = {}
    for a in g.elements:
        for b in h.elements:
            if phi.group_hom[a] == psi.group_hom[b]:
                pid = render_id((a, b))
                pair_elements.append(pid)
                pair_decode[pid] = (a, b)
    pair_group = FiniteGroup(
        elements=tuple(pair_elements),
        mul={
            (p, q): render_id((g.mul[(pair_decode[p][0], pair_decode[q][0])], h.mul[(pair_decode[p][1], pair_decode[q][1])]))
            for p in pair_elements
            for q in pair_elements
        },
        unit=render_id((g.unit, h.unit)),
        inv={p: render_id((g.inv[pair_decode[p][0]], h.inv[pair_decode[p][1]])) for p in pair_elements},
    )
    carrier = []
    carrier_decode = {}
    for x in phi.dom_action.carrier:
        for y in psi.dom_action.carrier:
            if phi.obj_map[x] == psi.obj_map[y]:
                cid = render_id((x, y))
                carrier.append(cid)
                carrier_decode[cid] = (x, y)
    act = {}
    for p in pair_elements:
        a, b = pair_decode[p]
        for cid in carrier:
            x, y = carrier_decode[cid]
            act[(p, cid)] = render_id((phi.dom_action.act[(a, x)], psi.dom_action.act[(b, y)]))
    action = action_groupoid(pair_group, tuple(carrier), act)

    plain = strict_pullback(phi.functor, psi.functor)
    iso = GroupoidFunctor(
        action.induced,
        plain.apex,
        {cid: cid for cid in carrier},
        {
            action.arrow_id(p, cid): render_id(
                (
                    phi.dom_action.arrow_id(pair_decode[p][0], carrier_decode[cid][0]),
                    psi.dom_action.arrow_id(pair_decode[p][1], carrier_decode[cid][1]),
                )
            )
            for p in pair_elements
            for cid in carrier
        },
    )
    _verify_canonical_iso(iso, "equivariant_strict_pullback")
    pr1 = equivariant_functor(
        action, phi.dom_action,
        {p: pair_decode[p][0] for p in pair_elements},
        {cid: carrier_decode[cid][0] for cid in carrier},
    )
    pr2 = equivariant_functor(
        action, psi.dom_action,
        {p: pair_decode[p][1] for p in pair_elements},
        {cid: carrier_decode[cid][1] for cid in carrier},
    )
    if compose_functors(plain.pr1, iso) != pr1.functor or compose_functors(plain.pr2, iso) != pr2.functor:
        raise InternalCheckError("equivariant_strict_pullback: projections do not commute with the canonical iso")
    if not weak_equivalence_report(pr2.functor).is_ssw:
        raise InternalCheckError("equivariant_strict_pullback: second projection is not a surjective weak equivalence")
    return EquivariantStrictPullback(action, pr1, pr2, iso, plain)


def _verify_canonical_iso(iso: GroupoidFunctor, where: str):
    rep = validate_functor(iso)
    if not rep.ok:
        raise InternalCheckError(f"{where}: canonical comparison is not a functor: {rep.violations[0]}")
    if len(set(iso.obj_map.values())) != len(iso.cod.objects) or len(iso.obj_map) != len(iso.cod.objects):
        raise InternalCheckError(f"{where}: canonical comparison is not bijective on objects")
    if len(set(iso.arr_map.values())) != len(iso.cod.arrows) or len(iso.arr_map) != len(iso.cod.arrows):
        raise InternalCheckError(f"{where}: canonical comparison is not bijective on arrows")


@dataclass(frozen=True)
class EquivariantWeakPullback:
    action: ActionGroupoid  # product group acting on the anchored-triple carrier
    pr1: EquivariantFunctor
    pr3: EquivariantFunctor
    iso: GroupoidFunctor  # action.induced -> plain pullback apex
    plain: object = field(repr=False)  # the underlying morita.WeakPullback


def equivariant_weak_pullback(
    left: ActionGroupoid,
    phi: GroupoidFunctor,
    right: ActionGroupoid,
    psi: GroupoidFunctor,
) -> EquivariantWeakPullback:
    """Weak pullback of two functors out of action groupoids, as an action groupoid.

    The product group moves an anchored triple (x, k, y) to
    (g·x, psi(h, y) ∘ k ∘ phi(g, x)^(-1), h·y); the shared codomain may be any
    finite groupoid.
    """
    if phi.dom != left.induced or psi.dom != right.induced:
        raise MismatchError("equivariant_weak_pullback: functor domains are not the stated action groupoids")
    if phi.cod != psi.cod:
        raise MismatchError("equivariant_weak_pullback: functors have different codomains")
    if not weak_equivalence_report(phi).is_weak_equivalence:
        raise PreconditionError("equivariant_weak_pullback: first functor is not a weak equivalence")
    plain = weak_pullback(phi, psi)
    mid = phi.cod
    product = direct_product(left.group, right.group)
    prod_decode = {
        render_id((a, b)): (a, b) for a in left.group.elements for b in right.group.elements
    }
    carrier = plain.apex.objects
    act = {}
    for p, (a, b) in prod_decode.items():
        for oid in carrier:
            x, k, y = plain.object_triples[oid]
            ga = phi.arr_map[left.arrow_id(a, x)]
            hb = psi.arr_map[right.arrow_id(b, y)]
            k2 = mid.compose[(hb, mid.compose[(k, mid.inv[ga])])]
            act[(p, oid)] = render_id((left.act[(a, x)], k2, right.act[(b, y)]))
    action = action_groupoid(product, carrier, act)
    iso = GroupoidFunctor(
        action.induced,
        plain.apex,
        {oid: oid for oid in carrier},
        {
            action.arrow_id(p, oid): render_id(
                (
                    left.arrow_id(prod_decode[p][0], plain.object_triples[oid][0]),
                    plain.object_triples[oid][1],
                    right.arrow_id(prod_decode[p][1], plain.object_triples[oid][2]),
                )
            )
            for p in product.elements
            for oid in carrier
        },
    )
    _verify_canonical_iso(iso, "equivariant_weak_pullback")
    pr1 = equivariant_functor(
        action, left,
        {p: prod_decode[p][0] for p in product.elements},
        {oid: plain.object_triples[oid][0] for oid in carrier},
    )
    pr3 = equivariant_functor(
        action, right,
        {p: prod_decode[p][1] for p in product.elements},
        {oid: plain.object_triples[oid][2] for oid in carrier},
    )
    if compose_functors(plain.pr1, iso) != pr1.functor or compose_functors(plain.pr3, iso) != pr3.functor:
        raise InternalCheckError("equivariant_weak_pullback: projections do not commute with the canonical iso")
    if not weak_equivalence_report(pr3.functor).is_ssw:
        raise InternalCheckError("equivariant_weak_pullback: outer projection is not a surjective weak equivalence")
    return EquivariantWeakPullback(action, pr1, pr3, iso, plain)


@dataclass(frozen=True)
class EquivariantAnafunctorification:
    anafunctor: Anafunctor
    witness: TwoCellDiagram
    middle_action: ActionGroupoid
    comparison: GroupoidFunctor  # old middle -> new action middle, a weak equivalence


def equivariant_anafunctorify(
    f: GeneralizedMorphism,
    left: ActionGroupoid,
    right: ActionGroupoid,
) -> EquivariantAnafunctorification:
    """Replace a span between action groupoids by one with an action-groupoid middle.

    Points of the new middle are classes of anchored triples (a, z, b): an
    arrow a of the left foot into the left image of z and an arrow b of the
    right foot into the right image of z, two triples being identified when a
    middle arrow transports one to the other by post-composition on both
    anchors.  The product group acts by pre-composition with inverses.  Every
    stated obligation (surjectivity, equivariance, the comparison functor
    being a weak equivalence, the witness diagram, property matching) is
    re-verified; failures abort.
    """
    if f.left_foot != left.induced or f.right_foot != right.induced:
        raise MismatchError("equivariant_anafunctorify: span feet are not the stated action groupoids")
    gi, hi, k = left.induced, right.induced, f.middle
    phi, psi = f.left, f.right

    gi_into: dict[str, list[str]] = {x: [] for x in gi.objects}
    for a in gi.arrows:
        gi_into[gi.tgt[a]].append(a)
    hi_into: dict[str, list[str]] = {y: [] for y in hi.objects}
    for b in hi.arrows:
        hi_into[hi.tgt[b]].append(b)

    triples = []
    for z in k.objects:
        for a in gi_into[phi.obj_map[z]]:
            for b in hi_into[psi.obj_map[z]]:
                triples.append((a, z, b))
    index = {t: i for i, t in enumerate(triples)}
    arrows_out: dict[str, list[str]] = {z: [] for z in k.objects}
    for m in k.arrows:
        arrows_out[k.src[m]].append(m)

    class_of: dict[tuple[str, str, str], str] = {}
    rep_of_class: dict[str, tuple[str, str, str]] = {}
    carrier_order: list[str] = []
    seen: set[tuple[str, str, str]] = set()
    for t in triples:
        if t in seen:
            continue
        members = [t]
        seen.add(t)
        frontier = [t]
        while frontier:
            nxt = []
            for (a, z, b) in frontier:
                for m in arrows_out[z]:
                    t2 = (gi.compose[(phi.arr_map[m], a)], k.tgt[m], hi.compose[(psi.arr_map[m], b)])
                    if t2 not in seen:
                        seen.add(t2)
                        members.append(t2)
                        nxt.append(t2)
            frontier = nxt
        rep = min(members, key=lambda s: index[s])
        rid = render_id(rep)
        carrier_order.append(rid)
        rep_of_class[rid] = rep
        for member in members:
            class_of[member] = rid

    product = direct_product(left.group, right.group)
    prod_decode = {render_id((g, h)): (g, h) for g in left.group.elements for h in right.group.elements}
    act = {}
    for p, (g, h) in prod_decode.items():
        for rid in carrier_order:
            a, z, b = rep_of_class[rid]
            a2 = gi.compose[(a, gi.inv[left.arrow_id(g, gi.src[a])])]
            b2 = hi.compose[(b, hi.inv[right.arrow_id(h, hi.src[b])])]
            act[(p, rid)] = class_of[(a2, z, b2)]
    middle_action = action_groupoid(product, tuple(carrier_order), act)

    left_leg = equivariant_functor(
        middle_action, left,
        {p: prod_decode[p][0] for p in product.elements},
        {rid: gi.src[rep_of_class[rid][0]] for rid in carrier_order},
    )
    right_leg = equivariant_functor(
        middle_action, right,
        {p: prod_decode[p][1] for p in product.elements},
        {rid: hi.src[rep_of_class[rid][2]] for rid in carrier_order},
    )
    left_rep = weak_equivalence_report(left_leg.functor)
    if not left_rep.is_ssw:
        raise InternalCheckError("equivariant_anafunctorify: replacement left leg is not a surjective weak equivalence")
    ana = Anafunctor(left_leg.functor, right_leg.functor)

    theta_obj = {}
    theta_arr = {}
    for z in k.objects:
        theta_obj[z] = class_of[(gi.unit[phi.obj_map[z]], z, hi.unit[psi.obj_map[z]])]
    for m in k.arrows:
        g_part = left.arrow_pairs[phi.arr_map[m]][0]
        h_part = right.arrow_pairs[psi.arr_map[m]][0]
        theta_arr[m] = middle_action.arrow_id(render_id((g_part, h_part)), theta_obj[k.src[m]])
    theta = GroupoidFunctor(k, middle_action.induced, theta_obj, theta_arr)
    rep = validate_functor(theta)
    if not rep.ok:
        raise InternalCheckError(f"equivariant_anafunctorify: comparison is not a functor: {rep.violations[0]}")
    if not weak_equivalence_report(theta).is_weak_equivalence:
        raise InternalCheckError("equivariant_anafunctorify: comparison is not a weak equivalence")

    witness = TwoCellDiagram(
        top=f,
        bottom=ana,
        to_top=identity_functor(k),
        to_bottom=theta,
        left_cell=identity_transformation(compose_functors(f.left, identity_functor(k))),
        right_cell=identity_transformation(compose_functors(f.right, identity_functor(k))),
    )
    chk = validate_two_cell(witness)
    if not chk.ok:
        raise InternalCheckError(f"equivariant_anafunctorify: witness diagram does not validate: {chk.violations[0]}")

    rep_left = property_report(left)
    rep_right = property_report(right)
    rep_mid = property_report(middle_action)
    for name in ("free", "transitive"):
        if rep_mid.verdict(name).value != rep_left.verdict(name).value:
            raise InternalCheckError(f"equivariant_anafunctorify: property {name!r} not shared with the left foot")
    if rep_left.effective.value and rep_right.effective.value and not rep_mid.effective.value:
        raise InternalCheckError("equivariant_anafunctorify: effectiveness not inherited from effective feet")

    return EquivariantAnafunctorification(ana, witness, middle_action, theta)
