"""Weak-equivalence reports, pullbacks, and the skeleton oracle.

Run:  python demos/02_weak_equivalences.py
"""

from gpdkit import (
    GroupoidFunctor,
    action_groupoid,
    cyclic_group,
    identity_functor,
    locally_split_witness,
    morita_oracle,
    skeleton_invariant,
    strict_pullback,
    terminal_groupoid,
    weak_equivalence_report,
    weak_pullback,
)

c2 = cyclic_group(2)
swap = action_groupoid(
    c2, ("0", "1"),
    {("r0", "0"): "0", ("r0", "1"): "1", ("r1", "0"): "1", ("r1", "1"): "0"},
)
terminal = terminal_groupoid()

# A functor is a weak equivalence when the arrow-anchored object map is
# surjective and the triple map (src, tgt, image) is bijective.  The report
# carries a witness for whichever condition fails.
collapse = GroupoidFunctor(
    swap.induced, terminal,
    {x: "*" for x in swap.induced.objects},
    {a: "u" for a in swap.induced.arrows},
)
rep = weak_equivalence_report(collapse)
print("collapse of a free transitive orbit:")
print("  weak equivalence:", rep.is_weak_equivalence, "| surjective on objects:", rep.object_map_surjective)

# Z/2 fixing a point gives a one-object groupoid with a genuine loop; the
# collapse to the terminal groupoid is NOT a weak equivalence.
loop = action_groupoid(c2, ("p",), {("r0", "p"): "p", ("r1", "p"): "p"})
to_terminal = GroupoidFunctor(
    loop.induced, terminal, {"p": "*"}, {a: "u" for a in loop.induced.arrows}
)
rep = weak_equivalence_report(to_terminal)
print("\ncollapse of a loop:")
print("  weak equivalence:", rep.is_weak_equivalence, "| failing triple:", rep.ff_witness)

# The skeleton oracle judges Morita equivalence independently: connected
# components matched by isotropy groups up to isomorphism.
print("\nmorita oracle:")
print("  swap orbit ~ terminal:", morita_oracle(swap.induced, terminal))
print("  loop ~ terminal:", morita_oracle(loop.induced, terminal))
print("  loop skeleton:", [(size, iso.order) for size, iso in skeleton_invariant(loop.induced).components])

# Pullbacks: the strict one pairs objects and arrows with equal images; the
# weak one anchors each pair with a connecting arrow.  Their projections
# inherit the class of the functor they pull back.
sp = strict_pullback(collapse, collapse)
print("\nstrict self-pullback of the collapse:", len(sp.apex.objects), "objects,", len(sp.apex.arrows), "arrows")
print("  pr2 surjective weak equivalence:", weak_equivalence_report(sp.pr2).is_ssw)

wp = weak_pullback(identity_functor(loop.induced), identity_functor(loop.induced))
print("anchored self-pullback of the loop groupoid:", len(wp.apex.objects), "objects,", len(wp.apex.arrows), "arrows")
print("  comparison component at each object is its anchor arrow")

# Every weak equivalence splits locally: a covering groupoid projects onto
# the codomain while a section lands back in the domain, up to a 2-cell.
witness = locally_split_witness(collapse)
print("\nlocally split witness cover:", len(witness.cover.objects), "objects;",
      "projection surjective weak equivalence:", weak_equivalence_report(witness.projection).is_ssw)
