"""Derived invariants of Brauer graph algebras and the equivalence decision.

The bundle collects every invariant that is known to be preserved under
derived equivalence: the vertex/edge/face counts, the perimeter and
multiplicity multisets, bipartiteness, the genus, the rank of the stable
Grothendieck group, the rank of the maximal torus of the identity component
of the outer automorphism group (when the formula applies), and the
winding-number invariants of the associated line field of ribbon type.

Two Brauer graph algebras with at least two simple modules each are derived
equivalent exactly when the counts, perimeters, multiplicities and the
bipartite flag all agree; ``derived_equivalent`` implements that test and
reports every failed condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import is_caterpillar


@dataclass(frozen=True)
class InvariantBundle:
    v_count: int
    e_count: int
    f_count: int
    perimeters: tuple          # sorted multiset
    multiplicities: tuple      # sorted multiset
    bipartite: bool
    genus: int
    stable_k0_rank: int
    torus_rank: int | None
    omega_boundary: tuple      # sorted multiset of boundary winding numbers
    omega_punctures: tuple     # sorted multiset of puncture winding numbers
    sigma_lf: int              # 0 iff bipartite
    gcd_lf: int | None         # defined for genus >= 1 only
    notes: tuple = field(default=(), compare=False)

    def comparison_key(self):
        """The four conditions of the derived-equivalence criterion."""
        return ((self.v_count, self.e_count, self.f_count),
                self.perimeters, self.multiplicities, self.bipartite)

    def as_dict(self):
        out = {
            "v_count": self.v_count,
            "e_count": self.e_count,
            "f_count": self.f_count,
            "perimeters": list(self.perimeters),
            "multiplicities": list(self.multiplicities),
            "bipartite": self.bipartite,
            "genus": self.genus,
            "stable_k0_rank": self.stable_k0_rank,
            "torus_rank": self.torus_rank,
            "omega_boundary": list(self.omega_boundary),
            "omega_punctures": list(self.omega_punctures),
            "sigma_lf": self.sigma_lf,
            "gcd_lf": self.gcd_lf,
        }
        if self.notes:
            out["notes"] = dict(self.notes)
        return out


# Each face corner contributes -1 to the winding number of its boundary
# component, so the boundary winding numbers are the negated perimeters.
BOUNDARY_WINDING_SIGN = -1


def invariant_bundle(g):
    """All derived invariants of the Brauer graph in one comparable record."""
    rg = g.ribbon
    faces = rg.faces()
    v, e, f = len(rg.vertices), len(rg.edges), faces.count
    bip = rg.is_bipartite()
    genus = rg.genus()
    d = len(g.deformed)
    notes = {}

    stable_k0 = e - v + 1 if bip else e - v

    torus_rank = None
    if e < 2:
        notes["torus_rank"] = "absent: local algebra (fewer than two simple modules)"
    elif is_caterpillar(g):
        notes["torus_rank"] = "absent: caterpillar quiver, rank formula excluded"
    else:
        torus_rank = e - v - d + 2

    gcd_lf = None
    if genus >= 1:
        gcd_lf = 2 if bip else 1
    else:
        notes["gcd_lf"] = "absent: defined for genus >= 1 only"

    mults = tuple(sorted(g.mult))
    if e == 1:
        a, b = rg.edges[0]
        is_loop = rg.vertex_of[a] == rg.vertex_of[b]
        if (is_loop and g.mult[0] == 1) or (not is_loop and mults == (2, 2)):
            notes["brauer_graph_unique"] = (
                "exceptional local case: the graph is not determined by the algebra")

    return InvariantBundle(
        v_count=v, e_count=e, f_count=f,
        perimeters=faces.perimeters,
        multiplicities=mults,
        bipartite=bip,
        genus=genus,
        stable_k0_rank=stable_k0,
        torus_rank=torus_rank,
        omega_boundary=tuple(sorted(BOUNDARY_WINDING_SIGN * p
                                    for p in faces.perimeters)),
        omega_punctures=(0,) * v,
        sigma_lf=0 if bip else 1,
        gcd_lf=gcd_lf,
        notes=tuple(sorted(notes.items())),
    )


CONDITIONS = ("counts", "perimeters", "multiplicities", "bipartite")


@dataclass(frozen=True)
class EquivalenceVerdict:
    kind: str                  # "equivalent" | "not_equivalent" | "out_of_scope"
    failed: tuple = ()
    reason: str | None = None

    @property
    def equivalent(self):
        return self.kind == "equivalent"

    def render(self):
        if self.kind == "equivalent":
            return "Equivalent"
        if self.kind == "not_equivalent":
            return "NotEquivalent: " + ", ".join(self.failed)
        return "OutOfScope: " + (self.reason or "")


def derived_equivalent(g1, g2):
    """Decide derived equivalence of two Brauer graph algebras.

    Out of scope when either graph has fewer than two edges (local algebra)
    or carries deformed loops (the criterion is stated for Brauer graph
    algebras proper).
    """
    for name, g in (("first", g1), ("second", g2)):
        if len(g.ribbon.edges) < 2:
            return EquivalenceVerdict(
                "out_of_scope",
                reason="%s graph has fewer than two edges" % name)
        if g.deformed:
            return EquivalenceVerdict(
                "out_of_scope",
                reason="%s graph has deformed loops" % name)
    b1, b2 = invariant_bundle(g1), invariant_bundle(g2)
    failed = []
    if (b1.v_count, b1.e_count, b1.f_count) != (b2.v_count, b2.e_count, b2.f_count):
        failed.append("counts")
    if b1.perimeters != b2.perimeters:
        failed.append("perimeters")
    if b1.multiplicities != b2.multiplicities:
        failed.append("multiplicities")
    if b1.bipartite != b2.bipartite:
        failed.append("bipartite")
    if failed:
        return EquivalenceVerdict("not_equivalent", tuple(failed))
    return EquivalenceVerdict("equivalent")


def partition_into_classes(graphs):
    """Group graphs by the four-condition key; deterministic ordering.

    Classes and their members are sorted by canonical form.  Raises on
    out-of-scope graphs.
    """
    for g in graphs:
        if len(g.ribbon.edges) < 2:
            raise ValueError("graph with fewer than two edges is out of scope")
        if g.deformed:
            raise ValueError("graph with deformed loops is out of scope")
    buckets = {}
    for g in graphs:
        key = invariant_bundle(g).comparison_key()
        buckets.setdefault(key, []).append(g)
    classes = [sorted(members, key=lambda g: g.canonical_form())
               for members in buckets.values()]
    classes.sort(key=lambda cls: cls[0].canonical_form())
    return classes
