"""Half-edge ribbon graphs and Brauer graphs.

A ribbon graph on half-edges ``0..H-1`` is a pair of permutations:

* ``nxt`` -- the counterclockwise successor of a half-edge around its vertex,
* ``pair`` -- a fixed-point-free involution exchanging the two halves of
  every edge.

Vertices are the orbits of ``nxt``, edges the orbits of ``pair``, and faces
the orbits of ``pair o nxt^-1`` (one orbit per boundary component of the
thickened surface; an edge bordered twice by the same face counts twice
towards its perimeter).

A Brauer graph carries in addition a positive integer multiplicity per
vertex and an optional set of deformed loops, each with a nonzero rational
scalar.  A deformed loop must be a loop whose corresponding quiver arrow is
a cyclic loop, i.e. the loop encircles a face of perimeter one on exactly
one of its two sides.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction


class RibbonGraphError(ValueError):
    pass


class NotPermutation(RibbonGraphError):
    pass


class PairHasFixedPoint(RibbonGraphError):
    pass


class Disconnected(RibbonGraphError):
    pass


class InternalParityError(RibbonGraphError):
    pass


class DeformedLoopInvalid(RibbonGraphError):
    pass


@dataclass(frozen=True)
class FaceData:
    """Face orbits of ``pair o nxt^-1`` and the multiset of their lengths."""

    orbits: tuple
    perimeters: tuple  # sorted

    @property
    def count(self):
        return len(self.orbits)


def _orbits(perm):
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        h = perm[start]
        while h != start:
            seen[h] = True
            orb.append(h)
            h = perm[h]
        out.append(tuple(orb))
    return tuple(out)


class RibbonGraph:
    """Connected ribbon graph given by the two half-edge permutations."""

    __slots__ = ("n", "nxt", "pair", "prev", "vertices", "vertex_of",
                 "edges", "edge_of", "_faces")

    def __init__(self, nxt, pair, check=True):
        self.n = len(nxt)
        self.nxt = tuple(nxt)
        self.pair = tuple(pair)
        if check:
            self._check()
        prev = [0] * self.n
        for h in range(self.n):
            prev[self.nxt[h]] = h
        self.prev = tuple(prev)
        self.vertices = _orbits(self.nxt)
        vertex_of = [0] * self.n
        for i, orb in enumerate(self.vertices):
            for h in orb:
                vertex_of[h] = i
        self.vertex_of = tuple(vertex_of)
        edges = sorted(tuple(sorted((h, self.pair[h]))) for h in range(self.n)
                       if h < self.pair[h])
        self.edges = tuple(edges)
        edge_of = [0] * self.n
        for i, (a, b) in enumerate(self.edges):
            edge_of[a] = edge_of[b] = i
        self.edge_of = tuple(edge_of)
        self._faces = None

    def _check(self):
        n = self.n
        if n == 0 or n % 2:
            raise NotPermutation("need a positive even number of half-edges, got %d" % n)
        for name, perm in (("next", self.nxt), ("pair", self.pair)):
            if sorted(perm) != list(range(n)):
                bad = next(h for h in range(n)
                           if not (0 <= perm[h] < n) or perm.count(perm[h]) > 1)
                raise NotPermutation("%s is not a permutation at half-edge %d" % (name, bad))
        for h in range(n):
            if self.pair[h] == h:
                raise PairHasFixedPoint("pair fixes half-edge %d" % h)
            if self.pair[self.pair[h]] != h:
                raise NotPermutation("pair is not an involution at half-edge %d" % h)
        # connectivity under the group generated by nxt and pair
        seen = {0}
        stack = [0]
        while stack:
            h = stack.pop()
            for g in (self.nxt[h], self.pair[h]):
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        if len(seen) != n:
            bad = min(set(range(n)) - seen)
            raise Disconnected("half-edge %d is unreachable from half-edge 0" % bad)

    def valency(self, v):
        return len(self.vertices[v])

    def is_loop(self, e):
        a, b = self.edges[e]
        return self.vertex_of[a] == self.vertex_of[b]

    def faces(self):
        """Orbits of the face permutation ``h -> pair[prev[h]]``."""
        if self._faces is None:
            phi = tuple(self.pair[self.prev[h]] for h in range(self.n))
            orbs = _orbits(phi)
            self._faces = FaceData(orbs, tuple(sorted(len(o) for o in orbs)))
        return self._faces

    def genus(self):
        f = self.faces().count
        v, e = len(self.vertices), len(self.edges)
        if (v - e + f) % 2:
            raise InternalParityError("V-E+F=%d is odd" % (v - e + f))
        return (2 - v + e - f) // 2

    def is_bipartite(self):
        """True iff the underlying graph is 2-colorable; loops force False."""
        color = {0: 0}
        stack = [0]
        while stack:
            v = stack.pop()
            for h in self.vertices[v]:
                w = self.vertex_of[self.pair[h]]
                if w == v:
                    return False
                if w in color:
                    if color[w] == color[v]:
                        return False
                else:
                    color[w] = 1 - color[v]
                    stack.append(w)
        return True

    def mirror(self):
        """Reverse the orientation: next becomes its inverse."""
        return RibbonGraph(self.prev, self.pair, check=False)


def validate(raw_next, raw_pair):
    """Check the two arrays and return the ribbon graph they define."""
    if len(raw_next) != len(raw_pair):
        raise NotPermutation("next and pair must have equal length")
    return RibbonGraph(tuple(raw_next), tuple(raw_pair))


class BrauerGraph:
    """A ribbon graph with vertex multiplicities and optional deformed loops.

    ``mult`` is aligned with ``ribbon.vertices`` (which are sorted by their
    least half-edge); ``deformed`` maps edge indices to nonzero rational
    scalars.
    """

    __slots__ = ("ribbon", "mult", "deformed", "_canon")

    def __init__(self, ribbon, mult=None, deformed=None, check=True):
        self.ribbon = ribbon
        if mult is None:
            mult = (1,) * len(ribbon.vertices)
        self.mult = tuple(int(m) for m in mult)
        self.deformed = {int(e): Fraction(t) for e, t in (deformed or {}).items()}
        if check:
            self._check()
        self._canon = None

    def _check(self):
        rg = self.ribbon
        if len(self.mult) != len(rg.vertices):
            raise RibbonGraphError("need one multiplicity per vertex")
        for v, m in enumerate(self.mult):
            if m < 1:
                raise RibbonGraphError("multiplicity of vertex %d must be >= 1" % v)
        for e, t in self.deformed.items():
            if not (0 <= e < len(rg.edges)):
                raise DeformedLoopInvalid("no edge with index %d" % e)
            if t == 0:
                raise DeformedLoopInvalid("deformed loop %d needs a nonzero scalar" % e)
            a, b = rg.edges[e]
            if rg.vertex_of[a] != rg.vertex_of[b]:
                raise DeformedLoopInvalid("deformed edge %d is not a loop" % e)
            adj = (rg.nxt[a] == b, rg.nxt[b] == a)
            if not any(adj):
                raise DeformedLoopInvalid(
                    "deformed loop %d does not encircle a face of perimeter 1" % e)
            if all(adj):
                raise DeformedLoopInvalid(
                    "deformed loop %d bounds faces of perimeter 1 on both sides" % e)

    # -- convenience ------------------------------------------------------

    @property
    def n(self):
        return self.ribbon.n

    def mult_at_halfedge(self, h):
        return self.mult[self.ribbon.vertex_of[h]]

    def deformed_arrows(self):
        """Half-edges h with nxt[h] = pair[h] on a deformed edge (one per loop)."""
        rg = self.ribbon
        out = {}
        for e, t in self.deformed.items():
            a, b = rg.edges[e]
            h = a if rg.nxt[a] == b else b
            out[h] = t
        return out

    def mirror(self):
        rg = self.ribbon.mirror()
        # vertex orbits are the same sets, but their sorted order is stable
        old_v = {min(orb): m for orb, m in zip(self.ribbon.vertices, self.mult)}
        mult = tuple(old_v[min(orb)] for orb in rg.vertices)
        return BrauerGraph(rg, mult, dict(self.deformed), check=False)

    # -- canonical form ---------------------------------------------------

    def _trace(self, start):
        rg = self.ribbon
        order = [start]
        lab = {start: 0}
        i = 0
        while i < len(order):
            h = order[i]
            i += 1
            for g in (rg.nxt[h], rg.pair[h]):
                if g not in lab:
                    lab[g] = len(order)
                    order.append(g)
        enc = []
        for h in order:
            e = rg.edge_of[h]
            t = self.deformed.get(e)
            enc.append((lab[rg.nxt[h]], lab[rg.pair[h]],
                        self.mult[rg.vertex_of[h]],
                        str(t) if t is not None else ""))
        return enc, order

    def canonical_form(self):
        """Bytes equal iff the graphs are isomorphic orientation-preservingly.

        Minimizes the breadth-first trace of (next, pair, mult, deformed)
        over all choices of starting half-edge.
        """
        if self._canon is None:
            best = min(self._trace(s)[0] for s in range(self.n))
            self._canon = repr(best).encode()
        return self._canon

    def canonical_graph(self):
        """Relabel half-edges 0..H-1 in canonical trace order.

        Returns ``(graph, relabel)`` where ``relabel[old] = new``.
        """
        best = None
        for s in range(self.n):
            enc, order = self._trace(s)
            if best is None or enc < best[0]:
                best = (enc, order)
        _, order = best
        relabel = [0] * self.n
        for new, old in enumerate(order):
            relabel[old] = new
        rg = self.ribbon
        nxt = [0] * self.n
        pair = [0] * self.n
        for old in range(self.n):
            nxt[relabel[old]] = relabel[rg.nxt[old]]
            pair[relabel[old]] = relabel[rg.pair[old]]
        new_rg = RibbonGraph(tuple(nxt), tuple(pair), check=False)
        mult = tuple(self.mult[rg.vertex_of[order[min(orb)]]]
                     for orb in new_rg.vertices)
        deformed = {}
        for e, t in self.deformed.items():
            a, _ = rg.edges[e]
            deformed[new_rg.edge_of[relabel[a]]] = t
        g = BrauerGraph(new_rg, mult, deformed, check=False)
        return g, tuple(relabel)

    def edge_relabel_map(self):
        """Edge index map old -> new induced by canonical relabeling."""
        canon, relabel = self.canonical_graph()
        out = {}
        for e, (a, _) in enumerate(self.ribbon.edges):
            out[e] = canon.ribbon.edge_of[relabel[a]]
        return out


def from_cycles(rotations, pairs, mults=None, deformed=None):
    """Build a Brauer graph from labelled data.

    ``rotations``: one sequence of half-edge labels per vertex, in
    counterclockwise order.  ``pairs``: the two labels of each edge.
    ``mults``: one multiplicity per rotation (default 1).  ``deformed``:
    optional map label -> scalar marking the edge containing that label.
    Returns ``(graph, label_to_index)``.
    """
    idx = {}
    for rot in rotations:
        for lab in rot:
            if lab in idx:
                raise RibbonGraphError("label %r appears twice" % (lab,))
            idx[lab] = len(idx)
    n = len(idx)
    nxt = [0] * n
    for rot in rotations:
        for i, lab in enumerate(rot):
            nxt[idx[lab]] = idx[rot[(i + 1) % len(rot)]]
    pair = [-1] * n
    for a, b in pairs:
        pair[idx[a]] = idx[b]
        pair[idx[b]] = idx[a]
    if any(p < 0 for p in pair):
        bad = [lab for lab, i in idx.items() if pair[i] < 0]
        raise RibbonGraphError("labels %r missing from the edge pairing" % (bad,))
    rg = RibbonGraph(tuple(nxt), tuple(pair))
    if mults is None:
        mult = None
    else:
        by_vertex = {}
        for rot, m in zip(rotations, mults):
            by_vertex[rg.vertex_of[idx[rot[0]]]] = m
        mult = tuple(by_vertex[v] for v in range(len(rg.vertices)))
    dfm = {}
    for lab, t in (deformed or {}).items():
        dfm[rg.edge_of[idx[lab]]] = Fraction(t)
    return BrauerGraph(rg, mult, dfm), idx


# -- stock examples used all over the test-suite --------------------------

def star(n_edges, center_mult=1, leaf_mult=1):
    """Brauer star: one central vertex of valency n, n leaves."""
    center = ["c%d" % i for i in range(n_edges)]
    rots = [center] + [["l%d" % i] for i in range(n_edges)]
    prs = [("c%d" % i, "l%d" % i) for i in range(n_edges)]
    mults = [center_mult] + [leaf_mult] * n_edges
    g, _ = from_cycles(rots, prs, mults)
    return g


def path_graph(n_edges, mults=None):
    """A path with n edges (vertices of valency <= 2)."""
    rots = [["a0"]]
    for i in range(n_edges - 1):
        rots.append(["b%d" % i, "a%d" % (i + 1)])
    rots.append(["b%d" % (n_edges - 1)])
    prs = [("a%d" % i, "b%d" % i) for i in range(n_edges)]
    g, _ = from_cycles(rots, prs, mults)
    return g


def polygon(n_edges, mults=None):
    """An n-cycle: n vertices of valency 2 (n >= 2 uses distinct edges)."""
    rots = [["a%d" % i, "b%d" % ((i - 1) % n_edges)] for i in range(n_edges)]
    prs = [("a%d" % i, "b%d" % i) for i in range(n_edges)]
    g, _ = from_cycles(rots, prs, mults)
    return g


# -- isomorphism oracle and enumeration -----------------------------------

def isomorphic_bruteforce(g1, g2):
    """Exhaustive isomorphism test, independent of canonical_form.

    Tries every image of half-edge 0; a bijection commuting with both
    permutations is forced from that single choice because the two
    permutations act transitively.
    """
    if g1.n != g2.n:
        return False
    r1, r2 = g1.ribbon, g2.ribbon
    for target in range(g2.n):
        sigma = {0: target}
        stack = [0]
        ok = True
        while stack and ok:
            h = stack.pop()
            for f1, f2 in ((r1.nxt, r2.nxt), (r1.pair, r2.pair)):
                a, b = f1[h], f2[sigma[h]]
                if a in sigma:
                    if sigma[a] != b:
                        ok = False
                        break
                else:
                    sigma[a] = b
                    stack.append(a)
        if not ok or len(sigma) != g1.n:
            continue
        if len(set(sigma.values())) != g1.n:
            continue
        if any(g1.mult[r1.vertex_of[h]] != g2.mult[r2.vertex_of[sigma[h]]]
               for h in range(g1.n)):
            continue
        ok_d = True
        for e, t in g1.deformed.items():
            a, _ = r1.edges[e]
            if g2.deformed.get(r2.edge_of[sigma[a]]) != t:
                ok_d = False
                break
        if not ok_d or len(g1.deformed) != len(g2.deformed):
            continue
        return True
    return False


def _single_edge_graphs():
    segment = BrauerGraph(RibbonGraph((0, 1), (1, 0)))
    loop = BrauerGraph(RibbonGraph((1, 0), (1, 0)))
    return [segment, loop]


def _grow_by_one_edge(g):
    """All ways of attaching one extra edge to g (modulo nothing; callers dedupe)."""
    rg = g.ribbon
    h_new, k_new = rg.n, rg.n + 1
    base_rots = [list(orb) for orb in rg.vertices]
    slots = [("v", h) for h in range(rg.n)] + [("leaf",)]
    out = []
    for s1 in slots:
        for s2 in slots + [("new",)]:
            if s1 == ("leaf",) and s2 in (("leaf",), ("new",)):
                continue  # disconnected or standalone loop
            rots = [list(r) for r in base_rots]

            def place(half, slot):
                if slot == ("leaf",):
                    rots.append([half])
                elif slot == ("new",):
                    for r in rots:
                        if h_new in r:
                            r.insert(r.index(h_new) + 1, half)
                            return
                else:
                    _, anchor = slot
                    for r in rots:
                        if anchor in r:
                            r.insert(r.index(anchor) + 1, half)
                            return

            place(h_new, s1)
            place(k_new, s2)
            nxt = [0] * (rg.n + 2)
            for r in rots:
                for i, h in enumerate(r):
                    nxt[h] = r[(i + 1) % len(r)]
            pair = list(rg.pair) + [k_new, h_new]
            try:
                new_rg = RibbonGraph(tuple(nxt), tuple(pair))
            except RibbonGraphError:
                continue
            out.append(BrauerGraph(new_rg))
    return out


def enumerate_graphs(max_edges, max_mult=1):
    """All connected Brauer graphs with <= max_edges edges, multiplicities in
    1..max_mult and no deformed loops, one representative per isomorphism
    class, sorted by canonical form."""
    by_canon = {}
    level = []
    for g in _single_edge_graphs():
        key = g.canonical_form()
        if key not in by_canon:
            by_canon[key] = g
            level.append(g)
    ribbon_classes = list(level)
    for _ in range(2, max_edges + 1):
        nxt_level = []
        seen = set()
        for g in level:
            for child in _grow_by_one_edge(g):
                key = child.canonical_form()
                if key not in seen:
                    seen.add(key)
                    nxt_level.append(child)
        level = nxt_level
        ribbon_classes.extend(level)
    if max_mult == 1:
        result = {g.canonical_form(): g for g in ribbon_classes}
    else:
        result = {}
        for g in ribbon_classes:
            nv = len(g.ribbon.vertices)
            for assignment in itertools.product(range(1, max_mult + 1), repeat=nv):
                bg = BrauerGraph(g.ribbon, assignment)
                key = bg.canonical_form()
                if key not in result:
                    result[key] = bg
    return [result[k] for k in sorted(result)]


def enumerate_by_permutation_scan(n_edges, max_mult=1):
    """Independent generator: scan every vertex permutation of 2E half-edges
    against the fixed pairing (0 1)(2 3)..., filter connected, dedupe.

    Exponential in E; used as a cross-check for small sizes.
    """
    n = 2 * n_edges
    pair = tuple(i + 1 if i % 2 == 0 else i - 1 for i in range(n))
    found = {}
    for perm in itertools.permutations(range(n)):
        try:
            rg = RibbonGraph(perm, pair)
        except RibbonGraphError:
            continue
        for assignment in itertools.product(range(1, max_mult + 1),
                                            repeat=len(rg.vertices)):
            bg = BrauerGraph(rg, assignment)
            key = bg.canonical_form()
            if key not in found:
                found[key] = bg
    return [found[k] for k in sorted(found)]
