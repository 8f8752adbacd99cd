"""A-infinity categories of graded arc systems on punctured surfaces.

An arc system is a Brauer graph whose complement faces are marked as discs
or annuli, together with an integer degree for every arrow (oriented
intersection of consecutive arcs) and an integer winding number for every
arc.  The category has one object per arc; morphisms are the path classes
of the modified Brauer graph algebra, whose cycle identifications carry the
sign (-1)^winding of the arc they are based at.

Operations:

* ``mu2(a, b) = (-1)^{|b|} ab`` with the product taken in the modified
  algebra (``b`` is the first-applied input);
* higher operations supported on the disc sequences: with ``a_1 .. a_n``
  the cyclic sequence of corner arrows of a disc face,

  - ``mu(b a_n, ..., a_1) = b``                       for ``b a_n != 0``
  - ``mu(a_n, ..., a_1 b) = (-1)^{|b|} b``            for ``a_1 b != 0``
  - ``mu(a_n, .., a_{r+1}, a_r (b a_r)^*, b a_r, a_{r-1}, .., a_2)
      = (-1)^circ a_1^*``                             for ``b a_r != 0``

  where ``p^*`` complements ``p`` to the full cycle power and ``circ`` sums
  the degrees ``|a_1| .. |a_{r-1}|`` and ``|b a_r|`` with the windings of
  the arcs ``delta_2 .. delta_r``.

Tuples are handled in application order (first-applied input first); the
docstrings above use the conventional right-to-left display.

The three sign sites (the exponent of mu2, the dagger sign of the trivial
extension, the circ sign above) each carry a toggle; ``convention_search``
finds the combination under which the A-infinity relations hold on a
fixture suite, and the default freezes the winner.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .algebra import AlgebraBasis


class NotAdmissible(ValueError):
    pass


class GradingViolation(ValueError):
    pass


class NotComposable(ValueError):
    pass


class MalformedCorrespondence(ValueError):
    pass


class AmbiguousOperation(RuntimeError):
    """Two overlapping operation patterns disagree on one input tuple;
    indicates an inconsistent sign convention."""



@dataclass(frozen=True)
class SignConvention:
    """The three independent sign sites of the operation formulas.

    ``mu2_first``: mu2 carries (-1)^degree of the first-applied input
    (alternate: the second).  ``dagger_dual``: the trivial-extension sign
    exponent includes the reduced degree of the dual input (alternate:
    originals only).  ``circ_first``: the third higher operation's sign
    includes the degree of the omitted arrow a_1 (alternate: not).
    """

    mu2_first: bool = True
    dagger_dual: bool = True
    circ_first: bool = True


DEFAULT_CONVENTION = SignConvention()

ALL_CONVENTIONS = tuple(SignConvention(*bits) for bits in
                        itertools.product((True, False), repeat=3))


def _sign(k):
    return 1 if k % 2 == 0 else -1


# -- graded arc systems ----------------------------------------------------


class GradedArcSystem:
    """A Brauer graph with face marks, arrow degrees and arc windings.

    Validates admissibility (every puncture touches an annulus face), the
    degree sum over every disc face, degree consistency of the two cycle
    powers at each arc, and the vanishing degree of valency-one loops.
    """

    def __init__(self, graph, face_marks, degrees, windings):
        if graph.deformed:
            raise NotAdmissible("arc systems carry no deformed loops")
        self.graph = graph
        rg = graph.ribbon
        faces = rg.faces()
        self.face_marks = tuple(face_marks)
        if len(self.face_marks) != faces.count:
            raise NotAdmissible("need one mark per face")
        for mark in self.face_marks:
            if mark not in ("disc", "annulus"):
                raise NotAdmissible("unknown face mark %r" % (mark,))
        if "annulus" not in self.face_marks:
            raise NotAdmissible("the surface needs at least one boundary component")
        self.degrees = tuple(int(d) for d in degrees)
        self.windings = tuple(int(w) for w in windings)
        if len(self.degrees) != rg.n:
            raise GradingViolation("need one degree per arrow")
        if len(self.windings) != len(rg.edges):
            raise GradingViolation("need one winding per arc")

        touches_annulus = set()
        for fi, orb in enumerate(faces.orbits):
            if self.face_marks[fi] == "annulus":
                for h in orb:
                    touches_annulus.add(rg.vertex_of[h])
        for v in range(len(rg.vertices)):
            if v not in touches_annulus:
                raise NotAdmissible(
                    "puncture %d cannot be connected to the boundary" % v)

        for h in range(rg.n):
            if rg.nxt[h] == h and self.degrees[h] != 0:
                raise GradingViolation(
                    "the loop at the valency-one puncture of arrow %d must have degree 0" % h)

        for fi, orb in enumerate(faces.orbits):
            if self.face_marks[fi] != "disc":
                continue
            if len(orb) < 3:
                raise NotAdmissible(
                    "disc face of perimeter %d; discs need perimeter >= 3" % len(orb))
            total = sum(self.degrees[rg.prev[h]] for h in orb)
            if total != len(orb) - 2:
                raise GradingViolation(
                    "disc face degree sum %d != %d" % (total, len(orb) - 2))

        for e, (h1, h2) in enumerate(rg.edges):
            if self._cycle_degree(h1) != self._cycle_degree(h2):
                raise GradingViolation(
                    "the two cycle powers at arc %d have different degrees" % e)

    def _cycle_degree(self, h):
        rg = self.graph.ribbon
        m = self.graph.mult_at_halfedge(h)
        total = 0
        g = h
        while True:
            total += self.degrees[g]
            g = rg.nxt[g]
            if g == h:
                break
        return m * total

    @classmethod
    def seed(cls, graph):
        """The arc system of the Brauer graph itself: all faces annuli,
        every arrow of degree zero, every arc of winding zero."""
        rg = graph.ribbon
        return cls(graph, ("annulus",) * rg.faces().count,
                   (0,) * rg.n, (0,) * len(rg.edges))

    def disc_sequences(self):
        """Chronologically composable corner-arrow cycles of the disc faces.

        For a face orbit (h_1, .., h_n) the corner arrows are prev(h_i),
        read against the face orientation so that consecutive arrows
        compose.
        """
        rg = self.graph.ribbon
        out = []
        for fi, orb in enumerate(rg.faces().orbits):
            if self.face_marks[fi] != "disc":
                continue
            arrows = tuple(rg.prev[h] for h in reversed(orb))
            arcs = tuple(rg.edge_of[a] for a in arrows)
            out.append((arrows, arcs))
        return out


def polygon_disc_system(n_arcs, disc_degrees, windings=None):
    """An n-gon of arcs bounding one disc face, the outer face an annulus.

    ``disc_degrees`` are the degrees of the disc-sequence arrows (must sum
    to n-2); the remaining arrow degrees are solved from the requirement
    that the two cycle powers at every arc have equal degree.
    """
    from .ribbon import from_cycles

    n = n_arcs
    if len(disc_degrees) != n or sum(disc_degrees) != n - 2:
        raise GradingViolation("disc degrees must sum to %d" % (n - 2))
    rots = [["a%d" % i, "b%d" % ((i - 1) % n)] for i in range(n)]
    pairs = [("a%d" % i, "b%d" % i) for i in range(n)]
    g, ix = from_cycles(rots, pairs)
    rg = g.ribbon
    faces = rg.faces()
    disc_face = next(fi for fi, orb in enumerate(faces.orbits)
                     if ix["a0"] in orb)
    marks = ["annulus"] * faces.count
    marks[disc_face] = "disc"
    degrees = [0] * rg.n
    # the disc corners are the arrows prev(h) for h on the disc face
    orb = faces.orbits[disc_face]
    corner = [rg.prev[h] for h in reversed(orb)]
    for arrow, d in zip(corner, disc_degrees):
        degrees[arrow] = d
    # solve the a-side degrees from cycle-degree consistency at each arc
    db = {i: degrees[ix["b%d" % i]] for i in range(n)}
    da = {0: 0}
    for i in range(n - 1):
        da[i + 1] = da[i] + db[(i - 1) % n] - db[i]
    for i in range(n):
        degrees[ix["a%d" % i]] = da[i]
    wind = [0] * len(rg.edges)
    for lab, w in (windings or {}).items():
        wind[rg.edge_of[ix[lab]]] = w
    return GradedArcSystem(g, marks, degrees, wind)


def arc_system_from_parsed(parsed):
    """Build a GradedArcSystem from a ParsedFile (bgfile.parse output)."""
    from .bgfile import to_brauer_graph

    g, label_ix = to_brauer_graph(parsed)
    rg = g.ribbon
    faces = rg.faces()
    marks = ["annulus"] * faces.count
    face_of = {}
    for fi, orb in enumerate(faces.orbits):
        for h in orb:
            face_of[h] = fi
    for lab, mark in parsed.face_marks:
        marks[face_of[label_ix[lab]]] = mark
    degrees = [0] * rg.n
    for lab, d in parsed.degrees.items():
        degrees[label_ix[lab]] = d
    windings = [0] * len(rg.edges)
    for lab, w in parsed.windings.items():
        windings[rg.edge_of[label_ix[lab]]] = w
    return GradedArcSystem(g, marks, degrees, windings)


# -- the Brauer graph category ---------------------------------------------


class BrauerGraphCategory:
    """Objects are the arcs; morphisms the path classes of the modified
    Brauer graph algebra; operations as in the module docstring."""

    def __init__(self, system, convention=DEFAULT_CONVENTION):
        self.system = system
        self.convention = convention
        g = system.graph
        rg = g.ribbon
        self.rg = rg
        self.objects = list(range(len(rg.edges)))
        self.socle_len = {h: g.mult_at_halfedge(h) * rg.valency(rg.vertex_of[h])
                          for h in range(rg.n)}
        self.z_rep = {}
        for e, (h1, h2) in enumerate(rg.edges):
            self.z_rep[e] = (h1, self.socle_len[h1])
        self._orbit = {}
        for h in range(rg.n):
            orb = [h]
            x = rg.nxt[h]
            while x != h:
                orb.append(x)
                x = rg.nxt[x]
            self._orbit[h] = orb
        self.symbols = [("e", e) for e in self.objects]
        for h in range(rg.n):
            for l in range(1, self.socle_len[h]):
                self.symbols.append(("w", h, l))
        self.symbols += [("z", e) for e in self.objects]
        self._deg = {}
        self._src = {}
        self._tgt = {}
        for s in self.symbols:
            if s[0] == "e":
                self._deg[s], self._src[s], self._tgt[s] = 0, s[1], s[1]
            elif s[0] == "w":
                _, h, l = s
                self._deg[s] = self._walk_degree(h, l)
                self._src[s] = rg.edge_of[h]
                self._tgt[s] = rg.edge_of[self.advance(h, l)]
            else:
                h, l = self.z_rep[s[1]]
                self._deg[s] = self._walk_degree(h, l)
                self._src[s] = self._tgt[s] = s[1]
        self._hom = {}
        for s in self.symbols:
            self._hom.setdefault((self._src[s], self._tgt[s]), []).append(s)
        self.discs = system.disc_sequences()
        disc_arrows = {a for arrows, _ in self.discs for a in arrows}
        self._compatible = {}
        for s in self.symbols:
            if s[0] == "e":
                self._compatible[s] = False
            else:
                self._compatible[s] = any(
                    arrow in disc_arrows
                    for _, (h, l) in self.walks_of(s)
                    for arrow in self._orbit_slice(h, l))
        self._mu_cache = {}

    # -- walk helpers ------------------------------------------------------

    def advance(self, h, i):
        orb = self._orbit[h]
        return orb[i % len(orb)]

    def _orbit_slice(self, h, l):
        orb = self._orbit[h]
        return [orb[i % len(orb)] for i in range(l)]

    def _walk_degree(self, h, l):
        return sum(self.system.degrees[a] for a in self._orbit_slice(h, l))

    def norm_walk(self, h, l):
        """Class of the walk (h, l): (coefficient, symbol), or None if zero."""
        rg = self.rg
        L = self.socle_len[h]
        if l == 0:
            return (Fraction(1), ("e", rg.edge_of[h]))
        if l < L:
            return (Fraction(1), ("w", h, l))
        if l == L:
            e = rg.edge_of[h]
            rep_h, _ = self.z_rep[e]
            if h == rep_h:
                return (Fraction(1), ("z", e))
            return (Fraction(_sign(self.system.windings[e])), ("z", e))
        return None

    def walks_of(self, sym):
        """All walks whose class is a multiple of sym, with the multiplier."""
        if sym[0] == "e":
            return ()
        if sym[0] == "w":
            return ((Fraction(1), (sym[1], sym[2])),)
        e = sym[1]
        h1, h2 = self.rg.edges[e]
        sgn = Fraction(_sign(self.system.windings[e]))
        return ((Fraction(1), (h1, self.socle_len[h1])),
                (sgn, (h2, self.socle_len[h2])))

    # -- category interface -------------------------------------------------

    def degree(self, sym):
        return self._deg[sym]

    def src(self, sym):
        return self._src[sym]

    def tgt(self, sym):
        return self._tgt[sym]

    def hom_syms(self, s, t):
        return self._hom.get((s, t), [])

    def all_syms(self):
        return list(self.symbols)

    def unit(self, obj):
        return ("e", obj)

    def is_unit(self, sym):
        return sym[0] == "e"

    def max_arity(self):
        return max([2] + [len(arrows) for arrows, _ in self.discs])

    def default_check_len(self):
        perim = max([0] + [len(arrows) for arrows, _ in self.discs])
        return max(3, perim * max(self.system.graph.mult) + 2)

    def chain_prune(self, syms, length):
        if length < 4:
            return False
        bad = sum(1 for s in syms if not self._compatible.get(s, False))
        return bad > 2

    def product(self, later, earlier):
        """(coeff, sym) for later o earlier (earlier applied first), or None."""
        if self._tgt[earlier] != self._src[later]:
            return None
        if earlier[0] == "e":
            return (Fraction(1), later)
        if later[0] == "e":
            return (Fraction(1), earlier)
        if earlier[0] == "z" or later[0] == "z":
            return None
        _, g, a = earlier
        _, h, b = later
        if self.advance(g, a) != h:
            return None
        return self.norm_walk(g, a + b)

    def _match_arrow(self, sym, arrow):
        for c, (h, l) in self.walks_of(sym):
            if h == arrow and l == 1:
                return c
        return None

    def mu(self, seq):
        seq = tuple(seq)
        cached = self._mu_cache.get(seq)
        if cached is not None:
            return cached
        out = self._mu(seq)
        self._mu_cache[seq] = out
        return out

    def _mu(self, seq):
        n = len(seq)
        for i in range(n - 1):
            if self._tgt[seq[i]] != self._src[seq[i + 1]]:
                raise NotComposable("inputs %d and %d do not compose" % (i, i + 1))
        if n == 1:
            return ()
        if n == 2:
            x, y = seq
            prod = self.product(y, x)
            if prod is None:
                return ()
            c, sym = prod
            expo = self._deg[x] if self.convention.mu2_first else self._deg[y]
            return ((c * _sign(expo), sym),)
        if any(self.is_unit(s) for s in seq):
            return ()
        contributions = {}
        for disc_ix, (arrows, arcs) in enumerate(self.discs):
            if len(arrows) != n:
                continue
            found = set()
            for rot in range(n):
                a = arrows[rot:] + arrows[:rot]
                d = arcs[rot:] + arcs[:rot]
                found.update(self._match_mu1(seq, a))
                found.update(self._match_mu2(seq, a))
                found.update(self._match_socle_insertion(seq, a, d))
            if len(found) > 1:
                raise AmbiguousOperation(
                    "conflicting disc contributions on %r: %r" % (seq, found))
            if found:
                c, sym = next(iter(found))
                contributions[sym] = contributions.get(sym, Fraction(0)) + c
        out = tuple((c, sym) for sym, c in sorted(contributions.items()) if c)
        total = sum(self._deg[s] for s in seq) + 2 - n
        for _, sym in out:
            if self._deg[sym] != total:
                raise AssertionError("operation output has the wrong degree")
        return out

    def _match_mu1(self, seq, a):
        """mu(b a_n, .., a_1) = b: all but the last input are bare arrows."""
        n = len(a)
        coeff = Fraction(1)
        for i in range(n - 1):
            c = self._match_arrow(seq[i], a[i])
            if c is None:
                return ()
            coeff *= c
        for c, (h, l) in self.walks_of(seq[n - 1]):
            if h == a[n - 1] and l >= 1:
                val = self.norm_walk(self.advance(h, 1), l - 1)
                if val is None:
                    continue
                vc, vs = val
                return (((coeff * c) * vc, vs),)
        return ()

    def _match_mu2(self, seq, a):
        """mu(a_n, .., a_1 b) = (-1)^{|b|} b: the first input ends with a_1."""
        n = len(a)
        coeff = Fraction(1)
        for i in range(1, n):
            c = self._match_arrow(seq[i], a[i])
            if c is None:
                return ()
            coeff *= c
        for c, (h, l) in self.walks_of(seq[0]):
            if l >= 1 and self.advance(h, l - 1) == a[0]:
                val = self.norm_walk(h, l - 1)
                if val is None:
                    continue
                vc, vs = val
                b_deg = self._walk_degree(h, l - 1)
                return (((coeff * c * _sign(b_deg)) * vc, vs),)
        return ()

    def _match_socle_insertion(self, seq, a, arcs):
        """mu(a_n,..,a_{r+1}, a_r (b a_r)^*, b a_r, a_{r-1},..,a_2) = +-a_1^*."""
        n = len(a)
        out = []
        for r in range(2, n + 1):
            coeff = Fraction(1)
            ok = True
            for k in range(r - 2):           # bare a_2 .. a_{r-1}
                c = self._match_arrow(seq[k], a[k + 1])
                if c is None:
                    ok = False
                    break
                coeff *= c
            if not ok:
                continue
            for k in range(r, n):            # bare a_{r+1} .. a_n
                c = self._match_arrow(seq[k], a[k])
                if c is None:
                    ok = False
                    break
                coeff *= c
            if not ok:
                continue
            ar = a[r - 1]
            L = self.socle_len[ar]
            for c1, (h, l) in self.walks_of(seq[r - 2]):
                if h != ar or l < 1:
                    continue
                expected = self.norm_walk(self.advance(ar, l), L - l + 1)
                if expected is None:
                    continue
                c2, exp_sym = expected
                if seq[r - 1] != exp_sym:
                    continue
                star = self.norm_walk(self.advance(a[0], 1),
                                      self.socle_len[a[0]] - 1)
                if star is None:
                    continue
                vc, vs = star
                circ = sum(self.system.degrees[a[k]] for k in range(1, r - 1))
                circ += self._walk_degree(h, l)
                circ += sum(self.system.windings[arcs[k]] for k in range(1, r))
                if self.convention.circ_first:
                    circ += self.system.degrees[a[0]]
                out.append((coeff * c1 * (Fraction(1) / c2) * _sign(circ) * vc, vs))
        return tuple(out)


def build_category(system, convention=DEFAULT_CONVENTION):
    return BrauerGraphCategory(system, convention)


# -- algebras as one-operation categories ------------------------------------


class CategoryOfAlgebra:
    """The category of a basic algebra: objects are the quiver vertices,
    morphisms the basis elements, mu2 the multiplication, all degrees 0."""

    def __init__(self, basis: AlgebraBasis):
        self.basis = basis
        self.objects = sorted(basis.idempotents)
        self._hom = {}
        for i, s in enumerate(basis.symbols):
            self._hom.setdefault((basis.source[i], basis.target[i]), []).append(s)

    def degree(self, sym):
        return 0

    def src(self, sym):
        return self.basis.source[self.basis.index[sym]]

    def tgt(self, sym):
        return self.basis.target[self.basis.index[sym]]

    def hom_syms(self, s, t):
        return self._hom.get((s, t), [])

    def all_syms(self):
        return list(self.basis.symbols)

    def unit(self, obj):
        return self.basis.symbols[self.basis.idempotents[obj]]

    def is_unit(self, sym):
        return sym[0] == "e"

    def max_arity(self):
        return 2

    def default_check_len(self):
        return 3

    def chain_prune(self, syms, length):
        return False

    def mu(self, seq):
        n = len(seq)
        for i in range(n - 1):
            if self.tgt(seq[i]) != self.src(seq[i + 1]):
                raise NotComposable("inputs %d and %d do not compose" % (i, i + 1))
        if n != 2:
            return ()
        x, y = seq
        prod = self.basis.product(self.basis.index[y], self.basis.index[x])
        return tuple((c, self.basis.symbols[k]) for c, k in prod)


def gentle_category(gentle_pres):
    from .algebra import gentle_algebra_basis

    return CategoryOfAlgebra(gentle_algebra_basis(gentle_pres))


# -- trivial extensions ------------------------------------------------------


class TrivialExtensionCategory:
    """Hom(X, Y) + dual Hom(Y, X) with the operations wrapping the base.

    With one dual input f the operation feeds every plug u through the base
    operation and reads off the coefficient of f's index, with the sign
    (-1)^dagger, dagger summing the reduced degrees of the inputs.  Two or
    more dual inputs give zero.
    """

    def __init__(self, base, convention=None):
        self.base = base
        self.convention = convention or getattr(base, "convention",
                                                DEFAULT_CONVENTION)
        self.objects = list(base.objects)
        self._mu_cache = {}

    def degree(self, sym):
        kind, s = sym
        return self.base.degree(s) if kind == "o" else -self.base.degree(s)

    def src(self, sym):
        kind, s = sym
        return self.base.src(s) if kind == "o" else self.base.tgt(s)

    def tgt(self, sym):
        kind, s = sym
        return self.base.tgt(s) if kind == "o" else self.base.src(s)

    def hom_syms(self, s, t):
        return ([("o", b) for b in self.base.hom_syms(s, t)] +
                [("d", b) for b in self.base.hom_syms(t, s)])

    def all_syms(self):
        return ([("o", b) for b in self.base.all_syms()] +
                [("d", b) for b in self.base.all_syms()])

    def unit(self, obj):
        return ("o", self.base.unit(obj))

    def is_unit(self, sym):
        return sym[0] == "o" and self.base.is_unit(sym[1])

    def max_arity(self):
        return max(2, self.base.max_arity())

    def default_check_len(self):
        return self.base.default_check_len()

    def chain_prune(self, syms, length):
        duals = sum(1 for s in syms if s[0] == "d")
        if duals >= 2:
            return True
        if length >= 4:
            base_prune = getattr(self.base, "_compatible", None)
            if base_prune is not None:
                bad = sum(1 for s in syms
                          if s[0] == "o" and not base_prune.get(s[1], False))
                return bad > 2
        return False

    def mu(self, seq):
        seq = tuple(seq)
        cached = self._mu_cache.get(seq)
        if cached is not None:
            return cached
        out = self._mu(seq)
        self._mu_cache[seq] = out
        return out

    def _mu(self, seq):
        n = len(seq)
        for i in range(n - 1):
            if self.tgt(seq[i]) != self.src(seq[i + 1]):
                raise NotComposable("inputs %d and %d do not compose" % (i, i + 1))
        duals = [i for i, s in enumerate(seq) if s[0] == "d"]
        if not duals:
            inner = tuple(s[1] for s in seq)
            return tuple((c, ("o", s)) for c, s in self.base.mu(inner))
        if len(duals) > 1:
            return ()
        i = duals[0]
        q = seq[i][1]
        x_r = self.tgt(seq[-1])
        x_0 = self.src(seq[0])
        prefix = tuple(s[1] for s in seq[i + 1:])
        suffix = tuple(s[1] for s in seq[:i])
        dagger = sum(self.degree(s) - 1 for j, s in enumerate(seq) if j != i)
        if self.convention.dagger_dual:
            dagger += self.degree(seq[i]) - 1
        sgn = _sign(dagger)
        out = []
        for u in self.base.hom_syms(x_r, x_0):
            inner = prefix + (u,) + suffix
            coeff = Fraction(0)
            for c, s in self.base.mu(inner):
                if s == q:
                    coeff += c
            if coeff:
                out.append((sgn * coeff, ("d", u)))
        return tuple(out)


def trivial_extension(cat, convention=None):
    return TrivialExtensionCategory(cat, convention)


# -- relation checking -------------------------------------------------------


@dataclass
class RelationReport:
    checked: int
    max_len: int
    passed: bool
    counterexample: tuple | None = None
    residual: tuple | None = None
    note: str = ""

    def render(self):
        if self.passed:
            return "pass: %d tuples checked up to length %d%s" % (
                self.checked, self.max_len,
                " (%s)" % self.note if self.note else "")
        return "FAIL on %r: residual %r" % (self.counterexample, self.residual)


def _residual(cat, seq):
    """The signed sum of nested operations that must vanish."""
    n = len(seq)
    total = {}
    sign_prefix = 0
    for k in range(n):
        if k > 0:
            sign_prefix += cat.degree(seq[k - 1]) - 1
        for m in range(2, n):
            if k + m > n:
                continue
            inner = cat.mu(seq[k:k + m])
            if not inner:
                continue
            s = _sign(sign_prefix)
            for c, sym in inner:
                outer_seq = seq[:k] + (sym,) + seq[k + m:]
                for c2, sym2 in cat.mu(outer_seq):
                    key = sym2
                    total[key] = total.get(key, Fraction(0)) + s * c * c2
    return {k: v for k, v in total.items() if v}


def _chains(cat, n):
    """Composable basis tuples of length n, honoring the pruning hook.

    The pruning predicate must be monotone in chain prefixes.
    """
    out = []

    def extend(chain):
        if cat.chain_prune(chain, n):
            return
        if len(chain) == n:
            out.append(tuple(chain))
            return
        if chain:
            here = cat.tgt(chain[-1])
            candidates = [s for t in cat.objects for s in cat.hom_syms(here, t)]
        else:
            candidates = cat.all_syms()
        for s in candidates:
            chain.append(s)
            extend(chain)
            chain.pop()

    extend([])
    return out


def verify_relations(cat, max_len=None):
    """Check the A-infinity relations on every composable basis tuple.

    Lengths beyond 2*max_arity - 1 cannot support a nonzero term and are
    reported as vacuously satisfied.
    """
    if max_len is None:
        max_len = cat.default_check_len()
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    arity = cat.max_arity()
    effective = min(max_len, 2 * arity - 1)
    checked = 0
    for n in range(3, effective + 1):
        for seq in _chains(cat, n):
            checked += 1
            res = _residual(cat, seq)
            if res:
                return RelationReport(checked, max_len, False, seq,
                                      tuple(sorted(res.items())))
    note = ""
    if effective < max_len:
        note = "lengths %d..%d vacuous by operation shape" % (effective + 1, max_len)
    return RelationReport(checked, max_len, True, note=note)


def convention_search(builders, max_len=None):
    """Which of the eight sign conventions satisfy the relations everywhere.

    ``builders`` is a list of callables convention -> category; the search
    aborts a convention on its first failing category.
    """
    winners = []
    for conv in ALL_CONVENTIONS:
        ok = True
        for build in builders:
            cat = build(conv)
            report = verify_relations(cat, max_len)
            if not report.passed:
                ok = False
                break
        if ok:
            winners.append(conv)
    return winners


# -- comparisons -------------------------------------------------------------


@dataclass
class Correspondence:
    """Degree-preserving basis bijection over an object bijection, with an
    optional sign twist per basis element."""

    object_map: dict
    basis_map: dict
    signs: dict = field(default_factory=dict)

    def sign(self, sym):
        return self.signs.get(sym, 1)


def compare_categories(c1, c2, corr, max_len=None):
    """True iff all structure constants agree under the correspondence.

    Returns (ok, mismatch) where mismatch describes the first failing
    tuple.  Raises MalformedCorrespondence for non-bijective or
    degree-breaking data.
    """
    syms1 = c1.all_syms()
    if sorted(map(repr, corr.basis_map)) != sorted(map(repr, syms1)):
        raise MalformedCorrespondence("basis map domain mismatch")
    if sorted(map(repr, corr.basis_map.values())) != \
            sorted(map(repr, c2.all_syms())):
        raise MalformedCorrespondence("basis map image mismatch")
    for s in syms1:
        t = corr.basis_map[s]
        if c1.degree(s) != c2.degree(t):
            raise MalformedCorrespondence("degree mismatch at %r" % (s,))
        if corr.object_map[c1.src(s)] != c2.src(t) or \
                corr.object_map[c1.tgt(s)] != c2.tgt(t):
            raise MalformedCorrespondence("endpoint mismatch at %r" % (s,))
    if max_len is None:
        max_len = max(c1.max_arity(), c2.max_arity())
    for n in range(2, max_len + 1):
        for seq in _chains(c1, n):
            lhs = {}
            for c, s in c1.mu(seq):
                lhs[corr.basis_map[s]] = c * corr.sign(s)
            mapped = tuple(corr.basis_map[s] for s in seq)
            factor = 1
            for s in seq:
                factor *= corr.sign(s)
            rhs = {}
            for c, s in c2.mu(mapped):
                rhs[s] = c * factor
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                return False, {"tuple": seq, "lhs": lhs, "rhs": rhs}
    return True, None


def schroll_correspondence(triv_cat, seed_cat, gentle_pres):
    """The basis bijection between triv(gentle category) and the seed
    category: originals map to themselves, the dual of a path to its
    complement (p maps to p^* with p p^* the full cycle power)."""
    rg = gentle_pres.graph.ribbon
    basis_map = {}
    for sym in triv_cat.all_syms():
        kind, s = sym
        if kind == "o":
            if s[0] == "e":
                basis_map[sym] = ("e", s[1])
            else:
                walk = s[1]
                c, target = seed_cat.norm_walk(walk[0], len(walk))
                assert c == 1
                basis_map[sym] = target
        else:
            if s[0] == "e":
                basis_map[sym] = ("z", s[1])
            else:
                walk = s[1]
                h, l = walk[0], len(walk)
                c, target = seed_cat.norm_walk(seed_cat.advance(h, l),
                                               seed_cat.socle_len[h] - l)
                assert c == 1
                basis_map[sym] = target
    return Correspondence({e: e for e in seed_cat.objects}, basis_map)
