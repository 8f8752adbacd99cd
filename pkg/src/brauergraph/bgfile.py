"""Reading and writing the ``.bg`` text format.

Grammar (tokens are whitespace-separated, ``#`` starts a comment)::

    bg 1
    vertex <name> <mult>
    order <name> : <h1> <h2> ... <hk>
    edge <ha> <hb>
    deformed <ha> <t>        # optional; t is a nonzero rational p/q
    face <h> disc|annulus    # arc systems: marks the face containing <h>
    deg <h> <int>            # arc systems: degree of the arrow at <h>
    wind <ha> <int>          # arc systems: winding of the arc containing <ha>

Every half-edge label appears in exactly one ``order`` line; ``edge`` lines
pair the labels.  Plain Brauer graphs just omit the arc-system lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ribbon import BrauerGraph, from_cycles


class BgParseError(ValueError):
    pass


@dataclass
class ParsedFile:
    """Raw labelled content of a .bg file."""

    rotations: list            # list of (vertex_name, [labels])
    mults: dict                # vertex_name -> int
    pairs: list                # list of (label, label)
    deformed: dict             # label -> Fraction
    face_marks: list = field(default_factory=list)   # (label, "disc"|"annulus")
    degrees: dict = field(default_factory=dict)      # label -> int
    windings: dict = field(default_factory=dict)     # label -> int

    @property
    def has_arc_data(self):
        return bool(self.face_marks or self.degrees or self.windings)


def parse(text):
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body.split()))
    if not lines or lines[0][1] != ["bg", "1"]:
        raise BgParseError("first line must be 'bg 1'")
    mults = {}
    rotations = []
    pairs = []
    deformed = {}
    face_marks = []
    degrees = {}
    windings = {}
    order_seen = {}
    for lineno, tok in lines[1:]:
        kind = tok[0]
        try:
            if kind == "vertex":
                name, m = tok[1], int(tok[2])
                if name in mults:
                    raise BgParseError("line %d: vertex %s repeated" % (lineno, name))
                if m < 1:
                    raise BgParseError("line %d: multiplicity must be >= 1" % lineno)
                mults[name] = m
            elif kind == "order":
                name = tok[1]
                if tok[2] != ":":
                    raise BgParseError("line %d: expected ':' after vertex name" % lineno)
                labels = tok[3:]
                if not labels:
                    raise BgParseError("line %d: empty cyclic order" % lineno)
                for lab in labels:
                    if lab in order_seen:
                        raise BgParseError(
                            "line %d: half-edge %s already placed" % (lineno, lab))
                    order_seen[lab] = name
                rotations.append((name, labels))
            elif kind == "edge":
                a, b = tok[1], tok[2]
                if a == b:
                    raise BgParseError("line %d: edge needs two distinct labels" % lineno)
                pairs.append((a, b))
            elif kind == "deformed":
                deformed[tok[1]] = Fraction(tok[2])
            elif kind == "face":
                if tok[2] not in ("disc", "annulus"):
                    raise BgParseError("line %d: face mark must be disc|annulus" % lineno)
                face_marks.append((tok[1], tok[2]))
            elif kind == "deg":
                degrees[tok[1]] = int(tok[2])
            elif kind == "wind":
                windings[tok[1]] = int(tok[2])
            else:
                raise BgParseError("line %d: unknown directive %r" % (lineno, kind))
        except (IndexError, ValueError) as exc:
            if isinstance(exc, BgParseError):
                raise
            raise BgParseError("line %d: %s" % (lineno, exc)) from exc
    for name, _ in rotations:
        if name not in mults:
            raise BgParseError("order line for unknown vertex %s" % name)
    named = {name for name, _ in rotations}
    for name in mults:
        if name not in named:
            raise BgParseError("vertex %s has no order line" % name)
    in_pairs = set()
    for a, b in pairs:
        for lab in (a, b):
            if lab not in order_seen:
                raise BgParseError("edge label %s not placed at any vertex" % lab)
            if lab in in_pairs:
                raise BgParseError("half-edge %s appears in two edges" % lab)
            in_pairs.add(lab)
    missing = set(order_seen) - in_pairs
    if missing:
        raise BgParseError("half-edges %s belong to no edge" % sorted(missing))
    return ParsedFile(rotations, mults, pairs, deformed,
                      face_marks, degrees, windings)


def to_brauer_graph(parsed):
    """Build the BrauerGraph of a parsed file; returns (graph, label_map)."""
    rots = [labels for _, labels in parsed.rotations]
    mults = [parsed.mults[name] for name, _ in parsed.rotations]
    return from_cycles(rots, parsed.pairs, mults, parsed.deformed)


def load_brauer_graph(text):
    parsed = parse(text)
    g, _ = to_brauer_graph(parsed)
    return g


def serialize(g, arc_data=None):
    """Serialize a BrauerGraph (labels are the half-edge indices).

    ``arc_data`` is an optional ``(face_marks, degrees, windings)`` triple
    in index form, as stored on a graded arc system.
    """
    rg = g.ribbon
    out = ["bg 1"]
    for i, orb in enumerate(rg.vertices):
        out.append("vertex v%d %d" % (i, g.mult[i]))
    for i, orb in enumerate(rg.vertices):
        out.append("order v%d : %s" % (i, " ".join(str(h) for h in orb)))
    for a, b in rg.edges:
        out.append("edge %d %d" % (a, b))
    for e in sorted(g.deformed):
        a, _ = rg.edges[e]
        out.append("deformed %d %s" % (a, g.deformed[e]))
    if arc_data is not None:
        face_marks, degrees, windings = arc_data
        faces = rg.faces()
        for fi, orb in enumerate(faces.orbits):
            out.append("face %d %s" % (min(orb), face_marks[fi]))
        for h in range(rg.n):
            if degrees[h]:
                out.append("deg %d %d" % (h, degrees[h]))
        for e in range(len(rg.edges)):
            if windings[e]:
                out.append("wind %d %d" % (rg.edges[e][0], windings[e]))
    return "\n".join(out) + "\n"


def serialize_canonical(g):
    """Canonical .bg text: half-edges renamed 0..H-1 in canonical trace order."""
    canon, _ = g.canonical_graph()
    return serialize(canon)
