"""Tilting mutation of Brauer graphs: the Kauer move and mutation search.

Mutating at an edge j rewrites the graph locally.  Every half-edge h of j
that is movable (not at a valency-one endpoint, and not the inner side of a
loop encircling a perimeter-one face) detaches and re-attaches at the far
endpoint of the edge carrying ``nxt(h)``, immediately after ``pair(nxt(h))``
in counterclockwise order.  For a perimeter-one loop the frozen half rides
along, keeping the loop intact; for a leaf the valency-one tip stays put.

The move preserves the full invariant bundle (mutation is a derived
equivalence).  The clockwise variant of the move, obtained by running the
same rewrite against the reversed cyclic orders, undoes the counterclockwise
one exactly; the search below expands its backward frontier with it so that
every reported sequence replays forward.
"""

from __future__ import annotations

from dataclasses import dataclass

from .invariants import derived_equivalent
from .ribbon import BrauerGraph, RibbonGraph


class UnknownEdge(ValueError):
    pass


class TooSmall(ValueError):
    pass


LEAF = "leaf"
LOOP_PERIMETER_ONE = "loop_perimeter_one"
GENERIC = "generic"


@dataclass(frozen=True)
class TiltingDescriptor:
    """Shape of the mutated tilting summand T_j.

    ``summands`` lists (homological degree, projective's edge, map label);
    the degree-0 entry is P_j itself, the degree-1 entries are its targets.
    """

    edge: int
    case: str
    summands: tuple


@dataclass(frozen=True)
class MutationStep:
    edge: int                  # edge index in the canonical labelling
    canonical_form: bytes      # canonical form after the step


@dataclass(frozen=True)
class MutationSequence:
    source: bytes
    target: bytes
    steps: tuple               # of MutationStep


@dataclass(frozen=True)
class SearchResult:
    status: str                # "found" | "not_found" | "not_equivalent"
    sequence: MutationSequence | None = None
    verdict: object = None


def classify_edge(g, j):
    """Leaf, perimeter-one loop, or generic."""
    rg = g.ribbon
    if not (0 <= j < len(rg.edges)):
        raise UnknownEdge("no edge with index %r" % (j,))
    a, b = rg.edges[j]
    if rg.valency(rg.vertex_of[a]) == 1 or rg.valency(rg.vertex_of[b]) == 1:
        return LEAF
    if rg.vertex_of[a] == rg.vertex_of[b] and (rg.nxt[a] == b or rg.nxt[b] == a):
        return LOOP_PERIMETER_ONE
    return GENERIC


def _descriptor(g, j, case):
    rg = g.ribbon
    a, b = rg.edges[j]
    if case == LEAF:
        mover = a if rg.valency(rg.vertex_of[a]) > 1 else b
        jplus = rg.edge_of[rg.nxt[mover]]
        summands = ((0, j, None), (1, jplus, "alpha"))
    elif case == LOOP_PERIMETER_ONE:
        outer = a if rg.nxt[a] not in (a, b) else b
        jplus = rg.edge_of[rg.nxt[outer]]
        summands = ((0, j, None), (1, jplus, "alpha"), (1, jplus, "alpha*gamma"))
    else:
        summands = ((0, j, None),
                    (1, rg.edge_of[rg.nxt[a]], "alpha"),
                    (1, rg.edge_of[rg.nxt[b]], "beta"))
    return TiltingDescriptor(j, case, summands)


def _apply_rewrite(g, j):
    """The counterclockwise rewrite on rotations; callers fix orientation."""
    rg = g.ribbon
    a, b = rg.edges[j]
    halves = (a, b)
    movers = []
    riders = {}
    for h in halves:
        if rg.valency(rg.vertex_of[h]) == 1:
            continue                      # leaf tip stays
        if rg.nxt[h] in halves:
            riders[rg.nxt[h]] = h         # inner loop side rides with the other
            continue
        movers.append(h)
    # anchor and rider are computed on the unmodified graph
    plan = []
    for h in movers:
        anchor = rg.pair[rg.nxt[h]]
        plan.append((h, anchor, riders.get(h)))
    rotations = [list(orb) for orb in rg.vertices]
    detach = set(movers) | set(riders.values())
    rotations = [[x for x in rot if x not in detach] for rot in rotations]
    rotations = [rot for rot in rotations if rot]
    for h, anchor, rider in plan:
        for rot in rotations:
            if anchor in rot:
                pos = rot.index(anchor) + 1
                block = [h] if rider is None else [rider, h]
                rot[pos:pos] = block
                break
    nxt = [0] * rg.n
    for rot in rotations:
        for i, h in enumerate(rot):
            nxt[h] = rot[(i + 1) % len(rot)]
    new_rg = RibbonGraph(tuple(nxt), rg.pair)
    # multiplicities travel with the vertices; every new vertex keeps a
    # half-edge that was not repositioned
    mult = []
    for orb in new_rg.vertices:
        keeper = next(h for h in orb if h not in detach)
        mult.append(g.mult[rg.vertex_of[keeper]])
    return BrauerGraph(new_rg, tuple(mult), dict(g.deformed))


def kauer_move(g, j, clockwise=False):
    """Mutate at edge j; returns (graph, descriptor).

    ``clockwise=True`` applies the inverse move (the same rewrite against
    the reversed cyclic orders).
    """
    if len(g.ribbon.edges) < 2:
        raise TooSmall("mutation needs at least two edges")
    case = classify_edge(g, j)
    if clockwise:
        mirrored = _apply_rewrite(g.mirror(), j)
        out = mirrored.mirror()
    else:
        out = _apply_rewrite(g, j)
    return out, _descriptor(g, j, case)


def _canonical_state(g):
    canon, _ = g.canonical_graph()
    return canon


def _neighbors(g, clockwise):
    """Neighbors of a canonically labelled state.

    Yields ``(edge_here, edge_there, canonical graph, key)`` where
    ``edge_here`` indexes the mutated edge in g's labelling and
    ``edge_there`` indexes the same edge in the canonical labelling of the
    resulting state (the rewrite preserves half-edge labels, so the edge
    survives into the result and can be located there).
    """
    out = []
    for j in range(len(g.ribbon.edges)):
        moved, _ = kauer_move(g, j, clockwise=clockwise)
        canon, relabel = moved.canonical_graph()
        a, _b = moved.ribbon.edges[j]
        j_there = canon.ribbon.edge_of[relabel[a]]
        out.append((j, j_there, canon, canon.canonical_form()))
    return out


def mutation_search(g1, g2, max_depth=8):
    """Bidirectional search for a mutation sequence from g1 to g2.

    Short-circuits when the derived-equivalence criterion already separates
    the graphs.  The forward frontier uses the counterclockwise move, the
    backward frontier the clockwise one; since the two are exact inverses a
    meeting point stitches into a sequence that replays forward from g1.
    """
    verdict = derived_equivalent(g1, g2)
    if verdict.kind == "out_of_scope":
        return SearchResult("not_equivalent", verdict=verdict)
    if verdict.kind == "not_equivalent":
        return SearchResult("not_equivalent", verdict=verdict)

    start = _canonical_state(g1)
    goal = _canonical_state(g2)
    start_key = start.canonical_form()
    goal_key = goal.canonical_form()

    # parent maps: key -> (previous key, edge applied *forward* at previous)
    fwd = {start_key: None}
    bwd = {goal_key: None}
    fwd_graphs = {start_key: start}
    bwd_graphs = {goal_key: goal}
    fwd_frontier = [start_key]
    bwd_frontier = [goal_key]
    meet = start_key if start_key == goal_key else None
    depth = 0
    while meet is None and depth < max_depth and (fwd_frontier or bwd_frontier):
        depth += 1
        expand_fwd = len(fwd_frontier) <= len(bwd_frontier)
        frontier = fwd_frontier if expand_fwd else bwd_frontier
        parents = fwd if expand_fwd else bwd
        graphs = fwd_graphs if expand_fwd else bwd_graphs
        others = bwd if expand_fwd else fwd
        new_frontier = []
        for key in sorted(frontier):
            g = graphs[key]
            for j_here, j_there, canon, ckey in _neighbors(g, clockwise=not expand_fwd):
                if ckey in parents:
                    continue
                if expand_fwd:
                    # forward move at edge j_here of `key` reaches ckey
                    parents[ckey] = (key, j_here)
                else:
                    # the clockwise move inverts the forward one, so the
                    # forward move at edge j_there of ckey reaches `key`
                    parents[ckey] = (key, j_there)
                graphs[ckey] = canon
                new_frontier.append(ckey)
                if ckey in others:
                    meet = ckey
                    break
            if meet:
                break
        if expand_fwd:
            fwd_frontier = new_frontier
        else:
            bwd_frontier = new_frontier
        if meet is None and not new_frontier:
            break

    if meet is None:
        return SearchResult("not_found", verdict=verdict)

    # stitch: start -> ... -> meet (forward edges recorded in fwd)
    fwd_edges = []
    key = meet
    while fwd[key] is not None:
        prev, j = fwd[key]
        fwd_edges.append((j, key))
        key = prev
    fwd_edges.reverse()

    # meet -> ... -> goal: backward parents record the forward edge to apply
    bwd_edges = []
    key = meet
    while bwd[key] is not None:
        prev, j = bwd[key]
        # applying the forward move at edge j of the graph at `key`
        # produces the graph at `prev`
        current = bwd_graphs.get(key) or fwd_graphs[key]
        moved, _ = kauer_move(current, j, clockwise=False)
        canon = _canonical_state(moved)
        assert canon.canonical_form() == prev
        bwd_edges.append((j, prev))
        key = prev

    steps = tuple(MutationStep(j, k) for j, k in fwd_edges + bwd_edges)
    seq = MutationSequence(start_key, goal_key, steps)
    assert replay(start, seq) == goal_key
    return SearchResult("found", sequence=seq, verdict=verdict)


def replay(start_graph, sequence):
    """Apply a mutation sequence to the canonical start graph; returns the
    final canonical form (each step re-canonicalizes)."""
    g = _canonical_state(start_graph)
    for step in sequence.steps:
        moved, _ = kauer_move(g, step.edge, clockwise=False)
        g = _canonical_state(moved)
        if g.canonical_form() != step.canonical_form:
            raise AssertionError("replay diverged from the recorded sequence")
    return g.canonical_form()
