"""Greedy Reidemeister simplification on signed Gauss codes.

Moves are located through the faces of the diagram: a monogon is an R1
kink, a bigon whose two edges are each over (or each under) at both ends
is an R2 pair, and a triangle with a top and a bottom edge admits R3.
R3 is only used when it immediately unlocks an R1 or R2 reduction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagram import DiagramError, LinkDiagram, faces

DEFAULT_BUDGET = 10_000


@dataclass(frozen=True)
class _Edge:
    component: int
    index: int  # the edge leaves passage ``index`` of ``component``


def _edge_lookup(d: LinkDiagram):
    """Map each dart to the edge it belongs to."""
    table = {}
    dart_pairs = iter(d.darts())
    for k, comp in enumerate(d.components):
        for j in range(len(comp)):
            a, b = next(dart_pairs)
            table[a] = table[b] = _Edge(k, j)
    return table


def _drop(d: LinkDiagram, gone: set[int]) -> LinkDiagram:
    keep = [c for c in range(d.crossing_count) if c not in gone]
    relabel = {c: i for i, c in enumerate(keep)}
    comps = tuple(tuple((relabel[c], o) for c, o in comp if c in relabel) for comp in d.components)
    return LinkDiagram(comps, tuple(d.signs[c] for c in keep), d.framing_kinks)


def _ends(d: LinkDiagram, e: _Edge):
    comp = d.components[e.component]
    return comp[e.index], comp[(e.index + 1) % len(comp)]


def r1_moves(d: LinkDiagram):
    for comp in d.components:
        m = len(comp)
        for j in range(m):
            if m > 1 and comp[j][0] == comp[(j + 1) % m][0]:
                yield comp[j][0]


def r2_moves(d: LinkDiagram, regions=None):
    table = _edge_lookup(d)
    for face in regions if regions is not None else faces(d):
        if len(face) != 2:
            continue
        e1, e2 = table[face[0]], table[face[1]]
        (p1, q1), (p2, q2) = _ends(d, e1), _ends(d, e2)
        if p1[0] == q1[0]:
            continue
        if p1[1] == q1[1] and p2[1] == q2[1] and p1[1] != p2[1]:
            yield {p1[0], q1[0]}


def _r3_candidates(d: LinkDiagram, regions):
    table = _edge_lookup(d)
    for face in regions:
        if len(face) != 3:
            continue
        edges = [table[x] for x in face]
        if len({(e.component, e.index) for e in edges}) != 3:
            continue
        kinds = []
        for e in edges:
            p, q = _ends(d, e)
            kinds.append("top" if p[1] and q[1] else "bottom" if not (p[1] or q[1]) else "mixed")
        if len({p[0] for e in edges for p in _ends(d, e)}) != 3:
            continue
        if sorted(kinds) == ["bottom", "mixed", "top"]:
            yield edges


def r3_move(d: LinkDiagram, edges) -> LinkDiagram | None:
    """Swap the order of passages along each edge of a triangle."""
    comps = [list(c) for c in d.components]
    for e in edges:
        comp = comps[e.component]
        j, k = e.index, (e.index + 1) % len(comp)
        comp[j], comp[k] = comp[k], comp[j]
    try:
        return LinkDiagram(tuple(map(tuple, comps)), d.signs, d.framing_kinks)
    except DiagramError:
        return None


def reduce_once(d: LinkDiagram, allow_r3: bool = True) -> tuple[LinkDiagram, int] | None:
    """Apply one reduction; returns the new diagram and the moves spent."""
    for c in r1_moves(d):
        return _drop(d, {c}), 1
    regions = faces(d)
    for pair in r2_moves(d, regions):
        return _drop(d, pair), 1
    if not allow_r3:
        return None
    for edges in _r3_candidates(d, regions):
        moved = r3_move(d, edges)
        if moved is None:
            continue
        nxt = next(itertools.chain(({c} for c in r1_moves(moved)), r2_moves(moved)), None)
        if nxt is not None:
            return _drop(moved, nxt), 2
    return None


def simplify(d: LinkDiagram, budget: int = DEFAULT_BUDGET, allow_r3: bool = True) -> LinkDiagram:
    if budget < 0:
        raise ValueError("budget must be non-negative")
    spent = 0
    while spent < budget:
        step = reduce_once(d, allow_r3)
        if step is None:
            break
        d, cost = step
        spent += cost
    return d


def canonical_key(d: LinkDiagram, budget: int = 1000):
    """A relabeling-invariant key: try component rotations, keep the smallest code.

    Only the first ``budget`` rotation combinations are tried, so two
    equal diagrams may occasionally get different keys; equal keys always
    mean equal diagrams.
    """
    choices = [range(max(len(c), 1)) for c in d.components]
    best = None
    for shifts in itertools.islice(itertools.product(*choices), budget):
        order: dict[int, int] = {}
        code = []
        for comp, s in zip(d.components, shifts):
            rot = comp[s:] + comp[:s]
            code.append(tuple((order.setdefault(c, len(order)), o, d.signs[c]) for c, o in rot))
        key = tuple(code)
        if best is None or key < best:
            best = key
    return best
