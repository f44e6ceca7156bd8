"""Oriented planar link diagrams stored as signed Gauss codes.

Each component is a cyclic sequence of passages ``(crossing, is_over)``
in orientation order.  Every crossing carries a sign.  A diagram is only
accepted if its signed Gauss code is realizable on the sphere, which is
checked by counting faces.

PD codes follow the usual convention: ``(a, b, c, d)`` lists the edges
counterclockwise starting from the incoming under-edge.  At a positive
crossing the over-strand runs from ``d`` to ``b``; at a negative one from
``b`` to ``d``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Passage = tuple[int, bool]


class DiagramError(ValueError):
    """Raised for malformed or non-planar diagram data."""


@dataclass(frozen=True)
class LinkDiagram:
    components: tuple[tuple[Passage, ...], ...]
    signs: tuple[int, ...]
    framing_kinks: tuple[int, ...] = field(default=())

    def __post_init__(self):
        comps = tuple(tuple((int(c), bool(o)) for c, o in comp) for comp in self.components)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        kinks = tuple(self.framing_kinks) or (0,) * len(comps)
        object.__setattr__(self, "framing_kinks", kinks)
        self._validate()

    def _validate(self):
        n = len(self.signs)
        if len(self.framing_kinks) != len(self.components):
            raise DiagramError("framing data does not match component count")
        if any(s not in (1, -1) for s in self.signs):
            raise DiagramError("crossing signs must be +1 or -1")
        seen: dict[int, list[bool]] = {}
        for comp in self.components:
            for c, over in comp:
                if not 0 <= c < n:
                    raise DiagramError(f"crossing id {c} out of range")
                seen.setdefault(c, []).append(over)
        for c in range(n):
            if sorted(seen.get(c, [])) != [False, True]:
                raise DiagramError(f"crossing {c} must be met once over and once under")
        if not _is_planar(self):
            raise DiagramError("Gauss code is not realizable in the plane")

    # -- basic data -------------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.signs)

    @property
    def component_count(self) -> int:
        return len(self.components)

    def crossing_components(self) -> list[tuple[int, int]]:
        """For each crossing, (component of over strand, component of under strand)."""
        over = [0] * len(self.signs)
        under = [0] * len(self.signs)
        for k, comp in enumerate(self.components):
            for c, o in comp:
                (over if o else under)[c] = k
        return list(zip(over, under))

    def passage_index(self) -> dict[Passage, tuple[int, int]]:
        return {p: (k, j) for k, comp in enumerate(self.components) for j, p in enumerate(comp)}

    def edges(self) -> list[list[int]]:
        """Edge labels per component; edge ``j`` leaves the ``j``-th passage."""
        out, label = [], 1
        for comp in self.components:
            size = max(len(comp), 1)
            out.append(list(range(label, label + size)))
            label += size
        return out

    def darts(self):
        """Edge ends as ``(crossing, position)`` pairs, ``position`` in 0..3."""
        ends = []
        for comp in self.components:
            m = len(comp)
            for j in range(m):
                c0, o0 = comp[j]
                c1, o1 = comp[(j + 1) % m]
                ends.append(((c0, _out_slot(o0, self.signs[c0])), (c1, _in_slot(o1, self.signs[c1]))))
        return ends

    def pd_code(self) -> dict:
        labels = self.edges()
        rows = [[0, 0, 0, 0] for _ in self.signs]
        for comp, lab in zip(self.components, labels):
            m = len(comp)
            for j, (c, o) in enumerate(comp):
                rows[c][_out_slot(o, self.signs[c])] = lab[j]
                rows[c][_in_slot(o, self.signs[c])] = lab[(j - 1) % m]
        return {"crossings": rows, "signs": list(self.signs), "components": labels}

    def gauss_code(self) -> str:
        parts = []
        for comp in self.components:
            parts.append(" ".join(
                f"{'O' if o else 'U'}{c + 1}{'+' if self.signs[c] > 0 else '-'}" for c, o in comp))
        return " | ".join(parts)

    def canonical(self) -> "LinkDiagram":
        """Relabel crossings in order of first appearance."""
        order: dict[int, int] = {}
        for comp in self.components:
            for c, _ in comp:
                order.setdefault(c, len(order))
        comps = tuple(tuple((order[c], o) for c, o in comp) for comp in self.components)
        signs = [0] * len(order)
        for old, new in order.items():
            signs[new] = self.signs[old]
        return LinkDiagram(comps, tuple(signs), self.framing_kinks)

    def __str__(self):
        return self.gauss_code()


# -- PD slot conventions ------------------------------------------------------

def _in_slot(over: bool, sign: int) -> int:
    if not over:
        return 0
    return 3 if sign > 0 else 1


def _out_slot(over: bool, sign: int) -> int:
    if not over:
        return 2
    return 1 if sign > 0 else 3


# -- planarity ----------------------------------------------------------------

def faces(d: LinkDiagram) -> list[list[tuple[int, int]]]:
    """Boundary cycles of the complementary regions, as lists of darts.

    A dart ``(c, p)`` is the edge end sitting at slot ``p`` of crossing
    ``c``.  Crossingless components contribute no faces here.
    """
    partner = {}
    for a, b in d.darts():
        partner[a] = b
        partner[b] = a
    out, done = [], set()
    for start in partner:
        if start in done:
            continue
        cyc, x = [], start
        while x not in done:
            done.add(x)
            cyc.append(x)
            c, p = partner[x]
            x = (c, (p + 1) % 4)
        out.append(cyc)
    return out


def _is_planar(d: LinkDiagram) -> bool:
    n = len(d.signs)
    if n == 0:
        return True
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (c0, _), (c1, _) in d.darts():
        parent[find(c0)] = find(c1)
    pieces: dict[int, list[int]] = {}
    for c in range(n):
        pieces.setdefault(find(c), []).append(c)
    face_count: dict[int, int] = {}
    for cyc in faces(d):
        r = find(cyc[0][0])
        face_count[r] = face_count.get(r, 0) + 1
    # V - E + F = 2 on each connected piece, with E = 2V
    return all(face_count.get(r, 0) - len(cs) == 2 for r, cs in pieces.items())


# -- constructors ------------------------------------------------------------

def unlink(n: int) -> LinkDiagram:
    return LinkDiagram(tuple(() for _ in range(n)), ())


def from_pd(crossings: Sequence[Sequence[int]], signs: Sequence[int] | None = None,
            components: Sequence[Sequence[int]] | None = None) -> LinkDiagram:
    """Build a diagram from PD data.

    Without ``signs`` the over-strand direction is inferred from
    consecutive edge labels.  Without ``components`` the edges are traced
    from the crossings and ordered by their smallest label.
    """
    rows = [tuple(int(e) for e in row) for row in crossings]
    if any(len(r) != 4 for r in rows):
        raise DiagramError("each crossing needs four edge labels")
    if signs is None:
        sign_list = [_infer_sign(r, components) for r in rows]
    else:
        if len(signs) != len(rows):
            raise DiagramError("signs and crossings differ in length")
        sign_list = [int(s) for s in signs]
    # edge -> (crossing, is_over) at which the edge ends / starts
    ends: dict[int, Passage] = {}
    starts: dict[int, Passage] = {}
    for c, (row, s) in enumerate(zip(rows, sign_list)):
        if s not in (1, -1):
            raise DiagramError("crossing signs must be +1 or -1")
        for over in (False, True):
            e_in, e_out = row[_in_slot(over, s)], row[_out_slot(over, s)]
            if e_in in ends or e_out in starts:
                raise DiagramError(f"edge label reused inconsistently at crossing {c + 1}")
            ends[e_in] = (c, over)
            starts[e_out] = (c, over)
    if set(ends) != set(starts):
        raise DiagramError("every edge must join two crossing slots")
    after = {p: e for e, p in starts.items()}
    if components is None:
        comp_edges, left = [], set(ends)
        while left:
            e = min(left)
            cyc = []
            while e in left:
                left.discard(e)
                cyc.append(e)
                e = after[ends[e]]
            comp_edges.append(cyc)
    else:
        comp_edges = [list(map(int, cmp)) for cmp in components]
    comps, used = [], set()
    for cyc in comp_edges:
        if not cyc:
            raise DiagramError("empty component")
        if cyc[0] not in ends:
            if len(cyc) != 1:
                raise DiagramError(f"edge {cyc[0]} does not meet any crossing")
            comps.append(())
            continue
        # the first edge leaves the last passage collected below
        seq, e = [], cyc[0]
        while True:
            p = ends[e]
            seq.append(p)
            e = after[p]
            if e == cyc[0]:
                break
        if set(cyc) != {after[p] for p in seq}:
            raise DiagramError("component edge list does not match crossing data")
        comps.append(tuple(seq[-1:] + seq[:-1]))
        used.update(cyc)
    if used != set(ends):
        raise DiagramError("components do not cover every edge")
    return LinkDiagram(tuple(comps), tuple(sign_list))


def _infer_sign(row, components) -> int:
    a, b, c, d = row
    if components is not None:
        nxt = {}
        for cyc in components:
            for i, e in enumerate(cyc):
                nxt[int(e)] = int(cyc[(i + 1) % len(cyc)])
        if nxt.get(b) == d:
            return -1
        if nxt.get(d) == b:
            return 1
        raise DiagramError("cannot infer crossing sign from component order")
    if d == b + 1 or (b > d + 1):
        return -1
    return 1


def from_pd_json(text: str) -> LinkDiagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"malformed PD JSON: {exc}") from exc
    if isinstance(data, list):
        return from_pd(data)
    if "crossings" not in data:
        raise DiagramError("PD JSON needs a 'crossings' field")
    return from_pd(data["crossings"], data.get("signs"), data.get("components"))


_GAUSS_TOKEN = re.compile(r"([OU])(\d+)([+-])")


def from_gauss(text: str) -> LinkDiagram:
    """Parse ``O1+ U2- ... | ...`` (one segment per component)."""
    comps, signs = [], {}
    for seg in text.split("|"):
        seq = []
        for tok in seg.split():
            m = _GAUSS_TOKEN.fullmatch(tok)
            if m is None:
                raise DiagramError(f"bad Gauss token {tok!r}")
            c = int(m.group(2)) - 1
            s = 1 if m.group(3) == "+" else -1
            if signs.setdefault(c, s) != s:
                raise DiagramError(f"crossing {c + 1} has inconsistent signs")
            seq.append((c, m.group(1) == "O"))
        comps.append(tuple(seq))
    if sorted(signs) != list(range(len(signs))):
        raise DiagramError("crossing labels must be 1..N")
    return LinkDiagram(tuple(comps), tuple(signs[c] for c in range(len(signs))))


# -- operations ---------------------------------------------------------------

def switch(d: LinkDiagram, crossings: Iterable[int]) -> LinkDiagram:
    """Flip over/under at the given crossings (the sign flips with it)."""
    chosen = set(crossings)
    bad = [c for c in chosen if not 0 <= c < d.crossing_count]
    if bad:
        raise DiagramError(f"unknown crossing ids {sorted(bad)}")
    comps = tuple(tuple((c, o ^ (c in chosen)) for c, o in comp) for comp in d.components)
    signs = tuple(-s if c in chosen else s for c, s in enumerate(d.signs))
    return LinkDiagram(comps, signs, d.framing_kinks)


def self_writhe(d: LinkDiagram, component: int) -> int:
    return sum(d.signs[c] for c, (o, u) in enumerate(d.crossing_components())
               if o == u == component)


def writhe(d: LinkDiagram) -> int:
    return sum(d.signs)


def zero_frame(d: LinkDiagram) -> LinkDiagram:
    """Add kinks on each component's first edge until its self-writhe is 0."""
    comps = [list(comp) for comp in d.components]
    signs = list(d.signs)
    kinks = list(d.framing_kinks)
    for k in range(len(comps)):
        w = self_writhe(d, k)
        if w == 0:
            continue
        s = -1 if w > 0 else 1
        new = []
        for _ in range(abs(w)):
            c = len(signs)
            signs.append(s)
            new += [(c, True), (c, False)]
        comps[k] = comps[k][:1] + new + comps[k][1:]
        kinks[k] += abs(w)
    return LinkDiagram(tuple(map(tuple, comps)), tuple(signs), tuple(kinks))


def delete_components(d: LinkDiagram, drop: Iterable[int]) -> LinkDiagram:
    drop = set(drop)
    if any(not 0 <= k < d.component_count for k in drop):
        raise DiagramError("unknown component index")
    if len(drop) >= d.component_count:
        raise DiagramError("cannot delete every component")
    cc = d.crossing_components()
    keep = [c for c in range(d.crossing_count) if cc[c][0] not in drop and cc[c][1] not in drop]
    relabel = {c: i for i, c in enumerate(keep)}
    comps, kinks = [], []
    for k, comp in enumerate(d.components):
        if k in drop:
            continue
        comps.append(tuple((relabel[c], o) for c, o in comp if c in relabel))
        kinks.append(d.framing_kinks[k])
    return LinkDiagram(tuple(comps), tuple(d.signs[c] for c in keep), tuple(kinks))


def mirror(d: LinkDiagram) -> LinkDiagram:
    return switch(d, range(d.crossing_count))


def linking_matrix(d: LinkDiagram) -> list[list[int]]:
    n = d.component_count
    lk = [[0] * n for _ in range(n)]
    for c, (o, u) in enumerate(d.crossing_components()):
        if o != u:
            lk[o][u] += d.signs[c]
            lk[u][o] += d.signs[c]
    # each pair of components crosses an even number of times
    return [[v // 2 for v in row] for row in lk]


def simplify(d: LinkDiagram, budget: int = 10_000) -> LinkDiagram:
    from .simplify import simplify as _simplify

    return _simplify(d, budget)
