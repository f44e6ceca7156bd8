"""Wirtinger presentations, zero-framed longitudes and Chen-Milnor words.

Arcs of a component are numbered from its starting edge, a new arc
beginning after every under-passage.  At a crossing of sign ``e`` where
the under-strand passes from arc ``a`` to arc ``b`` beneath arc ``o``::

    x_b = x_o^-e  x_a  x_o^e

and the longitude picks up ``x_o^e`` there.  Arc 0 of each component is
its meridian.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import LinkDiagram, self_writhe
from .freegroup import DEFAULT_CAP, FreeWord, MagnusSeries, format_word, reduce, word_from_magnus


@dataclass(frozen=True)
class Presentation:
    generators: tuple[tuple[int, int], ...]  # (component, arc index along it)
    relators: tuple[FreeWord, ...]
    meridians: tuple[int, ...]  # generator number (1-based) per component

    def __str__(self):
        gens = " ".join(f"a{g}" for g in range(1, len(self.generators) + 1))
        rels = ", ".join(format_word(r, "a") for r in self.relators)
        mer = " ".join(f"a{g}" for g in self.meridians)
        return f"gens: {gens} ; rels: {rels} ; meridians: {mer}"


@dataclass(frozen=True)
class Longitude:
    component: int
    word: FreeWord  # in the Wirtinger generators
    framing_correction: int


@dataclass(frozen=True)
class _Crossing:
    under_in: int  # generator numbers, 1-based
    under_out: int
    over: int
    sign: int


def _arcs(d: LinkDiagram):
    """Generator numbering of each edge plus per-crossing arc data."""
    gens: list[tuple[int, int]] = []
    edge_gen: list[list[int]] = []
    for k, comp in enumerate(d.components):
        r = sum(1 for _, o in comp if not o)
        base = len(gens)
        gens.extend((k, a) for a in range(max(r, 1)))
        labels, count = [], 0
        for j in range(max(len(comp), 1)):
            if j > 0 and not comp[j][1]:
                count += 1
            labels.append(base + (count % r if r else 0) + 1)
        edge_gen.append(labels)
    over = {}
    for k, comp in enumerate(d.components):
        for j, (c, o) in enumerate(comp):
            if o:
                over[c] = edge_gen[k][j]
    crossings = {}
    for k, comp in enumerate(d.components):
        m = len(comp)
        for j, (c, o) in enumerate(comp):
            if not o:
                crossings[c] = _Crossing(edge_gen[k][(j - 1) % m], edge_gen[k][j], over[c], d.signs[c])
    return gens, edge_gen, crossings


def wirtinger(d: LinkDiagram) -> Presentation:
    gens, edge_gen, crossings = _arcs(d)
    n = len(gens)
    rels = []
    for c in range(d.crossing_count):
        x = crossings[c]
        e = x.sign
        rels.append(reduce(FreeWord((x.under_out, -e * x.over, -x.under_in, e * x.over), n)))
    meridians = tuple(labels[0] for labels in edge_gen)
    return Presentation(tuple(gens), tuple(rels), meridians)


def _under_sequence(d: LinkDiagram, k: int, crossings):
    """Crossings met from below along component ``k``, starting from its first edge."""
    comp = d.components[k]
    order = comp[1:] + comp[:1]
    return [crossings[c] for c, o in order if not o]


def longitude(d: LinkDiagram, component: int, p: Presentation | None = None) -> Longitude:
    if not 0 <= component < d.component_count:
        raise IndexError(f"no component {component}")
    gens, edge_gen, crossings = _arcs(d)
    letters = []
    for x in _under_sequence(d, component, crossings):
        letters.append(x.sign * x.over)
    w = self_writhe(d, component)
    mer = edge_gen[component][0]
    letters.extend([-mer if w > 0 else mer] * abs(w))
    return Longitude(component, reduce(FreeWord(tuple(letters), len(gens))), -w)


def chen_milnor_series(d: LinkDiagram, cap: int = DEFAULT_CAP) -> list[MagnusSeries]:
    """Magnus expansions of the zero-framed longitudes written in meridians.

    Every arc generator is tracked as ``U^-1 x_k U`` with ``x_k`` the
    meridian of its component.  One sweep along all components refines
    each ``U`` by one degree, so ``cap + 1`` sweeps reach a fixed point.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    n = d.component_count
    gens, edge_gen, crossings = _arcs(d)
    owner = [k for k, _ in gens]
    one = MagnusSeries.one(n, cap)
    conj = [one] * (len(gens) + 1)
    conj_inv = [one] * (len(gens) + 1)
    loops = [one] * n
    unders = [_under_sequence(d, k, crossings) for k in range(n)]
    for _ in range(cap + 2):
        changed = False
        new_conj, new_inv = list(conj), list(conj_inv)
        for k in range(n):
            u = one
            for x in unders[k]:
                o = x.over
                # x_o^e = U_o^-1 x^e U_o
                u = (u * conj_inv[o]).times_letter(x.sign * (owner[o - 1] + 1)) * conj[o]
                if x.under_out != edge_gen[k][0]:
                    if u != new_conj[x.under_out]:
                        changed = True
                    new_conj[x.under_out] = u
                    new_inv[x.under_out] = u.inverse()
            loops[k] = u
        conj, conj_inv = new_conj, new_inv
        if not changed:
            break
    out = []
    for k in range(n):
        s = loops[k]
        w = self_writhe(d, k)
        for _ in range(abs(w)):
            s = s.times_letter(-(k + 1) if w > 0 else k + 1)
        out.append(s)
    return out


def chen_milnor_words(d: LinkDiagram, cap: int = DEFAULT_CAP) -> list[FreeWord]:
    """Words ``W_i`` in the meridians, correct through Magnus degree ``cap``."""
    return [word_from_magnus(s) for s in chen_milnor_series(d, cap)]


def presentation_text(d: LinkDiagram) -> str:
    return str(wirtinger(d))
