"""Slow reference computations used to cross-check the library."""

from platlab.diagram import switch
from platlab.invariants import smooth


def _relabelled(d):
    order = {}
    for comp in d.components:
        for c, _ in comp:
            order.setdefault(c, len(order))
    return (tuple(tuple((order[c], o) for c, o in comp) for comp in d.components),
            tuple(d.signs[c] for c in sorted(order, key=order.get)))


def _split(d):
    n = d.component_count
    if n < 2:
        return False
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    owner = {}
    for k, comp in enumerate(d.components):
        for c, _ in comp:
            owner.setdefault(c, []).append(k)
    for a, b in owner.values():
        parent[find(a)] = find(b)
    return len({find(k) for k in range(n)}) > 1


def skein_conway(d, memo=None):
    """Conway coefficients by bare skein recursion, with no Reidemeister moves.

    Switches the first crossing met from below until the diagram is
    descending, so the recursion bottoms out at unlinks.
    """
    memo = {} if memo is None else memo
    if _split(d):
        return ()
    key = _relabelled(d)
    if key in memo:
        return memo[key]
    met, bad = set(), None
    for comp in d.components:
        for c, over in comp:
            if c in met:
                continue
            if not over:
                bad = c
                break
            met.add(c)
        if bad is not None:
            break
    if bad is None:
        out = [1] if d.component_count == 1 else []
    else:
        a = skein_conway(switch(d, [bad]), memo)
        b = skein_conway(smooth(d, bad), memo)
        out = [0] * max(len(a), len(b) + 1)
        for k, x in enumerate(a):
            out[k] += x
        for k, x in enumerate(b):
            out[k + 1] += d.signs[bad] * x
        while out and out[-1] == 0:
            out.pop()
    memo[key] = tuple(out)
    return memo[key]
