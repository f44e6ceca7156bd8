"""Link invariants: linking numbers, Milnor invariants, Conway polynomial.

Also evaluation of invariants on singular links by resolving double
points, and the finite type profile used to compare a link with the
unlink.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Sequence

from .diagram import LinkDiagram, linking_matrix, switch, unlink
from .freegroup import DEFAULT_CAP, MagnusSeries
from .linkgroup import chen_milnor_series
from .simplify import canonical_key, simplify

DEFAULT_CONWAY_BOUND = 16


class ResourceError(RuntimeError):
    """A computation would exceed a configured bound."""


__all__ = [
    "ConwayPolynomial", "MilnorValue", "ResourceError", "SingularLink", "conway",
    "conway_coefficient", "finite_type_profile", "linking_entry", "linking_matrix",
    "mu_bar", "mu_raw", "smooth", "vassiliev_eval",
]


# -- Milnor invariants ---------------------------------------------------------

@dataclass(frozen=True)
class MilnorValue:
    indices: tuple[int, ...]
    value: int
    delta: int

    @property
    def length(self) -> int:
        return len(self.indices)

    def as_dict(self) -> dict:
        return {"I": list(self.indices), "value": self.value, "delta": self.delta}


@lru_cache(maxsize=256)
def _longitude_series(d: LinkDiagram, cap: int) -> tuple[MagnusSeries, ...]:
    return tuple(chen_milnor_series(d, cap))


def _check_indices(d: LinkDiagram, indices: Sequence[int]) -> tuple[int, ...]:
    idx = tuple(int(i) for i in indices)
    if len(idx) < 2:
        raise ValueError("a Milnor invariant needs at least two indices")
    if any(not 1 <= i <= d.component_count for i in idx):
        raise ValueError(f"indices must lie in 1..{d.component_count}")
    return idx


def mu_raw(d: LinkDiagram, indices: Sequence[int], cap: int | None = None) -> int:
    """Coefficient of X_{i1}...X_{i(k-1)} in the expansion of the i_k-th longitude."""
    idx = _check_indices(d, indices)
    cap = len(idx) if cap is None else cap
    if cap < len(idx) - 1:
        raise ValueError(f"cap {cap} too small for a length-{len(idx)} invariant")
    return _longitude_series(d, cap)[idx[-1] - 1][idx[:-1]]


def _indeterminacy(d: LinkDiagram, idx: tuple[int, ...], cap: int) -> int:
    g = 0
    k = len(idx)
    seen = set()
    for size in range(2, k):
        for keep in itertools.combinations(range(k), size):
            sub = tuple(idx[p] for p in keep)
            for r in range(size):
                j = sub[r:] + sub[:r]
                if j not in seen:
                    seen.add(j)
                    g = gcd(g, mu_raw(d, j, cap))
                    if g == 1:
                        return 1
    return g


def mu_bar(d: LinkDiagram, indices: Sequence[int], cap: int | None = None) -> MilnorValue:
    """Milnor invariant with its indeterminacy; reduced modulo it when nonzero."""
    idx = _check_indices(d, indices)
    cap = max(len(idx), cap or 0)
    value = mu_raw(d, idx, cap)
    delta = _indeterminacy(d, idx, cap)
    if delta:
        value %= delta
    return MilnorValue(idx, value, delta)


def all_sequences(n: int, length: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(1, n + 1), repeat=length)


def mu_vanish_through(d: LinkDiagram, length: int, cap: int | None = None) -> bool:
    """True iff every raw Milnor coefficient of length 2..``length`` is zero."""
    if length < 2 or d.component_count < 2:
        return True
    cap = max(length, cap or 0)
    series = _longitude_series(d, cap)
    for s in series:
        for k in range(1, length):
            if any(s.degree_part(k).values()):
                return False
    return True


# -- Conway polynomial ---------------------------------------------------------

@dataclass(frozen=True)
class ConwayPolynomial:
    coefficients: tuple[int, ...] = ()  # entry k is the coefficient of z^k

    def __post_init__(self):
        c = list(self.coefficients)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __add__(self, other: "ConwayPolynomial") -> "ConwayPolynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        return ConwayPolynomial(tuple(self[k] + other[k] for k in range(n)))

    def shifted(self, factor: int) -> "ConwayPolynomial":
        """Multiply by ``factor * z``."""
        return ConwayPolynomial((0,) + tuple(factor * a for a in self.coefficients))

    def as_dict(self) -> dict[str, int]:
        return {str(k): a for k, a in enumerate(self.coefficients) if a}

    def __str__(self):
        terms = []
        for k, a in enumerate(self.coefficients):
            if not a:
                continue
            mono = "" if k == 0 else "z" if k == 1 else f"z^{k}"
            coef = str(a) if (a not in (1, -1) or k == 0) else ("" if a == 1 else "-")
            terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


_ZERO = ConwayPolynomial()
_ONE = ConwayPolynomial((1,))


def smooth(d: LinkDiagram, c: int) -> LinkDiagram:
    """Oriented smoothing at crossing ``c``."""
    where = d.passage_index()
    k1, j1 = where[(c, True)]
    k2, j2 = where[(c, False)]
    comps = [list(comp) for comp in d.components]
    kinks = list(d.framing_kinks)
    if k1 == k2:
        comp = comps[k1]
        rot = comp[j1:] + comp[:j1]
        q = (j2 - j1) % len(comp)
        comps[k1] = rot[1:q]
        comps.append(rot[q + 1:])
        kinks.append(0)
    else:
        a, b = comps[k1], comps[k2]
        comps[k1] = a[j1 + 1:] + a[:j1] + b[j2 + 1:] + b[:j2]
        kinks[k1] += kinks[k2]
        del comps[k2]
        del kinks[k2]
    keep = [x for x in range(d.crossing_count) if x != c]
    relabel = {x: i for i, x in enumerate(keep)}
    new = tuple(tuple((relabel[x], o) for x, o in comp) for comp in comps)
    return LinkDiagram(new, tuple(d.signs[x] for x in keep), tuple(kinks))


def _is_split(d: LinkDiagram) -> bool:
    n = d.component_count
    if n < 2:
        return False
    adj = {k: set() for k in range(n)}
    for o, u in d.crossing_components():
        adj[o].add(u)
        adj[u].add(o)
    seen, stack = {0}, [0]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) < n


def _first_bad_crossing(d: LinkDiagram) -> int | None:
    """First crossing met from below when walking components in order."""
    met = set()
    for comp in d.components:
        for c, o in comp:
            if c not in met:
                if not o:
                    return c
                met.add(c)
    return None


def _conway(d: LinkDiagram, memo: dict, degree: int) -> ConwayPolynomial:
    """Skein recursion; only coefficients up to ``degree`` are kept."""
    if degree < 0:
        return _ZERO
    d = simplify(d, 1000, allow_r3=False)
    if _is_split(d):
        return _ZERO
    key = (canonical_key(d), degree)
    if key in memo:
        return memo[key]
    if len(memo) > _WORK_LIMIT:
        raise ResourceError("skein recursion exceeded its work limit")
    c = _first_bad_crossing(d)
    if c is None:
        # descending diagram: an unlink
        result = _ONE if d.component_count == 1 else _ZERO
    else:
        rest = _conway(smooth(d, c), memo, degree - 1).shifted(d.signs[c])
        result = _conway(switch(d, [c]), memo, degree) + rest
    result = ConwayPolynomial(result.coefficients[:degree + 1])
    memo[key] = result
    return result


_WORK_LIMIT = 200_000


def conway(d: LinkDiagram, bound: int = DEFAULT_CONWAY_BOUND,
           degree: int | None = None) -> ConwayPolynomial:
    """Conway polynomial by skein recursion.

    The full polynomial is only computed for diagrams with at most
    ``bound`` crossings after simplification.  With ``degree`` set, only
    the coefficients of z^0..z^degree are computed, which stays cheap on
    larger diagrams because deep smoothing branches are pruned.
    """
    d = simplify(d, 1000)
    if degree is None:
        if d.crossing_count > bound:
            raise ResourceError(f"{d.crossing_count} crossings exceed the skein bound {bound}")
        degree = d.crossing_count + d.component_count
    return _cached_conway(d, degree)


@lru_cache(maxsize=1024)
def _cached_conway(d: LinkDiagram, degree: int) -> ConwayPolynomial:
    return _conway(d, {}, degree)


# -- finite type invariants -----------------------------------------------------

Invariant = Callable[[LinkDiagram], int]


def linking_entry(i: int, j: int) -> Invariant:
    def f(d: LinkDiagram) -> int:
        return linking_matrix(d)[i - 1][j - 1]

    f.__name__ = f"lk_{i}{j}"
    f.order = 1
    return f


def conway_coefficient(k: int, bound: int = DEFAULT_CONWAY_BOUND) -> Invariant:
    def f(d: LinkDiagram) -> int:
        return conway(d, bound, degree=k)[k]

    f.__name__ = f"c_{k}"
    f.order = k
    return f


@dataclass(frozen=True)
class SingularLink:
    """A diagram with some crossings marked as transverse double points."""

    diagram: LinkDiagram
    double_points: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        pts = frozenset(int(c) for c in self.double_points)
        if any(not 0 <= c < self.diagram.crossing_count for c in pts):
            raise ValueError("double point is not a crossing of the diagram")
        object.__setattr__(self, "double_points", pts)

    def resolutions(self):
        """Yield ``(sign, diagram)`` over all 2^k resolutions."""
        pts = sorted(self.double_points)
        for choice in itertools.product((1, -1), repeat=len(pts)):
            flip = [c for c, s in zip(pts, choice) if self.diagram.signs[c] != s]
            sign = -1 if choice.count(-1) % 2 else 1
            yield sign, switch(self.diagram, flip)


def vassiliev_eval(f: Invariant, s: SingularLink) -> int:
    return sum(sign * f(d) for sign, d in s.resolutions())


@dataclass(frozen=True)
class Profile:
    order: int
    components: int
    linking: tuple[tuple[int, ...], ...] | None
    conway: tuple[int, ...]

    @property
    def matches_unlink(self) -> bool:
        return self == unlink_profile(self.components, self.order)

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "lk": [list(r) for r in self.linking] if self.linking is not None else None,
            "conway": {str(k): a for k, a in enumerate(self.conway)},
            "matches_unlink": self.matches_unlink,
        }


def finite_type_profile(d: LinkDiagram, m: int, bound: int = DEFAULT_CONWAY_BOUND) -> Profile:
    """Linking matrix (from order 1 on) and Conway coefficients c_0..c_m."""
    if m < 0:
        raise ValueError("order must be non-negative")
    lk = tuple(map(tuple, linking_matrix(d))) if m >= 1 else None
    poly = conway(d, bound, degree=m)
    return Profile(m, d.component_count, lk, tuple(poly[k] for k in range(m + 1)))


@lru_cache(maxsize=64)
def unlink_profile(n: int, m: int) -> Profile:
    u = unlink(n)
    lk = tuple(map(tuple, linking_matrix(u))) if m >= 1 else None
    return Profile(m, n, lk, tuple((1 if (k == 0 and n == 1) else 0) for k in range(m + 1)))
