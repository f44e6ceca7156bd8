"""Crossing-change certificates, unlink recognition and consistency checks.

A certificate is a diagram together with ``m+1`` disjoint crossing sets
such that switching any non-empty union of them yields the target link.
Recognition of the target is a semi-decision: invariants can refute,
simplification can confirm, and anything else is reported as
inconclusive.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

from .diagram import (DiagramError, LinkDiagram, delete_components, from_pd, linking_matrix,
                      switch)
from .invariants import (DEFAULT_CONWAY_BOUND, MilnorValue, Profile, all_sequences, conway,
                         finite_type_profile, mu_bar, mu_vanish_through)
from .simplify import DEFAULT_BUDGET, canonical_key, simplify

DEFAULT_MU_CAP = 6


class Outcome(str, enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Target:
    """Either the ``n``-component unlink or an explicit diagram."""

    unlink: int | None = None
    diagram: LinkDiagram | None = None

    def __post_init__(self):
        if (self.unlink is None) == (self.diagram is None):
            raise ValueError("a target is either an unlink size or a diagram")

    @property
    def components(self) -> int:
        return self.unlink if self.unlink is not None else self.diagram.component_count

    @classmethod
    def parse(cls, value) -> "Target":
        if isinstance(value, str):
            kind, _, n = value.partition(":")
            if kind != "unlink" or not n.isdigit():
                raise ValueError(f"unknown target {value!r}")
            return cls(unlink=int(n))
        return cls(diagram=_diagram_from_json(value))

    def __str__(self):
        return f"unlink:{self.unlink}" if self.unlink is not None else self.diagram.gauss_code()


@dataclass(frozen=True)
class Certificate:
    diagram: LinkDiagram
    collection: tuple[frozenset[int], ...]
    target: Target

    def __post_init__(self):
        sets = tuple(frozenset(int(c) for c in s) for s in self.collection)
        if not sets:
            raise ValueError("a certificate needs at least one crossing set")
        for s in sets:
            if not s:
                raise ValueError("crossing sets must be non-empty")
            if any(not 0 <= c < self.diagram.crossing_count for c in s):
                raise ValueError("crossing set refers to a missing crossing")
        if sum(len(s) for s in sets) != len(frozenset().union(*sets)):
            raise ValueError("crossing sets must be pairwise disjoint")
        if self.target.components != self.diagram.component_count:
            raise ValueError("target and diagram have different component counts")
        object.__setattr__(self, "collection", sets)

    @property
    def order(self) -> int:
        """The ``m`` of the m-equivalence this certificate witnesses."""
        return len(self.collection) - 1

    def selections(self):
        """Non-empty sub-collections in binary counter order."""
        k = len(self.collection)
        for mask in range(1, 2 ** k):
            yield mask, frozenset().union(*(self.collection[i] for i in range(k) if mask >> i & 1))

    def switched(self):
        for mask, chosen in self.selections():
            yield mask, switch(self.diagram, chosen)

    def to_json(self) -> str:
        return json.dumps({
            "pd": self.diagram.pd_code(),
            "collection": [sorted(s) for s in self.collection],
            "target": str(self.target) if self.target.unlink is not None
            else self.target.diagram.pd_code(),
        })


def _diagram_from_json(data) -> LinkDiagram:
    if isinstance(data, list):
        return from_pd(data)
    return from_pd(data["crossings"], data.get("signs"), data.get("components"))


def load_certificate(text: str) -> Certificate:
    try:
        data = json.loads(text)
        return Certificate(_diagram_from_json(data["pd"]), tuple(data["collection"]),
                           Target.parse(data["target"]))
    except (KeyError, TypeError, json.JSONDecodeError, DiagramError) as exc:
        raise ValueError(f"malformed certificate: {exc}") from exc


# -- recognizing a target ------------------------------------------------------

def _invariants_agree(d: LinkDiagram, target: Target, cap: int, bound: int) -> bool:
    if d.component_count != target.components:
        return False
    if target.unlink is not None:
        n = target.unlink
        if any(any(row) for row in linking_matrix(d)):
            return False
        expected = (1,) if n == 1 else ()
        if conway(d, bound).coefficients != expected:
            return False
        return mu_vanish_through(d, cap)
    t = target.diagram
    return linking_matrix(d) == linking_matrix(t) and conway(d, bound) == conway(t, bound)


def _reaches(d: LinkDiagram, target: Target, budget: int) -> bool:
    s = simplify(d, budget)
    if target.unlink is not None:
        return s.crossing_count == 0 and s.component_count == target.unlink
    return canonical_key(s) == canonical_key(simplify(target.diagram, budget))


def recognize(d: LinkDiagram, target: Target, cap: int = DEFAULT_MU_CAP,
              budget: int = DEFAULT_BUDGET, bound: int = DEFAULT_CONWAY_BOUND) -> Outcome:
    if not _invariants_agree(d, target, cap, bound):
        return Outcome.REFUTED
    return Outcome.VERIFIED if _reaches(d, target, budget) else Outcome.INCONCLUSIVE


@dataclass
class VerificationReport:
    outcome: Outcome
    selections: list[tuple[int, Outcome]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"outcome": self.outcome.value,
                "selections": [{"mask": m, "outcome": o.value} for m, o in self.selections]}


def verify_certificate(c: Certificate, cap: int = DEFAULT_MU_CAP, budget: int = DEFAULT_BUDGET,
                       bound: int = DEFAULT_CONWAY_BOUND) -> VerificationReport:
    results = [(mask, recognize(d, c.target, cap, budget, bound)) for mask, d in c.switched()]
    outcomes = {o for _, o in results}
    if Outcome.REFUTED in outcomes:
        overall = Outcome.REFUTED
    elif outcomes == {Outcome.VERIFIED}:
        overall = Outcome.VERIFIED
    else:
        overall = Outcome.INCONCLUSIVE
    return VerificationReport(overall, results)


def _target_profile(target: Target, m: int, bound: int) -> Profile:
    if target.unlink is not None:
        from .invariants import unlink_profile

        return unlink_profile(target.unlink, m)
    return finite_type_profile(target.diagram, m, bound)


def m_equivalence_implies_profile(c: Certificate, m: int | None = None,
                                  bound: int = DEFAULT_CONWAY_BOUND) -> bool:
    """Compare order-``m`` profiles of the base and every switched diagram with the target's."""
    m = c.order if m is None else m
    want = _target_profile(c.target, m, bound)
    if finite_type_profile(c.diagram, m, bound) != want:
        return False
    return all(finite_type_profile(d, m, bound) == want for _, d in c.switched())


def search_certificates(d: LinkDiagram, m: int, target: Target, max_set: int = 2,
                        limit: int = 1, budget: int = 1000) -> list[Certificate]:
    """Exhaustive search over collections of small crossing sets (experimental)."""
    pool = [frozenset(s) for k in range(1, max_set + 1)
            for s in itertools.combinations(range(d.crossing_count), k)]
    found = []
    for combo in itertools.combinations(pool, m + 1):
        if len(frozenset().union(*combo)) != sum(map(len, combo)):
            continue
        cert = Certificate(d, combo, target)
        if all(_reaches(x, target, budget) for _, x in cert.switched()):
            found.append(cert)
            if len(found) >= limit:
                break
    return found


# -- Brunnian links -------------------------------------------------------------

@dataclass(frozen=True)
class BrunnianResult:
    brunnian: bool
    inconclusive: bool = False
    witness: tuple[int, ...] | None = None  # a sublink (1-based components) that failed

    def __bool__(self):
        return self.brunnian


def is_brunnian(d: LinkDiagram, weak: bool = False, cap: int = DEFAULT_MU_CAP,
                budget: int = DEFAULT_BUDGET, bound: int = DEFAULT_CONWAY_BOUND) -> BrunnianResult:
    n = d.component_count
    if n < 2:
        raise ValueError("Brunnian checks need at least two components")
    sizes = [n - 1] if weak else range(1, n)
    undecided = None
    for k in sizes:
        for keep in itertools.combinations(range(n), k):
            sub = delete_components(d, set(range(n)) - set(keep))
            verdict = recognize(sub, Target(unlink=k), cap, budget, bound)
            label = tuple(i + 1 for i in keep)
            if verdict is Outcome.REFUTED:
                return BrunnianResult(False, False, label)
            if verdict is Outcome.INCONCLUSIVE and undecided is None:
                undecided = label
    if undecided is not None:
        return BrunnianResult(False, True, undecided)
    return BrunnianResult(True)


# -- mu vanishing versus profiles ------------------------------------------------

def first_nonvanishing_mu(d: LinkDiagram, max_length: int) -> MilnorValue | None:
    n = d.component_count
    for k in range(2, max_length + 1):
        if mu_vanish_through(d, k, max_length):
            continue
        for seq in all_sequences(n, k):
            v = mu_bar(d, seq, max_length)
            if v.value:
                return v
    return None


@dataclass
class ConsistencyReport:
    order: int
    mu_vanish_m1: bool  # all invariants of length <= m+1 vanish
    mu_vanish_m2: bool  # all invariants of length <= m+2 vanish
    profile: Profile
    witness: MilnorValue | None

    @property
    def profile_trivial(self) -> bool:
        return self.profile.matches_unlink

    @property
    def consistent_b(self) -> bool:
        """Vanishing through m+2 forces an unlink-valued profile."""
        return not self.mu_vanish_m2 or self.profile_trivial

    @property
    def consistent_a(self) -> bool:
        """An unlink-valued profile forces vanishing through m+1."""
        return not self.profile_trivial or self.mu_vanish_m1

    @property
    def consistent(self) -> bool:
        return self.consistent_a and self.consistent_b

    def as_dict(self) -> dict:
        return {
            "m": self.order,
            "mu_vanish_through_m+1": self.mu_vanish_m1,
            "mu_vanish_through_m+2": self.mu_vanish_m2,
            "profile": self.profile.as_dict(),
            "first_nonvanishing_mu": self.witness.as_dict() if self.witness else None,
            "consistent_a": self.consistent_a,
            "consistent_b": self.consistent_b,
        }


def theorem1_check(d: LinkDiagram, m: int, bound: int = DEFAULT_CONWAY_BOUND) -> ConsistencyReport:
    cap = m + 2
    return ConsistencyReport(
        order=m,
        mu_vanish_m1=mu_vanish_through(d, m + 1, cap),
        mu_vanish_m2=mu_vanish_through(d, m + 2, cap),
        profile=finite_type_profile(d, m, bound),
        witness=first_nonvanishing_mu(d, cap) if d.component_count > 1 else None,
    )


@dataclass
class TrivialityReport:
    status: str  # "trivial (certified)", "nontrivial" or "undetermined at cap"
    cap: int
    witness: MilnorValue | None = None

    def as_dict(self) -> dict:
        return {"status": self.status, "cap": self.cap,
                "witness": self.witness.as_dict() if self.witness else None}


def corollary32_scan(d: LinkDiagram, cap: int = DEFAULT_MU_CAP,
                     budget: int = DEFAULT_BUDGET) -> TrivialityReport:
    witness = first_nonvanishing_mu(d, cap) if d.component_count > 1 else None
    if witness is not None:
        return TrivialityReport("nontrivial", cap, witness)
    s = simplify(d, budget)
    if s.crossing_count == 0:
        return TrivialityReport("trivial (certified)", cap)
    return TrivialityReport("undetermined at cap", cap)


def sublinks(n: int) -> Sequence[tuple[int, ...]]:
    return [keep for k in range(1, n) for keep in itertools.combinations(range(n), k)]
