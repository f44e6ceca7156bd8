"""Example links used by the test-suite and the command line.

All braids here are pure, so their plat closures have one component per
pair of strands.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .braid import (BraidWord, commutator, is_pure, ordinary_closure, pad, parse_braid,
                    plat_closure, pure_generator, rainbow_conjugator)
from .diagram import LinkDiagram, from_pd
from .equivalence import Certificate, Target

# Whitehead link as the plat closure of a pure 4-braid.  Its first
# longitude agrees with [[x1,x2],x2^-1] through Magnus degree 4.
WHITEHEAD_BRAID = "A(1,2)^-1 A(1,3)^-1 A(2,3)^-1 A(1,2)"

# The 5-crossing Whitehead link L5a1 in the usual tabulated PD notation.
WHITEHEAD_PD = [[6, 1, 7, 2], [10, 7, 5, 8], [4, 5, 1, 6], [2, 10, 3, 9], [8, 4, 9, 3]]

HOPF_PLAT = "A(2,3)"


def whitehead_plat() -> LinkDiagram:
    return plat_closure(parse_braid(WHITEHEAD_BRAID, 4))


def whitehead_reference() -> LinkDiagram:
    return from_pd(WHITEHEAD_PD)


def hopf_plat() -> LinkDiagram:
    return plat_closure(parse_braid(HOPF_PLAT, 4))


# -- random pure plats ------------------------------------------------------------

def random_pure_braid(rng: random.Random, strands: int, max_crossings: int) -> BraidWord:
    """A random word in the pure generators A(i,j)^{+-1}, within a crossing budget."""
    pairs = [(i, j) for i in range(1, strands + 1) for j in range(i + 1, strands + 1)]
    letters: list[int] = []
    target = rng.randint(2, max_crossings)
    while True:
        i, j = rng.choice(pairs)
        g = pure_generator(i, j, strands)
        if rng.random() < 0.5:
            g = ~g
        if len(letters) + len(g) > target:
            break
        letters.extend(g.letters)
    return BraidWord(strands, tuple(letters))


def random_plats(count: int, seed: int = 0, max_strands: int = 8,
                 max_crossings: int = 14) -> list[tuple[BraidWord, LinkDiagram]]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        strands = rng.choice(range(4, max_strands + 1, 2))
        b = random_pure_braid(rng, strands, max_crossings)
        out.append((b, plat_closure(b)))
    return out


# -- certificates -----------------------------------------------------------------

@dataclass(frozen=True)
class _Letter:
    """A pure generator inside a braid, recorded with the crossing it can kill."""

    braid: BraidWord
    killer: int  # offset of one of the two central crossings


def _generator(rng: random.Random, strands: int) -> _Letter:
    i = rng.randrange(1, strands)
    j = rng.randrange(i + 1, strands + 1)
    g = pure_generator(i, j, strands)
    if rng.random() < 0.5:
        g = ~g
    middle = j - i - 1  # index of the first of the two s_i letters
    return _Letter(g, middle + rng.randrange(2))


def _nest(rng: random.Random, depth: int, strands: int) -> list[tuple[int, int | None]]:
    """An iterated commutator of ``depth + 1`` random pure generators.

    Each braid letter comes with the index of the generator whose chosen
    central crossing it is, or None.
    """
    gens = [_generator(rng, strands) for _ in range(depth + 1)]

    def inv(word):
        return [(-a, mark) for a, mark in reversed(word)]

    def build(k):
        g = gens[k]
        word = [(a, k if p == g.killer else None) for p, a in enumerate(g.braid.letters)]
        if k == 0:
            return word
        inner = build(k - 1)
        return inner + word + inv(inner) + inv(word)

    return build(depth)


def random_certificate(rng: random.Random, m: int, pairs: int = 2,
                       conjugator_length: int = 4) -> Certificate:
    """A diagram that is m-equivalent to the unlink by construction.

    The braid is ``g X g^-1`` where ``X`` is an iterated commutator of
    ``m+1`` pure generators.  Set ``C_k`` switches one central crossing in
    each occurrence of the k-th generator, which turns that generator into
    a cancelling pair, so every non-empty selection kills ``X``.
    """
    strands = 2 * pairs
    marked = _nest(rng, m, strands)
    g = [rng.choice([1, -1]) * rng.randrange(1, strands) for _ in range(conjugator_length)]
    letters = g + [a for a, _ in marked] + [-a for a in reversed(g)]
    offset = len(g)
    sets = [set() for _ in range(m + 1)]
    for p, (_, mark) in enumerate(marked):
        if mark is not None:
            sets[mark].add(offset + p)
    b = BraidWord(strands, tuple(letters))
    assert is_pure(b)
    return Certificate(plat_closure(b), tuple(frozenset(s) for s in sets), Target(unlink=pairs))


def certificate_corpus(count: int, seed: int = 0, max_order: int = 2) -> list[Certificate]:
    rng = random.Random(seed)
    return [random_certificate(rng, k % (max_order + 1), pairs=2 + (k % 2))
            for k in range(count)]


# -- Brunnian plats ----------------------------------------------------------------

BRUNNIAN_WORDS = {
    "bing-4": (4, "[[A(1,2),A(2,3)],A(3,4)]"),
    "milnor-4": (4, "[[A(1,2),A(1,3)],A(1,4)]"),
    "bing-5": (5, "[[[A(1,2),A(2,3)],A(3,4)],A(4,5)]"),
}


def parse_commutator_braid(text: str, strands: int) -> BraidWord:
    """Parse nested ``[u,v]`` over braid words such as ``[[A(1,2),A(2,3)],A(3,4)]``."""
    text = text.strip()
    if not text.startswith("["):
        return parse_braid(text, strands)
    depth = parens = 0
    for p, ch in enumerate(text):
        if ch in "[]":
            depth += 1 if ch == "[" else -1
        elif ch in "()":
            parens += 1 if ch == "(" else -1
        elif ch == "," and depth == 1 and parens == 0:
            left = parse_commutator_braid(text[1:p], strands)
            right = parse_commutator_braid(text[p + 1:-1], strands)
            return commutator(left, right)
    raise ValueError(f"unbalanced commutator {text!r}")


def closure_as_plat(b: BraidWord) -> BraidWord:
    """A pure 2n-braid whose plat closure is the ordinary closure of ``b``."""
    d = rainbow_conjugator(b.strands)
    return d * pad(b, 2 * b.strands) * ~d


def brunnian_examples() -> dict[str, tuple[BraidWord, LinkDiagram]]:
    out = {}
    for name, (n, text) in BRUNNIAN_WORDS.items():
        b = parse_commutator_braid(text, n)
        p = closure_as_plat(b)
        out[name] = (p, plat_closure(p))
    return out


def brunnian_closure(name: str) -> LinkDiagram:
    n, text = BRUNNIAN_WORDS[name]
    return ordinary_closure(parse_commutator_braid(text, n))
