"""Artin braid words, their action on free groups, and closures to diagrams.

A braid word is read left to right and drawn top to bottom.  The letter
``s<i>`` crosses the strand at position ``i+1`` over the strand at
position ``i``; with both strands oriented downwards this is a positive
crossing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import LinkDiagram
from .freegroup import FreeWord, RankError, in_lcs_term, multiply, reduce


class BraidSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotPureError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("a braid needs at least two strands")
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0 or abs(a) >= self.strands:
                raise ValueError(f"generator s{abs(a)} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def __invert__(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-a for a in reversed(self.letters)))

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else ~self
        return BraidWord(self.strands, base.letters * abs(k))

    def __len__(self):
        return len(self.letters)

    def permutation(self) -> tuple[int, ...]:
        """``perm[p]`` is the bottom position of the strand starting at top position ``p``."""
        pos = list(range(self.strands))
        for a in self.letters:
            i = abs(a) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        # pos[q] is the strand now at position q
        perm = [0] * self.strands
        for q, s in enumerate(pos):
            perm[s] = q
        return tuple(perm)

    def __str__(self):
        return " ".join(f"s{a}" if a > 0 else f"s{-a}^-1" for a in self.letters) or "1"


def identity(strands: int) -> BraidWord:
    return BraidWord(strands, ())


def commutator(a: BraidWord, b: BraidWord) -> BraidWord:
    return a * b * ~a * ~b


def pure_generator(i: int, j: int, strands: int) -> BraidWord:
    """A(i,j) = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1."""
    if not 1 <= i < j <= strands:
        raise ValueError(f"A({i},{j}) needs 1 <= i < j <= {strands}")
    down = tuple(range(j - 1, i, -1))
    return BraidWord(strands, down + (i, i) + tuple(-a for a in reversed(down)))


_TOKEN = re.compile(
    r"\s*(?:s(?P<s>\d+)|A\(\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\))(?:\^(?P<e>-?\d+))?")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``s1 s2^-1 A(1,3)^2``.

    Without ``strands`` the smallest strand count that fits is used.
    """
    letters: list[int] = []
    pos = 0
    text = text.rstrip()
    needed = 2
    if text.strip() == "1":
        text = ""
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise BraidSyntaxError(f"unexpected {text[start:start + 8]!r}", start)
        e = int(m.group("e") or 1)
        if m.group("s") is not None:
            g = int(m.group("s"))
            if g < 1:
                raise BraidSyntaxError("generator index must be positive", m.start("s"))
            needed = max(needed, g + 1)
            block = (g,)
        else:
            i, j = int(m.group("i")), int(m.group("j"))
            if not 1 <= i < j:
                raise BraidSyntaxError("A(i,j) needs 1 <= i < j", m.start("i"))
            needed = max(needed, j)
            block = pure_generator(i, j, j).letters
        inv = tuple(-a for a in reversed(block))
        letters.extend((block if e > 0 else inv) * abs(e))
        pos = m.end()
    if strands is None:
        strands = needed
    elif needed > strands:
        raise ValueError(f"braid needs {needed} strands, only {strands} given")
    return BraidWord(strands, tuple(letters))


def is_pure(b: BraidWord) -> bool:
    return b.permutation() == tuple(range(b.strands))


# -- Artin action ------------------------------------------------------------

def _apply_letter(a: int, w: tuple[int, ...]) -> tuple[int, ...]:
    i = abs(a)
    out: list[int] = []
    for x in w:
        g, s = abs(x), (1 if x > 0 else -1)
        if g == i:
            img = (i, i + 1, -i) if a > 0 else (i + 1,)
        elif g == i + 1:
            img = (i,) if a > 0 else (-(i + 1), i, i + 1)
        else:
            img = (g,)
        out.extend(img if s > 0 else tuple(-y for y in reversed(img)))
    return reduce(FreeWord(tuple(out), 0 if not out else max(abs(y) for y in out))).letters


def artin_action(b: BraidWord, w: FreeWord) -> FreeWord:
    """Apply the braid to ``w``, one letter at a time from the left."""
    if w.rank != b.strands:
        raise RankError(f"word of rank {w.rank} acted on by a {b.strands}-strand braid")
    letters = reduce(w).letters
    for a in b.letters:
        letters = _apply_letter(a, letters)
    return FreeWord(letters, b.strands)


def artin_rep_trivial(b: BraidWord, m: int) -> bool:
    """True iff ``b`` fixes every generator modulo the (m+1)-st LCS term."""
    if not is_pure(b):
        raise NotPureError("the Artin representation test needs a pure braid")
    for i in range(1, b.strands + 1):
        x = FreeWord.generator(i, b.strands)
        if not in_lcs_term(multiply(artin_action(b, x), ~x), m + 1):
            return False
    return True


# -- closures -----------------------------------------------------------------

def _trace(b: BraidWord, down: list[bool]):
    """Walk the braid and record crossings.

    Returns ``(signs, visits)`` where ``visits[s]`` lists the passages of
    the strand starting at top position ``s`` in top-to-bottom order.
    """
    at = list(range(b.strands))
    signs: list[int] = []
    visits: list[list[tuple[int, bool]]] = [[] for _ in range(b.strands)]
    for a in b.letters:
        i = abs(a) - 1
        left, right = at[i], at[i + 1]
        # s_i carries the right strand over to the left; s_i^-1 the left one over
        over, under = (right, left) if a > 0 else (left, right)
        dx_over = -1 if over == right else 1
        ov = (dx_over, -1) if down[over] else (-dx_over, 1)
        un = (-dx_over, -1) if down[under] else (dx_over, 1)
        cross = ov[0] * un[1] - ov[1] * un[0]
        c = len(signs)
        signs.append(1 if cross > 0 else -1)
        visits[over].append((c, True))
        visits[under].append((c, False))
        at[i], at[i + 1] = right, left
    return signs, visits


def plat_closure(b: BraidWord) -> LinkDiagram:
    """Cap strands (2i-1, 2i) at top and bottom.

    Odd strands point down and even strands point up, so component ``i``
    runs down strand ``2i-1`` and back up strand ``2i``.
    """
    if b.strands % 2:
        raise ValueError("a plat closure needs an even number of strands")
    if not is_pure(b):
        raise NotPureError("plat closure is defined here for pure braids")
    down = [s % 2 == 0 for s in range(b.strands)]
    signs, visits = _trace(b, down)
    comps = tuple(tuple(visits[2 * k]) + tuple(reversed(visits[2 * k + 1]))
                  for k in range(b.strands // 2))
    return LinkDiagram(comps, tuple(signs))


def ordinary_closure(b: BraidWord) -> LinkDiagram:
    """Close each strand around the braid axis; all strands point down."""
    if not is_pure(b):
        raise NotPureError("ordinary closure is defined here for pure braids")
    signs, visits = _trace(b, [True] * b.strands)
    return LinkDiagram(tuple(map(tuple, visits)), tuple(signs))


def rainbow_conjugator(n: int) -> BraidWord:
    """Braid ``d`` on 2n strands with plat(d b d^-1) equal to the closure of b.

    ``b`` lives on the first n strands and is padded with n idle strands.
    The caps are paired outward (strand k with strand 2n+1-k), and each
    adjacent swap uses a negative generator.
    """
    letters: list[int] = []
    order = list(range(1, 2 * n + 1))
    target = []
    for k in range(n):
        target += [k + 1, 2 * n - k]
    for p, want in enumerate(target):
        q = order.index(want)
        while q > p:
            letters.append(-q)
            order[q - 1], order[q] = order[q], order[q - 1]
            q -= 1
    # the swaps above carry the rainbow to adjacent pairs; caps need the reverse
    return ~BraidWord(2 * n, tuple(letters))


def pad(b: BraidWord, strands: int) -> BraidWord:
    if strands < b.strands:
        raise ValueError("cannot pad to fewer strands")
    return BraidWord(strands, b.letters)
