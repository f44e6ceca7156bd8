"""Exact word algebra in free groups F(x_1, ..., x_n).

Words are stored as tuples of signed generator indices: ``3`` is x_3 and
``-3`` is its inverse.  The commutator convention is
``[u, v] = u v u^-1 v^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_CAP = 8


class RankError(ValueError):
    pass


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A word in F(x_1..x_rank); not necessarily reduced."""

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        for a in self.letters:
            if a == 0 or abs(a) > self.rank:
                raise RankError(f"generator index {abs(a)} outside 1..{self.rank}")

    @classmethod
    def identity(cls, rank: int) -> "FreeWord":
        return cls((), rank)

    @classmethod
    def generator(cls, i: int, rank: int, exponent: int = 1) -> "FreeWord":
        if exponent not in (1, -1):
            raise ValueError("exponent must be +1 or -1")
        return cls((i * exponent,), rank)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], rank: int) -> "FreeWord":
        return cls(tuple(i * e for i, e in pairs), rank)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((abs(a), 1 if a > 0 else -1) for a in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return multiply(self, other)

    def __invert__(self) -> "FreeWord":
        return invert(self)

    def is_reduced(self) -> bool:
        return all(a != -b for a, b in zip(self.letters, self.letters[1:]))

    def exponent_sums(self) -> tuple[int, ...]:
        sums = [0] * self.rank
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return tuple(sums)

    def with_rank(self, rank: int) -> "FreeWord":
        return FreeWord(self.letters, rank)

    def __str__(self) -> str:
        return format_word(self)


def reduce(w: FreeWord) -> FreeWord:
    return FreeWord(_free_reduce(w.letters), w.rank)


def _check_rank(u: FreeWord, v: FreeWord) -> None:
    if u.rank != v.rank:
        raise RankError(f"rank mismatch: {u.rank} != {v.rank}")


def multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    _check_rank(u, v)
    return FreeWord(_free_reduce(u.letters + v.letters), u.rank)


def invert(w: FreeWord) -> FreeWord:
    return FreeWord(_free_reduce(-a for a in reversed(w.letters)), w.rank)


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    _check_rank(u, v)
    return multiply(multiply(u, v), multiply(invert(u), invert(v)))


def product(words: Sequence[FreeWord], rank: int) -> FreeWord:
    letters: list[int] = []
    for w in words:
        if w.rank != rank:
            raise RankError(f"rank mismatch: {w.rank} != {rank}")
        letters.extend(w.letters)
    return FreeWord(_free_reduce(letters), rank)


# --------------------------------------------------------------------------
# text syntax:  x1 x2^-1 [[x1,x2],x2^-1]

_POWER = re.compile(r"\^\s*(-?\d+)")
_GENERATOR = re.compile(r"x(\d+)")


def parse_word(text: str, rank: int | None = None) -> FreeWord:
    """Parse ``x1 x2^-1 [x1,x2]``-style text.

    Powers ``^k`` are accepted on generators and on bracketed commutators.
    When ``rank`` is omitted the largest generator index is used.
    """
    if text.strip() == "1":
        return FreeWord((), rank or 1)
    pos = 0
    n = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_power() -> int:
        nonlocal pos
        skip_ws()
        if pos < n and text[pos] == "^":
            m = _POWER.match(text, pos)
            if not m:
                raise WordSyntaxError("bad exponent", pos)
            pos = m.end()
            return int(m.group(1))
        return 1

    def parse_seq(closers: str) -> list[int]:
        nonlocal pos
        out: list[int] = []
        while True:
            skip_ws()
            if pos >= n or text[pos] in closers:
                return out
            if text[pos] == "[":
                pos += 1
                left = parse_seq(",")
                skip_ws()
                if pos >= n or text[pos] != ",":
                    raise WordSyntaxError("expected ','", pos)
                pos += 1
                right = parse_seq("]")
                skip_ws()
                if pos >= n or text[pos] != "]":
                    raise WordSyntaxError("expected ']'", pos)
                pos += 1
                inv_l = [-a for a in reversed(left)]
                inv_r = [-a for a in reversed(right)]
                block = left + right + inv_l + inv_r
            else:
                m = _GENERATOR.match(text, pos)
                if not m:
                    raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
                pos = m.end()
                i = int(m.group(1))
                if i < 1:
                    raise WordSyntaxError("generator index must be >= 1", m.start())
                block = [i]
            k = parse_power()
            if k < 0:
                block = [-a for a in reversed(block)]
            out.extend(block * abs(k))

    letters = parse_seq("")
    if pos != n:
        raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
    top = max((abs(a) for a in letters), default=0)
    if rank is None:
        rank = max(top, 1)
    elif top > rank:
        raise RankError(f"generator index {top} outside 1..{rank}")
    return FreeWord(tuple(letters), rank)


def format_word(w: FreeWord, symbol: str = "x") -> str:
    if not w.letters:
        return "1"
    return " ".join(f"{symbol}{a}" if a > 0 else f"{symbol}{-a}^-1" for a in w.letters)


# --------------------------------------------------------------------------
# commutator trees


@dataclass(frozen=True)
class Leaf:
    index: int
    exponent: int = 1

    @property
    def length(self) -> int:
        return 1


@dataclass(frozen=True)
class Bracket:
    left: "CommutatorTree"
    right: "CommutatorTree"

    @property
    def length(self) -> int:
        return self.left.length + self.right.length


CommutatorTree = Leaf | Bracket


def is_simple(t: CommutatorTree) -> bool:
    """Every bracket node has a leaf on at least one side."""
    if isinstance(t, Leaf):
        return True
    if isinstance(t.left, Leaf):
        return is_simple(t.right)
    if isinstance(t.right, Leaf):
        return is_simple(t.left)
    return False


def _flat(t: CommutatorTree) -> tuple[int, ...]:
    if isinstance(t, Leaf):
        return (t.index * t.exponent,)
    a, b = _flat(t.left), _flat(t.right)
    return _free_reduce(a + b + tuple(-x for x in reversed(a)) + tuple(-x for x in reversed(b)))


def flatten(t: CommutatorTree, rank: int) -> FreeWord:
    return FreeWord(_flat(t), rank)


def invert_tree(t: CommutatorTree) -> CommutatorTree:
    # [A,B]^-1 = [B,A]
    if isinstance(t, Leaf):
        return Leaf(t.index, -t.exponent)
    return Bracket(t.right, t.left)


def left_normed(indices: Sequence[int]) -> CommutatorTree:
    """[[...[x_i1, x_i2], ...], x_ik] with positive leaves."""
    t: CommutatorTree = Leaf(indices[0])
    for i in indices[1:]:
        t = Bracket(t, Leaf(i))
    return t


def format_tree(t: CommutatorTree) -> str:
    if isinstance(t, Leaf):
        return f"x{t.index}" if t.exponent > 0 else f"x{t.index}^-1"
    return f"[{format_tree(t.left)},{format_tree(t.right)}]"


def tree_from_text(text: str) -> CommutatorTree:
    text = text.strip()
    m = re.fullmatch(r"x(\d+)(\^-1)?", text)
    if m:
        return Leaf(int(m.group(1)), -1 if m.group(2) else 1)
    if not (text.startswith("[") and text.endswith("]")):
        raise WordSyntaxError("expected a generator or bracket", 0)
    inner = text[1:-1]
    depth = 0
    for k, ch in enumerate(inner):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            return Bracket(tree_from_text(inner[:k]), tree_from_text(inner[k + 1:]))
    raise WordSyntaxError("bracket without top-level ','", 0)


# --------------------------------------------------------------------------
# Magnus expansion in the truncated ring Z<<X_1..X_n>> / (degree > cap)


class MagnusSeries:
    """Truncated noncommutative power series with integer coefficients.

    ``terms[k]`` is a flat object array of length ``rank**k``; the entry at
    base-``rank`` position ``(i_1-1, ..., i_k-1)`` is the coefficient of
    ``X_i1 ... X_ik``.
    """

    __slots__ = ("rank", "cap", "terms")

    def __init__(self, rank: int, cap: int, terms: Sequence[np.ndarray] | None = None):
        if cap < 1:
            raise ValueError("degree cap must be >= 1")
        self.rank = rank
        self.cap = cap
        if terms is None:
            terms = [np.zeros(rank**k, dtype=object) for k in range(cap + 1)]
        self.terms = list(terms)

    @classmethod
    def one(cls, rank: int, cap: int) -> "MagnusSeries":
        s = cls(rank, cap)
        s.terms[0][0] = 1
        return s

    @classmethod
    def from_dict(cls, rank: int, cap: int, coeffs: dict[tuple[int, ...], int]) -> "MagnusSeries":
        s = cls(rank, cap)
        for seq, c in coeffs.items():
            if len(seq) <= cap:
                s.terms[len(seq)][_index(seq, rank)] += c
        return s

    def copy(self) -> "MagnusSeries":
        return MagnusSeries(self.rank, self.cap, [t.copy() for t in self.terms])

    def __getitem__(self, seq: Sequence[int]) -> int:
        seq = tuple(seq)
        if len(seq) > self.cap:
            raise IndexError(f"sequence longer than degree cap {self.cap}")
        if any(i < 1 or i > self.rank for i in seq):
            raise IndexError(f"index outside 1..{self.rank}")
        return int(self.terms[len(seq)][_index(seq, self.rank)])

    @property
    def coefficients(self) -> dict[tuple[int, ...], int]:
        out = {}
        for k, arr in enumerate(self.terms):
            for pos in np.flatnonzero(arr != 0):
                out[_unindex(int(pos), k, self.rank)] = int(arr[pos])
        return out

    def degree_part(self, k: int) -> dict[tuple[int, ...], int]:
        arr = self.terms[k]
        return {_unindex(int(p), k, self.rank): int(arr[p]) for p in np.flatnonzero(arr != 0)}

    def min_degree(self) -> int | None:
        """Lowest positive degree carrying a nonzero coefficient."""
        for k in range(1, self.cap + 1):
            if np.any(self.terms[k] != 0):
                return k
        return None

    def is_one(self) -> bool:
        return self.terms[0][0] == 1 and self.min_degree() is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        if (self.rank, self.cap) != (other.rank, other.cap):
            return False
        return all(np.array_equal(a, b) for a, b in zip(self.terms, other.terms))

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        if (self.rank, self.cap) != (other.rank, other.cap):
            raise RankError("Magnus series with different rank or cap")
        out = MagnusSeries(self.rank, self.cap)
        for i, a in enumerate(self.terms):
            if not np.any(a != 0):
                continue
            for j in range(0, self.cap - i + 1):
                b = other.terms[j]
                out.terms[i + j] = out.terms[i + j] + np.outer(a, b).ravel()
        return out

    def __sub__(self, other: "MagnusSeries") -> "MagnusSeries":
        return MagnusSeries(self.rank, self.cap, [a - b for a, b in zip(self.terms, other.terms)])

    def __add__(self, other: "MagnusSeries") -> "MagnusSeries":
        return MagnusSeries(self.rank, self.cap, [a + b for a, b in zip(self.terms, other.terms)])

    def times_letter(self, letter: int) -> "MagnusSeries":
        """Right multiplication by the image of x_i^{+-1}."""
        n = self.rank
        i = abs(letter) - 1
        out = [t.copy() for t in self.terms]
        if letter > 0:
            for k in range(self.cap, 0, -1):
                out[k].reshape(-1, n)[:, i] += self.terms[k - 1]
        else:
            # t * (1 + X) = s  =>  t_k = s_k - t_{k-1} X
            for k in range(1, self.cap + 1):
                out[k].reshape(-1, n)[:, i] -= out[k - 1]
        return MagnusSeries(n, self.cap, out)

    def inverse(self) -> "MagnusSeries":
        """Inverse of a series with constant term 1."""
        if self.terms[0][0] != 1:
            raise ValueError("only series with constant term 1 are invertible here")
        t = MagnusSeries(self.rank, self.cap, [np.zeros_like(x) for x in self.terms])
        t.terms[0][0] = 1
        # t_k = -sum_{j>=1} t_{k-j} s_j
        for k in range(1, self.cap + 1):
            acc = np.zeros(self.rank**k, dtype=object)
            for j in range(1, k + 1):
                acc = acc - np.outer(t.terms[k - j], self.terms[j]).ravel()
            t.terms[k] = acc
        return t

    def truncate(self, cap: int) -> "MagnusSeries":
        return MagnusSeries(self.rank, cap, [t.copy() for t in self.terms[: cap + 1]])

    def __repr__(self) -> str:
        return f"MagnusSeries({format_series(self)})"


def _index(seq: Sequence[int], n: int) -> int:
    pos = 0
    for i in seq:
        pos = pos * n + (i - 1)
    return pos


def _unindex(pos: int, k: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        pos, r = divmod(pos, n)
        out.append(r + 1)
    return tuple(reversed(out))


def format_series(s: MagnusSeries, names: Sequence[str] | None = None) -> str:
    names = names or [f"X{i}" for i in range(1, s.rank + 1)]
    parts = []
    for seq, c in sorted(s.coefficients.items(), key=lambda kv: (len(kv[0]), kv[0])):
        mono = "".join(names[i - 1] for i in seq) or "1"
        if mono == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{c}{mono}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def magnus(w: FreeWord, cap: int = DEFAULT_CAP) -> MagnusSeries:
    s = MagnusSeries.one(w.rank, cap)
    for a in w.letters:
        s = s.times_letter(a)
    return s


def lcs_depth(w: FreeWord, cap: int = DEFAULT_CAP) -> int:
    """Largest m <= cap with w in F^(m); a return value of ``cap`` means >= cap."""
    k = magnus(w, cap).min_degree()
    return cap if k is None else k


def in_lcs_term(w: FreeWord, m: int) -> bool:
    """Exact test for membership of w in F^(m)."""
    if m <= 1:
        return True
    return magnus(w, m - 1).is_one()


# --------------------------------------------------------------------------
# Lyndon words and reconstruction of a group element from its expansion


def lyndon_words(n: int, k: int) -> list[tuple[int, ...]]:
    """Lyndon words of length k over 1..n in increasing lexicographic order (Duval)."""
    out = []
    w = [0]
    while w:
        if len(w) == k:
            out.append(tuple(a + 1 for a in w))
        m = len(w)
        while len(w) < k:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
        if w:
            w[-1] += 1
    return out


def _is_lyndon(w: tuple[int, ...]) -> bool:
    return all(w < w[i:] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def standard_bracketing(w: tuple[int, ...]) -> CommutatorTree:
    """Standard bracketing of a Lyndon word (split off its longest proper Lyndon suffix)."""
    if len(w) == 1:
        return Leaf(w[0])
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            return Bracket(standard_bracketing(w[:i]), standard_bracketing(w[i:]))
    raise ValueError(f"{w} is not a Lyndon word")


def lie_polynomial(t: CommutatorTree) -> dict[tuple[int, ...], int]:
    """Lie element of a bracket of positive leaves, as word -> coefficient."""
    if isinstance(t, Leaf):
        return {(t.index,): t.exponent}
    a, b = lie_polynomial(t.left), lie_polynomial(t.right)
    out: dict[tuple[int, ...], int] = {}
    for u, cu in a.items():
        for v, cv in b.items():
            out[u + v] = out.get(u + v, 0) + cu * cv
            out[v + u] = out.get(v + u, 0) - cu * cv
    return {w: c for w, c in out.items() if c}


def lyndon_coordinates(lie: dict[tuple[int, ...], int], n: int, k: int) -> dict[tuple[int, ...], int]:
    """Coordinates of a homogeneous degree-k Lie element in the Lyndon basis.

    The basis element of a Lyndon word l is its standard bracket, whose
    smallest word is l itself with coefficient 1, so elimination in
    increasing lexicographic order is exact over the integers.
    """
    rest = dict(lie)
    coords = {}
    for l in lyndon_words(n, k):
        c = rest.get(l, 0)
        if c:
            coords[l] = c
            for w, d in lie_polynomial(standard_bracketing(l)).items():
                rest[w] = rest.get(w, 0) - c * d
    if any(rest.values()):
        raise ValueError("not a Lie element")
    return coords


def word_from_magnus(s: MagnusSeries) -> FreeWord:
    """A word whose Magnus expansion agrees with ``s`` through the cap.

    ``s`` must be the expansion of a group element.  The word is built degree
    by degree as a product of powers of Lyndon basic commutators.
    """
    rank, cap = s.rank, s.cap
    letters: list[int] = []
    current = MagnusSeries.one(rank, cap)
    for k in range(1, cap + 1):
        resid = current.inverse() * s
        low = resid.min_degree()
        if low is None:
            break
        if low < k:
            raise ValueError("series is not group-like")
        if low > k:
            continue
        coords = lyndon_coordinates(resid.degree_part(k), rank, k)
        for l, c in coords.items():
            block = _flat(standard_bracketing(l))
            if c < 0:
                block = tuple(-a for a in reversed(block))
            for _ in range(abs(c)):
                for a in block:
                    current = current.times_letter(a)
                letters.extend(block)
    w = FreeWord(_free_reduce(letters), rank)
    if magnus(w, cap) != s:
        raise ValueError("series is not the expansion of a group element")
    return w


# --------------------------------------------------------------------------
# Lie-level rewriting into left-normed brackets


def left_normed_expansion(t: CommutatorTree) -> dict[tuple[int, ...], int]:
    """Write the Lie element of ``t`` as a Z-combination of left-normed brackets.

    Uses [A,[B,C]] = [[A,B],C] - [[A,C],B] until every right argument is a
    single generator.  Leaves must be positive.
    """

    def bracket(lin: dict[tuple[int, ...], int], b: CommutatorTree) -> dict[tuple[int, ...], int]:
        if isinstance(b, Leaf):
            return {seq + (b.index,): c * b.exponent for seq, c in lin.items()}
        x = bracket(bracket(lin, b.left), b.right)
        y = bracket(bracket(lin, b.right), b.left)
        out = dict(x)
        for seq, c in y.items():
            out[seq] = out.get(seq, 0) - c
        return {s: c for s, c in out.items() if c}

    def ln(tree: CommutatorTree) -> dict[tuple[int, ...], int]:
        if isinstance(tree, Leaf):
            return {(tree.index,): tree.exponent}
        return bracket(ln(tree.left), tree.right)

    return ln(t)


# --------------------------------------------------------------------------
# decomposition into simple commutators


class DecompositionError(ValueError):
    pass


@lru_cache(maxsize=65536)
def recognize_simple(word: tuple[int, ...]) -> CommutatorTree | None:
    """A simple commutator whose reduced flattening is exactly ``word``, if any.

    Uses [A,y]·y = A y A^-1 and y^-1·[y,A] = A y^-1 A^-1: a reduced conjugate
    of a letter determines A up to a power of that letter, and the power is
    fixed by requiring A to have zero exponent sums.
    """
    if len(word) == 1:
        a = word[0]
        return Leaf(abs(a), 1 if a > 0 else -1)
    if len(word) < 4 or len(word) % 2:
        return None
    letters = set(abs(a) for a in word)
    for g in letters:
        for y in (g, -g):
            for side in ("right", "left"):
                if side == "right":
                    c = _free_reduce(word + (y,))
                    mid = y
                else:
                    c = _free_reduce((-y,) + word)
                    mid = -y
                h = len(c) // 2
                if len(c) % 2 == 0 or c[h] != mid:
                    continue
                u = c[:h]
                if c[h + 1:] != tuple(-a for a in reversed(u)):
                    continue
                for a_word in _conjugator_choices(u, abs(y)):
                    sub = recognize_simple(a_word)
                    if sub is None:
                        continue
                    leaf = Leaf(abs(y), 1 if y > 0 else -1)
                    t = Bracket(sub, leaf) if side == "right" else Bracket(leaf, sub)
                    if _flat(t) == word:
                        return t
    return None


def _conjugator_choices(u: tuple[int, ...], g: int) -> list[tuple[int, ...]]:
    # A = u x_g^j: either a single letter, or j cancels the x_g exponent sum of u
    exp = sum((1 if a > 0 else -1) for a in u if abs(a) == g)
    out = []
    zero_sum = _free_reduce(u + ((-g,) * exp if exp > 0 else (g,) * (-exp)))
    if zero_sum:
        out.append(zero_sum)
    for j in range(-len(u) - 1, len(u) + 2):
        c = _free_reduce(u + ((g,) * j if j > 0 else (-g,) * (-j)))
        if len(c) == 1 and c not in out:
            out.append(c)
    return out


def _prefix_candidates(r: tuple[int, ...], m: int, max_prefix: int = 400) -> list[CommutatorTree]:
    """Simple commutators of length >= m whose first half is visible at the start of r."""
    out = []
    n = len(r)
    used = {abs(a) for a in r}
    gens = [g for i in sorted(used) for g in (i, -i)]
    for p in range(1, min(n, max_prefix)):
        y = r[p]
        leaf = Leaf(abs(y), 1 if y > 0 else -1)
        for a_word in {r[:p], _free_reduce(r[:p] + (-y,))}:
            if not a_word:
                continue
            a = recognize_simple(a_word)
            if a is not None and a.length + 1 >= m:
                out.append(Bracket(a, leaf))
        if p >= 2:
            a = recognize_simple(r[1:p])
            if a is not None and a.length + 1 >= m:
                out.append(Bracket(Leaf(abs(r[0]), 1 if r[0] > 0 else -1), a))
        # [y, A] where A begins with y^-1, so y is not visible
        for z in gens:
            if z == -r[0]:
                continue
            a = recognize_simple((z,) + r[:p])
            if a is not None and a.length + 1 >= m:
                out.append(Bracket(Leaf(abs(z), -1 if z > 0 else 1), a))
    whole = recognize_simple(r)
    if whole is not None and whole.length >= m:
        out.append(whole)
    return out


def _lie_candidates(r: FreeWord, m: int) -> list[CommutatorTree]:
    k = max(m, 1)
    while True:
        s = magnus(r, k)
        low = s.min_degree()
        if low is not None:
            break
        if k >= min(len(r.letters), DEFAULT_CAP):
            return []
        k += 1
    k = low
    out = []
    for l, c in lyndon_coordinates(s.degree_part(k), r.rank, k).items():
        for seq, d in left_normed_expansion(standard_bracketing(l)).items():
            t = left_normed(seq)
            out.append(t if c * d > 0 else invert_tree(t))
    return out


def decompose_simple_quasi(w: FreeWord, m: int, budget: int = 20000) -> list[CommutatorTree]:
    """Split w in F^(m) into simple commutators of length >= m.

    Returns trees T_1..T_r with flatten(T_1)...flatten(T_r) freely equal
    to w.  The search peels simple commutators off either end of the
    residual word, preferring literal occurrences in the word and falling
    back to left-normed brackets read off the lowest Magnus term; the
    residual must stay in F^(m) after every step.  Raises
    DecompositionError if w is not in F^(m) or the search budget runs out.
    """
    import heapq

    rank = w.rank
    r0 = _free_reduce(w.letters)
    if m <= 1:
        return [Leaf(abs(a), 1 if a > 0 else -1) for a in r0]
    if not in_lcs_term(FreeWord(r0, rank), m):
        raise DecompositionError(f"word is not in F^({m})")

    counter = 0
    heap = [(len(r0), 0, counter, r0, (), ())]
    seen = {r0}
    while heap:
        _, steps, _, r, left, right = heapq.heappop(heap)
        if not r:
            return list(left) + list(reversed(right))
        counter += 1
        if counter > budget:
            break
        inv_r = tuple(-a for a in reversed(r))
        cands: list[tuple[str, CommutatorTree]] = []
        cands += [("L", t) for t in _prefix_candidates(r, m)]
        cands += [("R", invert_tree(t)) for t in _prefix_candidates(inv_r, m)]
        lie = _lie_candidates(FreeWord(r, rank), m)
        cands += [("L", t) for t in lie] + [("R", t) for t in lie]
        for side, t in cands:
            if t.length < m or not is_simple(t):
                continue
            f = _flat(t)
            inv_f = tuple(-a for a in reversed(f))
            if side == "L":
                nr = _free_reduce(inv_f + r)
                nl, nrt = left + (t,), right
            else:
                nr = _free_reduce(r + inv_f)
                nl, nrt = left, right + (t,)
            if nr in seen:
                continue
            if nr and not in_lcs_term(FreeWord(nr, rank), m):
                continue
            seen.add(nr)
            heapq.heappush(heap, (len(nr) + 4 * (steps + 1), steps + 1, counter * 1000 + len(seen), nr, nl, nrt))
    raise DecompositionError("search budget exhausted before the word was fully decomposed")
