"""Exact arithmetic in the single-vertex 2-graph semigroup F_theta^+.

Blue generators are e_1..e_m, red generators f_1..f_n, and the only relations
are ``e_i f_j = f_j' e_i'`` whenever ``theta(i, j) = (i', j')``.  Every element
has a unique normal form ``e_u f_v`` (all blues first), which we reach by
repeatedly rewriting ``f_j e_i -> e_a f_b`` with ``theta(a, b) = (i, j)``.

All indices are 1-based, as in the JSON formats.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

BLUE = "blue"
RED = "red"


class TwoGraphError(ValueError):
    pass


class NotABijection(TwoGraphError):
    pass


class NotAPermutation(TwoGraphError):
    pass


class IndexOutOfRange(TwoGraphError):
    pass


class WordSyntaxError(TwoGraphError):
    pass


class Letter(NamedTuple):
    color: str
    index: int

    def __str__(self) -> str:
        return ("e" if self.color == BLUE else "f") + str(self.index)


def e(i: int) -> Letter:
    return Letter(BLUE, i)


def f(j: int) -> Letter:
    return Letter(RED, j)


@dataclass(frozen=True)
class Theta2Graph:
    """The data (m, n, theta) of a single-vertex 2-graph.

    ``table`` holds the 1-based quadruples ``(i, j, i', j')`` sorted by
    ``(i, j)``; lookups go through the precomputed dicts.
    """

    m: int
    n: int
    table: tuple
    _fwd: dict = field(init=False, repr=False, compare=False, hash=False)
    _inv: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        fwd = {(i, j): (a, b) for i, j, a, b in self.table}
        inv = {v: k for k, v in fwd.items()}
        object.__setattr__(self, "_fwd", fwd)
        object.__setattr__(self, "_inv", inv)

    def __call__(self, i: int, j: int) -> tuple[int, int]:
        return self._fwd[(i, j)]

    def inverse(self, i: int, j: int) -> tuple[int, int]:
        return self._inv[(i, j)]

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self._fwd)

    def is_identity(self) -> bool:
        return all(k == v for k, v in self._fwd.items())

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "theta": [list(t) for t in self.table]}

    @classmethod
    def from_json(cls, obj: dict) -> "Theta2Graph":
        try:
            m, n = int(obj["m"]), int(obj["n"])
            rows = obj["theta"]
            pairs = {(int(r[0]), int(r[1])): (int(r[2]), int(r[3])) for r in rows}
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            raise TwoGraphError(f"malformed theta object: {exc}") from exc
        if len(pairs) != len(rows):
            raise NotABijection("theta lists some (i, j) more than once")
        return make_theta(m, n, pairs)

    def __str__(self) -> str:
        body = ", ".join(f"({i},{j})->({a},{b})" for i, j, a, b in self.table)
        return f"Theta2Graph(m={self.m}, n={self.n}: {body})"


def make_theta(m: int, n: int, pairs) -> Theta2Graph:
    """Validate a map ``(i, j) -> (i', j')`` and wrap it as a Theta2Graph.

    ``pairs`` may be a dict or an iterable of ``((i, j), (i', j'))`` items.
    """
    if m < 1 or n < 1:
        raise TwoGraphError(f"m and n must be positive, got m={m}, n={n}")
    items = list(pairs.items()) if isinstance(pairs, dict) else [tuple(p) for p in pairs]
    fwd = {}
    for (i, j), (a, b) in items:
        for x, hi, what in ((i, m, "i"), (a, m, "i'"), (j, n, "j"), (b, n, "j'")):
            if not 1 <= x <= hi:
                raise IndexOutOfRange(f"{what}={x} outside 1..{hi}")
        if (i, j) in fwd:
            raise NotABijection(f"pair ({i},{j}) given twice")
        fwd[(i, j)] = (a, b)
    if len(fwd) != m * n:
        missing = sorted(set(itertools.product(range(1, m + 1), range(1, n + 1))) - set(fwd))
        raise NotABijection(f"theta is not total; missing {missing}")
    images = list(fwd.values())
    if len(set(images)) != len(images):
        seen, dup = set(), None
        for img in images:
            if img in seen:
                dup = img
                break
            seen.add(img)
        raise NotABijection(f"image {dup} is hit twice")
    table = tuple(sorted((i, j, a, b) for (i, j), (a, b) in fwd.items()))
    return Theta2Graph(m, n, table)


def identity_theta(m: int, n: int) -> Theta2Graph:
    return make_theta(m, n, {(i, j): (i, j) for i in range(1, m + 1) for j in range(1, n + 1)})


def flip_theta(n: int) -> Theta2Graph:
    return make_theta(n, n, {(i, j): (j, i) for i in range(1, n + 1) for j in range(1, n + 1)})


def _check_permutation(alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = tuple(alpha)
    if sorted(alpha) != list(range(1, len(alpha) + 1)):
        raise NotAPermutation(f"{alpha} is not a permutation of 1..{len(alpha)}")
    return alpha


def flip_from_permutation(alpha: Sequence[int]) -> Theta2Graph:
    """theta(i, j) = (alpha(j), alpha^{-1}(i)); ``alpha[k-1]`` is alpha(k)."""
    alpha = _check_permutation(alpha)
    n = len(alpha)
    inv = {a: k + 1 for k, a in enumerate(alpha)}
    return make_theta(
        n, n, {(i, j): (alpha[j - 1], inv[i]) for i in range(1, n + 1) for j in range(1, n + 1)}
    )


def random_theta(m: int, n: int, rng) -> Theta2Graph:
    """Uniformly random theta; ``rng`` is a ``random.Random``."""
    keys = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    images = keys[:]
    rng.shuffle(images)
    return make_theta(m, n, dict(zip(keys, images)))


@dataclass(frozen=True, order=True)
class NormalWord:
    """The element e_u f_v; ``u`` blue indices, ``v`` red indices."""

    u: tuple = ()
    v: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))

    @property
    def degree(self) -> tuple[int, int]:
        return (len(self.u), len(self.v))

    def __len__(self) -> int:
        return len(self.u) + len(self.v)

    def letters(self) -> list[Letter]:
        return [e(i) for i in self.u] + [f(j) for j in self.v]

    def is_empty(self) -> bool:
        return not self.u and not self.v

    def __str__(self) -> str:
        return format_word(self)


def degree(w: NormalWord) -> tuple[int, int]:
    return w.degree


def length(w: NormalWord) -> int:
    return len(w)


EMPTY = NormalWord()


def check_letters(word: Iterable[Letter], G: Theta2Graph) -> list[Letter]:
    out = []
    m, n = G.m, G.n
    for x in word:
        if type(x) is not Letter:
            x = Letter(*x)
        color, k = x
        if color == BLUE:
            hi = m
        elif color == RED:
            hi = n
        else:
            raise WordSyntaxError(f"unknown colour {color!r}")
        if not 1 <= k <= hi:
            raise IndexOutOfRange(f"{x} outside 1..{hi}")
        out.append(x)
    return out


def push_blue_through(j_seq: Sequence[int], i: int, G: Theta2Graph) -> tuple[int, tuple]:
    """Rewrite ``f_{j_seq} e_i`` as ``e_a f_{v'}``; returns ``(a, v')``.

    Uses |j_seq| rewrite steps.
    """
    out = []
    for j in reversed(j_seq):
        a, b = G.inverse(i, j)
        out.append(b)
        i = a
    return i, tuple(reversed(out))


def push_red_through(i_seq: Sequence[int], j: int, G: Theta2Graph) -> tuple[int, tuple]:
    """Rewrite ``e_{i_seq} f_j`` as ``f_b e_{u'}``; returns ``(b, u')``."""
    out = []
    for i in reversed(i_seq):
        a, b = G(i, j)
        out.append(a)
        j = b
    return j, tuple(reversed(out))


def normal_form(word: Iterable[Letter], G: Theta2Graph, *, stats: dict | None = None) -> NormalWord:
    """Unique factorisation e_u f_v of a word (blues pushed left).

    Each rewrite removes exactly one red-before-blue inversion, so the number
    of steps equals the inversion count, which is at most |u|*|v|.  Pass a
    dict as ``stats`` to read back the step count.
    """
    letters = check_letters(word, G)
    u: list[int] = []
    v: tuple = ()
    steps = 0
    for x in letters:
        if x.color == RED:
            v = v + (x.index,)
        else:
            a, v = push_blue_through(v, x.index, G)
            steps += len(v)
            u.append(a)
    result = NormalWord(tuple(u), v)
    bound = len(result.u) * len(result.v)
    assert steps <= bound, (steps, bound)
    if stats is not None:
        stats["steps"] = steps
    return result


def anti_normal_form(word: Iterable[Letter], G: Theta2Graph) -> tuple[tuple, tuple]:
    """Unique factorisation f_v' e_u' (reds pushed left); returns ``(v', u')``."""
    letters = check_letters(word, G)
    v_out: tuple = ()
    u_out: tuple = ()
    for x in letters:
        if x.color == BLUE:
            u_out = u_out + (x.index,)
        else:
            b, u_out = push_red_through(u_out, x.index, G)
            v_out = v_out + (b,)
    return v_out, u_out


def concat(w1: NormalWord, w2: NormalWord, G: Theta2Graph) -> NormalWord:
    return normal_form(w1.letters() + w2.letters(), G)


def enumerate_words(G: Theta2Graph, k: int, l: int) -> list[NormalWord]:
    """All elements of degree (k, l), in lexicographic (u, v) order."""
    if k < 0 or l < 0:
        raise ValueError("degree components must be non-negative")
    return [
        NormalWord(u, v)
        for u in itertools.product(range(1, G.m + 1), repeat=k)
        for v in itertools.product(range(1, G.n + 1), repeat=l)
    ]


def words_up_to(G: Theta2Graph, L: int) -> Iterator[NormalWord]:
    """All elements of length <= L, ordered by length, then degree, then lex."""
    for total in range(L + 1):
        for k in range(total, -1, -1):
            yield from enumerate_words(G, k, total - k)


def blue_words(m: int, a: int) -> list[tuple]:
    return list(itertools.product(range(1, m + 1), repeat=a))


_TOKEN = re.compile(r"^([ef])(\d+)$")


def parse_word(text: str) -> list[Letter]:
    """Parse ``e1.f2.e1``; the empty string (or ``1``) is the identity."""
    text = text.strip()
    if text in ("", "1", "()"):
        return []
    out = []
    for tok in text.split("."):
        mt = _TOKEN.match(tok.strip())
        if not mt:
            raise WordSyntaxError(f"bad token {tok!r} in {text!r}")
        color = BLUE if mt.group(1) == "e" else RED
        index = int(mt.group(2))
        if index < 1:
            raise WordSyntaxError(f"indices are 1-based: {tok!r}")
        out.append(Letter(color, index))
    return out


def format_word(w: NormalWord) -> str:
    return "e(" + ",".join(map(str, w.u)) + ") f(" + ",".join(map(str, w.v)) + ")"


def dotted(w: NormalWord) -> str:
    """``e1.e2.f1`` form; empty word is the empty string."""
    return ".".join(str(x) for x in w.letters())


def load_theta(path) -> Theta2Graph:
    with open(path) as fh:
        return Theta2Graph.from_json(json.load(fh))
