"""Search for the four ways a standard basis vector can fail to be wandering.

    W1  S_u eta = eta              (blue ring)
    W2  T_v eta = eta              (red ring)
    W3  T_v S_u eta = eta          (mixed ring)
    W4  S_u eta = T_v eta          (two paths collide)

All equalities are between rays, so scalars are ignored.  Generators are
isometries with orthogonal ranges, hence every vertex has at most one incoming
edge of each colour and the conditions can be decided by walking backwards:

* W1/W2: the blue (red) ancestor ``p`` steps back is the vertex itself.
* W3: the blue ancestor of the red ancestor is the vertex itself.
* W4 at (p, q): with ``zeta = S_u' zeta' = T_v'' zeta'`` for the common
  ancestor ``zeta'``, a collision ``S_u zeta = T_v zeta`` exists exactly when
  ``f_v e_u'`` has normal form ``e_u f_v''`` for some v.  If the blue and red
  ancestors differ (or only one exists) there is no collision.

A truncated dilation keeps every incoming edge of every kept vertex, so the
backward route never runs out of graph.  Forward path-following is kept as a
second, independent route and the two are compared whenever both apply.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import BLUE, RED, Letter, normal_form, words_up_to

CONDITIONS = ("W1", "W2", "W3", "W4")


class DepthInsufficient(RuntimeError):
    pass


class RouteMismatch(RuntimeError):
    """Backward and forward evaluation of a condition disagree."""


class _Truncated(Exception):
    pass


@dataclass(frozen=True, order=True)
class Violation:
    condition: str
    u: tuple
    v: tuple

    def words(self) -> tuple[str, str]:
        return (".".join(f"e{i}" for i in self.u), ".".join(f"f{j}" for j in self.v))

    def to_json(self) -> dict:
        return {"condition": self.condition, "u": list(self.u), "v": list(self.v)}


@dataclass
class Scan:
    """Outcome of a bounded condition search at one vertex."""

    vertex: str
    violations: list = field(default_factory=list)
    methods: dict = field(default_factory=dict)

    def fires(self, condition: str) -> bool:
        return any(v.condition == condition for v in self.violations)

    def first(self, condition: str):
        for v in self.violations:
            if v.condition == condition:
                return v
        return None


def forward(D, x, letters):
    """Follow ``letters`` (operator order) from x; None if the product is zero.

    Raises _Truncated when an edge is missing at a frontier vertex.
    """
    s = 1.0 + 0j
    for letter in reversed(list(letters)):
        hit = D.graph.edge(letter.color, letter.index, x)
        if hit is None:
            if D.distance[x] >= D.depth:
                raise _Truncated(x)
            return None
        x, t = hit
        s *= t
    return x, s


def reach(D, x) -> int:
    """How many forward steps from x are guaranteed to stay inside the graph."""
    return D.depth - D.distance[x]


def pullback(D, x, color: str, steps: int):
    """Unique backward path of ``steps`` edges of one colour.

    Returns ``(ancestor, word)`` with ``Op_word xi_ancestor ~ xi_x`` or None
    when some vertex on the way has no incoming edge of that colour.
    """
    inc = D.incoming()
    word = []
    for _ in range(steps):
        hit = inc.get((color, x))
        if hit is None:
            return None
        k, x, _ = hit
        word.append(k)
    return x, tuple(word)


def _letters(color, word):
    return [Letter(color, k) for k in word]


# --- backward route -------------------------------------------------------


def ring(D, x, color: str, p: int):
    """Word w of length p with Op_w x = x, or None."""
    hit = pullback(D, x, color, p)
    if hit is not None and hit[0] == x:
        return hit[1]
    return None


def mixed_ring(D, x, p: int, q: int):
    """(u, v) with |u|=p, |v|=q and T_v S_u x = x, or None."""
    red_hit = pullback(D, x, RED, q)
    if red_hit is None:
        return None
    blue_hit = pullback(D, red_hit[0], BLUE, p)
    if blue_hit is None or blue_hit[0] != x:
        return None
    return blue_hit[1], red_hit[1]


def collisions_backward(D, x, p: int, q: int):
    """All (u, v) with |u|=p, |v|=q, S_u x = T_v x; None if undecidable."""
    b = pullback(D, x, BLUE, p)
    r = pullback(D, x, RED, q)
    if b is None and r is None:
        return None
    if b is None or r is None or b[0] != r[0]:
        return []
    u1, v2 = b[1], r[1]
    G = D.theta
    out = []
    for v in itertools.product(range(1, G.n + 1), repeat=q):
        w = normal_form(_letters(RED, v) + _letters(BLUE, u1), G)
        if w.v == v2:
            out.append((w.u, v))
    return sorted(out)


# --- forward route --------------------------------------------------------


def collisions_forward(D, x, p: int, q: int):
    """Same as collisions_backward by path-following; None if truncated."""
    G = D.theta
    try:
        blue_end = {}
        for u in itertools.product(range(1, G.m + 1), repeat=p):
            hit = forward(D, x, _letters(BLUE, u))
            if hit is not None:
                blue_end[hit[0]] = u
        out = []
        for v in itertools.product(range(1, G.n + 1), repeat=q):
            hit = forward(D, x, _letters(RED, v))
            if hit is not None and hit[0] in blue_end:
                out.append((blue_end[hit[0]], v))
        return sorted(out)
    except _Truncated:
        return None


def collisions(D, x, p: int, q: int):
    """W4 words at (p, q) plus the route(s) used.

    Raises DepthInsufficient when neither route applies and RouteMismatch
    when both apply and disagree.
    """
    back = collisions_backward(D, x, p, q)
    fwd = collisions_forward(D, x, p, q) if reach(D, x) >= max(p, q) else None
    if back is None and fwd is None:
        raise DepthInsufficient(f"W4({p},{q}) at {x} needs paths beyond depth {D.depth}")
    if back is not None and fwd is not None:
        if back != fwd:
            raise RouteMismatch(f"W4({p},{q}) at {x}: backward {back} vs forward {fwd}")
        return back, "backward+forward"
    if back is not None:
        return back, "backward"
    return fwd, "forward"


def scan(D, x, *, w1: int, w2: int, w3, w4: int) -> Scan:
    """Bounded search for W1..W4 at vertex x.

    ``w1``/``w2`` cap ring lengths, ``w3`` is a predicate on (p, q) for the
    mixed ring, ``w4`` caps both |u| and |v| of a collision.
    """
    out = Scan(x)
    for cond, color, cap in (("W1", BLUE, w1), ("W2", RED, w2)):
        for p in range(1, cap + 1):
            word = ring(D, x, color, p)
            if word is not None:
                out.violations.append(
                    Violation(cond, word, ()) if color == BLUE else Violation(cond, (), word)
                )
        out.methods[cond] = "backward"
    cap3 = max(w1, w2, w4, 1) * 2
    for p in range(1, cap3 + 1):
        for q in range(1, cap3 + 1):
            if w3(p, q):
                hit = mixed_ring(D, x, p, q)
                if hit is not None:
                    out.violations.append(Violation("W3", hit[0], hit[1]))
    out.methods["W3"] = "backward"
    routes = set()
    for p in range(1, w4 + 1):
        for q in range(1, w4 + 1):
            found, how = collisions(D, x, p, q)
            routes.add(how)
            out.violations.extend(Violation("W4", u, v) for u, v in found)
    out.methods["W4"] = "/".join(sorted(routes)) if routes else "none"
    return out


def scan_square(D, x, max_len: int) -> Scan:
    """Every condition with |u|, |v| <= max_len."""
    return scan(D, x, w1=max_len, w2=max_len, w3=lambda p, q: p <= max_len and q <= max_len, w4=max_len)


def scan_for_wandering(D, x, k: int) -> Scan:
    """The conditions whose absence is equivalent to wandering up to length k.

    A coincidence (ST)_a x = (ST)_b x with |a|, |b| <= k reduces, after
    cancelling common prefixes, to W1 or W2 with length <= k, W3 with
    |u| + |v| <= k, or W4 with |u|, |v| <= k; conversely each of those is such
    a coincidence.
    """
    return scan(D, x, w1=k, w2=k, w3=lambda p, q: p + q <= k, w4=k)


# --- direct definition ----------------------------------------------------


def pairwise_distinct(D, x, k: int):
    """Check the wandering definition directly on words of length <= k.

    Returns ``(True, None)``, ``(False, (a, b))`` for a colliding pair of
    normal-form words, or None when some path runs past the frontier.
    """
    if reach(D, x) < k:
        return None
    seen = {}
    for w in words_up_to(D.theta, k):
        try:
            hit = forward(D, x, w.letters())
        except _Truncated:
            return None
        if hit is None:
            return False, (w, None)
        y, s = hit
        if abs(abs(s) - 1.0) > 1e-12:
            return False, (w, None)
        if y in seen:
            return False, (seen[y], w)
        seen[y] = w
    return True, None


def replay(D, x, violation: Violation) -> bool:
    """Re-derive the defining equation of a reported violation on the graph.

    Uses forward edges only where the graph reaches; otherwise walks the
    words backwards from x.
    """
    u = _letters(BLUE, violation.u)
    v = _letters(RED, violation.v)
    c = violation.condition
    try:
        if c == "W1":
            hit = forward(D, x, u)
            return hit is not None and hit[0] == x
        if c == "W2":
            hit = forward(D, x, v)
            return hit is not None and hit[0] == x
        if c == "W3":
            hit = forward(D, x, v + u)
            return hit is not None and hit[0] == x
        if c == "W4":
            a = forward(D, x, u)
            b = forward(D, x, v)
            return a is not None and b is not None and a[0] == b[0]
    except _Truncated:
        return _replay_backward(D, x, violation)
    raise ValueError(c)


def _replay_backward(D, x, violation: Violation) -> bool:
    c = violation.condition
    if c == "W1":
        return ring(D, x, BLUE, len(violation.u)) == violation.u
    if c == "W2":
        return ring(D, x, RED, len(violation.v)) == violation.v
    if c == "W3":
        return mixed_ring(D, x, len(violation.u), len(violation.v)) == (violation.u, violation.v)
    found = collisions_backward(D, x, len(violation.u), len(violation.v)) or []
    return (violation.u, violation.v) in found
