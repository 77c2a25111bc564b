"""Atomic representations as 2-coloured, scalar-weighted graphs.

A vertex stands for a standard basis ray.  A blue edge ``(i, x) -> (y, s)``
means ``S_i xi_x = s xi_y``; red edges likewise encode ``T_j``.  A missing
edge means the generator kills that basis vector (in the compressed data) or,
in a truncated dilation, that the edge lies past the frontier.

Operators compose right to left, so the path of ``e_u f_v`` from ``x`` runs
through the red letters first.
"""
from __future__ import annotations

import cmath
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .core import (
    BLUE,
    EMPTY,
    RED,
    Letter,
    NormalWord,
    Theta2Graph,
    dotted,
    flip_from_permutation,
    normal_form,
    words_up_to,
)

TOL = 1e-12


class DilationError(RuntimeError):
    pass


class ScalarInconsistency(DilationError):
    """A merge forces a vertex to equal a non-trivial multiple of itself."""


class StructureInconsistency(DilationError):
    """A merge contradicts isometry, orthogonality of ranges or coinvariance."""


class PreconditionError(ValueError):
    pass


def _unimodular(s: complex, tol: float = TOL) -> bool:
    return abs(abs(s) - 1.0) <= tol


@dataclass
class AtomicGraph:
    theta: Theta2Graph
    vertices: tuple
    blue: dict = field(default_factory=dict)  # (i, x) -> (y, scalar)
    red: dict = field(default_factory=dict)  # (j, x) -> (y, scalar)
    core: tuple | None = None

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        if self.core is not None:
            self.core = tuple(self.core)
        names = set(self.vertices)
        if len(names) != len(self.vertices):
            raise PreconditionError("duplicate vertex names")
        for color, table in ((BLUE, self.blue), (RED, self.red)):
            hi = self.theta.m if color == BLUE else self.theta.n
            for (k, x), (y, _) in table.items():
                if not 1 <= k <= hi:
                    raise PreconditionError(f"{color} index {k} outside 1..{hi}")
                if x not in names or y not in names:
                    raise PreconditionError(f"{color} edge {x}->{y} uses unknown vertex")
        for x in self.core or ():
            if x not in names:
                raise PreconditionError(f"core vertex {x!r} is not a vertex")

    @property
    def m(self) -> int:
        return self.theta.m

    @property
    def n(self) -> int:
        return self.theta.n

    def table(self, color: str) -> dict:
        return self.blue if color == BLUE else self.red

    def edge(self, color: str, k: int, x):
        return self.table(color).get((k, x))

    def core_vertices(self) -> tuple:
        return self.vertices if self.core is None else self.core

    def incoming(self, color: str) -> dict:
        """vertex -> list of (index, source, scalar)."""
        out = {x: [] for x in self.vertices}
        for (k, x), (y, s) in sorted(self.table(color).items(), key=_edge_key(self.vertices)):
            out[y].append((k, x, s))
        return out

    def to_json(self) -> dict:
        order = _edge_key(self.vertices)

        def rows(table):
            return [
                [k, x, y, s.real, s.imag]
                for (k, x), (y, s) in sorted(table.items(), key=order)
            ]

        obj = {
            "theta": self.theta.to_json(),
            "vertices": list(self.vertices),
            "blue": rows(self.blue),
            "red": rows(self.red),
        }
        if self.core is not None:
            obj["core"] = list(self.core)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "AtomicGraph":
        try:
            theta = Theta2Graph.from_json(obj["theta"])
            vertices = [str(x) for x in obj["vertices"]]

            def table(rows):
                out = {}
                for r in rows:
                    k, x, y = int(r[0]), str(r[1]), str(r[2])
                    re_, im_ = (float(r[3]), float(r[4])) if len(r) > 3 else (1.0, 0.0)
                    if (k, x) in out:
                        raise PreconditionError(f"edge ({k}, {x}) listed twice")
                    out[(k, x)] = (y, complex(re_, im_))
                return out

            blue = table(obj.get("blue", []))
            red = table(obj.get("red", []))
            core = obj.get("core")
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            if isinstance(exc, PreconditionError):
                raise
            raise PreconditionError(f"malformed representation object: {exc}") from exc
        return cls(theta, vertices, blue, red, None if core is None else [str(c) for c in core])


def _edge_key(vertices):
    pos = {x: p for p, x in enumerate(vertices)}
    return lambda item: (pos[item[0][1]], item[0][0])


def atomic_graph(theta, vertices, blue=(), red=(), core=None) -> AtomicGraph:
    """Build from edge lists ``(index, source, target[, scalar])``."""

    def table(rows):
        out = {}
        for r in rows:
            k, x, y = r[0], r[1], r[2]
            s = complex(r[3]) if len(r) > 3 else 1.0 + 0j
            out[(k, x)] = (y, s)
        return out

    return AtomicGraph(theta, tuple(vertices), table(blue), table(red), core)


def load_rep(path) -> AtomicGraph:
    with open(path) as fh:
        return AtomicGraph.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# path following


def follow(g: AtomicGraph, x, letter: Letter):
    return g.edge(letter.color, letter.index, x)


def apply_word(g: AtomicGraph, x, letters: Iterable[Letter]):
    """``(ST)_w xi_x`` as ``(vertex, scalar)``, or None if some edge is missing."""
    s = 1.0 + 0j
    for letter in reversed(list(letters)):
        hit = g.edge(letter.color, letter.index, x)
        if hit is None:
            return None
        x, t = hit
        s *= t
    return x, s


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class SquareCheck:
    vertex: str
    i: int
    j: int
    status: str  # ok | mismatch | partial | undefined
    residual: float = 0.0


@dataclass
class ValidationReport:
    in_blue: dict
    in_red: dict
    in_blue_core: dict
    in_red_core: dict
    injectivity_violations: list
    scalar_violations: list
    squares: list
    coinvariance_violations: list
    defect_free_on_core: bool
    core_is_representation: bool
    irreducible_proxy: bool
    exempt: tuple = ()

    @property
    def ok(self) -> bool:
        return (
            not self.injectivity_violations
            and not self.scalar_violations
            and not any(sq.status == "mismatch" for sq in self.squares)
        )

    @property
    def max_square_residual(self) -> float:
        return max((sq.residual for sq in self.squares), default=0.0)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "defect_free_on_core": self.defect_free_on_core,
            "core_is_representation": self.core_is_representation,
            "irreducible_proxy": self.irreducible_proxy,
            "irreducible_check": "proxy: connectivity of the undirected core skeleton",
            "injectivity_violations": self.injectivity_violations,
            "scalar_violations": [[c, k, x, [s.real, s.imag]] for c, k, x, s in self.scalar_violations],
            "coinvariance_violations": self.coinvariance_violations,
            "squares": {
                status: sum(1 for sq in self.squares if sq.status == status)
                for status in ("ok", "mismatch", "partial", "undefined")
            },
            "square_failures": [
                [sq.vertex, sq.i, sq.j, sq.status, sq.residual]
                for sq in self.squares
                if sq.status in ("mismatch", "partial")
            ],
            "max_square_residual": self.max_square_residual,
            "vertices": [
                {
                    "vertex": x,
                    "in_blue": self.in_blue[x],
                    "in_red": self.in_red[x],
                    "in_blue_core": self.in_blue_core.get(x),
                    "in_red_core": self.in_red_core.get(x),
                }
                for x in self.in_blue
            ],
        }


def _square_sides(g: AtomicGraph, x, i: int, j: int, within=None):
    """Both sides of S_i T_j = T_j' S_i' applied to xi_x."""
    a, b = g.theta(i, j)
    lhs = apply_word(g, x, [Letter(BLUE, i), Letter(RED, j)])
    rhs = apply_word(g, x, [Letter(RED, b), Letter(BLUE, a)])
    if within is not None:
        lhs = _restrict_path(g, x, [Letter(BLUE, i), Letter(RED, j)], within)
        rhs = _restrict_path(g, x, [Letter(RED, b), Letter(BLUE, a)], within)
    return lhs, rhs


def _restrict_path(g, x, letters, within):
    s = 1.0 + 0j
    for letter in reversed(letters):
        hit = g.edge(letter.color, letter.index, x)
        if hit is None or hit[0] not in within:
            return None
        x, t = hit
        s *= t
    return x, s


def _compare_sides(lhs, rhs, tol):
    if lhs is None and rhs is None:
        return "undefined", 0.0
    if lhs is None or rhs is None:
        return "partial", 1.0
    if lhs[0] != rhs[0]:
        return "mismatch", 2.0
    res = abs(lhs[1] - rhs[1])
    return ("ok" if res <= tol else "mismatch"), res


def validate(A: AtomicGraph, *, exempt: Iterable = (), tol: float = TOL) -> ValidationReport:
    """Check isometry, unimodularity and commutation data of an atomic graph.

    ``exempt`` lists vertices (typically a dilation frontier) whose squares may
    be partial without counting as failures.
    """
    exempt = tuple(exempt)
    core = set(A.core_vertices())
    in_b = {x: 0 for x in A.vertices}
    in_r = {x: 0 for x in A.vertices}
    in_bc = {x: 0 for x in A.vertices if x in core}
    in_rc = {x: 0 for x in A.vertices if x in core}
    scalar_bad = []
    coinv = []
    for color, counts, ccounts in ((BLUE, in_b, in_bc), (RED, in_r, in_rc)):
        for (k, x), (y, s) in sorted(A.table(color).items(), key=_edge_key(A.vertices)):
            counts[y] += 1
            if y in core and x in core:
                ccounts[y] += 1
            if y in core and x not in core:
                coinv.append([color, k, x, y])
            if not _unimodular(s, tol):
                scalar_bad.append((color, k, x, s))
    inj = [
        [color, x, c]
        for color, counts in ((BLUE, in_b), (RED, in_r))
        for x, c in counts.items()
        if c > 1
    ]
    squares = []
    for x in A.vertices:
        for i in range(1, A.m + 1):
            for j in range(1, A.n + 1):
                status, res = _compare_sides(*_square_sides(A, x, i, j), tol)
                if status == "partial" and x in exempt:
                    status = "undefined"
                squares.append(SquareCheck(x, i, j, status, res))
    defect_free = all(in_bc[x] == 1 and in_rc[x] == 1 for x in in_bc)
    core_rep = defect_free and not coinv
    if core_rep:
        for x in core:
            for i in range(1, A.m + 1):
                for j in range(1, A.n + 1):
                    status, _ = _compare_sides(*_square_sides(A, x, i, j, within=core), tol)
                    if status in ("mismatch", "partial"):
                        core_rep = False
    return ValidationReport(
        in_b, in_r, in_bc, in_rc, inj, scalar_bad, squares, coinv,
        defect_free, core_rep and not scalar_bad, _core_connected(A), exempt,
    )


def _core_connected(A: AtomicGraph) -> bool:
    core = list(A.core_vertices())
    if not core:
        return False
    cs = set(core)
    adj = {x: set() for x in core}
    for table in (A.blue, A.red):
        for (_, x), (y, _) in table.items():
            if x in cs and y in cs:
                adj[x].add(y)
                adj[y].add(x)
    seen = {core[0]}
    todo = [core[0]]
    while todo:
        x = todo.pop()
        for y in adj[x] - seen:
            seen.add(y)
            todo.append(y)
    return len(seen) == len(core)


# ---------------------------------------------------------------------------
# dilation


@dataclass
class DilationResult:
    graph: AtomicGraph
    core: tuple
    depth: int
    frontier: tuple
    distance: dict
    labels: dict = field(default_factory=dict)  # vertex -> (NormalWord, base vertex)
    margin: int = 0
    cuntz: bool = True
    _incoming: dict = field(default=None, init=False, repr=False)

    @property
    def theta(self) -> Theta2Graph:
        return self.graph.theta

    def is_frontier(self, x) -> bool:
        return self.distance[x] >= self.depth

    def interior(self) -> list:
        return [x for x in self.graph.vertices if self.distance[x] < self.depth]

    def incoming(self) -> dict:
        """(color, vertex) -> (index, source, scalar) for the unique in-edge."""
        if self._incoming is None:
            inc = {}
            for color in (BLUE, RED):
                for y, lst in self.graph.incoming(color).items():
                    if lst:
                        inc[(color, y)] = lst[0]
            self._incoming = inc
        return self._incoming

    def at(self, word, base=None):
        """Vertex reached by ``word`` (text like ``e2.f2`` or letters) from ``base``."""
        from .core import parse_word

        letters = parse_word(word) if isinstance(word, str) else list(word)
        base = self.core[0] if base is None else base
        hit = apply_word(self.graph, base, letters)
        return None if hit is None else hit[0]

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "margin": self.margin,
            "core": list(self.core),
            "frontier": list(self.frontier),
            "distance": {x: self.distance[x] for x in self.graph.vertices},
            "graph": self.graph.to_json(),
        }


class _Closure:
    """Scalar-weighted union-find over tentative vertices.

    ``xi_node = weight[node] * xi_parent[node]``.  Forward edges are stored on
    roots as ``(color, index) -> (target node, scalar)`` meaning
    ``Op xi_root = scalar * xi_target``.
    """

    def __init__(self, A: AtomicGraph, tol: float):
        self.theta = A.theta
        self.tol = tol
        self.parent: list[int] = []
        self.weight: list[complex] = []
        self.out: list[dict] = []
        self.inc: list[list] = []
        self.label: list[tuple] = []
        self.is_core: list[bool] = []
        self.pending: deque = deque()
        ids = {}
        for x in A.vertices:
            ids[x] = self._new((EMPTY, x), core=True)
        for color in (BLUE, RED):
            for (k, x), (y, s) in sorted(A.table(color).items(), key=_edge_key(A.vertices)):
                self._add_edge(ids[x], color, k, ids[y], s)
        self.names = {ids[x]: x for x in A.vertices}
        self._drain()

    def _new(self, label, core=False) -> int:
        node = len(self.parent)
        self.parent.append(node)
        self.weight.append(1.0 + 0j)
        self.out.append({})
        self.inc.append([])
        self.label.append(label)
        self.is_core.append(core)
        return node

    def find(self, x: int) -> tuple[int, complex]:
        w = 1.0 + 0j
        path = []
        while self.parent[x] != x:
            path.append(x)
            w *= self.weight[x]
            x = self.parent[x]
        root = x
        # path compression, rewriting weights relative to the root
        acc = w
        for node in path:
            cur = self.weight[node]
            self.parent[node] = root
            self.weight[node] = acc
            acc = acc / cur
        return root, w

    def roots(self) -> list[int]:
        return [x for x in range(len(self.parent)) if self.parent[x] == x]

    def step(self, root: int, color: str, k: int):
        hit = self.out[root].get((color, k))
        if hit is None:
            return None
        t, s = hit
        rt, wt = self.find(t)
        return rt, s * wt

    def _add_edge(self, src: int, color: str, k: int, tgt: int, s: complex):
        self.out[src][(color, k)] = (tgt, s)
        rt, _ = self.find(tgt)
        self.inc[rt].append((color, k, src))
        self._check_incoming(rt)

    def allocate(self, root: int, color: str, k: int):
        word, base = self.label[root]
        new_word = normal_form([Letter(color, k)] + word.letters(), self.theta)
        node = self._new((new_word, base))
        self._add_edge(root, color, k, node, 1.0 + 0j)

    def union(self, a: int, b: int, lam: complex):
        """Record xi_a = lam * xi_b."""
        self.pending.append((a, b, lam))

    def _drain(self):
        while self.pending:
            a, b, lam = self.pending.popleft()
            self._merge(a, b, lam)

    def _merge(self, a: int, b: int, lam: complex):
        ra, wa = self.find(a)
        rb, wb = self.find(b)
        mu = lam * wb / wa  # xi_ra = mu * xi_rb
        if ra == rb:
            if abs(mu - 1.0) > self.tol:
                raise ScalarInconsistency(
                    f"vertex {self.describe(ra)} identified with {mu:.6g} times itself"
                )
            return
        if self.is_core[ra] or self.is_core[rb]:
            raise StructureInconsistency(
                f"merge of {self.describe(ra)} and {self.describe(rb)} would alter the core"
            )
        if ra < rb:
            keep, dead, nu = ra, rb, 1.0 / mu  # xi_rb = nu * xi_ra
        else:
            keep, dead, nu = rb, ra, mu
        self.parent[dead] = keep
        self.weight[dead] = nu
        for key, (t, s) in self.out[dead].items():
            s_keep = s / nu
            if key in self.out[keep]:
                t2, s2 = self.out[keep][key]
                # s2 xi_t2 = s_keep xi_t
                self.pending.append((t2, t, s_keep / s2))
            else:
                self.out[keep][key] = (t, s_keep)
        self.out[dead] = {}
        self.inc[keep].extend(self.inc[dead])
        self.inc[dead] = []
        self._check_incoming(keep)

    def _check_incoming(self, root: int):
        seen = {}
        kept = []
        for color, k, src in self.inc[root]:
            rs, _ = self.find(src)
            hit = self.out[rs].get((color, k))
            if hit is None:
                continue
            rt, wt = self.find(hit[0])
            if rt != root:
                continue
            key = (color, k, rs)
            if key in {(c, kk, r) for c, kk, r, _ in kept}:
                continue
            kept.append((color, k, rs, hit[1] * wt))
        self.inc[root] = [(c, k, r) for c, k, r, _ in kept]
        for color, k, rs, s in kept:
            prev = seen.get(color)
            if prev is None:
                seen[color] = (k, rs, s)
                continue
            k0, r0, s0 = prev
            if k0 != k:
                raise StructureInconsistency(
                    f"{self.describe(root)} receives {color} edges {k0} and {k} (ranges must be orthogonal)"
                )
            # Op xi_r0 = s0 xi_root, Op xi_rs = s xi_root, Op is isometric
            self.pending.append((r0, rs, s0 / s))

    def close(self):
        """Enforce every fully defined commutation square until nothing merges."""
        G = self.theta
        while True:
            self._drain()
            merged = False
            for x in self.roots():
                if self.parent[x] != x:
                    continue
                for i in range(1, G.m + 1):
                    for j in range(1, G.n + 1):
                        a, b = G(i, j)
                        lhs = self._path(x, ((RED, j), (BLUE, i)))
                        rhs = self._path(x, ((BLUE, a), (RED, b)))
                        if lhs is None or rhs is None:
                            continue
                        (r1, s1), (r2, s2) = lhs, rhs
                        if r1 == r2 and abs(s1 - s2) <= self.tol:
                            continue
                        self.union(r1, r2, s2 / s1)
                        merged = True
                        self._drain()
                        if self.parent[x] != x:
                            break
                    if self.parent[x] != x:
                        break
            if not merged:
                return

    def _path(self, root: int, steps):
        s = 1.0 + 0j
        for color, k in steps:
            hit = self.step(root, color, k)
            if hit is None:
                return None
            root, t = hit
            s *= t
        return root, s

    def distances(self) -> dict:
        dist = {}
        todo = deque()
        for x in self.roots():
            if self.is_core[x]:
                dist[x] = 0
                todo.append(x)
        while todo:
            x = todo.popleft()
            for color, k in sorted(self.out[x]):
                y, _ = self.step(x, color, k)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    todo.append(y)
        return dist

    def describe(self, root: int) -> str:
        if root in getattr(self, "names", {}):
            return self.names[root]
        word, base = self.label[root]
        return f"{dotted(word)}@{base}"


def dilate(A: AtomicGraph, depth: int, *, margin: int = 2, tol: float = 1e-12) -> DilationResult:
    """Truncated minimal Cuntz-type dilation of defect-free atomic data.

    Every vertex of ``A`` belongs to the coinvariant subspace.  Missing edges
    spawn fresh tentative vertices one BFS level at a time; after each level
    all fully defined commutation squares are enforced and coincidences are
    propagated forwards (edges are functions) and backwards (generators are
    isometries with orthogonal ranges).  The closure runs ``margin`` levels past
    ``depth`` before the graph is cut back to distance ``depth``.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    full = AtomicGraph(A.theta, A.vertices, A.blue, A.red, None)
    frep = validate(full)
    if not frep.core_is_representation:
        raise PreconditionError(
            "input is not a defect-free representation on its vertex set: "
            + json.dumps(frep.to_json()["square_failures"][:3] or frep.injectivity_violations[:3])
        )
    cl = _Closure(A, tol)
    G = A.theta
    keys = [(BLUE, i) for i in range(1, G.m + 1)] + [(RED, j) for j in range(1, G.n + 1)]
    horizon = depth + margin
    for level in range(horizon):
        dist = cl.distances()
        for x in sorted(dist):
            if dist[x] > level or cl.parent[x] != x:
                continue
            for color, k in keys:
                if cl.parent[x] == x and (color, k) not in cl.out[x]:
                    cl.allocate(x, color, k)
        cl.close()
    return _cut(cl, A, depth, margin)


def _cut(cl: _Closure, A: AtomicGraph, depth: int, margin: int) -> DilationResult:
    dist = cl.distances()
    kept = sorted(x for x, d in dist.items() if d <= depth)
    names = {}
    labels = {}
    for x in kept:
        if cl.is_core[x]:
            names[x] = cl.names[x]
            labels[names[x]] = (EMPTY, names[x])
        else:
            word, base = cl.label[x]
            names[x] = f"{dotted(word)}@{base}"
            labels[names[x]] = (word, base)
    if len(set(names.values())) != len(names):
        raise StructureInconsistency("two surviving vertices carry the same path label")
    keptset = set(kept)
    blue, red = {}, {}
    for x in kept:
        for (color, k) in sorted(cl.out[x]):
            y, s = cl.step(x, color, k)
            if y in keptset:
                (blue if color == BLUE else red)[(k, names[x])] = (names[y], s)
    core = A.core_vertices()
    graph = AtomicGraph(A.theta, [names[x] for x in kept], blue, red, core)
    distance = {names[x]: dist[x] for x in kept}
    frontier = tuple(names[x] for x in kept if dist[x] == depth)
    return DilationResult(graph, tuple(core), depth, frontier, distance, labels, margin, True)


def dilate_free(A: AtomicGraph, depth: int) -> AtomicGraph:
    """Minimal isometric dilation of the blue row alone (red edges dropped).

    The defect directions of a single row contraction are wandering, so every
    missing blue edge starts a fresh copy of the full m-ary tree.
    """
    vertices = list(A.vertices)
    blue = dict(A.blue)
    word = {x: ((), x) for x in A.vertices}
    todo = deque((x, 0) for x in A.vertices)
    while todo:
        x, d = todo.popleft()
        if d >= depth:
            continue
        for i in range(1, A.m + 1):
            if (i, x) in blue:
                continue
            u, base = word[x]
            y = ".".join(f"e{k}" for k in (i,) + u) + "@" + base
            word[y] = ((i,) + u, base)
            vertices.append(y)
            blue[(i, x)] = (y, 1.0 + 0j)
            todo.append((y, d + 1))
    return AtomicGraph(A.theta, vertices, blue, {}, A.core_vertices())


def twisted_pair(S_graph: AtomicGraph, alpha) -> AtomicGraph:
    """Pair (S, T) with T_j = S_alpha(j), a representation over the flip-type theta."""
    theta = flip_from_permutation(alpha)
    if S_graph.m != theta.m:
        raise PreconditionError(f"S has {S_graph.m} generators but alpha permutes {theta.m}")
    red = {}
    for (i, x), hit in S_graph.blue.items():
        j = list(alpha).index(i) + 1  # alpha(j) = i
        red[(j, x)] = hit
    return AtomicGraph(theta, S_graph.vertices, dict(S_graph.blue), red, S_graph.core)


def left_regular_region(G: Theta2Graph, L: int) -> DilationResult:
    """Left-regular representation on words of length <= L as a truncated graph."""
    words = list(words_up_to(G, L))
    name = {w: (dotted(w) or "1") for w in words}
    blue, red = {}, {}
    for w in words:
        if len(w) >= L:
            continue
        for i in range(1, G.m + 1):
            t = normal_form([Letter(BLUE, i)] + w.letters(), G)
            blue[(i, name[w])] = (name[t], 1.0 + 0j)
        for j in range(1, G.n + 1):
            t = normal_form([Letter(RED, j)] + w.letters(), G)
            red[(j, name[w])] = (name[t], 1.0 + 0j)
    graph = AtomicGraph(G, [name[w] for w in words], blue, red, ())
    distance = {name[w]: len(w) for w in words}
    frontier = tuple(name[w] for w in words if len(w) == L)
    labels = {name[w]: (w, "1") for w in words}
    return DilationResult(graph, (), L, frontier, distance, labels, 0, False)


# ---------------------------------------------------------------------------
# DOT export


def _fmt_scalar(s: complex) -> str:
    if abs(s.imag) <= TOL:
        return f"{s.real:g}"
    ang = cmath.phase(s) / cmath.pi
    return f"exp({ang:g}i*pi)"


def export_dot(A, name: str = "atomic") -> str:
    """Deterministic DOT text; accepts an AtomicGraph or a DilationResult."""
    g = A.graph if isinstance(A, DilationResult) else A
    core = set(g.core_vertices()) if g.core is not None else set()
    lines = [f"digraph {name} {{"]
    for x in g.vertices:
        shape = "box" if x in core else "ellipse"
        lines.append(f'  "{x}" [shape={shape}];')
    order = _edge_key(g.vertices)
    for color, table, tag in ((BLUE, g.blue, "e"), (RED, g.red, "f")):
        for (k, x), (y, s) in sorted(table.items(), key=order):
            label = f"{tag}{k}"
            if abs(s - 1.0) > TOL:
                label += f" {_fmt_scalar(s)}"
            lines.append(f'  "{x}" -> "{y}" [color={color}, label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# classification

TAGS = ("Type1", "Type2a", "Type2b", "Type3a", "Type3bI", "Type3bII", "UnknownAtDepth")


@dataclass(frozen=True)
class RepClass:
    tag: str
    vertex: str | None = None
    u: tuple = ()
    v: tuple = ()
    word_bound: int = 0
    fired: dict = field(default_factory=dict)  # condition -> core vertices where it fires
    note: str = ""

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "witness": None if self.vertex is None else {"vertex": self.vertex, "u": list(self.u), "v": list(self.v)},
            "word_bound": self.word_bound,
            "fired": {k: list(vs) for k, vs in sorted(self.fired.items())},
            "note": self.note,
        }


def classify(D: DilationResult, word_bound: int = 4) -> RepClass:
    """Tag the dilation by which conditions hold on its core vertices.

    Type1 needs W1 and W2 on the same core vertex.  A finite core is permuted
    by the blue and by the red pull-back, so both rings exist with length at
    most |V|; smaller bounds can miss them and are flagged in ``note``.
    """
    from .conditions import scan_square

    if not D.core:
        raise PreconditionError("classification needs a nonempty core")
    if word_bound < 1:
        raise ValueError("word_bound must be >= 1")
    scans = [scan_square(D, x, word_bound) for x in D.core]
    fired = {c: tuple(s.vertex for s in scans if s.fires(c)) for c in ("W1", "W2", "W3", "W4")}
    note = ""
    if word_bound < len(D.core):
        note = f"word_bound {word_bound} < |V| = {len(D.core)}: rings longer than the bound are not seen"

    def make(tag, s=None, u=(), v=(), extra=""):
        return RepClass(tag, None if s is None else s.vertex, tuple(u), tuple(v), word_bound, fired,
                        "; ".join(t for t in (note, extra) if t))

    for s in scans:
        if s.fires("W1") and s.fires("W2"):
            return make("Type1", s, s.first("W1").u, s.first("W2").v)
    if fired["W1"] and fired["W2"]:
        return make("UnknownAtDepth", extra="W1 and W2 fire on different core vertices only")
    for cond, tag in (("W1", "Type2a"), ("W2", "Type2b"), ("W3", "Type3bI"), ("W4", "Type3bII")):
        for s in scans:
            hit = s.first(cond)
            if hit is not None:
                return make(tag, s, hit.u, hit.v)
    return make("UnknownAtDepth", extra="no condition within the bound (candidate Type3a)")
