"""Wandering standard basis vectors of truncated atomic dilations.

Everything is relative to a word-length bound k: a vertex is wandering up to
k when the paths of all normal-form words of length <= k end at distinct
vertices.  That is checked directly when the graph reaches far enough and
through the W1-W4 reduction otherwise (and both ways when possible).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .atomic import DilationResult, PreconditionError, RepClass
from .conditions import (
    CONDITIONS,
    DepthInsufficient,
    Violation,
    _letters,
    _Truncated,
    forward,
    pairwise_distinct,
    reach,
    replay,
    scan,
    scan_for_wandering,
    scan_square,
)
from .core import BLUE, RED, blue_words
from .periodicity import DegeneratePeriodicity, PeriodWitness, find_period


class Inconclusive(RuntimeError):
    pass


@dataclass
class WanderingReport:
    vertex: str
    status: str  # "WanderingUpToDepth" or "Violates"
    depth: int
    violations: list = field(default_factory=list)
    method: str = ""

    @property
    def violates(self) -> bool:
        return self.status == "Violates"

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "status": self.status if self.violates else f"WanderingUpToDepth({self.depth})",
            "depth": self.depth,
            "violations": [v.to_json() for v in self.violations],
            "method": self.method,
        }


def _require_vertex(D, vertex):
    if vertex not in D.distance:
        raise PreconditionError(f"unknown vertex {vertex!r}")


def check_conditions(D: DilationResult, vertex, max_len: int) -> WanderingReport:
    """All W1-W4 violations at ``vertex`` with |u|, |v| <= max_len."""
    _require_vertex(D, vertex)
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    s = scan_square(D, vertex, max_len)
    status = "Violates" if s.violations else "WanderingUpToDepth"
    return WanderingReport(vertex, status, max_len, sorted(set(s.violations)), f"W4:{s.methods['W4']}")


@dataclass
class WanderingCertificate:
    vertex: str
    depth: int
    wandering: bool
    method: str  # "direct", "reduction" or "direct+reduction"
    collision: tuple | None = None  # pair of words (direct route)
    violations: tuple = ()  # reduction route

    def to_json(self) -> dict:
        col = None
        if self.collision is not None:
            col = [None if w is None else str(w) for w in self.collision]
        return {
            "vertex": self.vertex,
            "depth": self.depth,
            "wandering": self.wandering,
            "method": self.method,
            "collision": col,
            "violations": [v.to_json() for v in self.violations],
        }


def is_wandering(D: DilationResult, vertex, depth: int) -> tuple[bool, WanderingCertificate]:
    """Wandering up to word length ``depth``, with the evidence used."""
    _require_vertex(D, vertex)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    direct = pairwise_distinct(D, vertex, depth)
    try:
        red = scan_for_wandering(D, vertex, depth) if depth >= 1 else None
    except DepthInsufficient:
        if direct is None:
            raise
        red = None
    if direct is None and red is None:
        raise DepthInsufficient(f"{vertex}: no route decides wandering up to {depth}")
    if red is not None:
        verdict_red = not red.violations
    if direct is not None:
        verdict = direct[0]
        if red is not None and verdict != verdict_red:
            raise RuntimeError(f"{vertex}: direct check and W-reduction disagree at depth {depth}")
        method = "direct+reduction" if red is not None else "direct"
        return verdict, WanderingCertificate(
            vertex, depth, verdict, method, direct[1], tuple(red.violations) if red else ()
        )
    return verdict_red, WanderingCertificate(vertex, depth, verdict_red, "reduction", None, tuple(red.violations))


@dataclass
class WanderingVerdict:
    vertex: str | None
    construction: str
    certificate: WanderingCertificate | None = None
    obstruction: dict | None = None

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "construction": self.construction,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "obstruction": self.obstruction,
        }


def _other_words(k: int, length: int, word: tuple) -> list[tuple]:
    return [w for w in blue_words(k, length) if w != tuple(word)]


def _step(D, x, color, word):
    try:
        hit = forward(D, x, _letters(color, word))
    except _Truncated:
        return None
    return None if hit is None else hit[0]


def _first_wandering(D, depth, candidates):
    for x in candidates:
        try:
            ok, cert = is_wandering(D, x, depth)
        except DepthInsufficient:
            continue
        if ok:
            return x, cert
    return None


def verify_no_wandering_periodic(D: DilationResult, W: PeriodWitness) -> bool:
    """Do [S_u : |u| = a] and [T_gamma(u) : |u| = a] agree on the graph?

    Only vertices from which paths of length max(a, b) stay inside the
    truncation are checked; scalars must agree too.
    """
    if not isinstance(W, PeriodWitness):
        raise PreconditionError("needs a PeriodWitness with an explicit gamma")
    span = max(W.a, W.b)
    checked = 0
    for x in D.graph.vertices:
        if reach(D, x) < span:
            continue
        checked += 1
        for u, v in W.gamma.items():
            a = forward(D, x, _letters(BLUE, u))
            b = forward(D, x, _letters(RED, v))
            if a is None or b is None or a[0] != b[0] or abs(a[1] - b[1]) > 1e-12:
                return False
    if checked == 0:
        raise DepthInsufficient(f"no vertex has {span} steps of room at depth {D.depth}")
    return True


def _periodic_obstruction(D, max_ab):
    per = find_period(D.theta, max_ab, max_ab)
    if isinstance(per, PeriodWitness):
        holds = verify_no_wandering_periodic(D, per)
        return per, {"period": [per.a, -per.b], "rows_equal": holds, **per.to_json()}
    if isinstance(per, DegeneratePeriodicity):
        return per, None
    return None, None


def find_wandering(D: DilationResult, cls: RepClass | None, depth: int, *, max_ab: int = 4) -> WanderingVerdict:
    """Produce a verified wandering vertex, or an obstruction.

    Raises Inconclusive for type 1 / 3b(ii) data where no construction
    applies and no periodicity obstruction exists.
    """
    order = list(D.graph.vertices)
    if cls is None or cls.tag in ("UnknownAtDepth", "Type3a"):
        hit = _first_wandering(D, depth, order)
        if hit is None:
            raise Inconclusive("no vertex is wandering up to the requested depth")
        return WanderingVerdict(hit[0], "first enumerated wandering vertex", hit[1])

    G = D.theta
    if cls.tag in ("Type2a", "Type3bI", "Type2b"):
        if cls.tag == "Type2b":
            color, k, word = RED, G.n, cls.v
        else:
            color, k, word = BLUE, G.m, cls.u
        name = "T" if color == RED else "S"
        for w in _other_words(k, len(word), word):
            y = _step(D, cls.vertex, color, w)
            if y is None:
                continue
            ok, cert = is_wandering(D, y, depth)
            if ok:
                return WanderingVerdict(y, f"{name}_{list(w)} applied to {cls.vertex} (word differs from the ring)", cert)
        hit = _first_wandering(D, depth, order)
        if hit is not None:
            return WanderingVerdict(hit[0], "enumeration fallback", hit[1])
        raise Inconclusive(f"{cls.tag}: constructed vertices are not wandering at this depth")

    per, obstruction = _periodic_obstruction(D, max_ab)
    if obstruction is not None and obstruction["rows_equal"]:
        return WanderingVerdict(None, "none: periodic 2-graph", None, obstruction)
    if cls.tag == "Type3bII":
        raise Inconclusive("type 3b(ii) over an aperiodic 2-graph")

    # Type1 without a periodic obstruction: rings outside the core
    core = set(D.core)
    for zeta in order:
        if zeta in core:
            continue
        s = scan(D, zeta, w1=depth, w2=depth, w3=lambda p, q: False, w4=0)
        for cond, color, k in (("W2", RED, G.n), ("W1", BLUE, G.m)):
            v = s.first(cond)
            if v is None:
                continue
            word = v.v if color == RED else v.u
            name = "T" if color == RED else "S"
            for w in _other_words(k, len(word), word):
                y = _step(D, zeta, color, w)
                if y is None:
                    continue
                try:
                    ok, cert = is_wandering(D, y, depth)
                except DepthInsufficient:
                    continue
                if ok:
                    return WanderingVerdict(
                        y, f"{name}_{list(w)} applied to {zeta}, which satisfies {cond} with {list(word)}", cert
                    )
    raise Inconclusive("type 1 over an aperiodic 2-graph with no usable W1/W2 vertex outside the core")


@dataclass
class SweepRow:
    condition: str
    core: tuple
    noncore: tuple

    @property
    def implication(self) -> bool:
        """Firing away from the core forces firing on the core."""
        return bool(self.core) or not self.noncore

    @property
    def iff(self) -> bool:
        return bool(self.core) == bool(self.noncore)

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "core": list(self.core),
            "noncore": list(self.noncore),
            "noncore_implies_core": self.implication,
            "iff": self.iff,
        }


def condition_sweep(D: DilationResult, max_len: int = 2) -> list[SweepRow]:
    """Where each condition fires: on the core, and on non-frontier vertices off it."""
    core = set(D.core)
    fires = {c: ([], []) for c in CONDITIONS}
    for x in D.graph.vertices:
        if x not in core and D.is_frontier(x):
            continue
        s = scan_square(D, x, max_len)
        for c in CONDITIONS:
            if s.fires(c):
                fires[c][0 if x in core else 1].append(x)
    return [SweepRow(c, tuple(a), tuple(b)) for c, (a, b) in fires.items()]


def replay_report(D: DilationResult, report: WanderingReport) -> bool:
    return all(replay(D, report.vertex, v) for v in report.violations)


__all__ = [
    "DepthInsufficient",
    "Inconclusive",
    "Violation",
    "WanderingCertificate",
    "WanderingReport",
    "WanderingVerdict",
    "check_conditions",
    "find_wandering",
    "is_wandering",
    "condition_sweep",
    "replay_report",
    "verify_no_wandering_periodic",
]
