"""Periodicity of F_theta^+ via an explicit bijection gamma.

(a, -b) is a period iff there is a bijection gamma from blue words of length
a onto red words of length b with e_u f_v = f_gamma(u) e_gamma^-1(v) for all
u, v.  ``check_period`` proposes gamma from a single red word and then checks
every pair; ``find_period`` scans candidates up to given bounds.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from .core import Theta2Graph, anti_normal_form, blue_words, e, f

DEFAULT_CAP = 4096


class SearchSpaceTooLarge(RuntimeError):
    pass


def enumeration_cap() -> int:
    raw = os.environ.get("KG2_CAP")
    return int(raw) if raw else DEFAULT_CAP


@dataclass(frozen=True)
class PeriodWitness:
    a: int
    b: int
    gamma: dict  # blue word (tuple) -> red word (tuple)

    def inverse(self) -> dict:
        return {v: u for u, v in self.gamma.items()}

    def to_json(self) -> dict:
        return {
            "periodic": True,
            "period": [self.a, -self.b],
            "gamma": [[list(u), list(v)] for u, v in sorted(self.gamma.items())],
        }


@dataclass(frozen=True)
class DegeneratePeriodicity:
    """m = 1 or n = 1: periodic without a gamma table."""

    m: int
    n: int
    clause: str = "m=1 or n=1 implies periodic"

    def to_json(self) -> dict:
        return {"periodic": True, "clause": self.clause, "m": self.m, "n": self.n}


@dataclass(frozen=True)
class FailedCandidate:
    a: int
    b: int
    u: tuple
    v: tuple
    reason: str

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "u": list(self.u), "v": list(self.v), "reason": self.reason}


@dataclass(frozen=True)
class AperiodicityCertificate:
    bound_a: int
    bound_b: int
    checked_pairs: tuple = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "periodic": False,
            "bounds": [self.bound_a, self.bound_b],
            "checked": [c.to_json() for c in self.checked_pairs],
            "note": "aperiodic up to bounds",
        }


def _diagnose(G: Theta2Graph, a: int, b: int):
    """Return (witness, None) or (None, FailedCandidate)."""
    us = blue_words(G.m, a)
    vs = blue_words(G.n, b)
    v0 = vs[0]
    gamma = {}
    for u in us:
        red, _ = anti_normal_form([e(i) for i in u] + [f(j) for j in v0], G)
        gamma[u] = red
    inv = {}
    for u, red in gamma.items():
        if red in inv:
            # the pair (u, v0) can't satisfy the relation with a single-valued gamma^-1
            return None, FailedCandidate(a, b, u, v0, "gamma not injective")
        inv[red] = u
    for u in us:
        for v in vs:
            red, blue = anti_normal_form([e(i) for i in u] + [f(j) for j in v], G)
            if red != gamma[u]:
                return None, FailedCandidate(a, b, u, v, "red factor depends on v")
            if blue != inv[v]:
                return None, FailedCandidate(a, b, u, v, "blue factor differs from gamma^-1(v)")
    return PeriodWitness(a, b, gamma), None


def check_period(G: Theta2Graph, a: int, b: int, *, cap: int | None = None) -> PeriodWitness | None:
    if a < 1 or b < 1:
        raise ValueError("a and b must be >= 1")
    if G.m ** a != G.n ** b:
        return None
    cap = enumeration_cap() if cap is None else cap
    if G.m ** a > cap:
        raise SearchSpaceTooLarge(f"m^a = {G.m ** a} exceeds cap {cap}")
    witness, _ = _diagnose(G, a, b)
    return witness


def verify_witness(G: Theta2Graph, W: PeriodWitness) -> bool:
    """Independent full pass over all (u, v) with a fresh rewrite per pair."""
    inv = W.inverse()
    if len(inv) != len(W.gamma) or len(W.gamma) != G.m ** W.a or len(inv) != G.n ** W.b:
        return False
    for u in blue_words(G.m, W.a):
        for v in blue_words(G.n, W.b):
            got = anti_normal_form([e(i) for i in u] + [f(j) for j in v], G)
            if got != (W.gamma[u], inv[v]):
                return False
    return True


def candidates(G: Theta2Graph, max_a: int, max_b: int) -> list[tuple[int, int]]:
    """(a, b) with m^a = n^b, ordered by a+b then a."""
    out = [
        (a, b)
        for a in range(1, max_a + 1)
        for b in range(1, max_b + 1)
        if G.m ** a == G.n ** b
    ]
    return sorted(out, key=lambda ab: (ab[0] + ab[1], ab[0]))


def find_period(G: Theta2Graph, max_a: int = 4, max_b: int = 4, *, cap: int | None = None):
    if max_a < 1 or max_b < 1:
        raise ValueError("bounds must be >= 1")
    if G.m == 1 or G.n == 1:
        return DegeneratePeriodicity(G.m, G.n)
    cap = enumeration_cap() if cap is None else cap
    failed = []
    for a, b in candidates(G, max_a, max_b):
        if G.m ** a > cap:
            raise SearchSpaceTooLarge(f"m^a = {G.m ** a} exceeds cap {cap} at (a,b)=({a},{b})")
        witness, fail = _diagnose(G, a, b)
        if witness is not None:
            return witness
        failed.append(fail)
    return AperiodicityCertificate(max_a, max_b, tuple(failed))


def is_periodic_up_to(G: Theta2Graph, max_a: int = 4, max_b: int = 4) -> bool:
    return not isinstance(find_period(G, max_a, max_b), AperiodicityCertificate)
