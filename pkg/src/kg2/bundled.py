"""Small atomic representations used throughout the tests and the CLI."""
from __future__ import annotations

import json
from importlib import resources

from .atomic import AtomicGraph, atomic_graph, twisted_pair
from .core import Theta2Graph, flip_theta, identity_theta


def one_vertex_seed() -> AtomicGraph:
    """One vertex over theta = id, m = n = 2: S_1 x = x = T_1 x."""
    return atomic_graph(identity_theta(2, 2), ["x"], blue=[(1, "x", "x")], red=[(1, "x", "x")], core=["x"])


def swap_seed() -> AtomicGraph:
    """Two vertices over theta = id: S_1 swaps them, T_1 fixes both."""
    return atomic_graph(
        identity_theta(2, 2),
        ["x", "y"],
        blue=[(1, "x", "y"), (1, "y", "x")],
        red=[(1, "x", "x"), (1, "y", "y")],
        core=["x", "y"],
    )


def free_seed(n: int = 2) -> AtomicGraph:
    """One-colour data A_1 x = x, A_k x = 0 otherwise (the red side is empty)."""
    return atomic_graph(identity_theta(n, 1), ["x"], blue=[(1, "x", "x")], core=["x"])


def twisted_identity_seed() -> AtomicGraph:
    """T = S over the flip: the twisted pair of ``free_seed`` with alpha = id."""
    return twisted_pair(free_seed(2), (1, 2))


def twisted_swap_seed() -> AtomicGraph:
    """Twisted pair of ``free_seed`` with alpha = (1 2), so T_2 = S_1."""
    return twisted_pair(free_seed(2), (2, 1))


def phase_seed() -> AtomicGraph:
    """One-vertex seed with S_1 x = i x."""
    return atomic_graph(identity_theta(2, 2), ["x"], blue=[(1, "x", "x", 1j)], red=[(1, "x", "x")], core=["x"])


def rect_seed() -> AtomicGraph:
    """m = 2, n = 3 over theta = id: S_1 x = x = T_2 x."""
    return atomic_graph(identity_theta(2, 3), ["x"], blue=[(1, "x", "x")], red=[(2, "x", "x")], core=["x"])


def empty_core_seed() -> AtomicGraph:
    return atomic_graph(
        identity_theta(2, 2), ["x"], blue=[(1, "x", "x")], red=[(1, "x", "x")], core=[]
    )


# name -> factory; these are the examples swept by the consistency checks
BUNDLED = {
    "one_vertex": one_vertex_seed,
    "swap": swap_seed,
    "twisted11": twisted_identity_seed,
    "twisted12": twisted_swap_seed,
    "phase": phase_seed,
    "rect23": rect_seed,
}

THETAS = {
    "identity": lambda: identity_theta(2, 2),
    "flip": lambda: flip_theta(2),
    "m2n3": lambda: identity_theta(2, 3),
}


def data_file(name: str):
    return resources.files("kg2") / "data" / name


def load_bundled_rep(name: str) -> AtomicGraph:
    with data_file(f"{name}.json").open() as fh:
        return AtomicGraph.from_json(json.load(fh))


def load_bundled_theta(name: str) -> Theta2Graph:
    with data_file(f"theta_{name}.json").open() as fh:
        return Theta2Graph.from_json(json.load(fh))
