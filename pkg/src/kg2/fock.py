"""Sparse matrix models on finite truncations.

Two kinds of model share one interface (``theta``, ``gens``, ``level``,
``depth``, ``safe``):

* ``TruncatedFock``: the left-regular representation on words of length <= L.
* ``MatrixRep``: the operators of a truncated dilation, scalars included.

Truncation is handled by masks, never by padding.  ``safe(k)`` selects the
basis vectors from which every word of length k can be followed without
leaving the truncation; a check involving k generators uses that mask.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .core import BLUE, RED, Letter, Theta2Graph, normal_form, words_up_to
from .periodicity import enumeration_cap

DENSE_LIMIT = 2000
EXACT_TOL = 1e-12
SPAN_TOL = 1e-10


class CapExceeded(RuntimeError):
    pass


def fock_dimension(m: int, n: int, L: int) -> int:
    return sum(m ** k * n ** (t - k) for t in range(L + 1) for k in range(t + 1))


class _Model:
    theta: Theta2Graph
    gens: dict
    level: np.ndarray
    depth: int

    @property
    def dim(self) -> int:
        return len(self.level)

    def S(self, i: int):
        return self.gens[(BLUE, i)]

    def T(self, j: int):
        return self.gens[(RED, j)]

    def safe(self, k: int) -> np.ndarray:
        return self.level <= self.depth - k

    def word_matrix(self, letters):
        """Product of generators in operator order (rightmost acts first)."""
        out = sp.identity(self.dim, dtype=complex, format="csr")
        for x in letters:
            out = out @ self.gens[(x.color, x.index)]
        return out


@dataclass
class TruncatedFock(_Model):
    theta: Theta2Graph
    L: int
    basis: list
    index: dict
    gens: dict
    level: np.ndarray

    @property
    def depth(self) -> int:
        return self.L

    @property
    def E(self) -> list:
        return [self.gens[(BLUE, i)] for i in range(1, self.theta.m + 1)]

    @property
    def F(self) -> list:
        return [self.gens[(RED, j)] for j in range(1, self.theta.n + 1)]


def build_left_regular(G: Theta2Graph, L: int, *, cap: int | None = None) -> TruncatedFock:
    """E_i xi_w = xi_{e_i w}; images longer than L are dropped."""
    if L < 1:
        raise ValueError("L must be >= 1")
    cap = enumeration_cap() if cap is None else cap
    dim = fock_dimension(G.m, G.n, L)
    if dim > cap:
        raise CapExceeded(f"Fock dimension {dim} exceeds cap {cap}")
    basis = list(words_up_to(G, L))
    index = {w: k for k, w in enumerate(basis)}
    gens = {}
    for color, count in ((BLUE, G.m), (RED, G.n)):
        for i in range(1, count + 1):
            rows, cols = [], []
            for w in basis:
                if len(w) >= L:
                    continue
                t = normal_form([Letter(color, i)] + w.letters(), G)
                rows.append(index[t])
                cols.append(index[w])
            data = np.ones(len(rows), dtype=complex)
            gens[(color, i)] = sp.csr_matrix((data, (rows, cols)), shape=(dim, dim))
    level = np.array([len(w) for w in basis])
    return TruncatedFock(G, L, basis, index, gens, level)


@dataclass
class MatrixRep(_Model):
    theta: Theta2Graph
    vertices: list
    index: dict
    gens: dict
    level: np.ndarray
    depth: int
    P: np.ndarray  # boolean mask of the core projection
    cuntz: bool = True

    @classmethod
    def from_dilation(cls, D, projection=None) -> "MatrixRep":
        """Matrices of a truncated dilation; ``projection`` overrides the core."""
        g = D.graph
        verts = list(g.vertices)
        index = {x: k for k, x in enumerate(verts)}
        dim = len(verts)
        gens = {}
        for color, count, table in ((BLUE, g.m, g.blue), (RED, g.n, g.red)):
            for i in range(1, count + 1):
                rows, cols, data = [], [], []
                for (k, x), (y, s) in table.items():
                    if k == i:
                        rows.append(index[y])
                        cols.append(index[x])
                        data.append(complex(s))
                gens[(color, i)] = sp.csr_matrix((data, (rows, cols)), shape=(dim, dim), dtype=complex)
        core = D.core if projection is None else projection
        P = np.zeros(dim, dtype=bool)
        for x in core:
            P[index[x]] = True
        level = np.array([D.distance[x] for x in verts])
        return cls(g.theta, verts, index, gens, level, D.depth, P, getattr(D, "cuntz", True))

    def interior(self) -> np.ndarray:
        return self.safe(1)

    def apply(self, color: str, k: int, x):
        """Image of a basis vertex as ``(vertex, scalar)`` or None."""
        col = self.gens[(color, k)][:, self.index[x]].tocoo()
        if col.nnz == 0:
            return None
        if col.nnz != 1:
            raise ValueError(f"column {x} of {color}{k} is not atomic")
        return self.vertices[col.row[0]], complex(col.data[0])


# --- norms and reports ----------------------------------------------------


def opnorm(A, *, iters: int = 500, seed: int = 0) -> float:
    """Operator 2-norm: dense SVD for small matrices, power iteration otherwise."""
    if sp.issparse(A):
        if A.nnz == 0:
            return 0.0
        if max(A.shape) <= DENSE_LIMIT:
            return float(np.linalg.norm(A.toarray(), 2))
    else:
        A = np.asarray(A)
        if A.size == 0 or not np.any(A):
            return 0.0
        if max(A.shape) <= DENSE_LIMIT:
            return float(np.linalg.norm(A, 2))
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(A.shape[1]) + 0j
    x /= np.linalg.norm(x)
    est = 0.0
    for _ in range(iters):
        y = A.conj().T @ (A @ x)
        nrm = np.linalg.norm(y)
        if nrm == 0:
            return 0.0
        x = y / nrm
        new = float(np.sqrt(nrm))
        if abs(new - est) <= 1e-14 * max(1.0, new):
            break
        est = new
    return float(np.linalg.norm(A @ x))


def _restrict(A, mask: np.ndarray):
    return A[:, np.flatnonzero(mask)]


@dataclass
class CheckReport:
    check: str
    residual: float
    bound: int | None
    tolerance: float
    asserted: bool = True
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "residual": self.residual,
            "bound": self.bound,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if not self.asserted:
            out["asserted"] = False
        if self.detail:
            out["detail"] = self.detail
        return out


# --- identities -----------------------------------------------------------


def cuntz_residual(M, mask: np.ndarray | None = None) -> float:
    """max ||(S_i^* S_j - delta_ij I) Q|| over each colour separately."""
    mask = M.safe(1) if mask is None else mask
    worst = 0.0
    eye = sp.identity(M.dim, dtype=complex, format="csr")
    for color, count in ((BLUE, M.theta.m), (RED, M.theta.n)):
        for i in range(1, count + 1):
            for j in range(1, count + 1):
                X = M.gens[(color, i)].conj().T @ M.gens[(color, j)]
                if i == j:
                    X = X - eye
                worst = max(worst, opnorm(_restrict(X, mask)))
    return worst


def verify_cuntz_interior(M, tol: float = EXACT_TOL) -> CheckReport:
    return CheckReport("cuntz_interior", cuntz_residual(M), 1, tol)


def defect_residual(M) -> float:
    """max over colours of ||sum_i S_i S_i^* - I|| (every column is inside the range)."""
    worst = 0.0
    eye = sp.identity(M.dim, dtype=complex, format="csr")
    for color, count in ((BLUE, M.theta.m), (RED, M.theta.n)):
        X = sum(M.gens[(color, i)] @ M.gens[(color, i)].conj().T for i in range(1, count + 1)) - eye
        worst = max(worst, opnorm(X))
    return worst


def commutation_residual(M, mask: np.ndarray | None = None) -> float:
    mask = M.safe(2) if mask is None else mask
    G = M.theta
    worst = 0.0
    for i, j in G.pairs():
        a, b = G(i, j)
        X = M.S(i) @ M.T(j) - M.T(b) @ M.S(a)
        worst = max(worst, opnorm(_restrict(X, mask)))
    return worst


def verify_commutation_numeric(M, tol: float = EXACT_TOL) -> CheckReport:
    return CheckReport("commutation_interior", commutation_residual(M), 2, tol)


def star_commute_residual(M, mask: np.ndarray | None = None) -> float:
    mask = M.safe(1) if mask is None else mask
    worst = 0.0
    for i in range(1, M.theta.m + 1):
        for j in range(1, M.theta.n + 1):
            Si_star = M.S(i).conj().T
            X = Si_star @ M.T(j) - M.T(j) @ Si_star
            worst = max(worst, opnorm(_restrict(X, mask)))
    return worst


def star_commute_check(M, tol: float = EXACT_TOL) -> CheckReport:
    """S_i^* T_j = T_j S_i^* on the safe region (Cuntz-type, identity theta)."""
    if not M.theta.is_identity():
        raise ValueError("the identity S_i^* T_j = T_j S_i^* is specific to theta = id")
    asserted = bool(getattr(M, "cuntz", False))
    return CheckReport("star_commute", star_commute_residual(M), 1, tol, asserted)


# --- the free semigroup example --------------------------------------------


@dataclass
class FreeFock:
    """Left and right regular actions of F_n^+ on words of length <= L."""

    n: int
    L: int
    basis: list
    index: dict
    left: list
    right: list

    @property
    def level(self) -> np.ndarray:
        return np.array([len(w) for w in self.basis])

    def vacuum(self) -> np.ndarray:
        v = np.zeros(len(self.basis))
        v[self.index[()]] = 1.0
        return v


def build_free_fock(n: int, L: int) -> FreeFock:
    basis = [w for t in range(L + 1) for w in itertools.product(range(1, n + 1), repeat=t)]
    index = {w: k for k, w in enumerate(basis)}
    dim = len(basis)

    def mat(op):
        rows, cols = [], []
        for w in basis:
            if len(w) < L:
                rows.append(index[op(w)])
                cols.append(index[w])
        return sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(dim, dim))

    left = [mat(lambda w, i=i: (i,) + w) for i in range(1, n + 1)]
    right = [mat(lambda w, i=i: w + (i,)) for i in range(1, n + 1)]
    return FreeFock(n, L, basis, index, left, right)


def example_3_3_check(n: int, L: int) -> np.ndarray:
    """R_2^* L_2 L_1^* R_1 applied to the vacuum."""
    if n < 2 or L < 2:
        raise ValueError("needs n >= 2 and L >= 2")
    F = build_free_fock(n, L)
    L1, L2 = F.left[0], F.left[1]
    R1, R2 = F.right[0], F.right[1]
    return R2.T @ (L2 @ (L1.T @ (R1 @ F.vacuum())))


def example_3_3_commutation(n: int, L: int) -> float:
    """max ||(L_i R_j - R_j L_i) Q|| on words of length <= L - 2."""
    F = build_free_fock(n, L)
    mask = F.level <= L - 2
    worst = 0.0
    for Li in F.left:
        for Rj in F.right:
            worst = max(worst, opnorm(_restrict(Li @ Rj - Rj @ Li, mask)))
    return worst


# --- structure properties ---------------------------------------------------


class NotStabilized(Warning):
    pass


@dataclass
class StructureCheck:
    residual_selfadjoint: float
    residual_invariance: float
    word_bound: int
    tolerance: float
    span_dim: int
    stabilized: bool
    bound_used: int
    compression_gap: float = 0.0

    @property
    def passed(self) -> bool:
        return self.stabilized and max(self.residual_selfadjoint, self.residual_invariance) <= self.tolerance

    def to_json(self) -> dict:
        return {
            "check": "structure",
            "residual_selfadjoint": self.residual_selfadjoint,
            "residual_invariance": self.residual_invariance,
            "compression_gap": self.compression_gap,
            "bound": self.word_bound,
            "bound_used": self.bound_used,
            "span_dim": self.span_dim,
            "stabilized": self.stabilized,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def _compressions(M: MatrixRep, bound: int) -> list:
    """P (ST)_w P on the core for every normal-form word of length <= bound.

    Built from products of the compressed generators; ``_compression_gap``
    compares these with compressions of the full products where the
    truncation allows.
    """
    idx = np.flatnonzero(M.P)
    gens = {key: A[idx][:, idx].toarray() for key, A in M.gens.items()}
    out = []
    k = len(idx)
    for w in words_up_to(M.theta, bound):
        X = np.eye(k, dtype=complex)
        for x in w.letters():
            X = X @ gens[(x.color, x.index)]
        out.append((w, X))
    return out


def _compression_gap(M: MatrixRep, comps, bound: int) -> float:
    idx = np.flatnonzero(M.P)
    worst = 0.0
    for w, X in comps:
        if len(w) > bound or not np.all(M.level[idx] <= M.depth - len(w)):
            continue
        full = M.word_matrix(w.letters())[idx][:, idx].toarray()
        worst = max(worst, float(np.linalg.norm(full - X, 2)) if X.size else 0.0)
    return worst


def _span_rank(vecs: np.ndarray, tol: float) -> tuple[int, np.ndarray]:
    if vecs.size == 0:
        return 0, np.zeros((vecs.shape[1] if vecs.ndim == 2 else 0, 0))
    _, s, vh = np.linalg.svd(vecs, full_matrices=False)
    r = int(np.sum(s > tol * max(1.0, s[0] if len(s) else 1.0)))
    return r, vh[:r].conj().T


def structure_check(M: MatrixRep, word_bound: int = 4, tol: float = SPAN_TOL) -> StructureCheck:
    """Self-adjointness of P S P and invariance of P^perp H at desk scale."""
    if not np.any(M.P):
        raise ValueError("structure_check needs a nonempty core projection")
    if word_bound < 1:
        raise ValueError("word_bound must be >= 1")

    def rank_at(b):
        comps = _compressions(M, b)
        vecs = np.array([X.reshape(-1) for _, X in comps])
        r, basis = _span_rank(vecs, tol)
        return comps, r, basis

    b = word_bound
    comps, r, basis = rank_at(b)
    _, r_next, _ = rank_at(b + 1)
    stabilized = r == r_next
    if not stabilized:
        b = 2 * word_bound
        comps, r, basis = rank_at(b)
        _, r_next, _ = rank_at(b + 1)
        stabilized = r == r_next

    sa = 0.0
    for _, X in comps:
        y = X.conj().T.reshape(-1)
        resid = y - basis @ (basis.conj().T @ y) if basis.size else y
        sa = max(sa, float(np.linalg.norm(resid)))

    inv = 0.0
    notP = ~M.P
    rows = np.flatnonzero(M.P)
    for w in words_up_to(M.theta, word_bound):
        if len(w) == 0:
            continue
        cols = np.flatnonzero(notP & M.safe(len(w)))
        if len(cols) == 0:
            continue
        X = M.word_matrix(w.letters())[rows][:, cols]
        inv = max(inv, opnorm(X))
    gap = _compression_gap(M, comps, word_bound)
    return StructureCheck(sa, max(inv, gap), word_bound, tol, r, stabilized, b, gap)


# --- text dumps -------------------------------------------------------------


def dump_coo(A) -> str:
    """``row col re im`` per nonzero, row-major order."""
    C = sp.coo_matrix(A)
    order = np.lexsort((C.col, C.row))
    lines = [f"{C.row[k]} {C.col[k]} {C.data[k].real:.17g} {complex(C.data[k]).imag:.17g}" for k in order]
    return "\n".join(lines) + ("\n" if lines else "")
