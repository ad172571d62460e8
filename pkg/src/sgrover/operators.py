"""Dense matrices for every walk, coin, shift, discriminant and Laplacian.

Bases
-----
``oriented-full``     l2(K_q): both orientations of every q-simplex.
``oriented-reduced``  coordinates of an antisymmetric function on one chosen
                      orientation per simplex (the delta_tau basis).  All
                      cochain operators and reduced discriminants live here.
``edge-up/down``      the redundant edge sets E(X_q), E(Y_q).
``ordered``           l2 over vertex sequences (the S-quantum walk space).

The reduced basis rescales both sides of the l2(K_q) inner product by the
same factor, so a self-adjoint operator restricted to antisymmetric
functions is still a symmetric matrix there.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .complex import (OrientedSimplex, SimplicialComplex, _check_mode_range,
                      permutation_parity, reduced_pairs, require_valid, sgn, eta)
from .errors import ComplexError, RangeError

__all__ = [
    "Basis", "LinearMap", "oriented_basis", "reduced_basis", "ordered_basis",
    "edge_basis", "embedding", "antisym_projector", "build_alpha", "build_g_walk",
    "build_edge_ops", "build_discriminant", "build_cochain_ops", "f_sigma",
    "apply_switching", "swap_rows_cols", "to_full", "to_reduced", "ordered_embedding",
]


@dataclass(frozen=True)
class Basis:
    space: str
    labels: tuple
    q: int | None = None
    mode: str | None = None

    def __len__(self):
        return len(self.labels)

    @cached_property
    def position(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label) -> int:
        return self.position[label]

    def simplex_of(self, i: int) -> tuple[int, ...]:
        """Unoriented simplex carried by basis element ``i``."""
        lab = self.labels[i]
        if self.space.startswith("edge"):
            return lab[0].vertices
        if self.space == "ordered":
            return tuple(sorted(lab))
        return lab.vertices

    def label_strings(self) -> list[str]:
        if self.space.startswith("edge"):
            return [f"{a}->{b}" for a, b in self.labels]
        if self.space == "ordered":
            return ["(" + " ".join(map(str, s)) + ")" for s in self.labels]
        return [str(s) for s in self.labels]


@dataclass(frozen=True, eq=False)
class LinearMap:
    rows: Basis
    cols: Basis
    matrix: np.ndarray
    name: str = ""

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (len(self.rows), len(self.cols)):
            raise ValueError(f"matrix shape {m.shape} does not match bases "
                             f"({len(self.rows)}, {len(self.cols)})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def H(self) -> "LinearMap":
        return LinearMap(self.cols, self.rows, self.matrix.conj().T, self.name + "*")

    def __matmul__(self, other):
        if isinstance(other, LinearMap):
            return LinearMap(self.rows, other.cols, self.matrix @ other.matrix)
        return self.matrix @ other

    def hermitian_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0))

    def unitary_residual(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[1])), initial=0.0))

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return self.hermitian_residual() < tol

    def is_unitary(self, tol: float = 1e-12) -> bool:
        return self.unitary_residual() < tol

    def to_dict(self) -> dict:
        m = self.matrix
        return {
            "name": self.name,
            "row_space": self.rows.space,
            "col_space": self.cols.space,
            "row_labels": self.rows.label_strings(),
            "col_labels": self.cols.label_strings(),
            "real": m.real.tolist(),
            "imag": m.imag.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        """Row-major CSV; each matrix entry becomes a ``re,im`` column pair."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = ["row"]
        for lab in self.cols.label_strings():
            head += [f"{lab}.re", f"{lab}.im"]
        w.writerow(head)
        for lab, row in zip(self.rows.label_strings(), self.matrix):
            w.writerow([lab] + [repr(float(x)) for z in row for x in (z.real, z.imag)])
        return buf.getvalue()


# -- bases -------------------------------------------------------------------

def oriented_basis(c: SimplicialComplex, q: int) -> Basis:
    labels = tuple(OrientedSimplex(s, p) for s in c.simplices(q) for p in (0, 1))
    return Basis("oriented-full", labels, q)


def reduced_basis(c: SimplicialComplex, q: int,
                  orientation: Sequence[OrientedSimplex] | None = None) -> Basis:
    """One orientation per q-simplex; default is the even (sorted) one.

    A user orientation fixes both the representatives and their order.
    """
    if orientation is None:
        return Basis("oriented-reduced", tuple(OrientedSimplex(s) for s in c.simplices(q)), q)
    labels = tuple(orientation)
    keys = [s.vertices for s in labels]
    if sorted(keys) != sorted(c.simplices(q)) or len(set(keys)) != len(keys):
        raise ComplexError(f"orientation must list every {q}-simplex exactly once")
    return Basis("oriented-reduced", labels, q)


def ordered_basis(c: SimplicialComplex, q: int) -> Basis:
    labels = tuple(p for s in c.simplices(q) for p in itertools.permutations(s))
    return Basis("ordered", tuple(sorted(labels)), q)


def edge_basis(c: SimplicialComplex, q: int, mode: str) -> Basis:
    edges = []
    for s, t in reduced_pairs(c, q, mode):
        for p1 in (0, 1):
            for p2 in (0, 1):
                edges.append((OrientedSimplex(s, p1), OrientedSimplex(t, p2)))
    return Basis(f"edge-{mode}", tuple(sorted(edges)), q, mode)


def embedding(full: Basis, reduced: Basis) -> np.ndarray:
    """Map reduced coordinates x to the antisymmetric function f(tau)=x, f(bar tau)=-x."""
    E = np.zeros((len(full), len(reduced)))
    for j, tau in enumerate(reduced.labels):
        E[full.index(tau), j] = 1.0
        E[full.index(tau.bar), j] = -1.0
    return E


def to_full(x, full: Basis, reduced: Basis) -> np.ndarray:
    return embedding(full, reduced) @ np.asarray(x)


def to_reduced(f, full: Basis, reduced: Basis) -> np.ndarray:
    """Reduced coordinates of the antisymmetric part of ``f``."""
    return 0.5 * embedding(full, reduced).T @ np.asarray(f)


def antisym_projector(full: Basis) -> np.ndarray:
    """P g(tau) = (g(tau) - g(bar tau)) / 2 on l2(K_q)."""
    P = np.zeros((len(full), len(full)))
    for i, tau in enumerate(full.labels):
        P[i, i] += 0.5
        P[i, full.index(tau.bar)] -= 0.5
    return P


# -- S-quantum walk -----------------------------------------------------------

def _check_g_range(c: SimplicialComplex, q: int):
    if not 1 <= q <= c.dim:
        raise RangeError(f"S-quantum walk defined for 1 <= q <= {c.dim}, got q={q}")


def build_alpha(c: SimplicialComplex, q: int, allow_invalid: bool = False) -> LinearMap:
    """Isometry from l2(K^_{q-1}) into l2(K^_q): extend a sequence by one vertex."""
    _check_g_range(c, q)
    require_valid(c, allow_invalid)
    rows, cols = ordered_basis(c, q), ordered_basis(c, q - 1)
    deg = {t: c.deg_up(t) for t in cols.labels}
    A = np.zeros((len(rows), len(cols)))
    for i, s in enumerate(rows.labels):
        t = s[:-1]
        A[i, cols.index(t)] = 1.0 / math.sqrt(deg[t])
    return LinearMap(rows, cols, A, f"alpha_{q - 1}")


class GWalk(NamedTuple):
    G: LinearMap
    coin: LinearMap
    shift: LinearMap
    proj: LinearMap
    alpha: LinearMap

    def discriminant(self) -> LinearMap:
        """alpha* S alpha on l2(K^_{q-1})."""
        a = self.alpha
        return LinearMap(a.cols, a.cols, a.matrix.conj().T @ self.shift.matrix @ a.matrix, "D(G)")


def build_g_walk(c: SimplicialComplex, q: int, allow_invalid: bool = False) -> GWalk:
    alpha = build_alpha(c, q, allow_invalid)
    basis = alpha.rows
    a = alpha.matrix
    n = len(basis)
    coin = 2 * a @ a.conj().T - np.eye(n)
    perms = list(itertools.permutations(range(q + 1)))
    weight = 1.0 / math.factorial(q + 1)
    P = np.zeros((n, n))
    for i, s in enumerate(basis.labels):
        for pi in perms:
            sp = tuple(s[k] for k in pi)
            P[i, basis.index(sp)] += (-1) ** permutation_parity(pi) * weight
    shift = 2 * P - np.eye(n)
    return GWalk(
        LinearMap(basis, basis, shift @ coin, f"G_{q}"),
        LinearMap(basis, basis, coin, f"C_{q}"),
        LinearMap(basis, basis, shift, f"S_{q}"),
        LinearMap(basis, basis, P, f"P_{q}"),
        alpha,
    )


# -- up / down Grover walks -------------------------------------------------------

def _edge_weights(c: SimplicialComplex, q: int, mode: str, full: Basis) -> np.ndarray:
    """Coin normalisation 1/sqrt(vertex degree in X_q or Y_q) per oriented simplex."""
    if mode == "up":
        deg = [2 * (q + 1) * c.deg_up(t.vertices) for t in full.labels]
    else:
        deg = [2 * c.deg_down(t.vertices) for t in full.labels]
    if min(deg) == 0:
        raise RangeError(f"some {q}-simplex has no {mode} neighbours")
    return 1.0 / np.sqrt(np.array(deg, dtype=float))


class EdgeOps(NamedTuple):
    d: LinearMap
    d_adj: LinearMap
    shift: LinearMap
    coin: LinearMap
    U: LinearMap

    def discriminant(self) -> LinearMap:
        m = self.d.matrix @ self.shift.matrix @ self.d_adj.matrix
        return LinearMap(self.d.rows, self.d.rows, m, "d S d*")


def build_edge_ops(c: SimplicialComplex, q: int, mode: str, allow_invalid: bool = False) -> EdgeOps:
    _check_mode_range(c, q, mode)
    require_valid(c, allow_invalid)
    full = oriented_basis(c, q)
    edges = edge_basis(c, q, mode)
    if not len(edges):
        raise RangeError(f"the {mode} graph in dimension {q} has no edges")
    w = _edge_weights(c, q, mode, full)
    d = np.zeros((len(full), len(edges)))
    S = np.zeros((len(edges), len(edges)))
    for k, (t1, t2) in enumerate(edges.labels):
        i = full.index(t1)
        d[i, k] = w[i]
        S[k, edges.index((t2, t1))] = eta(c, t1, t2, mode)
    coin = 2 * d.T @ d - np.eye(len(edges))
    return EdgeOps(
        LinearMap(full, edges, d, f"d_{mode}"),
        LinearMap(edges, full, d.T, f"d_{mode}*"),
        LinearMap(edges, edges, S, f"S^{mode}"),
        LinearMap(edges, edges, coin, f"C^{mode}"),
        LinearMap(edges, edges, S @ coin, f"U_{q}^{mode}"),
    )


def _pair_weight(c: SimplicialComplex, q: int, mode: str, s, t) -> float:
    if mode == "up":
        return 1.0 / (2 * (q + 1) * math.sqrt(c.deg_up(s) * c.deg_up(t)))
    return 1.0 / (2 * math.sqrt(c.deg_down(s) * c.deg_down(t)))


def build_discriminant(c: SimplicialComplex, q: int, mode: str, basis: str = "full",
                       orientation: Sequence[OrientedSimplex] | None = None,
                       allow_invalid: bool = False) -> LinearMap:
    """Discriminant from its entrywise form.

    Full basis: entry eta/(2(q+1) sqrt(deg_X deg_X')) (up) or
    eta/(2 sqrt(deg_Y deg_Y')) (down).  Reduced basis: the same entries
    doubled, since D delta_t'(t) = D(t, t') - D(t, bar t').
    """
    _check_mode_range(c, q, mode)
    require_valid(c, allow_invalid)
    pairs = reduced_pairs(c, q, mode)
    if not pairs:
        raise RangeError(f"the {mode} graph in dimension {q} has no edges")
    if basis == "full":
        b = oriented_basis(c, q)
        D = np.zeros((len(b), len(b)))
        for s, t in pairs:
            w = _pair_weight(c, q, mode, s, t)
            for p1 in (0, 1):
                for p2 in (0, 1):
                    t1, t2 = OrientedSimplex(s, p1), OrientedSimplex(t, p2)
                    D[b.index(t1), b.index(t2)] = eta(c, t1, t2, mode) * w
    elif basis == "reduced":
        b = reduced_basis(c, q, orientation)
        rep = {lab.vertices: lab for lab in b.labels}
        D = np.zeros((len(b), len(b)))
        for s, t in pairs:
            t1, t2 = rep[s], rep[t]
            D[b.index(t1), b.index(t2)] = 2 * eta(c, t1, t2, mode) * _pair_weight(c, q, mode, s, t)
    else:
        raise ValueError(f"basis must be 'full' or 'reduced', got {basis!r}")
    return LinearMap(b, b, D, f"D_{q}^{mode}")


# -- cochains and Laplacians --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CochainOps:
    """Cochain-level operators on reduced coordinates.

    ``delta`` is the coboundary C^q -> C^{q+1}; ``delta_prev`` is
    C^{q-1} -> C^q.  ``a``/``A_up`` are None in the top dimension and
    ``b``/``A_down``/``delta_prev`` are None for q = 0; ``b``/``A_down`` are
    also None when some q-simplex has no down neighbour.
    """
    q: int
    basis: Basis
    delta: np.ndarray | None
    delta_prev: np.ndarray | None
    L_up: np.ndarray
    L_down: np.ndarray
    a: np.ndarray | None
    b: np.ndarray | None
    A_up: np.ndarray | None
    A_down: np.ndarray | None

    @property
    def L(self) -> np.ndarray:
        return self.L_up + self.L_down


def coboundary(c: SimplicialComplex, q: int, src: Basis | None = None,
               dst: Basis | None = None) -> np.ndarray:
    """delta_q in reduced coordinates: entry sgn(sigma, tau)."""
    src = src or reduced_basis(c, q)
    dst = dst or reduced_basis(c, q + 1)
    M = np.zeros((len(dst), len(src)))
    for i, sigma in enumerate(dst.labels):
        for j, tau in enumerate(src.labels):
            M[i, j] = sgn(sigma, tau)
    return M


def build_cochain_ops(c: SimplicialComplex, q: int,
                      orientation: Sequence[OrientedSimplex] | None = None,
                      allow_invalid: bool = False) -> CochainOps:
    if not 0 <= q <= c.dim:
        raise RangeError(f"cochain operators need 0 <= q <= {c.dim}, got q={q}")
    require_valid(c, allow_invalid)
    b = reduced_basis(c, q, orientation)
    n = len(b)
    delta = delta_prev = a = bq = A_up = A_down = None
    L_up = np.zeros((n, n))
    L_down = np.zeros((n, n))
    if q < c.dim:
        delta = coboundary(c, q, b)
        L_up = delta.T @ delta
        deg_x = np.array([c.deg_up(t.vertices) for t in b.labels], dtype=float)
        A_up = np.diag(1.0 / np.sqrt(deg_x))
        a = delta @ A_up
    if q >= 1:
        delta_prev = coboundary(c, q - 1, dst=b)
        L_down = delta_prev @ delta_prev.T
        deg_y = np.array([c.deg_down(t.vertices) for t in b.labels], dtype=float)
        if deg_y.min() > 0:
            A_down = np.diag(1.0 / np.sqrt(deg_y))
            bq = A_down @ delta_prev
    return CochainOps(q, b, delta, delta_prev, L_up, L_down, a, bq, A_up, A_down)


def f_sigma(c: SimplicialComplex, sigma: OrientedSimplex,
            orientation: Sequence[OrientedSimplex] | None = None) -> np.ndarray:
    """Reduced coordinates of tau -> sgn(sigma, tau) on (dim sigma - 1)-cochains."""
    if sigma not in c:
        raise ComplexError(f"{sigma} is not a simplex of the complex")
    if sigma.dim < 1:
        raise RangeError("f_sigma needs dim sigma >= 1")
    b = reduced_basis(c, sigma.dim - 1, orientation)
    return np.array([sgn(sigma, tau) for tau in b.labels], dtype=float)


# -- switching ---------------------------------------------------------------------

def apply_switching(D: LinearMap, theta) -> LinearMap:
    """D^theta = S^theta D S^theta for a +-1 vector theta on the reduced basis."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (D.shape[0],) or D.shape[0] != D.shape[1]:
        raise ValueError("theta must have one entry per basis element of a square map")
    if not np.all(np.abs(theta) == 1):
        raise ValueError("switching entries must be +1 or -1")
    return LinearMap(D.rows, D.cols, theta[:, None] * D.matrix * theta[None, :], D.name + "^theta")


def swap_rows_cols(M: np.ndarray, swaps: Sequence[tuple[int, int]]) -> np.ndarray:
    """Apply a sequence of simultaneous row/column transpositions (0-based)."""
    perm = np.arange(M.shape[0])
    for i, j in swaps:
        perm[[i, j]] = perm[[j, i]]
    return np.asarray(M)[np.ix_(perm, perm)]


def ordered_embedding(ordered: Basis, reduced: Basis, symmetric: bool = False) -> np.ndarray:
    """Matrix taking reduced coordinates to functions on vertex sequences.

    Antisymmetric (default): f(s) = x(tau) * sign of the ordering of s relative
    to tau.  Symmetric: f(s) = x([s]), which realises C_+ inside l2(K^_q).
    """
    R = np.zeros((len(ordered), len(reduced)))
    rep = {lab.vertices: (j, lab.parity) for j, lab in enumerate(reduced.labels)}
    for i, s in enumerate(ordered.labels):
        o = OrientedSimplex.from_ordered(s)
        j, p = rep[o.vertices]
        R[i, j] = 1.0 if symmetric or o.parity == p else -1.0
    return R
