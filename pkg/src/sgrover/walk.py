"""Time evolution of walk states, finding probabilities and stationary states.

A stationary state here is an eigenvector of the walk unitary; its finding
probabilities do not depend on time.  The constructors build such states
from symmetric functions (which every discriminant annihilates) or from
eigenvalue-1 cochains of the up discriminant.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .complex import OrientedSimplex, SimplicialComplex, require_valid
from .errors import PreconditionError, RangeError
from .operators import (Basis, LinearMap, build_cochain_ops, build_edge_ops, build_g_walk,
                        embedding, f_sigma, ordered_basis, ordered_embedding, oriented_basis,
                        reduced_basis)

RESIDUAL_TOL = 1e-10

__all__ = [
    "WalkState", "ProbabilityTable", "evolve", "finding_probability", "finding_probabilities",
    "probability_table", "constant_symmetric", "random_symmetric", "unit_eigencochain",
    "StationaryState", "stationary_state", "StationarityReport", "stationarity_report",
]


@dataclass(frozen=True, eq=False)
class WalkState:
    basis: Basis
    amplitudes: np.ndarray
    time: int = 0

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (len(self.basis),):
            raise ValueError(f"state has {amp.shape} amplitudes for a basis of size {len(self.basis)}")
        if self.time < 0:
            raise ValueError("time must be non-negative")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @classmethod
    def normalized(cls, basis: Basis, amplitudes) -> "WalkState":
        amp = np.asarray(amplitudes, dtype=complex)
        nrm = np.linalg.norm(amp)
        if nrm == 0:
            raise PreconditionError("cannot normalise the zero vector")
        return cls(basis, amp / nrm)


def _same_space(a: Basis, b: Basis) -> bool:
    return a.space == b.space and a.labels == b.labels


def evolve(U: LinearMap, psi: WalkState, n: int) -> WalkState:
    """U^n psi by repeated matrix-vector products."""
    if n < 0:
        raise ValueError("number of steps must be non-negative")
    if not _same_space(U.cols, psi.basis) or not _same_space(U.rows, psi.basis):
        raise ValueError(f"operator {U.name} does not act on the state's space {psi.basis.space}")
    v = psi.amplitudes
    M = U.matrix
    for _ in range(n):
        v = M @ v
    return WalkState(psi.basis, v, psi.time + n)


def _simplex_key(F) -> tuple[int, ...]:
    if isinstance(F, OrientedSimplex):
        return F.vertices
    return tuple(sorted(F))


def finding_probability(psi: WalkState, F) -> float:
    """Mass of psi on every basis element lying over the simplex F.

    Edge spaces count the edges leaving both orientations of F; the ordered
    space counts every ordering of F.
    """
    key = _simplex_key(F)
    q = psi.basis.q
    if q is not None and len(key) != q + 1:
        raise RangeError(f"simplex {key} has dimension {len(key) - 1}, state lives in dimension {q}")
    mass = np.abs(psi.amplitudes) ** 2
    return float(sum(mass[i] for i in range(len(psi.basis)) if psi.basis.simplex_of(i) == key))


def _groups(basis: Basis) -> tuple[list[tuple[int, ...]], np.ndarray]:
    keys = sorted({basis.simplex_of(i) for i in range(len(basis))})
    pos = {k: j for j, k in enumerate(keys)}
    return keys, np.array([pos[basis.simplex_of(i)] for i in range(len(basis))], dtype=int)


def finding_probabilities(psi: WalkState) -> dict[tuple[int, ...], float]:
    keys, group = _groups(psi.basis)
    p = np.bincount(group, weights=np.abs(psi.amplitudes) ** 2, minlength=len(keys))
    return dict(zip(keys, p.tolist()))


@dataclass(frozen=True, eq=False)
class ProbabilityTable:
    times: tuple[int, ...]
    simplices: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    values: np.ndarray

    def row_sums(self) -> np.ndarray:
        return self.values.sum(axis=1)

    def max_row_sum_error(self) -> float:
        return float(np.max(np.abs(self.row_sums() - 1.0), initial=0.0))

    def max_time_deviation(self) -> float:
        """Largest change of any entry relative to the first row."""
        return float(np.max(np.abs(self.values - self.values[0]), initial=0.0))

    def column(self, F) -> np.ndarray:
        return self.values[:, self.simplices.index(_simplex_key(F))]

    def to_dict(self) -> dict:
        return {"times": list(self.times), "simplices": list(self.labels),
                "probabilities": [[float(x) for x in row] for row in self.values]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["time", *self.labels])
        for t, row in zip(self.times, self.values):
            w.writerow([t, *(repr(float(x)) for x in row)])
        return buf.getvalue()


def probability_table(U: LinearMap, psi0: WalkState, steps: int,
                      c: SimplicialComplex | None = None) -> ProbabilityTable:
    """Finding probabilities of U^n psi0 for n = 0..steps."""
    keys, group = _groups(psi0.basis)
    rows = []
    psi = psi0
    for n in range(steps + 1):
        if n:
            psi = evolve(U, psi, 1)
        rows.append(np.bincount(group, weights=np.abs(psi.amplitudes) ** 2, minlength=len(keys)))
    labels = tuple(c.label_of(k) if c is not None else "{" + " ".join(map(str, k)) + "}"
                   for k in keys)
    return ProbabilityTable(tuple(range(steps + 1)), tuple(keys), labels, np.array(rows))


# -- initial functions ----------------------------------------------------------

def constant_symmetric(c: SimplicialComplex, q: int) -> np.ndarray:
    """Reduced coordinates of f = 1/sqrt(2|S_q|) on every oriented q-simplex."""
    n = c.count(q)
    return np.full(n, 1.0 / math.sqrt(2 * n))


def random_symmetric(c: SimplicialComplex, q: int, rng: np.random.Generator) -> np.ndarray:
    """A random real symmetric function with unit l2(K_q) norm."""
    x = rng.standard_normal(c.count(q))
    return x / math.sqrt(2 * float(x @ x))


def _symmetric_full(c: SimplicialComplex, q: int, x) -> tuple[Basis, np.ndarray]:
    full = oriented_basis(c, q)
    red = reduced_basis(c, q)
    x = np.asarray(x, dtype=complex)
    if x.shape != (len(red),):
        raise RangeError(f"f needs {len(red)} values (one per {q}-simplex), got {x.shape}")
    E = np.abs(embedding(full, red))
    return full, E @ x


def unit_eigencochain(c: SimplicialComplex, q: int, value: float = 1.0,
                      tol: float = RESIDUAL_TOL) -> np.ndarray:
    """Reduced coordinates of a unit-norm eigencochain of the up discriminant.

    The boundary functions f_sigma of the (q+1)-simplices are tried first; a
    generic eigenvector is the fallback.  Raises PreconditionError when
    ``value`` is not an eigenvalue.
    """
    ops = build_cochain_ops(c, q)
    D = (ops.a.T @ ops.a - np.eye(len(ops.basis))) / (q + 1)
    for s in c.simplices(q + 1):
        x = f_sigma(c, OrientedSimplex(s))
        if np.max(np.abs(D @ x - value * x)) < tol:
            return x / math.sqrt(2 * float(x @ x))
    w, V = np.linalg.eigh(D)
    hit = np.flatnonzero(np.abs(w - value) < tol)
    if not len(hit):
        raise PreconditionError(f"{value} is not an eigenvalue of the up discriminant in dimension {q}")
    x = V[:, hit[0]]
    return x / math.sqrt(2 * float(x @ x))


def _check_unit(norm_sq: float, what: str):
    if abs(norm_sq - 1.0) >= RESIDUAL_TOL:
        raise PreconditionError(f"{what} must have unit norm, got norm^2 = {norm_sq:.6g}")


# -- stationary states ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StationaryState:
    kind: str
    q: int
    state: WalkState
    unitary: LinearMap
    eigenvalue: complex
    residual: float
    f: np.ndarray


def stationary_state(c: SimplicialComplex, q: int, kind: str, f=None,
                     allow_invalid: bool = False) -> StationaryState:
    """Eigenvector of a walk unitary built from a cochain f (reduced coordinates).

    up / down      f symmetric with unit l2(K_q) norm; psi = (I - iS) d* f / sqrt 2,
                   eigenvalue i of the up / down Grover walk in dimension q.
    ordered        f symmetric as above; h = sqrt(2/(q+1)!) alpha_q f,
                   eigenvalue -1 of the S-quantum walk in dimension q+1.
    ordered-fpp1   f an antisymmetric unit eigencochain of the up discriminant
                   with eigenvalue 1 in dimension q-1; the state
                   alpha_{q-1} r with r = sqrt(2/q!) f, eigenvalue +1 of the
                   S-quantum walk in dimension q.
    """
    require_valid(c, allow_invalid)
    if kind in ("up", "down"):
        if f is None:
            f = constant_symmetric(c, q)
        _, ff = _symmetric_full(c, q, f)
        _check_unit(float(np.sum(np.abs(ff) ** 2)), "f")
        ops = build_edge_ops(c, q, kind, allow_invalid)
        S = ops.shift.matrix
        v = (ff @ ops.d.matrix - 1j * S @ (ops.d_adj.matrix @ ff)) / math.sqrt(2)
        U, lam = ops.U, 1j
        basis = ops.U.rows
    elif kind == "ordered":
        if f is None:
            f = constant_symmetric(c, q)
        walk = build_g_walk(c, q + 1, allow_invalid)
        red = reduced_basis(c, q)
        R = ordered_embedding(walk.alpha.cols, red, symmetric=True)
        f = np.asarray(f, dtype=complex)
        _check_unit(2 * float(np.sum(np.abs(f) ** 2)), "f")
        g = math.sqrt(2 / math.factorial(q + 1)) * (R @ f)
        v = walk.alpha.matrix @ g
        U, lam, basis = walk.G, -1.0, walk.G.rows
    elif kind == "ordered-fpp1":
        if q < 1:
            raise RangeError("ordered-fpp1 needs q >= 1")
        if f is None:
            f = unit_eigencochain(c, q - 1, 1.0)
        walk = build_g_walk(c, q, allow_invalid)
        red = reduced_basis(c, q - 1)
        f = np.asarray(f, dtype=complex)
        _check_unit(2 * float(np.sum(np.abs(f) ** 2)), "f")
        R = ordered_embedding(walk.alpha.cols, red)
        r = math.sqrt(2 / math.factorial(q)) * (R @ f)
        v = walk.alpha.matrix @ r
        U, lam, basis = walk.G, 1.0, walk.G.rows
    else:
        raise ValueError(f"unknown stationary kind {kind!r}")
    state = WalkState(basis, v)
    if abs(state.norm - 1.0) >= RESIDUAL_TOL:
        raise PreconditionError(f"constructed state has norm {state.norm:.6g}")
    residual = float(np.max(np.abs(U.matrix @ state.amplitudes - lam * state.amplitudes)))
    if residual >= RESIDUAL_TOL:
        raise PreconditionError(
            f"f does not give an eigenvector of {U.name} (residual {residual:.2e})")
    return StationaryState(kind, q, state, U, lam, residual, np.asarray(f))


# -- stationarity report ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StationarityReport:
    kind: str
    q: int
    table: ProbabilityTable
    eigen_residual: float
    checks: dict = field(default_factory=dict)

    @property
    def time_deviation(self) -> float:
        return self.table.max_time_deviation()

    @property
    def passed(self) -> bool:
        return (self.eigen_residual < RESIDUAL_TOL
                and self.time_deviation < RESIDUAL_TOL
                and self.table.max_row_sum_error() < RESIDUAL_TOL
                and all(chk["passed"] for chk in self.checks.values()))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "q": self.q, "passed": self.passed,
                "eigen_residual": self.eigen_residual,
                "time_deviation": self.time_deviation,
                "row_sum_error": self.table.max_row_sum_error(),
                "checks": self.checks, "table": self.table.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check(residual: float, tol: float) -> dict:
    return {"residual": float(residual), "passed": bool(residual < tol)}


def _edge_side(c: SimplicialComplex, q: int, mode: str, x: np.ndarray) -> np.ndarray:
    """|f(tau)|^2 plus the neighbour sum over edges leaving tau (symmetric f)."""
    red = reduced_basis(c, q)
    fx = {lab.vertices: abs(v) ** 2 for lab, v in zip(red.labels, x)}
    out = []
    for t in c.simplices(q):
        nbrs = c.up_neighbors(t) if mode == "up" else c.down_neighbors(t)
        if mode == "up":
            w = [1.0 / (2 * (q + 1) * c.deg_up(s)) for s in nbrs]
        else:
            w = [1.0 / (2 * c.deg_down(s)) for s in nbrs]
        # two edges (tau, tau') and (tau, bar tau') per unoriented neighbour
        out.append(fx[t] + sum(2 * wi * fx[s] for wi, s in zip(w, nbrs)))
    return np.array(out)


def _ordered_side(c: SimplicialComplex, q: int, x: np.ndarray) -> np.ndarray:
    """sum over faces t of F of 2|f(t)|^2 / deg_X(t), for each (q+1)-simplex F."""
    red = reduced_basis(c, q)
    fx = {lab.vertices: abs(v) ** 2 for lab, v in zip(red.labels, x)}
    return np.array([sum(2 * fx[t] / c.deg_up(t) for t in _faces_of(F))
                     for F in c.simplices(q + 1)])


def _faces_of(F: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [F[:j] + F[j + 1:] for j in range(len(F))]


def stationarity_report(c: SimplicialComplex, q: int, kind: str, f=None, n_max: int = 20,
                        tol: float = RESIDUAL_TOL, allow_invalid: bool = False) -> StationarityReport:
    """Evolve a stationary state and compare its table with the closed forms."""
    st = stationary_state(c, q, kind, f, allow_invalid)
    table = probability_table(st.unitary, st.state, n_max, c)
    x = st.f
    checks: dict = {}
    if kind in ("up", "down"):
        expect = _edge_side(c, q, kind, x)
        checks["closed_form"] = _check(np.max(np.abs(table.values - expect[None, :])), tol)
        if kind == "up" and q + 1 <= c.dim:
            h = stationary_state(c, q, "ordered", x, allow_invalid)
            qtab = probability_table(h.unitary, h.state, n_max, c)
            fx = np.abs(x) ** 2
            rhs = np.zeros((n_max + 1, c.count(q)))
            for i, t in enumerate(c.simplices(q)):
                cols = [qtab.simplices.index(F) for F in c.cofacets(t)]
                rhs[:, i] = qtab.values[:, cols].sum(axis=1) / (2 * (q + 1)) + q / (q + 1) * fx[i]
            checks["up_vs_ordered"] = _check(np.max(np.abs(table.values - rhs)), tol)
    elif kind == "ordered":
        expect = _ordered_side(c, q, x)
        checks["closed_form"] = _check(np.max(np.abs(table.values - expect[None, :])), tol)
    elif kind == "ordered-fpp1":
        full = oriented_basis(c, q - 1)
        ops = build_edge_ops(c, q - 1, "up", allow_invalid)
        ff = embedding(full, reduced_basis(c, q - 1)) @ x
        phi = WalkState(ops.U.rows, ops.d_adj.matrix @ ff)
        ptab = probability_table(ops.U, phi, n_max, c)
        rhs = np.zeros_like(table.values)
        for j, F in enumerate(table.simplices):
            cols = [ptab.simplices.index(t) for t in _faces_of(F)]
            wts = np.array([1.0 / c.deg_up(t) for t in _faces_of(F)])
            rhs[:, j] = ptab.values[:, cols] @ wts
        checks["ordered_vs_up"] = _check(np.max(np.abs(table.values - rhs)), tol)
        checks["up_walk_fixed"] = _check(ptab.max_time_deviation(), tol)
    return StationarityReport(kind, q, table, st.residual, checks)
