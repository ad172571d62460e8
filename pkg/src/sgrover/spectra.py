"""Eigenvalue multisets, spectral lifting to walk unitaries, orientability and
symmetry detection."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .complex import SimplicialComplex, is_bipartite, require_valid
from .errors import NumericError, RangeError
from .operators import (LinearMap, apply_switching, build_discriminant, build_edge_ops,
                        reduced_basis, swap_rows_cols)

CLUSTER_TOL = 1e-8

__all__ = [
    "SpectrumReport", "eig", "cluster", "multiset_equal", "lift_spectrum",
    "LiftingReport", "check_lifting", "spec_equal_mod_zero", "orientability_spectral",
    "spectral_symmetry", "find_antisymmetric_switching", "verify_switching_witness",
]


def _sort_key(z):
    return (round(float(np.real(z)), 9), round(float(np.imag(z)), 9))


def cluster(values, tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Group eigenvalues closer than ``tol`` to a running cluster mean."""
    centres: list[list] = []
    for v in sorted(np.asarray(values).ravel(), key=_sort_key):
        for c in centres:
            if abs(v - c[0]) < tol:
                c[0] = (c[0] * c[1] + v) / (c[1] + 1)
                c[1] += 1
                break
        else:
            centres.append([v, 1])
    return [(c[0], c[1]) for c in centres]


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    eigenvalues: np.ndarray
    values: tuple
    multiplicities: tuple[int, ...]
    tol: float = CLUSTER_TOL
    basis: str = ""
    kind: str = "hermitian"

    def __len__(self):
        return len(self.eigenvalues)

    def contains(self, x, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        return bool(np.any(np.abs(self.eigenvalues - x) < tol))

    def multiplicity(self, x, tol: float | None = None) -> int:
        tol = self.tol if tol is None else tol
        return int(np.sum(np.abs(self.eigenvalues - x) < tol))

    def to_dict(self) -> dict:
        def enc(z):
            if self.kind == "hermitian":
                return float(np.real(z))
            return [float(np.real(z)), float(np.imag(z))]
        return {
            "kind": self.kind,
            "basis": self.basis,
            "tolerance": self.tol,
            "dimension": len(self.eigenvalues),
            "eigenvalues": [enc(z) for z in self.eigenvalues],
            "clusters": [{"value": enc(v), "multiplicity": m}
                         for v, m in zip(self.values, self.multiplicities)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def eig(M, kind: str = "hermitian", tol: float = CLUSTER_TOL, basis: str | None = None,
        precondition_tol: float = 1e-10) -> SpectrumReport:
    """Full eigenvalue multiset of a Hermitian or unitary matrix."""
    if isinstance(M, LinearMap):
        basis = basis or M.rows.space
        M = M.matrix
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise RangeError(f"eigensolve needs a square matrix, got shape {M.shape}")
    if kind == "hermitian":
        res = np.max(np.abs(M - M.conj().T), initial=0.0)
        if res >= precondition_tol:
            raise NumericError(f"matrix is not Hermitian (residual {res:.2e})")
        ev = np.linalg.eigvalsh(M).astype(float)
    elif kind == "unitary":
        res = np.max(np.abs(M.conj().T @ M - np.eye(M.shape[0])), initial=0.0)
        if res >= precondition_tol:
            raise NumericError(f"matrix is not unitary (residual {res:.2e})")
        ev = np.array(sorted(np.linalg.eigvals(M), key=_sort_key))
    else:
        raise ValueError(f"kind must be 'hermitian' or 'unitary', got {kind!r}")
    groups = cluster(ev, tol)
    return SpectrumReport(ev, tuple(v for v, _ in groups), tuple(m for _, m in groups),
                          tol, basis or "", kind)


def _as_values(x) -> np.ndarray:
    if isinstance(x, SpectrumReport):
        return x.eigenvalues
    return np.asarray(x).ravel()


def multiset_equal(a, b, tol: float = CLUSTER_TOL) -> bool:
    """Equal as multisets up to a perfect matching with all distances < tol."""
    a, b = _as_values(a), _as_values(b)
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return bool(np.max(cost[r, c]) < tol)


def lift_spectrum(ts, tol: float = 1e-10) -> np.ndarray:
    """t -> t +- i sqrt(1 - t^2); t = +-1 maps to the single value +-1."""
    out = []
    for t in _as_values(ts):
        t = float(np.real(t))
        if abs(t) > 1 + tol:
            raise RangeError(f"|t| = {abs(t)} exceeds 1")
        t = min(1.0, max(-1.0, t))
        if abs(abs(t) - 1) <= tol:
            out.append(complex(np.sign(t), 0.0))
            continue
        s = np.sqrt(1 - t * t)
        out.extend([complex(t, s), complex(t, -s)])
    return np.array(out)


@dataclass(frozen=True)
class LiftingReport:
    q: int
    mode: str
    lifts_found: bool
    real_parts_in_discriminant: bool
    residual_plus_minus_one: bool
    plus_minus_i: bool
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.lifts_found and self.real_parts_in_discriminant
                and self.residual_plus_minus_one and self.plus_minus_i)


def check_lifting(c: SimplicialComplex, q: int, mode: str, tol: float = CLUSTER_TOL,
                  allow_invalid: bool = False) -> LiftingReport:
    """Compare Spec(U) with the lift of Spec(D) in the full basis."""
    ops = build_edge_ops(c, q, mode, allow_invalid)
    D = eig(build_discriminant(c, q, mode, "full", allow_invalid=allow_invalid), "hermitian", tol)
    U = eig(ops.U, "unitary", tol)
    u = U.eigenvalues
    interior = [(t, m) for t, m in zip(D.values, D.multiplicities) if abs(t) < 1 - tol]
    lifts_ok = True
    missing = []
    for t, m in interior:
        t = float(np.real(t))
        s = np.sqrt(1 - t * t)
        for lam in (complex(t, s), complex(t, -s)):
            got = int(np.sum(np.abs(u - lam) < tol))
            if got != m:
                lifts_ok = False
                missing.append((t, m, got))
    nonreal = u[np.abs(u.imag) > tol]
    d = D.eigenvalues
    real_ok = all(np.min(np.abs(d - lam.real)) < tol for lam in nonreal)
    n_interior = sum(m for _, m in interior)
    at_pm1 = int(np.sum(np.minimum(np.abs(u - 1), np.abs(u + 1)) < tol))
    resid_ok = at_pm1 == len(u) - 2 * n_interior
    pm_i = U.contains(1j) and U.contains(-1j)
    return LiftingReport(q, mode, lifts_ok, real_ok, resid_ok, pm_i,
                         {"dim_U": len(u), "dim_D": len(d), "interior": n_interior,
                          "at_plus_minus_one": at_pm1, "mismatches": missing})


def spec_equal_mod_zero(A, B, tol: float = CLUSTER_TOL) -> bool:
    """Multisets equal after discarding every value within ``tol`` of zero."""
    a, b = _as_values(A), _as_values(B)
    return multiset_equal(a[np.abs(a) >= tol], b[np.abs(b) >= tol], tol)


def orientability_spectral(c: SimplicialComplex, tol: float = CLUSTER_TOL,
                           allow_invalid: bool = False) -> dict:
    """Detect +-1 in the spectrum of the top-dimensional down discriminant."""
    require_valid(c, allow_invalid)
    n = c.dim
    if n < 1:
        raise RangeError("the down discriminant needs dim K >= 1")
    D = eig(build_discriminant(c, n, "down", "reduced", allow_invalid=allow_invalid), "hermitian", tol)
    return {
        "coherent": D.contains(-1.0),
        "anticoherent": D.contains(1.0),
        "multiplicity_minus_one": D.multiplicity(-1.0),
        "multiplicity_plus_one": D.multiplicity(1.0),
    }


def spectral_symmetry(S, tol: float = CLUSTER_TOL) -> bool:
    v = np.real(_as_values(S))
    return multiset_equal(v, -v, tol)


def find_antisymmetric_switching(c: SimplicialComplex, q: int, orientation=None,
                                 allow_invalid: bool = False) -> np.ndarray | None:
    """theta = +1/-1 on the two classes of a bipartite reduced down graph, else None.

    The returned vector is checked to satisfy D^theta = -D exactly.
    """
    colour = is_bipartite(c, q, "down", reduced=True)
    if colour is None:
        return None
    D = build_discriminant(c, q, "down", "reduced", orientation, allow_invalid)
    theta = np.array([1.0 if colour[lab.vertices] == 0 else -1.0 for lab in D.rows.labels])
    if not np.array_equal(apply_switching(D, theta).matrix, -D.matrix):
        raise NumericError("bipartition switching did not negate the discriminant")
    return theta


def verify_switching_witness(D: LinearMap, theta, swaps) -> bool:
    """True when swapping the given row/column pairs of D^theta yields -D exactly."""
    Dt = apply_switching(D, theta).matrix
    return bool(np.array_equal(swap_rows_cols(Dt, swaps), -D.matrix))
