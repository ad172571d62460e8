"""Named numerical identity suites run by ``sgrover verify``.

Each check sweeps every dimension/mode where its objects are defined and
returns one CheckResult with the worst residual found.  Combinations that
are undefined on a given complex (no edges, no cofacets) are skipped.
"""
from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .complex import SimplicialComplex, is_bipartite, orientation_search, require_valid
from .errors import RangeError
from .operators import (antisym_projector, apply_switching, build_cochain_ops,
                        build_discriminant, build_g_walk, embedding, ordered_embedding,
                        oriented_basis, reduced_basis)
from .spectra import check_lifting, multiset_equal, orientability_spectral, spec_equal_mod_zero

__all__ = ["Tolerances", "CheckResult", "SuiteReport", "CHECKS", "run_suite", "thread_cap",
           "defined_modes", "regular_cofacet_count"]


@dataclass(frozen=True)
class Tolerances:
    cluster: float = 1e-8
    identity: float = 1e-10
    construction: float = 1e-12


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float = 0.0
    detail: dict = field(default_factory=dict)
    skipped: bool = False

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "skipped": self.skipped,
                "residual": float(self.residual), "detail": self.detail}


@dataclass
class SuiteReport:
    complex_name: str
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {"complex": self.complex_name, "passed": self.passed,
                "checks": [r.to_dict() for r in self.results]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def defined_modes(c: SimplicialComplex):
    """(q, mode) pairs whose neighbour graph has at least one edge."""
    out = []
    for q in range(c.dim + 1):
        for mode in ("up", "down"):
            try:
                build_discriminant(c, q, mode, "reduced", allow_invalid=True)
            except RangeError:
                continue
            out.append((q, mode))
    return out


def _defined_with_degrees(c, q, mode) -> bool:
    """Walk operators also need every q-simplex to have a neighbour."""
    deg = c.deg_up if mode == "up" else c.deg_down
    return all(deg(s) > 0 for s in c.simplices(q))


def regular_cofacet_count(c: SimplicialComplex, q: int) -> int | None:
    counts = {c.deg_up(s) for s in c.simplices(q)}
    return counts.pop() if len(counts) == 1 else None


def _result(name, worst, tol, detail=None, skipped=False) -> CheckResult:
    return CheckResult(name, bool(worst < tol), float(worst), detail or {}, skipped)


# -- individual checks ---------------------------------------------------------------

def check_invariance(c, tol: Tolerances, rng=None) -> CheckResult:
    """P D P = D and D vanishes on symmetric functions (full basis)."""
    worst = 0.0
    for q, mode in defined_modes(c):
        D = build_discriminant(c, q, mode, "full", allow_invalid=True).matrix
        full = oriented_basis(c, q)
        P = antisym_projector(full)
        Eplus = np.abs(embedding(full, reduced_basis(c, q)))
        worst = max(worst, np.abs(P @ D @ P - D).max(), np.abs(D @ Eplus).max())
    return _result("antisymmetric_invariance", worst, tol.construction)


def check_adjoint_factorization(c, tol: Tolerances, rng=None) -> CheckResult:
    """D^up = (a* a - I)/(q+1) and D^down = b b* - (q+1) A_down^2."""
    worst = 0.0
    for q, mode in defined_modes(c):
        ops = build_cochain_ops(c, q, allow_invalid=True)
        D = build_discriminant(c, q, mode, "reduced", allow_invalid=True).matrix
        n = len(ops.basis)
        if mode == "up":
            R = (ops.a.T @ ops.a - np.eye(n)) / (q + 1)
        else:
            if ops.b is None:
                continue
            R = ops.b @ ops.b.T - (q + 1) * ops.A_down @ ops.A_down
        worst = max(worst, np.abs(D - R).max())
    return _result("adjoint_factorization", worst, tol.construction)


def check_laplacian_relation(c, tol: Tolerances, rng=None) -> CheckResult:
    """D^up = (A L^up A - I)/(q+1) and D^down = A (L^down - (q+1) I) A."""
    worst = 0.0
    for q, mode in defined_modes(c):
        ops = build_cochain_ops(c, q, allow_invalid=True)
        D = build_discriminant(c, q, mode, "reduced", allow_invalid=True).matrix
        n = len(ops.basis)
        if mode == "up":
            A = ops.A_up
            R = (A @ ops.L_up @ A - np.eye(n)) / (q + 1)
        else:
            if ops.A_down is None:
                continue
            A = ops.A_down
            R = A @ (ops.L_down - (q + 1) * np.eye(n)) @ A
        worst = max(worst, np.abs(D - R).max())
    return _result("laplacian_relation", worst, tol.construction)


def check_mod_zero(c, tol: Tolerances, rng=None) -> CheckResult:
    """(q+2) + (L-1)(q+2) D^down_{q+1} and L + L(q+1) D^up_q agree off zero,
    wherever every q-simplex has exactly L cofacets."""
    worst_ok, tried = True, []
    for q in range(c.dim):
        L = regular_cofacet_count(c, q)
        if L is None:
            continue
        up = build_discriminant(c, q, "up", "reduced", allow_invalid=True).matrix
        right = L * np.eye(len(up)) + L * (q + 1) * up
        m = c.count(q + 1)
        if L > 1:
            down = build_discriminant(c, q + 1, "down", "reduced", allow_invalid=True).matrix
            left = (q + 2) * np.eye(m) + (L - 1) * (q + 2) * down
        else:
            left = (q + 2) * np.eye(m)
        ok = spec_equal_mod_zero(np.linalg.eigvalsh(left), np.linalg.eigvalsh(right), tol.cluster)
        worst_ok &= ok
        tried.append({"q": q, "L": L, "passed": ok})
    if not tried:
        return CheckResult("spectrum_mod_zero", True, 0.0, {"reason": "no regular dimension"}, True)
    return CheckResult("spectrum_mod_zero", worst_ok, 0.0, {"dimensions": tried})


def check_s_walk_relation(c, tol: Tolerances, rng=None) -> CheckResult:
    """(I - D(G_q)) = 2q/(q+1) (I - D^up_{q-1}) on antisymmetric functions, and
    D(G_q) = -I on symmetric ones (q >= 2)."""
    worst = 0.0
    for q in range(1, c.dim + 1):
        if not _defined_with_degrees(c, q - 1, "up"):
            continue
        walk = build_g_walk(c, q, allow_invalid=True)
        DG = walk.discriminant().matrix
        red = reduced_basis(c, q - 1)
        ordered = walk.alpha.cols
        R = ordered_embedding(ordered, red)
        Dup = build_discriminant(c, q - 1, "up", "reduced", allow_invalid=True).matrix
        n = len(DG)
        lhs = (np.eye(n) - DG) @ R
        rhs = 2 * q / (q + 1) * R @ (np.eye(len(red)) - Dup)
        worst = max(worst, np.abs(lhs - rhs).max())
        if q >= 2:
            Rs = ordered_embedding(ordered, red, symmetric=True)
            worst = max(worst, np.abs(DG @ Rs + Rs).max())
    return _result("s_walk_relation", worst, tol.construction)


def check_no_minus_one(c, tol: Tolerances, rng=None) -> CheckResult:
    """-1 is never an eigenvalue of D^up_q for q >= 1."""
    low = np.inf
    for q in range(1, c.dim):
        try:
            D = build_discriminant(c, q, "up", "reduced", allow_invalid=True)
        except RangeError:
            continue
        low = min(low, float(np.linalg.eigvalsh(D.matrix).min()))
    if low == np.inf:
        return CheckResult("up_no_minus_one", True, 0.0, {"reason": "no q >= 1 up graph"}, True)
    return CheckResult("up_no_minus_one", bool(low > -1 + tol.cluster), low + 1, {"min_eigenvalue": low})


def check_lifting_all(c, tol: Tolerances, rng=None) -> CheckResult:
    """Spec(U) is the lift of Spec(D), with +-i always present."""
    detail = []
    ok = True
    for q, mode in defined_modes(c):
        if not _defined_with_degrees(c, q, mode):
            continue
        rep = check_lifting(c, q, mode, tol.cluster, allow_invalid=True)
        ok &= rep.passed
        detail.append({"q": q, "mode": mode, "passed": rep.passed, "plus_minus_i": rep.plus_minus_i})
    return CheckResult("spectral_lifting_plus_minus_i", ok, 0.0, {"cases": detail})


def check_orientability(c, tol: Tolerances, rng=None) -> CheckResult:
    """+-1 in Spec(D^down_top) iff a coherent/anticoherent orientation exists."""
    n = c.dim
    if n < 1 or c.count(n) < 2:
        return CheckResult("orientability_spectral", True, 0.0,
                           {"reason": "top dimension has no down neighbours"}, True)
    spec = orientability_spectral(c, tol.cluster, allow_invalid=True)
    comb = {t: orientation_search(c, t, allow_invalid=True) is not None
            for t in ("coherent", "anticoherent")}
    ok = spec["coherent"] == comb["coherent"] and spec["anticoherent"] == comb["anticoherent"]
    return CheckResult("orientability_spectral", ok, 0.0,
                       {"spectral": {k: spec[k] for k in ("coherent", "anticoherent")},
                        "combinatorial": comb})


def check_switching_invariance(c, tol: Tolerances, rng=None, trials: int = 100) -> CheckResult:
    """Random +-1 switchings leave the spectrum unchanged."""
    rng = rng if rng is not None else np.random.default_rng(0)
    ok = True
    for q, mode in defined_modes(c):
        D = build_discriminant(c, q, mode, "reduced", allow_invalid=True)
        base = np.linalg.eigvalsh(D.matrix)
        for _ in range(trials):
            theta = rng.choice([-1.0, 1.0], size=len(base))
            ok &= multiset_equal(base, np.linalg.eigvalsh(apply_switching(D, theta).matrix), tol.cluster)
    return CheckResult("switching_invariance", bool(ok), 0.0, {"trials": trials})


def _brute_force_antisymmetric(D: np.ndarray) -> bool:
    """Is there theta with theta_i theta_j = -1 on every nonzero off-diagonal entry?"""
    n = len(D)
    I, J = np.nonzero(np.triu(D != 0, 1))
    if np.any(np.diag(D) != 0):
        return False
    signs = np.array(list(itertools.product((1, -1), repeat=n - 1)), dtype=int)
    T = np.hstack([np.ones((len(signs), 1), dtype=int), signs])
    return bool(np.any(np.all(T[:, I] * T[:, J] == -1, axis=1)))


def check_bipartite_switching(c, tol: Tolerances, rng=None, brute_max: int = 16) -> CheckResult:
    """Down graph bipartite iff some switching negates D^down exactly."""
    ok = True
    cases = []
    for q in range(1, c.dim + 1):
        try:
            D = build_discriminant(c, q, "down", "reduced", allow_invalid=True)
        except RangeError:
            continue
        colour = is_bipartite(c, q, "down")
        if colour is not None:
            theta = np.array([1.0 if colour[l.vertices] == 0 else -1.0 for l in D.rows.labels])
            good = bool(np.array_equal(apply_switching(D, theta).matrix, -D.matrix))
            method = "colouring"
        elif len(D.rows) <= brute_max:
            good = not _brute_force_antisymmetric(D.matrix)
            method = "exhaustive"
        else:
            good, method = True, "not checked (too large)"
        ok &= good
        cases.append({"q": q, "bipartite": colour is not None, "passed": good, "method": method})
    return CheckResult("bipartite_switching", ok, 0.0, {"cases": cases})


CHECKS = (
    check_invariance,
    check_adjoint_factorization,
    check_mod_zero,
    check_laplacian_relation,
    check_s_walk_relation,
    check_no_minus_one,
    check_lifting_all,
    check_orientability,
    check_switching_invariance,
    check_bipartite_switching,
)


def thread_cap() -> int:
    """Worker count from SGROVER_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("SGROVER_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(c: SimplicialComplex, seed: int = 0, tol: Tolerances | None = None,
              allow_invalid: bool = False, threads: int | None = None) -> SuiteReport:
    """Run every check; results come back in a fixed order whatever the thread count."""
    require_valid(c, allow_invalid)
    tol = tol or Tolerances()
    threads = threads or thread_cap()
    # each check gets its own generator so the outcome does not depend on scheduling
    rngs = [np.random.default_rng([seed, i]) for i in range(len(CHECKS))]
    jobs = list(zip(CHECKS, rngs))
    if threads == 1:
        results = [fn(c, tol, rng) for fn, rng in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: job[0](c, tol, job[1]), jobs))
    return SuiteReport(c.name or "complex", results)
