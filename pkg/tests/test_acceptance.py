"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""
import math

import numpy as np
import pytest

from conftest import (ACCEPTANCE, FIG5_D2_DOWN, FIG5_ORIENTATION, FIG5_SWAP, FIG5_THETA,
                      SPHERE_D1_UP, SPHERE_ORIENTATION, SPHERE_SWAP, SPHERE_THETA, named_suite)
from sgrover.bloch import band, closed_form_residual, finite_quotient_check
from sgrover.checks import (Tolerances, check_adjoint_factorization, check_invariance,
                            check_laplacian_relation, check_lifting_all, check_mod_zero,
                            check_no_minus_one, check_orientability, check_s_walk_relation,
                            check_switching_invariance)
from sgrover.complex import generate_complex, random_complex
from sgrover.operators import apply_switching, build_discriminant
from sgrover.spectra import find_antisymmetric_switching, multiset_equal, verify_switching_witness
from sgrover.walk import stationarity_report

TOL = Tolerances()
SUITE = named_suite()


def record(n, failures, summary):
    ok = not failures
    msg = summary if ok else f"{summary}; failures: {failures[:5]}"
    ACCEPTANCE[n] = (ok, msg)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {msg}")
    assert ok, msg


def test_criterion_1_golden_matrices():
    s, f = generate_complex("sphere"), generate_complex("fig5")
    Ds = build_discriminant(s, 1, "up", "reduced", [s.oriented(x) for x in SPHERE_ORIENTATION]).matrix
    Df = build_discriminant(f, 2, "down", "reduced", [f.oriented(x) for x in FIG5_ORIENTATION]).matrix
    rs, rf = np.abs(Ds - SPHERE_D1_UP).max(), np.abs(Df - FIG5_D2_DOWN).max()
    failures = [n for n, r in (("sphere", rs), ("fig5", rf)) if not r < 1e-12]
    record(1, failures, f"sphere residual {rs:.1e}, fig5 residual {rf:.1e} (tol 1e-12)")


def test_criterion_2_golden_spectra():
    fail = []
    s = generate_complex("sphere")
    if not multiset_equal(np.linalg.eigvalsh(build_discriminant(s, 1, "up", "reduced").matrix),
                          [-0.5] * 3 + [0.5] * 3):
        fail.append("sphere reduced")
    if not multiset_equal(np.linalg.eigvalsh(build_discriminant(s, 1, "up", "full").matrix),
                          [-0.5] * 3 + [0.5] * 3 + [0.0] * 6):
        fail.append("sphere full")
    s3 = math.sqrt(3) / 3
    f = generate_complex("fig5")
    if not multiset_equal(np.linalg.eigvalsh(build_discriminant(f, 2, "down", "reduced").matrix),
                          [-2 / 3, -s3, 0, s3, 2 / 3]):
        fail.append("fig5")
    for m in range(3, 9):
        c = generate_complex("cylinder-strip", m=m)
        ev = np.linalg.eigvalsh(build_discriminant(c, 2, "down", "reduced").matrix)
        if not multiset_equal(ev, [-math.cos(2 * j * math.pi / (2 * m)) for j in range(2 * m)]):
            fail.append(f"cylinder-strip({m})")
    count = 0
    for n in range(2, 7):
        c = generate_complex("simplex", n=n)
        for q in range(n - 1):
            ev = np.linalg.eigvalsh(build_discriminant(c, q, "up", "reduced").matrix)
            want = [1 / (n - q - 1)] * math.comb(n - 1, q + 1) + [-1 / (q + 1)] * math.comb(n - 1, q)
            count += 1
            if not multiset_equal(ev, want, TOL.cluster):
                fail.append(f"simplex({n}) q={q}")
    record(2, fail, f"sphere, fig5, 6 cylinder strips, {count} simplex spectra (tol 1e-8)")


IDENTITY_CHECKS = (check_invariance, check_adjoint_factorization, check_laplacian_relation,
                   check_s_walk_relation)


def test_criterion_3_operator_identities():
    fail, worst = [], 0.0
    complexes = SUITE + [generate_complex("cylinder3", N=3)]
    for c in complexes:
        for chk in IDENTITY_CHECKS:
            r = chk(c, TOL)
            worst = max(worst, r.residual)
            if not r.passed:
                fail.append((c.name, r.name, r.residual))
    record(3, fail, f"{len(complexes)} complexes x {len(IDENTITY_CHECKS)} identity families, "
                    f"worst residual {worst:.1e} (tol 1e-12)")


def test_criterion_4_orientability_equivalence():
    fail, compared = [], 0
    for c in SUITE:
        r = check_orientability(c, TOL)
        if r.skipped:
            continue
        compared += 1
        if not r.passed:
            fail.append((c.name, r.detail))
    record(4, fail, f"{compared} complexes compared, {len(fail)} mismatches "
                    "(single-top-simplex complexes have no down graph and are skipped)")


def test_criterion_5_no_minus_one_and_plus_minus_i():
    fail = []
    for c in SUITE:
        for chk in (check_no_minus_one, check_lifting_all):
            r = chk(c, TOL)
            if not r.passed:
                fail.append((c.name, r.name))
    record(5, fail, f"{len(SUITE)} complexes: min Spec(D^up_q) > -1 for q >= 1; +-i in every Spec(U)")


def test_criterion_6_switching():
    fail = []
    rng = np.random.default_rng(2024)
    for c in SUITE:
        if not check_switching_invariance(c, TOL, rng, trials=100).passed:
            fail.append(("lemma", c.name))
    for kind in ("cylinder-strip", "moebius-strip"):
        for m in range(3, 9):
            c = generate_complex(kind, m=m)
            theta = find_antisymmetric_switching(c, 2)
            D = build_discriminant(c, 2, "down", "reduced")
            if theta is None or not np.array_equal(apply_switching(D, theta).matrix, -D.matrix):
                fail.append(("constructive", c.name))
    s, f = generate_complex("sphere"), generate_complex("fig5")
    Ds = build_discriminant(s, 1, "up", "reduced", [s.oriented(x) for x in SPHERE_ORIENTATION])
    Df = build_discriminant(f, 2, "down", "reduced", [f.oriented(x) for x in FIG5_ORIENTATION])
    if not verify_switching_witness(Ds, SPHERE_THETA, SPHERE_SWAP):
        fail.append("sphere witness")
    if not verify_switching_witness(Df, FIG5_THETA, FIG5_SWAP):
        fail.append("fig5 witness")
    record(6, fail, f"100 random switchings on {len(SUITE)} complexes; exact D^theta = -D on 12 strips; "
                    "both published witnesses exact")


def test_criterion_7_bloch_bands():
    fail = []
    b2, b1 = band(2, 360), band(1, 360)
    if not (abs(b2.global_max - 1) < 1e-6 and abs(b2.global_min + 1) < 1e-6):
        fail.append("d2 extrema")
    if b1.flat_values() != [-0.2] or abs(b1.global_max - 0.7) >= 1e-6:
        fail.append("d1 flat band / maximum")
    r2, r1 = closed_form_residual(2, 360), closed_form_residual(1, 360)
    if not (r2 < 1e-10 and r1 < 1e-10):
        fail.append(("closed forms", r2, r1))
    for N in range(3, 13):
        for dq in (1, 2):
            if not finite_quotient_check(N, dq):
                fail.append(("quotient", N, dq))
    record(7, fail, f"d2 in [{b2.global_min:.6f}, {b2.global_max:.6f}], d1 flat {b1.flat_values()} "
                    f"max {b1.global_max:.6f}, closed-form residual {max(r1, r2):.1e}, quotients N=3..12")


def test_criterion_8_walk_stationarity():
    fail = []
    s = generate_complex("sphere")
    up = stationarity_report(s, 1, "up", n_max=20)
    h = stationarity_report(s, 1, "ordered", n_max=20)
    if not (up.passed and np.abs(up.table.values - 1 / 6).max() < 1e-10):
        fail.append("sphere P_n = 1/6")
    if not (h.passed and np.abs(h.table.values - 1 / 4).max() < 1e-10):
        fail.append("sphere Q_n = 1/4")
    p1 = stationarity_report(generate_complex("simplex", n=4), 3, "ordered-fpp1", n_max=10)
    if not p1.passed:
        fail.append(("eigenvalue-1 identity", p1.checks))
    dn = stationarity_report(generate_complex("fig5"), 2, "down", n_max=20)
    if not dn.passed:
        fail.append(("fig5 down", dn.checks))
    rows = max(r.table.max_row_sum_error() for r in (up, h, p1, dn))
    if rows >= 1e-10:
        fail.append(("row sums", rows))
    record(8, fail, f"sphere 1/6 and 1/4 for n <= 20, simplex(4) ordered identity n <= 10, "
                    f"fig5 down closed form; worst row-sum error {rows:.1e}")


def test_criterion_9_random_property_suite():
    fail = []
    rng = np.random.default_rng(9)
    checks = IDENTITY_CHECKS + (check_no_minus_one, check_lifting_all)
    for i in range(50):
        c = random_complex(rng, n_vertices=int(rng.integers(5, 8)), n_facets=int(rng.integers(3, 8)))
        for chk in checks:
            if not chk(c, TOL).passed:
                fail.append((i, chk.__name__, c.facets))
    mod0 = 0
    for n in range(3, 7):
        r = check_mod_zero(generate_complex("simplex", n=n), TOL)
        mod0 += len(r.detail.get("dimensions", []))
        if not r.passed or r.skipped:
            fail.append(("mod zero", n))
    record(9, fail, f"50 random 2-complexes x {len(checks)} checks; mod-zero spectra on {mod0} "
                    "regular simplex dimensions")
