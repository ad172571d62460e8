import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIG5_ORIENTATION, FIG5_SWAP, FIG5_THETA, SPHERE_ORIENTATION, SPHERE_SWAP, SPHERE_THETA
from sgrover.complex import generate_complex, orientation_search
from sgrover.errors import NumericError, RangeError
from sgrover.operators import build_discriminant
from sgrover.spectra import (check_lifting, cluster, eig, find_antisymmetric_switching, lift_spectrum,
                             multiset_equal, orientability_spectral, spec_equal_mod_zero,
                             spectral_symmetry, verify_switching_witness)


def test_cluster_groups_close_values():
    groups = cluster([0.5, 0.5 + 1e-12, -0.5, 0.5 - 1e-12, 0.0])
    assert [(round(float(v.real), 6), m) for v, m in groups] == [(-0.5, 1), (0.0, 1), (0.5, 3)]


def test_eig_preconditions():
    with pytest.raises(NumericError):
        eig(np.array([[0, 1], [0, 0]]), "hermitian")
    with pytest.raises(NumericError):
        eig(2 * np.eye(2), "unitary")
    with pytest.raises(RangeError):
        eig(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eig(np.eye(2), "normal")


def test_spectrum_report_json_is_deterministic(sphere):
    D = build_discriminant(sphere, 1, "up", "reduced")
    a, b = eig(D).to_json(), eig(D).to_json()
    assert a == b
    d = json.loads(a)
    assert d["basis"] == "oriented-reduced"
    assert [c["multiplicity"] for c in d["clusters"]] == [3, 3]


def test_sphere_and_fig5_spectra(sphere, fig5):
    red = eig(build_discriminant(sphere, 1, "up", "reduced"))
    assert multiset_equal(red, [-0.5] * 3 + [0.5] * 3)
    full = eig(build_discriminant(sphere, 1, "up", "full"))
    assert full.multiplicity(0.0) == 6 and full.multiplicity(0.5) == 3
    s3 = math.sqrt(3) / 3
    f = eig(build_discriminant(fig5, 2, "down", "reduced"))
    assert multiset_equal(f, [-2 / 3, -s3, 0, s3, 2 / 3])


@pytest.mark.parametrize("m", range(3, 9))
def test_cylinder_strip_spectrum(m):
    c = generate_complex("cylinder-strip", m=m)
    ev = eig(build_discriminant(c, 2, "down", "reduced"))
    expect = [-math.cos(2 * j * math.pi / (2 * m)) for j in range(2 * m)]
    assert multiset_equal(ev, expect)


@pytest.mark.parametrize("n", range(2, 7))
def test_simplex_up_spectra(n):
    c = generate_complex("simplex", n=n)
    for q in range(n - 1):
        ev = eig(build_discriminant(c, q, "up", "reduced"))
        expect = ([1 / (n - q - 1)] * math.comb(n - 1, q + 1) + [-1 / (q + 1)] * math.comb(n - 1, q))
        assert multiset_equal(ev, expect)


def test_multiset_equal_edge_cases():
    assert multiset_equal([], [])
    assert not multiset_equal([1.0], [1.0, 1.0])
    assert multiset_equal([1j, -1j], [-1j, 1j])
    assert not multiset_equal([0.0, 0.0], [0.0, 1e-6])


@given(st.lists(st.floats(-1, 1), min_size=1, max_size=20))
def test_lift_lies_on_circle_with_real_part_t(ts):
    lam = lift_spectrum(ts)
    assert np.allclose(np.abs(lam), 1)
    for z in lam:
        assert min(abs(z.real - t) for t in ts) < 1e-12


def test_lift_spectrum_endpoints_and_range():
    assert np.allclose(lift_spectrum([1.0, -1.0]), [1, -1])
    assert len(lift_spectrum([0.3])) == 2
    with pytest.raises(RangeError):
        lift_spectrum([1.5])


@pytest.mark.parametrize("name,kw", [("sphere", {}), ("fig5", {}), ("moebius-strip", {"m": 4}),
                                     ("simplex", {"n": 4})])
def test_unitary_spectrum_is_lift_of_discriminant(name, kw):
    c = generate_complex(name, **kw)
    for q in range(c.dim + 1):
        for mode in ("up", "down"):
            try:
                rep = check_lifting(c, q, mode)
            except RangeError:
                continue
            assert rep.passed, rep


def test_spec_equal_mod_zero():
    assert spec_equal_mod_zero([0, 0, 1, 2], [2, 1, 0])
    assert not spec_equal_mod_zero([0, 1], [0, 2])


def test_mod_zero_corollary_on_simplex():
    # (q+2) + (L-1)(q+2) D^down_{q+1}  vs  L + L(q+1) D^up_q, with L = n - q - 1
    for n in (4, 5, 6):
        c = generate_complex("simplex", n=n)
        for q in range(n - 2):
            L = n - q - 1
            up = build_discriminant(c, q, "up", "reduced").matrix
            down = build_discriminant(c, q + 1, "down", "reduced").matrix
            left = (q + 2) * np.eye(len(down)) + (L - 1) * (q + 2) * down
            right = L * np.eye(len(up)) + L * (q + 1) * up
            assert spec_equal_mod_zero(np.linalg.eigvalsh(left), np.linalg.eigvalsh(right))


def test_orientability_spectral_matches_search():
    cases = [generate_complex("sphere"), generate_complex("fig5")]
    cases += [generate_complex(k, m=m) for k in ("cylinder-strip", "moebius-strip") for m in (3, 4, 7)]
    for c in cases:
        rep = orientability_spectral(c)
        assert rep["coherent"] == (orientation_search(c, "coherent") is not None)
        assert rep["anticoherent"] == (orientation_search(c, "anticoherent") is not None)


def test_spectral_symmetry():
    assert spectral_symmetry([-1, 0, 1])
    assert not spectral_symmetry([-1, 0.5])


def test_antisymmetric_switching_on_strips():
    for kind in ("cylinder-strip", "moebius-strip"):
        for m in range(3, 9):
            c = generate_complex(kind, m=m)
            theta = find_antisymmetric_switching(c, 2)
            assert theta is not None
            D = build_discriminant(c, 2, "down", "reduced")
            assert spectral_symmetry(eig(D))


def test_no_antisymmetric_switching_on_fig5(fig5):
    assert find_antisymmetric_switching(fig5, 2) is None


def test_published_witnesses(sphere, fig5):
    D = build_discriminant(sphere, 1, "up", "reduced", [sphere.oriented(x) for x in SPHERE_ORIENTATION])
    assert verify_switching_witness(D, SPHERE_THETA, SPHERE_SWAP)
    D = build_discriminant(fig5, 2, "down", "reduced", [fig5.oriented(x) for x in FIG5_ORIENTATION])
    assert verify_switching_witness(D, FIG5_THETA, FIG5_SWAP)
    assert not verify_switching_witness(D, [1, 1, 1, 1, 1], FIG5_SWAP)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([-1.0, 1.0]), min_size=5, max_size=5))
def test_switching_preserves_fig5_spectrum(theta):
    fig5 = generate_complex("fig5")
    D = build_discriminant(fig5, 2, "down", "reduced")
    Dt = np.diag(theta) @ D.matrix @ np.diag(theta)
    assert multiset_equal(np.linalg.eigvalsh(D.matrix), np.linalg.eigvalsh(Dt))
