import json
import math

import numpy as np
import pytest

from conftest import FIG5_D2_DOWN, FIG5_ORIENTATION, SPHERE_D1_UP, SPHERE_ORIENTATION, named_suite
from sgrover.complex import OrientedSimplex, generate_complex, random_complex
from sgrover.errors import ComplexError, RangeError
from sgrover.operators import (antisym_projector, apply_switching, build_alpha, build_cochain_ops,
                               build_discriminant, build_edge_ops, build_g_walk, coboundary,
                               edge_basis, embedding, f_sigma, ordered_basis, ordered_embedding,
                               oriented_basis, reduced_basis, swap_rows_cols, to_full, to_reduced)


def test_sphere_golden_table(sphere):
    orient = [sphere.oriented(x) for x in SPHERE_ORIENTATION]
    D = build_discriminant(sphere, 1, "up", "reduced", orient).matrix
    assert np.max(np.abs(D - SPHERE_D1_UP)) < 1e-12


def test_fig5_golden_table(fig5):
    orient = [fig5.oriented(x) for x in FIG5_ORIENTATION]
    D = build_discriminant(fig5, 2, "down", "reduced", orient).matrix
    assert np.max(np.abs(D - FIG5_D2_DOWN)) < 1e-12


def test_orientation_must_cover_every_simplex(sphere):
    with pytest.raises(ComplexError):
        reduced_basis(sphere, 1, [sphere.oriented("01")])


@pytest.mark.parametrize("name,kw,q,mode", [
    ("sphere", {}, 1, "up"), ("sphere", {}, 1, "down"), ("sphere", {}, 0, "up"),
    ("fig5", {}, 2, "down"), ("moebius-strip", {"m": 4}, 1, "up"),
    ("simplex", {"n": 4}, 2, "down"),
])
def test_walk_factorisation(name, kw, q, mode):
    c = generate_complex(name, **kw)
    ops = build_edge_ops(c, q, mode)
    n = len(ops.U.rows)
    assert ops.U.unitary_residual() < 1e-12
    assert np.max(np.abs(ops.shift.matrix @ ops.shift.matrix - np.eye(n))) < 1e-12
    assert np.max(np.abs(ops.coin.matrix @ ops.coin.matrix - np.eye(n))) < 1e-12
    # d is a co-isometry: d d* = I
    dd = ops.d.matrix @ ops.d_adj.matrix
    assert np.max(np.abs(dd - np.eye(len(dd)))) < 1e-12
    # the entrywise discriminant equals d S d*
    D = build_discriminant(c, q, mode, "full").matrix
    assert np.max(np.abs(ops.discriminant().matrix - D)) < 1e-12


def test_edge_set_size(sphere):
    # each edge has 4 up neighbours, each ordered pair appears in 4 orientation combinations
    assert len(edge_basis(sphere, 1, "up")) == 6 * 4 * 4


def test_reduced_discriminant_is_restriction():
    for c in named_suite()[:6]:
        for q in range(1, c.dim + 1):
            full, red = oriented_basis(c, q), reduced_basis(c, q)
            E = embedding(full, red)
            Df = build_discriminant(c, q, "down", "full").matrix
            Dr = build_discriminant(c, q, "down", "reduced").matrix
            assert np.max(np.abs(Df @ E - E @ Dr)) < 1e-12


def test_full_to_reduced_round_trip(sphere):
    full, red = oriented_basis(sphere, 1), reduced_basis(sphere, 1)
    x = np.arange(1.0, 7.0)
    f = to_full(x, full, red)
    assert np.allclose(to_reduced(f, full, red), x)
    P = antisym_projector(full)
    assert np.allclose(P @ f, f)
    assert np.allclose(P @ P, P)


def test_coboundary_squares_to_zero():
    c = generate_complex("simplex", n=5)
    for q in range(3):
        assert not np.any(coboundary(c, q + 1) @ coboundary(c, q))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_simplex_hodge_laplacian_is_scalar(n):
    # the full simplex on n vertices has L_q = n I for every 0 < q < n-1
    c = generate_complex("simplex", n=n)
    for q in range(1, n - 1):
        L = build_cochain_ops(c, q).L
        assert np.allclose(L, n * np.eye(len(L)))


def test_cochain_ops_edge_cases():
    c = generate_complex("simplex", n=3)
    top = build_cochain_ops(c, 2)
    assert top.a is None and top.delta is None
    assert top.A_down is None  # the single triangle has no down neighbours
    bottom = build_cochain_ops(c, 0)
    assert bottom.b is None and bottom.delta_prev is None
    with pytest.raises(RangeError):
        build_cochain_ops(c, 3)


def test_alpha_is_isometry_and_g_walk_unitary(sphere):
    for q in (1, 2):
        a = build_alpha(sphere, q).matrix
        assert np.allclose(a.T @ a, np.eye(a.shape[1]))
        g = build_g_walk(sphere, q)
        assert g.G.unitary_residual() < 1e-12
        P = g.proj.matrix
        assert np.allclose(P @ P, P) and np.allclose(P, P.T)
        assert g.discriminant().hermitian_residual() < 1e-12
    with pytest.raises(RangeError):
        build_alpha(sphere, 0)


def test_ordered_embedding_scaling(sphere):
    for q in range(3):
        ob, rb = ordered_basis(sphere, q), reduced_basis(sphere, q)
        for sym in (False, True):
            R = ordered_embedding(ob, rb, sym)
            assert np.allclose(R.T @ R, math.factorial(q + 1) * np.eye(len(rb)))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_f_sigma_eigenvector(n):
    # D_q^up f_sigma = f_sigma / (n - q - 1)
    c = generate_complex("simplex", n=n)
    for q in range(n - 2):
        D = build_discriminant(c, q, "up", "reduced").matrix
        for s in c.simplices(q + 1)[:3]:
            f = f_sigma(c, OrientedSimplex(s))
            assert np.allclose(D @ f, f / (n - q - 1))


def test_f_sigma_errors(sphere):
    with pytest.raises(ComplexError):
        f_sigma(sphere, OrientedSimplex((0, 1, 2, 3)))
    with pytest.raises(RangeError):
        f_sigma(sphere, OrientedSimplex((0,)))


def test_switching_and_swaps(sphere):
    D = build_discriminant(sphere, 1, "up", "reduced")
    theta = np.array([1, -1, 1, 1, -1, 1.0])
    Dt = apply_switching(D, theta).matrix
    assert np.allclose(Dt, np.diag(theta) @ D.matrix @ np.diag(theta))
    with pytest.raises(ValueError):
        apply_switching(D, [1, 0, 1, 1, 1, 1])
    M = np.arange(9.0).reshape(3, 3)
    S = swap_rows_cols(M, [(0, 2)])
    assert S[0, 0] == M[2, 2] and S[0, 1] == M[2, 1]


def test_linear_map_serialisation(sphere):
    D = build_discriminant(sphere, 1, "up", "reduced")
    d = json.loads(D.to_json())
    assert np.allclose(np.array(d["real"]), D.matrix.real)
    assert d["row_labels"][0] == "<0 1>"
    lines = D.to_csv().splitlines()
    assert lines[0].startswith("row,<0 1>.re,<0 1>.im")
    assert len(lines) == 7
    with pytest.raises(ValueError):
        D.matrix[0, 0] = 1


def test_random_complexes_discriminants_bounded():
    rng = np.random.default_rng(11)
    for _ in range(10):
        c = random_complex(rng)
        for q, mode in ((0, "up"), (1, "up"), (1, "down"), (2, "down")):
            ev = np.linalg.eigvalsh(build_discriminant(c, q, mode, "full").matrix)
            assert ev.min() >= -1 - 1e-8 and ev.max() <= 1 + 1e-8
