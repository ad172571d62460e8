"""Bloch symbols of the down discriminants on the infinite triangulated cylinder.

The cylinder Z_3 x Z carries a free Z-action commuting with the reduced down
discriminants, so their spectra are the unions over z = e^{i theta} of the
eigenvalues of small matrix-valued symbols.  Quotienting by N Z gives the
finite complex ``cylinder3(N)``, whose spectra are the unions over N-th roots
of unity -- an independent finite-dimensional check.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .complex import generate_complex
from .errors import RangeError
from .operators import build_discriminant
from .spectra import multiset_equal

OMEGA = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=float)
CUBE_ROOTS = tuple(np.exp(2j * np.pi * k / 3) for k in range(3))

__all__ = [
    "OMEGA", "CUBE_ROOTS", "SymbolMatrix", "symbol_d2", "symbol_d1", "d2_closed_form",
    "d1_closed_form", "BandReport", "band", "closed_form_residual", "finite_quotient_check",
]


@dataclass(frozen=True, eq=False)
class SymbolMatrix:
    theta: float
    entries: np.ndarray
    mu: complex | None = None

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    @property
    def hermitian_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def symbol_d2(theta: float) -> SymbolMatrix:
    """6x6 symbol of the triangle down discriminant (rho block, sigma block)."""
    z = np.exp(1j * theta)
    I = np.eye(3)
    Z = np.zeros((3, 3))
    M = -np.block([[Z, OMEGA + (1 + 1 / z) * I],
                   [OMEGA @ OMEGA + (1 + z) * I, Z]]) / 3
    return SymbolMatrix(float(theta), M)


def _check_mu(mu) -> complex:
    mu = complex(mu)
    if abs(mu ** 3 - 1) > 1e-12 or abs(abs(mu) - 1) > 1e-12:
        raise RangeError(f"mu must be a cube root of unity, got {mu}")
    return mu


def symbol_d1(theta: float, mu) -> SymbolMatrix:
    """3x3 symbol of the edge down discriminant on the Z_3-isotypic part mu."""
    mu = _check_mu(mu)
    z = np.exp(1j * theta)
    zi, mi = 1 / z, 1 / mu
    M = np.array([
        [-(mu * z + mi * zi), (1 - zi) * (1 - mi * zi), (1 - mi) * (1 - mi * zi)],
        [(1 - z) * (1 - mu * z), -(z + zi), (1 - mi) * (1 - z)],
        [(1 - mu) * (1 - mu * z), (1 - mu) * (1 - zi), -(mu + mi)],
    ]) / 10
    return SymbolMatrix(float(theta), M, mu)


def d2_closed_form(theta: float) -> np.ndarray:
    """All six eigenvalues of symbol_d2, sorted.

    They are +-|w + 1 + e^{-i theta}|/3 over the cube roots w; the w = 1 branch
    is +-sqrt(5 + 4 cos theta)/3 and the other two are
    +-(sqrt 2/3) sqrt(1 + cos(theta +- pi/3)).
    """
    a = np.sqrt(5 + 4 * np.cos(theta)) / 3
    b = np.sqrt(2) / 3 * np.sqrt(max(0.0, 1 + np.cos(theta + np.pi / 3)))
    c = np.sqrt(2) / 3 * np.sqrt(max(0.0, 1 + np.cos(theta - np.pi / 3)))
    return np.sort([a, -a, b, -b, c, -c])


def d1_closed_form(theta: float, phi: float) -> np.ndarray:
    """Eigenvalues of symbol_d1(theta, e^{i phi}): -1/5 twice and one moving branch."""
    t = (2 * (1 - np.cos(theta + phi / 2) * np.cos(phi / 2)) - np.cos(phi)) / 5
    return np.sort([-0.2, -0.2, t])


@dataclass(frozen=True, eq=False)
class BandReport:
    dq: int
    thetas: np.ndarray
    curves: np.ndarray  # samples x curves, each row sorted within a symbol block
    names: tuple[str, ...]

    @property
    def global_min(self) -> float:
        return float(self.curves.min())

    @property
    def global_max(self) -> float:
        return float(self.curves.max())

    def curve_min(self) -> np.ndarray:
        return self.curves.min(axis=0)

    def curve_max(self) -> np.ndarray:
        return self.curves.max(axis=0)

    def flat_values(self, tol: float = 1e-10) -> list[float]:
        """Values of curves constant in theta (point spectrum of the cylinder)."""
        spread = self.curve_max() - self.curve_min()
        return sorted({round(float(v), 12) for v, s in zip(self.curve_min(), spread) if s < tol})

    def argmax(self) -> tuple[float, str]:
        i, j = np.unravel_index(np.argmax(self.curves), self.curves.shape)
        return float(self.thetas[i]), self.names[j]

    def to_dict(self) -> dict:
        return {
            "dq": self.dq, "samples": len(self.thetas),
            "global_min": self.global_min, "global_max": self.global_max,
            "flat_bands": self.flat_values(),
            "curves": [{"name": n, "min": float(lo), "max": float(hi)}
                       for n, lo, hi in zip(self.names, self.curve_min(), self.curve_max())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta", *self.names])
        for t, row in zip(self.thetas, self.curves):
            w.writerow([repr(float(t)), *(repr(float(x)) for x in row)])
        return buf.getvalue()


def _symbols(dq: int, theta: float) -> list[SymbolMatrix]:
    if dq == 2:
        return [symbol_d2(theta)]
    if dq == 1:
        return [symbol_d1(theta, mu) for mu in CUBE_ROOTS]
    raise RangeError(f"dq must be 1 or 2, got {dq}")


def band(dq: int, samples: int = 360) -> BandReport:
    """Eigenvalue curves at theta_k = 2 pi k / samples."""
    if dq not in (1, 2):
        raise RangeError(f"dq must be 1 or 2, got {dq}")
    if samples < 8:
        raise RangeError("need at least 8 samples")
    thetas = 2 * np.pi * np.arange(samples) / samples
    rows = [np.concatenate([s.eigenvalues() for s in _symbols(dq, t)]) for t in thetas]
    if dq == 2:
        names = tuple(f"band{i}" for i in range(6))
    else:
        names = tuple(f"phi{k}_band{i}" for k in range(3) for i in range(3))
    return BandReport(dq, thetas, np.array(rows), names)


def closed_form_residual(dq: int, samples: int = 360) -> float:
    """Largest gap between sampled eigenvalues and the closed-form families."""
    rep = band(dq, samples)
    worst = 0.0
    for t, row in zip(rep.thetas, rep.curves):
        if dq == 2:
            expect = d2_closed_form(t)
            got = np.sort(row)
        else:
            expect = np.concatenate([d1_closed_form(t, 2 * np.pi * k / 3) for k in range(3)])
            got = np.concatenate([np.sort(row[3 * k:3 * k + 3]) for k in range(3)])
        worst = max(worst, float(np.max(np.abs(got - expect))))
    return worst


def finite_quotient_check(N: int, dq: int = 2, tol: float = 1e-8) -> bool:
    """Reduced down spectrum of cylinder3(N) equals the symbol union over z^N = 1."""
    if N < 3:
        raise RangeError("the quotient needs N >= 3")
    c = generate_complex("cylinder3", N=N)
    ev = np.linalg.eigvalsh(build_discriminant(c, dq, "down", "reduced").matrix)
    union = np.concatenate([s.eigenvalues() for k in range(N)
                            for s in _symbols(dq, 2 * np.pi * k / N)])
    return multiset_equal(ev, union, tol)
