"""Finite simplicial complexes, oriented simplices and their neighbour graphs.

Vertices are dense integer ids assigned by first appearance; the original
tokens are kept in ``SimplicialComplex.labels``.  An oriented simplex is
stored canonically as its sorted vertex tuple plus a parity bit, the sign
of the permutation that sorts a representative ordering.  0-simplices carry
a formal parity bit too, so every dimension has the two-element orientation
action and the formulas below hold uniformly down to q = 0.
"""
from __future__ import annotations

import itertools
import unicodedata
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ComplexError, RangeError

__all__ = [
    "OrientedSimplex",
    "SimplicialComplex",
    "OrientationAssignment",
    "NeighborGraph",
    "ValidationReport",
    "permutation_parity",
    "parse_complex",
    "read_complex",
    "generate_complex",
    "random_complex",
    "validate",
    "require_valid",
    "sgn",
    "common_cofacet",
    "common_face",
    "degree",
    "eta",
    "neighbor_graph",
    "orientation_search",
    "is_bipartite",
]

GENERATORS = ("simplex", "skeleton", "sphere", "fig5", "cylinder-strip",
              "moebius-strip", "cylinder3")

FIG5_FACETS = "0 1 2\n2 1 4\n1 3 4\n0 1 3\n2 1 3\n"


def permutation_parity(seq: Sequence) -> int:
    """Parity (0 even, 1 odd) of the permutation sorting ``seq``."""
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inversions += 1
    return inversions & 1


@dataclass(frozen=True, order=True)
class OrientedSimplex:
    vertices: tuple[int, ...]
    parity: int = 0

    def __post_init__(self):
        v = tuple(int(x) for x in self.vertices)
        object.__setattr__(self, "vertices", v)
        if any(a >= b for a, b in zip(v, v[1:])):
            raise ComplexError(f"vertices must be strictly increasing: {v}")
        if self.parity not in (0, 1):
            raise ComplexError(f"parity must be 0 or 1, got {self.parity}")

    @classmethod
    def from_ordered(cls, seq: Sequence[int]) -> "OrientedSimplex":
        seq = tuple(int(x) for x in seq)
        if len(set(seq)) != len(seq):
            raise ComplexError(f"repeated vertex in {seq}")
        return cls(tuple(sorted(seq)), permutation_parity(seq))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def bar(self) -> "OrientedSimplex":
        return OrientedSimplex(self.vertices, 1 - self.parity)

    def ordering(self) -> tuple[int, ...]:
        """One vertex ordering in this class (undefined for odd 0-simplices)."""
        if self.parity == 0:
            return self.vertices
        if len(self.vertices) < 2:
            raise ComplexError("an odd 0-simplex has no vertex ordering")
        v = self.vertices
        return (v[1], v[0]) + v[2:]

    def __str__(self):
        body = "<" + " ".join(map(str, self.vertices)) + ">"
        return ("-" if self.parity else "") + body


def _key(s) -> tuple[int, ...]:
    if isinstance(s, OrientedSimplex):
        return s.vertices
    return tuple(sorted(int(x) for x in s))


def _faces(s: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [s[:j] + s[j + 1:] for j in range(len(s))]


class SimplicialComplex:
    """Downward closure of a list of facets over vertex ids ``0..|V|-1``.

    Instances are treated as immutable; all derived tables are cached.
    """

    def __init__(self, facets: Iterable[Iterable[int]], labels: Sequence[str] | None = None,
                 name: str | None = None):
        closure: dict[int, set[tuple[int, ...]]] = {}
        nverts = 0
        for facet in facets:
            f = tuple(int(x) for x in facet)
            if not f:
                raise ComplexError("empty facet")
            if len(set(f)) != len(f):
                raise ComplexError(f"duplicate vertex within facet {f}")
            if min(f) < 0:
                raise ComplexError("vertex ids must be non-negative")
            f = tuple(sorted(f))
            nverts = max(nverts, f[-1] + 1)
            for r in range(1, len(f) + 1):
                closure.setdefault(r - 1, set()).update(itertools.combinations(f, r))
        if not closure:
            raise ComplexError("complex has no facets")
        if labels is None:
            labels = [str(i) for i in range(nverts)]
        if len(labels) < nverts or len(set(labels)) != len(labels):
            raise ComplexError("vertex labels must be unique and cover every id")
        present = {s[0] for s in closure[0]}
        if present != set(range(len(labels))):
            raise ComplexError("vertex ids are not contiguous")
        self.labels: tuple[str, ...] = tuple(labels)
        self.name = name
        self._simplices = {q: tuple(sorted(ss)) for q, ss in closure.items()}
        self._index = {q: {s: i for i, s in enumerate(ss)} for q, ss in self._simplices.items()}

    @classmethod
    def from_labeled_facets(cls, facets: Iterable[Sequence[str]], name: str | None = None):
        """Build from facets given as label sequences; ids follow first appearance."""
        ids: dict[str, int] = {}
        out = []
        for facet in facets:
            row = []
            for tok in facet:
                if tok not in ids:
                    ids[tok] = len(ids)
                row.append(ids[tok])
            out.append(row)
        return cls(out, labels=list(ids), name=name)

    # -- basic queries -------------------------------------------------
    @property
    def dim(self) -> int:
        return max(self._simplices)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def simplices(self, q: int) -> tuple[tuple[int, ...], ...]:
        return self._simplices.get(q, ())

    def count(self, q: int) -> int:
        return len(self.simplices(q))

    def index(self, s) -> int:
        k = _key(s)
        try:
            return self._index[len(k) - 1][k]
        except KeyError:
            raise ComplexError(f"{k} is not a simplex of the complex") from None

    def __contains__(self, s) -> bool:
        k = _key(s)
        return k in self._index.get(len(k) - 1, {})

    def vertex_id(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise ComplexError(f"unknown vertex label {label!r}") from None

    def oriented(self, labels: Sequence) -> OrientedSimplex:
        """Oriented simplex spanned by vertex labels, in the given order."""
        s = OrientedSimplex.from_ordered([self.vertex_id(str(x)) for x in labels])
        if s not in self:
            raise ComplexError(f"{labels} is not a simplex of the complex")
        return s

    def label_of(self, s) -> str:
        if isinstance(s, OrientedSimplex):
            body = "<" + " ".join(self.labels[v] for v in s.vertices) + ">"
            return ("-" if s.parity else "") + body
        return "{" + " ".join(self.labels[v] for v in _key(s)) + "}"

    @cached_property
    def facets(self) -> tuple[tuple[int, ...], ...]:
        """Maximal simplices, ordered by dimension then lexicographically."""
        out = []
        for q in sorted(self._simplices):
            has_coface = {f for s in self.simplices(q + 1) for f in _faces(s)}
            out.extend(s for s in self.simplices(q) if s not in has_coface)
        return tuple(out)

    @cached_property
    def _cofacets(self) -> dict[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        table: dict[tuple[int, ...], list] = {s: [] for ss in self._simplices.values() for s in ss}
        for q in sorted(self._simplices):
            if q == 0:
                continue
            for s in self.simplices(q):
                for f in _faces(s):
                    table[f].append(s)
        return {k: tuple(v) for k, v in table.items()}

    def cofacets(self, s) -> tuple[tuple[int, ...], ...]:
        k = _key(s)
        if k not in self:
            raise ComplexError(f"{k} is not a simplex of the complex")
        return self._cofacets[k]

    def up_neighbors(self, s) -> tuple[tuple[int, ...], ...]:
        k = _key(s)
        out = {f for c in self.cofacets(k) for f in _faces(c)}
        out.discard(k)
        return tuple(sorted(out))

    def down_neighbors(self, s) -> tuple[tuple[int, ...], ...]:
        k = _key(s)
        if len(k) < 2:
            raise RangeError("down neighbours need q >= 1")
        if k not in self:
            raise ComplexError(f"{k} is not a simplex of the complex")
        out = {c for f in _faces(k) for c in self._cofacets[f]}
        out.discard(k)
        return tuple(sorted(out))

    def deg_up(self, s) -> int:
        return len(self.cofacets(s))

    def deg_down(self, s) -> int:
        return len(self.down_neighbors(s))

    def skeleton(self, k: int) -> "SimplicialComplex":
        if k < 0 or k > self.dim:
            raise RangeError(f"skeleton dimension {k} out of range")
        return SimplicialComplex(self.simplices(k), labels=self.labels,
                                 name=f"{self.name or 'complex'}[{k}-skeleton]")

    def __repr__(self):
        counts = ", ".join(f"|S_{q}|={self.count(q)}" for q in sorted(self._simplices))
        return f"SimplicialComplex({self.name or 'unnamed'}: dim={self.dim}, {counts})"


# -- input ---------------------------------------------------------------

def _check_token(tok: str, lineno: int):
    bad = any(unicodedata.category(ch).startswith("C") for ch in tok) or any(ch in ",;" for ch in tok)
    if bad:
        raise ComplexError(f"line {lineno}: unreadable token {tok!r}")


def parse_complex(text: str | bytes, name: str | None = None) -> SimplicialComplex:
    """Parse the facet format: one facet per line, ``#`` comments, blank lines skipped."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ComplexError(f"facet file is not UTF-8: {exc}") from None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        for tok in tokens:
            _check_token(tok, lineno)
        if len(set(tokens)) != len(tokens):
            raise ComplexError(f"line {lineno}: duplicate vertex within facet")
        facets.append(tokens)
    if not facets:
        raise ComplexError("no facets found")
    return SimplicialComplex.from_labeled_facets(facets, name=name)


def read_complex(path) -> SimplicialComplex:
    with open(path, "rb") as fh:
        return parse_complex(fh.read(), name=str(path))


# -- generators ------------------------------------------------------------

def _strip(m: int, twisted: bool) -> SimplicialComplex:
    # vertex (i, j) has id 2*i + j
    def vid(i, j):
        return 2 * (i % m) + j

    facets = []
    for i in range(m):
        a0, a1 = vid(i, 0), vid(i, 1)
        if twisted and i == m - 1:
            b0, b1 = vid(0, 1), vid(0, 0)
        else:
            b0, b1 = vid(i + 1, 0), vid(i + 1, 1)
        facets.append((a0, b0, b1))
        facets.append((a0, a1, b1))
    labels = [f"{i},{j}" for i in range(m) for j in (0, 1)]
    name = f"{'moebius' if twisted else 'cylinder'}-strip({m})"
    return SimplicialComplex(facets, labels=labels, name=name)


def _cylinder3(N: int) -> SimplicialComplex:
    def vid(l, n):
        return 3 * (n % N) + (l % 3)

    facets = []
    for n in range(N):
        for l in range(3):
            facets.append((vid(l, n), vid(l, n + 1), vid(l + 1, n + 1)))   # rho(l, n)
            facets.append((vid(l, n), vid(l + 1, n + 1), vid(l + 1, n)))   # sigma(l, n)
    labels = [f"{l},{n}" for n in range(N) for l in range(3)]
    return SimplicialComplex(facets, labels=labels, name=f"cylinder3({N})")


def generate_complex(name: str, **params) -> SimplicialComplex:
    """Build a named test complex.

    ``simplex(n)``, ``skeleton(n, k)``, ``sphere``, ``fig5``,
    ``cylinder-strip(m)``, ``moebius-strip(m)``, ``cylinder3(N)``.
    """
    def need(key, lo):
        if key not in params:
            raise ComplexError(f"generator {name!r} needs parameter {key}")
        v = int(params[key])
        if v < lo:
            raise ComplexError(f"generator {name!r}: {key}={v} must be >= {lo}")
        return v

    if name == "simplex":
        n = need("n", 2)
        return SimplicialComplex([range(n)], name=f"simplex({n})")
    if name == "skeleton":
        n = need("n", 2)
        k = need("k", 0)
        if k > n - 1:
            raise ComplexError(f"skeleton({n},{k}): k must be <= n-1")
        return SimplicialComplex(itertools.combinations(range(n), k + 1), name=f"skeleton({n},{k})")
    if name == "sphere":
        return SimplicialComplex(itertools.combinations(range(4), 3), name="sphere")
    if name == "fig5":
        return parse_complex(FIG5_FACETS, name="fig5")
    if name == "cylinder-strip":
        return _strip(need("m", 3), twisted=False)
    if name == "moebius-strip":
        return _strip(need("m", 3), twisted=True)
    if name == "cylinder3":
        return _cylinder3(need("N", 3))
    raise ComplexError(f"unknown generator {name!r}; expected one of {GENERATORS}")


def random_complex(rng: np.random.Generator, n_vertices: int = 7, n_facets: int = 6,
                   dim: int = 2, max_tries: int = 1000) -> SimplicialComplex:
    """Random pure, strongly connected complex from a random facet set."""
    for _ in range(max_tries):
        pool = list(itertools.combinations(range(n_vertices), dim + 1))
        picks = rng.choice(len(pool), size=n_facets, replace=False)
        facets = [pool[i] for i in sorted(picks)]
        used = sorted({v for f in facets for v in f})
        remap = {v: i for i, v in enumerate(used)}
        c = SimplicialComplex([[remap[v] for v in f] for f in facets], name="random")
        rep = validate(c)
        if rep.pure and rep.strongly_connected:
            return c
    raise ComplexError("could not draw a strongly connected random complex")


# -- validation ------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    dim: int
    pure: bool
    strongly_connected: bool
    max_cofacet_count: int
    facet_count: dict[int, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.pure and self.strongly_connected


def _top_components(c: SimplicialComplex) -> int:
    n = c.dim
    top = c.simplices(n)
    if n == 0:
        return 1
    seen = {top[0]}
    queue = deque([top[0]])
    while queue:
        s = queue.popleft()
        for t in c.down_neighbors(s):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return 1 if len(seen) == len(top) else 2


def validate(c: SimplicialComplex) -> ValidationReport:
    facet_count: dict[int, int] = {}
    for f in c.facets:
        facet_count[len(f) - 1] = facet_count.get(len(f) - 1, 0) + 1
    pure = set(facet_count) == {c.dim}
    return ValidationReport(
        dim=c.dim,
        pure=pure,
        strongly_connected=_top_components(c) == 1,
        max_cofacet_count=max(len(v) for v in c._cofacets.values()),
        facet_count=facet_count,
    )


def require_valid(c: SimplicialComplex, allow_invalid: bool = False) -> None:
    """Raise ComplexError unless ``c`` is pure and strongly connected."""
    if allow_invalid:
        return
    rep = validate(c)
    if not rep.pure:
        raise ComplexError(f"{c!r} is not pure")
    if not rep.strongly_connected:
        raise ComplexError(f"{c!r} is not strongly connected")


# -- signatures and neighbours ---------------------------------------------

def sgn(sigma: OrientedSimplex, tau: OrientedSimplex) -> int:
    """Incidence sign of a codimension-one face; 0 if ``tau`` is not a face."""
    if sigma.dim != tau.dim + 1:
        raise RangeError(f"sgn needs dim sigma = dim tau + 1, got {sigma.dim}, {tau.dim}")
    sv, tv = sigma.vertices, tau.vertices
    missing = [j for j, v in enumerate(sv) if v not in tv]
    if len(missing) != 1 or not set(tv) <= set(sv):
        return 0
    j = missing[0]
    return -1 if (j + sigma.parity + tau.parity) & 1 else 1


def _as_oriented(s) -> OrientedSimplex:
    return s if isinstance(s, OrientedSimplex) else OrientedSimplex.from_ordered(s)


def common_cofacet(c: SimplicialComplex, tau1, tau2) -> OrientedSimplex:
    """The (q+1)-simplex containing two up-neighbouring q-simplices (even orientation)."""
    a, b = _key(tau1), _key(tau2)
    u = tuple(sorted(set(a) | set(b)))
    if len(a) != len(b) or a == b or len(u) != len(a) + 1 or u not in c:
        raise ComplexError(f"{a} and {b} are not up neighbours")
    return OrientedSimplex(u)


def common_face(c: SimplicialComplex, tau1, tau2) -> OrientedSimplex:
    """The shared (q-1)-face of two down-neighbouring q-simplices (even orientation)."""
    a, b = _key(tau1), _key(tau2)
    i = tuple(sorted(set(a) & set(b)))
    if len(a) != len(b) or a == b or len(a) < 2 or len(i) != len(a) - 1:
        raise ComplexError(f"{a} and {b} are not down neighbours")
    if a not in c or b not in c:
        raise ComplexError("both simplices must belong to the complex")
    return OrientedSimplex(i)


def degree(c: SimplicialComplex, tau, mode: str) -> int:
    k = _key(tau)
    q = len(k) - 1
    if mode == "up":
        if q >= c.dim:
            raise RangeError(f"up degree needs q < dim K = {c.dim}")
        return c.deg_up(k)
    if mode == "down":
        if q < 1 or q > c.dim:
            raise RangeError("down degree needs 1 <= q <= dim K")
        return c.deg_down(k)
    raise ValueError(f"mode must be 'up' or 'down', got {mode!r}")


def eta(c: SimplicialComplex, tau1, tau2, mode: str) -> int:
    t1, t2 = _as_oriented(tau1), _as_oriented(tau2)
    if mode == "up":
        s = common_cofacet(c, t1, t2)
        return sgn(s, t1) * sgn(s, t2)
    if mode == "down":
        f = common_face(c, t1, t2)
        return sgn(t1, f) * sgn(t2, f)
    raise ValueError(f"mode must be 'up' or 'down', got {mode!r}")


def _check_mode_range(c: SimplicialComplex, q: int, mode: str):
    if mode == "up" and not 0 <= q <= c.dim - 1:
        raise RangeError(f"up graph defined for 0 <= q <= {c.dim - 1}, got q={q}")
    if mode == "down" and not 1 <= q <= c.dim:
        raise RangeError(f"down graph defined for 1 <= q <= {c.dim}, got q={q}")
    if mode not in ("up", "down"):
        raise ValueError(f"mode must be 'up' or 'down', got {mode!r}")


def reduced_pairs(c: SimplicialComplex, q: int, mode: str) -> list[tuple[tuple, tuple]]:
    """Ordered pairs of distinct neighbouring q-simplices (unoriented)."""
    _check_mode_range(c, q, mode)
    nbrs = c.up_neighbors if mode == "up" else c.down_neighbors
    return [(s, t) for s in c.simplices(q) for t in nbrs(s)]


@dataclass(frozen=True)
class NeighborGraph:
    mode: str
    q: int
    edges: frozenset

    def sorted_edges(self) -> list[tuple[OrientedSimplex, OrientedSimplex]]:
        return sorted(self.edges)


def neighbor_graph(c: SimplicialComplex, q: int, mode: str) -> NeighborGraph:
    """The redundant graph on K_q: every orientation pair of every neighbour pair."""
    edges = set()
    for s, t in reduced_pairs(c, q, mode):
        for p1 in (0, 1):
            for p2 in (0, 1):
                edges.add((OrientedSimplex(s, p1), OrientedSimplex(t, p2)))
    return NeighborGraph(mode, q, frozenset(edges))


# -- orientation and bipartiteness -------------------------------------------

@dataclass(frozen=True)
class OrientationAssignment:
    dim: int
    chosen: tuple[OrientedSimplex, ...]

    def __iter__(self):
        return iter(self.chosen)


def _two_colour(nodes, adjacency, parity_of) -> dict | None:
    """BFS 2-colouring where edge (u, v) demands colour[u] ^ colour[v] == parity_of(u, v)."""
    colour: dict = {}
    for root in nodes:
        if root in colour:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adjacency(u):
                want = colour[u] ^ parity_of(u, v)
                if v not in colour:
                    colour[v] = want
                    queue.append(v)
                elif colour[v] != want:
                    return None
    return colour


def orientation_search(c: SimplicialComplex, target: str = "coherent",
                       allow_invalid: bool = False) -> OrientationAssignment | None:
    """Orientation of the top simplices whose down-neighbour signature products
    are all -1 (``coherent``) or all +1 (``anticoherent``); None if impossible.
    """
    if target not in ("coherent", "anticoherent"):
        raise ValueError(f"target must be 'coherent' or 'anticoherent', got {target!r}")
    require_valid(c, allow_invalid)
    n = c.dim
    top = c.simplices(n)
    if n == 0:
        return OrientationAssignment(0, tuple(OrientedSimplex(s) for s in top))
    want = -1 if target == "coherent" else 1

    def flip(s, t):
        # flipping either orientation negates eta, so parity fixes the mismatch
        return int(eta(c, OrientedSimplex(s), OrientedSimplex(t), "down") != want)

    colour = _two_colour(top, c.down_neighbors, flip)
    if colour is None:
        return None
    return OrientationAssignment(n, tuple(OrientedSimplex(s, colour[s]) for s in top))


def is_bipartite(c: SimplicialComplex, q: int, mode: str = "down", reduced: bool = True):
    """2-colouring of the (reduced) neighbour graph or None when not bipartite.

    With ``reduced=False`` the colouring is over oriented simplices and is
    orientation-symmetric, which exists exactly when the reduced graph is
    bipartite.
    """
    _check_mode_range(c, q, mode)
    nodes = c.simplices(q)
    if not nodes:
        raise ComplexError(f"no {q}-simplices")
    nbrs = c.up_neighbors if mode == "up" else c.down_neighbors
    colour = _two_colour(nodes, nbrs, lambda u, v: 1)
    if colour is None:
        return None
    if reduced:
        return colour
    return {OrientedSimplex(s, p): col for s, col in colour.items() for p in (0, 1)}
