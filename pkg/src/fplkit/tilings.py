"""Rhombus tilings as perfect matchings, rotation quotients and lattice paths.

Triangular-lattice regions use Eisenstein coordinates: the point ``x u + y v``
with ``u`` and ``v`` unit vectors at 0 and 60 degrees.  A triangle is stored by
three times its centroid, so all coordinates are integers: the up triangle
with corners ``(x, y), (x+1, y), (x, y+1)`` sits at ``(3x+1, 3y+1)`` and the
down triangle with corners ``(x+1, y), (x, y+1), (x+1, y+1)`` at
``(3x+2, 3y+2)``.  In these coordinates the 60 degree rotation about the
origin is ``(X, Y) -> (-Y, X + Y)`` and the reflection in the 30 degree line is
``(X, Y) -> (Y, X)``.

Square-grid regions (the FPL side) store vertex ``(i, j)`` of an ``N x N`` grid
at ``(2i - N + 1, 2j - N + 1)``, centred on the grid centre; the quarter turn
is ``(a, b) -> (b, -a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Hashable, Iterable, Mapping, Sequence

from .core import Fpl, classify_symmetry, grid_edges
from .enumeration import SymmetryClass, count_formula_A, enumerate_asms
from .errors import (
    HoledRequiresOdd,
    NotReflective,
    NotSymmetric,
    PatternMismatch,
    PropagationConflict,
    UnsupportedPattern,
)
from .exact import det

Vertex = Hashable
WeightedEdge = tuple[Vertex, Vertex, Fraction]

_BASE_ORDER = {"triangular": 6, "square": 4}


@dataclass(frozen=True)
class MatchRegion:
    vertices: tuple[Vertex, ...]
    edges: tuple[WeightedEdge, ...]
    positions: Mapping[Vertex, tuple[int, int]] | None = field(default=None, repr=False, compare=False)
    lattice: str | None = None

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence], vertices: Iterable[Vertex] | None = None) -> "MatchRegion":
        norm = []
        for e in edges:
            u, v = e[0], e[1]
            w = Fraction(e[2]) if len(e) > 2 else Fraction(1)
            norm.append((u, v, w))
        verts = set(vertices or ())
        for u, v, _ in norm:
            verts.update((u, v))
        return cls(tuple(sorted(verts, key=repr)), tuple(norm))

    def is_unweighted(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def to_record(self) -> dict:
        index = {v: k for k, v in enumerate(self.vertices)}
        return {
            "vertices": [list(v) if isinstance(v, tuple) else v for v in self.vertices],
            "edges": [[index[u], index[v], w.numerator, w.denominator] for u, v, w in self.edges],
        }


# --- honeycomb regions ---------------------------------------------------------


def _hex_dist(x: int, y: int) -> int:
    return max(abs(x), abs(y), abs(x + y))


def _triangle_corners(kind: str, x: int, y: int) -> tuple[tuple[int, int], ...]:
    if kind == "U":
        return ((x, y), (x + 1, y), (x, y + 1))
    return ((x + 1, y), (x, y + 1), (x + 1, y + 1))


def _centroid(kind: str, x: int, y: int) -> tuple[int, int]:
    return (3 * x + 1, 3 * y + 1) if kind == "U" else (3 * x + 2, 3 * y + 2)


def hexagon_region(k: int, holed: bool = False) -> MatchRegion:
    """Dual graph of the triangulated regular hexagon of side ``k``.

    With ``holed`` the six triangles around the centre are removed.
    """
    if k < 1:
        raise ValueError("side must be positive")
    if holed and k % 2 == 0:
        raise HoledRequiresOdd(f"the holed hexagon is only used for odd sides, got {k}")
    tri = set()
    for x in range(-k, k + 1):
        for y in range(-k, k + 1):
            for kind in "UD":
                corners = _triangle_corners(kind, x, y)
                if all(_hex_dist(*c) <= k for c in corners):
                    if holed and (0, 0) in corners:
                        continue
                    tri.add(_centroid(kind, x, y))
    edges = []
    for X, Y in sorted(tri):
        if X % 3 == 1:
            # up triangle: neighbours are down triangles at the same, left and lower cells
            for nb in ((X + 1, Y + 1), (X - 2, Y + 1), (X + 1, Y - 2)):
                if nb in tri:
                    edges.append(((X, Y), nb, Fraction(1)))
    verts = tuple(sorted(tri))
    return MatchRegion(verts, tuple(edges), {v: v for v in verts}, "triangular")


# --- perfect matchings -------------------------------------------------------------


def _band_order(r: MatchRegion) -> list[Vertex]:
    """Cuthill-McKee style order, which keeps the transfer frontier narrow."""
    adj: dict[Vertex, set[Vertex]] = {v: set() for v in r.vertices}
    for u, v, _ in r.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    order: list[Vertex] = []
    seen: set[Vertex] = set()
    remaining = sorted(r.vertices, key=lambda v: (len(adj[v]), repr(v)))
    for start in remaining:
        if start in seen:
            continue
        seen.add(start)
        queue = [start]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            order.append(v)
            for w in sorted(adj[v] - seen, key=lambda w: (len(adj[w]), repr(w))):
                seen.add(w)
                queue.append(w)
    return order


def count_matchings(r: MatchRegion) -> Fraction:
    """Weighted number of perfect matchings (sum over matchings of weight products).

    Vertices are swept in a banded order; the state is the set of vertices
    ahead of the sweep that are already matched.
    """
    if len(r.vertices) % 2:
        return Fraction(0)
    order = _band_order(r)
    pos = {v: k for k, v in enumerate(order)}
    forward: list[list[tuple[int, Fraction]]] = [[] for _ in order]
    for u, v, w in r.edges:
        a, b = pos[u], pos[v]
        if a == b:
            continue
        if a > b:
            a, b = b, a
        forward[a].append((b, Fraction(w)))
    states: dict[int, Fraction] = {0: Fraction(1)}
    for i in range(len(order)):
        bit = 1 << i
        nxt: dict[int, Fraction] = {}
        for state, weight in states.items():
            if state & bit:
                key = state ^ bit
                nxt[key] = nxt.get(key, 0) + weight
                continue
            for j, w in forward[i]:
                jb = 1 << j
                if state & jb:
                    continue
                key = state | jb
                nxt[key] = nxt.get(key, 0) + weight * w
        states = nxt
        if not states:
            return Fraction(0)
    return Fraction(states.get(0, 0))


def prune_forced(r: MatchRegion) -> tuple[MatchRegion, Fraction]:
    """Repeatedly match degree-1 vertices to their only neighbour.

    Returns the remaining region and the product of the weights of the edges
    taken, so ``count_matchings(r) == factor * count_matchings(rest)``.
    Isolated vertices are kept (the count is then 0).
    """
    verts = set(r.vertices)
    edges = list(r.edges)
    factor = Fraction(1)
    while True:
        degree: dict[Vertex, int] = {v: 0 for v in verts}
        for u, v, _ in edges:
            degree[u] += 1
            degree[v] += 1
        leaf = next((v for v in sorted(verts, key=repr) if degree[v] == 1), None)
        if leaf is None:
            break
        u, v, w = next(e for e in edges if leaf in e[:2])
        factor *= w
        verts -= {u, v}
        edges = [e for e in edges if u not in e[:2] and v not in e[:2]]
    positions = None if r.positions is None else {v: r.positions[v] for v in verts}
    return MatchRegion(tuple(sorted(verts, key=repr)), tuple(edges), positions, r.lattice), factor


# --- rotations and quotients ------------------------------------------------------


def _rotate(p: tuple[int, int], lattice: str) -> tuple[int, int]:
    a, b = p
    if lattice == "triangular":
        return (-b, a + b)
    return (b, -a)


def _rotate_k(p: tuple[int, int], lattice: str, k: int) -> tuple[int, int]:
    for _ in range(k):
        p = _rotate(p, lattice)
    return p


def _generator_steps(r: MatchRegion, order: int) -> int:
    if r.positions is None or r.lattice not in _BASE_ORDER:
        raise NotSymmetric("region has no lattice embedding")
    base = _BASE_ORDER[r.lattice]
    if order < 1 or base % order:
        raise NotSymmetric(f"order {order} is not a rotation of the {r.lattice} lattice")
    return base // order


def _sector_rep(orbit: Sequence[tuple[int, int]]) -> tuple[int, int]:
    inside = [p for p in orbit if p[0] > 0 and p[1] > 0]
    return inside[0] if len(inside) == 1 else min(orbit)


@dataclass(frozen=True)
class Quotient:
    region: MatchRegion
    order: int
    vertex_rep: Mapping[Vertex, Vertex]
    edge_index: Mapping[tuple[Vertex, Vertex], int]


def rotation_quotient(r: MatchRegion, order: int) -> Quotient:
    """Orbit graph of ``r`` under its rotation of the given order.

    Vertex orbits are named by their representative in the open sector
    ``X > 0, Y > 0`` when the order is the full lattice order (the position of
    the representative is kept, so the quotient is still embedded).  Edges
    joining a vertex to another point of its own orbit can never appear in an
    invariant matching and are dropped.
    """
    steps = _generator_steps(r, order)
    lattice = r.lattice
    at = {p: v for v, p in r.positions.items()}
    if len(at) != len(r.positions):
        raise NotSymmetric("two vertices share a position")
    g = lambda p: _rotate_k(p, lattice, steps)
    for p in at:
        if p == (0, 0):
            raise NotSymmetric("a vertex sits on the rotation centre")
        if g(p) not in at:
            raise NotSymmetric(f"rotation does not preserve the vertex at {p}")

    def orbit(p):
        out = [p]
        for _ in range(order - 1):
            out.append(g(out[-1]))
        return out

    rep: dict[Vertex, Vertex] = {}
    for v, p in r.positions.items():
        rep[v] = at[_sector_rep(orbit(p))]
    edge_weight: dict[frozenset, Fraction] = {}
    for u, v, w in r.edges:
        edge_weight[frozenset((r.positions[u], r.positions[v]))] = w
    q_edges: list[WeightedEdge] = []
    edge_index: dict[tuple[Vertex, Vertex], int] = {}
    seen: dict[frozenset, int] = {}
    for u, v, w in r.edges:
        key0 = frozenset((r.positions[u], r.positions[v]))
        images = []
        pu, pv = r.positions[u], r.positions[v]
        for _ in range(order):
            images.append(frozenset((pu, pv)))
            pu, pv = g(pu), g(pv)
        for im in images:
            if edge_weight.get(im) != w:
                raise NotSymmetric(f"rotation does not preserve edge {u}-{v} with its weight")
        canon = min(images, key=lambda s: sorted(s))
        if canon in seen:
            edge_index[(u, v)] = edge_index[(v, u)] = seen[canon]
            continue
        ru, rv = rep[u], rep[v]
        if ru == rv:
            if len(set(images)) * 2 == order:
                raise NotSymmetric("an edge is reversed by the half turn; unsupported")
            seen[canon] = -1
            edge_index[(u, v)] = edge_index[(v, u)] = -1
            continue
        seen[canon] = len(q_edges)
        edge_index[(u, v)] = edge_index[(v, u)] = len(q_edges)
        q_edges.append((ru, rv, w))
    verts = tuple(sorted(set(rep.values()), key=repr))
    region = MatchRegion(verts, tuple(q_edges), {v: r.positions[v] for v in verts}, lattice)
    return Quotient(region, order, rep, edge_index)


def quotient_by_rotation(r: MatchRegion, order: int) -> MatchRegion:
    return rotation_quotient(r, order).region


def count_invariant_matchings(r: MatchRegion, order: int) -> int:
    """Rotation-invariant perfect matchings of ``r``, counted on ``r`` itself.

    Choosing an edge commits its whole orbit; this never looks at the quotient.
    """
    steps = _generator_steps(r, order)
    at = {p: v for v, p in r.positions.items()}
    index = {v: k for k, v in enumerate(r.vertices)}
    incident: list[list[list[int]]] = [[] for _ in r.vertices]
    for u, v, _ in r.edges:
        pu, pv = r.positions[u], r.positions[v]
        orbit_bits = []
        for _ in range(order):
            orbit_bits.append((index[at[pu]], index[at[pv]]))
            pu, pv = _rotate_k(pu, r.lattice, steps), _rotate_k(pv, r.lattice, steps)
        ends = [x for pair in orbit_bits for x in pair]
        if len(set(ends)) != len(ends):
            continue
        incident[index[u]].append(ends)
        incident[index[v]].append(ends)
    full = (1 << len(r.vertices)) - 1
    memo: dict[int, int] = {}

    def rec(mask: int) -> int:
        if mask == full:
            return 1
        if mask in memo:
            return memo[mask]
        free = (~mask) & full
        v = (free & -free).bit_length() - 1
        total = 0
        for ends in incident[v]:
            bits = 0
            for x in ends:
                bits |= 1 << x
            if bits & mask:
                continue
            total += rec(mask | bits)
        memo[mask] = total
        return total

    return rec(0)


# --- plane partition counts ---------------------------------------------------------


def closed_form_p(size: int) -> int:
    """Product formula for the number of qCSSCPPs of odd ``size = 2n + 1``."""
    if size < 3 or size % 2 == 0:
        raise ValueError("size must be odd and at least 3")
    n = (size - 1) // 2
    f = math.factorial
    value = Fraction(1)
    for i in range(n):
        value *= Fraction(
            f(i) * f(i + 1) * f(3 * i + 1) * f(3 * i + 4),
            f(2 * i) * f(2 * i + 1) * f(2 * i + 2) * f(2 * i + 3),
        )
    assert value.denominator == 1
    return value.numerator


def lgv_entry(i: int, j: int) -> Fraction:
    """``(i+j+1)! / ((2j-i)! (2i-j+2)!)``, zero when a factorial argument is negative."""
    if 2 * j - i < 0 or 2 * i - j + 2 < 0:
        return Fraction(0)
    f = math.factorial
    return Fraction(f(i + j + 1), f(2 * j - i) * f(2 * i - j + 2))


def lgv_weight(i: int, j: int) -> Fraction:
    """Closed form of the weighted path count from source ``i`` to sink ``j``."""
    return Fraction(3 * i + 4, 2) * lgv_entry(i, j)


def lgv_count(n: int) -> int:
    """Perfect matchings of the quotient graph, via the path determinant."""
    if n < 1:
        raise ValueError("n must be at least 1")
    prefactor = math.prod(3 * i + 4 for i in range(n))
    value = prefactor * det([[lgv_entry(i, j) for j in range(n)] for i in range(n)])
    assert value.denominator == 1
    return value.numerator


@dataclass(frozen=True)
class LatticePathSystem:
    n: int

    @property
    def sources(self) -> list[tuple[int, int]]:
        return [(i, 2 * i + 2) for i in range(self.n)]

    @property
    def sinks(self) -> list[tuple[int, int]]:
        return [(2 * j, j) for j in range(self.n)]

    def paths(self, i: int, j: int) -> list[tuple[tuple[tuple[int, int], ...], Fraction]]:
        """East/South paths from source ``i`` to sink ``j`` with their weights."""
        (x0, y0), (x1, y1) = self.sources[i], self.sinks[j]
        sinks = set(self.sinks)
        out = []
        if x1 < x0 or y1 > y0:
            return out

        def rec(x: int, y: int, trail: list, weight: Fraction) -> None:
            if (x, y) == (x1, y1):
                out.append((tuple(trail), weight))
                return
            if x < x1:
                w = weight / 2 if (x + 1, y) in sinks else weight
                trail.append((x + 1, y))
                rec(x + 1, y, trail, w)
                trail.pop()
            if y > y1:
                trail.append((x, y - 1))
                rec(x, y - 1, trail, weight)
                trail.pop()

        rec(x0, y0, [(x0, y0)], Fraction(1))
        return out

    def pair_weight(self, i: int, j: int) -> Fraction:
        return sum((w for _, w in self.paths(i, j)), Fraction(0))

    def nonintersecting_weight(self) -> Fraction:
        """Signed weighted count of vertex-disjoint families, by enumeration."""
        table = {(i, j): self.paths(i, j) for i in range(self.n) for j in range(self.n)}
        total = Fraction(0)
        for perm in permutations(range(self.n)):
            inversions = sum(1 for a in range(self.n) for b in range(a + 1, self.n) if perm[a] > perm[b])
            sign = -1 if inversions % 2 else 1

            def rec(i: int, used: frozenset, weight: Fraction) -> Fraction:
                if i == self.n:
                    return weight
                acc = Fraction(0)
                for trail, w in table[(i, perm[i])]:
                    cells = frozenset(trail)
                    if cells & used:
                        continue
                    acc += rec(i + 1, used | cells, weight * w)
                return acc

            total += sign * rec(0, frozenset(), Fraction(1))
        return total


def cssc_region(size: int) -> MatchRegion:
    if size < 2 or size % 2:
        raise ValueError("CSSCPPs need an even size")
    return quotient_by_rotation(hexagon_region(size), 6)


def qcssc_region(size: int) -> MatchRegion:
    """The quotient graph usually written ``G_{2n+1}``."""
    if size < 3 or size % 2 == 0:
        raise ValueError("qCSSCPPs need an odd size >= 3")
    return quotient_by_rotation(hexagon_region(size, holed=True), 6)


def count_cssc(size: int) -> int:
    """Number of CSSCPPs of even ``size``: matchings of the order-6 quotient."""
    return int(count_matchings(cssc_region(size)))


def count_qcsscpp(size: int, method: str = "brute") -> int:
    """Number of qCSSCPPs of odd ``size``.

    ``brute``: matchings of the quotient graph; ``ciucu``: ``2^n`` times the
    weighted matchings of the halved graph; ``lgv``: the path determinant;
    ``formula``: the closed product.
    """
    n = (size - 1) // 2
    method = {"ciucu_lgv": "lgv", "closed_form": "formula"}.get(method, method)
    if method == "brute":
        return int(count_matchings(qcssc_region(size)))
    if method == "ciucu":
        halved, factor = ciucu_factorize(qcssc_region(size), 2 * n)
        value = factor * count_matchings(halved)
        assert value.denominator == 1
        return value.numerator
    if method == "lgv":
        return lgv_count(n)
    if method == "formula":
        return closed_form_p(size)
    raise ValueError(f"unknown method {method!r}")


# --- Ciucu factorisation -------------------------------------------------------------


def _reflect(p: tuple[int, int]) -> tuple[int, int]:
    return (p[1], p[0])


def ciucu_factorize(g: MatchRegion, axis_vertex_count: int) -> tuple[MatchRegion, int]:
    """Halve a reflection-symmetric triangular quotient.

    The axis is ``X == Y``; "below" is ``X > Y``.  Edges from an axis vertex
    to a vertex below are removed and edges along the axis get weight 1/2.
    Returns the weighted graph and ``2 ** (axis_vertex_count // 2)``.
    """
    if g.positions is None or g.lattice != "triangular":
        raise NotReflective("region has no triangular embedding")
    pos = g.positions
    at = {p: v for v, p in pos.items()}
    if any(_reflect(p) not in at for p in at):
        raise NotReflective("vertex set is not symmetric")

    def key(u, v, w):
        return (frozenset((pos[u], pos[v])), w)

    from collections import Counter

    original = Counter(key(u, v, w) for u, v, w in g.edges)
    mirrored = Counter((frozenset(_reflect(p) for p in s), w) for s, w in original.elements())
    if original != mirrored:
        raise NotReflective("edge set is not symmetric")
    axis = [v for v in g.vertices if pos[v][0] == pos[v][1]]
    if len(axis) != axis_vertex_count or axis_vertex_count % 2:
        raise NotReflective(f"expected {axis_vertex_count} axis vertices, found {len(axis)}")
    on_axis = set(axis)
    kept: list[WeightedEdge] = []
    for u, v, w in g.edges:
        if u in on_axis and v in on_axis:
            kept.append((u, v, w / 2))
        elif u in on_axis or v in on_axis:
            other = v if u in on_axis else u
            if pos[other][0] > pos[other][1]:
                continue
            kept.append((u, v, w))
        else:
            kept.append((u, v, w))
    halved = MatchRegion(g.vertices, tuple(kept), pos, g.lattice)
    return halved, 2 ** (axis_vertex_count // 2)


# --- fixed edges on the FPL side -------------------------------------------------------


GridEdge = tuple  # internal edge ((i, j), (k, l)) or half-edge ((i, j), "W")


def full_pattern(size: int) -> str:
    """The full link pattern of the rarest quarter-turn / quasi-quarter-turn word."""
    if size % 4 == 0:
        n = size // 4
        return "a" * n + ("a" * n + "b" * n) * 3 + "b" * n
    if size % 4 == 2:
        n = (size - 2) // 4
        return "a" * (2 * n + 1) + "b" * n + "a" * (n + 1) + "b" * (n + 1) + "a" * n + "b" * (2 * n + 1)
    raise UnsupportedPattern(f"no nested-arch family for size {size}")


def rarest_word(size: int) -> str:
    if size % 4 == 0:
        n = size // 4
        return "b" * n + "a" * n
    n = (size - 2) // 4
    return "b" * n + "c" + "a" * n


@dataclass(frozen=True)
class FixedEdgeClosure:
    size: int
    forced: frozenset
    forbidden: frozenset
    residual: MatchRegion


def _grid_universe(size: int) -> tuple[set, dict]:
    edges: set = set(grid_edges(size))
    for k in range(size):
        edges |= {((k, 0), "W"), ((k, size - 1), "E"), ((0, k), "N"), ((size - 1, k), "S")}
    at: dict = {}
    for e in edges:
        for v in _endpoints(e):
            at.setdefault(v, []).append(e)
    return edges, at


def _endpoints(e) -> tuple:
    return (e[0],) if isinstance(e[1], str) else e


def _rotate_grid_edge(e, size: int):
    rot = lambda v: (v[1], size - 1 - v[0])
    if isinstance(e[1], str):
        return (rot(e[0]), {"N": "E", "E": "S", "S": "W", "W": "N"}[e[1]])
    a, b = rot(e[0]), rot(e[1])
    return (a, b) if a <= b else (b, a)


def seed_edges(size: int) -> frozenset:
    """Horizontal edges with odd left endpoint inside the left triangle.

    The triangle has corners ``(0, 0)``, ``(size - 2, 0)`` and ``(c, c)`` with
    ``c = (size - 2) / 2``; these edges lie in every FPL whose full pattern is
    :func:`full_pattern` of ``size``.
    """
    full_pattern(size)
    top = size - 2
    out = set()
    for i in range(size):
        for j in range(size - 1):
            if (i + j) % 2 and j + 1 <= i and i + j + 1 <= top:
                out.add(((i, j), (i, j + 1)))
    return frozenset(out)


def fixed_edge_closure(size: int, pattern: str | None = None) -> FixedEdgeClosure:
    """Forced and forbidden edges shared by the symmetric FPLs with the rarest pattern.

    Seeds are the horizontal edges with odd left endpoint inside the left
    triangle ``(0,0), (size-2, 0), (c, c)`` with ``c = (size-2)/2``, together
    with the boundary condition.  The central square is then fixed (all four
    edges forbidden for ``size = 0 mod 4``; horizontal pair forced and vertical
    pair forbidden for ``size = 2 mod 4``), and the sets are closed under the
    quarter turn and the degree-2 rules until nothing changes.
    """
    expected = full_pattern(size)
    if pattern is not None and pattern != expected:
        raise UnsupportedPattern(f"{pattern!r} is not the nested-arch pattern {expected!r} for size {size}")
    from .core import canonical_boundary, center_square

    universe, at = _grid_universe(size)
    forced: set = set()
    forbidden: set = set()
    inn = canonical_boundary(size)
    for e in universe:
        if isinstance(e[1], str):
            (forced if e in inn else forbidden).add(e)
    forced |= seed_edges(size)
    square = center_square(size)
    quasi = size % 4 == 2
    # centre vertices already carry one seeded edge each, so the square is excluded
    # (or, in the quasi case, fixed by definition)
    closed_orbit = set(square)

    def close(es: set) -> set:
        out = set(es)
        for e in es:
            if e in closed_orbit:
                continue
            cur = e
            for _ in range(3):
                cur = _rotate_grid_edge(cur, size)
                out.add(cur)
        return out

    forced = close(forced)
    forbidden = close(forbidden)
    if not quasi:
        for corner in (square[0][0], square[0][1], square[1][0], square[1][1]):
            have = sum(1 for e in at[corner] if e in forced)
            if have != 1:
                raise PropagationConflict(f"centre vertex {corner} has {have} forced edges, expected 1")
        forbidden |= set(square)
    else:
        top_e, bottom_e, left_e, right_e = square
        forced |= {top_e, bottom_e}
        forbidden |= {left_e, right_e}

    changed = True
    while changed:
        if forced & forbidden:
            raise PropagationConflict(f"edges both forced and forbidden: {sorted(forced & forbidden)[:3]}")
        changed = False
        for v, es in at.items():
            if not isinstance(v, tuple) or not (0 <= v[0] < size and 0 <= v[1] < size):
                continue
            nf = [e for e in es if e in forced]
            open_ = [e for e in es if e not in forced and e not in forbidden]
            if len(nf) > 2 or len(nf) + len(open_) < 2:
                raise PropagationConflict(f"vertex {v} cannot reach degree 2")
            if len(nf) == 2 and open_:
                forbidden |= close(set(open_))
                changed = True
            elif len(nf) + len(open_) == 2 and open_:
                forced |= close(set(open_))
                changed = True
    free = [e for e in universe if e not in forced and e not in forbidden]
    verts = set()
    for e in free:
        for v in _endpoints(e):
            have = sum(1 for x in at[v] if x in forced)
            if have != 1:
                raise PropagationConflict(f"vertex {v} has {have} forced edges; residual is not a matching problem")
            verts.add(v)
    positions = {v: (2 * v[0] - size + 1, 2 * v[1] - size + 1) for v in verts}
    residual = MatchRegion(
        tuple(sorted(verts)),
        tuple((e[0], e[1], Fraction(1)) for e in sorted(free)),
        positions,
        "square",
    )
    return FixedEdgeClosure(size, frozenset(forced), frozenset(forbidden), residual)


def fpl_to_quotient_matching(f: Fpl, closure: FixedEdgeClosure | None = None) -> frozenset[int]:
    """Map a symmetric FPL with the rarest pattern to a perfect matching of the quotient.

    The result is the set of quotient edge indices used by ``f``.
    """
    from .linkpat import encode_fpl

    size = f.n
    flags = classify_symmetry(f)
    if size % 4 == 0 and flags.quarter_turn:
        cls = SymmetryClass.QUARTER_TURN
    elif size % 4 == 2 and flags.quasi_quarter_turn:
        cls = SymmetryClass.QUASI_QUARTER_TURN
    else:
        raise PatternMismatch("FPL is not in a quarter-turn or quasi-quarter-turn class")
    word = encode_fpl(f, cls)
    if word != rarest_word(size):
        raise PatternMismatch(f"pattern {word!r} is not {rarest_word(size)!r}")
    closure = closure or fixed_edge_closure(size)
    present = set(f.internal_edges) | set(f.boundary_edges)
    if not closure.forced <= present or closure.forbidden & present:
        raise PatternMismatch("FPL disagrees with the fixed edges")
    quotient = rotation_quotient(closure.residual, 4)
    used = set()
    for u, v, _ in closure.residual.edges:
        if (u, v) in present:
            idx = quotient.edge_index[(u, v)]
            if idx < 0:
                raise PatternMismatch("FPL uses an edge with no invariant orbit")
            used.add(idx)
    q = quotient.region
    covered: dict = {}
    for idx in used:
        u, v, _ = q.edges[idx]
        for x in (u, v):
            covered[x] = covered.get(x, 0) + 1
    if set(covered) != set(q.vertices) or any(c != 1 for c in covered.values()):
        raise PatternMismatch("image is not a perfect matching of the quotient")
    return frozenset(used)


def quotients_isomorphic(a: MatchRegion, b: MatchRegion) -> bool:
    """Graph isomorphism of two unweighted regions once forced pendant edges are removed."""
    import networkx as nx

    def graph(r: MatchRegion):
        g = nx.MultiGraph()
        g.add_nodes_from(r.vertices)
        g.add_edges_from((u, v) for u, v, _ in r.edges)
        return g

    ra, _ = prune_forced(a)
    rb, _ = prune_forced(b)
    return nx.is_isomorphic(graph(ra), graph(rb))


def rarest_pattern_family(size: int) -> list[Fpl]:
    """Symmetric FPLs of ``size`` whose reduced pattern is the rarest word."""
    from .core import asm_to_fpl
    from .linkpat import encode_fpl

    cls = SymmetryClass.QUARTER_TURN if size % 4 == 0 else SymmetryClass.QUASI_QUARTER_TURN
    target = rarest_word(size)
    out = []
    for a in enumerate_asms(size, cls):
        fpl = asm_to_fpl(a)
        if encode_fpl(fpl, cls) == target:
            out.append(fpl)
    return out


def plane_partition_count(size: int) -> int:
    """Known closed form on the plane-partition side: ``A(n)^2`` or ``A(n) A(n+1)``."""
    if size % 2 == 0:
        n = size // 2
        return count_formula_A(n) ** 2
    n = (size - 1) // 2
    return count_formula_A(n) * count_formula_A(n + 1)
