"""Alternating-sign matrices, fully-packed loop configurations and the map between them.

Grid vertices use matrix coordinates ``(i, j)`` with ``(0, 0)`` at the top left.
An internal edge is a sorted pair of adjacent vertices; a boundary half-edge is
``(vertex, direction)`` with direction one of ``"N"``, ``"E"``, ``"S"``, ``"W"``.

The FPL attached to an ASM is read off its partial sums.  Write ``r(i, j)`` for
the sum of row ``i`` through column ``j`` and ``c(i, j)`` for the sum of column
``j`` through row ``i`` (both 0 before the first entry).  Then

* the horizontal edge right of ``(i, j)`` is present iff ``r(i, j) != (i + j) % 2``,
* the vertical edge below ``(i, j)`` is present iff ``c(i, j) == (i + j) % 2``.

The opposite parity choice gives the complementary edge set; this one is the
choice that makes the top half-edge on the left border "in".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import AlternationViolated, EntryOutOfRange, InvalidFpl, NotSquare

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]
HalfEdge = tuple[Vertex, str]

_STEP = {"N": (-1, 0), "S": (1, 0), "W": (0, -1), "E": (0, 1)}
_CLOCKWISE = {"N": "E", "E": "S", "S": "W", "W": "N"}
_OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E"}


@dataclass(frozen=True)
class Asm:
    n: int
    entries: tuple[tuple[int, ...], ...]

    def __str__(self) -> str:
        return asm_to_text(self)


def _check_line(values: Sequence[int], kind: str, index: int) -> None:
    running = 0
    for v in values:
        running += v
        if running not in (0, 1):
            raise AlternationViolated(kind, index, f"partial sum {running}")
    if running != 1:
        raise AlternationViolated(kind, index, f"sums to {running}")


def validate_asm(entries: Iterable[Iterable[int]]) -> Asm:
    """Check the alternating-sign conditions and return an :class:`Asm`."""
    rows = tuple(tuple(int(x) for x in row) for row in entries)
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise NotSquare(f"expected a non-empty square matrix, got row lengths {[len(r) for r in rows]}")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v not in (-1, 0, 1):
                raise EntryOutOfRange(f"entry ({i}, {j}) = {v} is not in {{-1, 0, 1}}")
    for i, row in enumerate(rows):
        _check_line(row, "row", i)
    for j in range(n):
        _check_line([rows[i][j] for i in range(n)], "column", j)
    return Asm(n, rows)


def first_row_index(a: Asm) -> int:
    """Column of the single nonzero entry in row 0."""
    return a.entries[0].index(1)


# --- text form -------------------------------------------------------------

_TO_CHAR = {1: "+", 0: "0", -1: "-"}
_FROM_CHAR = {"+": 1, "0": 0, "-": -1}


def asm_to_text(a: Asm) -> str:
    return "\n".join("".join(_TO_CHAR[v] for v in row) for row in a.entries)


def asm_from_text(text: str) -> Asm:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    try:
        return validate_asm([[_FROM_CHAR[ch] for ch in ln] for ln in lines])
    except KeyError as exc:
        raise EntryOutOfRange(f"unexpected character {exc.args[0]!r}") from None


# --- FPLs ------------------------------------------------------------------


def _edge(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Fpl:
    n: int
    internal_edges: frozenset[Edge]
    boundary_edges: frozenset[HalfEdge]

    def degree(self, v: Vertex) -> int:
        return sum(1 for e in self.incident(v))

    def incident(self, v: Vertex) -> Iterator[Edge | HalfEdge]:
        i, j = v
        for d, (di, dj) in _STEP.items():
            w = (i + di, j + dj)
            if 0 <= w[0] < self.n and 0 <= w[1] < self.n:
                e = _edge(v, w)
                if e in self.internal_edges:
                    yield e
            elif (v, d) in self.boundary_edges:
                yield (v, d)

    def adjacency(self) -> dict[Vertex, list[Vertex]]:
        adj: dict[Vertex, list[Vertex]] = {}
        for u, v in self.internal_edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        return adj


def grid_edges(n: int) -> frozenset[Edge]:
    out = set()
    for i in range(n):
        for j in range(n):
            if j + 1 < n:
                out.add(((i, j), (i, j + 1)))
            if i + 1 < n:
                out.add(((i, j), (i + 1, j)))
    return frozenset(out)


def boundary_half_edges(n: int) -> frozenset[HalfEdge]:
    out = set()
    for k in range(n):
        out.add(((k, 0), "W"))
        out.add(((k, n - 1), "E"))
        out.add(((0, k), "N"))
        out.add(((n - 1, k), "S"))
    return frozenset(out)


def canonical_boundary(n: int) -> frozenset[HalfEdge]:
    """The "in" half-edges: alternating around the border, top-left "in"."""
    out = set()
    for k in range(n):
        if k % 2 == 0:
            out.add(((k, 0), "W"))
        if (k + n - 1) % 2 == 0:
            out.add(((k, n - 1), "E"))
        if k % 2 == 1:
            out.add(((0, k), "N"))
        if (n - 1 + k) % 2 == 1:
            out.add(((n - 1, k), "S"))
    return frozenset(out)


def validate_fpl(f: Fpl) -> Fpl:
    n = f.n
    for (u, v) in f.internal_edges:
        if abs(u[0] - v[0]) + abs(u[1] - v[1]) != 1 or not all(0 <= c < n for c in u + v):
            raise InvalidFpl(f"{(u, v)} is not a grid edge")
    if f.boundary_edges != canonical_boundary(n):
        raise InvalidFpl("boundary half-edges do not follow the alternating convention")
    for i in range(n):
        for j in range(n):
            d = f.degree((i, j))
            if d != 2:
                raise InvalidFpl(f"vertex {(i, j)} has degree {d}")
    return f


def asm_to_fpl(a: Asm) -> Fpl:
    n, m = a.n, a.entries
    internal: set[Edge] = set()
    boundary: set[HalfEdge] = set()
    for i in range(n):
        r = 0
        if r != (i - 1) % 2:
            boundary.add(((i, 0), "W"))
        for j in range(n):
            r += m[i][j]
            if r != (i + j) % 2:
                if j + 1 < n:
                    internal.add(((i, j), (i, j + 1)))
                else:
                    boundary.add(((i, j), "E"))
    for j in range(n):
        c = 0
        if c == (j - 1) % 2:
            boundary.add(((0, j), "N"))
        for i in range(n):
            c += m[i][j]
            if c == (i + j) % 2:
                if i + 1 < n:
                    internal.add(((i, j), (i + 1, j)))
                else:
                    boundary.add(((i, j), "S"))
    return Fpl(n, frozenset(internal), frozenset(boundary))


def fpl_to_asm(f: Fpl) -> Asm:
    n = f.n
    rows = []
    for i in range(n):
        prev = 0
        row = []
        for j in range(n):
            if j + 1 < n:
                present = ((i, j), (i, j + 1)) in f.internal_edges
            else:
                present = ((i, j), "E") in f.boundary_edges
            r = ((i + j) % 2) ^ int(present)
            row.append(r - prev)
            prev = r
        rows.append(row)
    try:
        return validate_asm(rows)
    except (AlternationViolated, EntryOutOfRange) as exc:
        raise InvalidFpl(f"edge set does not come from an ASM: {exc}") from None


# --- symmetries ------------------------------------------------------------


def _rot_vertex(v: Vertex, n: int) -> Vertex:
    return (v[1], n - 1 - v[0])


def _rotate_edges(f: Fpl) -> tuple[frozenset[Edge], frozenset[HalfEdge]]:
    n = f.n
    internal = frozenset(_edge(_rot_vertex(u, n), _rot_vertex(v, n)) for u, v in f.internal_edges)
    boundary = frozenset((_rot_vertex(v, n), _CLOCKWISE[d]) for v, d in f.boundary_edges)
    return internal, boundary


def rotate_quarter(f: Fpl) -> Fpl:
    """Clockwise quarter turn; odd sizes are complemented to restore the boundary rule."""
    internal, boundary = _rotate_edges(f)
    if f.n % 2:
        internal = grid_edges(f.n) - internal
        boundary = boundary_half_edges(f.n) - boundary
    return Fpl(f.n, internal, boundary)


def rotate_half(f: Fpl) -> Fpl:
    n = f.n

    def rot(v: Vertex) -> Vertex:
        return (n - 1 - v[0], n - 1 - v[1])

    internal = frozenset(_edge(rot(u), rot(v)) for u, v in f.internal_edges)
    boundary = frozenset((rot(v), _OPPOSITE[d]) for v, d in f.boundary_edges)
    return Fpl(n, internal, boundary)


def center_square(n: int) -> tuple[Edge, Edge, Edge, Edge]:
    """The four edges of the central unit square (even ``n``): top, bottom, left, right."""
    c = n // 2 - 1
    a, b, d, e = (c, c), (c, c + 1), (c + 1, c), (c + 1, c + 1)
    return (a, b), (d, e), (a, d), (b, e)


@dataclass(frozen=True)
class SymmetryFlags:
    half_turn: bool
    quarter_turn: bool
    quasi_quarter_turn: bool


def classify_symmetry(f: Fpl) -> SymmetryFlags:
    n = f.n
    half = rotate_half(f) == f
    quarter = False
    quasi = False
    if n % 2 == 0:
        rotated = rotate_quarter(f)
        quarter = rotated == f
        if half and n % 4 == 2:
            top, bottom, left, right = center_square(n)
            diff = f.internal_edges ^ rotated.internal_edges
            quasi = (
                f.boundary_edges == rotated.boundary_edges
                and diff == {top, bottom, left, right}
                and top in f.internal_edges
                and bottom in f.internal_edges
            )
    return SymmetryFlags(half, quarter, quasi)


def count_loops(f: Fpl) -> int:
    """Number of closed loops (components not touching the boundary)."""
    adj = f.adjacency()
    touched = {v for v, _ in f.boundary_edges}
    seen: set[Vertex] = set()
    loops = 0
    for start in adj:
        if start in seen:
            continue
        stack, comp, open_ = [start], [], False
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            open_ = open_ or v in touched
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if not open_:
            loops += 1
    return loops
