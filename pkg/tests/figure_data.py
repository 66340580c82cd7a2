"""A size-10 quasi-quarter-turn FPL, stored as drawn polylines.

Drawing coordinates: grid vertices sit at x, y in 2..11 (y upwards), and
stubs reaching 1 or 12 are border half-edges.
"""

from __future__ import annotations

from fplkit.core import Fpl

POLYLINES = [
    [(6, 6), (7, 6)],
    [(6, 7), (7, 7)],
    [(1, 3), (2, 3), (2, 4), (4, 4), (4, 3), (3, 3), (3, 2), (2, 2), (2, 1)],
    [(4, 1), (4, 2), (6, 2), (6, 1)],
    [(8, 1), (8, 2), (7, 2), (7, 3), (8, 3), (8, 4), (7, 4), (7, 5), (8, 5), (8, 6), (6, 6)],
    [(6, 6), (6, 5), (5, 5), (5, 6), (4, 6), (4, 5), (3, 5), (3, 6), (2, 6), (2, 5), (1, 5)],
    [(5, 3), (5, 4), (6, 4), (6, 3), (5, 3)],
    [(10, 1), (10, 2), (9, 2), (9, 4), (10, 4), (10, 3), (11, 3), (11, 2), (12, 2)],
    [(12, 4), (11, 4), (11, 6), (12, 6)],
    [(10, 5), (10, 6), (9, 6), (9, 5), (10, 5)],
    [(12, 8), (11, 8), (11, 7), (10, 7), (10, 8), (9, 8), (9, 7), (8, 7), (8, 8), (7, 8), (7, 7)],
    [(7, 7), (5, 7), (5, 8), (6, 8), (6, 9), (5, 9), (5, 10), (6, 10), (6, 11), (5, 11), (5, 12)],
    [(7, 9), (8, 9), (8, 10), (7, 10), (7, 9)],
    [(12, 10), (11, 10), (11, 9), (9, 9), (9, 10), (10, 10), (10, 11), (11, 11), (11, 12)],
    [(9, 12), (9, 11), (7, 11), (7, 12)],
    [(3, 12), (3, 11), (4, 11), (4, 9), (3, 9), (3, 10), (2, 10), (2, 11), (1, 11)],
    [(1, 7), (2, 7), (2, 9), (1, 9)],
    [(3, 7), (4, 7), (4, 8), (3, 8), (3, 7)],
]

SIZE = 10


def _cell(x: int, y: int) -> tuple[int, int]:
    return (11 - y, x - 2)


def _unit_steps(a, b):
    (x0, y0), (x1, y1) = a, b
    dx = (x1 > x0) - (x1 < x0)
    dy = (y1 > y0) - (y1 < y0)
    while (x0, y0) != (x1, y1):
        yield (x0, y0), (x0 + dx, y0 + dy)
        x0, y0 = x0 + dx, y0 + dy


def figure_fpl() -> Fpl:
    internal, boundary = set(), set()
    for line in POLYLINES:
        for a, b in zip(line, line[1:]):
            for p, q in _unit_steps(a, b):
                inside = [2 <= x <= 11 and 2 <= y <= 11 for x, y in (p, q)]
                if all(inside):
                    internal.add(tuple(sorted((_cell(*p), _cell(*q)))))
                    continue
                (vx, vy), (ox, oy) = (p, q) if inside[0] else (q, p)
                direction = {1: "W", 12: "E"}.get(ox) or {12: "N", 1: "S"}[oy]
                boundary.add((_cell(vx, vy), direction))
    return Fpl(SIZE, frozenset(internal), frozenset(boundary))
