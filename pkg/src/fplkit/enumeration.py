"""Exhaustive generation and exact counting of ASMs in four symmetry classes.

Two searches are used.

*Plain* and *half-turn* classes are filled row by row.  The state between rows
is the set of columns whose partial sum is 1, kept as a bitmask; a row is valid
exactly when it moves the state to a superset-by-one that interlaces it.  For
the half-turn class only the top half is searched: row ``n-1-i`` is row ``i``
reversed, and the bottom half is consistent iff the final state ``S`` satisfies
``S[j] + S[n-1-j] == 1`` (even ``n``) or admits a middle row taking ``S`` to the
complement of its mirror image (odd ``n``).

*Quarter-turn* and *quasi-quarter-turn* classes (even ``n = 2h``) are filled by
hooks.  With ``Q`` the top-left ``h x h`` quadrant, row ``k`` of the full
matrix is ``Q[k, :]`` followed by column ``k`` of ``Q`` read upwards, and every
column is the reverse of some row.  So the matrix is an ASM iff those ``h``
hook rows are alternating sequences.  Step ``k`` chooses the still-unknown
middle of hook ``k``, which also fixes one prefix and one suffix entry of every
later hook.  In the quasi class the two centre cells of the last hook may
differ; they carry one nonzero between them, placed so that the loop
configuration keeps the two horizontal edges of the central square.

Counting never materialises matrices; the row search memoises on
``(row, state)``.  Both searches split into independent subtrees on their first
step, which is what :func:`count_class` hands to worker processes.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .core import Asm, first_row_index
from .errors import IncompatibleSize


class SymmetryClass(str, enum.Enum):
    PLAIN = "plain"
    HALF_TURN = "ht"
    QUARTER_TURN = "qt"
    QUASI_QUARTER_TURN = "qqt"

    @classmethod
    def parse(cls, value: "str | SymmetryClass") -> "SymmetryClass":
        if isinstance(value, SymmetryClass):
            return value
        aliases = {
            "plain": cls.PLAIN,
            "ht": cls.HALF_TURN,
            "halfturn": cls.HALF_TURN,
            "qt": cls.QUARTER_TURN,
            "quarterturn": cls.QUARTER_TURN,
            "qqt": cls.QUASI_QUARTER_TURN,
            "quasiquarterturn": cls.QUASI_QUARTER_TURN,
        }
        key = value.lower().replace("_", "").replace("-", "")
        if key not in aliases:
            raise ValueError(f"unknown symmetry class {value!r}")
        return aliases[key]


def check_size(n: int, cls: SymmetryClass) -> None:
    if n < 1:
        raise IncompatibleSize(f"size must be positive, got {n}")
    if cls is SymmetryClass.QUARTER_TURN and n % 4 != 0:
        raise IncompatibleSize(f"quarter-turn class needs size divisible by 4, got {n}")
    if cls is SymmetryClass.QUASI_QUARTER_TURN and n % 4 != 2:
        raise IncompatibleSize(f"quasi-quarter-turn class needs size = 2 mod 4, got {n}")


# --- closed forms ------------------------------------------------------------


def count_formula_A(n: int) -> int:
    """Number of n x n ASMs by the product formula; ``A(0) = 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    value = Fraction(1)
    for i in range(n):
        value *= Fraction(math.factorial(3 * i + 1), math.factorial(n + i))
    assert value.denominator == 1
    return value.numerator


def recurrence_ratio_A(n: int) -> Fraction:
    """``A(n+1) / A(n) = n! (3n+1)! / ((2n)! (2n+1)!)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    f = math.factorial
    return Fraction(f(n) * f(3 * n + 1), f(2 * n) * f(2 * n + 1))


# --- row search (plain and half-turn) ---------------------------------------


def _row_between(s: int, t: int, n: int) -> tuple[int, ...] | None:
    """The row taking column state ``s`` to ``t``, or None if no valid row does."""
    row = []
    running = 0
    for j in range(n):
        v = ((t >> j) & 1) - ((s >> j) & 1)
        running += v
        if running not in (0, 1):
            return None
        row.append(v)
    return tuple(row) if running == 1 else None


@lru_cache(maxsize=None)
def _rows_from(s: int, n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All valid rows from state ``s`` with their successor states, in lex order."""
    out: list[tuple[tuple[int, ...], int]] = []
    row = [0] * n

    def rec(j: int, running: int, t: int) -> None:
        if j == n:
            if running == 1:
                out.append((tuple(row), t))
            return
        bit = 1 << j
        if running == 0 and not s & bit:
            row[j] = 1
            rec(j + 1, 1, t | bit)
        elif running == 1 and s & bit:
            row[j] = -1
            rec(j + 1, 0, t & ~bit)
        row[j] = 0
        rec(j + 1, running, t)

    rec(0, 0, s)
    out.sort()
    return tuple(out)


def _mirror(s: int, n: int) -> int:
    return int(format(s, f"0{n}b")[::-1], 2)


def _rows_needed(n: int, cls: SymmetryClass) -> int:
    return n if cls is SymmetryClass.PLAIN else n // 2


def _ht_closing_row(s: int, n: int) -> tuple[int, ...] | None:
    """Middle row for odd half-turn ASMs (``()`` when ``n`` is even and ``s`` closes)."""
    full = (1 << n) - 1
    target = full & ~_mirror(s, n)
    if n % 2 == 0:
        return () if s == target else None
    return _row_between(s, target, n)


def _row_search(n: int, cls: SymmetryClass, first: tuple[int, ...] | None) -> Iterator[list[tuple[int, ...]]]:
    depth = _rows_needed(n, cls)
    rows: list[tuple[int, ...]] = []

    def rec(r: int, s: int) -> Iterator[list[tuple[int, ...]]]:
        if r == depth:
            if cls is SymmetryClass.PLAIN:
                yield list(rows)
                return
            middle = _ht_closing_row(s, n)
            if middle is None:
                return
            top = list(rows)
            bottom = [tuple(reversed(row)) for row in reversed(top)]
            yield top + ([middle] if middle else []) + bottom
            return
        for row, t in _rows_from(s, n):
            if r == 0 and first is not None and row != first:
                continue
            rows.append(row)
            yield from rec(r + 1, t)
            rows.pop()

    yield from rec(0, 0)


def _row_count_by_first(n: int, cls: SymmetryClass, first: tuple[int, ...] | None) -> list[int]:
    depth = _rows_needed(n, cls)

    @lru_cache(maxsize=None)
    def completions(r: int, s: int) -> int:
        if r == depth:
            if cls is SymmetryClass.PLAIN:
                return 1
            return int(_ht_closing_row(s, n) is not None)
        return sum(completions(r + 1, t) for _, t in _rows_from(s, n))

    poly = [0] * n
    if depth == 0:
        # size 1 half-turn: the single row is the middle row
        middle = _ht_closing_row(0, n)
        if middle is not None and (first is None or middle == first):
            poly[middle.index(1)] += 1
        return poly
    for row, t in _rows_from(0, n):
        if first is not None and row != first:
            continue
        poly[row.index(1)] += completions(1, t)
    return poly


# --- hook search (quarter-turn and quasi-quarter-turn) ----------------------


def _hook_middles(k: int, h: int, pre: list[int], suf: list[int], quasi: bool) -> list[tuple[int, ...]]:
    """Admissible middles (positions ``k .. n-1-k``) of hook ``k``, lex ordered."""
    p, q = pre[k], suf[k]
    target = 1 - q
    if k == h - 1:
        if quasi:
            # one nonzero among the two centre cells, horizontal central edges
            return [(1 - p, -p)] if p == q else []
        return [(0, 0)] if p == target else []
    later = list(range(k + 1, h))
    out: list[tuple[int, ...]] = []
    mid = [0] * (2 * len(later) + 2)

    def suffix_part(idx: int, s: int) -> None:
        if idx == len(later):
            prefix_part(len(later) - 1, s)
            return
        j = later[idx]
        for v in (-1, 0, 1):
            if v and (s + v not in (0, 1) or suf[j] + v not in (0, 1)):
                continue
            mid[1 + idx] = v
            suffix_part(idx + 1, s + v)

    def prefix_part(idx: int, s: int) -> None:
        if idx < 0:
            if s + mid[0] == target:
                out.append(tuple(mid))
            return
        j = later[idx]
        pos = 1 + len(later) + (len(later) - 1 - idx)
        for v in (-1, 0, 1):
            if v and (s + v not in (0, 1) or pre[j] + v not in (0, 1)):
                continue
            mid[pos] = v
            prefix_part(idx - 1, s + v)

    for x in (-1, 0, 1):
        if p + x not in (0, 1):
            continue
        mid[0] = mid[-1] = x
        suffix_part(0, p + x)
    out.sort()
    return out


def _apply_hook(k: int, h: int, middle: Sequence[int], pre: list[int], suf: list[int], sign: int) -> None:
    later = range(k + 1, h)
    m = len(later)
    for idx, j in enumerate(later):
        suf[j] += sign * middle[1 + idx]
        pre[j] += sign * middle[1 + m + (m - 1 - idx)]


def _fill_hook(mat: list[list[int]], k: int, middle: Sequence[int], quasi: bool) -> None:
    n = len(mat)
    h = n // 2
    if quasi and k == h - 1:
        x, x2 = middle
        mat[k][k] = mat[h][h] = x
        mat[k][h] = mat[h][k] = x2
        return
    for offset, v in enumerate(middle):
        i, j = k, k + offset
        for _ in range(4):
            mat[i][j] = v
            i, j = j, n - 1 - i


def _hook_search(n: int, quasi: bool, first: tuple[int, ...] | None, materialize: bool) -> Iterator[list[list[int]] | None]:
    h = n // 2
    pre = [0] * h
    suf = [0] * h
    mat = [[0] * n for _ in range(n)] if materialize else []

    def rec(k: int) -> Iterator[list[list[int]] | None]:
        if k == h:
            yield mat if materialize else None
            return
        for middle in _hook_middles(k, h, pre, suf, quasi):
            if k == 0 and first is not None and middle != first:
                continue
            _apply_hook(k, h, middle, pre, suf, +1)
            if materialize:
                _fill_hook(mat, k, middle, quasi)
            yield from rec(k + 1)
            _apply_hook(k, h, middle, pre, suf, -1)

    yield from rec(0)


def _hook_count_by_first(n: int, quasi: bool, first: tuple[int, ...] | None) -> list[int]:
    poly = [0] * n
    h = n // 2
    for middle in _hook_middles(0, h, [0] * h, [0] * h, quasi):
        if first is not None and middle != first:
            continue
        # row 0 is exactly the first middle
        col = middle.index(1)
        poly[col] += sum(1 for _ in _hook_search(n, quasi, middle, materialize=False))
    return poly


# --- public API ---------------------------------------------------------------


def partitions(n: int, cls: "SymmetryClass | str") -> list[tuple[int, ...]]:
    """First-step choices; their subtrees partition the search, in output order."""
    cls = SymmetryClass.parse(cls)
    check_size(n, cls)
    if cls in (SymmetryClass.PLAIN, SymmetryClass.HALF_TURN):
        return [row for row, _ in _rows_from(0, n)]
    h = n // 2
    return _hook_middles(0, h, [0] * h, [0] * h, cls is SymmetryClass.QUASI_QUARTER_TURN)


def enumerate_asms(n: int, cls: "SymmetryClass | str" = SymmetryClass.PLAIN, partition: tuple[int, ...] | None = None) -> Iterator[Asm]:
    """Yield every ASM of the class once, in lexicographic order of rows.

    ``partition`` restricts the stream to one element of :func:`partitions`.
    """
    cls = SymmetryClass.parse(cls)
    check_size(n, cls)
    if cls in (SymmetryClass.PLAIN, SymmetryClass.HALF_TURN):
        for rows in _row_search(n, cls, partition):
            yield Asm(n, tuple(rows))
    else:
        quasi = cls is SymmetryClass.QUASI_QUARTER_TURN
        for mat in _hook_search(n, quasi, partition, materialize=True):
            yield Asm(n, tuple(tuple(row) for row in mat))


def _count_part(args: tuple[int, SymmetryClass, tuple[int, ...] | None]) -> list[int]:
    n, cls, first = args
    if cls in (SymmetryClass.PLAIN, SymmetryClass.HALF_TURN):
        return _row_count_by_first(n, cls, first)
    return _hook_count_by_first(n, cls is SymmetryClass.QUASI_QUARTER_TURN, first)


def refined_polynomial(n: int, cls: "SymmetryClass | str" = SymmetryClass.PLAIN, jobs: int = 1) -> list[int]:
    """Coefficient ``k`` counts class members whose row-0 one sits in column ``k``."""
    cls = SymmetryClass.parse(cls)
    check_size(n, cls)
    if jobs <= 1:
        return _count_part((n, cls, None))
    tasks = [(n, cls, first) for first in partitions(n, cls)]
    poly = [0] * n
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_count_part, tasks):
            poly = [a + b for a, b in zip(poly, part)]
    return poly


def count_class(n: int, cls: "SymmetryClass | str" = SymmetryClass.PLAIN, jobs: int = 1) -> int:
    return sum(refined_polynomial(n, cls, jobs))


def refined_polynomial_from_stream(asms: Iterator[Asm], n: int) -> list[int]:
    poly = [0] * n
    for a in asms:
        poly[first_row_index(a)] += 1
    return poly
