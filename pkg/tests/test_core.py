import random

import pytest
from hypothesis import given, strategies as st

from fplkit.core import (
    Fpl,
    asm_from_text,
    asm_to_fpl,
    asm_to_text,
    boundary_half_edges,
    canonical_boundary,
    center_square,
    classify_symmetry,
    count_loops,
    first_row_index,
    fpl_to_asm,
    grid_edges,
    rotate_half,
    rotate_quarter,
    validate_asm,
    validate_fpl,
)
from fplkit.enumeration import SymmetryClass, enumerate_asms
from fplkit.errors import AlternationViolated, EntryOutOfRange, InvalidFpl, NotSquare
from figure_data import figure_fpl

ALL_SMALL = {n: list(enumerate_asms(n)) for n in range(1, 6)}


def test_validate_examples():
    assert validate_asm([[1]]).n == 1
    assert validate_asm([[0, 1], [1, 0]]).entries == ((0, 1), (1, 0))
    with pytest.raises(AlternationViolated) as info:
        validate_asm([[1, -1], [0, 1]])
    assert info.value.kind == "row" and info.value.index == 0


def test_validate_rejections():
    with pytest.raises(NotSquare):
        validate_asm([[1, 0]])
    with pytest.raises(NotSquare):
        validate_asm([])
    with pytest.raises(EntryOutOfRange):
        validate_asm([[2]])
    with pytest.raises(AlternationViolated) as info:
        validate_asm([[1, 0], [1, 0]])
    assert info.value.kind == "column"
    with pytest.raises(AlternationViolated):
        validate_asm([[0, 1, 0], [1, -1, 1], [0, 1, -1]])


def test_text_round_trip():
    a = validate_asm([[0, 1, 0], [1, -1, 1], [0, 1, 0]])
    assert asm_to_text(a) == "0+0\n+-+\n0+0"
    assert asm_from_text(asm_to_text(a)) == a
    with pytest.raises(EntryOutOfRange):
        asm_from_text("x")


def test_first_row_index():
    assert first_row_index(validate_asm([[1]])) == 0
    assert first_row_index(validate_asm([[0, 1], [1, 0]])) == 1
    assert first_row_index(validate_asm([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 0


def test_size_one_fpl():
    f = asm_to_fpl(validate_asm([[1]]))
    assert f.internal_edges == frozenset()
    assert f.boundary_edges == {((0, 0), "W"), ((0, 0), "E")}
    assert fpl_to_asm(f).entries == ((1,),)


def test_boundary_convention_top_left_in():
    for n in range(1, 8):
        b = canonical_boundary(n)
        assert ((0, 0), "W") in b
        assert len(b) == 2 * n
        assert b <= boundary_half_edges(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_round_trip_exhaustive(n):
    for a in ALL_SMALL[n]:
        f = asm_to_fpl(a)
        validate_fpl(f)
        assert fpl_to_asm(f) == a


def test_round_trip_random_larger():
    rng = random.Random(7)
    asms = list(enumerate_asms(7))
    for a in rng.sample(asms, 300):
        assert fpl_to_asm(validate_fpl(asm_to_fpl(a))) == a


def test_fpl_to_asm_rejects_garbage():
    f = asm_to_fpl(validate_asm([[0, 1], [1, 0]]))
    broken = Fpl(2, frozenset(), f.boundary_edges)
    with pytest.raises(InvalidFpl):
        validate_fpl(broken)
    with pytest.raises(InvalidFpl):
        fpl_to_asm(Fpl(3, grid_edges(3), canonical_boundary(3)))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_rotation_group_laws(n):
    fpls = [asm_to_fpl(a) for a in ALL_SMALL[n]]
    images = set()
    for f in fpls:
        r = rotate_quarter(f)
        validate_fpl(r)
        images.add(r)
        assert rotate_quarter(rotate_quarter(rotate_quarter(r))) == f
        if n % 2 == 0:
            assert rotate_quarter(r) == rotate_half(f)
    assert len(images) == len(fpls)


def test_half_turn_flag_size_two():
    for a in ALL_SMALL[2]:
        assert classify_symmetry(asm_to_fpl(a)).half_turn


def test_figure_example():
    f = validate_fpl(figure_fpl())
    flags = classify_symmetry(f)
    assert flags.half_turn and flags.quasi_quarter_turn and not flags.quarter_turn
    a = fpl_to_asm(f)
    centre = [a.entries[i][j] for i in (4, 5) for j in (4, 5)]
    assert centre.count(0) == 2


def test_vertical_centre_edges_are_not_quasi():
    for a in enumerate_asms(6, SymmetryClass.QUASI_QUARTER_TURN):
        f = asm_to_fpl(a)
        flipped = Fpl(6, f.internal_edges ^ frozenset(center_square(6)), f.boundary_edges)
        validate_fpl(flipped)
        flags = classify_symmetry(flipped)
        assert flags.half_turn and not flags.quasi_quarter_turn


def test_quarter_turn_example_size_eight():
    f = asm_to_fpl(next(enumerate_asms(8, SymmetryClass.QUARTER_TURN)))
    assert rotate_quarter(f) == f


@pytest.mark.parametrize("n", [4, 5, 6])
def test_flag_invariants(n):
    for a in enumerate_asms(n):
        flags = classify_symmetry(asm_to_fpl(a))
        if flags.quarter_turn or flags.quasi_quarter_turn:
            assert flags.half_turn
        assert not (flags.quarter_turn and flags.quasi_quarter_turn)
        if flags.quarter_turn:
            assert n % 4 == 0
        if flags.quasi_quarter_turn:
            assert n % 4 == 2


def test_quasi_asm_characterisation():
    # quarter-turn invariant except at the centre, whose entries follow the half-turn rule
    for n in (6, 10):
        for a in enumerate_asms(n, SymmetryClass.QUASI_QUARTER_TURN):
            m = a.entries
            c = n // 2 - 1
            centre = {(c, c), (c, c + 1), (c + 1, c), (c + 1, c + 1)}
            for i in range(n):
                for j in range(n):
                    assert m[i][j] == m[n - 1 - i][n - 1 - j]
                    if (i, j) not in centre:
                        assert m[i][j] == m[n - 1 - j][i]
            assert [m[i][j] for i, j in sorted(centre)].count(0) == 2


def test_count_loops():
    # the transcribed figure has four closed polylines
    assert count_loops(figure_fpl()) == 4
    assert count_loops(asm_to_fpl(validate_asm([[1]]))) == 0


@given(st.integers(min_value=0, max_value=428))
def test_round_trip_property(k):
    a = ALL_SMALL[5][k]
    assert fpl_to_asm(asm_to_fpl(a)) == a
