from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coloursat.lattice import BULK, UP, DOWN, colour_of, face_vertices
from coloursat.syndrome import (
    ErrorSet,
    Syndrome,
    colour_counts,
    colour_parity_ok,
    diameter,
    error_components,
    format_errors,
    format_syndrome,
    generate_syndrome,
    is_separated,
    parse_errors,
    parse_syndrome,
)

FIG2_PAIR = ErrorSet([(0, 0, UP), (0, 0, DOWN)])  # two faces sharing an edge


def test_generate_empty():
    assert generate_syndrome(ErrorSet()) == Syndrome()


def test_single_bulk_face_triggers_three():
    s = generate_syndrome(ErrorSet([(2, 3, UP)]))
    assert s.defects == tuple(sorted(face_vertices((2, 3, UP))))


def test_edge_sharing_pair_cancels():
    s = generate_syndrome(FIG2_PAIR)
    assert s == Syndrome([(0, 0), (1, 1)])
    assert {colour_of(d) for d in s} == {colour_of((0, 0))}


def test_is_separated():
    assert is_separated(Syndrome())
    assert is_separated(Syndrome([(0, 0), (1, 1)]))
    assert not is_separated(Syndrome([(0, 0), (1, 0)]))


def test_error_components():
    assert error_components(ErrorSet()) == []
    assert len(error_components(FIG2_PAIR)) == 1
    far = ErrorSet([(0, 0, UP), (5, 5, UP)])
    assert len(error_components(far)) == 2


def test_colour_parity_examples():
    assert colour_parity_ok(FIG2_PAIR)
    pinwheel = ErrorSet([(0, 0, DOWN), (-1, 0, DOWN), (0, -1, DOWN)])
    s = generate_syndrome(pinwheel)
    counts = colour_counts(s)
    assert sorted(counts.values()) == [1, 1, 1]
    assert colour_parity_ok(pinwheel)
    assert colour_parity_ok(ErrorSet())


def test_diameter():
    with pytest.raises(ValueError):
        diameter(Syndrome())
    assert diameter(Syndrome([(4, 2)])) == 0
    assert diameter(Syndrome([(0, 0), (1, 1)])) == 2
    assert diameter(generate_syndrome(ErrorSet([(0, 0, UP)]))) == 1


@st.composite
def error_sets(draw):
    n = draw(st.integers(0, 8))
    faces = [
        (draw(st.integers(-5, 5)), draw(st.integers(-5, 5)), draw(st.integers(0, 1)))
        for _ in range(n)
    ]
    return ErrorSet(faces)


@given(error_sets(), error_sets())
@settings(max_examples=120, deadline=None)
def test_generate_is_symdiff_homomorphism(e1, e2):
    lhs = generate_syndrome(e1.symmetric_difference(e2))
    rhs = generate_syndrome(e1).symmetric_difference(generate_syndrome(e2))
    assert lhs == rhs


@given(error_sets())
@settings(max_examples=120, deadline=None)
def test_bulk_colour_totals_share_parity(e):
    counts = colour_counts(generate_syndrome(e))
    assert len({c % 2 for c in counts.values()}) == 1


def test_file_roundtrip():
    s = Syndrome([(0, 0), (3, -2), (-1, 5)])
    assert parse_syndrome(format_syndrome(s)) == s
    e = ErrorSet([(0, 0, UP), (2, -3, DOWN)])
    assert parse_errors(format_errors(e)) == e


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_syndrome("not a header\nnode 0 0\n")
    with pytest.raises(ValueError):
        parse_errors("colour-errors v1\nface 0 0 X\n")
