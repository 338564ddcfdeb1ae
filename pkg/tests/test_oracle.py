from __future__ import annotations

import itertools
import random

import pytest

from coloursat.lattice import BULK, DOWN, UP, dual_distance, face_vertices, matchable
from coloursat.oracle import (
    CnfFormula,
    PreconditionError,
    brute_force_sat,
    dpll_sat,
    enumerate_exact_covers,
    evaluate,
    exact_cover,
    min_weight_decode,
)
from coloursat.syndrome import ErrorSet, Syndrome, generate_syndrome, is_separated


def test_exact_cover_empty():
    assert exact_cover(Syndrome()) == ErrorSet()


def test_exact_cover_single_defect_impossible():
    assert exact_cover(Syndrome([(0, 0)])) is None


def test_exact_cover_rejects_unseparated():
    with pytest.raises(PreconditionError):
        exact_cover(Syndrome([(0, 0), (1, 0)]))


def test_exact_cover_matched_pair():
    s = Syndrome([(0, 0), (1, 1)])
    cover = exact_cover(s)
    assert cover is not None
    assert len(cover) == 2
    assert generate_syndrome(cover) == s


def test_enumerate_matched_pair_single_component():
    s = Syndrome([(0, 0), (1, 1)])
    covers, truncated = enumerate_exact_covers(s)
    assert not truncated
    assert covers, "matched pair must be coverable"
    for cover in covers:
        assert generate_syndrome(cover) == s
        assert len(cover) == 2


def test_enumerate_empty_syndrome():
    covers, truncated = enumerate_exact_covers(Syndrome())
    assert covers == [ErrorSet()]
    assert not truncated


def test_exact_cover_three_colour_triple():
    # Syndrome of the pinwheel around Up(0,0): one defect of each colour.
    pin = ErrorSet([(0, 0, DOWN), (-1, 0, DOWN), (0, -1, DOWN)])
    s = generate_syndrome(pin)
    cover = exact_cover(s)
    assert cover is not None
    assert len(cover) == 3
    assert generate_syndrome(cover) == s


def _min_weight_brute(s: Syndrome, radius: int, cap: int):
    """Exhaustive subset search over candidate faces, independent of the solver."""
    cand = set()
    for d in s.defects:
        for dq in range(-radius - 1, radius + 2):
            for dr in range(-radius - 1, radius + 2):
                for o in (0, 1):
                    f = (d[0] + dq, d[1] + dr, o)
                    if any(dual_distance(v, d) <= radius for v in face_vertices(f)):
                        cand.add(f)
    cand = sorted(cand)
    for w in range(cap + 1):
        for combo in itertools.combinations(cand, w):
            if generate_syndrome(ErrorSet(combo)) == s:
                return w
    return None


def test_min_weight_single_face_syndrome():
    s = generate_syndrome(ErrorSet([(0, 0, UP)]))
    res = min_weight_decode(s, cap=3, region_radius=2)
    assert res is not None and res.weight == 1 and res.logical_flip == 1


def test_min_weight_matched_pair_weight_two():
    s = Syndrome([(0, 0), (1, 1)])
    res = min_weight_decode(s, cap=3, region_radius=2)
    assert res is not None and res.weight == 2
    # brute force: no single face generates it
    assert _min_weight_brute(s, 2, 2) == 2


def test_min_weight_triple_weight_three():
    pin = ErrorSet([(0, 0, DOWN), (-1, 0, DOWN), (0, -1, DOWN)])
    s = generate_syndrome(pin)
    res = min_weight_decode(s, cap=4, region_radius=2)
    assert res is not None and res.weight == 3 and res.logical_flip == 1
    assert _min_weight_brute(s, 2, 3) == 3


def test_min_weight_separated_lower_bound_random():
    rng = random.Random(11)
    for _ in range(40):
        k = rng.randint(1, 4)
        nodes = set()
        while len(nodes) < k:
            cand = (rng.randint(-4, 4), rng.randint(-4, 4))
            if all(dual_distance(cand, n) >= 2 for n in nodes):
                nodes.add(cand)
        s = Syndrome(nodes)
        res = min_weight_decode(s, cap=len(s) + 2, region_radius=3)
        if res is not None:
            assert res.weight >= len(s)
            # agreement with exact cover at weight |S|
            if res.weight == len(s):
                assert exact_cover(s) is not None
            else:
                assert exact_cover(s) is None


def test_determinism():
    s = Syndrome([(0, 0), (1, 1), (4, -2), (5, -1)])
    a = exact_cover(s)
    b = exact_cover(s)
    assert a == b
    ra = min_weight_decode(s, cap=6, region_radius=3)
    rb = min_weight_decode(s, cap=6, region_radius=3)
    assert ra == rb


# --- DPLL ------------------------------------------------------------------


def test_dpll_unit():
    f = CnfFormula(1, ((1,),))
    res = dpll_sat(f)
    assert res == {1: True}


def test_dpll_contradiction():
    f = CnfFormula(1, ((1,), (-1,)))
    assert dpll_sat(f) is None


def test_dpll_example_formula():
    # (X1 v -X2 v X4) & (X2 v X3 v X5) & (-X2 v -X3 v -X4)
    f = CnfFormula(5, ((1, -2, 4), (2, 3, 5), (-2, -3, -4)))
    res = dpll_sat(f)
    assert res is not None and evaluate(f, res)


def test_dpll_agrees_with_truth_table():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 4)
        m = rng.randint(1, 6)
        clauses = []
        for _ in range(m):
            clause = tuple(
                rng.choice([1, -1]) * rng.randint(1, n) for _ in range(3)
            )
            clauses.append(clause)
        f = CnfFormula(n, tuple(clauses))
        got = dpll_sat(f)
        want = brute_force_sat(f)
        assert (got is None) == (want is None)
        if got is not None:
            assert evaluate(f, got)
