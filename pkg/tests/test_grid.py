import itertools
import json
import random
from fractions import Fraction as F

import pytest

from spanlab.grid_cut import (
    Box,
    BoxInclusion,
    IntervalTuple,
    b_variants,
    gamma_inclusion,
    grid,
    grid_monotone,
    grid_tilde,
    interval_tuple_from_json,
    interval_tuple_to_json,
    restrict_tuple,
)
from spanlab.posets import DeltaMorphism
from spanlab.spine_chains import inert_interval


def rand_seq(rng, count):
    a = F(rng.randint(-12, 12), rng.randint(1, 4))
    b = a + F(rng.randint(1, 8), rng.randint(1, 3))
    seq = [(a, b)]
    for _ in range(count - 1):
        if rng.random() < 0.25:
            seq.append(seq[-1])
            continue
        a = seq[-1][0] + F(rng.randint(0, 6), rng.randint(1, 3))
        b = max(seq[-1][1], a) + F(rng.randint(1, 6), rng.randint(1, 3))
        seq.append((a, b))
    return tuple(seq)


def rand_tuple(rng, shape):
    return IntervalTuple(tuple(rand_seq(rng, j + 1) for j in shape))


def test_box_variant_worked_values():
    hull, half, third = b_variants([(0, 2), (4, 6)])
    assert hull == (F(0), F(6))
    assert half == (F(1), F(5))
    assert third == (F(2, 3), F(16, 3))
    assert b_variants([(0, 1)])[1] == (F(1, 2), F(1, 2))
    assert b_variants([(0, 1), (0, 1)])[1] == (F(1, 2), F(1, 2))


def test_grid_worked_values():
    itup = IntervalTuple((((0, 2), (4, 6), (8, 10)),))
    assert grid(itup, (inert_interval(0, 1, 2),)) == Box(((F(1), F(5)),))
    assert grid(itup, (inert_interval(0, 2, 2),)) == Box(((F(1), F(9)),))
    point = grid(itup, (inert_interval(1, 1, 2),))
    assert point == Box(((F(5), F(5)),))
    assert point.is_point()
    assert grid_tilde(itup, (inert_interval(0, 1, 2),)) == \
        Box(((F(2, 3), F(16, 3)),))


def test_box_variant_formulas_on_random_sequences():
    rng = random.Random(3)
    for _ in range(60):
        seq = rand_seq(rng, rng.randint(1, 5))
        hull, half, third = b_variants(seq)
        (a0, b0), (ak, bk) = seq[0], seq[-1]
        assert hull == (a0, bk)
        assert half == ((a0 + b0) / 2, (ak + bk) / 2)
        assert third == ((2 * a0 + b0) / 3, (ak + 2 * bk) / 3)
        assert hull[0] < third[0] < half[0] <= half[1] < third[1] < hull[1]


def test_grid_monotone_exhaustively():
    rng = random.Random(4)
    pairs = 0
    for shape in [(3,), (1, 2), (3, 3)]:
        for _ in range(2):
            itup = rand_tuple(rng, shape)
            per_dir = [[(a, b) for a in range(jm + 1) for b in range(a, jm + 1)]
                       for jm in shape]
            objs = list(itertools.product(*per_dir))
            for o1 in objs:
                for o2 in objs:
                    if not all(a2 <= a1 and b1 <= b2
                               for (a1, b1), (a2, b2) in zip(o1, o2)):
                        continue
                    xi1 = tuple(inert_interval(a, b, jm)
                                for (a, b), jm in zip(o1, shape))
                    xi2 = tuple(inert_interval(a, b, jm)
                                for (a, b), jm in zip(o2, shape))
                    w = grid_monotone(itup, xi1, xi2)
                    assert w.larger.contains(w.smaller)
                    pairs += 1
    assert pairs == 2 * (100 + 3 * 21 + 100 * 100)


def test_gamma_inclusion_is_strict_everywhere():
    rng = random.Random(5)
    for shape in [(2,), (1, 3)]:
        itup = rand_tuple(rng, shape)
        per_dir = [[(a, b) for a in range(jm + 1) for b in range(a, jm + 1)]
                   for jm in shape]
        for o in itertools.product(*per_dir):
            xi = tuple(inert_interval(a, b, jm) for (a, b), jm in zip(o, shape))
            g = gamma_inclusion(itup, xi)
            assert g.larger.contains(g.smaller)
            assert grid_tilde(itup, xi).strictly_contains(grid(itup, xi))


def test_identity_morphism_gives_equality():
    rng = random.Random(6)
    itup = rand_tuple(rng, (2, 3))
    xi = (inert_interval(0, 2, 2), inert_interval(1, 3, 3))
    w = grid_monotone(itup, xi, xi)
    assert w.smaller == w.larger


def test_active_injective_invariance():
    rng = random.Random(7)
    for _ in range(25):
        shape = rng.choice([(2,), (3,), (2, 3)])
        itup = rand_tuple(rng, shape)
        xi, alphas = [], []
        for jm in shape:
            a = rng.randint(0, jm)
            b = rng.randint(a, jm)
            xi.append(inert_interval(a, b, jm))
            m = b - a
            if m == 0:
                alphas.append(DeltaMorphism.identity(0))
            else:
                mid = sorted(rng.sample(range(1, m), rng.randint(0, m - 1)))
                vals = tuple([0] + mid + [m])
                alphas.append(DeltaMorphism(len(vals) - 1, m, vals))
        xi = tuple(xi)
        xia = tuple(p.compose(al) for p, al in zip(xi, alphas))
        assert grid(itup, xia) == grid(itup, xi)
        assert grid_tilde(itup, xia) == grid_tilde(itup, xi)


def test_duplicating_selectors_are_legal():
    itup = IntervalTuple((((0, 2), (4, 6), (8, 10)),))
    dup = DeltaMorphism(3, 2, (0, 1, 1, 2))
    assert grid(itup, (dup,)) == grid(itup, (DeltaMorphism.identity(2),))


def test_shape_direction_naturality():
    rng = random.Random(8)
    for _ in range(30):
        j = rng.randint(1, 4)
        i = rng.randint(0, j)
        itup = rand_tuple(rng, (j,))
        psi = DeltaMorphism(i, j, tuple(sorted(rng.choices(range(j + 1),
                                                           k=i + 1))))
        sub = restrict_tuple(itup, (psi,))
        a = rng.randint(0, i)
        b = rng.randint(a, i)
        sel = inert_interval(a, b, i)
        assert grid(sub, (sel,)) == grid(itup, (psi.compose(sel),))
        assert grid_tilde(sub, (sel,)) == grid_tilde(itup, (psi.compose(sel),))


def test_validation_errors():
    with pytest.raises(ValueError):
        IntervalTuple((((0, 0),),))
    with pytest.raises(ValueError):
        IntervalTuple((((4, 6), (0, 2)),))
    with pytest.raises(ValueError):
        grid(IntervalTuple((((0, 1),),)), (inert_interval(0, 1, 2),))
    with pytest.raises(ValueError):
        grid_monotone(IntervalTuple((((0, 1), (2, 3)),)),
                      (inert_interval(0, 1, 1),), (inert_interval(1, 1, 1),))
    with pytest.raises(ValueError):
        grid(IntervalTuple((((0, 1),),)), (DeltaMorphism.identity(0),),
             tau=DeltaMorphism(1, 1, (0, 1)))
    with pytest.raises(ValueError):
        Box(((1, 0),))
    with pytest.raises(RuntimeError):
        BoxInclusion(Box(((0, 3),)), Box(((1, 2),)))


def test_json_roundtrip():
    itup = IntervalTuple((((F(1, 2), F(5, 2)), (3, 4)), ((0, 1),)))
    text = interval_tuple_to_json(itup)
    assert json.loads(text) == [[["1/2", "5/2"], ["3", "4"]], [["0", "1"]]]
    assert interval_tuple_from_json(text) == itup
