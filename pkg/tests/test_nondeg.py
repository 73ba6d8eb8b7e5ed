import random

import pytest

from spanlab.complexes import (ChainMap, Diagram, RationalComplex,
                               constant_diagram, holim, homology,
                               is_limit_cone)
from spanlab.posets import sp_poset, sp_product_poset, split_tuple_label, tuple_label
from spanlab.randgen import (indicator_diagram, random_fold_shape_instance,
                             random_fold_terminal_instance,
                             random_uple_instance)
from spanlab.span_nondeg import (FoldSpanDiagram, UpleSpanDiagram,
                                 degeneracy_stability, diagram_from_json,
                                 diagram_to_json, fold_shape_poset,
                                 fold_terminal_poset, fold_to_uple,
                                 nondeg_boundary, nondeg_fold,
                                 nondeg_iterated, nondeg_one_axis,
                                 nondeg_stable_square, nondeg_uple,
                                 stable_square_verdict, top_chain_weights,
                                 tw_j_functor, uple_initial, uple_terminal,
                                 uple_twisted)
from spanlab.twisted import dual_label, is_dual_label, undual_label

V = RationalComplex.concentrated(0)


def hdims(c):
    return {n: d for n, d in sorted(homology(c).items()) if d}


def honest_constant(n):
    return UpleSpanDiagram(n, constant_diagram(uple_twisted(n).poset, V))


def split_constant(n):
    """V everywhere, identities inside each copy, zero on mixed arrows."""
    tw = uple_twisted(n)
    objects = {x: V for x in tw.poset.elements}
    arrows = {}
    for a, b in tw.poset.leq:
        if is_dual_label(a) == is_dual_label(b):
            arrows[(a, b)] = ChainMap.identity(V)
        else:
            arrows[(a, b)] = ChainMap.zero_map(V, V)
    return UpleSpanDiagram(n, Diagram(tw.poset, objects, arrows))


def proper_duals(n):
    return [x for x in uple_twisted(n).poset.elements
            if is_dual_label(x) and undual_label(x) != uple_initial(n)]


# ---------------------------------------------------------------- shapes


def test_uple_shape_validation():
    with pytest.raises(ValueError):
        UpleSpanDiagram(2, constant_diagram(sp_product_poset(2), V))


def test_fold_shape_poset_counts():
    for n in (1, 2, 3):
        p = fold_shape_poset(n)
        assert len(p.elements) == 2 * (2 * n + 1)
        # duals are order-reversed plains
        base = sp_poset(n)
        for a in base.elements:
            for b in base.elements:
                assert p.le(dual_label(b), dual_label(a)) == base.le(a, b)
                assert p.le(a, dual_label(b)) == bool(base.upper_bounds(a, b))
                assert not p.le(dual_label(a), b)


def test_tw_j_functor_is_monotone_and_surjective():
    f = tw_j_functor(2)
    assert set(f.as_dict.values()) == set(fold_shape_poset(2).elements)


# ---------------------------------------------------------------- constants


def test_honest_constant_is_nondegenerate():
    for n in (1, 2):
        phi = honest_constant(n)
        assert nondeg_uple(phi) is True
        assert nondeg_stable_square(phi) is True
        assert nondeg_boundary(phi) is True


def test_split_constant_fails_with_known_holim():
    expected = {1: {0: 2, 1: 1}, 2: {0: 1, 1: 1, 2: 1}}
    for n in (1, 2):
        phi = split_constant(n)
        assert nondeg_uple(phi) is False
        assert nondeg_stable_square(phi) is False
        assert nondeg_boundary(phi) is False
        circ = [x for x in phi.diagram.poset.elements if x != uple_initial(n)]
        res = holim(phi.diagram.restrict(circ))
        assert hdims(res.complex) == expected[n]


def test_zero_diagram_is_nondegenerate():
    zero = RationalComplex.zero()
    phi = UpleSpanDiagram(2, constant_diagram(uple_twisted(2).poset, zero))
    assert nondeg_uple(phi) is True
    assert nondeg_stable_square(phi) is True
    assert nondeg_iterated(constant_diagram(fold_terminal_poset(2), zero)) is True


# ---------------------------------------------------------------- generator


def test_random_uple_instances_match_construction():
    for n in (1, 2):
        for seed in range(3):
            rng = random.Random(1000 * n + seed)
            phi, expected = random_uple_instance(n, rng,
                                                 corrupt=(seed % 2 == 1))
            assert nondeg_uple(phi) == expected


def test_random_uple_instances_dual_supports():
    pool = proper_duals(2)
    for seed in range(3):
        rng = random.Random(7000 + seed)
        phi, expected = random_uple_instance(2, rng, corrupt=(seed % 2 == 1),
                                             support_pool=pool)
        assert nondeg_uple(phi) == expected
        assert nondeg_boundary(phi) is True


def test_full_support_instance():
    rng = random.Random(42)
    phi, expected = random_uple_instance(2, rng, summands=1, max_total=2,
                                         support_pool=[uple_terminal(2)])
    assert expected is True and nondeg_uple(phi) is True


# ---------------------------------------------------------------- criteria


def test_three_criteria_agree_on_fold_terminal_shapes():
    for n in (1, 2):
        for seed in range(4):
            rng = random.Random(3000 * n + seed)
            diag, expected = random_fold_terminal_instance(
                n, rng, corrupt=(seed % 2 == 1))
            sp_elems = [x for x in diag.poset.elements if x != "+inf"]
            assert nondeg_iterated(diag) == expected
            assert is_limit_cone(diag, "-inf")[0] == expected
            assert stable_square_verdict(diag, "-inf", sp_elems, "+inf") == expected


def test_three_criteria_agree_n3():
    for seed in range(2):
        rng = random.Random(9000 + seed)
        diag, expected = random_fold_terminal_instance(3, rng,
                                                       corrupt=(seed == 1))
        sp_elems = [x for x in diag.poset.elements if x != "+inf"]
        assert nondeg_iterated(diag) == expected
        assert is_limit_cone(diag, "-inf")[0] == expected
        assert stable_square_verdict(diag, "-inf", sp_elems, "+inf") == expected


def test_fold_shape_routes_agree():
    for seed in range(3):
        rng = random.Random(4000 + seed)
        fold, expected = random_fold_shape_instance(2, rng,
                                                    corrupt=(seed % 2 == 1))
        assert nondeg_fold(fold) == expected


def test_fold_to_uple_pullback_preserves_values():
    rng = random.Random(4100)
    fold, _ = random_fold_shape_instance(2, rng)
    phi = fold_to_uple(fold)
    m = tw_j_functor(2).as_dict
    for x in phi.diagram.poset.elements:
        assert phi.diagram.objects[x] is fold.diagram.objects[m[x]]


# ---------------------------------------------------------------- boundary


def test_boundary_fails_at_plain_corner_indicator():
    tw = uple_twisted(2)
    corner = tuple_label(("A1", "A1"))
    phi = UpleSpanDiagram(2, indicator_diagram(tw.poset, corner, V))
    assert nondeg_boundary(phi) is False


def test_boundary_holds_for_dual_indicators():
    tw = uple_twisted(2)
    for z in proper_duals(2)[:3]:
        phi = UpleSpanDiagram(2, indicator_diagram(tw.poset, z, V))
        assert nondeg_boundary(phi) is True


def tensor_uple(phi1, phi2):
    """External tensor of two 1-axis diagrams into a 2-axis diagram."""
    tw = uple_twisted(2)

    def comps(x):
        if is_dual_label(x):
            a, b = split_tuple_label(undual_label(x))
            return dual_label(tuple_label((a,))), dual_label(tuple_label((b,)))
        a, b = split_tuple_label(x)
        return tuple_label((a,)), tuple_label((b,))

    objects, arrows = {}, {}
    for x in tw.poset.elements:
        c1, c2 = comps(x)
        objects[x] = phi1.diagram.objects[c1].tensor(phi2.diagram.objects[c2])
    for a, b in tw.poset.leq:
        a1, a2 = comps(a)
        b1, b2 = comps(b)
        arrows[(a, b)] = phi1.diagram.arrows[(a1, b1)].tensor(
            phi2.diagram.arrows[(a2, b2)])
    return UpleSpanDiagram(2, Diagram(tw.poset, objects, arrows))


def test_tensor_of_boundary_nondegenerate_factors():
    duals1 = [x for x in uple_twisted(1).poset.elements if is_dual_label(x)]
    rng = random.Random(5100)
    p1, _ = random_uple_instance(1, rng, support_pool=duals1)
    p2, _ = random_uple_instance(1, rng, support_pool=duals1)
    tens = tensor_uple(p1, p2)
    assert nondeg_boundary(tens) is True
    assert nondeg_uple(tens) is True


def test_tensor_inherits_degenerate_corner():
    duals1 = [x for x in uple_twisted(1).poset.elements if is_dual_label(x)]
    p2, _ = random_uple_instance(1, random.Random(5102), support_pool=duals1)
    p3, _ = random_uple_instance(1, random.Random(5101),
                                 support_pool=[tuple_label(("A1",))])
    assert nondeg_boundary(p3) is False
    assert nondeg_boundary(tensor_uple(p3, p2)) is False


# ---------------------------------------------------------------- one-axis


def test_one_axis_agrees_with_direct_verdict():
    pool = proper_duals(2)
    cases = [(honest_constant(2), True)]
    for seed in range(2):
        rng = random.Random(6000 + seed)
        cases.append(random_uple_instance(2, rng, support_pool=pool))
    rng = random.Random(6100)
    cases.append(random_uple_instance(2, rng, corrupt=True, support_pool=pool))
    for phi, expected in cases:
        assert nondeg_uple(phi) == expected
        assert nondeg_one_axis(phi) == expected


def test_one_axis_needs_two_axes():
    with pytest.raises(ValueError):
        nondeg_one_axis(honest_constant(1))


# ---------------------------------------------------------------- degeneracy


def test_degeneracy_stability_outputs_pass():
    rng = random.Random(7100)
    phi, _ = random_uple_instance(1, rng)
    for j in (1, 2):
        out = degeneracy_stability(phi, j)
        assert out.n == 2
        assert nondeg_uple(out) is True


def test_degeneracy_stability_two_to_three():
    plains2 = [x for x in sp_product_poset(2).elements if x != uple_initial(2)]
    rng = random.Random(7200)
    phi, _ = random_uple_instance(2, rng, support_pool=plains2)
    out = degeneracy_stability(phi, 2)
    assert out.n == 3
    assert nondeg_uple(out) is True


def test_degeneracy_stability_axis_range():
    phi = honest_constant(1)
    with pytest.raises(ValueError):
        degeneracy_stability(phi, 3)


# ---------------------------------------------------------------- weights


def test_top_chain_weights_one_level():
    p = sp_poset(1)
    w = top_chain_weights(p.subposet([x for x in p.elements if x != "-inf"]))
    assert w == {("A1",): 1, ("B1",): -1}


def test_top_chain_weights_product_two():
    p = sp_product_poset(2)
    w = top_chain_weights(p.subposet([x for x in p.elements
                                      if x != uple_initial(2)]))
    assert len(w) == 8
    assert all(v in (1, -1) for v in w.values())
    # weights orient the circle: each top cell's two facets get opposite signs
    tops = {}
    for (mid, top), v in w.items():
        tops.setdefault(top, []).append(v)
    assert all(sorted(vs) == [-1, 1] for vs in tops.values())


# ---------------------------------------------------------------- io


def test_diagram_json_roundtrip():
    rng = random.Random(8000)
    phi, expected = random_uple_instance(2, rng, support_pool=proper_duals(2))
    text = diagram_to_json(phi.diagram)
    back = diagram_from_json(text)
    assert diagram_to_json(back) == text
    assert nondeg_uple(UpleSpanDiagram(2, back)) == expected
