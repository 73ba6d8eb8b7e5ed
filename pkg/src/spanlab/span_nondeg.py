"""Non-degeneracy criteria for iterated span diagrams of rational complexes.

An n-uple span diagram assigns complexes to the doubled product shape
(`tw_shriek_poset` of the n-fold product of the one-level fold shape): a plain
copy of the product poset, a reversed dual copy, and mixed relations
``x <= y^v`` whenever x and y share an upper bound.  The diagram is
*non-degenerate* when its value at the initial element (the all"-inf" plain
tuple) is exhibited as the homotopy limit of the rest of the diagram.

The module computes this verdict along several independent routes and
cross-checks them against each other at runtime:

* ``nondeg_uple``          -- totalization over the full punctured doubled
                              shape, and the equivalent restriction to the
                              plain copy with the terminal dual appended; the
                              two verdicts must agree.
* ``nondeg_iterated``      -- tower of homotopy pullbacks over the levels of
                              the fold shape with a terminal element adjoined.
* ``nondeg_stable_square`` -- cartesianness of the square whose right edge
                              maps the punctured plain limit to the shifted
                              terminal value via top-chain weights.
* ``nondeg_boundary``      -- every proper-face restriction (axes frozen at
                              A1/B1) is non-degenerate; cross-checked against
                              the pointwise form that each plain value is the
                              limit of the duals above it.
* ``nondeg_one_axis``      -- split off the first axis and compute nested
                              homotopy limits over the remaining axes.
* ``degeneracy_stability`` -- pull a diagram back along an axis projection.

Fold-shaped diagrams (``FoldSpanDiagram``) live on the doubled fold shape
``fold_shape_poset(n)``; the doubled shape of the fold poset is genuinely not
a poset for n >= 2 (parallel pairs of mixed arrows appear), so this module
uses its poset reflection, which identifies each parallel pair.  Strict
diagrams cannot distinguish the two arrows anyway, and every diagram obtained
by pullback from the doubled product shape sends them to equal maps; the
restriction is recorded as a model decision.  Fold non-degeneracy is computed
both directly and through the pullback along the doubled collapse functor,
and the two verdicts are required to agree.
"""

from __future__ import annotations

import itertools
import json

from ._linalg import Mat, Q, nullspace, primitive_integer_vector
from .complexes import (ChainMap, Diagram, RationalComplex,
                        comparison_into_holim, complex_of_semisimplicial,
                        holim, hpb, is_limit_cone, map_into_fiber,
                        map_into_hpb, _mat_from_entries)
from .posets import (FunctorBetweenPosets, Poset, nerve, sp_poset,
                     sp_product_initial, sp_product_poset, split_tuple_label,
                     tuple_label, j_label)
from .twisted import TwistedPoset, dual_label, is_dual_label, tw_shriek_poset, undual_label

_UPLE_CACHE: dict[int, TwistedPoset] = {}


def uple_twisted(n: int) -> TwistedPoset:
    """Doubled n-fold product shape (plain copy, dual copy, mixed relations)."""
    if n not in _UPLE_CACHE:
        _UPLE_CACHE[n] = tw_shriek_poset(sp_product_poset(n))
    return _UPLE_CACHE[n]


def uple_initial(n: int) -> str:
    return sp_product_initial(n)


def uple_terminal(n: int) -> str:
    return dual_label(sp_product_initial(n))


class UpleSpanDiagram:
    """A strict diagram over the doubled n-fold product shape."""

    def __init__(self, n: int, diagram: Diagram):
        tw = uple_twisted(n)
        if set(diagram.poset.elements) != set(tw.poset.elements) or \
                diagram.poset.leq != tw.poset.leq:
            raise ValueError(f"index poset is not the doubled {n}-fold product shape")
        self.n = n
        self.diagram = diagram

    @property
    def value_initial(self) -> RationalComplex:
        return self.diagram.objects[uple_initial(self.n)]

    @property
    def value_terminal(self) -> RationalComplex:
        """Value at the terminal dual element."""
        return self.diagram.objects[uple_terminal(self.n)]

    def plain_labels(self) -> list[str]:
        return [x for x in self.diagram.poset.elements if not is_dual_label(x)]


def fold_shape_poset(n: int) -> Poset:
    """Poset reflection of the doubled fold shape: plain copy of the n-level
    fold poset, reversed dual copy, and x <= y^v iff x, y share an upper
    bound.  Parallel mixed arrows of the genuine doubled shape are identified.
    """
    base = sp_poset(n)
    elems = list(base.elements) + [dual_label(x) for x in base.elements]
    leq = set()
    for a, b in base.leq:
        leq.add((a, b))
        leq.add((dual_label(b), dual_label(a)))
    for a in base.elements:
        for b in base.elements:
            if base.upper_bounds(a, b):
                leq.add((a, dual_label(b)))
    return Poset(tuple(elems), frozenset(leq))


class FoldSpanDiagram:
    """A strict diagram over the (poset-reflected) doubled fold shape."""

    def __init__(self, n: int, diagram: Diagram):
        shape = fold_shape_poset(n)
        if set(diagram.poset.elements) != set(shape.elements) or \
                diagram.poset.leq != shape.leq:
            raise ValueError(f"index poset is not the doubled {n}-level fold shape")
        self.n = n
        self.diagram = diagram


def tw_j_functor(n: int) -> FunctorBetweenPosets:
    """Doubled collapse functor: plain tuples map by the first-active-level
    collapse, duals map to the dual of the collapse."""
    src = uple_twisted(n).poset
    tgt = fold_shape_poset(n)
    mapping = {}
    for x in src.elements:
        if is_dual_label(x):
            mapping[x] = dual_label(j_label(split_tuple_label(undual_label(x))))
        else:
            mapping[x] = j_label(split_tuple_label(x))
    return FunctorBetweenPosets.from_dict(src, tgt, mapping)


def fold_to_uple(fold: FoldSpanDiagram) -> UpleSpanDiagram:
    """Pull a fold diagram back along the doubled collapse functor."""
    f = tw_j_functor(fold.n)
    m = f.as_dict
    poset = f.source
    objects = {x: fold.diagram.objects[m[x]] for x in poset.elements}
    arrows = {(a, b): fold.diagram.arrows[(m[a], m[b])] for a, b in poset.leq}
    return UpleSpanDiagram(fold.n, Diagram(poset, objects, arrows))


def _limit_verdict(diagram: Diagram, cone_label: str) -> bool:
    ok, _, _ = is_limit_cone(diagram, cone_label)
    return ok


def _nondeg_twisted_core(diagram: Diagram, init: str, plains, terminal: str) -> bool:
    """Both limit-diagram forms over a doubled shape; they must agree.

    Route A punctures the full doubled shape at the initial element; route B
    keeps only the plain copy together with the terminal dual.
    """
    route_a = _limit_verdict(diagram, init)
    keep = list(plains) + [terminal]
    route_b = _limit_verdict(diagram.restrict(keep), init)
    if route_a != route_b:
        raise RuntimeError(
            "internal consistency failure: full-shape and plain-copy limit "
            f"verdicts disagree ({route_a} vs {route_b})")
    return route_a


def nondeg_uple(phi: UpleSpanDiagram) -> bool:
    """Non-degeneracy of an n-uple span diagram, computed along two routes."""
    n = phi.n
    return _nondeg_twisted_core(phi.diagram, uple_initial(n),
                                phi.plain_labels(), uple_terminal(n))


def nondeg_fold(fold: FoldSpanDiagram) -> bool:
    """Non-degeneracy of a fold diagram: direct limit form over the plain
    copy plus terminal dual, cross-checked against the pullback to the
    doubled product shape."""
    direct = _limit_verdict(
        fold.diagram.restrict([x for x in fold.diagram.poset.elements
                               if not is_dual_label(x)] + [dual_label("-inf")]),
        "-inf")
    via_pullback = nondeg_uple(fold_to_uple(fold))
    if direct != via_pullback:
        raise RuntimeError(
            "internal consistency failure: fold-shape and pulled-back "
            f"verdicts disagree ({direct} vs {via_pullback})")
    return direct


def fold_terminal_poset(n: int) -> Poset:
    """The n-level fold poset with a terminal element adjoined."""
    return sp_poset(n).cone_right("+inf")


def nondeg_iterated(diagram: Diagram) -> bool:
    """Iterated homotopy-pullback criterion over the fold levels.

    The diagram lives on the fold poset with a terminal element adjoined
    (elements "-inf", A_k/B_k for k = 1..n, "+inf").  Starting from the
    terminal value, each level contributes a homotopy pullback; the verdict
    is whether the initial value maps quasi-isomorphically into the last one.
    The connecting maps use zero homotopy witnesses, valid because strict
    functoriality makes the two composites around each square literally equal.
    """
    elems = set(diagram.poset.elements)
    n = (len(elems) - 2) // 2
    if elems != set(fold_terminal_poset(n).elements) or \
            diagram.poset.leq != fold_terminal_poset(n).leq:
        raise ValueError("index poset is not the fold shape with terminal element")
    if n == 0:
        # the shape is a 2-chain; the verdict is the arrow being a quasi-iso
        return diagram.arrows[("-inf", "+inf")].is_quasi_iso()
    # legs of the first pullback are the arrows from the top level A1/B1 into
    # the terminal value; each later level maps in through the pair of arrows
    # one level down, with a zero homotopy witness (the two composites agree
    # on the nose by strict functoriality).
    leg_a = diagram.arrows[("A1", "+inf")]
    leg_b = diagram.arrows[("B1", "+inf")]
    for k in range(1, n + 1):
        m_k, _, _ = hpb(leg_a, leg_b)
        if k == n:
            u = diagram.arrows[("-inf", f"A{k}")]
            v = diagram.arrows[("-inf", f"B{k}")]
            cmp_map = map_into_hpb(leg_a, leg_b, m_k, u, v, {})
            return cmp_map.is_quasi_iso()
        new_leg_a = map_into_hpb(leg_a, leg_b, m_k,
                                 diagram.arrows[(f"A{k + 1}", f"A{k}")],
                                 diagram.arrows[(f"A{k + 1}", f"B{k}")], {})
        new_leg_b = map_into_hpb(leg_a, leg_b, m_k,
                                 diagram.arrows[(f"B{k + 1}", f"A{k}")],
                                 diagram.arrows[(f"B{k + 1}", f"B{k}")], {})
        leg_a, leg_b = new_leg_a, new_leg_b
    raise AssertionError("unreachable")


def top_chain_weights(punctured_plains: Poset) -> dict:
    """Weights on the maximal-length chains of the punctured plain shape.

    The weight vector spans the kernel of the (augmented) cell boundary of
    the nerve in its top dimension, normalized to a primitive integer vector;
    the kernel is one-dimensional because the nerve is a sphere.
    """
    nv = nerve(punctured_plains)
    top = nv.top_dim()
    cx = complex_of_semisimplicial(nv, reduced=True)
    ker = nullspace(cx.d_at(-top))
    if ker.cols != 1:
        raise RuntimeError(f"top boundary kernel has rank {ker.cols}, expected 1")
    lam = primitive_integer_vector([ker.entry(i, 0) for i in range(ker.rows)])
    cells = nv.cells_by_dim()[top]
    return {tuple(cid.split("|")): lam[i] for i, cid in enumerate(cells)}


def stable_square_verdict(diagram: Diagram, init: str, plains, terminal: str) -> bool:
    """Cartesianness of the square built from the punctured plain limit.

    The square has the initial value on top, the homotopy limit over the
    punctured plain copy on the right, zero on the bottom left, and the
    shifted terminal value on the bottom right; the right edge sends each
    top-chain block through its arrow to the terminal value, weighted by the
    top-chain weights.  The verdict is whether the induced map from the
    initial value to the fiber of the right edge is a quasi-isomorphism.
    """
    plains = list(plains)
    circ = [x for x in plains if x != init]
    rest = diagram.restrict(circ)
    res = holim(rest)
    weights = top_chain_weights(rest.poset)
    top_len = max(len(c) for c in weights)
    term = diagram.objects[terminal]
    shifted = term.shift(1 - top_len)
    mats = {}
    for t in res.complex.degrees():
        entries = {}
        for ch, m, dim in res.basis.get(t, []):
            if len(ch) != top_len or ch not in weights:
                continue
            lam = weights[ch]
            arr = diagram.arrows[(ch[-1], terminal)].at(m)
            off = res.block_offset(t, ch)
            for i, j, v in arr.nonzero_entries():
                entries[(i, off + j)] = entries.get((i, off + j), Q(0)) + lam * v
        mats[t] = _mat_from_entries(shifted.dim(t), res.complex.dim(t), entries)
    q_map = ChainMap(res.complex, shifted, mats)
    full = diagram.restrict([init] + circ)
    u = comparison_into_holim(full, init, res)
    w = map_into_fiber(q_map, u)
    return w.is_quasi_iso()


def nondeg_stable_square(phi: UpleSpanDiagram) -> bool:
    """Stable-square criterion for an n-uple span diagram: the terminal value
    is the value at the terminal dual element."""
    n = phi.n
    return stable_square_verdict(phi.diagram, uple_initial(n),
                                 phi.plain_labels(), uple_terminal(n))


def _face_embedding(n: int, kept_axes, frozen) -> dict:
    """Plain labels of the doubled |kept|-fold shape -> plain labels of the
    doubled n-fold shape, freezing the other axes at the given A1/B1 values."""
    kept_axes = list(kept_axes)
    sub = sp_product_poset(len(kept_axes)) if kept_axes else None
    out = {}
    subs = sub.elements if sub is not None else [tuple_label(())]
    for y in subs:
        parts = list(split_tuple_label(y)) if kept_axes else []
        merged = []
        it = iter(parts)
        for axis in range(1, n + 1):
            if axis in kept_axes:
                merged.append(next(it))
            else:
                merged.append(frozen[axis])
        out[y] = tuple_label(merged)
    return out


def nondeg_boundary(phi: UpleSpanDiagram) -> bool:
    """Whether every proper face of the diagram is non-degenerate.

    A face keeps a proper subset of the axes and freezes each remaining axis
    at A1 or B1 (in particular the empty set of axes gives, at each frozen
    corner, the requirement that the plain value maps quasi-isomorphically to
    the dual value).  The result is cross-checked against the pointwise form:
    for every non-initial plain element, its value is the homotopy limit of
    the dual values above it.
    """
    n = phi.n
    poset = phi.diagram.poset
    def_ok = True
    axes = list(range(1, n + 1))
    for size in range(n):
        for kept in itertools.combinations(axes, size):
            others = [a for a in axes if a not in kept]
            for vals in itertools.product(("A1", "B1"), repeat=len(others)):
                frozen = dict(zip(others, vals))
                emb = _face_embedding(n, kept, frozen)
                plain_imgs = list(emb.values())
                keep = plain_imgs + [dual_label(x) for x in plain_imgs]
                sub_init = emb[tuple_label(("-inf",) * size) if size else tuple_label(())]
                face_ok = _nondeg_twisted_core(phi.diagram.restrict(keep),
                                               sub_init, plain_imgs,
                                               dual_label(sub_init))
                if not face_ok:
                    def_ok = False
    # pointwise form: each non-initial plain value is the limit of the duals
    # above it.
    rke_ok = True
    init = uple_initial(n)
    base = sp_product_poset(n)
    for x in base.elements:
        if x == init:
            continue
        ups = [dual_label(y) for y in base.up_set(x)]
        sub = phi.diagram.restrict([x] + ups)
        if not _limit_verdict(sub, x):
            rke_ok = False
    if def_ok != rke_ok:
        raise RuntimeError(
            "internal consistency failure: face and pointwise boundary "
            f"verdicts disagree ({def_ok} vs {rke_ok})")
    return def_ok


def holim_restriction(res_big, res_small) -> ChainMap:
    """Projection between totalizations induced by a full subposet inclusion:
    keep the coordinates at chains of the smaller index."""
    mats = {}
    for t in res_small.complex.degrees():
        entries = {}
        for ch, m, dim in res_small.basis.get(t, []):
            off_s = res_small.block_offset(t, ch)
            off_b = res_big.block_offset(t, ch)
            if off_b is None:
                raise ValueError(f"chain {ch} missing from the larger totalization")
            for i in range(dim):
                entries[(off_s + i, off_b + i)] = Q(1)
        mats[t] = _mat_from_entries(res_small.complex.dim(t),
                                    res_big.complex.dim(t), entries)
    return ChainMap(res_big.complex, res_small.complex, mats)


def nondeg_one_axis(phi: UpleSpanDiagram) -> bool:
    """One-axis reduction: the initial value is the homotopy limit, over the
    reversed remaining axes, of the inner homotopy limits of dual values with
    the first coordinate left free.

    For each tuple over the remaining axes, the inner index keeps the duals
    of all plain tuples whose trailing coordinates lie below it; the outer
    diagram is formed by the restriction projections between inner limits.
    Intended for diagrams whose boundary is non-degenerate.
    """
    n = phi.n
    if n < 2:
        raise ValueError("one-axis reduction needs at least two axes")
    sp1 = sp_poset(1)
    outer_base = sp_product_poset(n - 1).opposite()
    inner = {}
    for y in outer_base.elements:
        ys = split_tuple_label(y)
        kept = []
        for x in sp_product_poset(n).elements:
            xs = split_tuple_label(x)
            if all(sp1.le(xs[i + 1], ys[i]) for i in range(n - 1)):
                kept.append(dual_label(x))
        res = holim(phi.diagram.restrict(kept))
        cmp_map = comparison_into_holim(
            phi.diagram.restrict([uple_initial(n)] + kept), uple_initial(n), res)
        inner[y] = (res, cmp_map)
    cone = "-inf"
    outer_poset = outer_base.cone_left(cone)
    objects = {cone: phi.value_initial}
    objects.update({y: inner[y][0].complex for y in outer_base.elements})
    arrows = {}
    for a, b in outer_poset.leq:
        if a == b:
            arrows[(a, b)] = ChainMap.identity(objects[a])
        elif a == cone:
            arrows[(a, b)] = inner[b][1]
        else:
            arrows[(a, b)] = holim_restriction(inner[a][0], inner[b][0])
    return _limit_verdict(Diagram(outer_poset, objects, arrows), cone)


def degeneracy_stability(phi: UpleSpanDiagram, j: int) -> UpleSpanDiagram:
    """Pull an (n-1)-uple span diagram back along the doubled projection that
    forgets axis j of an n-fold tuple.  Limit diagrams stay limit diagrams
    under this operation."""
    n_out = phi.n + 1
    if not 1 <= j <= n_out:
        raise ValueError(f"axis {j} out of range for {n_out} axes")

    def drop(label: str) -> str:
        if is_dual_label(label):
            return dual_label(drop(undual_label(label)))
        parts = list(split_tuple_label(label))
        del parts[j - 1]
        return tuple_label(parts)

    tw = uple_twisted(n_out)
    objects = {x: phi.diagram.objects[drop(x)] for x in tw.poset.elements}
    arrows = {(a, b): phi.diagram.arrows[(drop(a), drop(b))] for a, b in tw.poset.leq}
    return UpleSpanDiagram(n_out, Diagram(tw.poset, objects, arrows))


def _enc_entry(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def diagram_to_json(diagram: Diagram) -> str:
    """Serialize a strict diagram: poset, complex per element, arrow matrices."""
    payload = {
        "poset": json.loads(diagram.poset.to_json()),
        "objects": {x: json.loads(c.to_json()) for x, c in diagram.objects.items()},
        "arrows": {f"{a}|{b}": {str(n): [[_enc_entry(x) for x in row]
                                         for row in m.to_lists()]
                                for n, m in f.mats.items()}
                   for (a, b), f in diagram.arrows.items()},
    }
    return json.dumps(payload, sort_keys=True)


def diagram_from_json(text: str) -> Diagram:
    payload = json.loads(text)
    poset = Poset.from_json(json.dumps(payload["poset"]))
    objects = {x: RationalComplex.from_json(json.dumps(c))
               for x, c in payload["objects"].items()}
    arrows = {}
    for key, mats in payload["arrows"].items():
        a, b = key.split("|")
        src, tgt = objects[a], objects[b]
        built = {}
        for ns, rows in mats.items():
            n = int(ns)
            built[n] = Mat.from_rows(rows, rows=tgt.dim(n), cols=src.dim(n))
        arrows[(a, b)] = ChainMap(src, tgt, built)
    return Diagram(poset, objects, arrows)
