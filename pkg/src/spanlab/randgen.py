"""Seeded random instances for the non-degeneracy criteria.

The generator builds strict diagrams with a known verdict:

* an *indicator* diagram carries a fixed complex on the down-set of a chosen
  element, identity arrows inside the down-set and zero outside; when the
  chosen element is not the initial one, the punctured down-set has a
  terminal element, so the indicator is a limit diagram;
* direct sums of indicators are again limit diagrams;
* conjugating every object by an invertible chain self-map (of the form
  identity plus a null-homotopic perturbation) produces an isomorphic diagram
  with less obvious matrices and the same verdict;
* corrupting the value at the initial element (adding a summand with fresh
  homology, or zeroing it out) breaks the limit property.

Complexes are drawn with bounded total dimension in a bounded degree window;
differentials are sampled degree by degree inside the exact-kernel constraint
so that the squared differential vanishes identically (entries can leave the
initial sampling range when the constraint forces denominators; they stay
rational and exact).
"""

from __future__ import annotations

import random

from ._linalg import Mat, Q, inverse, nullspace
from .complexes import ChainMap, Diagram, RationalComplex, homology
from .posets import Poset
from .span_nondeg import (FoldSpanDiagram, UpleSpanDiagram, fold_shape_poset,
                          fold_terminal_poset, uple_initial, uple_twisted)
from .twisted import is_dual_label


def random_complex(rng: random.Random, max_total: int = 6,
                   lo: int = -3, hi: int = 3, spread: int = 3) -> RationalComplex:
    """Random complex with at most ``max_total`` total dimension supported on
    at most ``spread`` consecutive degrees inside [lo, hi]."""
    width = rng.randint(1, min(spread, hi - lo + 1))
    start = rng.randint(lo, hi - width + 1)
    total = rng.randint(1, max_total)
    dims = {}
    for _ in range(total):
        n = start + rng.randrange(width)
        dims[n] = dims.get(n, 0) + 1
    d = {}
    degrees = sorted(dims)
    for n in degrees:
        rows, cols = dims.get(n + 1, 0), dims[n]
        if rows == 0 or cols == 0:
            continue
        prev = d.get(n - 1)
        if prev is None or prev.is_zero():
            entries = [[Q(rng.choice((-2, -1, 0, 0, 1, 2))) for _ in range(cols)]
                       for _ in range(rows)]
            d[n] = Mat.from_rows(entries, rows=rows, cols=cols)
        else:
            # rows of d[n] must annihilate the columns of d[n-1]
            null = nullspace(prev.T)
            if null.cols == 0:
                d[n] = Mat.zero(rows, cols)
                continue
            entries = []
            for _ in range(rows):
                coeffs = [Q(rng.choice((-2, -1, 0, 1, 2))) for _ in range(null.cols)]
                entries.append([sum((coeffs[k] * null.entry(i, k) for k in range(null.cols)),
                                    Q(0)) for i in range(null.rows)])
            d[n] = Mat.from_rows(entries, rows=rows, cols=cols)
    return RationalComplex(dims, d)


def random_homotopy_unit(rng: random.Random, c: RationalComplex) -> ChainMap:
    """An invertible chain self-map of the form identity plus d h + h d."""
    for _ in range(8):
        h = {}
        for n in c.dims:
            rows, cols = c.dim(n - 1), c.dim(n)
            if rows and cols:
                h[n] = Mat.from_rows([[Q(rng.choice((-1, 0, 0, 1))) for _ in range(cols)]
                                      for _ in range(rows)], rows=rows, cols=cols)
        mats = {}
        ok = True
        for n in c.dims:
            pert = Mat.zero(c.dim(n), c.dim(n))
            if n in h:
                pert = pert + c.d_at(n - 1) * h[n]
            if (n + 1) in h:
                pert = pert + h[n + 1] * c.d_at(n)
            s = Mat.eye(c.dim(n)) + pert
            try:
                inverse(s)
            except ValueError:
                ok = False
                break
            mats[n] = s
        if ok:
            return ChainMap(c, c, mats)
    return ChainMap.identity(c)


def indicator_diagram(poset: Poset, top: str, value: RationalComplex) -> Diagram:
    """``value`` with identity arrows on the down-set of ``top``, zero outside."""
    zero = RationalComplex.zero()
    objects = {x: (value if poset.le(x, top) else zero) for x in poset.elements}
    arrows = {}
    for a, b in poset.leq:
        if poset.le(a, top) and poset.le(b, top):
            arrows[(a, b)] = ChainMap.identity(value)
        else:
            arrows[(a, b)] = ChainMap.zero_map(objects[a], objects[b])
    return Diagram(poset, objects, arrows)


def direct_sum_diagrams(diagrams: list[Diagram]) -> Diagram:
    first = diagrams[0]
    if len(diagrams) == 1:
        return first
    objects = {}
    arrows = {}
    for x in first.poset.elements:
        objects[x] = diagrams[0].objects[x]
        for d in diagrams[1:]:
            objects[x] = objects[x].direct_sum(d.objects[x])
    for pair in first.poset.leq:
        f = diagrams[0].arrows[pair]
        for d in diagrams[1:]:
            f = f.direct_sum(d.arrows[pair])
        arrows[pair] = f
    return Diagram(first.poset, objects, arrows)


def conjugate_diagram(diagram: Diagram, rng: random.Random) -> Diagram:
    """Replace each arrow f: x -> y by S_y f S_x^{-1} for invertible chain
    self-maps S; the result is isomorphic to the input."""
    units = {}
    inverses = {}
    for x, c in diagram.objects.items():
        s = random_homotopy_unit(rng, c)
        units[x] = s
        inverses[x] = ChainMap(c, c, {n: inverse(s.at(n)) for n in c.dims})
    arrows = {}
    for (a, b), f in diagram.arrows.items():
        arrows[(a, b)] = units[b].compose(f).compose(inverses[a])
    return Diagram(diagram.poset, diagram.objects, arrows)


def corrupt_at_initial(diagram: Diagram, init: str, mode: str,
                       rng: random.Random) -> Diagram:
    """Break the limit property by changing only the initial value.

    ``extra`` adds a rank-one summand with fresh homology in a random degree;
    ``zero`` replaces the initial value by the zero complex.  Arrows out of
    the initial element are extended by zero (functoriality is unaffected
    because nothing maps into the initial element).
    """
    objects = dict(diagram.objects)
    arrows = dict(diagram.arrows)
    old = objects[init]
    if mode == "extra":
        deg = rng.randint(-2, 2)
        new = old.direct_sum(RationalComplex.concentrated(deg, 1))
    elif mode == "zero":
        new = RationalComplex.zero()
    else:
        raise ValueError(f"unknown corruption mode: {mode}")
    objects[init] = new
    for (a, b) in diagram.poset.leq:
        if a != init:
            continue
        tgt = objects[b]
        if b == init:
            arrows[(a, b)] = ChainMap.identity(new)
        elif mode == "extra":
            mats = {n: Mat.hstack([diagram.arrows[(a, b)].at(n),
                                   Mat.zero(tgt.dim(n), new.dim(n) - old.dim(n))])
                    for n in new.dims}
            arrows[(a, b)] = ChainMap(new, tgt, mats)
        else:
            arrows[(a, b)] = ChainMap.zero_map(new, tgt)
    return Diagram(diagram.poset, objects, arrows)


def random_limit_diagram(poset: Poset, init: str, rng: random.Random,
                         summands: int = 2, max_total: int = 6,
                         support_pool=None, conjugate: bool = True,
                         require_homology: bool = False) -> Diagram:
    """Direct sum of indicator diagrams on down-sets of non-initial elements,
    conjugated by random chain units: a limit diagram by construction."""
    pool = list(support_pool) if support_pool is not None else \
        [x for x in poset.elements if x != init]
    parts = []
    for _ in range(summands):
        top = rng.choice(pool)
        value = random_complex(rng, max_total=max_total)
        if require_homology:
            while not homology(value):
                value = random_complex(rng, max_total=max_total)
        parts.append(indicator_diagram(poset, top, value))
    out = direct_sum_diagrams(parts)
    if conjugate:
        out = conjugate_diagram(out, rng)
    return out


def random_uple_instance(n: int, rng: random.Random, corrupt: bool = False,
                         summands: int = 2, max_total: int = 6,
                         support_pool=None):
    """A random n-uple span diagram with a known verdict: (diagram, verdict)."""
    tw = uple_twisted(n)
    init = uple_initial(n)
    require = corrupt
    diag = random_limit_diagram(tw.poset, init, rng, summands=summands,
                                max_total=max_total, support_pool=support_pool,
                                require_homology=require)
    if corrupt:
        mode = rng.choice(("extra", "zero"))
        diag = corrupt_at_initial(diag, init, mode, rng)
        return UpleSpanDiagram(n, diag), False
    return UpleSpanDiagram(n, diag), True


def random_fold_terminal_instance(n: int, rng: random.Random,
                                  corrupt: bool = False, summands: int = 2,
                                  max_total: int = 6):
    """A random diagram over the fold shape with terminal element adjoined,
    with a known verdict: (diagram, verdict)."""
    poset = fold_terminal_poset(n)
    require = corrupt
    diag = random_limit_diagram(poset, "-inf", rng, summands=summands,
                                max_total=max_total, require_homology=require)
    if corrupt:
        mode = rng.choice(("extra", "zero"))
        diag = corrupt_at_initial(diag, "-inf", mode, rng)
        return diag, False
    return diag, True


def random_fold_shape_instance(n: int, rng: random.Random,
                               corrupt: bool = False, summands: int = 2,
                               max_total: int = 6):
    """A random FoldSpanDiagram over the doubled fold shape, with a known
    verdict: (fold diagram, verdict).

    Indicator supports are drawn from plain elements only.  A principal
    down-set of a plain element meets the plain copy in a set with a top
    element, so the limit verdict is known by construction; down-sets of dual
    elements can meet the plain copy in a sphere-like shape and need not give
    limit diagrams, so they are not usable as known-verdict seeds here.
    """
    poset = fold_shape_poset(n)
    plains = [x for x in poset.elements
              if not is_dual_label(x) and x != "-inf"]
    require = corrupt
    diag = random_limit_diagram(poset, "-inf", rng, summands=summands,
                                max_total=max_total, support_pool=plains,
                                require_homology=require)
    if corrupt:
        mode = rng.choice(("extra", "zero"))
        diag = corrupt_at_initial(diag, "-inf", mode, rng)
        return FoldSpanDiagram(n, diag), False
    return FoldSpanDiagram(n, diag), True
