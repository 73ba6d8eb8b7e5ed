"""Spine and simplex cochain complexes and their exact product families.

The spine of the standard ``l``-simplex is the union of its vertices and the
``l`` consecutive edges.  This module builds, over the rationals:

* the two-term chain and cochain complexes of the spine,
* the normalized (non-degenerate) chain and cochain complexes of the full
  simplex,
* product families ``build_P(j, l)`` indexed by a tuple of sub-intervals of
  ``[j_1], ..., [j_n]`` together with a face of ``[l]``, whose values are
  tensor products of interval spine cochains with normalized simplex
  cochains, and whose structure maps restrict along every shrink of the
  index data,
* pushforward / restriction functorialities along monotone maps
  (``pushforward_phi``, ``restriction_Nsp``) and the corresponding
  comparison maps between families over different interval shapes
  (``oplax_alpha``),
* three comparison maps ``build_lrz``: a degree-one inclusion ``ell``
  exhibiting a shifted line as the homotopy pullback of two zero maps, the
  constant diagonal ``r`` (a quasi-isomorphism), and a suspension
  comparison ``zeta`` that rewrites a shifted family value over an extra
  interval axis.

Dualization here transposes differentials without inserting alternating
signs; ``koszul_comparison`` is the canonical isomorphism onto the
sign-inserting dual used elsewhere in the package.  Tensor differentials
follow the matching convention: the sign a factor contributes is opposite
to the usual graded rule, and the final (simplex) factor of each product
carries the sign determined by treating it as one more slot.  Both choices
are pinned by the worked unit-square example in the test suite.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb

from ._linalg import Mat, Q
from .complexes import (ChainMap, RationalComplex, hpb, map_into_hpb,
                        _mat_from_entries)
from .posets import DeltaMorphism

__all__ = [
    "SpineChainComplex",
    "SpineCochains",
    "NormalizedCochains",
    "PComplexFamily",
    "LRZMaps",
    "spine_chain_complex",
    "spine_cochains",
    "nondegenerate_chain_complex",
    "normalized_cochains",
    "geometric_dual",
    "geometric_dual_map",
    "koszul_comparison",
    "four_periodic_sign",
    "pushforward_phi",
    "restriction_Nsp",
    "simplex_pushforward",
    "normalized_restriction",
    "build_P",
    "build_lrz",
    "ell_hpb_comparison",
    "oplax_alpha",
    "sigma_image",
    "inert_interval",
    "xi_objects",
    "xi_leq",
    "compose_xi",
    "xi_to_json",
    "xi_from_json",
]


# ---------------------------------------------------------------------------
# dualization without alternating signs


def geometric_dual(c: RationalComplex) -> RationalComplex:
    """Dual complex whose differentials are plain transposes.

    Degree ``n`` of the dual is the dual of degree ``-n``; no alternating
    sign is inserted, so applying the construction twice gives back the
    original complex on the nose.
    """
    dims = {-n: m for n, m in c.dims.items()}
    d = {-n - 1: mat.T for n, mat in c.d.items()}
    return RationalComplex(dims, d)


def geometric_dual_map(f: ChainMap,
                       source: RationalComplex | None = None,
                       target: RationalComplex | None = None) -> ChainMap:
    """Transpose of a chain map, contravariantly, between sign-free duals.

    ``source`` / ``target`` may supply already-built duals of ``f.target`` /
    ``f.source`` (they are validated by the chain-map constructor).
    """
    src = source if source is not None else geometric_dual(f.target)
    tgt = target if target is not None else geometric_dual(f.source)
    return ChainMap(src, tgt, {-n: mat.T for n, mat in f.mats.items()})


def koszul_comparison(c: RationalComplex) -> ChainMap:
    """Canonical isomorphism from the sign-free dual onto ``c.dual()``.

    The degree-``n`` component is ``(-1)^(n(n+1)/2)`` times the identity;
    the sign repeats with period four as ``+, -, -, +``.
    """
    src = geometric_dual(c)
    tgt = c.dual()
    mats = {}
    for n, m in src.dims.items():
        sign = Q(-1) if (n * (n + 1) // 2) % 2 else Q(1)
        mats[n] = Mat.eye(m).scale(sign)
    return ChainMap(src, tgt, mats)


def four_periodic_sign(t: int) -> int:
    """Sign correcting the tensor-hom adjunction for sign-free duals.

    Returns ``+1`` for ``t`` congruent to 0 or 1 mod 4 and ``-1`` for 2 or
    3; equivalently ``(-1)^t`` times the ``koszul_comparison`` sign in
    degree ``t``.  It satisfies ``s(t) = (-1)^(t-1) s(t-1)``.
    """
    return 1 if t % 4 in (0, 1) else -1


# ---------------------------------------------------------------------------
# spine and simplex complexes


@lru_cache(maxsize=None)
def _spine_chain(l: int) -> RationalComplex:
    if l < 0:
        raise ValueError("simplex size must be nonnegative")
    dims = {0: l + 1}
    d = {}
    if l:
        dims[-1] = l
        entries = {}
        for k in range(1, l + 1):
            entries[(k, k - 1)] = Q(1)
            entries[(k - 1, k - 1)] = Q(-1)
        d[-1] = _mat_from_entries(l + 1, l, entries)
    return RationalComplex(dims, d)


@lru_cache(maxsize=None)
def _spine_cochain(l: int) -> RationalComplex:
    return geometric_dual(_spine_chain(l))


@lru_cache(maxsize=None)
def _simplex_chain(l: int) -> RationalComplex:
    if l < 0:
        raise ValueError("simplex size must be nonnegative")
    dims = {}
    basis = {}
    for b in range(l + 1):
        basis[b] = list(combinations(range(l + 1), b + 1))
        dims[-b] = len(basis[b])
    d = {}
    for b in range(1, l + 1):
        index = {tup: i for i, tup in enumerate(basis[b - 1])}
        entries = {}
        for col, tup in enumerate(basis[b]):
            for q in range(b + 1):
                face = tup[:q] + tup[q + 1:]
                sign = Q(-1) if q % 2 else Q(1)
                key = (index[face], col)
                entries[key] = entries.get(key, Q(0)) + sign
        d[-b] = _mat_from_entries(len(basis[b - 1]), len(basis[b]), entries)
    return RationalComplex(dims, d)


@lru_cache(maxsize=None)
def _simplex_cochain(l: int) -> RationalComplex:
    return geometric_dual(_simplex_chain(l))


def spine_chain_complex(l: int) -> RationalComplex:
    """Chains on the spine: vertices in degree 0, consecutive edges in
    degree -1, with d(edge k) = [k] - [k-1]."""
    return _spine_chain(l)


def spine_cochains(l: int) -> RationalComplex:
    """Sign-free dual of the spine chain complex (degrees 0 and 1)."""
    return _spine_cochain(l)


def nondegenerate_chain_complex(l: int) -> RationalComplex:
    """Normalized chains of the full simplex: a basis vector for every
    nonempty vertex subset, a ``(b+1)``-subset sitting in degree ``-b``,
    with the usual alternating face differential."""
    return _simplex_chain(l)


def normalized_cochains(l: int) -> RationalComplex:
    """Sign-free dual of the normalized chain complex of the simplex."""
    return _simplex_cochain(l)


@dataclass(eq=False)
class SpineChainComplex:
    """Chain complex of the spine of the standard ``l``-simplex.

    Degree 0 has one generator per vertex; degree -1 one generator per
    consecutive edge ``(k-1, k)``, listed for ``k = 1..l``; the boundary of
    edge ``k`` is ``[k] - [k-1]``.
    """

    l: int
    complex: RationalComplex = field(init=False)

    def __post_init__(self):
        self.complex = _spine_chain(self.l)


@dataclass(eq=False)
class SpineCochains:
    """Cochain complex of the spine (sign-free dual of the chains)."""

    l: int
    complex: RationalComplex = field(init=False)

    def __post_init__(self):
        self.complex = _spine_cochain(self.l)


@dataclass(eq=False)
class NormalizedCochains:
    """Normalized simplex cochains (sign-free dual of nondegenerate chains).

    The dimension in degree ``k`` is ``binomial(l+1, k+1)``; ``predual``
    holds the chain complex the dual was taken of.
    """

    l: int
    complex: RationalComplex = field(init=False)
    predual: RationalComplex = field(init=False)

    def __post_init__(self):
        self.predual = _simplex_chain(self.l)
        self.complex = _simplex_cochain(self.l)
        for k, m in self.complex.dims.items():
            if m != comb(self.l + 1, k + 1):
                raise AssertionError("normalized cochain dimensions are off")


# ---------------------------------------------------------------------------
# functoriality along monotone maps


def pushforward_phi(phi: DeltaMorphism) -> ChainMap:
    """Push spine chains forward along a monotone map.

    A vertex goes to the image vertex.  A consecutive edge goes to the sum
    of the consecutive edges joining the images of its endpoints — the
    empty sum (zero) when the endpoints collapse.  Inert maps therefore
    send generators to single generators.
    """
    a, b = phi.source_arity, phi.target_arity
    src = _spine_chain(a)
    tgt = _spine_chain(b)
    entries0 = {(phi(v), v): Q(1) for v in range(a + 1)}
    mats = {0: _mat_from_entries(b + 1, a + 1, entries0)}
    if a:
        entries1 = {}
        for k in range(1, a + 1):
            for i in range(phi(k - 1) + 1, phi(k) + 1):
                entries1[(i - 1, k - 1)] = Q(1)
        mats[-1] = _mat_from_entries(b, a, entries1)
    return ChainMap(src, tgt, mats)


def restriction_Nsp(phi: DeltaMorphism) -> ChainMap:
    """Restrict spine cochains along a monotone map.

    In degree 0 the value at vertex ``v`` is the value at ``phi(v)``; in
    degree 1 the value at edge ``k`` is the sum of the values over the
    edges between the images of ``k-1`` and ``k``.  This is dual to
    ``pushforward_phi`` under the sign-free dualization.
    """
    a, b = phi.source_arity, phi.target_arity
    src = _spine_cochain(b)
    tgt = _spine_cochain(a)
    entries0 = {(v, phi(v)): Q(1) for v in range(a + 1)}
    mats = {0: _mat_from_entries(a + 1, b + 1, entries0)}
    if a:
        entries1 = {}
        for k in range(1, a + 1):
            for i in range(phi(k - 1) + 1, phi(k) + 1):
                entries1[(k - 1, i - 1)] = Q(1)
        mats[1] = _mat_from_entries(a, b, entries1)
    return ChainMap(src, tgt, mats)


def simplex_pushforward(rho: DeltaMorphism) -> ChainMap:
    """Push normalized simplex chains forward along an injective map:
    generators go to generators by composing vertex subsets with the map."""
    if not rho.is_injective():
        raise ValueError("normalized chains only push forward along injective maps")
    a, b = rho.source_arity, rho.target_arity
    src = _simplex_chain(a)
    tgt = _simplex_chain(b)
    mats = {}
    for deg in range(a + 1):
        rows = list(combinations(range(b + 1), deg + 1))
        cols = list(combinations(range(a + 1), deg + 1))
        index = {tup: i for i, tup in enumerate(rows)}
        entries = {}
        for j, tup in enumerate(cols):
            image = tuple(rho(v) for v in tup)
            entries[(index[image], j)] = Q(1)
        mats[-deg] = _mat_from_entries(len(rows), len(cols), entries)
    return ChainMap(src, tgt, mats)


def normalized_restriction(rho: DeltaMorphism) -> ChainMap:
    """Restrict normalized simplex cochains along an injective map
    (transpose of ``simplex_pushforward``)."""
    return geometric_dual_map(
        simplex_pushforward(rho),
        source=_simplex_cochain(rho.target_arity),
        target=_simplex_cochain(rho.source_arity),
    )


# ---------------------------------------------------------------------------
# index data: interval tuples with a simplex face


def inert_interval(a: int, b: int, ambient: int) -> DeltaMorphism:
    """The consecutive-interval inclusion of ``{a..b}`` into ``[ambient]``."""
    if not 0 <= a <= b <= ambient:
        raise ValueError(f"not an interval in [{ambient}]: ({a}, {b})")
    return DeltaMorphism(b - a, ambient, tuple(range(a, b + 1)))


def _check_xi(j: tuple, l: int, xi) -> None:
    sigma, tau = xi
    if len(sigma) != len(j):
        raise ValueError(f"expected {len(j)} interval components, got {len(sigma)}")
    for m, (s, jm) in enumerate(zip(sigma, j)):
        if s.target_arity != jm or not s.is_inert():
            raise ValueError(f"component {m} is not an interval in [{jm}]")
    if tau.target_arity != l or not tau.is_injective():
        raise ValueError(f"simplex component is not a face of [{l}]")


def xi_objects(j: tuple, l: int):
    """All index objects for shape ``j`` and simplex size ``l``: every tuple
    of sub-intervals together with every nonempty face, in a fixed order."""
    axes = []
    for jm in j:
        axes.append([inert_interval(a, b, jm)
                     for a in range(jm + 1) for b in range(a, jm + 1)])
    taus = []
    for t in range(l + 1):
        for vals in combinations(range(l + 1), t + 1):
            taus.append(DeltaMorphism(t, l, vals))
    for sigma in product(*axes):
        for tau in taus:
            yield (sigma, tau)


def xi_leq(big, small) -> bool:
    """True when ``small`` shrinks ``big`` componentwise, i.e. when the
    family has a structure map from the value at ``big`` to the value at
    ``small``."""
    bs, bt = big
    ss, st = small
    if len(bs) != len(ss):
        return False
    for sb, ss_m in zip(bs, ss):
        if ss_m(0) < sb(0) or ss_m(ss_m.source_arity) > sb(sb.source_arity):
            return False
    return set(st.values) <= set(bt.values)


def compose_xi(xi, gen):
    """Compose an index object with a generator label: each interval with
    its spine cell, the face with its vertex subset.  The result indexes the
    cell of the product that the generator names."""
    sigma, tau = xi
    gamma, delta = gen
    if len(gamma) != len(sigma):
        raise ValueError("generator shape does not match the index object")
    return (tuple(s.compose(g) for s, g in zip(sigma, gamma)), tau.compose(delta))


def xi_to_json(xi) -> str:
    """Serialize an index object: interval endpoints per axis plus the
    vertex values of the simplex face."""
    sigma, tau = xi
    return json.dumps({
        "j": [s.target_arity for s in sigma],
        "l": tau.target_arity,
        "intervals": [[s(0), s(s.source_arity)] for s in sigma],
        "simplex": list(tau.values),
    })


def xi_from_json(text: str):
    """Inverse of ``xi_to_json`` (validates the interval and face data)."""
    data = json.loads(text)
    sigma = tuple(inert_interval(a, b, jm)
                  for (a, b), jm in zip(data["intervals"], data["j"]))
    if len(sigma) != len(data["j"]):
        raise ValueError("interval list does not match the shape tuple")
    tau = DeltaMorphism(len(data["simplex"]) - 1, data["l"], tuple(data["simplex"]))
    if not tau.is_injective():
        raise ValueError("simplex component must be a strictly increasing face")
    return (sigma, tau)


# ---------------------------------------------------------------------------
# product values


@lru_cache(maxsize=None)
def _spine_slot_gens(s: int, c: int) -> tuple:
    if c == 0:
        return tuple(DeltaMorphism(0, s, (v,)) for v in range(s + 1))
    return tuple(DeltaMorphism(1, s, (k - 1, k)) for k in range(1, s + 1))


@lru_cache(maxsize=None)
def _simplex_slot_gens(t: int, a: int) -> tuple:
    return tuple(DeltaMorphism(a, t, vals)
                 for vals in combinations(range(t + 1), a + 1))


@lru_cache(maxsize=None)
def _p_generators(sizes: tuple, t: int, b: int) -> tuple:
    """Degree ``-b`` generators of the product chain value with interval
    sizes ``sizes`` and face size ``t``: pairs (tuple of spine cells, face
    subset).  Blocks are ordered by the tuple of spine-cell degrees,
    lexicographically; within a block the slots vary with the last fastest.
    """
    n = len(sizes)
    out = []
    choices = [(0, 1) if s >= 1 else (0,) for s in sizes]
    for cvec in product(*choices):
        a = b - sum(cvec)
        if a < 0 or a > t:
            continue
        slot_lists = [_spine_slot_gens(s, c) for s, c in zip(sizes, cvec)]
        slot_lists.append(_simplex_slot_gens(t, a))
        for combo in product(*slot_lists):
            out.append((combo[:n], combo[n]))
    return tuple(out)


@lru_cache(maxsize=None)
def _p_chain_value(sizes: tuple, t: int) -> RationalComplex:
    """Chain-level product of interval spine chains with normalized simplex
    chains, under the sign convention where slot ``i`` (1-based) of a
    product contributes ``(-1)^(i - 1 + sum of earlier slot degrees)`` and
    the simplex factor counts as the final slot."""
    n = len(sizes)
    maxb = sum(1 for s in sizes if s >= 1) + t
    gens = {b: _p_generators(sizes, t, b) for b in range(maxb + 1)}
    dims = {-b: len(g) for b, g in gens.items() if g}
    d = {}
    for b in range(1, maxb + 1):
        cols = gens[b]
        rows = gens.get(b - 1, ())
        if not cols or not rows:
            continue
        row_index = {g: i for i, g in enumerate(rows)}
        entries = {}

        def add(r, col, coeff):
            key = (r, col)
            entries[key] = entries.get(key, Q(0)) + coeff

        for col, (gamma, delta) in enumerate(cols):
            csum = 0
            for i, g in enumerate(gamma):
                if g.source_arity == 1:
                    sign = Q(-1) if (i + csum) % 2 else Q(1)
                    lo, hi = g.values
                    for vertex, coeff in ((hi, sign), (lo, -sign)):
                        repl = DeltaMorphism(0, g.target_arity, (vertex,))
                        tgt = (gamma[:i] + (repl,) + gamma[i + 1:], delta)
                        add(row_index[tgt], col, coeff)
                csum += g.source_arity
            a = delta.source_arity
            if a >= 1:
                sign = Q(-1) if (n + csum) % 2 else Q(1)
                for q in range(a + 1):
                    vals = delta.values[:q] + delta.values[q + 1:]
                    face = DeltaMorphism(a - 1, delta.target_arity, vals)
                    coeff = sign if q % 2 == 0 else -sign
                    add(row_index[(gamma, face)], col, coeff)
        d[-b] = _mat_from_entries(len(rows), len(cols), entries)
    return RationalComplex(dims, d)


@lru_cache(maxsize=None)
def _p_value(sizes: tuple, t: int) -> RationalComplex:
    return geometric_dual(_p_chain_value(sizes, t))


@dataclass(eq=False)
class PComplexFamily:
    """Product cochain complexes indexed by interval tuples and faces.

    For an index object ``xi = (sigma, tau)`` — one sub-interval of
    ``[j_m]`` per axis and one face of ``[l]`` — the value is the sign-free
    dual of the product of the interval spine chains with the normalized
    chains of the face.  Shrinking any component induces a structure map
    given on chain generators by relabelling into the bigger object, then
    transposed; all structure maps are quasi-isomorphisms and every value
    has one-dimensional homology in degree 0.
    """

    j: tuple
    l: int

    def __post_init__(self):
        self.j = tuple(self.j)
        if any(jm < 0 for jm in self.j) or self.l < 0:
            raise ValueError("shape and simplex size must be nonnegative")
        self._arrows = {}

    # -- index bookkeeping ------------------------------------------------

    def objects(self):
        """All index objects, in a fixed deterministic order."""
        return xi_objects(self.j, self.l)

    def has_arrow(self, src, tgt) -> bool:
        _check_xi(self.j, self.l, src)
        _check_xi(self.j, self.l, tgt)
        return xi_leq(src, tgt)

    def covers(self):
        """All arrows that shrink exactly one component by one step (every
        structure map is a composite of these)."""
        for xi in self.objects():
            sigma, tau = xi
            for m, s in enumerate(sigma):
                lo, hi = s(0), s(s.source_arity)
                if lo < hi:
                    for shrunk in (inert_interval(lo + 1, hi, s.target_arity),
                                   inert_interval(lo, hi - 1, s.target_arity)):
                        yield xi, (sigma[:m] + (shrunk,) + sigma[m + 1:], tau)
            t = tau.source_arity
            if t >= 1:
                for q in range(t + 1):
                    vals = tau.values[:q] + tau.values[q + 1:]
                    yield xi, (sigma, DeltaMorphism(t - 1, self.l, vals))

    def sizes(self, xi) -> tuple:
        """Size data ``(interval lengths, face dimension)`` — values and
        generators depend on the index object only through this."""
        _check_xi(self.j, self.l, xi)
        sigma, tau = xi
        return (tuple(s.source_arity for s in sigma), tau.source_arity)

    # -- values and structure maps ----------------------------------------

    def chain_value(self, xi) -> RationalComplex:
        """The product chain complex underlying the value at ``xi``."""
        sizes, t = self.sizes(xi)
        return _p_chain_value(sizes, t)

    def value(self, xi) -> RationalComplex:
        """The cochain value at ``xi`` (sign-free dual of the chains)."""
        sizes, t = self.sizes(xi)
        return _p_value(sizes, t)

    def generators(self, xi, degree: int) -> tuple:
        """Chain generators in degree ``-degree``: pairs of (spine cells
        per axis, vertex subset of the face), matching the basis order of
        ``chain_value``/``value``."""
        sizes, t = self.sizes(xi)
        return _p_generators(sizes, t, degree)

    def arrow(self, src, tgt) -> ChainMap:
        """Structure map ``value(src) -> value(tgt)`` for a componentwise
        shrink: the transpose of the generator relabelling that pushes the
        smaller object's cells into the bigger one."""
        key = (src, tgt)
        cached = self._arrows.get(key)
        if cached is not None:
            return cached
        if not self.has_arrow(src, tgt):
            raise ValueError("no structure map: target must shrink every component")
        ssig, stau = src
        tsig, ttau = tgt
        kappas = [DeltaMorphism(ts.source_arity, ss.source_arity,
                                tuple(v - ss(0) for v in ts.values))
                  for ss, ts in zip(ssig, tsig)]
        pos = {v: i for i, v in enumerate(stau.values)}
        rho = DeltaMorphism(ttau.source_arity, stau.source_arity,
                            tuple(pos[v] for v in ttau.values))
        ssz, st = self.sizes(src)
        tsz, tt = self.sizes(tgt)
        mats = {}
        maxb = sum(1 for s in tsz if s >= 1) + tt
        for b in range(maxb + 1):
            tgens = _p_generators(tsz, tt, b)
            if not tgens:
                continue
            sindex = {g: i for i, g in enumerate(_p_generators(ssz, st, b))}
            entries = {}
            for col, (gamma, delta) in enumerate(tgens):
                image = (tuple(k.compose(g) for k, g in zip(kappas, gamma)),
                         rho.compose(delta))
                entries[(sindex[image], col)] = Q(1)
            mats[b] = _mat_from_entries(len(sindex), len(tgens), entries).T
        out = ChainMap(self.value(src), self.value(tgt), mats)
        self._arrows[key] = out
        return out


def build_P(j, l: int) -> PComplexFamily:
    """The product cochain family for interval shape ``j`` and simplex
    size ``l``."""
    return PComplexFamily(tuple(j), l)


# ---------------------------------------------------------------------------
# comparison across interval shapes


def sigma_image(Phi, xi):
    """Image index object of ``xi`` under a tuple of monotone maps: each
    interval maps to the interval spanned by its endpoint images; the face
    is unchanged."""
    sigma, tau = xi
    if len(Phi) != len(sigma):
        raise ValueError("map tuple does not match the index object")
    new = tuple(inert_interval(phi(s(0)), phi(s(s.source_arity)), phi.target_arity)
                for phi, s in zip(Phi, sigma))
    return (new, tau)


def oplax_alpha(Phi, l: int, xi,
                source_family: PComplexFamily | None = None,
                target_family: PComplexFamily | None = None) -> ChainMap:
    """Comparison map between product families over different shapes.

    For a tuple of monotone maps ``Phi: [i_m] -> [j_m]`` and an index
    object ``xi`` over the source shape, this is the map from the
    shape-``j`` value at ``sigma_image(Phi, xi)`` to the shape-``i`` value
    at ``xi``: the transpose of the slotwise spine pushforward along the
    corner-normalized restrictions of the ``Phi`` components, identity on
    the simplex factor.
    """
    Phi = tuple(Phi)
    i_shape = tuple(p.source_arity for p in Phi)
    j_shape = tuple(p.target_arity for p in Phi)
    fam_i = source_family if source_family is not None else build_P(i_shape, l)
    fam_j = target_family if target_family is not None else build_P(j_shape, l)
    if fam_i.j != i_shape or fam_j.j != j_shape or fam_i.l != l or fam_j.l != l:
        raise ValueError("families do not match the map tuple")
    _check_xi(i_shape, l, xi)
    xi2 = sigma_image(Phi, xi)
    sizes_i, t = fam_i.sizes(xi)
    sizes_j, _ = fam_j.sizes(xi2)
    etas = []
    for phi, s in zip(Phi, xi[0]):
        base = phi(s(0))
        etas.append(DeltaMorphism(s.source_arity, phi(s(s.source_arity)) - base,
                                  tuple(phi(v) - base for v in s.values)))
    mats = {}
    maxb = sum(1 for s in sizes_i if s >= 1) + t
    for b in range(maxb + 1):
        cols = _p_generators(sizes_i, t, b)
        if not cols:
            continue
        rows = _p_generators(sizes_j, t, b)
        row_index = {g: i for i, g in enumerate(rows)}
        entries = {}
        for col, (gamma, delta) in enumerate(cols):
            slot_images = []
            for eta, g in zip(etas, gamma):
                if g.source_arity == 0:
                    slots = [DeltaMorphism(0, eta.target_arity, (eta(g(0)),))]
                else:
                    lo, hi = eta(g.values[0]), eta(g.values[1])
                    slots = [DeltaMorphism(1, eta.target_arity, (k - 1, k))
                             for k in range(lo + 1, hi + 1)]
                slot_images.append(slots)
            for combo in product(*slot_images):
                key = (row_index[(combo, delta)], col)
                entries[key] = entries.get(key, Q(0)) + Q(1)
        mats[b] = _mat_from_entries(len(rows), len(cols), entries).T
    return ChainMap(fam_j.value(xi2), fam_i.value(xi), mats)


# ---------------------------------------------------------------------------
# the loop inclusion, the diagonal, and the suspension comparison


_EDGE01 = DeltaMorphism(1, 1, (0, 1))


def ell_hpb_comparison() -> ChainMap:
    """Comparison from a line in degree 1 into the homotopy pullback of the
    two zero maps into the interval spine cochains.

    The comparison is induced by the constant homotopy whose degree-1
    component is the diagonal; it is a quasi-isomorphism, exhibiting the
    shifted line as that homotopy pullback.
    """
    n1 = _spine_cochain(1)
    z = ChainMap.zero_map(RationalComplex.zero(), n1)
    p, _, _ = hpb(z, z)
    line = RationalComplex.concentrated(1)
    u = ChainMap.zero_map(line, RationalComplex.zero())
    h = {1: Mat.from_rows([[1], [1]])}
    return map_into_hpb(z, z, p, u, u, h)


@dataclass(eq=False)
class LRZMaps:
    """Comparison maps attached to a product family and a shift ``d``.

    * ``ell``: the line in degree ``d + 1`` included as the edge cochain of
      the shifted interval spine — the homotopy-pullback comparison map.
    * ``r``: the line in degree ``d`` mapped diagonally onto the vertex
      cochains — a quasi-isomorphism.
    * ``zeta_at(xi)``: for the family extended by one leading length-one
      axis, the map from the doubly-shifted base value into the extended
      value, tensoring with ``ell``; zero over vertex choices on the new
      axis.  Natural in ``xi``.
    """

    j: tuple
    l: int
    d: int
    ell: ChainMap = field(init=False)
    r: ChainMap = field(init=False)
    base: PComplexFamily = field(init=False)
    extended: PComplexFamily = field(init=False)

    def __post_init__(self):
        self.j = tuple(self.j)
        n1 = _spine_cochain(1).shift(-self.d)
        self.ell = ChainMap(RationalComplex.concentrated(self.d + 1), n1,
                            {self.d + 1: Mat.from_rows([[1]])})
        self.r = ChainMap(RationalComplex.concentrated(self.d), n1,
                          {self.d: Mat.from_rows([[1], [1]])})
        self.base = build_P(self.j, self.l)
        self.extended = build_P((1,) + self.j, self.l)

    def _split(self, xi):
        _check_xi((1,) + self.j, self.l, xi)
        sigma, tau = xi
        return sigma[0], (sigma[1:], tau)

    def zeta_source_at(self, xi) -> RationalComplex:
        """Domain of ``zeta_at(xi)``: the base value at the tail of ``xi``
        shifted into degrees ``d + 1`` and up, or zero when the leading
        axis is a vertex."""
        first, inner = self._split(xi)
        if first.source_arity == 0:
            return RationalComplex.zero()
        return self.base.value(inner).shift(-self.d - 1)

    def zeta_source_arrow(self, src, tgt) -> ChainMap:
        """Structure map between ``zeta`` domains over an index arrow of
        the extended family."""
        f_src, inner_src = self._split(src)
        f_tgt, inner_tgt = self._split(tgt)
        if not self.extended.has_arrow(src, tgt):
            raise ValueError("no structure map between these index objects")
        if f_src.source_arity == 0 or f_tgt.source_arity == 0:
            return ChainMap.zero_map(self.zeta_source_at(src),
                                     self.zeta_source_at(tgt))
        return self.base.arrow(inner_src, inner_tgt).shift(-self.d - 1)

    def zeta_at(self, xi) -> ChainMap:
        """Suspension comparison at one extended index object: a chain map
        from the shifted base value into the shifted extended value,
        placing a base generator on the edge of the leading axis with the
        sign ``(-1)^k`` in base degree ``k``."""
        first, inner = self._split(xi)
        target = self.extended.value(xi).shift(-self.d)
        if first.source_arity == 0:
            return ChainMap.zero_map(RationalComplex.zero(), target)
        y = self.base.value(inner)
        sizes, t = self.base.sizes(inner)
        esizes = (1,) + sizes
        mats = {}
        for k in y.dims:
            rows = _p_generators(esizes, t, k + 1)
            row_index = {g: i for i, g in enumerate(rows)}
            sign = Q(-1) if k % 2 else Q(1)
            entries = {}
            for col, (gamma, delta) in enumerate(_p_generators(sizes, t, k)):
                entries[(row_index[((_EDGE01,) + gamma, delta)], col)] = sign
            mats[k + self.d + 1] = _mat_from_entries(len(rows), y.dims[k], entries)
        return ChainMap(y.shift(-self.d - 1), target, mats)


def build_lrz(j, l: int, d: int) -> LRZMaps:
    """Comparison maps (loop inclusion, diagonal, suspension comparison)
    for the family of shape ``j`` and simplex size ``l``, shifted by ``d``."""
    return LRZMaps(tuple(j), l, d)
