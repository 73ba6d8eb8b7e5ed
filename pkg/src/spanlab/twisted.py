"""Twisted-arrow constructions on finite posets and coinitiality certification.

The central construction doubles a poset P into plain elements x and formal
duals x^v, with x <= y^v exactly when x and y admit a joint upper bound. This
poset model is only valid when every upper-bounded pair has a least upper
bound; otherwise construction is refused with a witness pair, and callers fall
back on the hom-nerve description (nerve of the joint upper-bound poset).
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .complexes import complex_of_semisimplicial, homology
from .posets import (FunctorBetweenPosets, Poset, SemiSimplicialSet, nerve,
                     tuple_label)

DUAL_SUFFIX = "^v"


def dual_label(x: str) -> str:
    return x + DUAL_SUFFIX


def is_dual_label(x: str) -> bool:
    return x.endswith(DUAL_SUFFIX)


def undual_label(x: str) -> str:
    if not is_dual_label(x):
        raise ValueError(f"not a dual label: {x!r}")
    return x[: -len(DUAL_SUFFIX)]


def tw_r(p: Poset) -> Poset:
    """Edgewise subdivision: elements are related pairs p <= q, with
    (p,q) <= (p',q') iff p <= p' and q' <= q."""
    elements = [tuple_label((a, b)) for a, b in sorted(p.leq) if p.le(a, b)]
    pairs = sorted(p.leq)
    leq = set()
    for a, b in pairs:
        for a2, b2 in pairs:
            if p.le(a, a2) and p.le(b2, b):
                leq.add((tuple_label((a, b)), tuple_label((a2, b2))))
    return Poset(tuple(sorted(elements)), frozenset(leq))


def bounded_pair_witness(p: Poset):
    """A pair with upper bounds but no least upper bound, or None."""
    for i, a in enumerate(p.elements):
        for b in p.elements[i:]:
            ubs = p.upper_bounds(a, b)
            if ubs and p.least_upper_bound(a, b) is None:
                return (a, b)
    return None


@dataclass(frozen=True)
class TwistedPoset:
    base: Poset
    poset: Poset

    def plain(self, x: str) -> str:
        if x not in self.base.elements:
            raise ValueError(f"{x!r} not in base poset")
        return x

    def dual(self, x: str) -> str:
        if x not in self.base.elements:
            raise ValueError(f"{x!r} not in base poset")
        return dual_label(x)

    def plain_embedding(self) -> FunctorBetweenPosets:
        return FunctorBetweenPosets.from_dict(self.base, self.poset,
                                              {x: x for x in self.base.elements})

    def dual_embedding(self) -> FunctorBetweenPosets:
        return FunctorBetweenPosets.from_dict(self.base.opposite(), self.poset,
                                              {x: dual_label(x) for x in self.base.elements})


def tw_shriek_poset(p: Poset) -> TwistedPoset:
    """The doubled poset {x, x^v} with x <= y, x^v <= y^v iff y <= x, and
    x <= y^v iff x and y have a joint upper bound. Requires every
    upper-bounded pair to have a least upper bound."""
    witness = bounded_pair_witness(p)
    if witness is not None:
        raise ValueError(
            f"not constructible as a poset: elements {witness[0]!r} and {witness[1]!r} "
            f"have upper bounds but no least upper bound")
    elements = list(p.elements) + [dual_label(x) for x in p.elements]
    leq = set()
    for a, b in p.leq:
        leq.add((a, b))
        leq.add((dual_label(b), dual_label(a)))
    for a in p.elements:
        for b in p.elements:
            if p.upper_bounds(a, b):
                leq.add((a, dual_label(b)))
    return TwistedPoset(p, Poset(tuple(elements), frozenset(leq)))


def tw_shriek_homs(p: Poset, x: str, y: str) -> SemiSimplicialSet:
    """Hom-data from x to y^v: the nerve of the joint upper-bound poset
    {z : x <= z and y <= z}. Valid with no least-upper-bound hypothesis."""
    ubs = [z for z in p.elements if p.le(x, z) and p.le(y, z)]
    return nerve(p.subposet(ubs))


@dataclass(frozen=True)
class TwistedCategory:
    """Objects x, x^v over a base poset, with hom-nerves for every (x, y^v)
    recorded explicitly; plain-to-plain and dual-to-dual homs are base order."""
    base: Poset
    homs: tuple  # ((x, y), SemiSimplicialSet) for all ordered pairs

    def hom_to_dual(self, x: str, y: str) -> SemiSimplicialSet:
        for (a, b), n in self.homs:
            if (a, b) == (x, y):
                return n
        raise ValueError(f"no hom data for ({x!r}, {y!r})")

    def hom_dimensions(self, x: str, y: str) -> dict:
        return self.hom_to_dual(x, y).f_vector()


def tw_category(p: Poset) -> TwistedCategory:
    homs = tuple(((x, y), tw_shriek_homs(p, x, y))
                 for x in p.elements for y in p.elements)
    return TwistedCategory(p, homs)


def cone_compatibility(p: Poset) -> bool:
    """Whether doubling the left cone P^< equals the doubling of P with a new
    initial element adjoined at the bottom and its dual at the top."""
    coned = p.cone_left()
    tw_cone = tw_shriek_poset(coned).poset
    tw_base = tw_shriek_poset(p).poset
    new_bottom = "-inf"
    new_top = dual_label("-inf")
    inner = [e for e in tw_cone.elements if e not in (new_bottom, new_top)]
    if set(inner) != set(tw_base.elements):
        return False
    if tw_cone.subposet(sorted(inner)).leq != tw_base.subposet(sorted(inner)).leq:
        return False
    if tw_cone.initial_element() != new_bottom:
        return False
    if tw_cone.terminal_element() != new_top:
        return False
    return True


CONTRACTIBLE_CERTIFIED = "CONTRACTIBLE_CERTIFIED"
Q_ACYCLIC = "Q_ACYCLIC"
FAILS = "FAILS"


@dataclass(frozen=True)
class CoinitialityReport:
    entries: tuple  # (target element, verdict, witness or None)

    @property
    def verdict(self) -> bool:
        return all(v != FAILS for _, v, _ in self.entries)

    def entry(self, target):
        for t, v, w in self.entries:
            if t == target:
                return (v, w)
        raise ValueError(f"no entry for {target!r}")

    def to_json(self) -> str:
        return json.dumps([{"target": t, "verdict": v, "witness": w}
                           for t, v, w in self.entries])


def classify_slice(slice_poset: Poset):
    """(verdict, witness) for weak contractibility of a finite poset."""
    if not slice_poset.elements:
        return (FAILS, "empty slice")
    if slice_poset.initial_element() is not None or slice_poset.terminal_element() is not None:
        return (CONTRACTIBLE_CERTIFIED, None)
    reduced = homology(complex_of_semisimplicial(nerve(slice_poset), reduced=True))
    if not reduced:
        return (Q_ACYCLIC, None)
    degree = min(-n for n in reduced if reduced[n])
    bad = {(-n): r for n, r in reduced.items()}
    return (FAILS, f"reduced homology {bad} (first nonzero in degree {degree})")


def check_coinitial(f: FunctorBetweenPosets) -> CoinitialityReport:
    """For each target element q, classify the slice {p : F(p) <= q}."""
    entries = []
    for q in f.target.elements:
        keep = [p for p in f.source.elements if f.target.le(f(p), q)]
        entries.append((q, *classify_slice(f.source.subposet(keep))))
    return CoinitialityReport(tuple(entries))
