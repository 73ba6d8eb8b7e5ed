"""Open-interval grid combinatorics for the cutting construction.

An :class:`IntervalTuple` holds, per direction, an ordered family of open
rational intervals ``(a_0, b_0) <= ... <= (a_j, b_j)`` — both endpoint
sequences nondecreasing, each interval nonempty.  Three boxes are attached
to such a family in each direction:

* the open hull ``(a_0, b_j)``,
* the half-way closed shrink ``[(a_0 + b_0)/2, (a_j + b_j)/2]``,
* the third-way closed shrink ``[(2 a_0 + b_0)/3, (a_j + 2 b_j)/3]``,

with the half-way box inside the third-way box inside the closed hull.
The grid assignment selects a sub-family per direction by a monotone
reindexing (dropping or duplicating intervals) and returns the half-way
shrink of the selection; it grows monotonically as the selected index
intervals grow, is blind to active injective reindexings, and includes
naturally into the third-way variant.  Only constant (one-point simplex)
families are supported: the simplex argument must be trivial.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from ._linalg import Q, as_q
from .posets import DeltaMorphism

__all__ = [
    "Box",
    "BoxInclusion",
    "IntervalTuple",
    "b_variants",
    "restrict_tuple",
    "grid",
    "grid_tilde",
    "grid_monotone",
    "gamma_inclusion",
    "interval_tuple_to_json",
    "interval_tuple_from_json",
]


def _enc(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Box:
    """Product of closed rational intervals, one per direction."""

    intervals: tuple

    def __post_init__(self):
        coerced = tuple((as_q(lo), as_q(hi)) for lo, hi in self.intervals)
        for lo, hi in coerced:
            if lo > hi:
                raise ValueError(f"empty direction in box: [{lo}, {hi}]")
        object.__setattr__(self, "intervals", coerced)

    @property
    def dimension_count(self) -> int:
        return len(self.intervals)

    def contains(self, other: "Box") -> bool:
        """Whether ``other`` is contained in this box (componentwise)."""
        if len(other.intervals) != len(self.intervals):
            return False
        return all(lo <= olo and ohi <= hi
                   for (lo, hi), (olo, ohi) in zip(self.intervals, other.intervals))

    def strictly_contains(self, other: "Box") -> bool:
        if len(other.intervals) != len(self.intervals):
            return False
        return all(lo < olo and ohi < hi
                   for (lo, hi), (olo, ohi) in zip(self.intervals, other.intervals))

    def is_point(self) -> bool:
        return all(lo == hi for lo, hi in self.intervals)


@dataclass(frozen=True)
class BoxInclusion:
    """A verified containment of closed boxes; construction fails hard when
    the containment does not hold, since that would mean the grid data is
    inconsistent."""

    smaller: Box
    larger: Box

    def __post_init__(self):
        if not self.larger.contains(self.smaller):
            raise RuntimeError(
                f"box containment failure: {self.smaller} is not inside "
                f"{self.larger}")


@dataclass(frozen=True)
class IntervalTuple:
    """Per direction, an ordered tuple of open rational intervals.

    Direction ``i`` holds intervals ``(a_0, b_0), ..., (a_{j_i}, b_{j_i})``
    with ``a_k < b_k`` and both endpoint sequences nondecreasing.
    """

    directions: tuple

    def __post_init__(self):
        coerced = []
        for idx, seq in enumerate(self.directions):
            seq = tuple((as_q(a), as_q(b)) for a, b in seq)
            if not seq:
                raise ValueError(f"direction {idx} has no intervals")
            for a, b in seq:
                if a >= b:
                    raise ValueError(f"direction {idx}: empty interval ({a}, {b})")
            for (a0, b0), (a1, b1) in zip(seq, seq[1:]):
                if a0 > a1 or b0 > b1:
                    raise ValueError(
                        f"direction {idx}: intervals out of order near ({a1}, {b1})")
            coerced.append(seq)
        object.__setattr__(self, "directions", tuple(coerced))

    @property
    def shape(self) -> tuple:
        """Index arity per direction: direction ``i`` has ``shape[i] + 1``
        intervals."""
        return tuple(len(seq) - 1 for seq in self.directions)

    def hull(self) -> tuple:
        """The open surrounding box, as an ``(a_0, b_j)`` pair per
        direction."""
        return tuple((seq[0][0], seq[-1][1]) for seq in self.directions)


def b_variants(intervals) -> tuple:
    """The three boxes of a single-direction interval sequence.

    Returns ``(hull, half, third)``: the open hull ``(a_0, b_k)``, the
    closed half-way shrink ``[(a_0+b_0)/2, (a_k+b_k)/2]``, and the closed
    third-way shrink ``[(2a_0+b_0)/3, (a_k+2b_k)/3]``.  The half-way box
    sits inside the third-way box, which sits inside the closed hull.
    """
    seq = IntervalTuple((tuple(intervals),)).directions[0]
    a0, b0 = seq[0]
    ak, bk = seq[-1]
    hull = (a0, bk)
    half = ((a0 + b0) / 2, (ak + bk) / 2)
    third = ((2 * a0 + b0) / 3, (ak + 2 * bk) / 3)
    if not (hull[0] <= third[0] <= half[0] <= half[1] <= third[1] <= hull[1]):
        raise RuntimeError("box variants failed their containment ordering")
    return hull, half, third


def _check_selector(itup: IntervalTuple, xi) -> tuple:
    shape = itup.shape
    if len(xi) != len(shape):
        raise ValueError(f"expected {len(shape)} direction selectors, got {len(xi)}")
    for m, (phi, jm) in enumerate(zip(xi, shape)):
        if not isinstance(phi, DeltaMorphism) or phi.target_arity != jm:
            raise ValueError(f"direction {m}: selector must be a monotone map "
                             f"into [{jm}]")
    return tuple(xi)


def _check_tau(tau) -> None:
    if tau is None:
        return
    if (isinstance(tau, DeltaMorphism) and tau.source_arity == 0
            and tau.target_arity == 0):
        return
    raise ValueError("only constant one-point simplex families are supported")


def restrict_tuple(itup: IntervalTuple, xi) -> IntervalTuple:
    """Reindex each direction's intervals along a monotone map (dropping
    or duplicating intervals)."""
    xi = _check_selector(itup, xi)
    return IntervalTuple(tuple(
        tuple(seq[phi(x)] for x in range(phi.source_arity + 1))
        for seq, phi in zip(itup.directions, xi)))


def grid(itup: IntervalTuple, xi, tau=None) -> Box:
    """Half-way closed box of the selected sub-family: per direction,
    restrict the intervals along the selector and take the half-way
    shrink.  Only the first and last selected intervals matter."""
    _check_tau(tau)
    sub = restrict_tuple(itup, xi)
    return Box(tuple(b_variants(seq)[1] for seq in sub.directions))


def grid_tilde(itup: IntervalTuple, xi, tau=None) -> Box:
    """Third-way variant of :func:`grid` (a strictly larger closed box
    whenever the family is nontrivial)."""
    _check_tau(tau)
    sub = restrict_tuple(itup, xi)
    return Box(tuple(b_variants(seq)[2] for seq in sub.directions))


def grid_monotone(itup: IntervalTuple, xi_small, xi_big,
                  tau_small=None, tau_big=None) -> BoxInclusion:
    """Verified containment ``grid(xi_small) inside grid(xi_big)`` for a
    growth of index intervals; raises if the selected index intervals do
    not actually grow, and fails hard if the box containment breaks."""
    _check_tau(tau_small)
    _check_tau(tau_big)
    small = _check_selector(itup, xi_small)
    big = _check_selector(itup, xi_big)
    for m, (ps, pb) in enumerate(zip(small, big)):
        if ps(0) < pb(0) or ps(ps.source_arity) > pb(pb.source_arity):
            raise ValueError(f"direction {m}: selected index interval does not grow")
    return BoxInclusion(grid(itup, xi_small), grid(itup, xi_big))


def gamma_inclusion(itup: IntervalTuple, xi, tau=None) -> BoxInclusion:
    """The natural containment of the half-way grid box inside its
    third-way variant at the same index data."""
    return BoxInclusion(grid(itup, xi, tau), grid_tilde(itup, xi, tau))


def interval_tuple_to_json(itup: IntervalTuple) -> str:
    """Serialize as one array of ``[a, b]`` rational-string pairs per
    direction."""
    return json.dumps([[[_enc(a), _enc(b)] for a, b in seq]
                       for seq in itup.directions])


def interval_tuple_from_json(text: str) -> IntervalTuple:
    """Inverse of :func:`interval_tuple_to_json` (validates orderings)."""
    data = json.loads(text)
    return IntervalTuple(tuple(
        tuple((Fraction(a), Fraction(b)) for a, b in seq) for seq in data))
