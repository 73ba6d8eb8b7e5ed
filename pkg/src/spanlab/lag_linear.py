"""Linear models of shifted antisymmetric pairings and their correspondences.

A *symplectic complex* is a bounded rational complex V with an integer shift s
and a pairing map V -> V*[s] that is a chain map, graded-antisymmetric for the
flip convention fixed below, and a quasi-isomorphism.  A *correspondence*
between two symplectic complexes of equal shift is a span whose apex carries a
homotopy witnessing that the two pulled-back pairings agree; it is *Lagrangian*
when the induced comparison map from the apex into the homotopy pullback of
the two leg dualities is a quasi-isomorphism.

The flip of a pairing q: V -> V*[s] is the graded transpose

    flip(q)[n] = (-1)^{n(s+1)} q[-n-s]^T,

an involution on chain maps V -> V*[s]; at the level of bilinear forms it
sends q(x, y) to (-1)^{|x||y|} q(y, x).  Antisymmetry means flip(q) = -q.
Every sign in this module is pinned by that single convention together with
the shift/dual/tensor conventions of the complexes module, and every homotopy
formula below is revalidated at runtime by the ChainHomotopy constructor.

The module also hosts a linear transgression: an oriented cochain algebra
(associative unital multiplication, top-degree functional vanishing on
boundaries) turns a symplectic complex of shift s into one of shift s - d on
the tensor product, and an algebra cospan with a boundary functional turns it
into a correspondence between the transgressions of the two feet, with the
isotropy homotopy supplied by the boundary identity of the cospan functional.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ._linalg import Mat, Q, nullspace, solve
from .complexes import (
    ChainHomotopy,
    ChainMap,
    Diagram,
    RationalComplex,
    hpb,
    hpb_witness,
    map_into_hpb,
)


# ---------------------------------------------------------------------------
# pairings and their flips


def pairing_flip(pairing: ChainMap, shift: int) -> ChainMap:
    """Graded transpose of a pairing V -> V*[shift]; an involution."""
    mats = {}
    for m in pairing.mats:
        n = -m - shift
        sign = Q(-1) if (n * (shift + 1)) % 2 else Q(1)
        mats[n] = pairing.at(m).T.scale(sign)
    return ChainMap(pairing.source, pairing.target, mats)


def antisymmetrize_pairing(pairing: ChainMap, shift: int) -> ChainMap:
    """(q - flip(q)) / 2; the identity on already antisymmetric pairings."""
    return (pairing - pairing_flip(pairing, shift)).scale(Q(1, 2))


def symmetrize_pairing(pairing: ChainMap, shift: int) -> ChainMap:
    """(q + flip(q)) / 2; the identity on already symmetric pairings."""
    return (pairing + pairing_flip(pairing, shift)).scale(Q(1, 2))


def _is_zero_map(f: ChainMap) -> bool:
    return all(m.is_zero() for m in f.mats.values())


# ---------------------------------------------------------------------------
# symplectic complexes


@dataclass(eq=False)
class SymplecticComplex:
    """A complex with a shifted pairing into its dual.

    The constructor checks shapes only; check_symplectic verifies the three
    structural invariants (chain map, antisymmetry, quasi-isomorphism).
    ``presymplectic_only`` marks pairings produced by transgression along an
    algebra whose duality fails: the pairing data is still an antisymmetric
    chain map, but it is not a quasi-isomorphism.
    """

    space: RationalComplex
    shift: int
    pairing: ChainMap
    presymplectic_only: bool = False

    def __post_init__(self):
        want = self.space.dual().shift(self.shift)
        if self.pairing.source.dims != self.space.dims:
            raise ValueError("pairing source does not match the space")
        if self.pairing.target.dims != want.dims:
            raise ValueError("pairing target is not the shifted dual")

    def is_symplectic(self) -> bool:
        return check_symplectic(self.space, self.shift, self.pairing)


def symplectic_failures(space: RationalComplex, shift: int, pairing) -> list:
    """Names of the invariants that fail; empty exactly when symplectic."""
    failures = []
    if not isinstance(pairing, ChainMap):
        try:
            pairing = ChainMap(space, space.dual().shift(shift),
                               {int(n): m for n, m in dict(pairing).items()})
        except ValueError:
            return ["pairing is not a chain map into the shifted dual"]
    if pairing.source.dims != space.dims:
        return ["pairing source does not match the space"]
    if pairing.target.dims != space.dual().shift(shift).dims:
        return ["pairing target is not the shifted dual"]
    if not _is_zero_map(pairing + pairing_flip(pairing, shift)):
        failures.append("pairing is not graded antisymmetric")
    if not pairing.is_quasi_iso():
        failures.append("pairing is not a quasi-isomorphism")
    return failures


def check_symplectic(space: RationalComplex, shift: int, pairing) -> bool:
    return not symplectic_failures(space, shift, pairing)


def zero_symplectic(shift: int) -> SymplecticComplex:
    z = RationalComplex.zero()
    return SymplecticComplex(z, shift, ChainMap(z, z.dual().shift(shift), {}))


def hyperbolic_symplectic(w: RationalComplex, shift: int) -> SymplecticComplex:
    """The sum of w and its shifted dual with the evaluation pairing.

    The candidate pairing sends the dual summand identically onto the dual of
    the first summand; antisymmetrization fills in the complementary block
    with the graded transpose, so the result is invertible in every degree.
    """
    wd = w.dual().shift(shift)
    v = w.direct_sum(wd)
    target = v.dual().shift(shift)
    mats = {}
    for n in v.dims:
        # evaluation block: dual-summand coordinates of v^n map identically to
        # the w-dual coordinates sitting first in target^n.
        k = wd.dim(n)
        if k:
            mats[n] = Mat(target.dim(n), v.dim(n),
                          tuple(tuple(Q(1)
                                      if i < k and j == w.dim(n) + i else Q(0)
                                      for j in range(v.dim(n)))
                                for i in range(target.dim(n))))
    cand = ChainMap(v, target, mats)
    return SymplecticComplex(v, shift, antisymmetrize_pairing(cand, shift))


def pullback_symplectic(x: SymplecticComplex, phi: ChainMap) -> SymplecticComplex:
    """Transport the pairing backwards along a quasi-isomorphism phi: V' -> V."""
    if phi.target.dims != x.space.dims:
        raise ValueError("map target must be the symplectic space")
    pairing = phi.dual().shift(x.shift).compose(x.pairing).compose(phi)
    return SymplecticComplex(phi.source, x.shift, pairing)


def negate(x: SymplecticComplex) -> SymplecticComplex:
    """Reverse the pairing; an involution preserving the symplectic check."""
    return SymplecticComplex(x.space, x.shift, x.pairing.scale(Q(-1)),
                             x.presymplectic_only)


def _same_symplectic(a: SymplecticComplex, b: SymplecticComplex) -> bool:
    if a is b:
        return True
    if a.shift != b.shift or a.space.dims != b.space.dims:
        return False
    return all((a.pairing.at(n) - b.pairing.at(n)).is_zero()
               for n in set(a.pairing.mats) | set(b.pairing.mats))


# ---------------------------------------------------------------------------
# homotopy dictionaries (per-degree matrices h[n]: src^n -> tgt^{n-1})


def _hdict_add(*hs: dict) -> dict:
    out = {}
    for h in hs:
        for n, m in h.items():
            cur = out.get(n)
            out[n] = m if cur is None else cur + m
    return {n: m for n, m in out.items() if not m.is_zero()}


def _hdict_scale(h: dict, c) -> dict:
    return {n: m.scale(c) for n, m in h.items()}


def _hdict_conjugate(post: ChainMap, h: dict, pre: ChainMap) -> dict:
    """post . h . pre homotopes post . f . pre when h homotopes f."""
    out = {}
    for n, m in h.items():
        mat = post.at(n - 1) * m * pre.at(n)
        if not mat.is_zero():
            out[n] = mat
    return out


def _hdict_post(post: ChainMap, h: dict) -> dict:
    out = {}
    for n, m in h.items():
        mat = post.at(n - 1) * m
        if not mat.is_zero():
            out[n] = mat
    return out


def _hdict_pre(h: dict, pre: ChainMap) -> dict:
    out = {}
    for n, m in h.items():
        mat = m * pre.at(n)
        if not mat.is_zero():
            out[n] = mat
    return out


def _hdict_dual_shift(h: dict, shift: int) -> dict:
    """Shifted dual of a homotopy: if d h + h d = f - g for f, g: A -> B, the
    result k[n] = (-1)^n h[1-shift-n]^T satisfies d k + k d = f*[shift] - g*[shift]."""
    out = {}
    for m, mat in h.items():
        n = 1 - shift - m
        sign = Q(-1) if n % 2 else Q(1)
        out[n] = mat.T.scale(sign)
    return out


def is_null_homotopic(f: ChainMap) -> bool:
    """Solve d k + k d = f degreewise; true when a witness exists."""
    src, tgt = f.source, f.target
    eq_degrees = sorted(set(src.dims) | {n + 1 for n in src.dims}
                        | set(f.mats))
    var_degrees = sorted(n for n in set(src.dims)
                         if src.dim(n) and tgt.dim(n - 1))
    var_offset = {}
    total_vars = 0
    for n in var_degrees:
        var_offset[n] = total_vars
        total_vars += tgt.dim(n - 1) * src.dim(n)
    rows = []
    rhs = []
    for n in eq_degrees:
        r_dim, c_dim = tgt.dim(n), src.dim(n)
        if r_dim == 0 or c_dim == 0:
            continue
        dt = tgt.d_at(n - 1)
        ds = src.d_at(n)
        fm = f.at(n)
        for r in range(r_dim):
            for c in range(c_dim):
                row = [Q(0)] * total_vars
                if n in var_offset:
                    base = var_offset[n]
                    for j in range(tgt.dim(n - 1)):
                        coeff = dt.entry(r, j)
                        if coeff:
                            row[base + j * c_dim + c] = coeff
                if n + 1 in var_offset:
                    base = var_offset[n + 1]
                    w = src.dim(n + 1)
                    for j in range(w):
                        coeff = ds.entry(j, c)
                        if coeff:
                            row[base + r * w + j] = coeff
                rows.append(row)
                rhs.append([fm.entry(r, c)])
    if not rows:
        return True
    a = Mat.from_rows(rows, rows=len(rows), cols=total_vars)
    b = Mat.from_rows(rhs, rows=len(rhs), cols=1)
    return solve(a, b) is not None


# ---------------------------------------------------------------------------
# correspondences


@dataclass(eq=False)
class Correspondence:
    """A span of complexes between two symplectic complexes of equal shift.

    ``homotopy`` maps each degree n to a matrix apex^n -> (apex*[s])^{n-1}
    and witnesses that the pairing pulled through the left leg and the pairing
    pulled through the right leg agree up to homotopy (the isotropy
    condition); the constructor validates the witness exactly.
    """

    left: SymplecticComplex
    right: SymplecticComplex
    apex: RationalComplex
    left_leg: ChainMap
    right_leg: ChainMap
    homotopy: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.left.shift != self.right.shift:
            raise ValueError("correspondence requires equal shifts")
        if self.left_leg.source.dims != self.apex.dims \
                or self.left_leg.target.dims != self.left.space.dims:
            raise ValueError("left leg endpoints do not match")
        if self.right_leg.source.dims != self.apex.dims \
                or self.right_leg.target.dims != self.right.space.dims:
            raise ValueError("right leg endpoints do not match")
        self.homotopy = {n: m for n, m in self.homotopy.items()
                         if not m.is_zero()}
        ChainHomotopy(self.pairing_through_right(),
                      self.pairing_through_left(), self.homotopy)

    @property
    def shift(self) -> int:
        return self.left.shift

    def leg_duality_left(self) -> ChainMap:
        """left space -> apex*[s]: pair with the image of the left leg."""
        return self.left_leg.dual().shift(self.shift).compose(self.left.pairing)

    def leg_duality_right(self) -> ChainMap:
        return self.right_leg.dual().shift(self.shift).compose(self.right.pairing)

    def pairing_through_left(self) -> ChainMap:
        return self.leg_duality_left().compose(self.left_leg)

    def pairing_through_right(self) -> ChainMap:
        return self.leg_duality_right().compose(self.right_leg)

    def is_strict(self) -> bool:
        """Whether the two pulled-back pairings agree exactly."""
        return _is_zero_map(self.pairing_through_left()
                            - self.pairing_through_right())


def check_lagrangian(c: Correspondence) -> bool:
    """True when the apex maps quasi-isomorphically to the homotopy pullback
    of the two leg dualities; the isotropy homotopy supplies the witness."""
    f = c.leg_duality_left()
    g = c.leg_duality_right()
    p, _, _ = hpb(f, g)
    comparison = map_into_hpb(f, g, p, c.left_leg, c.right_leg, c.homotopy)
    return comparison.is_quasi_iso()


def identity_correspondence(x: SymplecticComplex) -> Correspondence:
    ident = ChainMap.identity(x.space)
    return Correspondence(x, x, x.space, ident, ident, {})


def graph_correspondence(x: SymplecticComplex, phi: ChainMap) -> Correspondence:
    """Graph of a quasi-isomorphism into x: a correspondence from the
    transported structure to x with identity left leg and strict isotropy."""
    transported = pullback_symplectic(x, phi)
    return Correspondence(transported, x, phi.source,
                          ChainMap.identity(phi.source), phi, {})


def transpose_correspondence(c: Correspondence) -> Correspondence:
    return Correspondence(c.right, c.left, c.apex, c.right_leg, c.left_leg,
                          _hdict_scale(c.homotopy, Q(-1)))


def zero_section_correspondence(w: RationalComplex, shift: int) -> Correspondence:
    """The first summand of the hyperbolic structure on w + w*[shift], viewed
    as a correspondence from the zero symplectic complex."""
    x = hyperbolic_symplectic(w, shift)
    incl = ChainMap(w, x.space,
                    {n: Mat.vstack([Mat.eye(w.dim(n)),
                                    Mat.zero(x.space.dim(n) - w.dim(n),
                                             w.dim(n))])
                     for n in w.dims})
    z = zero_symplectic(shift)
    return Correspondence(z, x, w, ChainMap.zero_map(w, z.space), incl, {})


def compose(c1: Correspondence, c2: Correspondence) -> Correspondence:
    """Composite correspondence over the homotopy pullback of the middle legs.

    The composite isotropy homotopy is assembled from the two given homotopies
    conjugated by the pullback projections, plus two correction terms built
    from the pullback's witness coordinate paired through the middle pairing.
    """
    if not _same_symplectic(c1.right, c2.left):
        raise ValueError("middle symplectic complexes do not match")
    s = c1.shift
    middle = c1.right
    p, pr1, pr2 = hpb(c1.right_leg, c2.left_leg)
    witness = hpb_witness(c1.right_leg, c2.left_leg, p)
    left_leg = c1.left_leg.compose(pr1)
    right_leg = c2.right_leg.compose(pr2)
    m1 = c1.right_leg.compose(pr1)
    m2 = c2.left_leg.compose(pr2)
    pr1_dual = pr1.dual().shift(s)
    pr2_dual = pr2.dual().shift(s)
    term_a = _hdict_conjugate(pr1_dual, c1.homotopy, pr1)
    term_b = _hdict_conjugate(pr2_dual, c2.homotopy, pr2)
    post = m1.dual().shift(s).compose(middle.pairing)
    term_c = _hdict_post(post, witness)
    witness_dual = _hdict_dual_shift(witness, s)
    term_d = _hdict_pre(witness_dual, middle.pairing.compose(m2))
    homotopy = _hdict_add(term_a, term_b, term_c, term_d)
    return Correspondence(c1.left, c2.right, p, left_leg, right_leg, homotopy)


def correspondences_equivalent(c1: Correspondence, c2: Correspondence,
                               comparison: ChainMap) -> bool:
    """Equivalence along an explicit apex map: the map must be a
    quasi-isomorphism commuting strictly with both legs, and the two isotropy
    homotopies must agree up to a null-homotopic discrepancy."""
    if not (_same_symplectic(c1.left, c2.left)
            and _same_symplectic(c1.right, c2.right)):
        return False
    if comparison.source.dims != c1.apex.dims \
            or comparison.target.dims != c2.apex.dims:
        return False
    if not _is_zero_map(c2.left_leg.compose(comparison) - c1.left_leg):
        return False
    if not _is_zero_map(c2.right_leg.compose(comparison) - c1.right_leg):
        return False
    if not comparison.is_quasi_iso():
        return False
    s = c1.shift
    pulled = _hdict_conjugate(comparison.dual().shift(s), c2.homotopy,
                              comparison)
    delta = _hdict_add(c1.homotopy, _hdict_scale(pulled, Q(-1)))
    target = c1.apex.dual().shift(s - 1)
    discrepancy = ChainMap(c1.apex, target,
                           {n: m for n, m in delta.items()})
    return is_null_homotopic(discrepancy)


# ---------------------------------------------------------------------------
# delooping


@dataclass(eq=False)
class DeloopVerdict:
    """Both readings of a homotopy over the doubly-zero span, compared."""

    lagrangian_side: bool
    symplectic_side: bool

    @property
    def agree(self) -> bool:
        return self.lagrangian_side == self.symplectic_side

    def __bool__(self) -> bool:
        return self.agree


def deloop(space: RationalComplex, shift: int, h: ChainMap) -> DeloopVerdict:
    """Compare two readings of a chain map h: V -> V*[shift-1].

    Lagrangian side: the span 0 <- V -> 0 of shift-s zero complexes with
    isotropy homotopy h.  Symplectic side: (V, shift-1, h) as a symplectic
    complex.  Both verdicts are computed independently.
    """
    want = space.dual().shift(shift - 1)
    if h.source.dims != space.dims or h.target.dims != want.dims:
        raise ValueError("homotopy must map the space to its (shift-1) dual")
    z = zero_symplectic(shift)
    zero_leg = ChainMap.zero_map(space, z.space)
    corr = Correspondence(z, z, space, zero_leg, zero_leg,
                          {n: h.at(n) for n in h.mats})
    lag = check_lagrangian(corr)
    symp = check_symplectic(space, shift - 1, h)
    return DeloopVerdict(lag, symp)


# ---------------------------------------------------------------------------
# cochain algebras with orientation functionals


def _kron(a: Mat, b: Mat) -> Mat:
    entries = {}
    for i, j, v in a.nonzero_entries():
        for i2, j2, w in b.nonzero_entries():
            entries[(i * b.rows + i2, j * b.cols + j2)] = v * w
    grid = [[Q(0)] * (a.cols * b.cols) for _ in range(a.rows * b.rows)]
    for (i, j), v in entries.items():
        grid[i][j] = v
    return Mat(a.rows * b.rows, a.cols * b.cols,
               tuple(tuple(r) for r in grid))


@dataclass(eq=False)
class CochainAlgebra:
    """An associative unital multiplication on a complex.

    ``products`` maps a bidegree (p, q) to a matrix C^{p+q} <- C^p (x) C^q
    whose column for basis pair (i, j) sits at flat index i * dim(q) + j.
    The constructor validates the graded Leibniz rule (by assembling the
    multiplication as a chain map out of the tensor square), associativity,
    and both unit laws.  Strict graded commutativity is not required: the
    orientation pairings below symmetrize, so algebras commutative only up to
    homotopy are acceptable.
    """

    space: RationalComplex
    products: dict
    unit: Mat

    def __post_init__(self):
        c = self.space
        if (self.unit.rows, self.unit.cols) != (c.dim(0), 1):
            raise ValueError("unit must be a degree-0 column vector")
        for (p, q), m in self.products.items():
            want = (c.dim(p + q), c.dim(p) * c.dim(q))
            if (m.rows, m.cols) != want:
                raise ValueError(f"product block {(p, q)} has shape "
                                 f"{(m.rows, m.cols)}, want {want}")
        self.multiplication_map()  # validates the Leibniz rule
        degs = [n for n in c.dims]
        for p in degs:
            for q in degs:
                for r in degs:
                    if c.dim(p + q + r) == 0 and c.dim(p + q) == 0 \
                            and c.dim(q + r) == 0:
                        continue
                    lhs = self.product_block(p + q, r) * _kron(
                        self.product_block(p, q), Mat.eye(c.dim(r)))
                    rhs = self.product_block(p, q + r) * _kron(
                        Mat.eye(c.dim(p)), self.product_block(q, r))
                    if not (lhs - rhs).is_zero():
                        raise ValueError(f"multiplication is not associative "
                                         f"at bidegrees {(p, q, r)}")
        for q in degs:
            k = c.dim(q)
            left = self.product_block(0, q) * _kron(self.unit, Mat.eye(k))
            right = self.product_block(q, 0) * _kron(Mat.eye(k), self.unit)
            if not (left - Mat.eye(k)).is_zero():
                raise ValueError(f"left unit law fails in degree {q}")
            if not (right - Mat.eye(k)).is_zero():
                raise ValueError(f"right unit law fails in degree {q}")

    def product_block(self, p: int, q: int) -> Mat:
        got = self.products.get((p, q))
        if got is not None:
            return got
        c = self.space
        return Mat.zero(c.dim(p + q), c.dim(p) * c.dim(q))

    def multiplication_map(self) -> ChainMap:
        """The multiplication as a chain map out of the tensor square."""
        c = self.space
        square = c.tensor(c)
        mats = {}
        for n in square.dims:
            blocks = [self.product_block(p, q)
                      for p, q, _, _ in c.tensor_basis(c, n)]
            if blocks:
                mats[n] = Mat.hstack(blocks)
        return ChainMap(square, c, mats)

    def is_strictly_graded_commutative(self) -> bool:
        c = self.space
        for p in c.dims:
            for q in c.dims:
                if c.dim(p + q) == 0:
                    continue
                forward = self.product_block(p, q)
                backward = self.product_block(q, p)
                sign = Q(-1) if (p * q) % 2 else Q(1)
                a, b = c.dim(p), c.dim(q)
                for i in range(a):
                    for j in range(b):
                        col_f = [forward.entry(r, i * b + j)
                                 for r in range(forward.rows)]
                        col_b = [backward.entry(r, j * a + i)
                                 for r in range(backward.rows)]
                        if any(x - sign * y for x, y in zip(col_f, col_b)):
                            return False
        return True


@dataclass(eq=False)
class OrientedCochainAlgebra(CochainAlgebra):
    """A cochain algebra with a top-degree functional killing boundaries."""

    top_degree: int = 0
    functional: Mat = None

    def __post_init__(self):
        super().__post_init__()
        d = self.top_degree
        if self.functional is None:
            self.functional = Mat.zero(1, self.space.dim(d))
        if (self.functional.rows, self.functional.cols) != (1, self.space.dim(d)):
            raise ValueError("functional must be a row vector on the top degree")
        if not (self.functional * self.space.d_at(d - 1)).is_zero():
            raise ValueError("functional does not vanish on boundaries")

    def duality_map(self) -> ChainMap:
        """a |-> (b |-> functional(a . b)), a chain map C -> C*[-top_degree]."""
        c = self.space
        target = c.dual().shift(-self.top_degree)
        mats = {}
        for p in c.dims:
            q = self.top_degree - p
            rows, cols = c.dim(q), c.dim(p)
            if rows == 0:
                continue
            block = self.functional * self.product_block(p, q)
            grid = [[block.entry(0, i * rows + j) for i in range(cols)]
                    for j in range(rows)]
            mat = Mat.from_rows(grid, rows=rows, cols=cols)
            if not mat.is_zero():
                mats[p] = mat
        return ChainMap(c, target, mats)

    def symmetrized_duality(self) -> ChainMap:
        return symmetrize_pairing(self.duality_map(), -self.top_degree)

    def has_duality(self) -> bool:
        return self.duality_map().is_quasi_iso()


def oriented_algebra_failures(t: OrientedCochainAlgebra) -> list:
    """Structural identities are enforced at construction; this reports the
    computed invariants (duality both plain and symmetrized)."""
    failures = []
    if not t.has_duality():
        failures.append("orientation duality is not a quasi-isomorphism")
    elif not t.symmetrized_duality().is_quasi_iso():
        failures.append("symmetrized orientation duality is not a "
                        "quasi-isomorphism")
    return failures


def check_oriented_algebra(t: OrientedCochainAlgebra) -> bool:
    return not oriented_algebra_failures(t)


def point_algebra() -> OrientedCochainAlgebra:
    c = RationalComplex.concentrated(0)
    one = Mat.from_rows([[1]], rows=1, cols=1)
    return OrientedCochainAlgebra(c, {(0, 0): one}, one,
                                  top_degree=0, functional=one)


def circle_algebra() -> OrientedCochainAlgebra:
    """Two-dimensional exterior model of circle cochains: a unit in degree 0,
    a square-zero generator in degree 1, functional picking its coefficient."""
    c = RationalComplex({0: 1, 1: 1}, {})
    one = Mat.from_rows([[1]], rows=1, cols=1)
    products = {
        (0, 0): one,
        (0, 1): one,
        (1, 0): one,
        (1, 1): Mat.zero(0, 1),
    }
    return OrientedCochainAlgebra(c, products, one,
                                  top_degree=1, functional=one)


def interval_algebra() -> CochainAlgebra:
    """Simplicial cochains on a single edge: two vertex indicators in degree 0
    and one edge cochain in degree 1, with the front-face cup product.  The
    product is associative but not strictly graded commutative.  Integration
    over the edge is not a closed functional (its boundary pairs the two
    endpoint evaluations), so this algebra appears as the total algebra of a
    cospan between points rather than as an oriented algebra itself."""
    c = RationalComplex({0: 2, 1: 1}, {0: Mat.from_rows([[-1, 1]],
                                                        rows=1, cols=2)})
    products = {
        # vertex functions multiply pointwise
        (0, 0): Mat.from_rows([[1, 0, 0, 0], [0, 0, 0, 1]], rows=2, cols=4),
        # (f . e)(edge) = f(start) e(edge)
        (0, 1): Mat.from_rows([[1, 0]], rows=1, cols=2),
        # (e . f)(edge) = e(edge) f(end)
        (1, 0): Mat.from_rows([[0, 1]], rows=1, cols=2),
        (1, 1): Mat.zero(0, 1),
    }
    unit = Mat.from_rows([[1], [1]], rows=2, cols=1)
    return CochainAlgebra(c, products, unit)


def algebra_tensor(a: CochainAlgebra, b: CochainAlgebra) -> CochainAlgebra:
    """Tensor product algebra with the Koszul sign on interleaved factors."""
    space = a.space.tensor(b.space)
    ca, cb = a.space, b.space
    products = {}
    for p in space.dims:
        for q in space.dims:
            if space.dim(p + q) == 0:
                continue
            src_p = ca.tensor_basis(cb, p)
            src_q = ca.tensor_basis(cb, q)
            tgt = ca.tensor_basis(cb, p + q)
            tgt_off = {}
            off = 0
            for tp, tq, x, y in tgt:
                tgt_off[(tp, tq)] = off
                off += x * y
            entries = {}
            off_p = 0
            for p1, p2, ap, bp in src_p:
                off_q = 0
                for q1, q2, aq, bq in src_q:
                    key = (p1 + q1, p2 + q2)
                    if key in tgt_off:
                        sign = Q(-1) if (p2 * q1) % 2 else Q(1)
                        ma = a.product_block(p1, q1)
                        mb = b.product_block(p2, q2)
                        base = tgt_off[key]
                        wb = cb.dim(p2 + q2)
                        for ia, ja, va in ma.nonzero_entries():
                            for ib, jb, vb in mb.nonzero_entries():
                                # source pair: ((ja, jb), (jq a, jq b)) flat
                                ja_a, ja_b = divmod(ja, aq)
                                jb_a, jb_b = divmod(jb, bq)
                                col = ((off_p + ja_a * bp + jb_a) * space.dim(q)
                                       + off_q + ja_b * bq + jb_b)
                                row = base + ia * wb + ib
                                cur = entries.get((row, col), Q(0))
                                entries[(row, col)] = cur + sign * va * vb
                    off_q += aq * bq
                off_p += ap * bp
            grid = [[Q(0)] * (space.dim(p) * space.dim(q))
                    for _ in range(space.dim(p + q))]
            for (i, j), v in entries.items():
                grid[i][j] = v
            products[(p, q)] = Mat(space.dim(p + q),
                                   space.dim(p) * space.dim(q),
                                   tuple(tuple(r) for r in grid))
    unit = _kron(a.unit, b.unit)
    return CochainAlgebra(space, products, unit)


def is_algebra_map(src: CochainAlgebra, tgt: CochainAlgebra,
                   f: ChainMap) -> bool:
    if not (f.at(0) * src.unit - tgt.unit).is_zero():
        return False
    for p in src.space.dims:
        for q in src.space.dims:
            lhs = f.at(p + q) * src.product_block(p, q)
            rhs = tgt.product_block(p, q) * _kron(f.at(p), f.at(q))
            if not (lhs - rhs).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# transgression


def dual_tensor_pairing(a: RationalComplex, b: RationalComplex,
                        shift_a: int, shift_b: int) -> ChainMap:
    """Canonical iso  a*[shift_a] (x) b*[shift_b]  ->  (a (x) b)*[shift_a+shift_b].

    On the block of functionals with source bidegree (p, q) the map is the
    evaluation-compatible relabeling with sign (-1)^{q (p + shift_a)}.
    """
    da = a.dual().shift(shift_a)
    db = b.dual().shift(shift_b)
    source = da.tensor(db)
    ab = a.tensor(b)
    target = ab.dual().shift(shift_a + shift_b)
    mats = {}
    for n in source.dims:
        tgt_deg = -n - shift_a - shift_b
        tgt_blocks = a.tensor_basis(b, tgt_deg)
        tgt_off = {}
        off = 0
        for r, t, x, y in tgt_blocks:
            tgt_off[(r, t)] = off
            off += x * y
        entries = {}
        src_off = 0
        for p, q, x, y in da.tensor_basis(db, n):
            r, t = -p - shift_a, -q - shift_b
            base = tgt_off.get((r, t))
            if base is not None:
                sign = Q(-1) if (q * (p + shift_a)) % 2 else Q(1)
                width = b.dim(t)
                for i in range(x):
                    for j in range(y):
                        entries[(base + i * width + j,
                                 src_off + i * y + j)] = sign
            src_off += x * y
        grid = [[Q(0)] * source.dim(n) for _ in range(target.dim(n))]
        for (i, j), v in entries.items():
            grid[i][j] = v
        mats[n] = Mat(target.dim(n), source.dim(n),
                      tuple(tuple(r) for r in grid))
    return ChainMap(source, target, mats)


def aksz_transgress(t: OrientedCochainAlgebra,
                    x: SymplecticComplex) -> SymplecticComplex:
    """Tensor a symplectic complex with an oriented algebra.

    The underlying complex is C (x) V, the shift drops by the orientation
    degree, and the pairing composes the symmetrized orientation duality
    tensored with the given pairing into the canonical dual-tensor iso.  When
    the symmetrized duality fails to be a quasi-isomorphism the output is
    flagged presymplectic-only.
    """
    c, v = t.space, x.space
    space = c.tensor(v)
    phi = t.symmetrized_duality()
    kappa = dual_tensor_pairing(c, v, -t.top_degree, x.shift)
    pairing0 = phi.tensor(x.pairing)
    pairing = ChainMap(space, kappa.target,
                       {n: kappa.at(n) * pairing0.at(n)
                        for n in set(pairing0.mats)})
    flagged = not pairing.is_quasi_iso()
    return SymplecticComplex(space, x.shift - t.top_degree, pairing,
                             presymplectic_only=flagged)


# ---------------------------------------------------------------------------
# algebra cospans and the transgressed correspondences


def _stokes_homotopy(total: CochainAlgebra, relative: Mat,
                     degree: int) -> dict:
    """Bilinear homotopy components c |-> (c' |-> relative(c . c')) viewed as
    per-degree matrices total^p -> (total*[-degree])^{p-1}."""
    c = total.space
    out = {}
    for p in c.dims:
        q = degree + 1 - p
        rows, cols = c.dim(q), c.dim(p)
        if rows == 0 or cols == 0:
            continue
        block = relative * total.product_block(p, q)
        grid = [[block.entry(0, i * rows + j) for i in range(cols)]
                for j in range(rows)]
        mat = Mat.from_rows(grid, rows=rows, cols=cols)
        if not mat.is_zero():
            out[p] = mat
    return out


def _symmetrize_stokes(h: dict, degree: int) -> dict:
    """Average a bilinear homotopy with its graded transpose: the flipped
    component at p is (-1)^{p*degree} times the transpose of the component at
    degree + 1 - p."""
    flipped = {}
    for p, mat in h.items():
        n = degree + 1 - p
        sign = Q(-1) if (n * degree) % 2 else Q(1)
        flipped[n] = mat.T.scale(sign)
    return _hdict_scale(_hdict_add(h, flipped), Q(1, 2))


@dataclass(eq=False)
class AlgebraCospan:
    """Two oriented feet, a total algebra restricting to both, and a relative
    functional one degree above the feet satisfying the boundary identity

        relative . d  =  right functional . right restriction
                         - left functional . left restriction
    on the feet degree."""

    left_foot: OrientedCochainAlgebra
    right_foot: OrientedCochainAlgebra
    total: CochainAlgebra
    restrict_left: ChainMap
    restrict_right: ChainMap
    relative: Mat

    def __post_init__(self):
        d = self.left_foot.top_degree
        if self.right_foot.top_degree != d:
            raise ValueError("feet must share their orientation degree")
        for r, foot in ((self.restrict_left, self.left_foot),
                        (self.restrict_right, self.right_foot)):
            if r.source.dims != self.total.space.dims \
                    or r.target.dims != foot.space.dims:
                raise ValueError("restriction endpoints do not match")
            if not is_algebra_map(self.total, foot, r):
                raise ValueError("restriction is not an algebra map")
        want = (1, self.total.space.dim(d + 1))
        if (self.relative.rows, self.relative.cols) != want:
            raise ValueError("relative functional must be a row vector one "
                             "degree above the feet")
        boundary = self.relative * self.total.space.d_at(d)
        feet = (self.right_foot.functional * self.restrict_right.at(d)
                - self.left_foot.functional * self.restrict_left.at(d))
        if not (boundary - feet).is_zero():
            raise ValueError("relative functional fails the boundary identity")

    @property
    def foot_degree(self) -> int:
        return self.left_foot.top_degree


def check_cospan_oriented(cospan: AlgebraCospan) -> bool:
    """True when the duality square of the cospan is cartesian: the total
    complex maps quasi-isomorphically into the homotopy pullback of the two
    foot dualities pushed into the dual of the total complex."""
    d = cospan.foot_degree
    psi_left = cospan.restrict_left.dual().shift(-d).compose(
        cospan.left_foot.duality_map())
    psi_right = cospan.restrict_right.dual().shift(-d).compose(
        cospan.right_foot.duality_map())
    chi = _stokes_homotopy(cospan.total, cospan.relative, d)
    p, _, _ = hpb(psi_left, psi_right)
    comparison = map_into_hpb(psi_left, psi_right, p, cospan.restrict_left,
                              cospan.restrict_right,
                              _hdict_scale(chi, Q(-1)))
    return comparison.is_quasi_iso()


def aksz_on_cospan(cospan: AlgebraCospan,
                   x: SymplecticComplex) -> Correspondence:
    """Transgress a symplectic complex along an oriented algebra cospan.

    The apex is total (x) V with legs given by the restrictions; the isotropy
    homotopy is the relative functional's bilinear homotopy, symmetrized,
    tensored with the pairing and pushed through the canonical dual-tensor
    iso.  Raises when the orientation check fails or a foot transgression is
    only presymplectic.
    """
    if not check_cospan_oriented(cospan):
        raise ValueError("cospan fails the orientation check")
    left = aksz_transgress(cospan.left_foot, x)
    right = aksz_transgress(cospan.right_foot, x)
    if left.presymplectic_only or right.presymplectic_only:
        raise ValueError("foot transgression is only presymplectic")
    d = cospan.foot_degree
    c = cospan.total.space
    v = x.space
    apex = c.tensor(v)
    ident = ChainMap.identity(v)
    left_leg = cospan.restrict_left.tensor(ident)
    right_leg = cospan.restrict_right.tensor(ident)
    chi = _symmetrize_stokes(
        _stokes_homotopy(cospan.total, cospan.relative, d), d)
    kappa = dual_tensor_pairing(c, v, -d, x.shift)
    cd = c.dual().shift(-d)
    vd = v.dual().shift(x.shift)
    homotopy = {}
    for n in apex.dims:
        tgt_blocks = cd.tensor_basis(vd, n - 1)
        tgt_off = {}
        off = 0
        for r, t, xx, yy in tgt_blocks:
            tgt_off[(r, t)] = off
            off += xx * yy
        entries = {}
        src_off = 0
        for p, q, a_dim, b_dim in c.tensor_basis(v, n):
            base = tgt_off.get((p - 1, q))
            if base is not None and p in chi:
                kr = _kron(chi[p], x.pairing.at(q))
                for i, j, val in kr.nonzero_entries():
                    entries[(base + i, src_off + j)] = val
            src_off += a_dim * b_dim
        rows = sum(xx * yy for _, _, xx, yy in tgt_blocks)
        if rows and entries:
            grid = [[Q(0)] * apex.dim(n) for _ in range(rows)]
            for (i, j), val in entries.items():
                grid[i][j] = val
            raw = Mat(rows, apex.dim(n), tuple(tuple(r) for r in grid))
            mat = kappa.at(n - 1) * raw
            if not mat.is_zero():
                homotopy[n] = mat.scale(Q(-1))
    return Correspondence(left, right, apex, left_leg, right_leg, homotopy)


def fiber_product_algebra(a: CochainAlgebra, b: CochainAlgebra,
                          to_common_a: ChainMap, to_common_b: ChainMap):
    """Strict pullback algebra of  a -> common <- b.

    Returns (algebra, project_to_a, project_to_b).  Each degree is the kernel
    of the difference of the two maps into the common target; products and the
    unit are computed in the ambient direct sum and expressed in the kernel
    basis.
    """
    if to_common_a.target.dims != to_common_b.target.dims:
        raise ValueError("maps must share their common target")
    ambient = a.space.direct_sum(b.space)
    incl = {}
    dims = {}
    for n in ambient.dims:
        diff = Mat.hstack([to_common_a.at(n), to_common_b.at(n).scale(Q(-1))])
        basis = nullspace(diff)
        if basis.cols:
            incl[n] = basis
            dims[n] = basis.cols
    d = {}
    for n in dims:
        image = ambient.d_at(n) * incl[n]
        if image.is_zero():
            continue
        if dims.get(n + 1, 0) == 0:
            raise ValueError("kernel is not preserved by the differential")
        coords = solve(incl[n + 1], image)
        if coords is None:
            raise ValueError("kernel is not preserved by the differential")
        d[n] = coords
    space = RationalComplex(dims, d)
    products = {}
    for p in dims:
        for q in dims:
            if space.dim(p + q) == 0:
                continue
            cols = []
            for i in range(dims[p]):
                xa = [incl[p].entry(r, i) for r in range(a.space.dim(p))]
                xb = [incl[p].entry(a.space.dim(p) + r, i)
                      for r in range(b.space.dim(p))]
                for j in range(dims[q]):
                    ya = [incl[q].entry(r, j) for r in range(a.space.dim(q))]
                    yb = [incl[q].entry(a.space.dim(q) + r, j)
                          for r in range(b.space.dim(q))]
                    prod_a = a.product_block(p, q) * Mat.from_rows(
                        [[xa[r] * ya[t]] for r in range(len(xa))
                         for t in range(len(ya))],
                        rows=len(xa) * len(ya), cols=1)
                    prod_b = b.product_block(p, q) * Mat.from_rows(
                        [[xb[r] * yb[t]] for r in range(len(xb))
                         for t in range(len(yb))],
                        rows=len(xb) * len(yb), cols=1)
                    cols.append(Mat.vstack([prod_a, prod_b]))
            stacked = Mat.hstack(cols)
            coords = solve(incl[p + q], stacked)
            if coords is None:
                raise ValueError("kernel is not closed under the product")
            products[(p, q)] = coords
    unit_ambient = Mat.vstack([a.unit, b.unit])
    unit = solve(incl[0], unit_ambient)
    if unit is None:
        raise ValueError("units do not agree on the common target")
    proj_a = ChainMap(space, a.space,
                      {n: Mat.from_rows([[incl[n].entry(r, j)
                                          for j in range(dims[n])]
                                         for r in range(a.space.dim(n))],
                                        rows=a.space.dim(n), cols=dims[n])
                       for n in dims})
    proj_b = ChainMap(space, b.space,
                      {n: Mat.from_rows([[incl[n].entry(a.space.dim(n) + r, j)
                                          for j in range(dims[n])]
                                         for r in range(b.space.dim(n))],
                                        rows=b.space.dim(n), cols=dims[n])
                       for n in dims})
    algebra = CochainAlgebra(space, products, unit)
    return algebra, proj_a, proj_b


def _same_algebra(a: OrientedCochainAlgebra,
                  b: OrientedCochainAlgebra) -> bool:
    if a is b:
        return True
    if a.space.dims != b.space.dims or a.top_degree != b.top_degree:
        return False
    if not (a.functional - b.functional).is_zero():
        return False
    keys = set(a.products) | set(b.products)
    return all((a.product_block(*k) - b.product_block(*k)).is_zero()
               for k in keys)


def glue_cospans(first: AlgebraCospan, second: AlgebraCospan) -> AlgebraCospan:
    """Glue along the shared middle foot: total algebras pull back over the
    foot, restrictions compose with the projections, and the relative
    functionals add (the middle boundary terms cancel on the pullback)."""
    if not _same_algebra(first.right_foot, second.left_foot):
        raise ValueError("gluing requires matching middle feet")
    total, proj1, proj2 = fiber_product_algebra(
        first.total, second.total, first.restrict_right,
        second.restrict_left)
    d = first.foot_degree
    relative = (first.relative * proj1.at(d + 1)
                + second.relative * proj2.at(d + 1))
    return AlgebraCospan(first.left_foot, second.right_foot, total,
                         first.restrict_left.compose(proj1),
                         second.restrict_right.compose(proj2), relative)


def interval_cospan() -> AlgebraCospan:
    """Point -> interval <- point with the edge-integration functional."""
    total = interval_algebra()
    pt = point_algebra()
    c = total.space
    r0 = ChainMap(c, pt.space, {0: Mat.from_rows([[1, 0]], rows=1, cols=2)})
    r1 = ChainMap(c, pt.space, {0: Mat.from_rows([[0, 1]], rows=1, cols=2)})
    relative = Mat.from_rows([[1]], rows=1, cols=1)
    return AlgebraCospan(pt, pt, total, r0, r1, relative)


def cylinder_cospan() -> AlgebraCospan:
    """Circle -> circle x interval <- circle.  The relative functional pairs
    the circle generator with the edge; its sign is forced by the boundary
    identity with outgoing-minus-incoming feet."""
    circ = circle_algebra()
    segment = interval_algebra()
    total = algebra_tensor(circ, segment)
    c = total.space

    # evaluation of the interval factor at an endpoint, on each tensor block
    def restriction(endpoint: int) -> ChainMap:
        mats = {}
        for n in c.dims:
            cols = []
            for p1, p2, x, y in circ.space.tensor_basis(segment.space, n):
                if p2 == 0:
                    ev = Mat.from_rows([[1, 0]] if endpoint == 0 else [[0, 1]],
                                       rows=1, cols=2)
                    cols.append(_kron(Mat.eye(x), ev))
                else:
                    cols.append(Mat.zero(circ.space.dim(n), x * y))
            mats[n] = Mat.hstack(cols)
        return ChainMap(c, circ.space, mats)

    r0 = restriction(0)
    r1 = restriction(1)
    relative = Mat.from_rows([[-1]], rows=1, cols=c.dim(2))
    return AlgebraCospan(circ, circ, total, r0, r1, relative)


def width_zero_cospan(t: OrientedCochainAlgebra) -> AlgebraCospan:
    """Both restrictions the identity and a vanishing relative functional."""
    base = CochainAlgebra(t.space, t.products, t.unit)
    ident = ChainMap.identity(t.space)
    relative = Mat.zero(1, t.space.dim(t.top_degree + 1))
    return AlgebraCospan(t, t, base, ident, ident, relative)


# ---------------------------------------------------------------------------
# embedding strict correspondences as twisted-shape diagrams


def correspondence_to_uple(c: Correspondence) -> "UpleSpanDiagram":
    """Render a strict correspondence as a one-axis twisted-shape diagram.

    Only correspondences whose two pulled-back pairings agree exactly embed:
    the twisted shape commutes strictly, so a nonvanishing homotopy
    discrepancy has nowhere to live.
    """
    from .span_nondeg import UpleSpanDiagram, uple_twisted
    if not c.is_strict():
        raise ValueError("only strict correspondences embed as twisted-shape "
                         "diagrams")
    s = c.shift
    poset = uple_twisted(1).poset
    apex_dual = c.apex.dual().shift(s)
    objects = {
        "(-inf)": c.apex,
        "(A1)": c.left.space,
        "(B1)": c.right.space,
        "(A1)^v": c.left.space.dual().shift(s),
        "(B1)^v": c.right.space.dual().shift(s),
        "(-inf)^v": apex_dual,
    }
    covers = {
        ("(-inf)", "(A1)"): c.left_leg,
        ("(-inf)", "(B1)"): c.right_leg,
        ("(A1)", "(A1)^v"): c.left.pairing,
        ("(B1)", "(B1)^v"): c.right.pairing,
        ("(A1)^v", "(-inf)^v"): c.left_leg.dual().shift(s),
        ("(B1)^v", "(-inf)^v"): c.right_leg.dual().shift(s),
    }
    return UpleSpanDiagram(1, Diagram.from_covers(poset, objects, covers))


# ---------------------------------------------------------------------------
# random instances


def random_symplectic(rng, shift: int, max_total: int = 3) -> SymplecticComplex:
    """Hyperbolic structure on a random complex, twisted by a random
    homotopy-unit automorphism."""
    from .randgen import random_complex, random_homotopy_unit
    w = random_complex(rng, max_total=max_total, lo=-2, hi=2, spread=2)
    base = hyperbolic_symplectic(w, shift)
    unit = random_homotopy_unit(rng, base.space)
    return pullback_symplectic(base, unit)


def random_lagrangian_correspondence(rng, shift: int) -> Correspondence:
    """A random correspondence that is Lagrangian by construction."""
    kind = rng.randrange(3)
    if kind == 0:
        from .randgen import random_homotopy_unit
        x = random_symplectic(rng, shift)
        return graph_correspondence(x, random_homotopy_unit(rng, x.space))
    if kind == 1:
        from .randgen import random_complex
        w = random_complex(rng, max_total=3, lo=-2, hi=2, spread=2)
        return zero_section_correspondence(w, shift)
    return identity_correspondence(random_symplectic(rng, shift))


def random_composable_pair(rng, shift: int):
    """Two Lagrangian correspondences sharing their middle symplectic complex."""
    from .randgen import random_complex, random_homotopy_unit
    if rng.randrange(4) == 0:
        w = random_complex(rng, max_total=3, lo=-2, hi=2, spread=2)
        first = zero_section_correspondence(w, shift)
        middle = first.right
    else:
        middle = random_symplectic(rng, shift)
        first = graph_correspondence(middle,
                                     random_homotopy_unit(rng, middle.space))
    second = transpose_correspondence(
        graph_correspondence(middle, random_homotopy_unit(rng, middle.space)))
    return first, second


def random_deloop_map(rng, space_shift: int, invertible: bool):
    """A random antisymmetric chain map V -> V*[space_shift - 1]; when
    ``invertible`` the underlying complex is hyperbolic for the dropped shift
    and the map is a perturbed symplectic pairing."""
    from .randgen import random_complex
    target_shift = space_shift - 1
    if invertible:
        w = random_complex(rng, max_total=2, lo=-1, hi=1, spread=2)
        base = hyperbolic_symplectic(w, target_shift)
        space = base.space
        core = base.pairing
    else:
        space = random_complex(rng, max_total=3, lo=-1, hi=1, spread=2)
        core = ChainMap.zero_map(space, space.dual().shift(target_shift))
    dual_space = space.dual().shift(target_shift)
    raw = {}
    for n in space.dims:
        rows, cols = dual_space.dim(n - 1), space.dim(n)
        if rows and cols:
            raw[n] = Mat.from_rows([[Q(rng.choice((-1, 0, 0, 1)))
                                     for _ in range(cols)]
                                    for _ in range(rows)],
                                   rows=rows, cols=cols)
    mats = {}
    for n in space.dims:
        acc = Mat.zero(dual_space.dim(n), space.dim(n))
        if n in raw:
            acc = acc + dual_space.d_at(n - 1) * raw[n]
        if n + 1 in raw:
            acc = acc + raw[n + 1] * space.d_at(n)
        if not acc.is_zero():
            mats[n] = acc
    perturbation = ChainMap(space, dual_space, mats)
    h = core + antisymmetrize_pairing(perturbation, target_shift)
    return space, h


# ---------------------------------------------------------------------------
# serialization


def _enc(x) -> str:
    return str(x.numerator) if x.denominator == 1 else \
        f"{x.numerator}/{x.denominator}"


def _enc_mats(mats: dict) -> dict:
    return {str(n): [[_enc(x) for x in row] for row in m.data]
            for n, m in sorted(mats.items())}


def _dec_mats(obj: dict, rows_of, cols_of) -> dict:
    out = {}
    for k, rows in obj.items():
        n = int(k)
        out[n] = Mat.from_rows(rows, rows=rows_of(n), cols=cols_of(n))
    return out


def symplectic_to_json(x: SymplecticComplex) -> str:
    return json.dumps({
        "complex": json.loads(x.space.to_json()),
        "shift": x.shift,
        "pairing": _enc_mats(x.pairing.mats),
        "presymplectic_only": x.presymplectic_only,
    })


def symplectic_from_json(text: str) -> SymplecticComplex:
    obj = json.loads(text)
    space = RationalComplex.from_json(json.dumps(obj["complex"]))
    shift = int(obj["shift"])
    dual = space.dual().shift(shift)
    mats = _dec_mats(obj.get("pairing", {}), dual.dim, space.dim)
    return SymplecticComplex(space, shift, ChainMap(space, dual, mats),
                             bool(obj.get("presymplectic_only", False)))


def correspondence_to_json(c: Correspondence) -> str:
    return json.dumps({
        "left": json.loads(symplectic_to_json(c.left)),
        "right": json.loads(symplectic_to_json(c.right)),
        "apex": json.loads(c.apex.to_json()),
        "left_leg": _enc_mats(c.left_leg.mats),
        "right_leg": _enc_mats(c.right_leg.mats),
        "homotopy": _enc_mats(c.homotopy),
    })


def correspondence_from_json(text: str) -> Correspondence:
    obj = json.loads(text)
    left = symplectic_from_json(json.dumps(obj["left"]))
    right = symplectic_from_json(json.dumps(obj["right"]))
    apex = RationalComplex.from_json(json.dumps(obj["apex"]))
    left_leg = ChainMap(apex, left.space,
                        _dec_mats(obj.get("left_leg", {}),
                                  left.space.dim, apex.dim))
    right_leg = ChainMap(apex, right.space,
                         _dec_mats(obj.get("right_leg", {}),
                                   right.space.dim, apex.dim))
    apex_dual = apex.dual().shift(left.shift)
    homotopy = _dec_mats(obj.get("homotopy", {}),
                         lambda n: apex_dual.dim(n - 1), apex.dim)
    return Correspondence(left, right, apex, left_leg, right_leg, homotopy)
