"""Exact homological algebra over the rationals, cohomological grading.

Conventions pinned here and relied on everywhere else:
  shift      (C[s])^n = C^{n+s},  d_{C[s]} = (-1)^s d_C
  dual       (C*)^n = (C^{-n})*,  (d phi)(z) = -(-1)^n phi(dz), i.e.
             d_{C*}[n] = -(-1)^n (d_C[-n-1])^T;  map duals transpose with no sign
  cone       cone(f)^n = B^n (+) A^{n+1},  d(b, a) = (db + fa, -da)
  fiber      fiber(f) = cone(f)[-1]
  tensor     d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from ._linalg import Mat, Q, as_q, nullspace, rank
from .posets import Poset, SemiSimplicialSet

Q0 = Q(0)


def _mat_from_entries(rows: int, cols: int, entries: dict) -> Mat:
    grid = [[Q0] * cols for _ in range(rows)]
    for (i, j), v in entries.items():
        grid[i][j] = as_q(v)
    return Mat(rows, cols, tuple(tuple(r) for r in grid))


@dataclass(eq=False)
class RationalComplex:
    dims: dict          # degree -> dimension (> 0 entries only)
    d: dict             # degree n -> Mat of shape dim(n+1) x dim(n)

    def __post_init__(self):
        self.dims = {n: m for n, m in self.dims.items() if m > 0}
        clean = {}
        for n, mat in self.d.items():
            want = (self.dim(n + 1), self.dim(n))
            if (mat.rows, mat.cols) != want:
                raise ValueError(f"d[{n}] has shape {(mat.rows, mat.cols)}, want {want}")
            if not mat.is_zero():
                clean[n] = mat
        self.d = clean
        for n in list(clean):
            if n + 1 in clean:
                if not (clean[n + 1] * clean[n]).is_zero():
                    raise ValueError(f"d^2 != 0 at degree {n}")

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def degrees(self):
        return sorted(self.dims)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def euler(self) -> int:
        return sum((-1) ** n * m for n, m in self.dims.items())

    def d_at(self, n: int) -> Mat:
        got = self.d.get(n)
        return got if got is not None else Mat.zero(self.dim(n + 1), self.dim(n))

    def is_zero(self) -> bool:
        return not self.dims

    def shift(self, s: int) -> "RationalComplex":
        dims = {n - s: m for n, m in self.dims.items()}
        sign = Q(-1) if s % 2 else Q(1)
        d = {n - s: mat.scale(sign) for n, mat in self.d.items()}
        return RationalComplex(dims, d)

    def dual(self) -> "RationalComplex":
        dims = {-n: m for n, m in self.dims.items()}
        d = {}
        for n in dims:
            base = self.d.get(-n - 1)
            if base is not None:
                sign = Q(1) if n % 2 else Q(-1)  # -(-1)^n
                d[n] = base.T.scale(sign)
        return RationalComplex(dims, d)

    def direct_sum(self, other: "RationalComplex") -> "RationalComplex":
        dims = {}
        for n in set(self.dims) | set(other.dims):
            dims[n] = self.dim(n) + other.dim(n)
        d = {}
        for n in set(self.d) | set(other.d):
            d[n] = Mat.block_diag([self.d_at(n), other.d_at(n)])
        return RationalComplex(dims, d)

    def tensor_basis(self, other: "RationalComplex", n: int):
        """Ordered blocks (p, q, dimA, dimB) with p + q = n."""
        out = []
        for p in sorted(self.dims):
            q = n - p
            if other.dim(q) > 0:
                out.append((p, q, self.dim(p), other.dim(q)))
        return out

    def tensor(self, other: "RationalComplex") -> "RationalComplex":
        dims = {}
        for p, a in self.dims.items():
            for q, b in other.dims.items():
                dims[p + q] = dims.get(p + q, 0) + a * b
        d = {}
        for n in sorted(dims):
            if dims.get(n + 1, 0) == 0:
                continue
            src = self.tensor_basis(other, n)
            tgt = self.tensor_basis(other, n + 1)
            tgt_off = {}
            off = 0
            for p, q, a, b in tgt:
                tgt_off[(p, q)] = off
                off += a * b
            entries = {}
            src_off = 0
            for p, q, a, b in src:
                da = self.d.get(p)
                if da is not None and (p + 1, q) in tgt_off:
                    to = tgt_off[(p + 1, q)]
                    for i, j, v in da.nonzero_entries():
                        for t in range(b):
                            entries[(to + i * b + t, src_off + j * b + t)] = v
                db = other.d.get(q)
                if db is not None and (p, q + 1) in tgt_off:
                    to = tgt_off[(p, q + 1)]
                    sgn = Q(-1) if p % 2 else Q(1)
                    bb = other.dim(q + 1)
                    for i, j, v in db.nonzero_entries():
                        for t in range(a):
                            entries[(to + t * bb + i, src_off + t * b + j)] = sgn * v
                src_off += a * b
            d[n] = _mat_from_entries(dims.get(n + 1, 0), dims[n], entries)
        return RationalComplex(dims, d)

    def to_json(self) -> str:
        def enc(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return json.dumps({
            "degrees": {str(n): m for n, m in sorted(self.dims.items())},
            "d": {str(n): [[enc(x) for x in row] for row in mat.data] for n, mat in sorted(self.d.items())},
        })

    @staticmethod
    def from_json(text: str) -> "RationalComplex":
        obj = json.loads(text)
        dims = {int(k): int(v) for k, v in obj.get("degrees", {}).items()}
        d = {}
        for k, rows in obj.get("d", {}).items():
            n = int(k)
            r, c = dims.get(n + 1, 0), dims.get(n, 0)
            d[n] = Mat.from_rows(rows, rows=r, cols=c)
        return RationalComplex(dims, d)

    @staticmethod
    def zero() -> "RationalComplex":
        return RationalComplex({}, {})

    @staticmethod
    def concentrated(n: int, dim: int = 1) -> "RationalComplex":
        return RationalComplex({n: dim}, {})


def canonical_double_dual(c: RationalComplex) -> ChainMap:
    """The iso C -> (C*)*: with the sign convention above the double dual
    carries the negated differential, and (-1)^n id in degree n is the
    canonical chain isomorphism."""
    dd = c.dual().dual()
    mats = {}
    for n, m in c.dims.items():
        mats[n] = Mat.eye(m) if n % 2 == 0 else Mat.eye(m).scale(Q(-1))
    return ChainMap(c, dd, mats)


def homology(c: RationalComplex) -> dict:
    """Exact cohomology dimensions, degree -> rank (zero ranks omitted)."""
    ranks = {n: rank(mat) for n, mat in c.d.items()}
    out = {}
    for n, m in c.dims.items():
        h = m - ranks.get(n, 0) - ranks.get(n - 1, 0)
        if h:
            out[n] = h
    return out


def is_acyclic(c: RationalComplex) -> bool:
    return not homology(c)


@dataclass(eq=False)
class ChainMap:
    source: RationalComplex
    target: RationalComplex
    mats: dict  # degree n -> Mat of shape target.dim(n) x source.dim(n)

    def __post_init__(self):
        clean = {}
        for n, mat in self.mats.items():
            want = (self.target.dim(n), self.source.dim(n))
            if (mat.rows, mat.cols) != want:
                raise ValueError(f"component at {n} has shape {(mat.rows, mat.cols)}, want {want}")
            if not mat.is_zero():
                clean[n] = mat
        self.mats = clean
        for n in set(self.source.dims):
            lhs = self.target.d_at(n) * self.at(n)
            rhs = self.at(n + 1) * self.source.d_at(n)
            if not (lhs - rhs).is_zero():
                raise ValueError(f"not a chain map at degree {n}")

    def at(self, n: int) -> Mat:
        got = self.mats.get(n)
        return got if got is not None else Mat.zero(self.target.dim(n), self.source.dim(n))

    @staticmethod
    def identity(c: RationalComplex) -> "ChainMap":
        return ChainMap(c, c, {n: Mat.eye(m) for n, m in c.dims.items()})

    @staticmethod
    def zero_map(source: RationalComplex, target: RationalComplex) -> "ChainMap":
        return ChainMap(source, target, {})

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise ValueError("composition mismatch")
        mats = {}
        for n in set(other.mats) | set(self.mats):
            mats[n] = self.at(n) * other.at(n)
        return ChainMap(other.source, self.target, mats)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        mats = {n: self.at(n) + other.at(n) for n in set(self.mats) | set(other.mats)}
        return ChainMap(self.source, self.target, mats)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + other.scale(-1)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: m.scale(c) for n, m in self.mats.items()})

    def shift(self, s: int) -> "ChainMap":
        return ChainMap(self.source.shift(s), self.target.shift(s), {n - s: m for n, m in self.mats.items()})

    def dual(self) -> "ChainMap":
        return ChainMap(self.target.dual(), self.source.dual(), {n: self.at(-n).T for n in {-k for k in self.mats}})

    def tensor(self, other: "ChainMap") -> "ChainMap":
        src = self.source.tensor(other.source)
        tgt = self.target.tensor(other.target)
        mats = {}
        for n in src.dims:
            sblocks = self.source.tensor_basis(other.source, n)
            tblocks = self.target.tensor_basis(other.target, n)
            toff = {}
            off = 0
            for p, q, a, b in tblocks:
                toff[(p, q)] = off
                off += a * b
            entries = {}
            soff = 0
            for p, q, a, b in sblocks:
                f, g = self.at(p), other.at(q)
                if (p, q) in toff and f.rows and g.rows:
                    to = toff[(p, q)]
                    for i, j, v in f.nonzero_entries():
                        for i2, j2, w in g.nonzero_entries():
                            entries[(to + i * g.rows + i2, soff + j * b + j2)] = v * w
                soff += a * b
            mats[n] = _mat_from_entries(tgt.dim(n), src.dim(n), entries)
        return ChainMap(src, tgt, mats)

    def direct_sum(self, other: "ChainMap") -> "ChainMap":
        src = self.source.direct_sum(other.source)
        tgt = self.target.direct_sum(other.target)
        mats = {}
        for n in set(src.dims):
            mats[n] = Mat.block([[self.at(n), Mat.zero(self.target.dim(n), other.source.dim(n))],
                                 [Mat.zero(other.target.dim(n), self.source.dim(n)), other.at(n)]])
        return ChainMap(src, tgt, mats)

    def is_quasi_iso(self) -> bool:
        return is_acyclic(cone(self))


@dataclass(eq=False)
class ChainHomotopy:
    """Witness h with d h + h d = g - f, for parallel chain maps f, g."""
    f: ChainMap
    g: ChainMap
    h: dict  # degree n -> Mat of shape target.dim(n-1) x source.dim(n)

    def __post_init__(self):
        src, tgt = self.f.source, self.f.target
        if self.g.source is not src and self.g.source.dims != src.dims:
            raise ValueError("f and g must be parallel")
        clean = {}
        for n, mat in self.h.items():
            want = (tgt.dim(n - 1), src.dim(n))
            if (mat.rows, mat.cols) != want:
                raise ValueError(f"homotopy component at {n} has shape {(mat.rows, mat.cols)}, want {want}")
            if not mat.is_zero():
                clean[n] = mat
        self.h = clean
        for n in set(src.dims):
            lhs = tgt.d_at(n - 1) * self.h_at(n) + self.h_at(n + 1) * src.d_at(n)
            rhs = self.g.at(n) - self.f.at(n)
            if not (lhs - rhs).is_zero():
                raise ValueError(f"homotopy identity fails at degree {n}")

    def h_at(self, n: int) -> Mat:
        got = self.h.get(n)
        return got if got is not None else Mat.zero(self.f.target.dim(n - 1), self.f.source.dim(n))


def cone(f: ChainMap) -> RationalComplex:
    a, b = f.source, f.target
    dims = {}
    for n in set(b.dims) | {n - 1 for n in a.dims}:
        m = b.dim(n) + a.dim(n + 1)
        if m:
            dims[n] = m
    d = {}
    for n in dims:
        if dims.get(n + 1, 0) == 0 and (b.dim(n + 1) + a.dim(n + 2)) == 0:
            continue
        d[n] = Mat.block([
            [b.d_at(n), f.at(n + 1)],
            [Mat.zero(a.dim(n + 2), b.dim(n)), -a.d_at(n + 1)],
        ])
    return RationalComplex(dims, d)


def cone_inclusion(f: ChainMap) -> ChainMap:
    """target -> cone(f)."""
    c = cone(f)
    b, a = f.target, f.source
    mats = {n: Mat.vstack([Mat.eye(b.dim(n)), Mat.zero(a.dim(n + 1), b.dim(n))]) for n in b.dims}
    return ChainMap(b, c, mats)


def fiber(f: ChainMap) -> RationalComplex:
    return cone(f).shift(-1)


def fiber_projection(f: ChainMap) -> ChainMap:
    """fiber(f) -> source; fiber^n = B^{n-1} (+) A^n, projection to the A part."""
    fb = fiber(f)
    a, b = f.source, f.target
    mats = {}
    for n in a.dims:
        mats[n] = Mat.hstack([Mat.zero(a.dim(n), b.dim(n - 1)), Mat.eye(a.dim(n))])
    return ChainMap(fb, a, mats)


def map_into_fiber(f: ChainMap, g: ChainMap) -> ChainMap:
    """Lift of g: X -> source along fiber(f) -> source, requires f . g = 0 strictly."""
    if not all((f.at(n) * g.at(n)).is_zero() for n in set(g.mats) | set(f.mats)):
        raise ValueError("composite is not strictly zero; no canonical fiber lift")
    fb = fiber(f)
    x, a, b = g.source, f.source, f.target
    mats = {}
    for n in x.dims:
        mats[n] = Mat.vstack([Mat.zero(b.dim(n - 1), x.dim(n)), g.at(n)])
    return ChainMap(x, fb, mats)


def hpb(f: ChainMap, g: ChainMap):
    """Homotopy pullback of A --f--> C <--g-- B.

    Degree n is A^n (+) B^n (+) C^{n-1} with d(a, b, c) = (da, db, fa - gb - dc).
    Returns (complex, projection to A, projection to B, witness slot map C-index).
    """
    a, b, c = f.source, g.source, f.target
    if g.target is not c and g.target.dims != c.dims:
        raise ValueError("hpb needs a common cospan target")
    dims = {}
    for n in set(a.dims) | set(b.dims) | {k + 1 for k in c.dims}:
        m = a.dim(n) + b.dim(n) + c.dim(n - 1)
        if m:
            dims[n] = m
    d = {}
    for n in dims:
        rows = a.dim(n + 1) + b.dim(n + 1) + c.dim(n)
        if rows == 0:
            continue
        d[n] = Mat.block([
            [a.d_at(n), Mat.zero(a.dim(n + 1), b.dim(n)), Mat.zero(a.dim(n + 1), c.dim(n - 1))],
            [Mat.zero(b.dim(n + 1), a.dim(n)), b.d_at(n), Mat.zero(b.dim(n + 1), c.dim(n - 1))],
            [f.at(n), -g.at(n), -c.d_at(n - 1)],
        ])
    p = RationalComplex(dims, d)
    pr_a = ChainMap(p, a, {n: Mat.hstack([Mat.eye(a.dim(n)), Mat.zero(a.dim(n), b.dim(n) + c.dim(n - 1))]) for n in a.dims})
    pr_b = ChainMap(p, b, {n: Mat.hstack([Mat.zero(b.dim(n), a.dim(n)), Mat.eye(b.dim(n)), Mat.zero(b.dim(n), c.dim(n - 1))]) for n in b.dims})
    return p, pr_a, pr_b


def hpb_witness(f: ChainMap, g: ChainMap, p: RationalComplex) -> dict:
    """The degree -1 coordinate maps w[n]: P^n -> C^{n-1}."""
    a, b, c = f.source, g.source, f.target
    out = {}
    for n in p.dims:
        if c.dim(n - 1):
            out[n] = Mat.hstack([Mat.zero(c.dim(n - 1), a.dim(n) + b.dim(n)), Mat.eye(c.dim(n - 1))])
    return out


def map_into_hpb(f: ChainMap, g: ChainMap, p: RationalComplex, u: ChainMap, v: ChainMap, h: dict) -> ChainMap:
    """(u, v, h): X -> hpb(f, g), where d h + h d = f u - g v."""
    x = u.source
    a, b, c = f.source, g.source, f.target
    ChainHomotopy(g.compose(v), f.compose(u), h)  # validates the witness
    mats = {}
    for n in x.dims:
        hn = h.get(n, Mat.zero(c.dim(n - 1), x.dim(n)))
        mats[n] = Mat.vstack([u.at(n), v.at(n), hn])
    return ChainMap(x, p, mats)


@dataclass(eq=False)
class Diagram:
    """Strict functor from a finite poset to complexes: all composites agree exactly."""
    poset: Poset
    objects: dict        # label -> RationalComplex
    arrows: dict         # (a, b) with a <= b -> ChainMap, all related pairs

    def __post_init__(self):
        if set(self.objects) != set(self.poset.elements):
            raise ValueError("objects must cover the poset exactly")
        for pair in self.poset.leq:
            if pair not in self.arrows:
                raise ValueError(f"missing arrow for {pair}")
        for (a, b), m in self.arrows.items():
            if not self.poset.le(a, b):
                raise ValueError(f"arrow on unrelated pair {(a, b)}")
            if m.source is not self.objects[a] or m.target is not self.objects[b]:
                if m.source.dims != self.objects[a].dims or m.target.dims != self.objects[b].dims:
                    raise ValueError(f"arrow endpoints wrong at {(a, b)}")
        for a in self.poset.elements:
            ida = self.arrows[(a, a)]
            for n in self.objects[a].dims:
                if (ida.at(n) - Mat.eye(self.objects[a].dim(n))).is_zero() is False:
                    raise ValueError(f"identity arrow at {a} is not the identity")
        for a, b in self.poset.leq:
            for c in self.poset.elements:
                if self.poset.le(b, c):
                    left = self.arrows[(b, c)].compose(self.arrows[(a, b)])
                    direct = self.arrows[(a, c)]
                    for n in set(left.mats) | set(direct.mats):
                        if not (left.at(n) - direct.at(n)).is_zero():
                            raise ValueError(f"functoriality fails on {a} <= {b} <= {c}")

    @staticmethod
    def from_covers(poset: Poset, objects: dict, cover_arrows: dict) -> "Diagram":
        """Fill in all composites from Hasse-edge data, checking consistency."""
        arrows = {(a, a): ChainMap.identity(objects[a]) for a in poset.elements}
        order = list(poset.elements)
        covers_to = {}
        for a, b in poset.covers():
            covers_to.setdefault(b, []).append(a)
            if (a, b) not in cover_arrows:
                raise ValueError(f"missing cover arrow {(a, b)}")
        remaining = [(a, b) for (a, b) in poset.leq if a != b]
        # saturate by length of chains: repeatedly compose cover with known
        known = dict(arrows)
        for a, b in poset.covers():
            known[(a, b)] = cover_arrows[(a, b)]
        changed = True
        while changed:
            changed = False
            for (a, b) in remaining:
                if (a, b) in known:
                    continue
                for m in covers_to.get(b, []):
                    if (a, m) in known:
                        known[(a, b)] = known[(m, b)].compose(known[(a, m)])
                        changed = True
                        break
        return Diagram(poset, objects, known)

    def arrow(self, a, b) -> ChainMap:
        return self.arrows[(a, b)]

    def object(self, a) -> RationalComplex:
        return self.objects[a]

    def restrict(self, keep) -> "Diagram":
        sub = self.poset.subposet(keep)
        ks = set(keep)
        return Diagram(sub, {k: v for k, v in self.objects.items() if k in ks},
                       {p: m for p, m in self.arrows.items() if p[0] in ks and p[1] in ks})


@dataclass(eq=False)
class HolimResult:
    complex: RationalComplex
    basis: dict        # degree -> list of (chain tuple, internal degree, block dim)
    diagram: Diagram

    def block_offset(self, n: int, chain) -> int | None:
        off = 0
        for ch, m, dim in self.basis.get(n, []):
            if ch == chain:
                return off
            off += dim
        return None


def holim(diag: Diagram) -> HolimResult:
    """Totalization of the cosimplicial replacement.

    Degree-n coordinates run over strict chains p_0 < ... < p_k with a block
    D(p_k)^{n-k}; the differential drops chain elements with alternating signs,
    composes the last-leg arrow at the top face, and applies the internal
    differential with sign (-1)^k.
    """
    p = diag.poset
    chains = p.chains()
    basis: dict[int, list] = {}
    for ch in sorted(chains, key=lambda c: (len(c), c)):
        top = diag.objects[ch[-1]]
        k = len(ch) - 1
        for m in top.degrees():
            n = m + k
            basis.setdefault(n, []).append((ch, m, top.dim(m)))
    offsets: dict[int, dict] = {}
    dims = {}
    for n, blocks in basis.items():
        off = {}
        o = 0
        for ch, m, dim in blocks:
            off[(ch, m)] = o
            o += dim
        offsets[n] = off
        dims[n] = o
    d = {}
    for n in sorted(dims):
        if dims.get(n + 1, 0) == 0:
            continue
        entries = {}
        for ch, m_t, dim_t in basis[n + 1]:
            k = len(ch) - 1
            to = offsets[n + 1][(ch, m_t)]
            sign_k = Q(-1) if k % 2 else Q(1)
            # faces dropping an inner element (same top, same internal degree)
            for i in range(k):
                sub = ch[:i] + ch[i + 1:]
                src = offsets[n].get((sub, m_t))
                if src is None:
                    continue
                sgn = Q(-1) if i % 2 else Q(1)
                for t in range(dim_t):
                    entries[(to + t, src + t)] = entries.get((to + t, src + t), Q0) + sgn
            # top face: compose along the last arrow
            if k >= 1:
                sub = ch[:-1]
                src = offsets[n].get((sub, m_t))
                if src is not None:
                    arrow = diag.arrows[(ch[-2], ch[-1])].at(m_t)
                    for i, j, v in arrow.nonzero_entries():
                        key = (to + i, src + j)
                        entries[key] = entries.get(key, Q0) + sign_k * v
            # internal differential
            src = offsets[n].get((ch, m_t - 1))
            if src is not None:
                dm = diag.objects[ch[-1]].d_at(m_t - 1)
                for i, j, v in dm.nonzero_entries():
                    key = (to + i, src + j)
                    entries[key] = entries.get(key, Q0) + sign_k * v
        d[n] = _mat_from_entries(dims.get(n + 1, 0), dims[n], entries)
    return HolimResult(RationalComplex(dims, d), basis, diag)


def holim_projection(res: HolimResult, p) -> ChainMap:
    """Projection to the coordinate at the singleton chain (p)."""
    tgt = res.diagram.objects[p]
    mats = {}
    for n in tgt.degrees():
        off = res.block_offset(n, (p,))
        if off is None:
            continue
        dim = tgt.dim(n)
        entries = {(i, off + i): Q(1) for i in range(dim)}
        mats[n] = _mat_from_entries(dim, res.complex.dim(n), entries)
    return ChainMap(res.complex, tgt, mats)


def comparison_into_holim(full: Diagram, cone_label, res: HolimResult) -> ChainMap:
    """Canonical map D(cone) -> holim(D restricted away from cone):
    the arrow at each singleton chain, zero on longer chains."""
    src = full.objects[cone_label]
    mats = {}
    for n in res.complex.degrees():
        entries = {}
        for ch, m, dim in res.basis[n]:
            if len(ch) == 1 and m == n:
                off = res.block_offset(n, ch)
                arr = full.arrows[(cone_label, ch[0])].at(n)
                for i, j, v in arr.nonzero_entries():
                    entries[(off + i, j)] = v
        mats[n] = _mat_from_entries(res.complex.dim(n), src.dim(n), entries)
    return ChainMap(src, res.complex, mats)


def is_limit_cone(full: Diagram, cone_label=None):
    """Whether D(cone) -> holim(D | P without cone) is a quasi-isomorphism."""
    if cone_label is None:
        cone_label = full.poset.initial_element()
        if cone_label is None:
            raise ValueError("diagram has no initial element; name the cone")
    rest = full.restrict([e for e in full.poset.elements if e != cone_label])
    res = holim(rest)
    cmp_map = comparison_into_holim(full, cone_label, res)
    return cmp_map.is_quasi_iso(), cmp_map, res


def constant_diagram(p: Poset, c: RationalComplex) -> Diagram:
    ident = {n: Mat.eye(m) for n, m in c.dims.items()}
    return Diagram(p, {e: c for e in p.elements},
                   {pair: ChainMap(c, c, dict(ident)) for pair in p.leq})


def complex_of_semisimplicial(s: SemiSimplicialSet, reduced: bool = False) -> RationalComplex:
    """Chains placed in non-positive degrees: k-cells sit in degree -k.

    With reduced=True an augmentation block Q in degree +1 is added, so reduced
    homology in homological degree k is the degree -k cohomology of the result.
    """
    by_dim = s.cells_by_dim()
    index = {k: {c: i for i, c in enumerate(cs)} for k, cs in by_dim.items()}
    dims = {-k: len(cs) for k, cs in by_dim.items() if cs}
    d = {}
    faces = dict(s.faces)
    for k, cs in by_dim.items():
        if k == 0 or not cs:
            continue
        entries = {}
        for j, c in enumerate(cs):
            for i, f in enumerate(faces[c]):
                key = (index[k - 1][f], j)
                entries[key] = entries.get(key, Q0) + (Q(-1) if i % 2 else Q(1))
        d[-k] = _mat_from_entries(len(by_dim[k - 1]), len(cs), entries)
    if reduced and dims.get(0, 0) > 0:
        dims[1] = 1
        d[0] = Mat.from_rows([[1] * dims[0]], rows=1, cols=dims[0])
    return RationalComplex(dims, d)


def reduced_homology_of_nerve(p: Poset) -> dict:
    """Reduced homology ranks of the nerve, keyed by homological degree."""
    from .posets import nerve
    c = complex_of_semisimplicial(nerve(p), reduced=True)
    return {-n: r for n, r in homology(c).items() if n <= 0}


def homology_map_ranks(f: ChainMap) -> dict:
    """Ranks of the induced map on homology, degree -> rank (independent of cone)."""
    out = {}
    a, b = f.source, f.target
    for n in sorted(set(a.dims) | set(b.dims)):
        ker = nullspace(a.d_at(n))
        img = f.at(n) * ker
        db = b.d_at(n - 1)
        stacked = Mat.hstack([img, db])
        r = rank(stacked) - rank(db)
        if r:
            out[n] = r
    return out
