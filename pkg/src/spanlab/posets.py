"""Finite posets and the grid/ladder/fold shapes, their nerves, and monotone maps.

Elements are opaque string labels; the order relation is stored as the full
reflexive-transitive closure, so containment checks are set lookups.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations


@dataclass(frozen=True)
class Poset:
    elements: tuple
    leq: frozenset  # pairs (a, b) with a <= b, reflexive-transitive closure

    def __post_init__(self):
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise ValueError("duplicate elements")
        for a, b in self.leq:
            if a not in elems or b not in elems:
                raise ValueError(f"relation on unknown element: {(a, b)}")
        for a in self.elements:
            if (a, a) not in self.leq:
                raise ValueError(f"not reflexive at {a}")
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                raise ValueError(f"not antisymmetric: {a}, {b}")
        for a, b in self.leq:
            for c in self.elements:
                if (b, c) in self.leq and (a, c) not in self.leq:
                    raise ValueError(f"not transitive: {a} <= {b} <= {c}")

    @staticmethod
    def from_relations(elements, pairs) -> "Poset":
        """Build from generating pairs; the closure is computed here."""
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        reach = [set() for _ in range(n)]
        for i in range(n):
            reach[i].add(i)
        for a, b in pairs:
            reach[idx[a]].add(idx[b])
        changed = True
        while changed:
            changed = False
            for i in range(n):
                new = set()
                for j in reach[i]:
                    new |= reach[j]
                if not new <= reach[i]:
                    reach[i] |= new
                    changed = True
        leq = frozenset((elements[i], elements[j]) for i in range(n) for j in reach[i])
        return Poset(elements, leq)

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def lt(self, a, b) -> bool:
        return a != b and (a, b) in self.leq

    def comparable(self, a, b) -> bool:
        return (a, b) in self.leq or (b, a) in self.leq

    def covers(self):
        """Hasse edges (a, b): a < b with nothing strictly between."""
        out = []
        for a, b in sorted(self.leq):
            if a == b:
                continue
            if any(self.lt(a, c) and self.lt(c, b) for c in self.elements):
                continue
            out.append((a, b))
        return out

    def up_set(self, a):
        return tuple(b for b in self.elements if self.le(a, b))

    def down_set(self, a):
        return tuple(b for b in self.elements if self.le(b, a))

    def minimal_elements(self):
        return tuple(a for a in self.elements if not any(self.lt(b, a) for b in self.elements))

    def maximal_elements(self):
        return tuple(a for a in self.elements if not any(self.lt(a, b) for b in self.elements))

    def initial_element(self):
        for a in self.elements:
            if all(self.le(a, b) for b in self.elements):
                return a
        return None

    def terminal_element(self):
        for a in self.elements:
            if all(self.le(b, a) for b in self.elements):
                return a
        return None

    def upper_bounds(self, a, b):
        return tuple(c for c in self.elements if self.le(a, c) and self.le(b, c))

    def least_upper_bound(self, a, b):
        ubs = self.upper_bounds(a, b)
        for c in ubs:
            if all(self.le(c, d) for d in ubs):
                return c
        return None

    def subposet(self, keep) -> "Poset":
        keep = tuple(keep)
        ks = set(keep)
        if not ks <= set(self.elements):
            raise ValueError("subposet on unknown elements")
        return Poset(keep, frozenset(p for p in self.leq if p[0] in ks and p[1] in ks))

    def opposite(self) -> "Poset":
        return Poset(self.elements, frozenset((b, a) for a, b in self.leq))

    def relabel(self, fn) -> "Poset":
        new = tuple(fn(e) for e in self.elements)
        return Poset(new, frozenset((fn(a), fn(b)) for a, b in self.leq))

    def product(self, other: "Poset") -> "Poset":
        return product_many([self, other])

    def cone_left(self, label="-inf") -> "Poset":
        if label in self.elements:
            raise ValueError(f"cone label {label} already present")
        elems = (label,) + self.elements
        leq = set(self.leq)
        for e in elems:
            leq.add((label, e))
        return Poset(elems, frozenset(leq))

    def cone_right(self, label="+inf") -> "Poset":
        if label in self.elements:
            raise ValueError(f"cone label {label} already present")
        elems = self.elements + (label,)
        leq = set(self.leq)
        for e in elems:
            leq.add((e, label))
        return Poset(elems, frozenset(leq))

    def chains(self, max_length=None):
        """All nonempty strictly increasing chains, as tuples of labels."""
        order = {e: i for i, e in enumerate(self.elements)}
        above = {e: sorted((b for b in self.elements if self.lt(e, b)), key=order.get) for e in self.elements}
        out = []

        def extend(chain):
            out.append(tuple(chain))
            if max_length is not None and len(chain) >= max_length:
                return
            for b in above[chain[-1]]:
                chain.append(b)
                extend(chain)
                chain.pop()

        for e in self.elements:
            extend([e])
        return out

    def to_json(self) -> str:
        return json.dumps({"elements": list(self.elements), "leq": sorted([a, b] for a, b in self.leq)})

    @staticmethod
    def from_json(text: str) -> "Poset":
        obj = json.loads(text)
        return Poset(tuple(obj["elements"]), frozenset((a, b) for a, b in obj["leq"]))

    def to_dot(self, name="poset") -> str:
        lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
        for e in self.elements:
            lines.append(f'  "{e}";')
        for a, b in self.covers():
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines)

    @staticmethod
    def chain(n: int) -> "Poset":
        elems = tuple(str(i) for i in range(n + 1))
        return Poset.from_relations(elems, [(str(i), str(i + 1)) for i in range(n)])

    @staticmethod
    def point(label="*") -> "Poset":
        return Poset((label,), frozenset({(label, label)}))

    @staticmethod
    def empty() -> "Poset":
        return Poset((), frozenset())


def tuple_label(parts) -> str:
    return "(" + ",".join(parts) + ")"


def split_tuple_label(label: str):
    """Inverse of tuple_label for one nesting level."""
    if not (label.startswith("(") and label.endswith(")")):
        raise ValueError(f"not a tuple label: {label}")
    parts, depth, cur = [], 0, []
    for ch in label[1:-1]:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    parts.append("".join(cur))
    return tuple(parts)


def product_many(factors) -> "Poset":
    """Product poset with flat tuple labels "(x1,...,xn)"."""
    factors = list(factors)
    elems = [()]
    for p in factors:
        elems = [e + (x,) for e in elems for x in p.elements]
    labels = [tuple_label(e) for e in elems]
    leq = set()
    for ea in elems:
        la = tuple_label(ea)
        for eb in elems:
            if all(f.le(a, b) for f, a, b in zip(factors, ea, eb)):
                leq.add((la, tuple_label(eb)))
    return Poset(tuple(labels), frozenset(leq))


@dataclass(frozen=True)
class FunctorBetweenPosets:
    source: Poset
    target: Poset
    mapping: tuple  # pairs (src label, tgt label)

    def __post_init__(self):
        m = dict(self.mapping)
        if set(m) != set(self.source.elements):
            raise ValueError("mapping must cover the source exactly")
        for v in m.values():
            if v not in set(self.target.elements):
                raise ValueError(f"value {v} not in target")
        for a, b in self.source.leq:
            if not self.target.le(m[a], m[b]):
                raise ValueError(f"not monotone on {a} <= {b}")

    @staticmethod
    def from_dict(source, target, mapping: dict) -> "FunctorBetweenPosets":
        return FunctorBetweenPosets(source, target, tuple(sorted(mapping.items())))

    def __call__(self, a):
        return dict(self.mapping)[a]

    @property
    def as_dict(self) -> dict:
        return dict(self.mapping)

    def compose(self, other: "FunctorBetweenPosets") -> "FunctorBetweenPosets":
        """self after other."""
        if other.target.elements != self.source.elements:
            raise ValueError("composition mismatch")
        m, o = dict(self.mapping), dict(other.mapping)
        return FunctorBetweenPosets.from_dict(other.source, self.target, {a: m[o[a]] for a in other.source.elements})

    def is_surjective(self) -> bool:
        return set(dict(self.mapping).values()) == set(self.target.elements)


@dataclass(frozen=True)
class SemiSimplicialSet:
    cells: tuple   # pairs (dim, tuple of cell ids)
    faces: tuple   # pairs (cell id, tuple of face ids), for cells of dim >= 1

    def __post_init__(self):
        by_dim = self.cells_by_dim()
        faces = dict(self.faces)
        dim_of = {}
        for k, cs in by_dim.items():
            for c in cs:
                dim_of[c] = k
        for k, cs in by_dim.items():
            if k == 0:
                continue
            for c in cs:
                fs = faces.get(c)
                if fs is None or len(fs) != k + 1:
                    raise ValueError(f"cell {c} of dim {k} needs {k + 1} faces")
                for f in fs:
                    if dim_of.get(f) != k - 1:
                        raise ValueError(f"face {f} of {c} has wrong dimension")
        # semisimplicial identity d_i d_j = d_{j-1} d_i for i < j
        for k, cs in by_dim.items():
            if k < 2:
                continue
            for c in cs:
                fs = faces[c]
                for j in range(1, k + 1):
                    for i in range(j):
                        if faces[fs[j]][i] != faces[fs[i]][j - 1]:
                            raise ValueError(f"face identity fails at {c}: d_{i} d_{j}")

    def cells_by_dim(self) -> dict:
        return {k: cs for k, cs in self.cells}

    def face(self, cell, i):
        return dict(self.faces)[cell][i]

    def f_vector(self) -> dict:
        return {k: len(cs) for k, cs in self.cells}

    def euler(self) -> int:
        return sum((-1) ** k * len(cs) for k, cs in self.cells)

    def top_dim(self) -> int:
        dims = [k for k, cs in self.cells if cs]
        return max(dims) if dims else -1


def nerve(p: Poset, max_dim=None) -> SemiSimplicialSet:
    """k-cells are strictly increasing (k+1)-chains, id "a|b|...". """
    chains = p.chains(max_length=None if max_dim is None else max_dim + 1)
    cells: dict[int, list] = {}
    faces = []
    for ch in chains:
        k = len(ch) - 1
        cid = "|".join(ch)
        cells.setdefault(k, []).append(cid)
        if k >= 1:
            faces.append((cid, tuple("|".join(ch[:i] + ch[i + 1:]) for i in range(k + 1))))
    cell_items = tuple((k, tuple(sorted(cs))) for k, cs in sorted(cells.items()))
    return SemiSimplicialSet(cell_items, tuple(faces))


@dataclass(frozen=True)
class DeltaMorphism:
    """Monotone map [n] -> [m] between finite ordinals."""
    source_arity: int
    target_arity: int
    values: tuple

    def __post_init__(self):
        if self.source_arity < 0 or self.target_arity < 0:
            raise ValueError("negative arity")
        if len(self.values) != self.source_arity + 1:
            raise ValueError("value list must have length source_arity + 1")
        for v in self.values:
            if not (0 <= v <= self.target_arity):
                raise ValueError(f"value {v} out of range")
        for a, b in zip(self.values, self.values[1:]):
            if a > b:
                raise ValueError("not monotone")

    def __call__(self, i: int) -> int:
        return self.values[i]

    @staticmethod
    def identity(n: int) -> "DeltaMorphism":
        return DeltaMorphism(n, n, tuple(range(n + 1)))

    @staticmethod
    def face(n: int, i: int) -> "DeltaMorphism":
        """The injection [n-1] -> [n] omitting i."""
        return DeltaMorphism(n - 1, n, tuple(j if j < i else j + 1 for j in range(n)))

    @staticmethod
    def degeneracy(n: int, i: int) -> "DeltaMorphism":
        """The surjection [n+1] -> [n] repeating i."""
        return DeltaMorphism(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 2)))

    def compose(self, other: "DeltaMorphism") -> "DeltaMorphism":
        """self after other."""
        if other.target_arity != self.source_arity:
            raise ValueError("composition mismatch")
        return DeltaMorphism(other.source_arity, self.target_arity, tuple(self.values[v] for v in other.values))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_inert(self) -> bool:
        """Consecutive inclusion: phi(i) = phi(0) + i."""
        return all(v == self.values[0] + i for i, v in enumerate(self.values))

    def is_active(self) -> bool:
        """Endpoint-preserving: phi(0) = 0 and phi(n) = m."""
        return self.values[0] == 0 and self.values[-1] == self.target_arity


def factorize(phi: DeltaMorphism):
    """Unique (active, inert) with phi = inert . active."""
    lo, hi = phi.values[0], phi.values[-1]
    active = DeltaMorphism(phi.source_arity, hi - lo, tuple(v - lo for v in phi.values))
    inert = DeltaMorphism(hi - lo, phi.target_arity, tuple(range(lo, hi + 1)))
    assert inert.compose(active).values == phi.values
    return active, inert


def _check_n(n, allow_zero=True):
    if not isinstance(n, int):
        raise ValueError(f"parameter must be an integer, got {n!r}")
    if n < 0 or (n == 0 and not allow_zero):
        raise ValueError(f"parameter out of range: {n}")


def sigma_poset(n: int) -> Poset:
    """Pairs (i,j), 0 <= i <= j <= n, with (i,j) <= (i',j') iff i <= i' and j' <= j."""
    _check_n(n)
    elems = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    labels = [f"({i},{j})" for i, j in elems]
    leq = set()
    for (i, j) in elems:
        for (a, b) in elems:
            if i <= a and b <= j:
                leq.add((f"({i},{j})", f"({a},{b})"))
    return Poset(tuple(labels), frozenset(leq))


def lambda_poset(n: int) -> Poset:
    _check_n(n)
    keep = [f"({i},{j})" for i in range(n + 1) for j in range(i, min(i + 1, n) + 1)]
    return sigma_poset(n).subposet(keep)


def sp_circ_poset(n: int) -> Poset:
    """Levels A_k, B_k (k = 1..n); X_i <= Y_j iff i > j, or i = j with X = Y."""
    _check_n(n)
    elems = [f"{letter}{k}" for k in range(1, n + 1) for letter in "AB"]
    leq = set()
    for x in elems:
        for y in elems:
            i, j = int(x[1:]), int(y[1:])
            if i > j or x == y:
                leq.add((x, y))
    return Poset(tuple(elems), frozenset(leq))


def sp_poset(n: int) -> Poset:
    return sp_circ_poset(n).cone_left("-inf")


def sp1_factor() -> Poset:
    return sp_poset(1)


def sp_product_poset(n: int) -> Poset:
    """n-fold product of the single-level fold shape, tuple labels."""
    _check_n(n)
    return product_many([sp1_factor()] * n)


def sp_product_label(parts) -> str:
    return tuple_label(parts)


def sp_product_initial(n: int) -> str:
    return tuple_label(("-inf",) * n)


def sp_product_circ_poset(n: int) -> Poset:
    p = sp_product_poset(n)
    init = sp_product_initial(n)
    return p.subposet([e for e in p.elements if e != init])


def sd_poset(l: int) -> Poset:
    """Face poset of the l-simplex: nonempty subsets of {0..l} by inclusion."""
    _check_n(l)
    if l > 9:
        raise ValueError("sd labels use single digits; l <= 9")
    verts = list(range(l + 1))
    subsets = []
    for k in range(1, l + 2):
        subsets += [frozenset(c) for c in combinations(verts, k)]
    label = lambda s: "".join(str(v) for v in sorted(s))
    leq = set()
    for a in subsets:
        for b in subsets:
            if a <= b:
                leq.add((label(a), label(b)))
    return Poset(tuple(label(s) for s in subsets), frozenset(leq))


def build_shape(kind: str, n=None, base: Poset | None = None, factors=None, label=None) -> Poset:
    """Shape poset constructors, by kind name."""
    if kind == "sigma":
        return sigma_poset(n)
    if kind == "lambda":
        return lambda_poset(n)
    if kind == "sp_circ":
        return sp_circ_poset(n)
    if kind == "sp":
        return sp_poset(n)
    if kind == "Sp":
        return sp_product_poset(n)
    if kind == "Sp_circ":
        return sp_product_circ_poset(n)
    if kind == "sd":
        return sd_poset(n)
    if kind == "product":
        if not factors:
            raise ValueError("product needs factors")
        return product_many(factors)
    if kind == "cone_left":
        if base is None:
            raise ValueError("cone_left needs a base poset")
        return base.cone_left(label or "-inf")
    if kind == "cone_right":
        if base is None:
            raise ValueError("cone_right needs a base poset")
        return base.cone_right(label or "+inf")
    raise ValueError(f"unknown shape kind: {kind}")


def j_label(parts) -> str:
    """Collapse a fold-product tuple to its single-level image."""
    for k, x in enumerate(parts, start=1):
        if x != "-inf":
            return f"{x[0]}{k}"
    return "-inf"


def j_functor(n: int) -> FunctorBetweenPosets:
    """Collapse map from the n-fold product shape onto the n-level fold shape."""
    src = sp_product_poset(n)
    tgt = sp_poset(n)
    mapping = {e: j_label(split_tuple_label(e)) for e in src.elements}
    return FunctorBetweenPosets.from_dict(src, tgt, mapping)


def j_functor_circ(n: int) -> FunctorBetweenPosets:
    src = sp_product_circ_poset(n)
    tgt = sp_poset(n).subposet([e for e in sp_poset(n).elements if e != "-inf"])
    mapping = {e: j_label(split_tuple_label(e)) for e in src.elements}
    return FunctorBetweenPosets.from_dict(src, tgt, mapping)


def reduced_morphisms(n: int) -> frozenset:
    """Pairs in the n-fold product shape collapsed to identities by j_functor."""
    j = j_functor(n)
    m = j.as_dict
    return frozenset((a, b) for a, b in j.source.leq if m[a] == m[b])


def reduced_morphisms_sigma(j_arities) -> frozenset:
    """Pairs (f identity, or: first k-1 coordinates frozen at wide pairs and
    coordinate k frozen at a degenerate pair, k < n) in a product of grid shapes."""
    j_arities = tuple(j_arities)
    factors = [sigma_poset(j) for j in j_arities]
    prod = product_many(factors)
    n = len(j_arities)

    def parse(lbl):
        parts = split_tuple_label(lbl)
        return [tuple(int(x) for x in split_tuple_label(p)) for p in parts]

    out = set()
    for a, b in prod.leq:
        if a == b:
            out.add((a, b))
            continue
        pa, pb = parse(a), parse(b)
        for k in range(n - 1):
            if any(pa[i] != pb[i] or pa[i][0] == pa[i][1] for i in range(k)):
                continue
            if pa[k] == pb[k] and pa[k][0] == pa[k][1]:
                out.add((a, b))
                break
    return frozenset(out)
