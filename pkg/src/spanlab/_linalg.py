"""Exact linear algebra over the rationals.

Immutable Fraction matrices with explicit shapes (zero-dimensional matrices
are legal and common in graded complexes), sparse Gaussian elimination for
ranks, dense elimination for solving and nullspaces.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Q = Fraction


def as_q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    data: tuple  # row-major, tuple of row tuples

    @staticmethod
    def from_rows(entries, rows: int | None = None, cols: int | None = None) -> "Mat":
        data = tuple(tuple(as_q(x) for x in row) for row in entries)
        r = len(data) if rows is None else rows
        c = (len(data[0]) if data else 0) if cols is None else cols
        if len(data) != r or any(len(row) != c for row in data):
            raise ValueError(f"ragged or mis-shaped matrix: want {r}x{c}")
        return Mat(r, c, data)

    @staticmethod
    def zero(rows: int, cols: int) -> "Mat":
        zero_row = (Q(0),) * cols
        return Mat(rows, cols, tuple(zero_row for _ in range(rows)))

    @staticmethod
    def eye(n: int) -> "Mat":
        return Mat(n, n, tuple(tuple(Q(1 if i == j else 0) for j in range(n)) for i in range(n)))

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def nonzero_entries(self):
        for i, row in enumerate(self.data):
            for j, x in enumerate(row):
                if x != 0:
                    yield i, j, x

    @property
    def T(self) -> "Mat":
        return Mat(self.cols, self.rows, tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in +")
        return Mat(self.rows, self.cols, tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, tuple(tuple(-a for a in row) for row in self.data))

    def scale(self, c) -> "Mat":
        c = as_q(c)
        return Mat(self.rows, self.cols, tuple(tuple(c * a for a in row) for row in self.data))

    def __mul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch in *: {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        # sparse accumulation; big graded differentials have few entries per column
        out = [[Q(0)] * other.cols for _ in range(self.rows)]
        left_cols: dict[int, list[tuple[int, Fraction]]] = {}
        for i, j, v in self.nonzero_entries():
            left_cols.setdefault(j, []).append((i, v))
        for k, row in enumerate(other.data):
            lk = left_cols.get(k)
            if lk is None:
                continue
            for j, b in enumerate(row):
                if b == 0:
                    continue
                for i, a in lk:
                    out[i][j] += a * b
        return Mat(self.rows, other.cols, tuple(tuple(row) for row in out))

    def apply(self, vec: tuple) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * x for a, x in zip(row, vec)), Q(0)) for row in self.data)

    @staticmethod
    def hstack(blocks: list["Mat"]) -> "Mat":
        if not blocks:
            raise ValueError("hstack of nothing")
        r = blocks[0].rows
        if any(b.rows != r for b in blocks):
            raise ValueError("hstack row mismatch")
        data = tuple(tuple(x for b in blocks for x in b.data[i]) for i in range(r))
        return Mat(r, sum(b.cols for b in blocks), data)

    @staticmethod
    def vstack(blocks: list["Mat"]) -> "Mat":
        if not blocks:
            raise ValueError("vstack of nothing")
        c = blocks[0].cols
        if any(b.cols != c for b in blocks):
            raise ValueError("vstack column mismatch")
        return Mat(sum(b.rows for b in blocks), c, tuple(row for b in blocks for row in b.data))

    @staticmethod
    def block(grid: list[list["Mat"]]) -> "Mat":
        return Mat.vstack([Mat.hstack(row) for row in grid])

    @staticmethod
    def block_diag(blocks: list["Mat"]) -> "Mat":
        total_r = sum(b.rows for b in blocks)
        total_c = sum(b.cols for b in blocks)
        out = [[Q(0)] * total_c for _ in range(total_r)]
        ro = co = 0
        for b in blocks:
            for i, j, v in b.nonzero_entries():
                out[ro + i][co + j] = v
            ro += b.rows
            co += b.cols
        return Mat(total_r, total_c, tuple(tuple(row) for row in out))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.data]


def rank(m: Mat) -> int:
    """Rank by sparse elimination with unit-pivot preference."""
    cols: dict[int, dict[int, Fraction]] = {}
    rows: dict[int, dict[int, Fraction]] = {}
    for i, j, v in m.nonzero_entries():
        cols.setdefault(j, {})[i] = v
        rows.setdefault(i, {})[j] = v
    r = 0
    while cols:
        # pick a pivot: unit value if available, then least fill-in
        best = None
        for j, col in cols.items():
            for i, v in col.items():
                key = (0 if abs(v) == 1 else 1, (len(rows[i]) - 1) * (len(col) - 1), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j, v)
        _, pi, pj, pv = best
        prow = dict(rows[pi])
        pcol = dict(cols[pj])
        for i, a in pcol.items():
            if i == pi:
                continue
            factor = a / pv
            ri = rows[i]
            for j, b in prow.items():
                if j == pj:
                    continue
                new = ri.get(j, Q(0)) - factor * b
                if new == 0:
                    ri.pop(j, None)
                    cj = cols[j]
                    cj.pop(i, None)
                    if not cj:
                        del cols[j]
                else:
                    ri[j] = new
                    cols[j][i] = new
        # drop pivot row and column
        for j in list(rows[pi]):
            cj = cols.get(j)
            if cj is not None:
                cj.pop(pi, None)
                if not cj:
                    del cols[j]
        del rows[pi]
        for i in list(cols.get(pj, {})):
            rows[i].pop(pj, None)
            if not rows[i]:
                del rows[i]
        cols.pop(pj, None)
        r += 1
    return r


def _eliminate(aug: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place RREF on the first ncols columns; returns pivot column list."""
    pivots = []
    rr = 0
    for c in range(ncols):
        pr = None
        for i in range(rr, len(aug)):
            if aug[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        aug[rr], aug[pr] = aug[pr], aug[rr]
        pv = aug[rr][c]
        aug[rr] = [x / pv for x in aug[rr]]
        for i in range(len(aug)):
            if i != rr and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rr])]
        pivots.append(c)
        rr += 1
    return pivots


def solve(a: Mat, b: Mat) -> Mat | None:
    """One solution X of A X = B, or None if inconsistent."""
    if a.rows != b.rows:
        raise ValueError("shape mismatch in solve")
    aug = [list(ra) + list(rb) for ra, rb in zip(a.data, b.data)]
    if not aug:
        return Mat.zero(a.cols, b.cols)
    pivots = _eliminate(aug, a.cols)
    pivot_rows = len(pivots)
    for i in range(pivot_rows, len(aug)):
        if any(x != 0 for x in aug[i][a.cols:]):
            return None
    out = [[Q(0)] * b.cols for _ in range(a.cols)]
    for r, c in enumerate(pivots):
        out[c] = aug[r][a.cols:]
    return Mat.from_rows(out, rows=a.cols, cols=b.cols)


def nullspace(a: Mat) -> Mat:
    """Kernel basis as the columns of the result (a.cols x k)."""
    aug = [list(row) for row in a.data]
    pivots = _eliminate(aug, a.cols) if aug else []
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Q(0)] * a.cols
        v[fc] = Q(1)
        for r, pc in enumerate(pivots):
            v[pc] = -aug[r][fc]
        basis.append(v)
    return Mat(a.cols, len(basis), tuple(tuple(v[i] for v in basis) for i in range(a.cols)))


def inverse(a: Mat) -> Mat:
    if a.rows != a.cols:
        raise ValueError("only square matrices invert")
    x = solve(a, Mat.eye(a.rows))
    if x is None or not (a * x - Mat.eye(a.rows)).is_zero():
        raise ValueError("singular matrix")
    return x


def primitive_integer_vector(col: list[Fraction]) -> list[Fraction]:
    """Scale a rational vector to coprime integers with positive leading entry."""
    from math import gcd, lcm

    denom = lcm(*[x.denominator for x in col]) if col else 1
    ints = [int(x * denom) for x in col]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return [Q(x) for x in ints]
