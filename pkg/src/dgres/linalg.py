"""Exact sparse linear algebra over ℚ and F_p.

Ranks over ℚ go through fraction-free Bareiss elimination on integer-cleared
rows; prime-field ranks use straight modular elimination.  Nullspaces and
linear solves use reduced row echelon form over the field, so every answer
is exact and deterministic (pivots are chosen in canonical column order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .scalars import Field


class SliceMatrix:
    """One degree slice of a linear map, over enumerated ordered bases.

    Entry (i, j) is the coefficient of target basis vector i in the image of
    source basis vector j (columns = source).
    """

    __slots__ = ("field", "nrows", "ncols", "entries", "row_labels", "col_labels", "_rank")

    def __init__(self, field: Field, nrows: int, ncols: int, entries: dict | None = None,
                 row_labels=None, col_labels=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.entries = entries or {}
        self.row_labels = row_labels
        self.col_labels = col_labels
        self._rank = None

    def set(self, i: int, j: int, value):
        if value == self.field.zero:
            self.entries.pop((i, j), None)
        else:
            self.entries[(i, j)] = value

    def get(self, i: int, j: int):
        return self.entries.get((i, j), self.field.zero)

    def column(self, j: int) -> dict:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def to_dense(self) -> list[list]:
        z = self.field.zero
        rows = [[z] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def transpose(self) -> "SliceMatrix":
        return SliceMatrix(
            self.field, self.ncols, self.nrows,
            {(j, i): v for (i, j), v in self.entries.items()},
            row_labels=self.col_labels, col_labels=self.row_labels,
        )

    def compose(self, other: "SliceMatrix") -> "SliceMatrix":
        """self ∘ other (matrix product self @ other)."""
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in compose")
        f = self.field
        out = SliceMatrix(f, self.nrows, other.ncols,
                          row_labels=self.row_labels, col_labels=other.col_labels)
        by_row: dict[int, list] = {}
        for (i, k), v in self.entries.items():
            by_row.setdefault(k, []).append((i, v))
        for (k, j), w in other.entries.items():
            for i, v in by_row.get(k, ()):
                out.set(i, j, f.add(out.get(i, j), f.mul(v, w)))
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        if len(self.entries) != self.nrows:
            return False
        one = self.field.one
        return all(i == j and v == one for (i, j), v in self.entries.items())

    def __add__(self, other: "SliceMatrix") -> "SliceMatrix":
        f = self.field
        out = SliceMatrix(f, self.nrows, self.ncols, dict(self.entries),
                          row_labels=self.row_labels, col_labels=self.col_labels)
        for (i, j), v in other.entries.items():
            out.set(i, j, f.add(out.get(i, j), v))
        return out

    def scale_int(self, n: int) -> "SliceMatrix":
        f = self.field
        c = f.of_int(n)
        return SliceMatrix(f, self.nrows, self.ncols,
                           {ij: f.mul(v, c) for ij, v in self.entries.items()},
                           row_labels=self.row_labels, col_labels=self.col_labels)

    def rank(self) -> int:
        if self._rank is None:
            if self.field.is_prime_field:
                self._rank = _rank_mod_p(self.to_dense(), self.field.p)
            else:
                self._rank = _rank_bareiss(self.to_dense())
        return self._rank

    def nullity(self) -> int:
        return self.ncols - self.rank()

    def nullspace(self) -> list[list]:
        """Canonical basis of the kernel (free variables in column order)."""
        rref, pivots = _rref(self.to_dense(), self.field)
        f = self.field
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for j in free:
            vec = [f.zero] * self.ncols
            vec[j] = f.one
            for r, pc in enumerate(pivots):
                vec[pc] = f.neg(rref[r][j])
            basis.append(vec)
        return basis

    def __repr__(self):
        return f"SliceMatrix({self.nrows}x{self.ncols}, {len(self.entries)} nonzero)"


def _rank_bareiss(rows: list[list]) -> int:
    """Fraction-free rank over ℚ: clear denominators, then Bareiss elimination."""
    m = []
    for row in rows:
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        m.append([int(v * den) if isinstance(v, Fraction) else int(v) * den for v in row])
    nr, nc = len(m), len(m[0]) if m else 0
    rank = 0
    prev = 1
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        piv = None
        for i in range(r, nr):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        rank += 1
    return rank


def _rank_mod_p(rows: list[list], p: int) -> int:
    nr, nc = len(rows), len(rows[0]) if rows else 0
    m = [list(row) for row in rows]
    rank = 0
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        piv = None
        for i in range(r, nr):
            if m[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(r + 1, nr):
            if m[i][c] % p:
                fac = m[i][c]
                m[i] = [(a - fac * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        rank += 1
    return rank


def _rref(rows: list[list], field: Field):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    m = [list(row) for row in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        piv = None
        for i in range(r, nr):
            if m[i][c] != field.zero:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(v, inv) for v in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != field.zero:
                fac = m[i][c]
                m[i] = [field.sub(a, field.mul(fac, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r] + m[r:], pivots


@dataclass
class InfeasibilityCertificate:
    """A row combination λ with λᵀA = 0 but λᵀb ≠ 0, witnessing Ax = b has no solution."""

    row_combination: dict  # original row index -> coefficient
    first_row: int         # smallest original row index involved

    def __repr__(self):
        return f"InfeasibilityCertificate(first_row={self.first_row}, rows={sorted(self.row_combination)})"


def solve_linear(A: SliceMatrix, b: list):
    """Solve A x = b exactly.

    Returns (x, None) with free variables set to zero, or (None, certificate)
    when the system is inconsistent.  Deterministic: pivots scan columns left
    to right, rows top to bottom.
    """
    f = A.field
    nr, nc = A.nrows, A.ncols
    aug = A.to_dense()
    # augment with b and an identity block to track row combinations
    for i in range(nr):
        aug[i] = aug[i] + [b[i]] + [f.one if k == i else f.zero for k in range(nr)]
    m, pivots = _rref(aug, f)
    # pivot in column nc (the b column) => inconsistent
    for r, row in enumerate(m):
        lead = next((j for j, v in enumerate(row[: nc + 1]) if v != f.zero), None)
        if lead == nc:
            comb = {k: row[nc + 1 + k] for k in range(nr) if row[nc + 1 + k] != f.zero}
            return None, InfeasibilityCertificate(comb, min(comb))
    x = [f.zero] * nc
    r = 0
    for c in pivots:
        if c < nc:
            x[c] = m[r][nc]
        r += 1
    return x, None

