"""Exact dense matrices over Z, Q, Z/n and F_p, plus Smith normal form.

Matrices are immutable (tuples of row tuples) and always hold canonical
scalars.  Arithmetic uses the scalars' native ``+``/``*`` and reduces modular
entries afterwards, which keeps the hot paths free of per-entry dispatch.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import snf
from .errors import NotInvertible, ShapeMismatch
from .rings import Ring, ZZ, rational


@dataclass(frozen=True)
class ExactMatrix:
    ring: Ring
    rows: int
    cols: int
    entries: tuple[tuple, ...]

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: Ring, data, rows: int | None = None, cols: int | None = None) -> "ExactMatrix":
        data = [list(row) for row in data]
        r = len(data) if rows is None else rows
        c = (len(data[0]) if data else 0) if cols is None else cols
        for row in data:
            if len(row) != c:
                raise ShapeMismatch("ragged matrix data")
        canon = ring.canon
        return cls(ring, r, c, tuple(tuple(canon(v) for v in row) for row in data))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "ExactMatrix":
        one, zero = ring.one, ring.zero
        return cls(ring, n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, ring: Ring, r: int, c: int) -> "ExactMatrix":
        zero = ring.zero
        return cls(ring, r, c, tuple((zero,) * c for _ in range(r)))

    # -- basic structure ------------------------------------------------------

    def to_lists(self) -> list[list]:
        return [list(row) for row in self.entries]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def take(self, row_idx, col_idx) -> "ExactMatrix":
        """Submatrix selecting the given row and column indices, in order."""
        ent = tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx)
        return ExactMatrix(self.ring, len(row_idx), len(col_idx), ent)

    def transpose(self) -> "ExactMatrix":
        if self.rows and self.cols:
            ent = tuple(zip(*self.entries))
        else:
            ent = tuple(() for _ in range(self.cols))
        return ExactMatrix(self.ring, self.cols, self.rows, ent)

    def is_zero(self) -> bool:
        zero = self.ring.zero
        return all(v == zero for row in self.entries for v in row)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        one, zero = self.ring.one, self.ring.zero
        return all(
            v == (one if i == j else zero)
            for i, row in enumerate(self.entries)
            for j, v in enumerate(row)
        )

    # -- arithmetic -----------------------------------------------------------

    def _reduced(self, raw: list[list]) -> tuple[tuple, ...]:
        if self.ring.is_modular:
            n = self.ring.modulus
            return tuple(tuple(v % n for v in row) for row in raw)
        return tuple(tuple(row) for row in raw)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        raw = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        return ExactMatrix(self.ring, self.rows, self.cols, self._reduced(raw))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        raw = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        return ExactMatrix(self.ring, self.rows, self.cols, self._reduced(raw))

    def __neg__(self) -> "ExactMatrix":
        raw = [[-v for v in row] for row in self.entries]
        return ExactMatrix(self.ring, self.rows, self.cols, self._reduced(raw))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ring != other.ring:
            raise ShapeMismatch("ring mismatch in matrix product")
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        bcols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        zero = self.ring.zero
        if self.ring.is_modular:
            n = self.ring.modulus
            ent = tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % n for col in bcols) for row in self.entries
            )
        else:
            ent = tuple(
                tuple(sum((a * b for a, b in zip(row, col)), zero) for col in bcols)
                for row in self.entries
            )
        return ExactMatrix(self.ring, self.rows, other.cols, ent)

    def scale(self, scalar) -> "ExactMatrix":
        s = self.ring.canon(scalar)
        raw = [[s * v for v in row] for row in self.entries]
        return ExactMatrix(self.ring, self.rows, self.cols, self._reduced(raw))

    def apply(self, vector) -> tuple:
        """Matrix-vector product; the vector is a sequence of length ``cols``."""
        if len(vector) != self.cols:
            raise ShapeMismatch("vector length does not match column count")
        zero = self.ring.zero
        if self.ring.is_modular:
            n = self.ring.modulus
            return tuple(sum(a * b for a, b in zip(row, vector)) % n for row in self.entries)
        return tuple(sum((a * b for a, b in zip(row, vector)), zero) for row in self.entries)

    def _check_same_shape(self, other: "ExactMatrix"):
        if self.ring != other.ring or self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatch("shape or ring mismatch")

    # -- determinants and inverses --------------------------------------------

    def det(self):
        if self.rows != self.cols:
            raise ShapeMismatch("determinant of a non-square matrix")
        if self.ring.kind == "Q":
            return _det_field(self.ring, self.to_lists())
        d = _det_int_bareiss(self.to_lists())
        return d % self.ring.modulus if self.ring.is_modular else d

    def is_invertible(self) -> bool:
        if self.rows != self.cols:
            return False
        d = self.det()
        if self.ring.kind == "Z":
            return d in (1, -1)
        if self.ring.kind == "Q":
            return d != 0
        if self.ring.kind == "Fp":
            return d != 0
        return gcd(d, self.ring.modulus) == 1

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise NotInvertible("non-square matrix")
        n = self.rows
        if self.ring.is_field:
            inv = _inverse_field(self.ring, self.to_lists())
            if inv is None:
                raise NotInvertible("singular matrix")
            return ExactMatrix(self.ring, n, n, self._reduced(inv))
        if self.ring.kind == "Z":
            d = _det_int_bareiss(self.to_lists())
            if d not in (1, -1):
                raise NotInvertible(f"integer matrix with determinant {d}")
            lifted = [[rational(v) for v in row] for row in self.entries]
            inv = _inverse_field(None, lifted, use_fraction=True)
            ent = tuple(tuple(int(v) for v in row) for row in inv)
            return ExactMatrix(self.ring, n, n, ent)
        # Z/n: Smith form of an integer lift; all invariants must be units mod n
        mod = self.ring.modulus
        D, P, _pinv, Q, _qinv = snf.smith_with_transforms(self.to_lists(), n, n)
        diag = [D[i][i] for i in range(n)]
        invdiag = []
        for d in diag:
            dm = d % mod
            if gcd(dm, mod) != 1:
                raise NotInvertible(f"matrix is singular over Z/{mod}")
            invdiag.append(pow(dm, -1, mod))
        # inverse = Q * diag^-1 * P (mod n)
        ent = tuple(
            tuple(sum(Q[i][k] * invdiag[k] * P[k][j] for k in range(n)) % mod for j in range(n))
            for i in range(n)
        )
        return ExactMatrix(self.ring, n, n, ent)

    def rank(self) -> int:
        """Rank over a field (Q, F_p)."""
        if not self.ring.is_field:
            raise ValueError("rank() is defined over field coefficients; use group operations over Z")
        _, pivots = field_rref(self.ring, self.to_lists(), self.rows, self.cols)
        return len(pivots)

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        fmt = self.ring.format_scalar
        return "[" + "; ".join(" ".join(fmt(v) for v in row) for row in self.entries) + "]"


# -- Smith normal form (public operation, ring Z) ------------------------------


def smith_normal_form(a: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Decompose an integer matrix as ``A = U @ D @ V``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with a nonnegative
    divisibility chain ``d1 | d2 | ...``.
    """
    if a.ring != ZZ:
        raise ValueError("Smith normal form requires integer entries")
    D, _p, Pinv, _q, Qinv = snf.smith_with_transforms(a.to_lists(), a.rows, a.cols)
    U = ExactMatrix(ZZ, a.rows, a.rows, tuple(tuple(r) for r in Pinv))
    V = ExactMatrix(ZZ, a.cols, a.cols, tuple(tuple(r) for r in Qinv))
    Dm = ExactMatrix(ZZ, a.rows, a.cols, tuple(tuple(r) for r in D))
    return U, Dm, V


def invariant_factors(a: ExactMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith form of an integer matrix (zeros trailing)."""
    if a.ring != ZZ:
        raise ValueError("invariant factors require integer entries")
    return tuple(snf.diagonal_invariants(a.to_lists()))


# -- scalar-level linear algebra ------------------------------------------------


def _det_int_bareiss(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def _det_field(ring: Ring, rows: list[list]):
    n = len(rows)
    if n == 0:
        return ring.one
    a = [list(r) for r in rows]
    det = ring.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            return ring.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = ring.canon(det * a[c][c])
        inv = ring.inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = ring.canon(a[i][c] * inv)
                ai, ac = a[i], a[c]
                for j in range(c, n):
                    ai[j] = ring.canon(ai[j] - f * ac[j])
    return det


def _inverse_field(ring: Ring | None, rows: list[list], use_fraction: bool = False):
    """Gauss-Jordan inverse; returns row lists or None when singular.

    With ``use_fraction`` the input must already hold Fractions and no ring is
    consulted (used for unimodular integer matrices).
    """
    n = len(rows)
    if use_fraction:
        inv_of = lambda x: rational(1) / x
        canon = lambda x: x
        one, zero = rational(1), rational(0)
    else:
        inv_of = ring.inv
        canon = ring.canon
        one, zero = ring.one, ring.zero
    a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            return None
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
        f = inv_of(a[c][c])
        a[c] = [canon(v * f) for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                g = a[i][c]
                ai, ac = a[i], a[c]
                for j in range(c, 2 * n):
                    ai[j] = canon(ai[j] - g * ac[j])
    return [row[n:] for row in a]


def field_rref(ring: Ring, rows: list[list], r: int, c: int):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    a = [[ring.canon(v) for v in row] for row in rows]
    pivots = []
    pr = 0
    for col in range(c):
        piv = None
        for i in range(pr, r):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[pr], a[piv] = a[piv], a[pr]
        f = ring.inv(a[pr][col])
        a[pr] = [ring.canon(v * f) for v in a[pr]]
        for i in range(r):
            if i != pr and a[i][col] != 0:
                g = a[i][col]
                ai, ap = a[i], a[pr]
                for j in range(col, c):
                    ai[j] = ring.canon(ai[j] - g * ap[j])
        pivots.append(col)
        pr += 1
        if pr == r:
            break
    return a, pivots


def field_nullspace(ring: Ring, rows: list[list], r: int, c: int) -> list[list]:
    """Basis of ``{x : A x = 0}`` over a field, as column vectors of length c."""
    a, pivots = field_rref(ring, rows, r, c)
    pivot_set = set(pivots)
    free = [j for j in range(c) if j not in pivot_set]
    basis = []
    for j in free:
        v = [ring.zero] * c
        v[j] = ring.one
        for pi, pc in enumerate(pivots):
            v[pc] = ring.canon(-a[pi][j])
        basis.append(v)
    return basis


def field_solve(ring: Ring, rows: list[list], r: int, c: int, b: list) -> list | None:
    """One solution of ``A x = b`` over a field, or None."""
    aug = [list(row) + [bv] for row, bv in zip(rows, b)]
    a, pivots = field_rref(ring, aug, r, c + 1)
    if c in pivots:
        return None
    x = [ring.zero] * c
    for pi, pc in enumerate(pivots):
        x[pc] = a[pi][c]
    return x
