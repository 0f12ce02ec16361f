"""Smith normal form and integer lattice utilities.

All routines work on plain ``list[list[int]]`` data; wrapping into
:class:`~starmono.matrices.ExactMatrix` happens at the call sites.  The
decomposition convention is ``P @ A @ Q == D`` with ``P``, ``Q`` unimodular and
``D`` diagonal satisfying ``d1 | d2 | ...`` with nonnegative entries.  The
public ``smith_normal_form`` wrapper in :mod:`starmono.matrices` re-exports
this as ``A == U @ D @ V`` with ``U = P^-1`` and ``V = Q^-1``.
"""

from __future__ import annotations


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def diagonal_invariants(rows: list[list[int]]) -> list[int]:
    """Diagonal of the Smith form, without transform bookkeeping.

    Returns ``min(r, c)`` nonnegative integers forming a divisibility chain
    (zeros trail).  This is the hot path behind group canonicalization and the
    exhaustive minor-gcd acceptance check, so it avoids all object overhead.
    """
    a = [list(row) for row in rows]
    r = len(a)
    c = len(a[0]) if r else 0
    k = min(r, c)
    diag = [0] * k
    for t in range(k):
        # locate a pivot of smallest absolute value in the trailing block
        pr = pc = -1
        best = 0
        for i in range(t, r):
            ai = a[i]
            for j in range(t, c):
                v = ai[j]
                if v:
                    if v < 0:
                        v = -v
                    if best == 0 or v < best:
                        best = v
                        pr, pc = i, j
                        if v == 1:
                            break
            if best == 1:
                break
        if best == 0:
            break
        if pr != t:
            a[t], a[pr] = a[pr], a[t]
        if pc != t:
            for i in range(t, r):
                row = a[i]
                row[t], row[pc] = row[pc], row[t]
        while True:
            dirty = False
            # clear column t below the pivot (Euclid via row operations)
            piv = a[t][t]
            for i in range(t + 1, r):
                ai = a[i]
                while ai[t]:
                    q = ai[t] // piv
                    if q:
                        at = a[t]
                        for j in range(t, c):
                            ai[j] -= q * at[j]
                    if ai[t]:
                        a[t], a[i] = a[i], a[t]
                        ai = a[i]
                        piv = a[t][t]
                        dirty = True
            # clear row t right of the pivot (Euclid via column operations)
            at = a[t]
            piv = at[t]
            for j in range(t + 1, c):
                while at[j]:
                    q = at[j] // piv
                    if q:
                        for i in range(t, r):
                            a[i][j] -= q * a[i][t]
                    if at[j]:
                        for i in range(t, r):
                            row = a[i]
                            row[t], row[j] = row[j], row[t]
                        piv = at[t]
                        dirty = True
            if dirty:
                continue
            # force the pivot to divide every remaining entry
            piv = at[t]
            done = True
            for i in range(t + 1, r):
                ai = a[i]
                for j in range(t + 1, c):
                    if ai[j] % piv:
                        for jj in range(t, c):
                            at[jj] += ai[jj]
                        done = False
                        break
                if not done:
                    break
            if done:
                break
        diag[t] = a[t][t] if a[t][t] >= 0 else -a[t][t]
    return diag


def smith_with_transforms(
    rows: list[list[int]],
    nrows: int | None = None,
    ncols: int | None = None,
) -> tuple[list[list[int]], list[list[int]], list[list[int]], list[list[int]], list[list[int]]]:
    """Full Smith decomposition ``P @ A @ Q == D``.

    Returns ``(D, P, Pinv, Q, Qinv)``, all as fresh ``list[list[int]]``.
    ``P`` and ``Q`` are unimodular; ``D`` has the shape of ``A`` with a
    nonnegative divisibility-chain diagonal.  Explicit ``nrows``/``ncols``
    are needed for matrices with zero rows or columns.
    """
    r = len(rows) if nrows is None else nrows
    c = (len(rows[0]) if rows else 0) if ncols is None else ncols
    a = [list(row) for row in rows]
    P = _identity(r)
    Pinv = _identity(r)
    Q = _identity(c)
    Qinv = _identity(c)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        P[i], P[j] = P[j], P[i]
        for row in Pinv:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row_i -= q * row_j  (on A and P); Pinv gets the inverse column op
        ai, aj = a[i], a[j]
        for t in range(c):
            ai[t] -= q * aj[t]
        pi, pj = P[i], P[j]
        for t in range(r):
            pi[t] -= q * pj[t]
        for row in Pinv:
            row[j] += q * row[i]

    def neg_row(i):
        a[i] = [-v for v in a[i]]
        P[i] = [-v for v in P[i]]
        for row in Pinv:
            row[i] = -row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]
        Qinv[i], Qinv[j] = Qinv[j], Qinv[i]

    def add_col(j, i, q):
        # col_j -= q * col_i  (on A and Q); Qinv gets the inverse row op
        for row in a:
            row[j] -= q * row[i]
        for row in Q:
            row[j] -= q * row[i]
        qi, qj = Qinv[i], Qinv[j]
        for t in range(c):
            qi[t] += q * qj[t]

    k = min(r, c)
    for t in range(k):
        pr = pc = -1
        best = 0
        for i in range(t, r):
            for j in range(t, c):
                v = a[i][j]
                if v:
                    if v < 0:
                        v = -v
                    if best == 0 or v < best:
                        best, pr, pc = v, i, j
        if best == 0:
            break
        if pr != t:
            swap_rows(t, pr)
        if pc != t:
            swap_cols(t, pc)
        while True:
            dirty = False
            for i in range(t + 1, r):
                while a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        add_row(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, c):
                while a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        add_col(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            piv = a[t][t]
            done = True
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % piv:
                        add_row(t, i, -1)
                        done = False
                        break
                if not done:
                    break
            if done:
                break
        if a[t][t] < 0:
            neg_row(t)
    return a, P, Pinv, Q, Qinv


class IntSolver:
    """Reusable solver for ``A @ x == b`` over the integers.

    Precomputes one Smith decomposition of ``A`` and then answers any number
    of right-hand sides.  Also exposes the kernel lattice of ``A``.
    """

    def __init__(self, rows: list[list[int]], nrows: int | None = None, ncols: int | None = None):
        self.nrows = len(rows) if nrows is None else nrows
        self.ncols = (len(rows[0]) if rows else 0) if ncols is None else ncols
        D, P, _pinv, Q, _qinv = smith_with_transforms(rows, self.nrows, self.ncols)
        self._P = P
        self._Q = Q
        k = min(self.nrows, self.ncols)
        self._diag = [D[i][i] for i in range(k)]

    def solve(self, b: list[int]) -> list[int] | None:
        """One integer solution of ``A @ x == b``, or None if there is none."""
        P, diag = self._P, self._diag
        n, c = self.nrows, self.ncols
        w = [0] * c
        for i in range(n):
            pi = P[i]
            ci = sum(pi[j] * b[j] for j in range(n))
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if ci:
                    return None
            else:
                if ci % d:
                    return None
                w[i] = ci // d
        Q = self._Q
        return [sum(Q[i][j] * w[j] for j in range(c) if w[j]) for i in range(c)]

    def in_image(self, b: list[int]) -> bool:
        return self.solve(b) is not None

    def kernel_basis(self) -> list[list[int]]:
        """Columns of Q whose Smith diagonal entry vanishes: a lattice basis of ker A."""
        Q, diag = self._Q, self._diag
        cols = []
        for j in range(self.ncols):
            d = diag[j] if j < len(diag) else 0
            if d == 0:
                cols.append([Q[i][j] for i in range(self.ncols)])
        return cols


def kernel_basis(rows: list[list[int]], nrows: int, ncols: int) -> list[list[int]]:
    """Basis of the integer kernel lattice ``{x : A x = 0}`` as column vectors."""
    return IntSolver(rows, nrows, ncols).kernel_basis()
