"""Exact Smith normal form over the integers.

Two entry points:

* :func:`elementary_divisors` works on sparse row dictionaries and only
  reports the invariant factors.  It first eliminates on ±1 pivots (which is
  almost everything in a boundary matrix) and hands the small leftover block
  to the dense algorithm.
* :func:`smith_decomposition` is dense and tracks unimodular transforms and
  their inverses; it is used where cycle representatives are needed.

Python integers are arbitrary precision, so there is no overflow to guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

SparseRows = dict[int, dict[int, int]]


def _dense_divisors(A: list[list[int]]) -> list[int]:
    """Invariant factors of a dense matrix (the matrix is consumed)."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    divisors = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            Ai = A[i]
            for j in range(t, cols):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                v = A[i][t]
                if v:
                    q = v // p
                    Ai, At = A[i], A[t]
                    for j in range(t, cols):
                        if At[j]:
                            Ai[j] -= q * At[j]
                    if Ai[t]:
                        done = False
            At = A[t]
            for j in range(t + 1, cols):
                v = At[j]
                if v:
                    q = v // p
                    for row in A:
                        if row[t]:
                            row[j] -= q * row[t]
                    if At[j]:
                        done = False
            if done:
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j in range(t, cols):
                    A[t][j] += A[bad][j]
                continue
            # move the smallest nonzero entry of row/column t onto the pivot
            best = (abs(A[t][t]), t, t)
            for i in range(t + 1, rows):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, cols):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        divisors.append(abs(A[t][t]))
        t += 1
    return sorted(divisors)


def elementary_divisors(rows: SparseRows) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ... | d_r`` of a sparse matrix.

    ``rows`` maps a row index to ``{column: value}``; zero entries may be
    omitted.  The input is not modified.
    """
    R = {r: {c: v for c, v in entries.items() if v} for r, entries in rows.items()}
    R = {r: e for r, e in R.items() if e}
    cols: dict[int, set[int]] = {}
    for r, entries in R.items():
        for c in entries:
            cols.setdefault(c, set()).add(r)
    ones = 0
    progress = True
    while progress and R:
        progress = False
        for r in sorted(R, key=lambda r: len(R[r])):
            entries = R.get(r)
            if not entries:
                continue
            pivot = None
            for c, v in entries.items():
                if v == 1 or v == -1:
                    if pivot is None or len(cols[c]) < len(cols[pivot]):
                        pivot = c
            if pivot is None:
                continue
            progress = True
            ones += 1
            pv = entries[pivot]
            for r2 in list(cols[pivot]):
                if r2 == r:
                    continue
                row2 = R[r2]
                f = row2[pivot] * pv
                for c, v in entries.items():
                    nv = row2.get(c, 0) - f * v
                    if nv:
                        if c not in row2:
                            cols[c].add(r2)
                        row2[c] = nv
                    else:
                        if c in row2:
                            del row2[c]
                            cols[c].discard(r2)
                if not row2:
                    del R[r2]
            for c in entries:
                cols[c].discard(r)
            del cols[pivot]
            del R[r]
    if not R:
        return [1] * ones
    live_cols = sorted({c for e in R.values() for c in e})
    cindex = {c: k for k, c in enumerate(live_cols)}
    dense = []
    for r in sorted(R):
        row = [0] * len(live_cols)
        for c, v in R[r].items():
            row[cindex[c]] = v
        dense.append(row)
    return [1] * ones + _dense_divisors(dense)


def smith_normal_form(M) -> tuple[list[int], int]:
    """Elementary divisors and rank of a dense (list of lists) or sparse matrix."""
    if isinstance(M, dict):
        d = elementary_divisors(M)
    else:
        d = elementary_divisors({i: {j: v for j, v in enumerate(row) if v} for i, row in enumerate(M)})
    return d, len(d)


@dataclass
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``Uinv`` and ``Vinv`` are the exact integer inverses.
    """

    U: list[list[int]]
    Uinv: list[list[int]]
    V: list[list[int]]
    Vinv: list[list[int]]
    diagonal: list[int]

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_decomposition(A: list[list[int]], rows: int | None = None, cols: int | None = None) -> SmithDecomposition:
    """Dense Smith form with transforms.  Divisors come out in divisibility order."""
    D = [list(r) for r in A]
    n = len(D) if rows is None else rows
    k = (len(D[0]) if D else 0) if cols is None else cols
    U, Uinv, V, Vinv = _eye(n), _eye(n), _eye(k), _eye(k)

    # Elementary operations, each mirrored on the transforms.
    def row_add(i, j, q):  # row_i += q * row_j
        if not q:
            return
        Di, Dj, Ui, Uj = D[i], D[j], U[i], U[j]
        for c in range(k):
            if Dj[c]:
                Di[c] += q * Dj[c]
        for c in range(n):
            if Uj[c]:
                Ui[c] += q * Uj[c]
        for row in Uinv:
            if row[i]:
                row[j] -= q * row[i]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    def col_add(i, j, q):  # col_i += q * col_j
        if not q:
            return
        for row in D:
            if row[j]:
                row[i] += q * row[j]
        for row in V:
            if row[j]:
                row[i] += q * row[j]
        Vj, Vi = Vinv[j], Vinv[i]
        for c in range(k):
            if Vi[c]:
                Vj[c] -= q * Vi[c]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    diagonal = []
    t = 0
    while t < min(n, k):
        best = None
        for i in range(t, n):
            for j in range(t, k):
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, n):
                if D[i][t]:
                    row_add(i, t, -(D[i][t] // p))
                    dirty = dirty or bool(D[i][t])
            for j in range(t + 1, k):
                if D[t][j]:
                    col_add(j, t, -(D[t][j] // p))
                    dirty = dirty or bool(D[t][j])
            if dirty:
                best = (abs(D[t][t]), t, t)
                for i in range(t + 1, n):
                    if D[i][t] and abs(D[i][t]) < best[0]:
                        best = (abs(D[i][t]), i, t)
                for j in range(t + 1, k):
                    if D[t][j] and abs(D[t][j]) < best[0]:
                        best = (abs(D[t][j]), t, j)
                _, i, j = best
                if i != t:
                    row_swap(t, i)
                if j != t:
                    col_swap(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, k) if D[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if D[t][t] < 0:
            row_neg(t)
        diagonal.append(D[t][t])
        t += 1
    return SmithDecomposition(U, Uinv, V, Vinv, diagonal)


def matvec(M: list[list[int]], x: list[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x) if a and b) for row in M]


def kernel_basis(A: list[list[int]], cols: int) -> list[list[int]]:
    """Basis of the integer kernel ``{x : A x = 0}`` (a saturated lattice)."""
    if not A:
        return _eye(cols)
    sd = smith_decomposition(A, len(A), cols)
    r = sd.rank
    return [[sd.V[i][j] for i in range(cols)] for j in range(r, cols)]


def primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else list(v)


def determinant(M: list[list[int]]) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]
