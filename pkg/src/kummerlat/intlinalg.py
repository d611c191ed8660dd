"""Exact integer matrix algorithms.

Matrices are plain lists of rows holding Python ints (or Fractions for the
rational helpers).  Functions never mutate their arguments.

Row conventions: :func:`hnf` returns ``(H, U)`` with ``U @ M == H``;
:func:`snf` returns ``(S, U, V)`` with ``U @ M @ V == S``; the kernel is the
left kernel ``{x : x @ M == 0}``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import Overflow, Singular

WORKING_BOUND = 2**62


# -- small helpers ----------------------------------------------------------

def shape(M) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    return rows, cols


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M):
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def vecmat(x, A):
    if not A:
        return []
    return [sum(xi * A[i][j] for i, xi in enumerate(x)) for j in range(len(A[0]))]


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def bilinear(x, G, y):
    return dot(vecmat(x, G), y)


def is_integral(M) -> bool:
    return all(Fraction(x).denominator == 1 for row in M for x in row)


def to_int_matrix(M):
    return [[int(x) for x in row] for row in M]


def _check_bound(*mats):
    for M in mats:
        for row in M:
            for x in row:
                if abs(x) > WORKING_BOUND:
                    raise Overflow("matrix entry exceeds 2^62 working bound")


def det(M) -> int | Fraction:
    """Determinant by fraction-free Bareiss elimination (exact for Fractions too)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                if isinstance(num, int) and isinstance(prev, int):
                    A[i][j] = num // prev
                else:
                    A[i][j] = Fraction(num) / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# -- Hermite normal form ------------------------------------------------------

def hnf(M):
    """Row Hermite normal form: returns ``(H, U)`` with U unimodular and U·M = H.

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    """
    rows, cols = shape(M)
    H = [list(map(int, row)) for row in M]
    U = identity(rows)
    pivot_row = 0
    for c in range(cols):
        if pivot_row >= rows:
            break
        while True:
            # smallest nonzero |entry| at or below pivot_row in this column
            best = None
            for i in range(pivot_row, rows):
                if H[i][c] != 0 and (best is None or abs(H[i][c]) < abs(H[best][c])):
                    best = i
            if best is None:
                break
            if best != pivot_row:
                H[pivot_row], H[best] = H[best], H[pivot_row]
                U[pivot_row], U[best] = U[best], U[pivot_row]
            p = H[pivot_row][c]
            done = True
            for i in range(pivot_row + 1, rows):
                q = H[i][c] // p
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]
                if H[i][c] != 0:
                    done = False
            _check_bound(H, U)
            if done:
                break
        if pivot_row < rows and H[pivot_row][c] != 0:
            if H[pivot_row][c] < 0:
                H[pivot_row] = [-a for a in H[pivot_row]]
                U[pivot_row] = [-a for a in U[pivot_row]]
            p = H[pivot_row][c]
            for i in range(pivot_row):
                q = H[i][c] // p
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]
            _check_bound(H, U)
            pivot_row += 1
    return H, U


# -- Smith normal form --------------------------------------------------------

def snf(M):
    """Smith normal form: returns ``(S, U, V)`` with U·M·V = S.

    S is diagonal with nonnegative entries d1 | d2 | ...; U, V unimodular.
    """
    rows, cols = shape(M)
    S = [list(map(int, row)) for row in M]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (S, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for R in (S, V):
            for row in R:
                row[dst] -= q * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if S[i][j] != 0 and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return S, U, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = S[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = S[i][t] // p
                if q:
                    add_row(i, t, q)
                if S[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = S[t][j] // p
                if q:
                    add_col(j, t, q)
                if S[t][j]:
                    clean = False
            _check_bound(S, U, V)
            if not clean:
                continue
            # divisibility chain: fold an offending row into row t
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return S, U, V


def invariant_factors(M) -> list[int]:
    S, _, _ = snf(M)
    return [S[i][i] for i in range(min(shape(M)))]


# -- kernels, saturation, inverses ------------------------------------------

def integer_kernel(M):
    """Basis (rows, in HNF) of the saturated left kernel {x in Z^rows : x·M = 0}."""
    rows, cols = shape(M)
    if rows == 0:
        return []
    if cols == 0:
        return identity(rows)
    H, U = hnf(M)
    rank = sum(1 for row in H if any(row))
    K = U[rank:]
    if not K:
        return []
    Hk, _ = hnf(K)
    return [row for row in Hk if any(row)]


def saturate_rowspace(M, ambient_rank: int):
    """Basis of (Q-row-space of M) ∩ Z^ambient_rank, via the kernel of the kernel."""
    M = [list(row) for row in M if any(row)]
    if not M:
        return []
    # K: integer basis of the orthogonal complement (standard dot product)
    K = integer_kernel(transpose(M))
    if not K:
        return identity(ambient_rank)
    return integer_kernel(transpose(K))


def rational_inverse(M):
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise Singular("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                q = A[i][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]


def rank(M) -> int:
    if not M:
        return 0
    H, _ = hnf([clear_denominators(row) for row in M])
    return sum(1 for row in H if any(row))


def _lcm_den(row) -> int:
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    return den


def clear_denominators(row) -> list[int]:
    den = _lcm_den(row)
    return [int(Fraction(x) * den) for x in row]


def solve_left(B, y):
    """Rational coefficients c with c·B = y, where B has Q-independent rows.

    Raises :class:`Singular` when ``y`` is not in the row space of ``B``.
    """
    k = len(B)
    if k == 0:
        if any(y):
            raise Singular("vector not in the (empty) row space")
        return []
    n = len(B[0])
    # augmented system Bᵀ cᵀ = yᵀ: n equations in k unknowns
    A = [[Fraction(B[i][j]) for i in range(k)] + [Fraction(y[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] != 0:
                q = A[i][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][k] != 0 for i in range(r, n)):
        raise Singular("vector not in the row space")
    c = [Fraction(0)] * k
    for i, col in enumerate(piv_cols):
        c[col] = A[i][k]
    return c


def is_unimodular(M) -> bool:
    return len(M) == len(M[0]) and abs(det(M)) == 1 if M else True


def characteristic_polynomial(M) -> list[int]:
    """Coefficients [c_0, ..., c_n] (c_n = 1) of det(tI - M), by Faddeev-LeVerrier."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = A·M_{k-1} + c_{n-k+1} I
        Mk = matmul(A, Mk)
        for i in range(n):
            Mk[i][i] += coeffs[n - k + 1]
        AM = matmul(A, Mk)
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return [int(c) for c in coeffs]
