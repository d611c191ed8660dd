"""Nondegenerate rational quadratic forms and their isotropy.

Local isotropy at each place follows the classical rank casework on the
discriminant and Hasse invariant; global isotropy is decided by checking the
finitely many places where something can go wrong (Hasse-Minkowski).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from . import numtheory as nt
from .errors import Degenerate, NotSymmetric, OutOfRange, ZeroInput
from .intlinalg import identity


class Signature(NamedTuple):
    pos: int
    neg: int

    @property
    def rank(self) -> int:
        return self.pos + self.neg


@dataclass(frozen=True)
class DiagonalForm:
    """The form a1*x1^2 + ... + ak*xk^2 with nonzero rational coefficients.

    ``transform`` optionally records a change of basis T (columns are the new
    basis vectors) with Tᵀ·G·T = diag(coeffs) for the Gram matrix G this form
    was obtained from.
    """

    coeffs: tuple
    transform: tuple | None = None

    def __post_init__(self):
        coeffs = tuple(Fraction(a) for a in self.coeffs)
        if not coeffs:
            raise ZeroInput("a diagonal form needs at least one coefficient")
        if any(a == 0 for a in coeffs):
            raise Degenerate("diagonal coefficients must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def discriminant(self) -> Fraction:
        d = Fraction(1)
        for a in self.coeffs:
            d *= a
        return d

    def __add__(self, other: "DiagonalForm") -> "DiagonalForm":
        return DiagonalForm(self.coeffs + other.coeffs)

    def __str__(self):
        return "<" + ", ".join(str(a) for a in self.coeffs) + ">"


def diagonalize(G: Sequence[Sequence]) -> DiagonalForm:
    """Rational Gram-Schmidt on a symmetric nondegenerate matrix.

    Pivots are taken in index order; a zero diagonal pivot is replaced by the
    first later basis vector with nonzero norm, or else by e_i + e_j for the
    first j with G[i][j] != 0.
    """
    n = len(G)
    A = [[Fraction(x) for x in row] for row in G]
    if any(len(row) != n for row in A):
        raise NotSymmetric("Gram matrix must be square")
    if any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise NotSymmetric("Gram matrix must be symmetric")
    # T columns hold the current basis; we track Tᵀ (rows) for convenience
    Tt = [[Fraction(x) for x in row] for row in identity(n)]
    coeffs = []
    for i in range(n):
        if A[i][i] == 0:
            j = next((j for j in range(i + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[i], A[j] = A[j], A[i]
                for row in A:
                    row[i], row[j] = row[j], row[i]
                Tt[i], Tt[j] = Tt[j], Tt[i]
            else:
                j = next((j for j in range(i + 1, n) if A[i][j] != 0), None)
                if j is None:
                    raise Degenerate("Gram matrix is degenerate")
                # replace basis vector i by e_i + e_j
                A[i] = [a + b for a, b in zip(A[i], A[j])]
                for row in A:
                    row[i] += row[j]
                Tt[i] = [a + b for a, b in zip(Tt[i], Tt[j])]
        p = A[i][i]
        for j in range(i + 1, n):
            q = A[j][i] / p
            if q:
                A[j] = [a - q * b for a, b in zip(A[j], A[i])]
                for row in A:
                    row[j] -= q * row[i]
                Tt[j] = [a - q * b for a, b in zip(Tt[j], Tt[i])]
        coeffs.append(p)
    T = tuple(tuple(Tt[j][i] for j in range(n)) for i in range(n))
    return DiagonalForm(tuple(coeffs), T)


def signature(F: DiagonalForm) -> Signature:
    pos = sum(1 for a in F.coeffs if a > 0)
    return Signature(pos, F.rank - pos)


def hasse_invariant(F: DiagonalForm, v) -> int:
    eps = 1
    for a, b in combinations(F.coeffs, 2):
        eps *= nt.hilbert_symbol(a, b, v)
    return eps


def is_isotropic_local(F: DiagonalForm, v) -> bool:
    v = nt.as_place(v)
    n = F.rank
    if n == 1:
        return False
    if v.is_infinite:
        sig = signature(F)
        return sig.pos > 0 and sig.neg > 0
    d = F.discriminant()
    if n == 2:
        return nt.is_local_square(-d, v)
    eps = hasse_invariant(F, v)
    if n == 3:
        return nt.hilbert_symbol(-1, -d, v) == eps
    if n == 4:
        if not nt.is_local_square(d, v):
            return True
        return eps == nt.hilbert_symbol(-1, -1, v)
    return True


def relevant_places(F: DiagonalForm) -> list:
    return [nt.INFINITY] + [nt.Place(p) for p in nt.relevant_primes(*F.coeffs)]


def is_isotropic_rational(F: DiagonalForm) -> bool:
    return all(is_isotropic_local(F, v) for v in relevant_places(F))


VARIANTS = ("I", "II")


def kummer_form(n: int, d: int, variant: str = "I") -> DiagonalForm:
    """(n+1)x^2 + d y^2 - z^2 - t^2 (variant I) or (n+1)x^2 + d y^2 - 3z^2 - t^2 (II)."""
    if variant not in VARIANTS:
        raise OutOfRange(f"unknown variant {variant!r}")
    if n < 2 or d < 1:
        raise OutOfRange(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    third = -1 if variant == "I" else -3
    return DiagonalForm((n + 1, d, third, -1))


def kummer_form_isotropic(n: int, d: int, variant: str = "I") -> bool:
    return is_isotropic_rational(kummer_form(n, d, variant))
