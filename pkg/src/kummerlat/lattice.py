"""Integral lattices given by Gram matrices.

Vectors are integer coordinate lists in the lattice's own basis; dual vectors
are rational coordinate lists in the same basis (``x`` lies in the dual iff
``G x`` is integral).  Isometries are square integer matrices acting on column
coordinates, ``x -> M x``, so ``Mᵀ G M == G``.  Sublattice bases are stored as
rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import intlinalg as la
from .errors import (
    Degenerate,
    IsotropicVector,
    NotDefinite,
    NotEven,
    NotInDual,
    NotIsometry,
    NotSymmetric,
    OutOfRange,
    RankTooLarge,
    Singular,
    VectorNotInLattice,
    WrongRank,
    ZeroVector,
)
from .numtheory import content, is_square
from .qform import Signature, diagonalize, signature

MAX_ENUM_RANK = 4


@dataclass(frozen=True)
class Lattice:
    gram: tuple

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise NotSymmetric("Gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise NotSymmetric("Gram matrix must be symmetric")
        if n and la.det(gram) == 0:
            raise Degenerate("Gram matrix has zero determinant")
        object.__setattr__(self, "gram", gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return int(la.det(self.gram))

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def signature(self) -> Signature:
        if self.rank == 0:
            return Signature(0, 0)
        return signature(diagonalize(self.gram))

    def is_definite(self) -> bool:
        sig = self.signature()
        return sig.pos == 0 or sig.neg == 0

    def product(self, x, y):
        return la.bilinear(x, self.gram, y)

    def norm(self, x):
        return la.bilinear(x, self.gram, x)

    def to_json(self) -> dict:
        return {"gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json(cls, obj) -> "Lattice":
        return cls(obj["gram"] if isinstance(obj, dict) else obj)


def make(gram) -> Lattice:
    return Lattice(gram)


# -- constructors -------------------------------------------------------------

def U() -> Lattice:
    return Lattice(((0, 1), (1, 0)))


def A1() -> Lattice:
    return Lattice(((2,),))


def A2() -> Lattice:
    return Lattice(((2, -1), (-1, 2)))


def span(*coeffs) -> Lattice:
    """The diagonal lattice <a1, ..., ak>."""
    return Lattice(tuple(tuple(a if i == j else 0 for j in range(len(coeffs))) for i, a in enumerate(coeffs)))


def rescale(L: Lattice, m: int) -> Lattice:
    return Lattice(tuple(tuple(m * x for x in row) for row in L.gram))


def direct_sum(*lattices: Lattice) -> Lattice:
    n = sum(L.rank for L in lattices)
    G = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                G[off + i][off + j] = L.gram[i][j]
        off += L.rank
    return Lattice(G)


def kummer_lattice(n: int) -> Lattice:
    """U^3 + <-2-2n>, basis (e1, f1, e2, f2, e3, f3, delta)."""
    if n < 2:
        raise OutOfRange(f"kummer_lattice needs n >= 2, got {n}")
    return direct_sum(U(), U(), U(), span(-2 - 2 * n))


def mukai_lattice() -> Lattice:
    """U^4, basis (e1, f1, e2, f2, e3, f3, e4, f4)."""
    return direct_sum(U(), U(), U(), U())


# -- sublattices --------------------------------------------------------------

@dataclass(frozen=True)
class Sublattice:
    ambient: Lattice
    basis: tuple

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", basis)
        if basis and la.rank(basis) != len(basis):
            raise Degenerate("sublattice basis rows are linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def gram(self):
        B = [list(r) for r in self.basis]
        return la.matmul(la.matmul(B, [list(r) for r in self.ambient.gram]), la.transpose(B))

    def as_lattice(self) -> Lattice:
        return Lattice(self.gram)

    def coordinates(self, x):
        """Rational coordinates of an ambient vector in this basis."""
        return la.solve_left([list(r) for r in self.basis], list(x))

    def contains(self, x) -> bool:
        try:
            c = self.coordinates(x)
        except Singular:
            return False
        return all(Fraction(a).denominator == 1 for a in c)


def _check_vector(L: Lattice, v):
    v = [int(x) for x in v]
    if len(v) != L.rank:
        raise VectorNotInLattice(f"vector has length {len(v)}, lattice has rank {L.rank}")
    if not any(v):
        raise ZeroVector("zero vector")
    return v


def orthogonal_complement(L: Lattice, S) -> Sublattice:
    basis = S.basis if isinstance(S, Sublattice) else S
    basis = [list(r) for r in basis]
    if not basis:
        return Sublattice(L, la.identity(L.rank))
    M = la.matmul([list(r) for r in L.gram], la.transpose(basis))
    return Sublattice(L, la.integer_kernel(M))


def saturation(L: Lattice, S) -> Sublattice:
    basis = S.basis if isinstance(S, Sublattice) else S
    return Sublattice(L, la.saturate_rowspace([list(r) for r in basis], L.rank))


def is_primitive_sublattice(L: Lattice, S) -> bool:
    """Whether L/S is torsion free, i.e. S equals its saturation."""
    basis = S.basis if isinstance(S, Sublattice) else S
    sub = Sublattice(L, basis)
    return all(sub.contains(r) for r in saturation(L, basis).basis)


# -- vectors --------------------------------------------------------------------

def divisibility(L: Lattice, v) -> int:
    v = _check_vector(L, v)
    return content(la.vecmat(v, L.gram))


def is_primitive(L: Lattice, v) -> bool:
    v = _check_vector(L, v)
    return content(v) == 1


def primitive_part(L: Lattice, v) -> list[int]:
    v = _check_vector(L, v)
    g = content(v)
    return [x // g for x in v]


def reflection_matrix(L: Lattice, v):
    """Matrix of R_v(x) = x - 2 (x, v)/v^2 v acting on column coordinates."""
    v = _check_vector(L, v)
    vv = L.norm(v)
    if vv == 0:
        raise IsotropicVector("cannot reflect in an isotropic vector")
    Gv = la.vecmat(v, L.gram)  # row vector (v, e_j)
    n = L.rank
    return [[Fraction(int(i == j)) - Fraction(2 * v[i] * Gv[j], vv) for j in range(n)] for i in range(n)]


def is_root(L: Lattice, v) -> bool:
    v = _check_vector(L, v)
    vv = L.norm(v)
    if vv == 0:
        raise IsotropicVector("isotropic vectors are not roots")
    return (2 * divisibility(L, v)) % vv == 0


# -- isometries -----------------------------------------------------------------

def is_isometry(L: Lattice, M) -> bool:
    n = L.rank
    if len(M) != n or any(len(row) != n for row in M):
        return False
    if not la.is_integral(M):
        return False
    G = [list(r) for r in L.gram]
    return la.matmul(la.matmul(la.transpose(M), G), M) == G


def _require_isometry(L: Lattice, M):
    if not is_isometry(L, M):
        raise NotIsometry("matrix is not an integral isometry of the lattice")
    return la.to_int_matrix(M)


def positive_basis(L: Lattice):
    """Columns of the diagonalizing transform with positive norm (rational vectors)."""
    F = diagonalize(L.gram)
    T = F.transform
    return [[T[i][k] for i in range(L.rank)] for k, a in enumerate(F.coeffs) if a > 0]


def is_orientation_preserving(L: Lattice, M) -> bool:
    """Sign of det of (projection to W) ∘ M on a maximal positive definite W."""
    M = _require_isometry(L, M)
    W = positive_basis(L)
    if not W:
        return True
    G = L.gram
    norms = [la.bilinear(w, G, w) for w in W]
    images = [la.matvec(M, w) for w in W]
    A = [[la.bilinear(images[j], G, W[i]) / norms[i] for j in range(len(W))] for i in range(len(W))]
    d = la.det(A)
    if d == 0:
        raise NotIsometry("projection is singular; not an isometry of the real space")
    return d > 0


def acts_on_discriminant_as(L: Lattice, M) -> str:
    """'PlusId', 'MinusId' or 'Other' for the induced action on L^v / L."""
    M = _require_isometry(L, M)
    Ginv = la.rational_inverse(L.gram)
    n = L.rank
    I = la.identity(n)
    minus = [[M[i][j] - I[i][j] for j in range(n)] for i in range(n)]
    plus = [[M[i][j] + I[i][j] for j in range(n)] for i in range(n)]
    if la.is_integral(la.matmul(minus, Ginv)):
        return "PlusId"
    if la.is_integral(la.matmul(plus, Ginv)):
        return "MinusId"
    return "Other"


def fixed_and_coinvariant(L: Lattice, M):
    """(L^M, L_M): the invariant sublattice and its orthogonal complement."""
    M = _require_isometry(L, M)
    n = L.rank
    diff = [[M[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    inv = Sublattice(L, la.integer_kernel(la.transpose(diff)))
    return inv, orthogonal_complement(L, inv)


# -- discriminant group ---------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: tuple
    generators: tuple

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    S, _, V = la.snf([list(r) for r in L.gram])
    factors, gens = [], []
    for i in range(L.rank):
        d = abs(S[i][i])
        if d > 1:
            factors.append(d)
            gens.append(tuple(Fraction(V[k][i], d) for k in range(L.rank)))
    return DiscriminantGroup(tuple(factors), tuple(gens))


def discriminant_form_value(L: Lattice, x) -> Fraction:
    """q_L(x) = x^2 mod 2Z, returned as a Fraction in [0, 2)."""
    if not L.is_even:
        raise NotEven("discriminant quadratic form needs an even lattice")
    x = [Fraction(a) for a in x]
    if not all(a.denominator == 1 for a in la.matvec(L.gram, x)):
        raise NotInDual("vector is not in the dual lattice")
    return la.bilinear(x, L.gram, x) % 2


# -- definite enumeration ---------------------------------------------------------

def _ldl(G):
    """Rational LDLᵀ-style coefficients: Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = len(G)
    Q = [[Fraction(x) for x in row] for row in G]
    for i in range(n):
        for j in range(i + 1, n):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                Q[k][l] -= Q[k][i] * Q[i][l]
    return Q


def _definite_sign(L: Lattice) -> int:
    sig = L.signature()
    if sig.neg == 0:
        return 1
    if sig.pos == 0:
        return -1
    raise NotDefinite("lattice is indefinite")


def vectors_of_norm(L: Lattice, t: int, max_rank: int = MAX_ENUM_RANK):
    """All v with v^2 == t in a definite lattice (Fincke-Pohst style, exact)."""
    if L.rank > max_rank:
        raise RankTooLarge(f"rank {L.rank} exceeds enumeration limit {max_rank}")
    if L.rank == 0:
        return []
    sign = _definite_sign(L)
    t = sign * t
    if t <= 0:
        return []
    G = [[sign * x for x in row] for row in L.gram]
    return [v for v in _short_vectors(G, t) if la.bilinear(v, G, v) == t]


def _short_vectors(G, bound):
    """Nonzero integer vectors with Q(v) <= bound for a positive definite Gram."""
    n = len(G)
    Q = _ldl(G)
    out = []
    x = [0] * n

    def rec(i, remaining):
        c = sum(Q[i][j] * x[j] for j in range(i + 1, n))
        r = remaining / Q[i][i]
        s = isqrt(int(r)) + 1
        centre = -c
        lo = int(centre) - s - 1
        hi = int(centre) + s + 1
        for xi in range(lo, hi + 1):
            y = xi + c
            if y * y > r:
                continue
            x[i] = xi
            rest = remaining - Q[i][i] * y * y
            if i == 0:
                if any(x):
                    out.append(list(x))
            else:
                rec(i - 1, rest)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return out


def _lagrange_reduce(G):
    """Reduced binary Gram (a, b, c) with |2b| <= a <= c, positive definite."""
    a, b, c = G[0][0], G[0][1], G[1][1]
    while True:
        # size-reduce b against a
        if abs(2 * b) > a:
            q = (2 * b + a) // (2 * a)  # nearest integer to b/a
            c = c - 2 * q * b + q * q * a
            b = b - q * a
        if a > c:
            a, c = c, a
            continue
        if abs(2 * b) <= a:
            return a, abs(b), c


def is_isometric_definite(L1: Lattice, L2: Lattice) -> bool:
    for L in (L1, L2):
        if L.rank > 3:
            raise RankTooLarge("definite isometry test supports rank <= 3")
    s1, s2 = _definite_sign(L1), _definite_sign(L2)
    if L1.rank != L2.rank or s1 != s2 or L1.det != L2.det:
        return False
    G1 = [[s1 * x for x in row] for row in L1.gram]
    G2 = [[s2 * x for x in row] for row in L2.gram]
    n = L1.rank
    if n == 1:
        return G1 == G2
    if n == 2:
        return _lagrange_reduce(G1) == _lagrange_reduce(G2)
    return find_isometry(G1, G2) is not None


def find_isometry(G1, G2):
    """Rows X (images of the basis of G1 in coordinates of G2) with X G2 Xᵀ = G1.

    Both Grams positive definite of equal determinant, so any such X is
    automatically unimodular.  Returns None when none exists.
    """
    n = len(G1)
    # candidates for each basis image: vectors of G2 with matching norm
    top = max(G1[i][i] for i in range(n))
    pool = _short_vectors(G2, top)
    by_norm = {}
    for v in pool:
        by_norm.setdefault(la.bilinear(v, G2, v), []).append(v)
    chosen = []

    def rec(i):
        if i == n:
            return True
        for cand in by_norm.get(G1[i][i], []):
            if all(la.bilinear(cand, G2, chosen[j]) == G1[i][j] for j in range(i)):
                chosen.append(cand)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    return [list(r) for r in chosen] if rec(0) else None


# -- rank 2 isotropy ----------------------------------------------------------------

def isotropic_profile_rank2(L: Lattice, v):
    """Primitive isotropic classes (up to sign) of a rank-2 lattice with their pairing (a, v) > 0."""
    if L.rank != 2:
        raise WrongRank("isotropic profile needs a rank-2 lattice")
    v = _check_vector(L, v)
    (A, B), (_, C) = L.gram
    disc = B * B - A * C
    if not is_square(disc):
        return []
    s = isqrt(disc)
    if A != 0:
        dirs = [(-B + s, A), (-B - s, A)]
    else:
        dirs = [(1, 0), (C, -2 * B)]
    out = []
    seen = set()
    for x, y in dirs:
        g = gcd(x, y)
        a = [x // g, y // g]
        pairing = L.product(a, v)
        if pairing < 0:
            a = [-a[0], -a[1]]
            pairing = -pairing
        key = tuple(a)
        if key in seen:
            continue
        seen.add(key)
        out.append((a, pairing))
    return out


# -- finite order -------------------------------------------------------------------

def _poly_divmod(num, den):
    """Exact division of integer polynomials (low-to-high coefficients), den monic."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, b in enumerate(den):
                num[i + j] -= c * b
    rem = num[: len(den) - 1]
    return q, rem


def cyclotomic_polynomial(m: int) -> list[int]:
    """Phi_m as low-to-high integer coefficients."""
    poly = [-1] + [0] * (m - 1) + [1]
    for k in range(1, m):
        if m % k == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_polynomial(k))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _totient(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def cyclotomic_factorization(poly) -> list[int] | None:
    """Orders m with prod Phi_m == poly (monic, low-to-high), or None if not a product of cyclotomics."""
    poly = list(poly)
    orders = []
    deg = len(poly) - 1
    # phi(m) <= deg forces m <= 2 deg^2 + 2 (crude but safe)
    candidates = [m for m in range(1, 2 * deg * deg + 3) if _totient(m) <= deg]
    for m in candidates:
        phi = cyclotomic_polynomial(m)
        while len(poly) >= len(phi):
            q, rem = _poly_divmod(poly, phi)
            if any(rem):
                break
            poly = q
            orders.append(m)
    return orders if poly == [1] else None


def isometry_order(M, cap: int = 10_000) -> int | None:
    """Order of an integer matrix if it is finite (cyclotomic char poly and M^m = I), else None."""
    orders = cyclotomic_factorization(la.characteristic_polynomial(M))
    if orders is None:
        return None
    m = 1
    for k in orders:
        m = m * k // gcd(m, k)
    if m > cap:
        return None
    n = len(M)
    I = la.identity(n)
    P = I
    for k in range(1, m + 1):
        P = la.matmul(P, M)
        if P == I:
            return k
    return None
