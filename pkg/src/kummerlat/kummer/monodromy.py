"""Monodromy tests on the Kummer lattice and extension to the Mukai lattice."""

from __future__ import annotations

from dataclasses import dataclass

from .. import intlinalg as la
from ..errors import NotIsometry, NotNegative, NotPrimitive, OutOfRange
from ..lattice import (
    Lattice,
    acts_on_discriminant_as,
    divisibility,
    is_isometry,
    is_orientation_preserving,
    kummer_lattice,
    mukai_lattice,
)
from ..numtheory import content


@dataclass(frozen=True)
class WieneckEmbedding:
    """Primitive embedding of kummer_lattice(n) into mukai_lattice.

    ``matrix`` has one row per basis vector of the Kummer lattice, holding its
    image in Mukai coordinates; ``v`` spans the orthogonal complement.
    """

    n: int
    matrix: tuple
    v: tuple

    @property
    def source(self) -> Lattice:
        return kummer_lattice(self.n)

    @property
    def target(self) -> Lattice:
        return mukai_lattice()

    def image(self, x) -> list[int]:
        return la.vecmat(list(x), [list(r) for r in self.matrix])


def standard_wieneck(n: int) -> WieneckEmbedding:
    if n < 2:
        raise OutOfRange(f"need n >= 2, got {n}")
    rows = [[int(i == j) for j in range(8)] for i in range(6)]
    rows.append([0] * 6 + [n + 1, -1])
    v = (0,) * 6 + (n + 1, 1)
    return WieneckEmbedding(n, tuple(tuple(r) for r in rows), v)


def _det(M) -> int:
    return int(la.det(M))


def is_monodromy(n: int, f) -> bool:
    L = kummer_lattice(n)
    if not is_isometry(L, f):
        raise NotIsometry("not an isometry of the Kummer lattice")
    expected = "PlusId" if _det(f) == 1 else "MinusId"
    return is_orientation_preserving(L, f) and acts_on_discriminant_as(L, f) == expected


def reflection_monodromy_criterion(n: int, e) -> bool:
    """e^2 = -2(n+1) and (n+1) | div(e)."""
    L = kummer_lattice(n)
    e = [int(x) for x in e]
    if content(e) != 1:
        raise NotPrimitive("e must be primitive")
    ee = L.norm(e)
    if ee >= 0:
        raise NotNegative(f"e^2 = {ee} is not negative")
    return ee == -2 * (n + 1) and divisibility(L, e) % (n + 1) == 0


def extend_isometry(emb: WieneckEmbedding, g):
    """Extend g to the Mukai lattice with g~(v) = eps*v; None if A_L-action is not +-Id.

    Returns ``(matrix, det)``.
    """
    L = emb.source
    if not is_isometry(L, g):
        raise NotIsometry("not an isometry of the Kummer lattice")
    action = acts_on_discriminant_as(L, g)
    if action == "Other":
        return None
    eps = 1 if action == "PlusId" else -1
    # J: columns are images of the Kummer basis, then v
    J = la.transpose([list(r) for r in emb.matrix] + [list(emb.v)])
    block = [[0] * 8 for _ in range(8)]
    for i in range(7):
        for j in range(7):
            block[i][j] = g[i][j]
    block[7][7] = eps
    G = la.matmul(la.matmul(J, block), la.rational_inverse(J))
    if not la.is_integral(G):
        return None
    G = la.to_int_matrix(G)
    return G, _det(G)


def _embed_block(block4):
    M = la.identity(8)
    for i in range(4):
        for j in range(4):
            M[4 + i][4 + j] = block4[i][j]
    return M


G2_BLOCK = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))
G3_BLOCK = ((0, 1, 0, 1), (1, 0, 0, -1), (0, 0, 0, 1), (-1, 1, 1, 1))


def special_isometries():
    """(g2, g3): identity on U1+U2, the fixed blocks on U3+U4."""
    return _embed_block(G2_BLOCK), _embed_block(G3_BLOCK)
