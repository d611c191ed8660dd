"""Stably prime exceptional classes and symplectic effectiveness on the Mukai lattice."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import intlinalg as la
from ..errors import (
    InfiniteOrder,
    NotIsometry,
    NotOrthogonal,
    NotPrimitive,
    NotSO,
    SquareTooSmall,
    WrongSigns,
)
from ..lattice import (
    Lattice,
    Sublattice,
    discriminant_group,
    fixed_and_coinvariant,
    is_isometry,
    isometry_order,
    isotropic_profile_rank2,
    mukai_lattice,
    saturation,
    vectors_of_norm,
)
from ..numtheory import content


def is_pex(v, w) -> bool:
    """Whether Sat(Zv + Zw) holds an isotropic a with (a, v) in {1, 2}."""
    L = mukai_lattice()
    v = [int(x) for x in v]
    w = [int(x) for x in w]
    if L.product(v, w) != 0:
        raise NotOrthogonal("w must be orthogonal to v")
    if L.norm(v) <= 0 or L.norm(w) >= 0:
        raise WrongSigns("need v^2 > 0 and w^2 < 0")
    T = saturation(L, [v, w])
    coords = [int(x) for x in T.coordinates(v)]
    return any(p in (1, 2) for _, p in isotropic_profile_rank2(T.as_lattice(), coords))


@dataclass(frozen=True)
class Effectiveness:
    effective: bool
    reason: str
    order: int | None = None

    def __bool__(self):
        return self.effective

    def to_json(self) -> dict:
        return {"effective": self.effective, "reason": self.reason, "order": self.order}


def _complement_in(L: Lattice, S: Sublattice, v) -> Sublattice:
    """v^perp inside S, as a sublattice of L."""
    B = [list(r) for r in S.basis]
    if not B:
        return Sublattice(L, ())
    col = [[x] for x in la.matvec(la.matmul(B, [list(r) for r in L.gram]), v)]
    K = la.integer_kernel(col)
    return Sublattice(L, la.matmul(K, B) if K else ())


def symplectic_effective(g, v) -> Effectiveness:
    L = mukai_lattice()
    if not is_isometry(L, g):
        raise NotIsometry("not an isometry of the Mukai lattice")
    if la.det(g) != 1:
        raise NotSO("isometry must have determinant +1")
    v = [int(x) for x in v]
    if content(v) != 1:
        raise NotPrimitive("v must be primitive")
    vv = L.norm(v)
    if vv < 6:
        raise SquareTooSmall(f"v^2 = {vv} < 6")
    order = isometry_order(g)
    if order is None:
        raise InfiniteOrder("isometry does not have finite order")

    gv = la.matvec(g, v)
    if gv != v and gv != [-x for x in v]:
        return Effectiveness(False, "g does not map v to +-v", order)

    _, coinv = fixed_and_coinvariant(L, g)
    C = _complement_in(L, coinv, v)
    if C.rank:
        sig = C.as_lattice().signature()
        if sig.pos:
            return Effectiveness(False, "coinvariant not negative definite", order)

    # isotropic u in T = Sat(coinv + Zv) with (u, v) = k: u = (k/v^2) v + y/N, y in C
    if C.rank:
        CL = C.as_lattice()
        factors = discriminant_group(CL).invariant_factors
        N = factors[-1] if factors else 1
        T = saturation(L, [list(r) for r in coinv.basis] + [v])
        for k in (1, 2):
            target = Fraction(-N * N * k * k, vv)
            if target.denominator != 1:
                continue
            for y in vectors_of_norm(CL, int(target)):
                y_amb = la.vecmat(y, [list(r) for r in C.basis])
                u = [Fraction(k * a, vv) + Fraction(b, N) for a, b in zip(v, y_amb)]
                if all(x.denominator == 1 for x in u) and T.contains([int(x) for x in u]):
                    return Effectiveness(False, f"isotropic class pairing {k} with v", order)
    return Effectiveness(True, "ok", order)
