"""Rank-2 wall classification and the vertical wall of a Mukai vector."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

from .. import intlinalg as la
from ..errors import InvalidMukai, NotHyperbolic, SquareTooSmall, VNotPrimitive, WrongRank
from ..lattice import Lattice, isotropic_profile_rank2
from ..numtheory import content

DIVISORIAL = "Divisorial"
FLOPPING = "Flopping"
NOT_A_WALL = "NotAWall"


@dataclass(frozen=True)
class WallVerdict:
    """``witness`` is an isotropic class (Divisorial) or v1 with v = v1 + (v - v1) (Flopping)."""

    kind: str
    witness: tuple | None = None
    pairing: int | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.pairing is not None:
            out["pairing"] = self.pairing
        return out


def verify_verdict(H: Lattice, v, verdict: WallVerdict) -> bool:
    """Recompute the witness conditions directly."""
    if verdict.kind == DIVISORIAL:
        w = list(verdict.witness)
        return H.norm(w) == 0 and content(w) == 1 and H.product(w, v) in (1, 2)
    if verdict.kind == FLOPPING:
        v1 = list(verdict.witness)
        v2 = [a - b for a, b in zip(v, v1)]
        return H.norm(v1) >= 0 and H.norm(v2) >= 0 and H.product(v1, v2) > 0
    return verdict.witness is None


def _check_wall_input(H_gram, v):
    if len(H_gram) != 2:
        raise WrongRank("wall lattice must have rank 2")
    H = Lattice(H_gram)
    if H.det >= 0:
        raise NotHyperbolic("wall lattice must have signature (1, 1)")
    v = [int(x) for x in v]
    if len(v) != 2 or content(v) != 1:
        raise VNotPrimitive("v must be a primitive vector of the wall lattice")
    if H.norm(v) < 6:
        raise SquareTooSmall(f"v^2 = {H.norm(v)} < 6")
    return H, v


def _flopping_witness(H: Lattice, v):
    """Search v1 = (A v + B w)/k, 0 < A < k, with v1^2 >= 0 and (v - v1)^2 >= 0.

    w spans v^perp in H and k = [H : Zv + Zw].  Admissible (A, B) form a
    lattice; for each A the smallest |B| in its residue class is the only
    candidate worth testing, since both squares decrease with |B|.
    """
    vv = H.norm(v)
    w = la.integer_kernel([[x] for x in la.matvec(H.gram, v)])[0]
    ww = -H.norm(w)
    P = [[v[0], w[0]], [v[1], w[1]]]
    k = abs(int(la.det(P)))
    # (A, B) with (A v + B w)/k integral: columns of k P^{-1}
    adj = [[P[1][1], -P[0][1]], [-P[1][0], P[0][0]]]
    sign = 1 if la.det(P) > 0 else -1
    gens = [[sign * adj[0][j], sign * adj[1][j]] for j in range(2)]
    Hm, _ = la.hnf(gens)
    (a0, b0), (_, b1) = Hm
    for t in range(1, (k - 1) // a0 + 1):
        A = t * a0
        m = min(A, k - A)
        low = (t * b0) % b1
        for B in sorted((low, low - b1), key=abs):
            if B * B * ww > m * m * vv:
                continue
            v1 = tuple((A * v[i] + B * w[i]) // k for i in range(2))
            verdict = WallVerdict(FLOPPING, v1)
            if verify_verdict(H, v, verdict):
                return verdict
    return None


def classify_wall(H_gram, v) -> WallVerdict:
    H, v = _check_wall_input(H_gram, v)
    profile = isotropic_profile_rank2(H, v)
    hits = sorted((p, a) for a, p in profile if p in (1, 2))
    if hits:
        p, a = hits[0]
        return WallVerdict(DIVISORIAL, tuple(a), p)
    flop = _flopping_witness(H, v)
    if flop is not None:
        return flop
    return WallVerdict(NOT_A_WALL)


# -- Mukai vectors and the vertical wall ---------------------------------------

@dataclass(frozen=True)
class MukaiData:
    """v = (r, cD, chi) with D primitive of square 2d."""

    r: int
    c: int
    chi: int
    d: int

    def __post_init__(self):
        if self.r <= 0:
            raise InvalidMukai(f"rank must be positive, got r={self.r}")
        if self.d < 1:
            raise InvalidMukai(f"need D^2 = 2d with d >= 1, got d={self.d}")
        if gcd(gcd(self.r, self.c), self.chi) != 1:
            raise InvalidMukai("v = (r, cD, chi) is not primitive")

    @property
    def square(self) -> int:
        return 2 * self.d * self.c * self.c - 2 * self.r * self.chi

    def to_json(self) -> dict:
        return {"r": self.r, "c": self.c, "chi": self.chi, "d": self.d}


def mukai_pairing(x, y, d: int) -> int:
    """((r, cD, chi), (r', c'D, chi')) = 2d cc' - r chi' - r' chi on (r, c, chi) triples."""
    return 2 * d * x[1] * y[1] - x[0] * y[2] - y[0] * x[2]


def vertical_wall_lattice(m: MukaiData):
    """Gram of H_W = Sat(Zv + Z(0,0,1)) in the basis (b1, b2), and v's coordinates.

    b1 = (l0, (l0 c / r) D, 0) with l0 = r / gcd(r, c); b2 = (0, 0, 1).
    """
    g = gcd(m.r, m.c)
    l0 = m.r // g
    q = l0 * m.c // m.r
    gram = [[2 * m.d * q * q, -l0], [-l0, 0]]
    v = [g, m.chi]
    if la.bilinear(v, gram, v) != m.square:
        raise InvalidMukai("internal consistency check on v^2 failed")
    return gram, v


def wall_basis_to_mukai(m: MukaiData, x):
    """H_W coordinates -> (r, c, chi) triple."""
    g = gcd(m.r, m.c)
    l0 = m.r // g
    q = l0 * m.c // m.r
    return (x[0] * l0, x[0] * q, x[1])


def mukai_to_wall_basis(m: MukaiData, y):
    g = gcd(m.r, m.c)
    l0 = m.r // g
    if y[0] % l0 or y[0] * m.c != y[1] * m.r:
        raise InvalidMukai("vector is not in the vertical wall lattice")
    return (y[0] // l0, y[2])


@dataclass(frozen=True)
class SeriesHit:
    series: str  # "S1", "S2" or "S3"
    params: tuple  # (k, m) or (a, m)

    def to_json(self) -> dict:
        names = ("k", "m") if self.series == "S1" else ("a", "m")
        return {"series": self.series, **dict(zip(names, self.params))}


def detect_series(m: MukaiData) -> SeriesHit | None:
    """The lowest-numbered divisorial series containing v, if any."""
    r, c, chi, d = m.r, m.c, m.chi, m.d
    if c % r == 0:
        k = c // r
        mm = d * k * k * r - chi
        if mm in (1, 2):
            return SeriesHit("S1", (k, mm))
    if r % 2 == 0 and r > 2 and c % r != 0:
        a = r // 2
        if c % a == 0 and (c // a) % 2 == 1:
            mm = c // a
            # D^2 = 2d = 0 mod 4
            if d % 2 == 0 and a >= 2 and chi == d * mm * mm * a // 2 - 1:
                return SeriesHit("S2", (a, mm))
            # D^2 = 2 mod 4
            if d % 2 == 1 and a >= 3 and a % 2 == 1 and 4 * chi == 2 * d * mm * mm * a - 2:
                return SeriesHit("S3", (a, mm))
    return None


def monodromy_condition(m: MukaiData) -> bool:
    """r | 2c and gcd(r, chi) in {1, 2}."""
    return (2 * m.c) % m.r == 0 and gcd(m.r, m.chi) in (1, 2)


@dataclass(frozen=True)
class VerticalWallReport:
    mukai: MukaiData
    square: int
    e: tuple | None  # (r, c, e_chi, d)
    monodromy_ok: bool
    wall: WallVerdict
    induced_by_finite_order_symplectic: bool
    series_hit: SeriesHit | None
    outside_hypotheses: bool = False
    notes: tuple = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "mukai": self.mukai.to_json(),
            "v_square": self.square,
            "e": list(self.e) if self.e is not None else None,
            "monodromy_ok": self.monodromy_ok,
            "wall": self.wall.kind,
            "witness": self.wall.to_json(),
            "induced": self.induced_by_finite_order_symplectic,
            "series_hit": self.series_hit.to_json() if self.series_hit else None,
            "outside_hypotheses": self.outside_hypotheses,
        }


def _explicit_witness(m: MukaiData, hit: SeriesHit | None):
    """Known isotropic class of H_W with (w, v) in {1, 2}, as an (r, c, chi) triple."""
    if m.r <= 2:
        return (0, 0, -1)
    if hit is None:
        return None
    if hit.series == "S1":
        k, _ = hit.params
        return (1, k, k * k * m.d)
    _, mm = hit.params
    if hit.series == "S2":
        return (2, mm, m.d * mm * mm // 2)
    return (4, 2 * mm, m.d * mm * mm)


def vertical_wall_report(m: MukaiData) -> VerticalWallReport:
    sq = m.square
    if sq < 6:
        raise SquareTooSmall(f"v^2 = {sq} < 6")
    r, c, chi, d = m.r, m.c, m.chi, m.d
    e = None
    if (2 * d * c * c) % r == 0:
        e = (r, c, 2 * d * c * c // r - chi, d)
        vt, et = (r, c, chi), e[:3]
        if mukai_pairing(vt, et, d) != 0 or mukai_pairing(et, et, d) != -sq:
            raise InvalidMukai("reflection vector failed its consistency check")
    ok = monodromy_condition(m)
    hit = detect_series(m)
    gram, v = vertical_wall_lattice(m)
    H = Lattice(gram)
    if ok:
        divisorial = r <= 2 or hit is not None
        if divisorial:
            w = mukai_to_wall_basis(m, _explicit_witness(m, hit))
            wall = WallVerdict(DIVISORIAL, tuple(w), H.product(w, v))
        else:
            v1 = mukai_to_wall_basis(m, (r, c, chi + 1))
            wall = WallVerdict(FLOPPING, tuple(v1))
            if not verify_verdict(H, v, wall):
                wall = _flopping_witness(H, v) or WallVerdict(FLOPPING)
    else:
        wall = classify_wall(gram, v)
    induced = ok and r not in (1, 2) and hit is None
    return VerticalWallReport(
        mukai=m,
        square=sq,
        e=e,
        monodromy_ok=ok,
        wall=wall,
        induced_by_finite_order_symplectic=induced,
        series_hit=hit,
        outside_hypotheses=(c == 0),
    )
