"""Twisted modularity, the exceptions scan and the five exceptional models."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .. import intlinalg as la
from ..errors import InvalidCase, OutOfRange, WrongSignature
from ..lattice import (
    A2,
    Lattice,
    direct_sum,
    fixed_and_coinvariant,
    is_isometric_definite,
    is_isometry,
    isometry_order,
    rescale,
    span,
)
from ..qform import diagonalize, is_isotropic_rational, kummer_form_isotropic

SCAN_N_MAX = 200
SCAN_D_MAX = 10_000


def is_twisted_modular(n: int, ns_gram) -> bool:
    """Isotropy over Q of <2n+2> + NS."""
    if n < 2:
        raise OutOfRange(f"need n >= 2, got {n}")
    NS = Lattice(ns_gram)
    if NS.signature().pos != 1:
        raise WrongSignature("NS must have signature (1, rho - 1)")
    total = direct_sum(span(2 * n + 2), NS)
    return is_isotropic_rational(diagonalize(total.gram))


def _scan_row(n, d_values, variant):
    return n, [d for d in d_values if not kummer_form_isotropic(n, d, variant)]


def exceptions_scan(n_range, d_range, variant: str = "I", parallel: int | None = None) -> dict:
    """{n: sorted d with the variant's quaternary form anisotropic}; every n in range is a key."""
    ns = list(n_range)
    ds = sorted(set(d_range))
    if ns and (min(ns) < 2 or max(ns) > SCAN_N_MAX):
        raise OutOfRange(f"n must lie in [2, {SCAN_N_MAX}]")
    if ds and (ds[0] < 1 or ds[-1] > SCAN_D_MAX):
        raise OutOfRange(f"d must lie in [1, {SCAN_D_MAX}]")
    if parallel and parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            rows = list(pool.map(lambda n: _scan_row(n, ds, variant), ns))
    else:
        rows = [_scan_row(n, ds, variant) for n in ns]
    return dict(rows)


# (gram(d), isometry, variant, form parameter(d), order, coinvariant)
_CASES = {
    1: (lambda d: [[2 * d, 0, 0], [0, -2, 0], [0, 0, -2]],
        [[1, 0, 0], [0, -1, 0], [0, 0, -1]], "I", lambda d: d, 2),
    2: (lambda d: [[2 * d, -1, 0], [-1, -2, 0], [0, 0, -2]],
        [[1, 0, 0], [-1, -1, 0], [0, 0, -1]], "I", lambda d: 4 * d + 1, 2),
    3: (lambda d: [[2 * d, -1, -1], [-1, -2, 0], [-1, 0, -2]],
        [[1, 0, 0], [-1, -1, 0], [-1, 0, -1]], "I", lambda d: 4 * d + 2, 2),
    4: (lambda d: [[2 * d, 0, 0], [0, -2, -1], [0, -1, -2]],
        [[1, 0, 0], [0, 0, 1], [0, -1, -1]], "II", lambda d: d, 3),
    5: (lambda d: [[2 * d, -1, -1], [-1, -2, -1], [-1, -1, -2]],
        [[1, 0, 0], [0, 0, 1], [-1, -1, -1]], "II", lambda d: 9 * d + 3, 3),
}


@dataclass(frozen=True)
class ExceptionModel:
    case: int
    n: int
    d: int
    gram: tuple
    isometry: tuple
    variant: str
    form_d: int
    record: dict

    @property
    def verified(self) -> bool:
        keys = ("preserves_gram", "order_ok", "invariant_square_ok", "coinvariant_ok", "coherent")
        return all(self.record[k] for k in keys)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "n": self.n,
            "d": self.d,
            "gram": [list(r) for r in self.gram],
            "isometry": [list(r) for r in self.isometry],
            "variant": self.variant,
            "form_d": self.form_d,
            "record": self.record,
            "verified": self.verified,
        }


def exception_models(case: int, n: int, d: int) -> ExceptionModel:
    """The printed NS Gram and isometry for one of the five exceptional cases, verified.

    The isometry acts on column coordinates.  Its invariant lattice has rank 1,
    generated by a vector of square 2 * form_d; the coinvariant lattice is
    A1(-1)^2 (order 2) or A2(-1) (order 3).
    """
    if case not in _CASES:
        raise InvalidCase(f"case must be 1..5, got {case}")
    if n < 2 or d < 1:
        raise OutOfRange(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    gram_of, M, variant, form_of, expected_order = _CASES[case]
    G = gram_of(d)
    form_d = form_of(d)
    L = Lattice(G)
    preserves = is_isometry(L, M)
    order = isometry_order(M) if preserves else None
    inv, coinv = fixed_and_coinvariant(L, M) if preserves else (None, None)
    inv_sq = inv.gram[0][0] if inv is not None and inv.rank == 1 else None
    expected_coinv = span(-2, -2) if expected_order == 2 else rescale(A2(), -1)
    coinv_ok = (
        coinv is not None
        and coinv.rank == 2
        and is_isometric_definite(coinv.as_lattice(), expected_coinv)
    )
    anisotropic = not kummer_form_isotropic(n, form_d, variant)
    modular = is_twisted_modular(n, G)
    record = {
        "preserves_gram": preserves,
        "order": order,
        "order_ok": order == expected_order,
        "invariant_generator": list(inv.basis[0]) if inv_sq is not None else None,
        "invariant_square": inv_sq,
        "invariant_square_ok": inv_sq == 2 * form_d,
        "coinvariant_gram": coinv.gram if coinv is not None else None,
        "coinvariant_ok": coinv_ok,
        "form_anisotropic": anisotropic,
        "twisted_modular": modular,
        "coherent": modular != anisotropic,
    }
    return ExceptionModel(case, n, d, tuple(map(tuple, G)), tuple(map(tuple, M)), variant, form_d, record)
