"""Stacks of zero-dimensional torsion sheaves and their Kummer fibers.

Stack classes are only ever seen through their localised E-realisation,
a :class:`MotiveRational` with factored ``(L^s - 1)`` denominators.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ModeMismatch, UnsupportedG
from .exactalg import EPoly, L, MotiveRational, YLaurent, YRational, exact_div, mr_chi_y
from .geometry import GeometrySpec
from .partitions import compositions_of, divisors, partitions_of
from .powerseries import sym_class

KINDS = {"curve": 1, "surface": 2, "threefold": 3}


@dataclass(frozen=True)
class TorsionTerm:
    """``scalar * prod_m m_*(prod_i Sym^(b_i)(base_i))`` with a localised scalar."""

    scalar: MotiveRational
    factors: tuple[tuple[int, tuple[tuple[int, EPoly], ...]], ...] = ()

    def multiplicities(self) -> list[int]:
        return [m for m, syms in self.factors if any(b > 0 for b, _ in syms)]

    def gcd(self) -> int:
        from math import gcd

        mults = self.multiplicities()
        return gcd(*mults) if mults else 0

    def scaled(self, k: int) -> "TorsionTerm":
        return TorsionTerm(self.scalar, tuple((m * k, syms) for m, syms in self.factors))


def _check_dim(geom: GeometrySpec, kind: str) -> None:
    if geom.dim != KINDS[kind]:
        raise ModeMismatch(f"{kind} torsion series needs dim X = {KINDS[kind]}, got {geom.dim}")


def _composition_factor(comp, EX: EPoly, twist: bool):
    """Scalar and Sym list for one composition r_1..r_l at a fixed multiplicity."""
    num = EPoly.const(1)
    if twist:
        num = L ** (-comp.total)
    scalar = MotiveRational(num, 0, comp.suffix_sums)
    syms = tuple((r, EX) for r in comp.parts)
    return scalar, syms


def torsion_series_curve(geom: GeometrySpec, n: int) -> list[TorsionTerm]:
    """One term per composition of n, scalar prod 1/(L^(s_i) - 1)."""
    _check_dim(geom, "curve")
    if n == 0:
        return [TorsionTerm(MotiveRational(EPoly.const(1)))]
    EX = geom.totalE
    terms = []
    for comp in compositions_of(n):
        scalar, syms = _composition_factor(comp, EX, twist=False)
        terms.append(TorsionTerm(scalar, ((1, syms),)))
    return terms


def _families(n: int):
    """Maps m -> composition with sum_m m |comp_m| = n, largest m first."""
    for alpha in partitions_of(n):
        mults = sorted(alpha.b, reverse=True)
        choices = [compositions_of(alpha.b[m]) for m in mults]
        for combo in product(*choices):
            yield tuple(zip(mults, combo))


def _family_series(geom: GeometrySpec, n: int, twist: bool) -> list[TorsionTerm]:
    if n == 0:
        return [TorsionTerm(MotiveRational(EPoly.const(1)))]
    EX = geom.totalE
    terms = []
    for family in _families(n):
        scalar = MotiveRational(EPoly.const(1))
        factors = []
        for m, comp in family:
            s, syms = _composition_factor(comp, EX, twist)
            scalar = scalar * s
            factors.append((m, syms))
        terms.append(TorsionTerm(scalar, tuple(factors)))
    return terms


def torsion_series_surface(geom: GeometrySpec, n: int) -> list[TorsionTerm]:
    _check_dim(geom, "surface")
    return _family_series(geom, n, twist=False)


def torsion_series_3fold_vir(geom: GeometrySpec, n: int) -> list[TorsionTerm]:
    _check_dim(geom, "threefold")
    return _family_series(geom, n, twist=True)


def torsion_terms(geom: GeometrySpec, n: int, kind: str) -> list[TorsionTerm]:
    if kind == "curve":
        return torsion_series_curve(geom, n)
    if kind == "surface":
        return torsion_series_surface(geom, n)
    if kind == "threefold":
        return torsion_series_3fold_vir(geom, n)
    raise ValueError(f"unknown torsion kind {kind!r}")


def term_pullback(term: TorsionTerm, geom: GeometrySpec) -> MotiveRational:
    """Fiber over the origin of one term, with the base already divided out.

    Each symmetric power Sym^r(X), r >= 1, is divisible by E(A), so the
    division happens term by term before anything is specialised.
    """
    mults = term.multiplicities()
    if not mults:
        return term.scalar
    value = EPoly.const(term.gcd() ** (2 * geom.g) if geom.g else 1)
    for _, syms in term.factors:
        for b, base in syms:
            value = value * sym_class(base, b)
    value = exact_div(value, geom.baseE)
    return term.scalar * value


def torsion_kummer_class(geom: GeometrySpec, n: int, kind: str) -> MotiveRational:
    """Localised class of the Kummer fiber of the torsion-sheaf stack."""
    total = MotiveRational(EPoly())
    for term in torsion_terms(geom, n, kind):
        total = total + term_pullback(term, geom)
    return total


def torsion_kummer_chi_y_expanded(geom: GeometrySpec, n: int, kind: str) -> YRational:
    """Expansion route: specialise every pulled-back term, then add as rational functions."""
    total = YRational(YLaurent())
    for term in torsion_terms(geom, n, kind):
        total = total + mr_chi_y(term_pullback(term, geom))
    return total


def torsion_kummer_chi_y(geom: GeometrySpec, n: int, kind: str) -> YRational:
    """Closed-form chi_(-y) of the Kummer fiber of the torsion stack (g >= 1)."""
    if geom.g < 1:
        raise UnsupportedG("the torsion-stack closed forms need g >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_dim(geom, kind)
    y_minus_1 = YLaurent.mono(1) - 1
    if kind == "curve":
        return YRational(YLaurent.const(1), y_minus_1)
    g = geom.g
    chiY = geom.fiberE.chi_y()
    total = YLaurent()
    for d in divisors(n):
        m = n // d
        term = chiY.adams(m) * d ** (g + 1) * YLaurent.geometric(m) ** (g - 1)
        if kind == "threefold":
            term = term * YLaurent.mono(-m)
        total = total + term
    return YRational(total * n ** (g - 1), y_minus_1)
