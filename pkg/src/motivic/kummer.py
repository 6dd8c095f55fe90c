"""Generalized Kummer schemes: relative expansion, fiber over zero, closed forms.

Classes over the abelian base are never built as spaces.  A relative class
``prod_m m_*(prod_i Sym^(b_i)(X_i) -> A)`` is carried as a
:class:`RelativeTerm`, and pulling back along the origin multiplies by
``gcd(m)^(2g)`` and forgets the base (the answer is [A] times the fiber).
All results live at the level of E-polynomials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ModeMismatch, UnsupportedG
from .exactalg import EPoly, L, YLaurent, exact_div
from .geometry import GeometrySpec, abelian_class, projective_space
from .hilbert import WData
from .partitions import divisors, partitions_of
from .powerseries import Series, series_exp, sym_class


@dataclass(frozen=True)
class RelativeTerm:
    """``scalar * prod over factors of mult_*(prod Sym^b(base))``."""

    scalar: EPoly
    factors: tuple[tuple[int, tuple[tuple[int, EPoly], ...]], ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.factors, key=lambda f: f[0]))
        object.__setattr__(self, "factors", ordered)

    def multiplicities(self) -> list[int]:
        return [m for m, syms in self.factors if any(b > 0 for b, _ in syms)]

    def gcd(self) -> int:
        return math.gcd(*self.multiplicities()) if self.multiplicities() else 0

    def scaled(self, k: int) -> "RelativeTerm":
        return RelativeTerm(self.scalar, tuple((m * k, syms) for m, syms in self.factors))


@dataclass(frozen=True)
class KummerResult:
    n: int
    cls: EPoly | None
    geom: GeometrySpec
    virtual: bool = False
    normalized: bool = False
    euler_value: int | None = field(default=None, compare=False)

    @property
    def euler(self) -> int:
        if self.cls is not None:
            return self.cls.euler()
        return self.euler_value

    @property
    def chi_y(self) -> YLaurent | None:
        return None if self.cls is None else self.cls.chi_y()

    @property
    def expected_dim(self) -> int:
        return 3 * self.n - self.geom.g


def _check_mode(geom: GeometrySpec, w: WData) -> None:
    if geom.dim != w.d:
        raise ModeMismatch(f"{w.mode} data (d = {w.d}) used with a {geom.dim}-dimensional X")


def relative_expand(geom: GeometrySpec, w: WData, n: int) -> list[RelativeTerm]:
    """One term per partition of n: the class [Hilb^n(X) -> A] over the base."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_mode(geom, w)
    EX = geom.totalE
    if w.mode == "euler_only":
        w = w.extended(max(n, 1))
    terms = []
    for alpha in partitions_of(n):
        if w.mode == "surface":
            scalar = L ** (n - alpha.length)
            factors = tuple((m, ((b, EX),)) for m, b in alpha.b.items())
        elif w.mode == "threefold_virtual":
            scalar = EPoly.lpow(Fraction(-sum(b * (m + 2) for m, b in alpha.b.items()), 2))
            factors = tuple((m, ((b, EX * projective_space(m - 1)),)) for m, b in alpha.b.items())
        else:
            scalar = EPoly.const(1)
            factors = tuple((m, ((b, EX * w.W(m)),)) for m, b in alpha.b.items())
        terms.append(RelativeTerm(scalar, factors))
    return terms


def kummer_pullback(terms, geom: GeometrySpec) -> EPoly:
    """[A] times the fiber over the origin of a sum of relative terms.

    A term with no symmetric-power factors is the origin itself, whose
    fiber is a point, so it contributes ``scalar * E(A)``.
    """
    total = EPoly()
    for term in terms:
        mults = term.multiplicities()
        if not mults:
            total = total + term.scalar * geom.baseE
            continue
        value = term.scalar * (term.gcd() ** (2 * geom.g) if geom.g else 1)
        for _, syms in term.factors:
            for b, base in syms:
                value = value * sym_class(base, b)
        total = total + value
    return total


def kummer_class(geom: GeometrySpec, w: WData, n: int) -> KummerResult:
    """E-polynomial of K_n(X) for surfaces; Euler number only in ``euler_only`` mode."""
    if w.mode == "threefold_virtual":
        raise ModeMismatch("use kummer_vir_class for the virtual 3-fold series")
    terms = relative_expand(geom, w, n)
    cls = exact_div(kummer_pullback(terms, geom), geom.baseE)
    if w.mode == "euler_only":
        # W_m stands in for w_m points; only the Euler number of this class means anything
        return KummerResult(n, None, geom, euler_value=cls.euler())
    return KummerResult(n, cls, geom)


def kummer_vir_class(geom: GeometrySpec, n: int, normalized: bool = False) -> KummerResult:
    """Virtual class [K_n(X)]_vir of a 3-fold X -> A, divided by [A]_vir = L^(-g/2) [A]."""
    if geom.dim != 3:
        raise ModeMismatch(f"virtual Kummer classes need dim X = 3, got {geom.dim}")
    if n == 0:
        # K_0 is a reduced point; neither L^(g/2) nor the 3n - g shift applies to it
        return KummerResult(0, EPoly.const(1), geom, virtual=True, normalized=normalized)
    terms = relative_expand(geom, WData.threefold_virtual(), n)
    total = kummer_pullback(terms, geom) * EPoly.lpow(Fraction(geom.g, 2))
    cls = exact_div(total, geom.baseE)
    if normalized:
        cls = cls * EPoly.lpow(Fraction(3 * n - geom.g, 2))
    return KummerResult(n, cls, geom, virtual=True, normalized=normalized)


def normalized_vir_class_direct(geom: GeometrySpec, n: int) -> EPoly:
    """[K~_n] from sum_alpha g(alpha)^(2g) L^(n - l(alpha)) prod Sym^(b_m)(X x P^(m-1)) / [A]."""
    EX = geom.totalE
    total = EPoly()
    for alpha in partitions_of(n):
        value = L ** (n - alpha.length)
        if alpha.length:
            value = value * alpha.gcd_parts ** (2 * geom.g)
        else:
            value = value * geom.baseE
        for m, b in alpha.b.items():
            value = value * sym_class(EX * projective_space(m - 1), b)
        total = total + value
    return exact_div(total, geom.baseE)


# ----------------------------------------------------------------------------
# chi_y closed forms


def _require_g(geom: GeometrySpec) -> None:
    if geom.g < 1:
        raise UnsupportedG("closed forms divide by the abelian base and need g >= 1")


def chi_y_sym_ratio(geom: GeometrySpec, n: int) -> YLaurent:
    """chi_(-y) of E(Sym^n X)/E(A) at x = 1: chi_(-y^n)(Y) n^(g-1) (1 + ... + y^(n-1))^g."""
    _require_g(geom)
    if n < 1:
        raise ValueError("n must be >= 1")
    return geom.fiberE.chi_y().adams(n) * n ** (geom.g - 1) * YLaurent.geometric(n) ** geom.g


def chi_y_sym_ratio_direct(geom: GeometrySpec, n: int) -> YLaurent:
    return exact_div(sym_class(geom.totalE, n), geom.baseE).chi_y()


def chi_y_kummer_surface(geom: GeometrySpec, n: int) -> YLaurent:
    _require_g(geom)
    g = geom.g
    if n == 0:
        return YLaurent.const(1)
    chiY = geom.fiberE.chi_y()
    total = YLaurent()
    for d in divisors(n):
        m = n // d
        total = total + (YLaurent.mono(n - m) * chiY.adams(m) * d ** (g + 1)
                         * YLaurent.geometric(m) ** g)
    return total * n ** (g - 1)


def chi_y_kummer_vir(geom: GeometrySpec, n: int) -> YLaurent:
    _require_g(geom)
    g = geom.g
    if n == 0:
        return YLaurent.const(1)
    chiY = geom.fiberE.chi_y()
    total = YLaurent()
    for d in divisors(n):
        m = n // d
        shift2 = -2 * m - (n - g)
        total = total + (YLaurent({shift2: 1}) * chiY.adams(m) * d ** (g + 1)
                         * YLaurent.geometric(d, step=m) * YLaurent.geometric(m) ** g)
    return total * n ** (g - 1)


# ----------------------------------------------------------------------------
# Euler numbers


def euler_kummer(geom: GeometrySpec, w_euler, n: int) -> int:
    """chi(Y) n^(2g-1) sum_{d | n} d w_d."""
    _require_g(geom)
    if n < 1:
        raise ValueError("n must be >= 1")
    return geom.chi_fiber() * n ** (2 * geom.g - 1) * sum(d * w_euler[d - 1] for d in divisors(n))


def euler_identity_sides(geom: GeometrySpec, w_euler, counts, N: int) -> tuple[Series, Series]:
    """Both sides of exp(sum chi(K_n)/n^(2g) t^n) = (sum P_d(k) t^k)^chi(Y), over Q."""
    _require_g(geom)
    f = [Fraction(0)] + [Fraction(euler_kummer(geom, w_euler, n), n ** (2 * geom.g)) for n in range(1, N + 1)]
    lhs = series_exp(Series(f))
    P = Series([Fraction(c) for c in counts[: N + 1]])
    rhs = P ** geom.chi_fiber()
    return lhs, rhs


def verify_euler_identity(geom: GeometrySpec, w_euler, counts, N: int) -> bool:
    lhs, rhs = euler_identity_sides(geom, w_euler, counts, N)
    return lhs == rhs


# ----------------------------------------------------------------------------
# Hodge numbers of normalised virtual classes


def hodge_numbers(cls: EPoly) -> dict[tuple[int, int], int]:
    """h^{p,q} = (-1)^(p+q) e^{p,q}; requires integer exponents."""
    out = {}
    for (p2, q2), c in cls.items():
        if p2 % 2 or q2 % 2:
            raise ValueError("hodge_numbers needs integer exponents")
        p, q = p2 // 2, q2 // 2
        out[(p, q)] = (-1) ** (p + q) * c
    return out


def hodge_property_check(res: KummerResult) -> dict:
    """Diamond support, Hodge symmetry and, for projective X, duality and Lefschetz."""
    cls = res.cls
    D = 3 * res.n - res.geom.g
    report = {"diamond": False, "symmetry": False, "duality": None, "lefschetz": None}
    if cls is None or not cls.is_integral_exponent():
        return report
    if res.n == 0:
        # K_0 is a point whatever g is; 3n - g is not its dimension
        ok = cls == EPoly.const(1)
        projective_ok = ok if res.geom.projective else None
        return {"diamond": ok, "symmetry": ok, "duality": projective_ok, "lefschetz": projective_ok}
    h = hodge_numbers(cls)
    report["diamond"] = all(0 <= p <= D and 0 <= q <= D for p, q in h)
    report["symmetry"] = all(h.get((q, p), 0) == v for (p, q), v in h.items())
    if res.geom.projective:
        report["duality"] = all(h.get((D - p, D - q), 0) == v for (p, q), v in h.items())
        report["lefschetz"] = all(
            h.get((p - 1, q - 1), 0) <= h.get((p, q), 0)
            for p in range(1, D + 1) for q in range(1, D + 1) if p + q <= D
        )
    return report


def _coeff_over_base(E: EPoly, g: int, p: int, q: int) -> int:
    """Coeff of x^p y^q in E / ((1-x)(1-y))^g expanded as a power series."""
    if g == 0:
        return E.coeff(p, q)
    total = 0
    for (a2, b2), c in E.items():
        if a2 % 2 or b2 % 2:
            continue
        a, b = a2 // 2, b2 // 2
        if a < 0 or b < 0:
            raise ValueError("power-series division needs nonnegative exponents")
        if a <= p and b <= q:
            total += c * math.comb(p - a + g - 1, g - 1) * math.comb(q - b + g - 1, g - 1)
    return total


def stable_hodge(geom: GeometrySpec, p: int, q: int, verify: bool = True) -> int:
    """Stable value of h^{p,q} of the normalised virtual Kummer class."""
    from .errors import StabilityMismatch
    from .hilbert import xtilde_series

    if geom.dim != 3:
        raise ModeMismatch("stable_hodge needs a 3-dimensional X")
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    n = 2 * max(p, q) + 1
    if geom.h00 == 0:
        value = 0
    else:
        EXn = xtilde_series(geom.totalE, n)[n]
        value = (-1) ** (p + q) * _coeff_over_base(EXn, geom.g, p, q)
    if verify:
        for k in (n, n + 1):
            res = kummer_vir_class(geom, k, normalized=True)
            got = (-1) ** (p + q) * res.cls.coeff(p, q)
            if got != value:
                raise StabilityMismatch(
                    f"h^{{{p},{q}}}: stable value {value} but the class at n = {k} gives {got}")
    return value
