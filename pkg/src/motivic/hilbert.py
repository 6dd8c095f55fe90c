"""Generating series of punctual and absolute Hilbert schemes of points."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import HalfExponentInput, ModeMismatch, NotStabilized
from .exactalg import EPoly, L
from .geometry import GeometrySpec, projective_space
from .partitions import solve_wk
from .powerseries import Series, power_exp, subst_t, zeta_series

MODES = ("surface", "threefold_virtual", "euler_only")


@dataclass(frozen=True)
class WData:
    """The classes W_k in H_d(t) = prod_k (1 - t^k)^(-W_k).

    Known exactly for surfaces and for the virtual 3-fold series; in every
    other dimension only the Euler numbers w_k are available.
    """

    mode: str
    d: int
    wk: tuple[int, ...] = ()

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown W mode {self.mode!r}")

    @classmethod
    def surface(cls) -> "WData":
        return cls("surface", 2)

    @classmethod
    def threefold_virtual(cls) -> "WData":
        return cls("threefold_virtual", 3)

    @classmethod
    def euler_only(cls, d: int, N: int = 8) -> "WData":
        return cls("euler_only", d, solve_wk(d, N))

    def W(self, k: int) -> EPoly:
        if k < 1:
            raise ValueError("W_k is indexed from k = 1")
        if self.mode == "surface":
            return L ** (k - 1)
        if self.mode == "threefold_virtual":
            return EPoly.lpow(Fraction(-(k + 2), 2)) * projective_space(k - 1)
        if k > len(self.wk):
            raise ValueError(f"w_{k} not tabulated; build WData.euler_only(d, N) with N >= {k}")
        return EPoly.const(self.wk[k - 1])

    def extended(self, N: int) -> "WData":
        if self.mode == "euler_only" and len(self.wk) < N:
            return WData.euler_only(self.d, N)
        return self


def _geometric_factor(mono: EPoly, k: int, N: int) -> Series:
    """(1 - mono t^k)^(-1) to order N."""
    return subst_t(Series.geometric(N // k), mono, k, N)


def h2_series(N: int) -> Series:
    """prod_{k>=1} (1 - L^(k-1) t^k)^(-1)."""
    out = Series.one(N)
    for k in range(1, N + 1):
        out = out * _geometric_factor(L ** (k - 1), k, N)
    return out


def h3vir_series(N: int) -> Series:
    """prod_{m>=1} prod_{k=0}^{m-1} (1 - L^(-m/2 + k - 1) t^m)^(-1)."""
    out = Series.one(N)
    for m in range(1, N + 1):
        for k in range(m):
            out = out * _geometric_factor(EPoly.lpow(Fraction(-m, 2) + k - 1), m, N)
    return out


def euler_punctual_series(w: WData, N: int) -> Series:
    """prod_k (1 - t^k)^(-w_k) with integer w_k."""
    w = w.extended(N)
    out = Series.one(N)
    for k in range(1, N + 1):
        out = out * subst_t(zeta_series(w.W(k), N // k), EPoly.const(1), k, N)
    return out


def punctual_series(w: WData, N: int) -> Series:
    if w.mode == "surface":
        return h2_series(N)
    if w.mode == "threefold_virtual":
        return h3vir_series(N)
    return euler_punctual_series(w, N)


def hilb_series(geom: GeometrySpec, w: WData, N: int) -> Series:
    """sum_n E(Hilb^n X) t^n for an absolute geometry (g = 0)."""
    if geom.g != 0:
        raise ModeMismatch("hilb_series is the absolute (g = 0) case; use the kummer module for g >= 1")
    if geom.dim != w.d:
        raise ModeMismatch(f"W data of dimension {w.d} does not fit a {geom.dim}-dimensional X")
    base = punctual_series(w, N)
    if w.mode == "euler_only":
        return power_exp(base, EPoly.const(geom.totalE.euler()))
    return power_exp(base, geom.totalE)


def xtilde_series(fiberE: EPoly, N: int) -> Series:
    """Normalised virtual series sum_n E(X~_n) t^n of a 3-fold X.

    The factors (1 - x^(k+m+p-1) y^(k+m+q-1) t^m)^(-e^{p,q}) for fixed m
    form the zeta function of L^(m-1) E(P^(m-1)) E(X), evaluated at t^m.
    """
    if not fiberE.is_integral_exponent():
        raise HalfExponentInput("xtilde_series needs an integer-exponent class")
    out = Series.one(N)
    for m in range(1, N + 1):
        cm = fiberE * L ** (m - 1) * projective_space(m - 1)
        out = out * subst_t(zeta_series(cm, N // m), EPoly.const(1), m, N)
    return out


def g_function_coeff(fiberE: EPoly, p: int, q: int, n_max: int) -> int:
    """sum_j Coeff_{x^p y^q t^j} of G = (1 - t) * xtilde_series.

    The sum is finite in the stable range; the two coefficients past
    ``n_max`` are checked to vanish.
    """
    if n_max < 2 * max(p, q):
        raise ValueError(f"n_max must be at least 2*max(p, q) = {2 * max(p, q)}")
    e00 = fiberE.coeff2(0, 0)
    if e00 == 0:
        return 0
    if e00 != 1:
        raise ValueError(f"g_function_coeff needs h^{{0,0}} = 1, got {e00}")
    series = xtilde_series(fiberE, n_max + 2)
    G = series * Series([EPoly.const(1), EPoly.const(-1)], n_max + 2)
    total = 0
    for j in range(n_max + 1):
        c = G[j]
        total += c.coeff(p, q) if c else 0
    for j in (n_max + 1, n_max + 2):
        c = G[j]
        if c and c.coeff(p, q):
            raise NotStabilized(f"G has a nonzero x^{p} y^{q} t^{j} coefficient beyond n_max = {n_max}")
    return total
