"""Truncated power series in t and the power structure they carry.

A power series is stored as its coefficients c_0..c_N.  Coefficients may be
EPoly, QPoly, int or Fraction; anything supporting ``+``, ``*`` and mixing
with ints works.  Two algorithms realise exponentiation ``A(t)^M``:

* plethystic: ``pleth_exp(M * pleth_log(A))`` with the Adams operations
  acting on x, y and t together;
* zeta reassembly: factor ``A = prod_k zeta_{c_k}(t^k)`` by peeling off one
  factor at a time, then multiply the ``zeta_{M c_k}(t^k)`` back together.

They share no code below the coefficient ring.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import BadConstantTerm, NotAMonomial
from .exactalg import EPoly, QPoly, _HalfLaurent
from .partitions import partitions_of


def _is_zero(c) -> bool:
    return not c


def _div(c, n: int):
    if isinstance(c, (int, Fraction)):
        return Fraction(c) / n
    return c / n


def _adams_coeff(c, j: int):
    if isinstance(c, _HalfLaurent):
        return c.adams(j)
    return c


def _join_kinds(a, b):
    if QPoly in (a, b):
        return QPoly
    return a or b


class Series:
    """Power series in t truncated after t^order.  Immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None, kind=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be >= 0")
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        for c in coeffs:
            if isinstance(c, QPoly):
                kind = QPoly
                break
            if isinstance(c, EPoly) and kind is None:
                kind = EPoly
        if kind is not None:
            # homogeneous polynomial coefficients, so callers can rely on .euler() etc.
            coeffs = [c if isinstance(c, _HalfLaurent) else kind.const(c) for c in coeffs]
        self.coeffs = tuple(coeffs)

    @property
    def kind(self):
        """EPoly or QPoly when the coefficients are polynomials, else None."""
        c = self.coeffs[0]
        return type(c) if isinstance(c, _HalfLaurent) else None

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls([EPoly.const(1)], order)

    @classmethod
    def t(cls, order: int) -> "Series":
        return cls([0, EPoly.const(1)], order)

    @classmethod
    def geometric(cls, order: int, c=None) -> "Series":
        """1 + c t + c^2 t^2 + ... (c defaults to 1)."""
        c = EPoly.const(1) if c is None else c
        out, cur = [], EPoly.const(1)
        for _ in range(order + 1):
            out.append(cur)
            cur = cur * c
        return cls(out)

    def __getitem__(self, n: int):
        return self.coeffs[n] if 0 <= n <= self.order else 0

    def coeff(self, n: int):
        return self[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> "Series":
        return Series(self.coeffs[: order + 1], min(order, self.order))

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"({c})*t^{i}" for i, c in enumerate(self.coeffs) if not _is_zero(c))
        return f"Series[{self.order}]({body or '0'})"

    # ring operations -----------------------------------------------------
    def _other(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series([other], self.order)

    def __add__(self, other):
        o = self._other(other)
        n = min(self.order, o.order)
        return Series([self.coeffs[i] + o.coeffs[i] for i in range(n + 1)], kind=_join_kinds(self.kind, o.kind))

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series([c * other for c in self.coeffs])
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = 0
            for i in range(k + 1):
                if not _is_zero(a[i]) and not _is_zero(b[k - i]):
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return Series(out, kind=_join_kinds(self.kind, other.kind))

    def __rmul__(self, other):
        return Series([other * c for c in self.coeffs])

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Series([1], self.order, kind=self.kind)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "Series":
        """Reciprocal; the constant term must be +1 or -1."""
        c0 = self.coeffs[0]
        if c0 == 1:
            sign = 1
        elif c0 == -1:
            sign = -1
        else:
            raise BadConstantTerm(f"cannot invert a series with constant term {c0}")
        out = [sign]
        for k in range(1, self.order + 1):
            acc = 0
            for i in range(1, k + 1):
                if not _is_zero(self.coeffs[i]) and not _is_zero(out[k - i]):
                    acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * sign if not _is_zero(acc) else 0)
        return Series(out, kind=self.kind)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        return Series([_div(c, other) for c in self.coeffs])

    def map(self, fn) -> "Series":
        return Series([fn(c) for c in self.coeffs])

    def adams(self, j: int) -> "Series":
        """psi_j on coefficients and t together: c t^n -> psi_j(c) t^(jn)."""
        out = [0] * (self.order + 1)
        for n, c in enumerate(self.coeffs):
            if n * j > self.order:
                break
            out[n * j] = _adams_coeff(c, j)
        return Series(out, kind=self.kind)

    def to_epoly(self, context: str = "") -> "Series":
        out = [c.to_epoly(context) if isinstance(c, QPoly) else c for c in self.coeffs]
        return Series(out, kind=EPoly if self.kind else None)

    def to_qpoly(self) -> "Series":
        out = []
        for c in self.coeffs:
            if isinstance(c, EPoly):
                c = c.to_qpoly()
            elif isinstance(c, (int, Fraction)):
                c = QPoly.const(Fraction(c))
            out.append(c)
        return Series(out)


def series_exp(f: Series) -> Series:
    """exp(f) for f with zero constant term, over a Q-algebra.

    Uses n e_n = sum_{k=1}^n k f_k e_{n-k}.
    """
    if not _is_zero(f.coeffs[0]):
        raise BadConstantTerm("series_exp needs a zero constant term")
    e = [1]
    for n in range(1, f.order + 1):
        acc = 0
        for k in range(1, n + 1):
            if not _is_zero(f.coeffs[k]) and not _is_zero(e[n - k]):
                acc = acc + (k * f.coeffs[k]) * e[n - k]
        e.append(_div(acc, n) if not _is_zero(acc) else 0)
    return Series(e, kind=f.kind)


def series_log(A: Series) -> Series:
    """log(A) for A with constant term 1, over a Q-algebra (n l_n = n a_n - sum k l_k a_(n-k))."""
    if A.coeffs[0] != 1:
        raise BadConstantTerm("series_log needs constant term 1")
    lg = [0]
    for n in range(1, A.order + 1):
        acc = n * A.coeffs[n] if not _is_zero(A.coeffs[n]) else 0
        for k in range(1, n):
            if not _is_zero(lg[k]) and not _is_zero(A.coeffs[n - k]):
                acc = acc - (k * lg[k]) * A.coeffs[n - k]
        lg.append(_div(acc, n) if not _is_zero(acc) else 0)
    return Series(lg, kind=A.kind)


# ----------------------------------------------------------------------------
# zeta functions and symmetric powers


def _gen_binom(a: int, n: int) -> int:
    """Binomial coefficient C(a, n) for any integer a and n >= 0."""
    num = 1
    for i in range(n):
        num *= a - i
    return num // factorial(n)


def zeta_series(c, N: int) -> Series:
    """prod over monomials e x^p y^q of c of (1 - x^p y^q t)^(-e), to order N."""
    if not isinstance(c, _HalfLaurent):
        c = EPoly.const(c)
    result = Series.one(N)
    for (p2, q2), e in sorted(c.items()):
        mono = EPoly._raw({(p2, q2): 1})
        # (1 - m t)^(-e) = sum_n C(-e, n) (-m)^n t^n = sum_n C(e+n-1, n) m^n t^n
        factor, power = [], EPoly.const(1)
        for n in range(N + 1):
            factor.append(power * ((-1) ** n * _gen_binom(-e, n)))
            power = power * mono
        result = result * Series(factor)
    return result


@lru_cache(maxsize=4096)
def _sym_class_cached(c: EPoly, n: int) -> EPoly:
    total = QPoly()
    powers = {1: c}
    for alpha in partitions_of(n):
        term = QPoly.const(1)
        denom = 1
        for j, bj in alpha.b.items():
            if j not in powers:
                powers[j] = c.adams(j)
            term = term * powers[j] ** bj
            denom *= j ** bj * factorial(bj)
        total = total + term * Fraction(1, denom)
    return total.to_epoly(f"Sym^{n}")


def sym_class(c, n: int) -> EPoly:
    """E-polynomial of the n-th symmetric power via the partition sum of Adams powers."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not isinstance(c, _HalfLaurent):
        c = EPoly.const(c)
    if isinstance(c, QPoly):
        c = c.to_epoly("sym_class input")
    if n == 0:
        return EPoly.const(1)
    return _sym_class_cached(c, n)


# ----------------------------------------------------------------------------
# plethystic exponential and logarithm


def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def pleth_exp(f: Series) -> Series:
    """exp(sum_j psi_j(f) / j); equals prod_k zeta_{f_k}(t^k)."""
    if not _is_zero(f.coeffs[0]):
        raise BadConstantTerm("pleth_exp needs a zero constant term")
    fq = f.to_qpoly()
    total = Series([QPoly()] * (f.order + 1))
    for j in range(1, f.order + 1):
        total = total + fq.adams(j) * Fraction(1, j)
    return series_exp(total).to_epoly("pleth_exp")


def pleth_log(A: Series) -> Series:
    """Inverse of :func:`pleth_exp`: sum_k mu(k)/k psi_k(log A)."""
    if A.coeffs[0] != 1:
        raise BadConstantTerm(f"pleth_log needs constant term 1, got {A.coeffs[0]}")
    lg = series_log(A.to_qpoly())
    total = Series([QPoly()] * (A.order + 1))
    for k in range(1, A.order + 1):
        mu = _mobius(k)
        if mu:
            total = total + lg.adams(k) * Fraction(mu, k)
    return total.to_epoly("pleth_log")


def zeta_factorize(A: Series) -> list:
    """Classes c_1..c_N with A = prod_k zeta_{c_k}(t^k), peeled off one at a time.

    Returns a list indexed from 0 with ``out[0] = 0``.
    """
    if A.coeffs[0] != 1:
        raise BadConstantTerm(f"zeta_factorize needs constant term 1, got {A.coeffs[0]}")
    N = A.order
    rest = A
    out: list = [EPoly()]
    for k in range(1, N + 1):
        ck = rest[k]
        if not isinstance(ck, _HalfLaurent):
            ck = EPoly.const(ck)
        out.append(ck)
        if ck:
            rest = rest * subst_t(zeta_series(-ck, N // k), EPoly.const(1), k, N)
    return out


def power_exp(A: Series, M, method: str = "plethystic") -> Series:
    """A(t)^M for A with constant term 1."""
    if not isinstance(M, _HalfLaurent):
        M = EPoly.const(M)
    if A.coeffs[0] != 1:
        raise BadConstantTerm(f"power_exp needs constant term 1, got {A.coeffs[0]}")
    if method == "plethystic":
        return pleth_exp(pleth_log(A) * M)
    if method == "zeta":
        N = A.order
        result = Series.one(N)
        for k, ck in enumerate(zeta_factorize(A)):
            if k == 0 or not ck:
                continue
            result = result * subst_t(zeta_series(ck * M, N // k), EPoly.const(1), k, N)
        return result
    raise ValueError(f"unknown method {method!r}")


def subst_t(A: Series, m, k: int, order: int | None = None) -> Series:
    """Substitute t -> m t^k for a monomial m; result truncated at ``order`` (default A's)."""
    if not isinstance(m, _HalfLaurent):
        m = EPoly.const(m)
    if not m.is_monomial():
        raise NotAMonomial(f"subst_t needs a monomial, got {m}")
    if k < 1:
        raise ValueError("k must be >= 1")
    N = A.order if order is None else order
    out = [0] * (N + 1)
    power = EPoly.const(1)
    for n, c in enumerate(A.coeffs):
        if n * k > N:
            break
        if not _is_zero(c):
            out[n * k] = c * power
        power = power * m
    return Series(out, kind=_join_kinds(A.kind, EPoly))
