"""Exact coefficient rings for E-polynomial computations.

Exponents are half-integers and are stored doubled, so the key ``(p2, q2)``
stands for the monomial ``x^(p2/2) y^(q2/2)``.  The Lefschetz class is the
monomial ``xy`` and its square root is ``x^(1/2) y^(1/2)``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from numbers import Rational

from .errors import NonIntegralResult, NotAMonomial, NotDivisible

__all__ = [
    "EPoly",
    "QPoly",
    "MotiveRational",
    "YLaurent",
    "YRational",
    "X",
    "Y",
    "L",
    "LHALF",
    "adams",
    "chi_y",
    "euler",
    "exact_div",
    "mr_chi_y",
    "half",
    "format_half",
    "parse_half",
]


def half(value) -> int:
    """Return twice ``value``, insisting it is a half-integer."""
    v = Fraction(value) * 2
    if v.denominator != 1:
        raise ValueError(f"{value!r} is not a half-integer")
    return int(v)


def format_half(e2: int) -> str:
    return str(e2 // 2) if e2 % 2 == 0 else f"{e2}/2"


def parse_half(text: str) -> int:
    text = str(text).strip()
    if "/" in text:
        num, den = text.split("/")
        if int(den) != 2:
            raise ValueError(f"exponent {text!r} must have denominator 2")
        return int(num)
    return half(Fraction(text))


def _mono_str(p2: int, q2: int) -> str:
    parts = []
    for var, e2 in (("x", p2), ("y", q2)):
        if e2 == 0:
            continue
        if e2 == 2:
            parts.append(var)
        elif e2 % 2 == 0:
            parts.append(f"{var}^{e2 // 2}")
        else:
            parts.append(f"{var}^({e2}/2)")
    return "*".join(parts)


class _HalfLaurent:
    """Sparse Laurent polynomial in x^(1/2), y^(1/2).  Immutable."""

    __slots__ = ("_terms", "_hash")
    _coerce = staticmethod(int)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if c:
                    clean[(int(key[0]), int(key[1]))] = self._coerce(c)
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict):
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c):
        return cls._raw({(0, 0): cls._coerce(c)} if c else {})

    @classmethod
    def mono(cls, p=0, q=0, c=1):
        """Monomial ``c x^p y^q`` with half-integer ``p`` and ``q``."""
        return cls({(half(p), half(q)): c})

    @classmethod
    def lpow(cls, k, c=1):
        """``c * L^k`` for half-integer ``k``."""
        return cls.mono(k, k, c)

    # basic protocol -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, p, q):
        return self._terms.get((half(p), half(q)), 0)

    def coeff2(self, p2: int, q2: int):
        return self._terms.get((p2, q2), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_integral_exponent(self) -> bool:
        return all(p2 % 2 == 0 and q2 % 2 == 0 for p2, q2 in self._terms)

    def constant(self):
        return self._terms.get((0, 0), 0)

    def __eq__(self, other):
        if isinstance(other, _HalfLaurent):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for (p2, q2), c in sorted(self._terms.items()):
            mono = _mono_str(p2, q2)
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    # arithmetic ---------------------------------------------------------
    def _result_type(self, other):
        if isinstance(self, QPoly) or isinstance(other, QPoly):
            return QPoly
        if isinstance(other, Fraction) and other.denominator != 1:
            return QPoly
        return EPoly

    def _lift(self, other):
        if isinstance(other, _HalfLaurent):
            return other
        if isinstance(other, (int, Fraction)):
            if isinstance(other, Fraction) and other.denominator != 1:
                return QPoly.const(other)
            return EPoly.const(int(other))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        cls = self._result_type(o)
        terms = dict(self._terms)
        for k, c in o._terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return cls._raw({k: cls._coerce(v) for k, v in terms.items()})

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return self._result_type(other)._raw({})
            cls = self._result_type(other)
            return cls._raw({k: cls._coerce(c * other) for k, c in self._terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        cls = self._result_type(o)
        a, b = self._terms, o._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for (bp, bq), bc in b.items():
            for (ap, aq), ac in a.items():
                key = (ap + bp, aq + bq)
                out[key] = get(key, 0) + ac * bc
        return cls._raw({k: cls._coerce(v) for k, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            inv = Fraction(1, 1) / other
            return QPoly._raw({k: Fraction(c) * inv for k, c in self._terms.items()})
        if isinstance(other, _HalfLaurent) and other.is_monomial():
            return self * other.inverse_monomial()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse_monomial() ** (-k)
        result = type(self).const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse_monomial(self):
        if len(self._terms) != 1:
            raise NotAMonomial(f"{self} is not a monomial and has no Laurent inverse")
        ((p2, q2), c), = self._terms.items()
        if c in (1, -1):
            return type(self)._raw({(-p2, -q2): self._coerce(c)})
        return QPoly._raw({(-p2, -q2): Fraction(1) / c})

    # specialisations ------------------------------------------------------
    def adams(self, j: int):
        if j < 1:
            raise ValueError("Adams operations are indexed by j >= 1")
        if j == 1:
            return self
        return type(self)._raw({(p2 * j, q2 * j): c for (p2, q2), c in self._terms.items()})

    def chi_y(self) -> "YLaurent":
        out: dict = {}
        for (_, q2), c in self._terms.items():
            out[q2] = out.get(q2, 0) + c
        return YLaurent(out)

    def euler(self):
        return sum(-c if q2 % 2 else c for (_, q2), c in self._terms.items())

    def shift(self, p2: int, q2: int):
        """Multiply by the monomial with doubled exponents (p2, q2)."""
        return type(self)._raw({(a + p2, b + q2): c for (a, b), c in self._terms.items()})

    def min_exponents(self):
        if not self._terms:
            return (0, 0)
        return (min(k[0] for k in self._terms), min(k[1] for k in self._terms))

    def max_exponents(self):
        if not self._terms:
            return (0, 0)
        return (max(k[0] for k in self._terms), max(k[1] for k in self._terms))

    # serialisation ------------------------------------------------------------
    def to_records(self) -> list[dict]:
        return [
            {"p": format_half(p2), "q": format_half(q2), "c": str(c)}
            for (p2, q2), c in sorted(self._terms.items())
        ]

    @classmethod
    def from_records(cls, records) -> "_HalfLaurent":
        terms: dict = {}
        for rec in records:
            key = (parse_half(rec["p"]), parse_half(rec["q"]))
            terms[key] = terms.get(key, 0) + cls._coerce(Fraction(rec["c"]))
        return cls(terms)


class EPoly(_HalfLaurent):
    """Half-exponent Laurent polynomial with integer coefficients."""

    __slots__ = ()
    _coerce = staticmethod(int)

    def to_qpoly(self) -> "QPoly":
        return QPoly._raw({k: Fraction(c) for k, c in self._terms.items()})


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class QPoly(_HalfLaurent):
    """Rational-coefficient twin of :class:`EPoly`, used for intermediates."""

    __slots__ = ()
    _coerce = staticmethod(_frac)

    def to_epoly(self, context: str = "") -> EPoly:
        terms = {}
        for k, c in self._terms.items():
            if c.denominator != 1:
                where = f" in {context}" if context else ""
                raise NonIntegralResult(f"coefficient {c} at {k}{where} is not integral")
            terms[k] = c.numerator
        return EPoly._raw(terms)


X = EPoly.mono(1, 0)
Y = EPoly.mono(0, 1)
L = EPoly.mono(1, 1)
LHALF = EPoly.mono(Fraction(1, 2), Fraction(1, 2))


def adams(c: _HalfLaurent, j: int) -> _HalfLaurent:
    return c.adams(j)


def chi_y(c: _HalfLaurent) -> "YLaurent":
    return c.chi_y()


def euler(c: _HalfLaurent) -> int:
    return c.euler()


def _leading(terms: dict):
    return max(terms)


def exact_div(a: EPoly, b: EPoly) -> EPoly:
    """Exact quotient ``a / b`` in the Laurent ring, or :class:`NotDivisible`.

    Both operands are shifted into the polynomial ring in x^(1/2), y^(1/2)
    with no monomial content, after which long division in lex order either
    terminates with zero remainder or exposes a non-divisible leading term.
    """
    if not b:
        raise ZeroDivisionError("exact_div by the zero polynomial")
    if not a:
        return EPoly()
    if b.is_monomial():
        ((bp, bq), bc), = b.items()
        out = {}
        for (p2, q2), c in a.items():
            quo, rem = divmod(c, bc)
            if rem:
                raise NotDivisible(f"coefficient {c} not divisible by {bc}")
            out[(p2 - bp, q2 - bq)] = quo
        return EPoly._raw(out)

    bp0, bq0 = b.min_exponents()
    ap0, aq0 = a.min_exponents()
    bt = {(p - bp0, q - bq0): c for (p, q), c in b.items()}
    rem = {(p - ap0, q - aq0): c for (p, q), c in a.items()}
    lead_b = _leading(bt)
    lc_b = bt[lead_b]
    quot: dict = {}
    while rem:
        lead_r = _leading(rem)
        dp, dq = lead_r[0] - lead_b[0], lead_r[1] - lead_b[1]
        if dp < 0 or dq < 0:
            raise NotDivisible(f"{a} is not divisible by {b}")
        c, r = divmod(rem[lead_r], lc_b)
        if r:
            raise NotDivisible(f"{a} is not divisible by {b} (coefficient {rem[lead_r]})")
        quot[(dp, dq)] = c
        for (p, q), bc in bt.items():
            key = (p + dp, q + dq)
            v = rem.get(key, 0) - c * bc
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return EPoly._raw(quot).shift(ap0 - bp0, aq0 - bq0)


# --------------------------------------------------------------------------
# one-variable specialisations


class YLaurent:
    """Laurent polynomial in y^(1/2) with integer coefficients (doubled keys)."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = {int(k): int(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def mono(cls, e, c=1):
        return cls({half(e): c})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def geometric(cls, n: int, step: int = 1):
        """1 + y^step + ... + y^((n-1) step)."""
        return cls({2 * step * i: 1 for i in range(n)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, e):
        return self._terms.get(half(e), 0)

    def __eq__(self, other):
        if isinstance(other, YLaurent):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = YLaurent.const(other)
        if not isinstance(other, YLaurent):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return YLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return YLaurent({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = YLaurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return YLaurent({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, YLaurent):
            return NotImplemented
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return YLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = YLaurent.const(1)
        for _ in range(k):
            result = result * self
        return result

    def adams(self, j: int) -> "YLaurent":
        return YLaurent({k * j: c for k, c in self._terms.items()})

    def at_one(self) -> int:
        """Value at y^(1/2) = 1."""
        return sum(self._terms.values())

    def euler(self) -> int:
        """Value at y^(1/2) = -1."""
        return sum(-c if k % 2 else c for k, c in self._terms.items())

    def is_palindromic(self, center2: int | None = None) -> bool:
        """Symmetric under y^e <-> y^(center - e); centre defaults to the span midpoint."""
        if not self._terms:
            return True
        if center2 is None:
            center2 = min(self._terms) + max(self._terms)
        return all(self._terms.get(center2 - k, 0) == c for k, c in self._terms.items())

    def to_records(self) -> list[dict]:
        return [{"e": format_half(k), "c": str(c)} for k, c in sorted(self._terms.items())]

    @classmethod
    def from_records(cls, records) -> "YLaurent":
        out: dict = {}
        for rec in records:
            k = parse_half(rec["e"])
            out[k] = out.get(k, 0) + int(rec["c"])
        return cls(out)

    def __repr__(self):
        return f"YLaurent({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*y^({format_half(k)})" for k, c in sorted(self._terms.items()))


class YRational:
    """Quotient of two :class:`YLaurent`; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: YLaurent, den: YLaurent | None = None):
        den = YLaurent.const(1) if den is None else den
        if not den:
            raise ZeroDivisionError("YRational with zero denominator")
        self.num = num
        self.den = den

    def __eq__(self, other):
        if isinstance(other, (YLaurent, int)):
            other = YRational(other if isinstance(other, YLaurent) else YLaurent.const(other))
        if not isinstance(other, YRational):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, YLaurent):
            other = YRational(other)
        if not isinstance(other, YRational):
            return NotImplemented
        if self.den == other.den:
            return YRational(self.num + other.num, self.den)
        return YRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, YLaurent):
            other = YRational(other)
        if not isinstance(other, YRational):
            return NotImplemented
        return YRational(self.num * other.num, self.den * other.den)

    def to_json(self) -> dict:
        return {"num": self.num.to_records(), "den": self.den.to_records()}

    def __repr__(self):
        return f"YRational(({self.num}) / ({self.den}))"


# --------------------------------------------------------------------------
# localised classes with (L^s - 1) denominators


class MotiveRational:
    """``num / (L^den_lpow * prod (L^s - 1))`` with the denominator kept factored."""

    __slots__ = ("num", "den_lpow2", "den_factors")

    def __init__(self, num: EPoly, den_lpow=0, den_factors=()):
        if isinstance(num, int):
            num = EPoly.const(num)
        factors = tuple(sorted(int(s) for s in den_factors))
        if any(s < 1 for s in factors):
            raise ValueError("denominator factors (L^s - 1) need s >= 1")
        self.num = num
        self.den_lpow2 = half(den_lpow)
        self.den_factors = factors

    @property
    def den_lpow(self) -> Fraction:
        return Fraction(self.den_lpow2, 2)

    def denominator(self) -> EPoly:
        out = EPoly.mono(self.den_lpow, self.den_lpow)
        for s in self.den_factors:
            out = out * (L ** s - 1)
        return out

    def __eq__(self, other):
        if isinstance(other, (EPoly, int)):
            other = MotiveRational(other)
        if not isinstance(other, MotiveRational):
            return NotImplemented
        return self.num * other.denominator() == other.num * self.denominator()

    __hash__ = None

    def __mul__(self, other):
        if isinstance(other, (EPoly, int)):
            other = MotiveRational(other)
        if not isinstance(other, MotiveRational):
            return NotImplemented
        return MotiveRational(
            self.num * other.num,
            Fraction(self.den_lpow2 + other.den_lpow2, 2),
            self.den_factors + other.den_factors,
        )

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (EPoly, int)):
            other = MotiveRational(other)
        if not isinstance(other, MotiveRational):
            return NotImplemented
        mine, theirs = Counter(self.den_factors), Counter(other.den_factors)
        common = mine | theirs
        lp2 = max(self.den_lpow2, other.den_lpow2)

        def lift(m: MotiveRational, have: Counter) -> EPoly:
            out = m.num.shift(lp2 - m.den_lpow2, lp2 - m.den_lpow2)
            for s, k in (common - have).items():
                out = out * (L ** s - 1) ** k
            return out

        num = lift(self, mine) + lift(other, theirs)
        return MotiveRational(num, Fraction(lp2, 2), common.elements())

    __radd__ = __add__

    def __repr__(self):
        den = "".join(f"(L^{s}-1)" for s in self.den_factors)
        lp = f"L^{format_half(self.den_lpow2)}" if self.den_lpow2 else ""
        return f"MotiveRational(({self.num}) / ({lp}{den or '1' if not lp else den}))"


def mr_chi_y(m: MotiveRational) -> YRational:
    den = YLaurent({m.den_lpow2: 1})
    for s in m.den_factors:
        den = den * (YLaurent.mono(s) - 1)
    return YRational(m.num.chi_y(), den)
