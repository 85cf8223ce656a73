"""Exact arithmetic in Q_p and its ramified quadratic extension Q_p(pi).

Conventions: the valuation is normalized so that v(p) = 1 and the norm so
that |x| = p^(-v(x)).  The uniformizer pi of the quadratic extension
satisfies pi^2 = p, hence v(pi) = 1/2; every representable valuation lies
in (1/2)Z.

Elements are stored exactly as x = rat + pi_part * pi with Fraction
components, so field arithmetic never loses digits.  The ``prec``
attribute is the absolute certification cap N: the value is treated as
known modulo p^N, anything with v(x) >= N is indistinguishable from zero
at that precision, and serialization truncates to N digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PrecisionExhaustedError

INF = float("inf")
NEG_INF = float("-inf")

DEFAULT_PREC = 64

_HALF = Fraction(1, 2)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def vp_int(n: int, p: int):
    """p-adic valuation of an integer; INF for 0."""
    if n == 0:
        return INF
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return Fraction(v)


def vp_fraction(x, p: int):
    x = Fraction(x)
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def vp_factorial(k: int, p: int) -> int:
    """v_p(k!) by Legendre's formula."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    total = 0
    q = p
    while q <= k:
        total += k // q
        q *= p
    return total


def _digits_of_unit(u: Fraction, p: int, k: int) -> int:
    """Canonical representative of the p-adic unit u modulo p^k."""
    pk = p ** k
    num = u.numerator % pk
    den = u.denominator % pk
    return num * pow(den, -1, pk) % pk


@dataclass(frozen=True)
class PadicNumber:
    """Element of Q_p (pi_part = 0) or Q_p(pi), held exactly.

    ``val`` applies the precision cutoff mandated by the data model: it is
    +inf exactly when the element is zero at precision ``prec``.  The raw
    valuation of the stored representative is ``exact_valuation``.
    """

    p: int
    rat: Fraction
    pi_part: Fraction = Fraction(0)
    prec: int = field(default=DEFAULT_PREC, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.prec < 1:
            raise ValueError("precision must be >= 1")
        object.__setattr__(self, "rat", Fraction(self.rat))
        object.__setattr__(self, "pi_part", Fraction(self.pi_part))

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, p: int, value, prec: int = DEFAULT_PREC) -> "PadicNumber":
        return cls(p, Fraction(value), Fraction(0), prec)

    @classmethod
    def zero(cls, p: int, prec: int = DEFAULT_PREC) -> "PadicNumber":
        return cls(p, Fraction(0), Fraction(0), prec)

    @classmethod
    def one(cls, p: int, prec: int = DEFAULT_PREC) -> "PadicNumber":
        return cls(p, Fraction(1), Fraction(0), prec)

    @classmethod
    def uniformizer(cls, p: int, prec: int = DEFAULT_PREC) -> "PadicNumber":
        """pi with pi^2 = p."""
        return cls(p, Fraction(0), Fraction(1), prec)

    # -- structure ----------------------------------------------------

    @property
    def exact_valuation(self):
        va = vp_fraction(self.rat, self.p)
        vb = vp_fraction(self.pi_part, self.p)
        if vb is not INF:
            vb = vb + _HALF
        return min(va, vb)

    @property
    def val(self):
        v = self.exact_valuation
        return INF if v >= self.prec else v

    @property
    def is_exact_zero(self) -> bool:
        return self.rat == 0 and self.pi_part == 0

    def is_zero_at_prec(self) -> bool:
        return self.exact_valuation >= self.prec

    @property
    def is_ramified(self) -> bool:
        return self.pi_part != 0

    @property
    def unit_digits(self) -> int:
        """Integer encoding of the unit part x / pi^(2 val).

        For elements of Q_p this is the usual unit modulo p^prec.  For
        ramified elements the unit A + B*pi is encoded by interleaving the
        base-p digits of A and B (digit c_k of pi^k maps to weight p^k).
        """
        v = self.exact_valuation
        if v is INF:
            return 0
        twov = 2 * v
        t, odd = divmod(int(twov), 2)
        pt = Fraction(self.p) ** t
        if odd == 0:
            a_unit = self.rat / pt
            b_unit = self.pi_part / pt
        else:
            a_unit = self.pi_part / pt
            b_unit = self.rat / (pt * self.p)
        if b_unit == 0:
            return _digits_of_unit(a_unit, self.p, self.prec)
        a = _digits_of_unit(a_unit, self.p, self.prec) if a_unit else 0
        b = _digits_of_unit(b_unit, self.p, self.prec) if b_unit else 0
        out = 0
        for i in range(self.prec):
            out += (a % self.p) * self.p ** (2 * i)
            out += (b % self.p) * self.p ** (2 * i + 1)
            a //= self.p
            b //= self.p
        return out

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicNumber(self.p, Fraction(other), Fraction(0), self.prec)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return PadicNumber(self.p, self.rat + o.rat, self.pi_part + o.pi_part,
                           min(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        return PadicNumber(self.p, -self.rat, -self.pi_part, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.rat, self.pi_part, o.rat, o.pi_part
        return PadicNumber(self.p, a * c + self.p * b * d, a * d + b * c,
                           min(self.prec, o.prec))

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.is_exact_zero:
            raise ZeroDivisionError("inverse of zero")
        a, b = self.rat, self.pi_part
        nrm = a * a - self.p * b * b  # nonzero: v(a^2) is even, v(p b^2) odd
        return PadicNumber(self.p, a / nrm, -b / nrm, self.prec)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = PadicNumber.one(self.p, self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        body = str(self.rat)
        if self.pi_part:
            body += f" + {self.pi_part}*pi"
        return f"<{self.p}-adic {body} (prec {self.prec})>"

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        v = self.exact_valuation
        out = {
            "p": self.p,
            "val": "inf" if v is INF else str(Fraction(v)),
            "unit": str(self.unit_digits),
            "prec": self.prec,
        }
        if self.is_ramified:
            out["ext"] = True
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PadicNumber":
        p = int(data["p"])
        prec = int(data["prec"])
        if data["val"] == "inf":
            return cls.zero(p, prec)
        v = Fraction(data["val"])
        unit = int(data["unit"])
        if not data.get("ext", False) and v.denominator == 1:
            return cls(p, Fraction(unit) * Fraction(p) ** v, Fraction(0), prec)
        digits_a, digits_b = [], []
        u = unit
        while u:
            digits_a.append(u % p)
            u //= p
            digits_b.append(u % p)
            u //= p
        a = sum(d * p ** i for i, d in enumerate(digits_a))
        b = sum(d * p ** i for i, d in enumerate(digits_b))
        t, odd = divmod(int(2 * v), 2)
        pt = Fraction(p) ** t
        if odd == 0:
            return cls(p, a * pt, b * pt, prec)
        return cls(p, b * pt * p, a * pt, prec)


def valuation(x: PadicNumber):
    """v(x), or +inf when x is zero at its working precision."""
    return x.val


def binom_fractional(m, k: int, p: int, prec: int = DEFAULT_PREC) -> PadicNumber:
    """Exact generalized binomial coefficient C(m, k) = m(m-1)...(m-k+1)/k!.

    For m = 1/p^(n-1) the valuation is -k(n-1) - v_p(k!).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    m = Fraction(m)
    num = Fraction(1)
    for i in range(k):
        num *= m - i
    return PadicNumber(p, num / math.factorial(k), Fraction(0), prec)


def integer_lift_mod(value: Fraction, p: int, n: int) -> int:
    """Canonical representative in [0, p^n) of a p-integral rational mod p^n."""
    if vp_fraction(value, p) is not INF and vp_fraction(value, p) < 0:
        raise ValueError("value is not p-integral")
    pk = p ** n
    num = value.numerator % pk
    den = value.denominator % pk
    return num * pow(den, -1, pk) % pk


def padic_digit_string(x: PadicNumber, cutoff, symbol: str = "p") -> str:
    """Render x as a digit expansion in powers of p up to the cutoff valuation.

    Produces strings like ``"p + 2*p^3 + O(p^11)"``; the O-term is omitted
    when ``cutoff`` is INF.  Only Q_p elements are rendered.
    """
    if x.is_ramified:
        raise ValueError("digit strings are only rendered for Q_p elements")
    terms = []
    v = x.exact_valuation
    if v is not INF and (cutoff is INF or v < cutoff):
        k = int(v)
        rest = x.rat
        limit = x.prec if cutoff is INF else min(x.prec, int(math.ceil(cutoff)))
        while rest != 0 and k < limit:
            unit = rest / Fraction(x.p) ** k
            if vp_fraction(unit, x.p) == 0:
                d = _digits_of_unit(unit, x.p, 1)
                if d:
                    if k == 0:
                        terms.append(str(d))
                    elif k == 1:
                        terms.append(f"{symbol}" if d == 1 else f"{d}*{symbol}")
                    else:
                        terms.append(f"{symbol}^{k}" if d == 1 else f"{d}*{symbol}^{k}")
                    rest = rest - d * Fraction(x.p) ** k
            k += 1
    body = " + ".join(terms) if terms else "0"
    if cutoff is INF:
        return body
    tail = f"O({symbol}^{Fraction(cutoff)})"
    return tail if body == "0" else f"{body} + {tail}"


def require_certified(condition: bool, message: str):
    if not condition:
        raise PrecisionExhaustedError(message)
