"""Power series with exact leading coefficients and certified affine tail bounds.

A BoundedSeries holds exact coefficients for degrees 0..D together with an
optional TailBound (alpha, beta) certifying v(a_k) >= alpha*k + beta for all
k > D.  ``tail is None`` asserts that every coefficient beyond D vanishes,
i.e. the series is a polynomial.  All bound propagation is conservative: an
operation may weaken a tail but never claim more than it can prove.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import PrecisionExhaustedError, UndecidableSlopeError
from .padic import DEFAULT_PREC, NEG_INF, PadicNumber, binom_fractional


@dataclass(frozen=True)
class TailBound:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))

    def at(self, k) -> Fraction:
        return self.alpha * k + self.beta

    def to_json(self) -> dict:
        return {"alpha": str(self.alpha), "beta": str(self.beta)}

    @classmethod
    def from_json(cls, data: dict) -> "TailBound":
        return cls(Fraction(data["alpha"]), Fraction(data["beta"]))


def _as_coeff(p: int, c, prec: int) -> PadicNumber:
    if isinstance(c, PadicNumber):
        if c.p != p:
            raise ValueError("mixed primes in series")
        return c
    return PadicNumber(p, Fraction(c), Fraction(0), prec)


@dataclass(frozen=True)
class BoundedSeries:
    p: int
    coeffs: tuple
    tail: Optional[TailBound] = None

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("series needs at least the degree-0 coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        for c in self.coeffs:
            if not isinstance(c, PadicNumber) or c.p != self.p:
                raise ValueError("coefficients must be PadicNumbers over the same p")

    @classmethod
    def build(cls, p: int, coeffs: Sequence, tail: Optional[TailBound] = None,
              prec: int = DEFAULT_PREC) -> "BoundedSeries":
        return cls(p, tuple(_as_coeff(p, c, prec) for c in coeffs), tail)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> PadicNumber:
        if j <= self.degree:
            return self.coeffs[j]
        if self.tail is None:
            return PadicNumber.zero(self.p)
        raise PrecisionExhaustedError(
            f"coefficient {j} lies beyond the certified degree {self.degree}")

    def ord(self) -> Optional[int]:
        """Index of the first nonzero coefficient; None for the zero polynomial."""
        for j, c in enumerate(self.coeffs):
            if not c.is_exact_zero:
                return j
        if self.tail is None:
            return None
        raise PrecisionExhaustedError(
            "order not certified: all explicit coefficients vanish but a tail remains")

    def is_zero(self) -> bool:
        return self.tail is None and all(c.is_exact_zero for c in self.coeffs)

    def explicit_points(self):
        """(j, v(a_j)) for the nonzero explicit coefficients."""
        return [(j, c.exact_valuation) for j, c in enumerate(self.coeffs)
                if not c.is_exact_zero]

    def minorant_at(self, a: Fraction) -> Fraction:
        """Largest b with v(a_j) >= a*j + b for every certified coefficient.

        Requires a <= tail.alpha when a tail is present.
        """
        a = Fraction(a)
        best = None
        for j, v in self.explicit_points():
            cand = v - a * j
            best = cand if best is None else min(best, cand)
        if self.tail is not None:
            if a > self.tail.alpha:
                raise ValueError("slope exceeds the certified tail slope")
            j0 = self.degree + 1
            cand = self.tail.at(j0) - a * j0
            best = cand if best is None else min(best, cand)
        if best is None:
            raise ValueError("zero series has no affine minorant")
        return best

    # -- ring operations ----------------------------------------------

    def scalar_mul(self, c) -> "BoundedSeries":
        c = _as_coeff(self.p, c, DEFAULT_PREC)
        if c.is_exact_zero:
            return BoundedSeries(self.p, (PadicNumber.zero(self.p),), None)
        vc = c.exact_valuation
        tail = None if self.tail is None else TailBound(self.tail.alpha,
                                                        self.tail.beta + vc)
        return BoundedSeries(self.p, tuple(c * a for a in self.coeffs), tail)

    def scalar_add(self, c) -> "BoundedSeries":
        c = _as_coeff(self.p, c, DEFAULT_PREC)
        coeffs = (self.coeffs[0] + c,) + self.coeffs[1:]
        return BoundedSeries(self.p, coeffs, self.tail)

    def __add__(self, other: "BoundedSeries") -> "BoundedSeries":
        if self.p != other.p:
            raise ValueError("mixed primes")
        f, g = self, other
        if f.tail is None and g.tail is None:
            n = max(f.degree, g.degree) + 1
            zero = PadicNumber.zero(self.p)
            coeffs = tuple(
                (f.coeffs[j] if j <= f.degree else zero) +
                (g.coeffs[j] if j <= g.degree else zero) for j in range(n))
            return BoundedSeries(self.p, coeffs, None)
        alpha = min(t.alpha for t in (f.tail, g.tail) if t is not None)
        if f.tail is not None and g.tail is not None:
            d_out = min(f.degree, g.degree)
        else:
            d_out = g.degree if g.tail is not None else f.degree
        zero = PadicNumber.zero(self.p)
        coeffs = tuple(
            (f.coeffs[j] if j <= f.degree else zero) +
            (g.coeffs[j] if j <= g.degree else zero) for j in range(d_out + 1))
        beta = None
        for s in (f, g):
            if s.tail is not None:
                cand = s.tail.beta + (s.tail.alpha - alpha) * (s.degree + 1)
                beta = cand if beta is None else min(beta, cand)
            for j, v in s.explicit_points():
                # explicit coefficients beyond the common explicit degree
                if j > d_out:
                    beta = (v - alpha * j) if beta is None else min(beta, v - alpha * j)
        return BoundedSeries(self.p, coeffs, TailBound(alpha, beta))

    def __sub__(self, other: "BoundedSeries") -> "BoundedSeries":
        return self + other.scalar_mul(-1)

    def mul(self, other: "BoundedSeries", trunc: Optional[int] = None) -> "BoundedSeries":
        if self.p != other.p:
            raise ValueError("mixed primes")
        f, g = self, other
        if f.is_zero() or g.is_zero():
            return BoundedSeries(self.p, (PadicNumber.zero(self.p),), None)
        of = f.ord() if f.tail is None else _ord_or_zero(f)
        og = g.ord() if g.tail is None else _ord_or_zero(g)
        if f.tail is None and g.tail is None:
            d_out = f.degree + g.degree
            tail = None
        else:
            d_out = min(
                g.degree + of if g.tail is not None else f.degree + g.degree,
                f.degree + og if f.tail is not None else f.degree + g.degree)
            a = min(t.alpha for t in (f.tail, g.tail) if t is not None)
            tail = TailBound(a, f.minorant_at(a) + g.minorant_at(a))
        if trunc is not None:
            d_out = min(d_out, trunc)
        zero = PadicNumber.zero(self.p)
        out = [zero] * (d_out + 1)
        for i, ci in enumerate(f.coeffs):
            if ci.is_exact_zero or i > d_out:
                continue
            for j, cj in enumerate(g.coeffs):
                if i + j > d_out:
                    break
                if not cj.is_exact_zero:
                    out[i + j] = out[i + j] + ci * cj
        return BoundedSeries(self.p, tuple(out), tail)

    def __mul__(self, other):
        if isinstance(other, BoundedSeries):
            return self.mul(other)
        return self.scalar_mul(other)

    def truncate(self, d: int) -> "BoundedSeries":
        if d >= self.degree:
            return self
        dropped = [(j, v) for j, v in self.explicit_points() if j > d]
        if self.tail is None and not dropped:
            return BoundedSeries(self.p, self.coeffs[: d + 1], None)
        if self.tail is None:
            alpha = Fraction(0)
            beta = min(v - alpha * j for j, v in dropped)
            return BoundedSeries(self.p, self.coeffs[: d + 1], TailBound(alpha, beta))
        alpha = self.tail.alpha
        beta = self.tail.beta
        for j, v in dropped:
            beta = min(beta, v - alpha * j)
        return BoundedSeries(self.p, self.coeffs[: d + 1], TailBound(alpha, beta))

    def rescale(self, c) -> "BoundedSeries":
        """Substitution X -> c*X."""
        c = _as_coeff(self.p, c, DEFAULT_PREC)
        if c.is_exact_zero:
            return BoundedSeries(self.p, (self.coeffs[0],), None)
        vc = c.exact_valuation
        coeffs = tuple(a * c ** j for j, a in enumerate(self.coeffs))
        tail = None if self.tail is None else TailBound(self.tail.alpha + vc,
                                                        self.tail.beta)
        return BoundedSeries(self.p, coeffs, tail)

    def derivative(self) -> "BoundedSeries":
        if self.degree == 0:
            coeffs = (PadicNumber.zero(self.p),)
        else:
            coeffs = tuple(self.coeffs[j] * j for j in range(1, self.degree + 1))
        tail = None if self.tail is None else TailBound(
            self.tail.alpha, self.tail.alpha + self.tail.beta)
        return BoundedSeries(self.p, coeffs, tail)

    def inverse(self, trunc: Optional[int] = None) -> "BoundedSeries":
        """Multiplicative inverse of a unit series (nonzero constant term)."""
        c0 = self.coeffs[0]
        if c0.is_exact_zero:
            raise ZeroDivisionError("inverse of a series with zero constant term")
        d = self.degree if trunc is None else min(trunc, self.degree)
        inv0 = c0.inverse()
        out = [inv0]
        for j in range(1, d + 1):
            acc = PadicNumber.zero(self.p)
            for i in range(1, j + 1):
                if i <= self.degree and not self.coeffs[i].is_exact_zero:
                    acc = acc + self.coeffs[i] * out[j - i]
            out.append(-inv0 * acc)
        tail = None
        if self.tail is not None or any(not c.is_exact_zero for c in self.coeffs[1:]):
            # 1/f = (1/c0) * sum h^k with h = 1 - f/c0, ord(h) >= 1
            h = self.scalar_mul(inv0).scalar_add(-1).scalar_mul(-1)
            oh = h.ord() if h.tail is None else max(1, _ord_or_zero(h))
            if oh is not None:
                a = h.tail.alpha if h.tail is not None else Fraction(0)
                b = h.minorant_at(a)
                if b >= 0:
                    tail = TailBound(a, b - c0.exact_valuation)
                else:
                    tail = TailBound(a + b / oh, -c0.exact_valuation)
        return BoundedSeries(self.p, tuple(out), tail)

    def to_json(self) -> dict:
        return {
            "coeffs": [c.to_json() for c in self.coeffs],
            "tail": None if self.tail is None else self.tail.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoundedSeries":
        coeffs = tuple(PadicNumber.from_json(c) for c in data["coeffs"])
        tail = None if data.get("tail") is None else TailBound.from_json(data["tail"])
        return cls(coeffs[0].p, coeffs, tail)


def _ord_or_zero(f: BoundedSeries) -> int:
    for j, c in enumerate(f.coeffs):
        if not c.is_exact_zero:
            return j
    return 0  # conservative when only the tail carries terms


def geometric_series(p: int, degree: int) -> BoundedSeries:
    """sum_k X^k to the given explicit degree, with the exact unit tail."""
    one = PadicNumber.one(p)
    return BoundedSeries(p, (one,) * (degree + 1), TailBound(Fraction(0), Fraction(0)))


def _root_tail(u: BoundedSeries, e: int, m: int, p: int) -> TailBound:
    """Certified tail for sum_k C(1/p^m, k) u^k given u's coefficient data.

    Maximizes the certified slope over supporting lines (a, b) of u's
    valuation constraints; v(C(1/p^m, k)) = -kM + s_p(k)/(p-1) with
    M = m + 1/(p-1) turns each line into an output tail through
    min_k k(b - M) over 1 <= k <= floor(j/e).
    """
    M = Fraction(m) + Fraction(1, p - 1)
    one_over = Fraction(1, p - 1)
    cons = [(Fraction(j), Fraction(v)) for j, v in u.explicit_points()]
    a_cap = None
    if u.tail is not None:
        j0 = Fraction(u.degree + 1)
        cons.append((j0, u.tail.at(j0)))
        a_cap = u.tail.alpha
    if not cons:
        raise PrecisionExhaustedError("root tail needs at least one certified term")

    def bmax(a):
        return min(w - a * j for j, w in cons)

    candidates = set()
    for i in range(len(cons)):
        ji, wi = cons[i]
        candidates.add((wi - M) / ji)
        for k in range(i + 1, len(cons)):
            jk, wk = cons[k]
            if ji != jk:
                candidates.add((wi - wk) / (ji - jk))
    if a_cap is not None:
        candidates.add(a_cap)
        candidates = {a for a in candidates if a <= a_cap}
        if not candidates:
            candidates = {a_cap}

    best = None
    for a in candidates:
        b = bmax(a)
        if b >= M:
            key = (a, b - M + one_over)
        else:
            key = (a + (b - M) / e, one_over)
        if best is None or key > best:
            best = key
    return TailBound(best[0], best[1])


def series_p_power_root(f: BoundedSeries, m: int) -> BoundedSeries:
    """Binomial-series expansion of f^(1/p^m) for f with f(0) = 1.

    Explicit coefficients are exact; the output tail is certified from the
    valuations v(C(1/p^m, k)) = -km - v_p(k!) and u = f - 1.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    p = f.p
    if f.coeffs[0] != PadicNumber.one(p):
        raise ValueError("series_p_power_root requires constant term 1")
    if m == 0:
        return f
    u = BoundedSeries(p, (PadicNumber.zero(p),) + f.coeffs[1:], f.tail)
    if u.is_zero():
        return BoundedSeries(p, (PadicNumber.one(p),), None)
    e = u.ord()
    if e is None:
        raise PrecisionExhaustedError(
            "cannot certify the order of f - 1 at the explicit degree")
    d = f.degree
    acc = [PadicNumber.zero(p)] * (d + 1)
    acc[0] = PadicNumber.one(p)
    power = BoundedSeries(p, (PadicNumber.one(p),), None)
    for k in range(1, d // e + 1):
        power = power.mul(u, trunc=d)
        ck = binom_fractional(Fraction(1, p ** m), k, p)
        for j in range(k * e, d + 1):
            if j <= power.degree and not power.coeffs[j].is_exact_zero:
                acc[j] = acc[j] + ck * power.coeffs[j]
    return BoundedSeries(p, tuple(acc), _root_tail(u, e, m, p))


def convergence_logradius(f: BoundedSeries):
    """Certified infimum rho such that f converges on every ball point of
    log-radius > rho (rho = -log_p r).

    Returns NEG_INF for polynomials (entire), else -tail.alpha.  Raises
    UndecidableSlopeError when an explicit coefficient undercuts the tail
    line, i.e. the finite data contradicts the certificate's critical slope.
    """
    if f.tail is None:
        return NEG_INF
    for j, v in f.explicit_points():
        if j >= 1 and v < f.tail.at(j):
            raise UndecidableSlopeError(
                f"coefficient {j} has valuation {v} below the tail line "
                f"{f.tail.at(j)}")
    return -f.tail.alpha
