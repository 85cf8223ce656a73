"""Currents on the Tate-curve tree and their function/differential realizations.

A current assigns values to cusp edges e_j (over the grid points q^j) and
spine edges e'_j subject to c(e'_{j+1}) = c(e'_j) + c(e_{j+1}).  Window
currents are finitely supported modifications of a flat current; periodic
currents repeat with period l, which forces the cusp values to sum to zero
over a period.

alpha realizes an integer current as an invertible function up to scalar,

    alpha(c) = x^{c(e'_0)} * prod_{j>=1} ((x-q^j)/x)^{c(e_j)}
                            * prod_{j<=0} ((x-q^j)/q^j)^{c(e_j)},

and delta = dlog o alpha extends Z_p-linearly to

    delta(c) = c(e'_0) dx/x + sum_{j>=1} c(e_j) (dx/(x-q^j) - dx/x)
                            + sum_{j<=0} c(e_j) dx/(x-q^j).

Every truncated evaluation carries a certified lower bound on the valuation
of the discarded tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple, Union

from .berkovich import BallPoint, seminorm
from .errors import (NonStabilizedError, PoleCollisionError,
                     PrecisionExhaustedError, TailCertificateError)
from .padic import INF, PadicNumber, binom_fractional, valuation, vp_fraction
from .series import BoundedSeries, TailBound
from .torsor import RamifiedGerm, splitting_logradius_numeric

Value = Union[int, Fraction]

RING_Z = "Z"
RING_ZP = "Zp"


@dataclass(frozen=True)
class TateCurve:
    """G_m / q^Z with |q| < 1."""

    q: PadicNumber

    def __post_init__(self):
        v = self.q.exact_valuation
        if not (v is not INF and 0 < v):
            raise ValueError("Tate parameter needs 0 < v(q) < inf")

    @property
    def p(self) -> int:
        return self.q.p

    def grid(self, j: int) -> PadicNumber:
        return self.q ** j


def _ring_of(values) -> str:
    return RING_Z if all(isinstance(v, int) for v in values) else RING_ZP


@dataclass(frozen=True)
class Current:
    """ring in {"Z", "Zp", "Z/nZ"}; period None means window-supported."""

    ring: str
    window: Tuple[int, int]
    cusp: Tuple[Tuple[int, Value], ...]
    spine: Tuple[Tuple[int, Value], ...]
    period: Optional[int] = None
    modulus: Optional[int] = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def windowed(cls, cusp: Dict[int, Value], left_spine: Value = 0,
                 ring: Optional[str] = None, modulus: Optional[int] = None) -> "Current":
        cusp = {j: v for j, v in cusp.items() if v != 0}
        if cusp:
            jmin, jmax = min(cusp), max(cusp)
        else:
            jmin = jmax = 0
        spine = {jmin - 1: left_spine}
        run = left_spine
        for j in range(jmin, jmax + 1):
            run = run + cusp.get(j, 0)
            spine[j] = run
        ring = ring or _ring_of(list(cusp.values()) + [left_spine])
        return cls(ring=ring, window=(jmin, jmax),
                   cusp=tuple(sorted(cusp.items())),
                   spine=tuple(sorted(spine.items())),
                   period=None, modulus=modulus)

    @classmethod
    def periodic(cls, period: int, cusp: Dict[int, Value], spine0: Value = 0,
                 ring: Optional[str] = None, modulus: Optional[int] = None) -> "Current":
        if period < 1:
            raise ValueError("period must be positive")
        cusp_full = {j: cusp.get(j, 0) for j in range(period)}
        total = sum(cusp_full.values())
        if (total != 0) if modulus is None else (total % modulus != 0):
            raise ValueError("periodic current needs cusp values summing to 0")
        spine = {0: spine0}
        run = spine0
        for j in range(1, period):
            run = run + cusp_full[j]
            spine[j] = run
        ring = ring or _ring_of(list(cusp_full.values()) + [spine0])
        return cls(ring=ring, window=(0, period - 1),
                   cusp=tuple(sorted(cusp_full.items())),
                   spine=tuple(sorted(spine.items())),
                   period=period, modulus=modulus)

    @classmethod
    def zero(cls) -> "Current":
        return cls.windowed({})

    # -- access ----------------------------------------------------------

    @property
    def cusp_dict(self) -> Dict[int, Value]:
        return dict(self.cusp)

    @property
    def spine_dict(self) -> Dict[int, Value]:
        return dict(self.spine)

    @property
    def is_window_supported(self) -> bool:
        return self.period is None

    def cusp_at(self, j: int) -> Value:
        if self.period is not None:
            return self.cusp_dict.get(j % self.period, 0)
        return self.cusp_dict.get(j, 0)

    def spine_at(self, j: int) -> Value:
        sp = self.spine_dict
        if self.period is not None:
            return sp[j % self.period]
        jmin, jmax = self.window
        if j < jmin - 1:
            return sp[jmin - 1]
        if j > jmax:
            return sp[jmax]
        return sp[j]

    def support(self) -> Tuple[int, ...]:
        return tuple(j for j, v in self.cusp if v != 0)

    @property
    def left_base(self) -> Value:
        """Constant spine value left of the window (window currents only)."""
        if self.period is not None:
            raise ValueError("periodic currents have no left base")
        return self.spine_dict[self.window[0] - 1]

    # -- module structure -------------------------------------------------

    def scale(self, c: Value) -> "Current":
        if self.modulus is not None:
            c = int(c) % self.modulus
            scl = lambda v: (v * c) % self.modulus
        else:
            scl = lambda v: v * c
        cusp = {j: scl(v) for j, v in self.cusp}
        spine = {j: scl(v) for j, v in self.spine}
        ring = self.ring
        if self.modulus is None:
            ring = _ring_of(list(cusp.values()) + list(spine.values()))
        return Current(ring=ring, window=self.window,
                       cusp=tuple(sorted(cusp.items())),
                       spine=tuple(sorted(spine.items())),
                       period=self.period, modulus=self.modulus)

    def __add__(self, other: "Current") -> "Current":
        if self.modulus != other.modulus:
            raise ValueError("mixed moduli")
        if self.period is None and other.period is None:
            cusp = self.cusp_dict
            for j, v in other.cusp:
                cusp[j] = cusp.get(j, 0) + v
            return Current.windowed(cusp, left_spine=self.left_base + other.left_base,
                                    modulus=self.modulus)
        if self.period is not None and other.period == self.period:
            cusp = {j: self.cusp_at(j) + other.cusp_at(j) for j in range(self.period)}
            return Current.periodic(self.period, cusp,
                                    spine0=self.spine_at(0) + other.spine_at(0),
                                    modulus=self.modulus)
        # a cusp-free periodic current is flat and shifts every spine value
        flat, win = (self, other) if self.period is not None else (other, self)
        if flat.period is not None and win.period is None and \
                not any(v for _, v in flat.cusp):
            return Current.windowed(win.cusp_dict,
                                    left_spine=win.left_base + flat.spine_at(0),
                                    modulus=win.modulus)
        raise ValueError("unsupported current addition")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        def enc(v):
            return v if isinstance(v, int) else str(v)
        ring = self.ring if self.modulus is None else f"Z/{self.modulus}Z"
        return {
            "ring": ring,
            "period": self.period,
            "window": list(self.window),
            "cusp": {str(j): enc(v) for j, v in self.cusp},
            "spine": {str(j): enc(v) for j, v in self.spine},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Current":
        ring = data["ring"]
        modulus = None
        if ring.startswith("Z/"):
            modulus = int(ring[2:].rstrip("Z"))
            ring_tag = "Z/nZ"
        else:
            ring_tag = ring

        def dec(v):
            return v if isinstance(v, int) else (int(v) if "/" not in v else Fraction(v))

        cusp = {int(j): dec(v) for j, v in data["cusp"].items()}
        spine = {int(j): dec(v) for j, v in data["spine"].items()}
        period = data.get("period")
        window = tuple(data["window"])
        cur = cls(ring=ring_tag, window=window,
                  cusp=tuple(sorted(cusp.items())),
                  spine=tuple(sorted(spine.items())),
                  period=period, modulus=modulus)
        report = validate_current(cur)
        if not report.ok:
            raise ValueError(f"invalid current: {report.message}")
        return cur


def current_x() -> Current:
    """c_0: all cusp values 0, all spine values 1; alpha(c_0) = x."""
    return Current.periodic(1, {0: 0}, spine0=1)


@dataclass(frozen=True)
class CurrentReport:
    ok: bool
    index: Optional[int] = None
    message: str = ""


def validate_current(c: Current) -> CurrentReport:
    """Check c(e'_{j+1}) = c(e'_j) + c(e_{j+1}) on the window or period,
    and the zero period-sum for periodic currents."""
    eq = (lambda a, b: (a - b) % c.modulus == 0) if c.modulus is not None \
        else (lambda a, b: a == b)
    if c.period is not None:
        total = sum(c.cusp_at(j) for j in range(c.period))
        if not eq(total, 0):
            return CurrentReport(False, None, "cusp values do not sum to 0 over a period")
        for j in range(c.period):
            if not eq(c.spine_at(j + 1), c.spine_at(j) + c.cusp_at(j + 1)):
                return CurrentReport(False, j + 1, "defining relation fails")
        return CurrentReport(True)
    jmin, jmax = c.window
    for j in range(jmin - 1, jmax):
        if not eq(c.spine_at(j + 1), c.spine_at(j) + c.cusp_at(j + 1)):
            return CurrentReport(False, j + 1, "defining relation fails")
    return CurrentReport(True)


@dataclass(frozen=True)
class EvalResult:
    """A computed value together with a certified error valuation: the true
    quantity differs from ``value`` by something of valuation >= error_valuation.
    ``pole_ord`` = -1 marks evaluation at a cusp of the current."""

    value: Union[PadicNumber, Fraction, None]
    error_valuation: Union[Fraction, float]
    pole_ord: Optional[int] = None

    @property
    def is_pole(self) -> bool:
        return self.pole_ord is not None


def _grid_index(z: PadicNumber, q: PadicNumber) -> Optional[int]:
    """j with z = q^j exactly, if any."""
    vz, vq = z.exact_valuation, q.exact_valuation
    if vz is INF:
        return None
    t = Fraction(vz) / Fraction(vq)
    if t.denominator != 1:
        return None
    t = int(t)
    return t if (z - q ** t).is_exact_zero else None


def alpha_eval(c: Current, q: PadicNumber, z: Union[PadicNumber, BallPoint],
               J: Optional[int] = None) -> EvalResult:
    """Evaluate alpha(c); exact (error valuation +inf) once the window covers
    the support.

    Periodic currents are admitted only when cusp-free (alpha = x^spine);
    otherwise the one-orbit product has no certified tail in rank 1.
    """
    if c.modulus is not None:
        raise ValueError("alpha needs an integer current, not Z/nZ")
    if c.period is not None:
        if any(v for _, v in c.cusp):
            raise ValueError("alpha of a periodic current with cusps is only "
                             "defined up to regularization; use a window current")
        s0 = c.spine_at(0)
        if isinstance(z, BallPoint):
            return EvalResult(s0 * seminorm([PadicNumber.zero(q.p),
                                             PadicNumber.one(q.p)], z), INF)
        return EvalResult(z ** s0, INF)
    support = c.support()
    if J is not None and any(abs(j) > J for j in support):
        raise ValueError(f"window J={J} does not cover the support {support}")
    s0 = c.spine_at(0)
    if not all(isinstance(c.cusp_at(j), int) for j in support) or \
            not isinstance(s0, int):
        raise ValueError("alpha needs integer current values")
    if isinstance(z, BallPoint):
        p = q.p
        one = PadicNumber.one(p)
        sem_x = seminorm([PadicNumber.zero(p), one], z)
        total = s0 * sem_x
        for j in support:
            cj = c.cusp_at(j)
            sem_f = seminorm([-(q ** j), one], z)
            if j >= 1:
                total += cj * (sem_f - sem_x)
            else:
                total += cj * (sem_f - j * q.exact_valuation)
        return EvalResult(total, INF)
    if z.is_exact_zero:
        raise PoleCollisionError("alpha is evaluated on G_m: z must be nonzero")
    value = z ** s0
    for j in support:
        cj = c.cusp_at(j)
        num = z - q ** j
        if num.is_exact_zero and cj < 0:
            raise PoleCollisionError(f"z collides with the pole q^{j}")
        base = num / z if j >= 1 else num / q ** j
        value = value * base ** cj
    return EvalResult(value, INF)


@dataclass(frozen=True)
class FactoredFunction:
    """f = x^m * prod_j (x - q^j)^(k_j) over a finite set of grid indices."""

    x_exponent: int
    zeros: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "zeros",
                           tuple(sorted((j, k) for j, k in self.zeros if k != 0)))

    @property
    def total_degree(self) -> int:
        return self.x_exponent + sum(k for _, k in self.zeros)

    def value(self, q: PadicNumber, w: PadicNumber) -> PadicNumber:
        out = w ** self.x_exponent
        for j, k in self.zeros:
            base = w - q ** j
            if base.is_exact_zero:
                if k < 0:
                    raise PoleCollisionError(f"evaluation at the pole q^{j}")
                return PadicNumber.zero(q.p)
            out = out * base ** k
        return out


def current_from_slopes(fd: FactoredFunction, q: PadicNumber) -> Current:
    """Current with cusp values the multiplicities k_j and spine values fixed
    by the defining relation from c(e'_0) = m + sum_{j>=1} k_j; alpha of the
    result equals f up to a nonzero scalar."""
    cusp = {j: k for j, k in fd.zeros}
    s0 = fd.x_exponent + sum(k for j, k in fd.zeros if j >= 1)
    if not cusp:
        return Current.windowed({}, left_spine=s0)
    jmin = min(cusp)
    left = s0 - sum(v for j, v in cusp.items() if jmin <= j <= 0)
    return Current.windowed(cusp, left_spine=left)


def factored_alpha(c: Current) -> FactoredFunction:
    """Factored form of alpha(c) for a window-supported integer current:
    x-exponent c(e'_0) - sum_{j>=1} c(e_j), zero multiplicities the cusp values."""
    if not c.is_window_supported:
        raise ValueError("factored form needs a window-supported current")
    zeros = tuple((j, c.cusp_at(j)) for j in c.support())
    m = c.spine_at(0) - sum(k for j, k in zeros if j >= 1)
    return FactoredFunction(x_exponent=m, zeros=zeros)


def _delta_term(c: Current, q: PadicNumber, z: PadicNumber, j: int) -> PadicNumber:
    cj = c.cusp_at(j)
    kernel = (z - q ** j).inverse()
    if j >= 1:
        kernel = kernel - z.inverse()
    return kernel * cj


def delta_eval(c: Current, q: PadicNumber, z: PadicNumber,
               J: Optional[int] = None) -> EvalResult:
    """Coefficient of dx in delta(c) at z, with a certified tail valuation.

    Window currents evaluate exactly; periodic currents are truncated to
    |j| <= J.  Evaluation at a cusp q^j with c(e_j) != 0 returns the
    ord = -1 marker instead of a value.
    """
    t = _grid_index(z, q)
    if t is not None and c.cusp_at(t) != 0:
        return EvalResult(None, INF, pole_ord=-1)
    if z.is_exact_zero:
        raise PoleCollisionError("delta has its dx/x kernel at z = 0")
    s0 = c.spine_at(0)
    value = z.inverse() * s0
    if c.is_window_supported or not any(v for _, v in c.cusp):
        for j in (c.support() if c.is_window_supported else ()):
            value = value + _delta_term(c, q, z, j)
        return EvalResult(value, INF)
    if J is None:
        raise ValueError("periodic currents with cusps need a truncation window J")
    vq, vz = q.exact_valuation, valuation(z)
    if not ((J + 1) * vq > vz and -(J + 1) * vq < vz):
        raise TailCertificateError(
            "window too small: grid points of index beyond J are not "
            "separated from z")
    for j in range(c.period):
        cj = c.cusp_at(j)
        if cj and vp_fraction(Fraction(cj), q.p) < 0:
            raise ValueError("tail certificates need p-integral cusp values")
    for j in range(-J, J + 1):
        if c.cusp_at(j) != 0:
            value = value + _delta_term(c, q, z, j)
    err = min((J + 1) * vq - 2 * vz, (J + 1) * vq)
    return EvalResult(value, err)


@dataclass(frozen=True)
class DifferentialEval:
    """delta(c)/dx as an evaluator with certified truncation errors."""

    current: Current
    q: PadicNumber
    window: Optional[int] = None

    def at(self, z: PadicNumber) -> EvalResult:
        return delta_eval(self.current, self.q, z, self.window)


def moebius(n: int) -> int:
    """Moebius function by trial factorization (window-sized inputs)."""
    if n < 1:
        raise ValueError("moebius needs a positive integer")
    if n > 10 ** 6:
        raise ValueError("input beyond the supported window size")
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def moebius_current(n: int, J: int) -> Current:
    """Truncation of the current with cusp values mu(j/n) at j = n, 2n, ...
    (up to J*n) and spine values the Moebius partial sums; zero for j <= 0."""
    if n < 1:
        raise ValueError("n must be positive")
    if J < 0:
        raise ValueError("J must be nonnegative")
    cusp = {k * n: moebius(k) for k in range(1, J + 1)}
    return Current.windowed(cusp, left_spine=0)


def delta_at_one(n: int, q: PadicNumber, J: int) -> EvalResult:
    """sum_{j<=J} mu(j) q^(jn) / (1 - q^(jn)), which equals q^n up to a tail
    of valuation >= n(J+1)v(q)."""
    if n < 1:
        raise ValueError("n must be positive")
    acc = PadicNumber.zero(q.p)
    one = PadicNumber.one(q.p)
    for j in range(1, J + 1):
        mu = moebius(j)
        if mu == 0:
            continue
        t = q ** (j * n)
        acc = acc + (t / (one - t)) * mu
    return EvalResult(acc, Fraction(n) * (J + 1) * q.exact_valuation)


def poly_current_eval(P: Sequence[Value], q: PadicNumber, J: int) -> EvalResult:
    """delta(c_P)(1) for c_P = a_0 c_0 + sum_{n>=1} a_n c_n with P = sum a_n X^n;
    equals P(q) within the certified truncation error."""
    coeffs = list(P)
    total = current_x().scale(coeffs[0]) if coeffs else current_x().scale(0)
    for n, a in enumerate(coeffs[1:], start=1):
        if a != 0:
            total = total + moebius_current(n, J).scale(a)
    one = PadicNumber.one(q.p)
    res = delta_eval(total, q, one)
    err = INF
    vq = q.exact_valuation
    for n, a in enumerate(coeffs[1:], start=1):
        if a != 0:
            va = vp_fraction(Fraction(a), q.p)
            if va < 0:
                raise ValueError("polynomial coefficients must lie in Z_p")
            err = min(err, va + Fraction(n) * (J + 1) * vq)
    return EvalResult(res.value, err)


def theta_automorphy_constant(fd: FactoredFunction, q: PadicNumber) -> PadicNumber:
    """The constant value of f_{Gamma'}(q^l z) / f_{Gamma'}(z):
    prod_j (-q^j)^(k_j) for a degree-zero factorization."""
    out = PadicNumber.one(q.p)
    for j, k in fd.zeros:
        out = out * (-(q ** j)) ** k
    return out


def theta_product(fd: FactoredFunction, q: PadicNumber, l: int,
                  z: PadicNumber, z0: PadicNumber, M: int) -> EvalResult:
    """Truncated theta product prod_{|k|<=M} f(q^(lk) z)/f(q^(lk) z0) for the
    subgroup q^(lZ), with a certified tail valuation.

    Requires a degree-zero factorization with no zero/pole at 0 or infinity
    (x_exponent = 0 and total degree 0): that is the convergent core of the
    rank-1 theta construction.
    """
    if l < 1 or M < 0:
        raise ValueError("l must be positive, M nonnegative")
    if fd.x_exponent != 0 or fd.total_degree != 0:
        raise ValueError("theta products need x_exponent = 0 and total degree 0")
    if z.is_exact_zero or z0.is_exact_zero:
        raise PoleCollisionError("z and z0 must lie in G_m")
    vq = q.exact_valuation
    for w, name in ((z, "z"), (z0, "z0")):
        t = _grid_index(w, q)
        if t is not None and any((t - j) % l == 0 for j, _ in fd.zeros):
            raise PoleCollisionError(
                f"{name} meets a zero/pole of a Gamma'-translate of f")
    vz, vz0 = z.exact_valuation, z0.exact_valuation
    if fd.zeros:
        jvals = [Fraction(j) * vq for j, _ in fd.zeros]
        beta_pos = Fraction(l) * (M + 1) * vq + min(vz, vz0) - max(jvals)
        beta_neg = Fraction(l) * (M + 1) * vq + min(jvals) - max(vz, vz0)
        rel_err = min(beta_pos, beta_neg)
        if rel_err <= 0:
            raise TailCertificateError(
                f"truncation M={M} cannot certify the tail (bound {rel_err})")
    else:
        rel_err = INF
    value = PadicNumber.one(q.p)
    for k in range(-M, M + 1):
        g = q ** (l * k)
        num = fd.value(q, g * z)
        den = fd.value(q, g * z0)
        if den.is_exact_zero:
            raise PoleCollisionError("z0 translate hits a zero of f")
        if num.is_exact_zero:
            raise PoleCollisionError("z translate hits a zero of f")
        value = value * num / den
    # the tail bound is multiplicative; report it additively
    err = rel_err if rel_err is INF else rel_err + value.exact_valuation
    return EvalResult(value, err)


@dataclass(frozen=True)
class LadderResult:
    """Stabilized ladder estimate of ord_z(delta(c)) + 1.

    ``table`` records, for each canonical ladder depth n, the least torsor
    level m whose splitting point has entered [z, z'_n]; the stabilized
    consecutive difference is the estimate.
    """

    value: int
    pole: bool
    table: Tuple[Tuple[int, int], ...] = ()


def _binomial_factor(p: int, u: PadicNumber, mexp: int, degree: int) -> BoundedSeries:
    """(1 + u*T)^mexp as a BoundedSeries (integer exponent, possibly negative)."""
    top = degree if mexp < 0 else min(mexp, degree)
    coeffs = [binom_fractional(mexp, k, p) * u ** k for k in range(top + 1)]
    if 0 <= mexp <= degree:
        tail = None
    else:
        tail = TailBound(u.exact_valuation, Fraction(0))
    return BoundedSeries(p, tuple(coeffs), tail)


def alpha_germ(c: Current, q: PadicNumber, z: PadicNumber,
               degree: int = 8) -> BoundedSeries:
    """Normalized germ alpha(c)(z+T)/alpha(c)(z) = (1+T/z)^m *
    prod_j (1 + T/(z-q^j))^(k_j), as a BoundedSeries in T."""
    fd = factored_alpha(c)
    p = q.p
    out = BoundedSeries.build(p, [1], None)
    factors = []
    if fd.x_exponent:
        factors.append((PadicNumber.zero(p), fd.x_exponent))
    factors.extend((q ** j, k) for j, k in fd.zeros)
    for center, k in factors:
        dz = z - center
        if dz.is_exact_zero:
            raise PoleCollisionError("germ base point hits a zero/pole of alpha")
        out = out.mul(_binomial_factor(p, dz.inverse(), k, degree), trunc=degree)
    return out


def ladder_ord(c: Current, q: PadicNumber, z: PadicNumber, nmax: int,
               degree: int = 8, level_cap: Optional[int] = None) -> LadderResult:
    """Ladder computation of ord_z(delta(c)) + 1.

    For each n <= nmax the canonical ladder point z'_n = b_{z, v(z)+n+1/(p-1)}
    is compared against the splitting points of the mu_{p^m}-torsors of
    alpha(c) about z; m_min(n) = inf{m : splitting log-radius >= log-radius
    of z'_n} grows affinely with slope ord + 1, and the stabilized
    consecutive difference is returned.  Evaluation at a cusp of the current
    short-circuits to 0 (= ord(-1) + 1).
    """
    if nmax < 2:
        raise ValueError("nmax must be at least 2 to observe a difference")
    p = q.p
    t = _grid_index(z, q)
    if t is not None and c.cusp_at(t) != 0:
        return LadderResult(value=0, pole=True)
    if z.is_exact_zero:
        raise ValueError("z must be a nonzero type-1 point")
    germ = None
    d = degree
    while germ is None:
        try:
            germ = RamifiedGerm(alpha_germ(c, q, z, degree=d))
        except PrecisionExhaustedError:
            d *= 2
            if d > 64:
                raise
    vz = valuation(z)
    offset = Fraction(1, p - 1)
    cap = level_cap if level_cap is not None else 16 * (nmax + 4)
    table = []
    m = 1
    rho_m = splitting_logradius_numeric(germ, m)
    for n in range(1, nmax + 1):
        threshold = vz + n + offset
        while rho_m < threshold:
            m += 1
            if m > cap:
                raise NonStabilizedError(
                    f"no torsor level below {cap} reaches ladder depth {n}")
            rho_m = splitting_logradius_numeric(germ, m)
        table.append((n, m))
    diffs = [table[i + 1][1] - table[i][1] for i in range(len(table) - 1)]
    k = min(3, len(diffs))
    tail = diffs[-k:]
    if len(set(tail)) != 1:
        raise NonStabilizedError(
            f"ladder differences did not stabilize within nmax={nmax}: {diffs}")
    return LadderResult(value=tail[0], pole=False, table=tuple(table))
