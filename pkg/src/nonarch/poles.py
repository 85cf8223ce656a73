"""Vanishing orders of Q_p-combinations of simple poles sum a_i/(X - i).

The order-set solver works over exact rational linear algebra: the Taylor
coefficients of 1/(X - i) about x live in K_0 (Q_p or its quadratic
extension, degree C in {1, 2}); each coefficient contributes C rational
coordinates, and kernel-dimension jumps of the truncation maps phi_n
determine which orders are achieved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .berkovich import BallPoint, seminorm
from .errors import NoAdmissibleOrderError, PoleCollisionError, PrecisionExhaustedError
from .padic import DEFAULT_PREC, INF, PadicNumber, integer_lift_mod, valuation, vp_fraction


@dataclass(frozen=True)
class PoleFamily:
    """Finite truncation of a pole set I in K_0, with the base point x not in I."""

    poles: Tuple[PadicNumber, ...]
    x: PadicNumber

    def __post_init__(self):
        object.__setattr__(self, "poles", tuple(self.poles))
        if not self.poles:
            raise ValueError("pole family must be nonempty")
        p = self.x.p
        for i in self.poles:
            if i.p != p:
                raise ValueError("mixed primes in pole family")
        for a in range(len(self.poles)):
            if (self.poles[a] - self.x).is_exact_zero:
                raise ValueError("x collides with a pole")
            for b in range(a + 1, len(self.poles)):
                if (self.poles[a] - self.poles[b]).is_exact_zero:
                    raise ValueError("poles must be distinct")

    @property
    def p(self) -> int:
        return self.x.p

    @property
    def C(self) -> int:
        """Degree [K_0 : Q_p] of the field generated by the data."""
        ramified = self.x.is_ramified or any(i.is_ramified for i in self.poles)
        return 2 if ramified else 1

    def expansion_row(self, pole: PadicNumber, ncoeffs: int) -> List[PadicNumber]:
        """Taylor coefficients of 1/(X - pole) about x: (-1)^k/(x-pole)^(k+1)."""
        inv = (self.x - pole).inverse()
        row = []
        cur = inv
        for _ in range(ncoeffs):
            row.append(cur)
            cur = -cur * inv
        return row

    def matrix(self, ncoeffs: int) -> List[List[PadicNumber]]:
        return [self.expansion_row(i, ncoeffs) for i in self.poles]


# -- exact rational linear algebra ------------------------------------


def _rational_columns(entries: Sequence[PadicNumber], C: int) -> List[Fraction]:
    out = []
    for e in entries:
        out.append(e.rat)
        if C == 2:
            out.append(e.pi_part)
    return out


class _OnlineRank:
    """Incremental rank of a growing set of column vectors over Q."""

    def __init__(self, nrows: int):
        self.nrows = nrows
        self.basis = {}  # pivot row -> reduced vector

    def add(self, vec: List[Fraction]) -> bool:
        v = list(vec)
        for piv, b in self.basis.items():
            if v[piv]:
                c = v[piv] / b[piv]
                for r in range(self.nrows):
                    v[r] -= c * b[r]
        for r in range(self.nrows):
            if v[r]:
                self.basis[r] = v
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.basis)


def _nullspace(rows: List[List[Fraction]]) -> List[List[Fraction]]:
    """Basis of {a : sum_i a_i * rows[i] = 0} by reduced row echelon form."""
    nrows = len(rows)
    if nrows == 0:
        return []
    ncols = len(rows[0])
    # work on the transpose: columns of M^T are the rows of M
    mat = [[rows[r][c] for r in range(nrows)] for c in range(ncols)]
    pivots = []
    rr = 0
    for col in range(nrows):
        sel = None
        for r in range(rr, len(mat)):
            if mat[r][col]:
                sel = r
                break
        if sel is None:
            continue
        mat[rr], mat[sel] = mat[sel], mat[rr]
        pv = mat[rr][col]
        mat[rr] = [x / pv for x in mat[rr]]
        for r in range(len(mat)):
            if r != rr and mat[r][col]:
                c = mat[r][col]
                mat[r] = [x - c * y for x, y in zip(mat[r], mat[rr])]
        pivots.append(col)
        rr += 1
        if rr == len(mat):
            break
    free = [c for c in range(nrows) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * nrows
        vec[fcol] = Fraction(1)
        for r, pcol in enumerate(pivots):
            vec[pcol] = -mat[r][fcol]
        basis.append(vec)
    return basis


# -- operations --------------------------------------------------------


def order_of_combination(a: Sequence, fam: PoleFamily,
                         window: Optional[int] = None) -> int:
    """(X - x)-adic valuation of sum a_i/(X - i), by exact expansion."""
    coeffs = [Fraction(c) if not isinstance(c, PadicNumber) else c for c in a]
    if len(coeffs) != len(fam.poles):
        raise ValueError("coefficient count must match the pole count")
    if all((c.is_exact_zero if isinstance(c, PadicNumber) else c == 0)
           for c in coeffs):
        raise ValueError("the zero combination has no order")
    kmax = len(fam.poles) if window is None else window
    rows = fam.matrix(kmax + 1)
    for k in range(kmax + 1):
        acc = PadicNumber.zero(fam.p)
        for c, row in zip(coeffs, rows):
            acc = acc + row[k] * c
        if not acc.is_exact_zero:
            return k
    raise PrecisionExhaustedError(
        f"order exceeds the certified window {kmax}")


@dataclass(frozen=True)
class OrderSetResult:
    """Achieved orders E in [0, nmax], the counts u_n = #(E cap [0,n]) and
    the dimension table dim_{Q_p} V_n."""

    nmax: int
    C: int
    E_window: Tuple[int, ...]
    u: Tuple[int, ...]
    dims: Tuple[int, ...]

    def check_inequality(self) -> bool:
        """dim V_n <= C * u_n, the proof inequality of the density lemma."""
        return all(self.dims[n] <= self.C * self.u[n] for n in range(self.nmax + 1))

    def to_json(self) -> dict:
        return {
            "nmax": self.nmax,
            "C": self.C,
            "E_window": list(self.E_window),
            "u": list(self.u),
            "dims": list(self.dims),
        }


def order_set(fam: PoleFamily, nmax: int, prec: int = DEFAULT_PREC) -> OrderSetResult:
    """Kernel-jump computation of the achieved orders.

    n is achieved iff Ker(phi_n) strictly contains Ker(phi_{n+1}), where
    phi_n maps a combination to its first n Taylor coefficients; equivalently
    iff rank grows when coefficient block n is adjoined.
    """
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    C = fam.C
    rows = fam.matrix(nmax + 2)
    nrows = len(fam.poles)
    tracker = _OnlineRank(nrows)
    ranks = [0]  # ranks[n] = dim V_n
    for k in range(nmax + 2):
        col_entries = [rows[r][k] for r in range(nrows)]
        cols = [[e.rat for e in col_entries]]
        if C == 2:
            cols.append([e.pi_part for e in col_entries])
        for col in cols:
            tracker.add(col)
        ranks.append(tracker.rank)
    E = tuple(n for n in range(nmax + 1) if ranks[n + 1] > ranks[n])
    u = []
    count = 0
    for n in range(nmax + 1):
        if n in E:
            count += 1
        u.append(count)
    dims = tuple(ranks[n] for n in range(nmax + 1))
    return OrderSetResult(nmax=nmax, C=C, E_window=E, u=tuple(u), dims=dims)


def _is_p_power(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def find_nonppower_order(fam: PoleFamily, p: Optional[int] = None,
                         nmax: Optional[int] = None) -> Tuple[Fraction, ...]:
    """Coefficients (a_i) in Z_p with ord_x(sum a_i/(X-i)) + 1 not a p-power.

    The combination is built from an exact kernel basis of phi_k and rescaled
    by a p-power so every entry is p-integral; the claimed order is
    re-verified through the expansion before returning.
    """
    p = fam.p if p is None else p
    window = (len(fam.poles) - 1) if nmax is None else nmax
    rows = fam.matrix(window + 2)
    nrows = len(fam.poles)
    C = fam.C
    achieved = []
    for k in range(window + 1):
        block = [_rational_columns(rows[r][:k], C) for r in range(nrows)]
        kernel = _nullspace(block) if k else [
            [Fraction(1) if r == s else Fraction(0) for s in range(nrows)]
            for r in range(nrows)]
        witness = None
        for vec in kernel:
            img = [sum(vec[r] * col[r] for r in range(nrows))
                   for col in ([ [rows[r][k].rat for r in range(nrows)] ] +
                               ([[rows[r][k].pi_part for r in range(nrows)]]
                                if C == 2 else []))]
            if any(img):
                witness = vec
                break
        if witness is None:
            continue
        achieved.append(k)
        if _is_p_power(k + 1, p):
            continue
        shift = min((vp_fraction(c, p) for c in witness if c != 0))
        if shift < 0:
            witness = [c * Fraction(p) ** (-shift) for c in witness]
        got = order_of_combination(witness, fam, window=window + 1)
        if got != k:
            raise PrecisionExhaustedError(
                f"kernel construction promised order {k} but verified {got}")
        return tuple(witness)
    raise NoAdmissibleOrderError(window, achieved)


def integer_approximation(a: PadicNumber, n: int) -> int:
    """Canonical integer representative of a in [0, p^n) with
    v_p(result - a) >= n; requires a in Z_p at precision >= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if a.is_ramified:
        raise ValueError("integer approximation is defined for Z_p elements")
    if a.prec < n:
        raise PrecisionExhaustedError(
            f"precision {a.prec} is below the requested modulus exponent {n}")
    v = a.exact_valuation
    if v is not INF and v < 0:
        raise ValueError("a must be p-integral")
    if n == 0:
        return 0
    return integer_lift_mod(a.rat, a.p, n)


def finite_product_eval(poles: Sequence[PadicNumber], exponents: Sequence[int],
                        x: PadicNumber, z: Union[PadicNumber, BallPoint]):
    """Evaluate prod ((X - i)/(x - i))^(a_i), normalized to 1 at X = x.

    At a type-1 point the value is an exact field element; at a ball point
    the log-seminorm is returned via multiplicativity.
    """
    if len(poles) != len(exponents):
        raise ValueError("pole and exponent counts differ")
    if isinstance(z, BallPoint):
        total = Fraction(0)
        for i, a in zip(poles, exponents):
            norm = valuation(x - i)
            fac = seminorm([-i, PadicNumber.one(i.p)], z)
            total += a * (fac - norm)
        return total
    value = PadicNumber.one(x.p)
    for i, a in zip(poles, exponents):
        num = z - i
        if num.is_exact_zero and a < 0:
            raise PoleCollisionError(f"evaluation point hits the pole {i!r}")
        value = value * (num / (x - i)) ** a if a >= 0 else value * ((x - i) / num) ** (-a)
    return value


def moebius_orbit(matrix, t: PadicNumber, kmin: int, kmax: int) -> List[PadicNumber]:
    """Orbit points g^k(t), kmin <= k <= kmax, for g = [[a, b], [c, d]] acting
    as the fractional-linear map (a t + b)/(c t + d)."""
    a, b, c, d = (x if isinstance(x, PadicNumber) else PadicNumber.from_rational(t.p, x)
                  for x in matrix)
    det = a * d - b * c
    if det.is_exact_zero:
        raise ValueError("transformation must be invertible")

    def apply(m, z):
        ma, mb, mc, md = m
        den = mc * z + md
        if den.is_exact_zero:
            raise PoleCollisionError("orbit point escapes to infinity")
        return (ma * z + mb) / den

    fwd = (a, b, c, d)
    inv = (d, -b, -c, a)
    orbit = {0: t}
    cur = t
    for k in range(1, max(kmax, 0) + 1):
        cur = apply(fwd, cur)
        orbit[k] = cur
    cur = t
    for k in range(-1, min(kmin, 0) - 1, -1):
        cur = apply(inv, cur)
        orbit[k] = cur
    return [orbit[k] for k in range(kmin, kmax + 1)]
