r"""High-precision, error-bounded special functions.

Everything analytic in this package flows through here: log-gamma and
gamma quotients with proved Stirling remainders, generalized
hypergeometric series pFq-1 at unit argument with a rigorous truncation
bound, Appell's F3 at (1,1), the Euler-type double integral over the
ordered simplex (a quadrature oracle), and the ten-expression Dixon
family used as a built-in consistency check.

Error-bound conventions
-----------------------
Results are ``BoundedReal`` (or ``BoundedComplex``) pairs (value, err)
with |true - value| <= err.  Bound propagation is conservative:

* log-gamma uses the Stirling series for real y > 0, whose remainder
  after J terms is bounded by the first omitted term
  |B_{2J+2}| / ((2J+2)(2J+1) y^{2J+1}); arguments are raised past a
  precision-dependent threshold first.

* the unit-argument series engine sums M terms directly and closes the
  tail with an asymptotic solution of the tail recurrence.  Writing
  t_{n+1}/t_n = P(n)/Q(n) (P, Q monic of equal degree), the normalized
  tail W(n) = (sum_{m>=n} t_m)/t_n satisfies W(n) = 1 + (P/Q)(n) W(n+1).
  An expansion W(n) = n * V(1/n) with V a polynomial of degree K is
  solved exactly over the rationals; the defect
  d(n) = W(n) - 1 - (P/Q)(n) W(n+1) is an explicit rational function
  vanishing to order n^{-K-1}, and since the terms are eventually
  one-signed and decreasing,

      |tail - t_M W(M)| <= |t_M| * H(M) * (M^{-K-1} + M^{-K}/K),

  where H(M) majorizes the defect numerator (exact rational
  arithmetic).  This is the comparison-series bound, with the exponent
  pushed down by K so that M stays in the hundreds even for 50+ digits.

Floating-point rounding is tracked with generous per-operation slop at
the ambient mpmath working precision; callers pick the precision via
``mp.workprec`` (helpers here add their own guard bits on top of the
requested decimal digits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath
from mpmath import mp

Rational = Union[int, Fraction]


class DomainError(ValueError):
    """Argument outside the mathematical domain (e.g. ln_gamma(x<=0))."""


class DivergenceError(ValueError):
    """Series parameters violate the unit-argument convergence condition."""


class PrecisionError(RuntimeError):
    """Requested accuracy cannot be certified with the given budget."""


def _bits(digits: int) -> int:
    return int(digits * 3.3219281) + 1


def _to_mpf(q) -> mpmath.mpf:
    if isinstance(q, Fraction):
        return mp.mpf(q.numerator) / q.denominator
    return mp.mpf(q)


def _ulp_slop(x) -> mpmath.mpf:
    # one-op rounding slop at the ambient precision
    return abs(x) * mp.mpf(2) ** (4 - mp.prec)


class BoundedReal:
    """A real value with a conservative absolute error bound.

    Arithmetic happens at the ambient mpmath precision and widens the
    bound by the propagated input errors plus per-operation slop.
    """

    __slots__ = ("value", "err")

    def __init__(self, value, err=0):
        self.value = mp.mpf(value) if not isinstance(value, mpmath.mpf) else value
        self.err = mp.mpf(err) if not isinstance(err, mpmath.mpf) else err
        if self.err < 0 or not mpmath.isfinite(self.err):
            raise ValueError(f"invalid error bound {err!r}")

    @classmethod
    def exact(cls, q: Rational) -> "BoundedReal":
        v = _to_mpf(Fraction(q))
        return cls(v, _ulp_slop(v))

    def __add__(self, other):
        other = _coerce(other)
        v = self.value + other.value
        return BoundedReal(v, self.err + other.err + _ulp_slop(v))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        v = self.value - other.value
        return BoundedReal(v, self.err + other.err + _ulp_slop(v))

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return BoundedReal(self.value * other, self.err * abs(other) + _ulp_slop(self.value * other))
        other = _coerce(other)
        v = self.value * other.value
        e = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
        return BoundedReal(v, e + _ulp_slop(v))

    __rmul__ = __mul__

    def __neg__(self):
        return BoundedReal(-self.value, self.err)

    def __truediv__(self, other):
        other = _coerce(other)
        lo = abs(other.value) - other.err
        if lo <= 0:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / other.value
        e = (self.err + abs(v) * other.err) / lo
        return BoundedReal(v, e + _ulp_slop(v))

    def exp(self) -> "BoundedReal":
        v = mpmath.exp(self.value)
        # |e^x - e^x'| <= e^x' (e^|dx| - 1)
        e = v * mpmath.expm1(self.err) if self.err < 1 else v * (mpmath.exp(self.err) - 1)
        return BoundedReal(v, e + 4 * _ulp_slop(v))

    def agrees_with(self, other: "BoundedReal", slack=0) -> bool:
        other = _coerce(other)
        return abs(self.value - other.value) <= self.err + other.err + slack + _ulp_slop(self.value)

    def __repr__(self):
        return f"BoundedReal({mpmath.nstr(self.value, 20)}, err<={mpmath.nstr(self.err, 3)})"


def _coerce(x) -> BoundedReal:
    if isinstance(x, BoundedReal):
        return x
    if isinstance(x, (int, Fraction)):
        return BoundedReal.exact(Fraction(x))
    return BoundedReal(mp.mpf(x), 0)


class BoundedComplex:
    """Complex value with an absolute (radius) error bound.

    Construction and conjugation keep the stored mantissas intact (the
    mpmath context would otherwise re-round them to the ambient
    precision, which is routinely lower than the value's).
    """

    __slots__ = ("value", "err")

    def __init__(self, value, err=0):
        self.value = value if isinstance(value, mpmath.mpc) else mp.mpc(value)
        self.err = mp.mpf(err) if not isinstance(err, mpmath.mpf) else err
        if self.err < 0:
            raise ValueError("negative error bound")

    def __add__(self, other):
        other = _coerce_c(other)
        v = self.value + other.value
        return BoundedComplex(v, self.err + other.err + _ulp_slop(abs(v)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_c(other)
        v = self.value - other.value
        return BoundedComplex(v, self.err + other.err + _ulp_slop(abs(v)))

    def __mul__(self, other):
        other = _coerce_c(other)
        v = self.value * other.value
        e = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
        return BoundedComplex(v, e + _ulp_slop(abs(v)))

    __rmul__ = __mul__

    def __neg__(self):
        return BoundedComplex(-self.value, self.err)

    def conjugate(self) -> "BoundedComplex":
        from mpmath.libmp import mpf_neg
        flipped = mp.make_mpc((self.value.real._mpf_, mpf_neg(self.value.imag._mpf_)))
        return BoundedComplex(flipped, self.err)

    @property
    def real(self) -> BoundedReal:
        return BoundedReal(self.value.real, self.err)

    @property
    def imag(self) -> BoundedReal:
        return BoundedReal(self.value.imag, self.err)

    def distance(self, other: "BoundedComplex") -> mpmath.mpf:
        """|self - other| computed componentwise (safe at any ambient precision)."""
        other = _coerce_c(other)
        dr = self.value.real - other.value.real
        di = self.value.imag - other.value.imag
        return mpmath.hypot(dr, di)

    def agrees_with(self, other: "BoundedComplex", slack=0) -> bool:
        other = _coerce_c(other)
        return self.distance(other) <= self.err + other.err + slack + _ulp_slop(abs(self.value))

    def __repr__(self):
        return f"BoundedComplex({mpmath.nstr(self.value, 20)}, err<={mpmath.nstr(self.err, 3)})"


def _coerce_c(x) -> BoundedComplex:
    if isinstance(x, BoundedComplex):
        return x
    if isinstance(x, BoundedReal):
        return BoundedComplex(x.value, x.err)
    if isinstance(x, (int, Fraction)):
        r = BoundedReal.exact(Fraction(x))
        return BoundedComplex(r.value, r.err)
    return BoundedComplex(x, 0)


# ---------------------------------------------------------------------------
# log-gamma with proved Stirling remainder
# ---------------------------------------------------------------------------

_BERNOULLI_ROW: list[Fraction] = [Fraction(1)]


def _bernoulli_frac(n: int) -> Fraction:
    # exact Bernoulli numbers via the defining recurrence (B_1 = -1/2);
    # the row is grown once and shared
    row = _BERNOULLI_ROW
    while len(row) <= n:
        m = len(row)
        acc = Fraction(0)
        for k, bk in enumerate(row):
            acc += math.comb(m + 1, k) * bk
        row.append(-acc / (m + 1))
    return row[n]


def _stirling_order(y: float, digits: int) -> Optional[int]:
    # smallest J with |B_{2J+2}|/((2J+2)(2J+1) y^{2J+1}) <= 10^{-digits-4};
    # Bernoulli magnitude estimated through |B_{2n}| ~ 2 (2n)!/(2pi)^{2n}
    target = -(digits + 4) * math.log(10)
    for J in range(1, 260):
        n = 2 * J + 2
        logB = math.log(2) + math.lgamma(n + 1) - n * math.log(2 * math.pi)
        logbound = logB - math.log((n) * (n - 1)) - (n - 1) * math.log(y)
        if logbound <= target:
            return J
    return None


def ln_gamma(x, digits: int = 30) -> BoundedReal:
    """ln Gamma(x) for x > 0 with absolute error <= 10^-digits.

    Exact rational x is evaluated by Stirling's series after raising the
    argument past ~0.4*digits; the remainder bound is the first omitted
    term, which is valid for all real positive arguments.  BoundedReal
    input additionally pays |psi| * x.err.
    """
    if isinstance(x, BoundedReal):
        base = ln_gamma_rational_like(x.value, digits + 2)
        # |psi(y)| <= ln(y)+1/y for y>=1; below 1 use the reflection-free crude 2/y + 2
        y = abs(x.value)
        psi_bound = (mpmath.log(y) + 1 / y + 2) if y >= 1 else (2 / y + 2)
        return BoundedReal(base.value, base.err + psi_bound * x.err)
    q = Fraction(x)
    if q <= 0:
        raise DomainError(f"ln_gamma requires a positive argument, got {q}")
    return ln_gamma_rational_like(q, digits)


def ln_gamma_rational_like(x, digits: int) -> BoundedReal:
    wp = _bits(digits) + 30
    with mp.workprec(wp):
        xv = _to_mpf(x) if isinstance(x, Fraction) else mp.mpf(x)
        y0 = max(10.0, 0.4 * digits + 6)
        m = max(0, int(math.ceil(y0 - float(xv))))
        J = _stirling_order(float(xv) + m, digits)
        if J is None:
            raise PrecisionError("Stirling order selection failed")
        y = xv + m
        ln_y = mpmath.log(y)
        total = (y - mp.mpf(1) / 2) * ln_y - y + mpmath.log(2 * mp.pi) / 2
        y2 = y * y
        ypow = y
        for j in range(1, J + 1):
            b = _bernoulli_frac(2 * j)
            total += _to_mpf(b) / ((2 * j) * (2 * j - 1) * ypow)
            ypow *= y2
        # remainder bound: first omitted term (exact Bernoulli, rounded up)
        b_next = abs(_bernoulli_frac(2 * J + 2))
        rem = _to_mpf(b_next) / ((2 * J + 2) * (2 * J + 1)) / (y ** (2 * J + 1)) * mp.mpf("1.001")
        for i in range(m):
            total -= mpmath.log(xv + i)
        round_err = (m + J + 20) * abs(total) * mp.mpf(2) ** (6 - wp) + mp.mpf(2) ** (6 - wp)
        return BoundedReal(total, rem + round_err)


def gamma_quotient(numerators: Sequence[Rational], denominators: Sequence[Rational],
                   digits: int = 30) -> BoundedReal:
    """prod Gamma(a_i) / prod Gamma(b_j) for positive rational arguments."""
    nums = [Fraction(a) for a in numerators]
    dens = [Fraction(b) for b in denominators]
    for a in nums + dens:
        if a <= 0:
            raise DomainError(f"gamma_quotient argument {a} <= 0")
    wp = _bits(digits) + 40
    with mp.workprec(wp):
        out = _gamma_quotient_once(nums, dens, digits)
        if out.err > mp.mpf(10) ** (-digits) * (1 + abs(out.value)):
            with mp.workprec(_bits(2 * digits) + 60):
                out = _gamma_quotient_once(nums, dens, 2 * digits)
        return out


def _gamma_quotient_once(nums, dens, digits):
    # each distinct argument is evaluated once, with its net multiplicity
    weights: dict[Fraction, int] = {}
    for a in nums:
        weights[a] = weights.get(a, 0) + 1
    for b in dens:
        weights[b] = weights.get(b, 0) - 1
    acc = BoundedReal(mp.mpf(0), 0)
    for arg, w in weights.items():
        if w:
            acc = acc + ln_gamma(arg, digits + 12) * w
    return acc.exp()


# ---------------------------------------------------------------------------
# unit-argument hypergeometric series with rigorous tail
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hyp3F2Params:
    """Parameters of 3F2(a,b,c; d,e; 1), all exact rationals."""
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "e"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        for low in (self.d, self.e):
            if low <= 0 and low.denominator == 1:
                raise DomainError(f"lower parameter {low} is a non-positive integer")

    @property
    def margin(self) -> Fraction:
        return self.d + self.e - self.a - self.b - self.c


@dataclass(frozen=True)
class AppellF3Params:
    """Parameters of Appell F3(alpha, alpha', beta, beta', gamma; 1, 1)."""
    alpha: Fraction
    alpha2: Fraction
    beta: Fraction
    beta2: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "alpha2", "beta", "beta2", "gamma"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def margins(self) -> tuple[Fraction, Fraction]:
        return (self.gamma - self.alpha - self.beta,
                self.gamma - self.alpha2 - self.beta2)


def _poly_mul(A, B, cut=None):
    out = [Fraction(0)] * (len(A) + len(B) - 1)
    for i, a in enumerate(A):
        if a:
            for j, b in enumerate(B):
                if b:
                    out[i + j] += a * b
    return out[:cut + 1] if cut is not None else out


def _poly_from_factors(params):
    out = [Fraction(1)]
    for a in params:
        out = _poly_mul(out, [Fraction(1), Fraction(a)])
    return out


def _binom_int(top: int, i: int) -> int:
    # binomial(top, i) for possibly negative integer top
    if top >= 0:
        return math.comb(top, i) if i <= top else 0
    return (-1) ** i * math.comb(-top + i - 1, i)


def _solve_tail_series(uppers, lowers, K):
    """Coefficients v_0..v_K of W(n) = n V(1/n) for the tail recurrence.

    Writing the functional equation q V = x q + p (1+x) V(x/(1+x)) order
    by order gives a triangular linear system: the unknown v_m enters
    the x^{m+1} equation with coefficient (s + m), s the convergence
    margin, via C[k][j] = q_{j-k} - [p (1+x)^{1-k}]_{j-k}.
    """
    p = _poly_from_factors(uppers)
    q = _poly_from_factors(list(lowers) + [Fraction(1)])
    s = sum(lowers) - sum(uppers)
    # B_k[i] = coefficient of x^i in p(x) (1+x)^{1-k}, needed for i <= K+1-k
    v: list[Fraction] = []
    for m in range(K + 1):
        j = m + 1
        rhs = q[j - 1] if j - 1 < len(q) else Fraction(0)
        for k in range(m):
            i = j - k
            qc = q[i] if i < len(q) else Fraction(0)
            bk = sum((p[t] * _binom_int(1 - k, i - t) for t in range(min(len(p), i + 1))),
                     Fraction(0))
            rhs -= v[k] * (qc - bk)
        v.append(rhs / (s + m))
    return v, p, q


def _tail_defect_majorant(p, q, v, K, M):
    """H(M) bounding the defect numerator: |d(n)| <= H(M) n^{-K-1} for n >= M."""
    one = [Fraction(1), Fraction(1)]
    pw = [[Fraction(1)]]
    for _ in range(K + 2):
        pw.append(_poly_mul(pw[-1], one))
    G = _poly_mul(pw[K], _poly_mul(q, v))
    sub = _poly_mul([Fraction(0), Fraction(1)], _poly_mul(q, pw[K]))
    acc = [Fraction(0)]
    for k, vk in enumerate(v):
        if vk == 0:
            continue
        t = _poly_mul([Fraction(0)] * k + [vk], pw[K - k])
        if len(t) > len(acc):
            acc += [Fraction(0)] * (len(t) - len(acc))
        for i, ti in enumerate(t):
            acc[i] += ti
    sub2 = _poly_mul(p, _poly_mul(one, acc))
    L = max(len(G), len(sub), len(sub2))
    G += [Fraction(0)] * (L - len(G))
    for i in range(len(sub)):
        G[i] -= sub[i]
    for i in range(len(sub2)):
        G[i] -= sub2[i]
    for i in range(K + 2):
        if G[i] != 0:
            raise AssertionError("tail series solve lost cancellation")
    H = G[K + 2:]
    Mq = Fraction(M)
    return sum(abs(h) / Mq ** j for j, h in enumerate(H))


def _ratio_eventually_below_one(uppers, lowers, M):
    # Q(n) - P(n) >= 0 for all n >= M, certified by nonnegative shifted coefficients
    def n_poly(params):
        out = [Fraction(1)]
        for a in params:
            out = _poly_mul(out, [Fraction(a), Fraction(1)])
        return out
    P = n_poly(uppers)
    Q = n_poly(list(lowers) + [Fraction(1)])
    D = [Fraction(0)] * max(len(P), len(Q))
    for i, c in enumerate(Q):
        D[i] += c
    for i, c in enumerate(P):
        D[i] -= c
    # shift: D(M + y) coefficients
    deg = len(D) - 1
    shifted = [Fraction(0)] * (deg + 1)
    for i, c in enumerate(D):
        if c == 0:
            continue
        for j in range(i + 1):
            shifted[j] += c * math.comb(i, j) * Fraction(M) ** (i - j)
    return all(c >= 0 for c in shifted)


def hyp_unit_sum(uppers: Sequence[Rational], lowers: Sequence[Rational],
                 digits: int = 30, terms: Optional[int] = None,
                 series_order: Optional[int] = None) -> BoundedReal:
    """Sum of the pFq-1 series at argument 1 with a rigorous error bound.

    The q lower parameters exclude the implicit (1,n); the convergence
    margin sum(lowers) - sum(uppers) must be positive unless some upper
    parameter is a non-positive integer (terminating series, summed
    exactly).
    """
    uppers = [Fraction(u) for u in uppers]
    lowers = [Fraction(l) for l in lowers]
    for low in lowers:
        if low <= 0 and low.denominator == 1:
            raise DomainError(f"lower parameter {low} is a non-positive integer")
    stop = None
    for u in uppers:
        if u <= 0 and u.denominator == 1:
            stop = -int(u) if stop is None else min(stop, -int(u))
    margin = sum(lowers) - sum(uppers)
    if stop is None and margin <= 0:
        raise DivergenceError(
            f"unit-argument series diverges: margin {margin} <= 0 for {uppers}; {lowers}")

    wp = _bits(digits) + 46
    if stop is not None:
        with mp.workprec(wp):
            t = mp.mpf(1)
            S = mp.mpf(0)
            for n in range(stop + 1):
                S += t
                t = t * _term_ratio_mpf(uppers, lowers, n)
            return BoundedReal(S, (3 * stop + 8) * mp.mpf(2) ** (4 - wp) * (abs(S) + 1))

    K = series_order or min(48, max(12, int(digits * 0.42) + 6))
    M = terms or max(400, 24 * digits)
    # all linear factors must be positive (and comfortably so for the
    # negative-parameter Q-majorization) from index M on
    floor_shift = max([0] + [int(math.floor(-2 * float(x))) + 1
                             for x in list(uppers) + list(lowers) if x < 0])
    M = max(M, floor_shift + 2)
    for _attempt in range(5):
        result = _hyp_unit_attempt(uppers, lowers, digits, M, K, wp)
        if result is not None:
            return result
        M *= 2
        K = min(60, K + 6)
    raise PrecisionError(f"series tail bound did not reach 10^-{digits} "
                         f"for {uppers}; {lowers}")


def _term_ratio_mpf(uppers, lowers, n):
    num, den = 1, n + 1
    for a in uppers:
        num *= n * a.denominator + a.numerator
        den *= a.denominator
    for b in lowers:
        num *= b.denominator
        den *= n * b.denominator + b.numerator
    return mp.mpf(num) / den


def _hyp_unit_attempt(uppers, lowers, digits, M, K, wp):
    if not _ratio_eventually_below_one(uppers, lowers, M):
        return None
    v, p, q = _solve_tail_series(uppers, lowers, K)
    HM = _tail_defect_majorant(p, q, v, K, M)
    # Q(n) >= n^deg * qscale for n >= M (negative lowers shrink the product)
    qscale = Fraction(1)
    for b in list(lowers) + [Fraction(1)]:
        if b < 0:
            qscale *= 1 + Fraction(b) / M
    HM = HM / qscale
    with mp.workprec(wp):
        t = mp.mpf(1)
        S = mp.mpf(0)
        S_abs = mp.mpf(0)
        for n in range(M):
            S += t
            S_abs += abs(t)
            t = t * _term_ratio_mpf(uppers, lowers, n)
        W = mp.mpf(0)
        for k in range(K, -1, -1):
            W = W / M + _to_mpf(v[k])
        W *= M
        tail = t * W
        Ebound = abs(t) * _to_mpf(HM) * (mp.mpf(M) ** (-K - 1) + mp.mpf(M) ** (-K) / K)
        target = mp.mpf(10) ** (-digits)
        if Ebound > target / 2:
            return None
        round_err = (4 * M + 60) * mp.mpf(2) ** (4 - wp) * (S_abs + abs(tail) + 1)
        return BoundedReal(S + tail, Ebound + round_err)


def hyp3f2_unit(p: Hyp3F2Params, digits: int = 30, **kw) -> BoundedReal:
    """3F2(a,b,c; d,e; 1), rigorous bound per hyp_unit_sum."""
    return hyp_unit_sum([p.a, p.b, p.c], [p.d, p.e], digits, **kw)


def hyp3f2_partial_sum(p: Hyp3F2Params, terms: int) -> mpmath.mpf:
    """Plain truncated sum, for tail-soundness tests."""
    uppers = [p.a, p.b, p.c]
    lowers = [p.d, p.e]
    t = mp.mpf(1)
    S = mp.mpf(0)
    for n in range(terms):
        S += t
        t = t * _term_ratio_mpf(uppers, lowers, n)
    return S


# ---------------------------------------------------------------------------
# Appell F3 at (1,1)
# ---------------------------------------------------------------------------

def appell_f3_unit(p: AppellF3Params, digits: int = 30) -> BoundedReal:
    """Appell F3(alpha, alpha', beta, beta', gamma; 1, 1).

    The inner single-variable series is a Gauss 2F1 at 1 and is summed
    in closed form, which collapses the double series to a single
    unit-argument 3F2 (the m-sum over (alpha, beta) is closed first):

        F3 = Gamma[gamma, gamma-a-b; gamma-a, gamma-b]
             * 3F2(a', b', gamma-a-b; gamma-a, gamma-b; 1).

    Direct summation of the double series cannot certify 10^-digits for
    sub-unit margins; the reduction is exact, so the reported bound is
    the series engine's bound times the gamma-quotient interval.
    """
    s1, s2 = p.margins
    if s1 <= 0 or s2 <= 0:
        raise DivergenceError(f"F3 at (1,1) requires positive margins, got {s1}, {s2}")
    for val in (p.gamma, p.gamma - p.alpha, p.gamma - p.beta):
        if val <= 0:
            raise DomainError(f"gamma-quotient argument {val} <= 0")
    wp = _bits(digits) + 40
    with mp.workprec(wp):
        gq = gamma_quotient([p.gamma, s1], [p.gamma - p.alpha, p.gamma - p.beta], digits + 6)
        f = hyp_unit_sum([p.alpha2, p.beta2, s1],
                         [p.gamma - p.alpha, p.gamma - p.beta], digits + 6)
        return gq * f


def appell_f3_partial_sum(p: AppellF3Params, mmax: int, nmax: int) -> mpmath.mpf:
    """Truncated double series over [0,mmax) x [0,nmax), for cross-checks."""
    al, al2, be, be2, ga = (_to_mpf(x) for x in (p.alpha, p.alpha2, p.beta, p.beta2, p.gamma))
    total = mp.mpf(0)
    um = mp.mpf(1)          # (alpha,m)(beta,m)/m!
    gam_m = mp.mpf(1)       # (gamma, m)
    for m in range(mmax):
        un = mp.mpf(1)      # (alpha',n)(beta',n)/n!
        gam_mn = gam_m      # (gamma, m+n)
        for n in range(nmax):
            total += um * un / gam_mn
            gam_mn *= ga + m + n
            un = un * (al2 + n) * (be2 + n) / (n + 1)
        gam_m *= ga + m
        um = um * (al + m) * (be + m) / (m + 1)
    return total


# ---------------------------------------------------------------------------
# Euler-type double integral over the ordered simplex (quadrature oracle)
# ---------------------------------------------------------------------------

@dataclass
class QuadratureSpec:
    """Oracle accuracy knobs: target digits and order-doubling budget."""
    digits: int = 12
    max_subdivisions: int = 4

    def __post_init__(self):
        if self.digits < 4:
            raise ValueError("quadrature target below 4 digits is pointless")


def euler_double_integral(a1: Rational, b1: Rational, a2: Rational, b2: Rational,
                          spec: Optional[QuadratureSpec] = None) -> BoundedReal:
    """integral of u^{a1-1}(1-u)^{b1-1} v^{a2-1}(1-v)^{b2-1} over 0<=u<=v<=1.

    Pure quadrature (Gauss-Jacobi after endpoint-singularity splitting),
    independent of every series evaluation in this module; the error is
    an a-posteriori order-doubling estimate, oracle-grade rather than
    proved.  The domain is split at v=1/2 and the inner integral near
    v=1 is rewritten through its complement so that every piece has
    power singularities only at coordinate endpoints:

      A = int_{0<=v<=1/2} v^{a1+a2-1}(1-v)^{b2-1} int_0^1 w^{a1-1}(1-vw)^{b1-1} dw dv
      I = A + B(a1,b1) C - D,  C = int_{1/2}^1 v^{a2-1}(1-v)^{b2-1} dv,
      D = int_{1/2}^1 v^{a2-1}(1-v)^{b1+b2-1} g(v) dv,
      g(v) = int_0^1 z^{b1-1} (1-(1-v)z)^{a1-1} dz.
    """
    spec = spec or QuadratureSpec()
    fr = [Fraction(x) for x in (a1, b1, a2, b2)]
    for x in fr:
        if not (0 < x <= 1):
            raise DomainError(f"exponent parameter {x} outside (0, 1]")
    from . import _quadrature
    return _quadrature.simplex_beta_integral(*fr, spec)


# ---------------------------------------------------------------------------
# Dixon's ten-expression family
# ---------------------------------------------------------------------------

@dataclass
class DixonMember:
    index: int                    # 1-based position in the family
    value: Optional[BoundedReal]  # None when skipped
    skipped: bool
    margin: Fraction
    note: str = ""


def _dixon_table(a1: Fraction, b1: Fraction, a2: Fraction, b2: Fraction):
    s = a1 + b1 + a2 + b2
    one = Fraction(1)
    return [
        # (gamma numerators, gamma denominators, 3F2 uppers, 3F2 lowers)
        ([a1, b2, a1 + a2], [a1 + 1, a1 + a2 + b2],
         [a1, one - b1, a1 + a2], [a1 + 1, a1 + a2 + b2]),
        ([a1, b2, b1 + b2], [b2 + 1, a1 + b1 + b2],
         [one - a2, b2, b1 + b2], [b2 + 1, a1 + b1 + b2]),
        ([a1, b2, a1 + a2, b1 + b2], [a1 + 1, a2 + b2, a1 + b1 + b2],
         [a1, one - a2, a1 + b1], [a1 + 1, a1 + b1 + b2]),
        ([a1, b2, a1 + a2, b1 + b2], [b2 + 1, a1 + b1, a1 + a2 + b2],
         [one - b1, b2, a2 + b2], [b2 + 1, a1 + a2 + b2]),
        ([a1, a1 + a2, b1 + b2], [a1 + 1, s],
         [a1 + a2, a1 + b1, one], [a1 + 1, s]),
        ([a1 + a2, b2, b1 + b2], [b2 + 1, s],
         [a2 + b2, b1 + b2, one], [b2 + 1, s]),
        ([a1, b2, a1 + a2, b1 + b2], [one - a2, a1 + a2 + b2, s],
         [a1 + a2, a2 + b2, s - 1], [a1 + a2 + b2, s]),
        ([a1, b2, a1 + a2, b1 + b2], [one - b1, a1 + b1 + b2, s],
         [a1 + b1, b1 + b2, s - 1], [a1 + b1 + b2, s]),
        ([a1, b2, a1 + a2, b1 + b2], [a1 + 1, b2 + 1, s - 1],
         [one - a2, one - b1, one], [a1 + 1, b2 + 1]),
        ([a1, b2, a1 + a2, b1 + b2], [a1 + a2 + b2, a1 + b1 + b2],
         [a1, b2, s - 1], [a1 + a2 + b2, a1 + b1 + b2]),
    ]


def dixon_family(a1: Rational, b1: Rational, a2: Rational, b2: Rational,
                 digits: int = 20) -> list[DixonMember]:
    """The ten analytically equal closed forms for the simplex integral.

    Each member is evaluated only when its own 3F2 converges (positive
    margin) and its gamma arguments are positive; others are returned
    skipped.  The tenth, most symmetric member always converges (margin
    exactly 1) and is the production closed form elsewhere.
    """
    fr = [Fraction(x) for x in (a1, b1, a2, b2)]
    for x in fr:
        if not (0 < x < 1):
            raise DomainError(f"parameter {x} outside (0, 1)")
    out = []
    wp = _bits(digits) + 40
    with mp.workprec(wp):
        for i, (gnum, gden, fup, flo) in enumerate(_dixon_table(*fr), start=1):
            margin = sum(flo) - sum(fup)
            bad_gamma = any(g <= 0 for g in gnum + gden)
            if margin <= 0 or bad_gamma:
                reason = "3F2 margin <= 0" if margin <= 0 else "gamma argument <= 0"
                out.append(DixonMember(i, None, True, margin, reason))
                continue
            gq = gamma_quotient(gnum, gden, digits + 6)
            f = hyp_unit_sum(fup, flo, digits + 6)
            out.append(DixonMember(i, gq * f, False, margin))
    return out
