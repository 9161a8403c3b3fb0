r"""Fermat-curve periods, iterated integrals and harmonic volume.

The degree-N Fermat curve carries an action of two commuting order-N
rotations; homology is cyclic over the group ring on an explicit loop
built from the real arc delta between the two affine branch points, and
the second-kind forms are indexed by pairs (a,b) with a, b, a+b nonzero
mod N.  With forms normalized so that rotated copies of delta have unit
periods up to root-of-unity factors, every iterated integral of length
two over the loop orbit decomposes into an exact cyclotomic part plus a
single transcendental, the ordered integral over delta itself.  This
module keeps the two strictly separate: cyclotomic parts live in
``CycloElem`` (exact), delta-integrals are ``DeltaLinear`` placeholders
until the final embedding step evaluates them as closed-form values
(gamma quotient times a unit-argument 3F2).

Composition of iterated integrals under path concatenation, inversion
and conjugation is implemented abstractly over path records, so the
loop identities used in the assembly are themselves reproducible from
the arc data (the tests do exactly that).

Only configurations where the two leading forms are simultaneously
holomorphic at the chosen embedding are evaluated; there the harmonic
correction form vanishes and the volume is the bare iterated integral.
Mixed configurations are rejected rather than approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from mpmath import mp

from .cyclotomic import (CycloElem, EmbeddingIndex, cyclo_from_power, embed,
                         one_minus_power)
from .specfun import (BoundedComplex, BoundedReal, _bits, gamma_quotient,
                      hyp_unit_sum)


class EtaNotZeroError(ValueError):
    """Configuration requires the harmonic correction form, unsupported here."""


@dataclass(frozen=True)
class FermatCurve:
    n: int

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("degree must be at least 4")

    @property
    def genus(self) -> int:
        return (self.n - 1) * (self.n - 2) // 2


def angle_rep(n: int, a: int) -> int:
    """The representative of a nonzero residue in {1, ..., n-1}."""
    r = a % n
    if r == 0:
        raise ValueError("angle representative undefined for the zero residue")
    return r


@dataclass(frozen=True)
class FermatIndex:
    """A pair (a,b) with a, b, a+b nonzero mod n, labeling a form class."""
    n: int
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "b", self.b % self.n)
        if self.a == 0 or self.b == 0 or (self.a + self.b) % self.n == 0:
            raise ValueError(f"({self.a},{self.b}) not in the index set mod {self.n}")

    @property
    def angle_a(self) -> int:
        return angle_rep(self.n, self.a)

    @property
    def angle_b(self) -> int:
        return angle_rep(self.n, self.b)

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.angle_a, self.n)

    @property
    def beta(self) -> Fraction:
        return Fraction(self.angle_b, self.n)

    def is_holomorphic(self) -> bool:
        return self.angle_a + self.angle_b < self.n

    def __neg__(self) -> "FermatIndex":
        return FermatIndex(self.n, -self.a, -self.b)

    def scaled(self, h: int) -> "FermatIndex":
        if math.gcd(h, self.n) != 1:
            raise ValueError(f"scaling by non-unit {h} mod {self.n}")
        return FermatIndex(self.n, h * self.a, h * self.b)


def index_set(n: int) -> list[FermatIndex]:
    out = []
    for a in range(1, n):
        for b in range(1, n):
            if (a + b) % n:
                out.append(FermatIndex(n, a, b))
    return out


@dataclass(frozen=True)
class LoopIndex:
    r: int
    s: int


def period_integral(curve: FermatCurve, idx: FermatIndex, loop: LoopIndex) -> CycloElem:
    """Exact period of the normalized form over the (r,s)-rotated loop:
    xi^{ar+bs} (1 - xi^a)(1 - xi^b)."""
    n = curve.n
    return (cyclo_from_power(n, idx.a * loop.r + idx.b * loop.s)
            * one_minus_power(n, idx.a) * one_minus_power(n, idx.b))


# ---------------------------------------------------------------------------
# exact carriers: c0 + c1 * (integral over delta)
# ---------------------------------------------------------------------------

class DeltaLinear:
    """c0 + c1 * I, I the (formal) ordered double integral over the arc."""

    __slots__ = ("c0", "c1")

    def __init__(self, c0: CycloElem, c1: CycloElem):
        if c0.n != c1.n:
            raise ValueError("modulus mismatch")
        self.c0 = c0
        self.c1 = c1

    @classmethod
    def constant(cls, c: CycloElem) -> "DeltaLinear":
        return cls(c, CycloElem.zero(c.n))

    def __add__(self, other):
        if isinstance(other, CycloElem):
            other = DeltaLinear.constant(other)
        return DeltaLinear(self.c0 + other.c0, self.c1 + other.c1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, CycloElem):
            other = DeltaLinear.constant(other)
        return DeltaLinear(self.c0 - other.c0, self.c1 - other.c1)

    def __neg__(self):
        return DeltaLinear(-self.c0, -self.c1)

    def __mul__(self, scalar):
        # scalar: CycloElem, int, or Fraction; products of two nonconstant
        # DeltaLinear values would leave the linear model and are a bug.
        if isinstance(scalar, DeltaLinear):
            if not scalar.c1.is_zero():
                raise TypeError("product of two delta-linear values")
            scalar = scalar.c0
        return DeltaLinear(self.c0 * scalar, self.c1 * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, DeltaLinear) and self.c0 == other.c0 and self.c1 == other.c1

    def __repr__(self):
        return f"DeltaLinear(const={self.c0!r}, delta_coeff={self.c1!r})"


@dataclass
class PathData:
    """Single and double integrals of an ordered form pair along a path.

    ``s1``, ``s2`` are the single integrals of the first and second form
    (exact cyclotomic values); ``dbl`` is the length-two integral of the
    ordered pair, linear in the formal delta-integral.
    """
    s1: CycloElem
    s2: CycloElem
    dbl: DeltaLinear

    def concat(self, other: "PathData") -> "PathData":
        # composition rule for gamma . gamma'
        return PathData(self.s1 + other.s1, self.s2 + other.s2,
                        self.dbl + DeltaLinear.constant(self.s1 * other.s2) + other.dbl)

    def inverse(self) -> "PathData":
        # inversion rule: the two contributions sum to the single-product
        return PathData(-self.s1, -self.s2,
                        DeltaLinear.constant(self.s1 * self.s2) - self.dbl)

    def conjugated_by(self, arc: "PathData") -> "PathData":
        # conjugation of a loop by a path from the base point
        corr = arc.s2 * self.s1 - arc.s1 * self.s2
        return PathData(self.s1, self.s2, self.dbl + DeltaLinear.constant(corr))

    def pushforward(self, f1: CycloElem, f2: CycloElem) -> "PathData":
        # rotating a path multiplies each form's integrals by its eigenvalue
        return PathData(self.s1 * f1, self.s2 * f2, self.dbl * (f1 * f2))


def chen_compose(gamma: PathData, gamma_prime: PathData) -> PathData:
    """Concatenation rule for length-two iterated integrals."""
    return gamma.concat(gamma_prime)


def delta_path_data(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex,
                    r: int = 0, s: int = 0) -> PathData:
    """Path record of the (r,s)-rotated arc; singles are unit periods times
    eigenvalues, the double is the formal delta-integral times its eigenvalue."""
    n = curve.n
    base = PathData(CycloElem.one(n), CycloElem.one(n),
                    DeltaLinear(CycloElem.zero(n), CycloElem.one(n)))
    return base.pushforward(cyclo_from_power(n, idx1.a * r + idx1.b * s),
                            cyclo_from_power(n, idx2.a * r + idx2.b * s))


def kappa_path_data(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex) -> PathData:
    """The generating loop recomposed from four arc segments."""
    d00 = delta_path_data(curve, idx1, idx2, 0, 0)
    d01 = delta_path_data(curve, idx1, idx2, 0, 1)
    d11 = delta_path_data(curve, idx1, idx2, 1, 1)
    d10 = delta_path_data(curve, idx1, idx2, 1, 0)
    return d00.concat(d01.inverse()).concat(d11).concat(d10.inverse())


def kappa_rs_path_data(curve: FermatCurve, loop: LoopIndex,
                       idx1: FermatIndex, idx2: FermatIndex) -> PathData:
    """Based representative of the rotated loop class, recomposed."""
    n = curve.n
    r, s = loop.r % n, loop.s % n
    d00 = delta_path_data(curve, idx1, idx2, 0, 0)
    d0s = delta_path_data(curve, idx1, idx2, 0, s)
    kap = kappa_path_data(curve, idx1, idx2).pushforward(
        cyclo_from_power(n, idx1.a * r + idx1.b * s),
        cyclo_from_power(n, idx2.a * r + idx2.b * s))
    return d00.concat(d0s.inverse()).concat(kap).concat(d0s).concat(d00.inverse())


# ---------------------------------------------------------------------------
# closed-form displays (the implementation path)
# ---------------------------------------------------------------------------

def kappa_exact(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex) -> DeltaLinear:
    """(1-xi^{a+c})(1-xi^{b+d}) * I_delta + (1-xi^b)(xi^{a+c}+xi^{c+d}-xi^c-xi^d)."""
    n = curve.n
    a, b = idx1.a, idx1.b
    c, d = idx2.a, idx2.b
    c1 = one_minus_power(n, a + c) * one_minus_power(n, b + d)
    c0 = one_minus_power(n, b) * (cyclo_from_power(n, a + c) + cyclo_from_power(n, c + d)
                                  - cyclo_from_power(n, c) - cyclo_from_power(n, d))
    return DeltaLinear(c0, c1)


def kappa_rs_exact(curve: FermatCurve, loop: LoopIndex,
                   idx1: FermatIndex, idx2: FermatIndex) -> DeltaLinear:
    """xi^{(a+c)r+(b+d)s} * kappa  -  xi^{ar+bs}(1-xi^a)(1-xi^b)(1-xi^{ds})
    + xi^{cr+ds}(1-xi^c)(1-xi^d)(1-xi^{bs})."""
    n = curve.n
    a, b = idx1.a, idx1.b
    c, d = idx2.a, idx2.b
    r, s = loop.r, loop.s
    out = kappa_exact(curve, idx1, idx2) * cyclo_from_power(n, (a + c) * r + (b + d) * s)
    corr1 = (cyclo_from_power(n, a * r + b * s) * one_minus_power(n, a)
             * one_minus_power(n, b) * one_minus_power(n, d * s))
    corr2 = (cyclo_from_power(n, c * r + d * s) * one_minus_power(n, c)
             * one_minus_power(n, d) * one_minus_power(n, b * s))
    return out - DeltaLinear.constant(corr1) + DeltaLinear.constant(corr2)


def delta_iterated_integral(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex,
                            digits: int = 30) -> BoundedReal:
    """The ordered double integral of the normalized form pair over the arc,
    as gamma quotient times unit-argument 3F2 (the symmetric closed form)."""
    a1, b1 = idx1.alpha, idx1.beta
    a2, b2 = idx2.alpha, idx2.beta
    wp = _bits(digits) + 40
    with mp.workprec(wp):
        gq = gamma_quotient([a1 + a2, b1 + b2, a1 + b1, a2 + b2],
                            [a2, b1, a1 + a2 + b2, a1 + b1 + b2], digits + 6)
        f = hyp_unit_sum([a1, b2, a1 + a2 + b1 + b2 - 1],
                         [a1 + a2 + b2, a1 + b1 + b2], digits + 6)
        return gq * f


def _embedded(e: CycloElem, sigma: EmbeddingIndex, digits: int) -> BoundedComplex:
    return embed(e, sigma, digits)


def kappa_iterated_integral(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex,
                            sigma: EmbeddingIndex, digits: int = 30) -> BoundedComplex:
    """Loop integral at the embedding sigma: exact part embedded, delta part
    evaluated at the twisted indices."""
    ex = kappa_exact(curve, idx1, idx2)
    return _evaluate_delta_linear(curve, ex, idx1, idx2, sigma, digits)


def kappa_rs_iterated_integral(curve: FermatCurve, loop: LoopIndex,
                               idx1: FermatIndex, idx2: FermatIndex,
                               sigma: EmbeddingIndex, digits: int = 30) -> BoundedComplex:
    ex = kappa_rs_exact(curve, loop, idx1, idx2)
    return _evaluate_delta_linear(curve, ex, idx1, idx2, sigma, digits)


def _evaluate_delta_linear(curve, ex: DeltaLinear, idx1, idx2,
                           sigma: EmbeddingIndex, digits: int) -> BoundedComplex:
    h = sigma.h
    wp = _bits(digits) + 40
    with mp.workprec(wp):
        i_delta = delta_iterated_integral(curve, idx1.scaled(h), idx2.scaled(h), digits + 4)
        part1 = _embedded(ex.c1, sigma, digits + 4) * BoundedComplex(i_delta.value, i_delta.err)
        part0 = _embedded(ex.c0, sigma, digits + 4)
        return part1 + part0


# ---------------------------------------------------------------------------
# triple configurations and the volume
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TripleConfig:
    """Three form indices plus the flags controlling which identities apply."""
    indices: tuple[FermatIndex, FermatIndex, FermatIndex]
    sums_to_zero: bool
    pairwise_parallel_holo: bool
    strong_holo: bool
    holo_twists: tuple[int, ...]   # units h with the first two twists holomorphic

    @property
    def n(self) -> int:
        return self.indices[0].n


def assumption_check(curve: FermatCurve,
                     idx1: FermatIndex, idx2: FermatIndex, idx3: FermatIndex) -> TripleConfig:
    """Compute the configuration flags for a form triple.

    * sums_to_zero: the three index pairs sum to (0,0) mod N.
    * pairwise_parallel_holo: for every unit h the first two twisted
      indices are holomorphic together or not at all.
    * strong_holo: the same statement over all three indices.
    """
    n = curve.n
    sums = ((idx1.a + idx2.a + idx3.a) % n == 0) and ((idx1.b + idx2.b + idx3.b) % n == 0)
    pairwise = True
    strong = True
    twists = []
    for h in range(1, n):
        if math.gcd(h, n) != 1:
            continue
        flags = [idx.scaled(h).is_holomorphic() for idx in (idx1, idx2, idx3)]
        if flags[0] != flags[1]:
            pairwise = False
        if len(set(flags)) != 1:
            strong = False
        if flags[0] and flags[1]:
            twists.append(h)
    return TripleConfig((idx1, idx2, idx3), sums, pairwise, strong, tuple(twists))


def example_triple(curve: FermatCurve) -> TripleConfig:
    """(1,-2), (-2,1), (1,1): valid for every degree N >= 4."""
    n = curve.n
    return assumption_check(curve, FermatIndex(n, 1, -2), FermatIndex(n, -2, 1),
                            FermatIndex(n, 1, 1))


def klein_triple() -> TripleConfig:
    """(1,2), (2,4), (4,1) at N = 7, the Klein-quartic pullback triple."""
    curve = FermatCurve(7)
    return assumption_check(curve, FermatIndex(7, 1, 2), FermatIndex(7, 2, 4),
                            FermatIndex(7, 4, 1))


def phi_pairing(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex) -> CycloElem:
    """Exact intersection pairing of the eigenclass pair:
    N^2 (1-xi^a)(1-xi^b)/(1-xi^{a+b}) when idx2 = -idx1, else zero."""
    n = curve.n
    if idx2 != -idx1:
        return CycloElem.zero(n)
    num = one_minus_power(n, idx1.a) * one_minus_power(n, idx1.b) * (n * n)
    return num / one_minus_power(n, idx1.a + idx1.b)


@lru_cache(maxsize=512)
def _sigma_exact_parts_cached(n: int, a1: int, b1: int, a2: int, b2: int,
                              a3: int, b3: int) -> DeltaLinear:
    curve = FermatCurve(n)
    idx1, idx2 = FermatIndex(n, a1, b1), FermatIndex(n, a2, b2)
    total: Optional[DeltaLinear] = None
    for r in range(n):
        for s in range(n):
            w = cyclo_from_power(n, a3 * r + b3 * s)
            term = kappa_rs_exact(curve, LoopIndex(r, s), idx1, idx2) * w
            total = term if total is None else total + term
    denom = one_minus_power(n, -(a3 + b3)).inverse()
    return total * denom


def harmonic_volume_exact_parts(curve: FermatCurve, t: TripleConfig) -> DeltaLinear:
    """The weighted loop sum divided by (1 - xi^{-(a3+b3)}), kept exact.

    The polynomial correction is assembled term by term from the loop
    display rather than hardcoded; its delta coefficient collapses to
    N^2 (1-xi^{-a3})(1-xi^{-b3})/(1-xi^{-(a3+b3)}) when the triple sums
    to zero, which the tests verify.
    """
    i1, i2, i3 = t.indices
    return _sigma_exact_parts_cached(curve.n, i1.a, i1.b, i2.a, i2.b, i3.a, i3.b)


def harmonic_volume_sigma(curve: FermatCurve, t: TripleConfig,
                          sigma: EmbeddingIndex, digits: int = 30) -> BoundedComplex:
    """The sigma-component of the volume at the form triple.

    Requires the zero-sum and parallel-holomorphy assumptions; at
    embeddings whose twist makes the first two forms antiholomorphic the
    value is the conjugate of the conjugate-embedding value.  Mixed
    configurations would need the nonzero correction form and raise.
    """
    if not (t.sums_to_zero and t.pairwise_parallel_holo):
        raise EtaNotZeroError("triple must sum to zero with parallel holomorphy")
    i1, i2, _ = t.indices
    h = sigma.h
    holo1 = i1.scaled(h).is_holomorphic()
    holo2 = i2.scaled(h).is_holomorphic()
    if holo1 != holo2:
        raise EtaNotZeroError(f"twist h={h} mixes holomorphy types")
    if not holo1:
        return harmonic_volume_sigma(curve, t, sigma.conjugate, digits).conjugate()
    ex = harmonic_volume_exact_parts(curve, t)
    return _evaluate_delta_linear(curve, ex, i1, i2, sigma, digits)


def harmonic_volume_trace(curve: FermatCurve, t: TripleConfig,
                          digits: int = 30) -> BoundedReal:
    """N^2 times the sum of arc integrals over holomorphic twists.

    This is the real representative of the traced volume at the
    denominator-cleared tensor; the embedded exact parts contribute an
    integer in total (a tested identity), so modulo 1 this is the whole
    invariant.
    """
    if not (t.sums_to_zero and t.pairwise_parallel_holo):
        raise EtaNotZeroError("triple must sum to zero with parallel holomorphy")
    n = curve.n
    i1, i2, _ = t.indices
    wp = _bits(digits) + 40
    with mp.workprec(wp):
        acc = BoundedReal(mp.mpf(0), 0)
        for h in t.holo_twists:
            acc = acc + delta_iterated_integral(curve, i1.scaled(h), i2.scaled(h), digits + 4)
        return acc * (n * n)


def harmonic_volume_trace_exact_defect(curve: FermatCurve, t: TripleConfig) -> Fraction:
    """Exact rational: trace of the cleared exact parts over all embeddings.

    The traced volume equals the trace display plus this number; the
    underlying identity forces it to be a rational integer.
    """
    from .cyclotomic import trace_to_rationals
    i1, i2, i3 = t.indices
    n = curve.n
    ex = harmonic_volume_exact_parts(curve, t)
    clear = (one_minus_power(n, -i3.a) * one_minus_power(n, -i3.b)).inverse()
    # delta-linear part: the delta coefficient pairs off over conjugate
    # embeddings into the trace display; only the constant survives here.
    return trace_to_rationals(ex.c0 * clear)
