"""Siegel local densities and genus representation numbers.

delta_p(t, L) is the stabilized ratio p^(a(1-N)) #{x mod p^a : q(x) == t}
for a large enough; at good primes (p not dividing 2 det S) and for the two
special families (even unimodular lattices, orthogonal sums of A1) closed
formulas replace counting.  The archimedean density delta_inf is an exact
rational multiple of pi^(N/2) whenever det S is a perfect square.

Every closed formula here is checked against density_counting on a grid by
the verification suite; the geometric series in the printed formulas are
expanded as explicit finite sums so that small ranks (where ratios hit 1)
stay well-defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt
from typing import Optional, Union

from .arith import (
    PiRational,
    bernoulli,
    divisors,
    factorize,
    kronecker,
    ord_p,
    primes_up_to,
    zeta_even,
)
from .counting import ShiftedForm, count_na_prime_power
from .errors import (
    BadPrime,
    InconsistentInput,
    NonSquareDeterminant,
    OddRankUnsupported,
    StabilizationFailure,
    UnsupportedRank,
)
from .lattice import Lattice


@dataclass(frozen=True)
class DensityReport:
    value: Union[Fraction, PiRational]
    place: Union[int, str]  # prime or "inf"
    method: str  # counting | good_prime | unimodular_lemma | na1_odd | na1_two | infinity
    stabilization_exponent: Optional[int] = None


# ---------------------------------------------------------------------------
# stabilized counting
# ---------------------------------------------------------------------------

def density_counting(
    lattice: Lattice, p: int, t: int, budget: int | None = None
) -> DensityReport:
    """delta_p(t, L) by counting q(x) == t mod p^a at a = 2 ord_p(2t) + 1.

    Re-evaluates at a+1 and insists on equality: stabilization is part of
    the contract, and a mismatch means an implementation bug.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    n = lattice.rank
    a = 2 * ord_p(2 * t, p) + 1
    form = ShiftedForm(lattice, 1, -t, tuple(Fraction(0) for _ in range(n)))
    val_a = Fraction(count_na_prime_power(form, p, a, budget), p ** (a * (n - 1)))
    val_b = Fraction(count_na_prime_power(form, p, a + 1, budget), p ** ((a + 1) * (n - 1)))
    if val_a != val_b:
        raise StabilizationFailure(
            f"density at p={p}, t={t} differs between levels {a} and {a + 1}"
        )
    return DensityReport(val_a, p, "counting", stabilization_exponent=a)


# ---------------------------------------------------------------------------
# closed formulas
# ---------------------------------------------------------------------------

def _geom(ratio: Fraction, terms: int) -> Fraction:
    """sum_{i=0}^{terms-1} ratio^i as an explicit sum (safe at ratio = 1)."""
    acc = Fraction(0)
    power = Fraction(1)
    for _ in range(terms):
        acc += power
        power *= ratio
    return acc


def density_good_prime(lattice: Lattice, p: int, t: int) -> Fraction:
    """delta_p(t, L) at a prime p not dividing 2 det S, any rank parity."""
    n = lattice.rank
    if (2 * lattice.det) % p == 0:
        raise BadPrime(f"p = {p} divides 2 det = {2 * lattice.det}")
    if t < 1:
        raise ValueError("t must be >= 1")
    lp = ord_p(t, p)
    if n % 2 == 0:
        eps = kronecker((-1) ** (n // 2) * lattice.det, p)
        lead = 1 - Fraction(eps, p ** (n // 2))
        ratio = Fraction(eps, p ** (n // 2 - 1))
        return lead * _geom(ratio, lp + 1)
    # odd rank; the printed l_p-even tail (1-p^(1-N))/(1-eps p^((1-N)/2)) is
    # expanded to (1 + eps p^((1-N)/2)) so that rank 1 (where both factors
    # vanish) stays well-defined
    t_bar = t // p**lp
    eps = kronecker((-1) ** ((n - 1) // 2) * 2 * lattice.det * t_bar, p)
    lead = 1 - Fraction(1, p ** (n - 1))
    ratio = Fraction(1, p) ** (n - 2)  # rank 1 makes the exponent negative
    if lp % 2 == 1:
        return lead * _geom(ratio, (lp - 1) // 2 + 1)
    tail = (1 + Fraction(eps, p ** ((n - 1) // 2))) * ratio ** (lp // 2)
    return lead * _geom(ratio, lp // 2) + tail


def density_infty(lattice: Lattice, t: int) -> PiRational:
    """delta_inf(t, L) = (2 pi)^(N/2) Gamma(N/2)^-1 t^(N/2-1) det^(-1/2),
    exact whenever N is even and det S is a perfect square."""
    n = lattice.rank
    if n % 2 != 0:
        raise OddRankUnsupported("Gamma at half-integers leaves PiRational")
    if t < 1:
        raise ValueError("t must be >= 1")
    root = isqrt(lattice.det)
    if root * root != lattice.det:
        raise NonSquareDeterminant(f"det = {lattice.det} is not a perfect square")
    half = n // 2
    coeff = Fraction(2**half * t ** (half - 1), factorial(half - 1) * root)
    return PiRational(coeff, half)


def density_infty_float(lattice: Lattice, t: int) -> float:
    """Floating-point delta_inf for lattices with non-square determinant."""
    n = lattice.rank
    if n % 2 != 0:
        raise OddRankUnsupported("odd rank not supported")
    half = n // 2
    pi = 3.141592653589793
    return (2 * pi) ** half / factorial(half - 1) * t ** (half - 1) / lattice.det**0.5


def density_unimodular(n_rank: int, p: int, l: int, delta: int) -> Fraction:
    """p^(l(1-N)) N_{p^l}(S/2, Delta) for an even unimodular Gram matrix S:
    the three-case Gaussian-sum formula, valid for any even rank."""
    if l < 1:
        raise ValueError("l must be >= 1")
    if n_rank % 2 != 0:
        raise UnsupportedRank("formula needs even rank")
    half = n_rank // 2
    lead = 1 - Fraction(1, p**half)
    ratio = Fraction(1, p ** (half - 1))
    if delta != 0 and delta % p != 0:
        return lead
    e = ord_p(delta, p) if delta != 0 else None
    if e is not None and l > e:
        return lead * _geom(ratio, e + 1)
    return ratio**l + lead * _geom(ratio, l)


def density_na1_odd(n_rank: int, p: int, l: int, delta: int) -> Fraction:
    """p^(l(1-N)) A_N(-Delta, p^l) for odd p and even rank N:
    the sum-of-squares local density with eps = ((-1)^(N/2) / p)."""
    if p == 2:
        raise BadPrime("use density_na1_two at p = 2")
    if l < 1:
        raise ValueError("l must be >= 1")
    if n_rank % 2 != 0:
        raise UnsupportedRank("formula needs even rank")
    half = n_rank // 2
    eps = kronecker((-1) ** half, p)
    lead = 1 - Fraction(eps, p**half)
    ratio = Fraction(eps, p ** (half - 1))
    if delta != 0 and delta % p != 0:
        return lead
    e = ord_p(delta, p) if delta != 0 else None
    if e is not None and l > e:
        return lead * _geom(ratio, e + 1)
    return ratio**l + lead * _geom(ratio, l)


def density_na1_two(n_rank: int, lam, l: int, delta: int) -> Fraction:
    """2^(l(1-N)) D_{2^l}(lambda, -Delta) for Gram 2*I and even rank N.

    Case analysis on the parity pattern of lambda; in the all-even case
    kappa = -Delta/4 and the split is on l versus ord_2(kappa).  Only the
    parities of lambda matter, which is itself a tested property.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    if n_rank % 2 != 0:
        raise UnsupportedRank("formula needs even rank")
    parities = [int(c) % 2 for c in lam]
    if len(parities) != n_rank:
        raise InconsistentInput("lambda has wrong length")
    n_odd = sum(parities)
    if 0 < n_odd < n_rank:
        return Fraction(1)
    if n_odd == n_rank:
        # all odd: value 1 + (-1)^n with Delta = 4n - q(lambda), q(lambda) == N mod 8
        if (delta + n_rank) % 4 != 0:
            raise InconsistentInput("Delta incompatible with an all-odd lambda")
        n_parity = ((delta + n_rank) % 8) // 4
        return Fraction(2) if n_parity == 0 else Fraction(0)
    # all even
    if delta % 4 != 0:
        raise InconsistentInput("Delta must be divisible by 4 when lambda is even")
    kappa = -delta // 4
    # (-1)^(N/4); only referenced in the N == 0 mod 4 branches
    quarter_sign = -1 if n_rank % 8 == 4 else 1
    half = n_rank // 2
    if kappa != 0 and kappa % 2 != 0:
        if n_rank % 4 == 2 and l >= 2:
            sign = -1 if ((n_rank + 2 * kappa) // 4) % 2 else 1
            return 1 - Fraction(sign * 2, 2**half)
        return Fraction(1)
    e = ord_p(kappa, 2) if kappa != 0 else None
    if e is None or l <= e:
        if n_rank % 4 == 2:
            return Fraction(1)
        num = 1 - Fraction(1, 2 ** ((l - 1) * (half - 1)))
        return 1 - quarter_sign * num / (1 - Fraction(2 ** (half - 1)))
    if l == e + 1:
        if n_rank % 4 == 2:
            return Fraction(1)
        bracket = Fraction(2 ** (e * (half - 1)) - 1, 2 ** (half - 1) - 1) - 2
        return 1 + quarter_sign * Fraction(1, 2 ** (e * (half - 1))) * bracket
    # l >= e + 2: the stabilized value
    if n_rank % 4 == 2:
        k_bar = kappa >> e
        sign = -1 if ((n_rank + 2 * k_bar) // 4) % 2 else 1
        return 1 - Fraction(sign, 2 ** ((e + 1) * (half - 1)))
    inner = (1 - Fraction(1, 2 ** ((e - 1) * (half - 1)))) / (
        1 - Fraction(2 ** (half - 1))
    ) + Fraction(1, 2 ** (e * (half - 1)))
    return 1 - quarter_sign * inner


def density_na1_two_stable(n_rank: int, lam, delta: int) -> Fraction:
    """The l -> infinity limit of density_na1_two (the actual local density)."""
    parities = [int(c) % 2 for c in lam]
    n_odd = sum(parities)
    if 0 < n_odd < n_rank:
        return density_na1_two(n_rank, lam, 1, delta)
    if n_odd == n_rank:
        return density_na1_two(n_rank, lam, 1, delta)
    kappa = -delta // 4
    if kappa == 0:
        raise InconsistentInput("no stable value at kappa = 0")
    e = ord_p(kappa, 2)
    return density_na1_two(n_rank, lam, e + 2, delta)


# ---------------------------------------------------------------------------
# local Euler factors (finite part + stabilized geometric tail)
# ---------------------------------------------------------------------------

def local_factor_unimodular(n_rank: int, p: int, delta: int, k: int) -> Fraction:
    """sum_{v >= 0} p^(v(1-N)) N_{p^v} / p^(v(k-N)) for an even unimodular
    lattice, summed exactly (finite head plus geometric tail)."""
    x = Fraction(1, p ** (k - n_rank))
    e = ord_p(delta, p) if delta % p == 0 else 0
    acc = Fraction(1)
    for v in range(1, e + 1):
        acc += density_unimodular(n_rank, p, v, delta) * x**v
    stable = density_unimodular(n_rank, p, e + 1, delta)
    acc += stable * x ** (e + 1) / (1 - x)
    return acc


def local_factor_na1_odd(n_rank: int, p: int, delta: int, k: int) -> Fraction:
    """Same exact local sum for the NA1 odd-prime densities."""
    x = Fraction(1, p ** (k - n_rank))
    e = ord_p(delta, p) if delta % p == 0 else 0
    acc = Fraction(1)
    for v in range(1, e + 1):
        acc += density_na1_odd(n_rank, p, v, delta) * x**v
    stable = density_na1_odd(n_rank, p, e + 1, delta)
    acc += stable * x ** (e + 1) / (1 - x)
    return acc


def alpha2_exact(n_rank: int, lam, delta: int, k: int) -> Fraction:
    """alpha_2 = sum_{v >= 0} D_{2^v}(lambda, -Delta) / 2^(v(k-1)), exact:
    finitely many terms until the p = 2 density stabilizes, then the
    constant tail sums as a geometric series in 2^(N-k)."""
    x = Fraction(1, 2 ** (k - n_rank))
    parities = [int(c) % 2 for c in lam]
    n_odd = sum(parities)
    if n_odd == 0:
        if delta % 4 != 0:
            raise InconsistentInput("Delta must be divisible by 4 for even lambda")
        kappa = -delta // 4
        if kappa == 0:
            raise InconsistentInput("alpha_2 tail undefined at Delta = 0")
        cut = ord_p(kappa, 2) + 2
    else:
        cut = 1
    acc = Fraction(1)
    for v in range(1, cut):
        acc += density_na1_two(n_rank, lam, v, delta) * x**v
    stable = density_na1_two(n_rank, lam, cut, delta)
    acc += stable * x**cut / (1 - x)
    return acc


# ---------------------------------------------------------------------------
# printed R_p transcriptions (checked against the exact local sums)
# ---------------------------------------------------------------------------

def rp_printed_unimodular(n_rank: int, p: int, delta: int, k: int) -> Fraction:
    """The bad-prime correction R_p(Delta) for unimodular lattices, verbatim;
    local_factor_unimodular must equal delta_p * R_p."""
    e = ord_p(delta, p)
    half = n_rank // 2
    x = Fraction(1, p ** (k - n_rank))  # p^(N-k)
    y = Fraction(1, p ** (k - half - 1))  # p^(1+N/2-k)
    z = Fraction(1, p ** (half - 1))  # p^(1-N/2)
    first = x ** (e + 1) / (1 - x)
    second = ((1 - x ** (e + 1)) / (1 - x) - (1 - y ** (e + 1)) / (1 - y)) / (
        1 - z ** (e + 1)
    )
    third = (1 - z) * (1 - y ** (e + 1)) / (
        (1 - z ** (e + 1)) * (1 - Fraction(1, p**half)) * (1 - y)
    )
    return first + second + third


def rp_printed_na1(n_rank: int, p: int, delta: int, k: int) -> Fraction:
    """The chi_D-twisted bad-prime correction R_p(Delta) for NA1, verbatim."""
    e = ord_p(delta, p)
    half = n_rank // 2
    chi = kronecker((-1) ** half, p)
    x = Fraction(1, p ** (k - n_rank))
    y = chi * Fraction(1, p ** (k - half - 1))
    z = chi * Fraction(1, p ** (half - 1))
    first = x ** (e + 1) / (1 - x)
    second = ((1 - x ** (e + 1)) / (1 - x) - (1 - y ** (e + 1)) / (1 - y)) / (
        1 - z ** (e + 1)
    )
    third = (1 - z) * (1 - y ** (e + 1)) / (
        (1 - z ** (e + 1)) * (1 - chi * Fraction(1, p**half)) * (1 - y)
    )
    return first + second + third


# ---------------------------------------------------------------------------
# genus representation numbers
# ---------------------------------------------------------------------------

EULER_PRODUCT_PRIME_BOUND = 10**5


def l_chi4d_euler_float(s: int, d_disc: int) -> tuple[float, float]:
    """L(s, chi_4D) by Euler product over primes below 10^5, with a tail
    bound; chi_4D(a) = (4D/a)."""
    val = 1.0
    for p in primes_up_to(EULER_PRODUCT_PRIME_BOUND):
        chi = kronecker(4 * d_disc, p)
        if chi:
            val /= 1.0 - chi * float(p) ** (-s)
    bound = 2.0 * float(EULER_PRODUCT_PRIME_BOUND) ** (1 - s)
    return val, bound


def genus_representation(
    lattice: Lattice, delta: int, budget: int | None = None
) -> Union[Fraction, float]:
    """r(Delta, genus(L)) via the reorganized Siegel product
    delta_inf / L(N/2, chi_4D) * (sum_{a | Delta} chi_4D(a) a^(1-N/2))
    * prod_{p | 2D} delta_p.

    Exact rational where the transcendental parts provably cancel (even
    unimodular lattices; NA1 with N == 0 mod 4, where chi_4D is principal);
    otherwise a float built from the truncated Euler product.
    """
    n = lattice.rank
    if n % 2 != 0 or n < 4:
        raise UnsupportedRank("pipeline needs even rank N >= 4")
    if delta < 1:
        raise ValueError("Delta must be >= 1")
    half = n // 2
    if lattice.is_unimodular and n % 8 == 0:
        sigma = sum(Fraction(1, d ** (half - 1)) for d in divisors(delta))
        return -Fraction(n) / bernoulli(half) * delta ** (half - 1) * sigma
    if lattice.is_na1 and n % 4 == 0:
        # chi_4D is principal mod 4, so everything collapses to zeta values
        dinf = density_infty(lattice, delta)
        lval = zeta_even(half)
        lval = PiRational(lval.coeff * (1 - Fraction(1, 2**half)), lval.pi_power)
        divisor_sum = sum(
            Fraction(1, a ** (half - 1)) for a in divisors(delta) if a % 2 == 1
        )
        d2 = density_na1_two_stable(n, [0] * n, -4 * delta)
        return (dinf / lval * divisor_sum * d2).as_fraction()
    # general case: float with truncated Euler product
    d_disc = (-1) ** half * lattice.det
    lval, _ = l_chi4d_euler_float(half, d_disc)
    dinf = density_infty_float(lattice, delta)
    divisor_sum = sum(
        kronecker(4 * d_disc, a) * Fraction(1, a ** (half - 1)) for a in divisors(delta)
    )
    prod = 1.0
    for p, _ in factorize(2 * abs(d_disc)):
        prod *= float(density_counting(lattice, p, delta, budget).value)
    return dinf / lval * float(divisor_sum) * prod
