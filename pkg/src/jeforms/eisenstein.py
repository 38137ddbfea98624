"""Fourier coefficients of Jacobi-Eisenstein series E_{k,m}.

Three pipelines produce the coefficient attached to (n, lambda):

* even unimodular lattices, m = 1: the exact rational closed form
  -(2k - N)/B_{k-N/2} * sigma_{k-N/2-1}(Delta);
* Gram matrix 2*I_N (N copies of A1), m = 1: an exact rational assembled
  from local density Euler factors and L-values at negative integers;
* any even lattice and index, numerically: the triple sum coming from the
  theta transformation formula, truncated at c <= c_max.

Each exact pipeline has an independent truncated counting oracle next to it
(gamma-factor over zeta times a brute-force representation-number series),
and the test suite holds them against each other.

Sign conventions: the two prefactor derivations in play disagree by a
global factor -1 (an inconsistency in the sources; see the verification
suite's gamma-sign record).  gamma_factor defaults to the "theta"
convention, which the theta-transformation pipeline and the positivity of
the E8 coefficients confirm; convention="printed" gives the other sign.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, isqrt, pi
from typing import NamedTuple, Union

from .arith import (
    CHI_MINUS4,
    CHI_PRINCIPAL,
    PiRational,
    bernoulli,
    divisor_sigma,
    divisors,
    kronecker,
    l_chi4_positive,
    l_value_negative,
    mobius,
    ord_p,
    primes_up_to,
    zeta_even,
)
from .counting import ShiftedForm, count_Na, count_na_prime_power
from .density import (
    alpha2_exact,
    local_factor_na1_odd,
    local_factor_unimodular,
)
from .errors import (
    DeltaNotPositive,
    NonSquareDeterminant,
    RankNotUnimodularEven,
    StabilizationFailure,
    UnsupportedLattice,
    UnsupportedRank,
    WeightTooSmall,
)
from .lattice import Lattice, enumerate_dual_by_norm_half, theta_coefficients
from .qexp import Coefficient, QExpansion


class FloatWithBound(NamedTuple):
    value: float
    error_bound: float


def _check_weight(k: int, n_rank: int) -> None:
    if k % 2 != 0 or k <= 2 + n_rank:
        raise WeightTooSmall(f"need even k > {2 + n_rank}, got k = {k}")


# ---------------------------------------------------------------------------
# prefactors
# ---------------------------------------------------------------------------

def gamma_factor(
    k: int, n_rank: int, delta, convention: str = "theta"
) -> PiRational:
    """The Hankel-integral prefactor in the NA1 normalization:
    |gamma| = pi^(k-N/2) Delta^(k-N/2-1) / (2^(k-2) (k-N/2-1)!)  for Delta > 0,
    and 0 for Delta <= 0.

    convention="printed" uses the sign (-1)^(3k/2 - N - 1) as printed in the
    source derivation; convention="theta" flips it to (-1)^(3k/2 - N), the
    sign consistent with the theta-transformation pipeline.
    """
    if n_rank % 2 != 0:
        raise UnsupportedRank("gamma factor needs even rank")
    _check_weight(k, n_rank)
    delta = Fraction(delta)
    if delta <= 0:
        return PiRational.zero()
    s = k - n_rank // 2
    exponent = 3 * k // 2 - n_rank
    if convention == "printed":
        exponent += 1
    elif convention != "theta":
        raise ValueError("convention must be 'theta' or 'printed'")
    sign = -1 if exponent % 2 else 1
    coeff = sign * delta ** (s - 1) / (2 ** (k - 2) * factorial(s - 1))
    return PiRational(coeff, s)


def m1_prefactor(k: int, n_rank: int, det: int, delta) -> PiRational:
    """The analytic prefactor of the m = 1 expansion in the dual-vector
    convention: i^(k-N) (-2 pi)^(k-N/2) Delta^(k-N/2-1) / ((k-N/2-1)! vol(L))
    with vol(L) = sqrt(det S)."""
    if n_rank % 2 != 0:
        raise UnsupportedRank("prefactor needs even rank")
    _check_weight(k, n_rank)
    delta = Fraction(delta)
    if delta <= 0:
        return PiRational.zero()
    root = isqrt(det)
    if root * root != det:
        raise NonSquareDeterminant(f"vol(L) = sqrt({det}) is irrational")
    s = k - n_rank // 2
    exponent = 3 * k // 2 - n_rank  # parity of (k-N)/2 + (k-N/2)
    sign = -1 if exponent % 2 else 1
    coeff = sign * Fraction(2**s) * delta ** (s - 1) / (factorial(s - 1) * root)
    return PiRational(coeff, s)


# ---------------------------------------------------------------------------
# Dirichlet series over representation numbers
# ---------------------------------------------------------------------------

# counting work below this many cell operations is cheap enough that the
# stabilization certificate (one extra level) is always run
_CERTIFICATE_CAP = 5 * 10**6


def _stabilized_local_counts(
    form: ShiftedForm, p: int, delta_scaled: int, budget=None
) -> tuple[list[Fraction], Fraction]:
    """Counted densities r_v = p^(v(1-N)) N_{p^v}(Q) for v = 0..V plus the
    stable value; V is the stabilization level 2 ord_p(2 * delta_scaled) + 1
    (Siegel's threshold).  Where one more level is affordable the constancy
    is re-checked by counting; a mismatch is an implementation bug."""
    n = form.lattice.rank
    v_star = 2 * ord_p(2 * delta_scaled, p) + 1
    head = [
        Fraction(count_na_prime_power(form, p, j, budget), p ** (j * (n - 1)))
        for j in range(v_star + 1)
    ]
    value_mod = 2 * p**v_star if p == 2 else p**v_star
    cert_cost = n * (p * value_mod) ** 2
    if cert_cost <= _CERTIFICATE_CAP:
        for extra in range(1, 4):
            nxt = Fraction(
                count_na_prime_power(form, p, v_star + extra, budget),
                p ** ((v_star + extra) * (n - 1)),
            )
            if nxt == head[-1]:
                return head, head[-1]
            head.append(nxt)
        raise StabilizationFailure(
            f"counted densities did not stabilize at p = {p} (last: {head[-2:]})"
        )
    return head, head[-1]


def dirichlet_series(
    form: ShiftedForm,
    k: int,
    mode: str = "truncated",
    a_max: int = 50,
    budget=None,
) -> Union[PiRational, FloatWithBound]:
    """sum_{a >= 1} N_a(Q) / a^(k-1) in one of four evaluation modes.

    truncated        plain partial sum over a <= a_max with an integral-test
                     tail bound (counts are brute force);
    counting_euler   Euler product over p <= a_max, each local factor summed
                     exactly from counted densities with a certified
                     stabilized tail -- still counting-based, but with a far
                     smaller truncation error;
    exact_unimodular closed Euler factors for det 1 (PiRational, exact);
    exact_na1        closed Euler factors for Gram 2*I, m = 1 (PiRational).
    """
    n = form.lattice.rank
    _check_weight(k, n)
    if mode == "truncated":
        head = Fraction(0)
        for a in range(1, a_max + 1):
            head += Fraction(count_Na(form, a, budget), a ** (k - 1))
        bound = a_max ** (n + 2 - k) / (k - n - 2)
        return FloatWithBound(float(head), bound)
    if mode == "counting_euler":
        lam_dot_w = sum(
            li * wi for li, wi in zip(form.lam, form.w_int())
        )  # (lambda, lambda)_S
        scaled = form.lattice.level * (2 * form.n * form.m - lam_dot_w)
        assert scaled.denominator == 1, "level-scaled norm must be integral"
        delta2 = int(scaled)  # level * 2m * Delta-type integer
        if delta2 == 0:
            raise DeltaNotPositive("Euler-mode series needs nonzero Delta")
        prod = Fraction(1)
        for p in primes_up_to(a_max):
            x = Fraction(1, p ** (k - n))
            head, stable = _stabilized_local_counts(form, p, delta2, budget)
            local = sum((r * x**v for v, r in enumerate(head)), Fraction(0))
            local += stable * x ** len(head) / (1 - x)
            prod *= local
        # missing primes contribute local factors 1 + O(p^(N-k))
        bound = 3.0 * a_max ** (n - k + 1) / (k - n - 1)
        return FloatWithBound(float(prod), abs(float(prod)) * bound)
    if mode == "exact_unimodular":
        if form.lattice.det != 1 or form.m != 1:
            raise UnsupportedLattice("exact unimodular mode needs det 1, m = 1")
        delta = form.n - form.lattice.dual_norm_half(form.lam)
        assert delta.denominator == 1
        delta = int(delta)
        if delta <= 0:
            raise DeltaNotPositive("series only used in the Delta > 0 range")
        value = zeta_even(k - n) / zeta_even(k - n // 2)
        for p, _ in _odd_part_factorization(delta, include_two=True):
            corr = local_factor_unimodular(n, p, delta, k)
            corr *= (1 - Fraction(1, p ** (k - n))) / (
                1 - Fraction(1, p ** (k - n // 2))
            )
            value = value * corr
        return value
    if mode == "exact_na1":
        if not form.lattice.is_na1 or form.m != 1:
            raise UnsupportedLattice("exact NA1 mode needs Gram 2*I, m = 1")
        lam_int = [2 * c for c in form.lam]
        assert all(c.denominator == 1 for c in lam_int)
        lam_int = [int(c) for c in lam_int]
        delta4 = 4 * form.n - sum(c * c for c in lam_int)
        return na1_series_exact(k, n, lam_int, delta4)
    raise ValueError(f"unknown mode {mode!r}")


def _odd_part_factorization(delta: int, include_two: bool):
    from .arith import factorize

    return [(p, e) for p, e in factorize(abs(delta)) if include_two or p != 2]


def na1_series_exact(k: int, n_rank: int, lam_int, delta4: int) -> PiRational:
    """sum_a D_a(lambda, -Delta) / a^(k-1) for Gram 2*I as an exact
    PiRational: alpha_2 times the odd-prime Euler product, with the generic
    part collapsed into zeta / L values."""
    _check_weight(k, n_rank)
    if delta4 <= 0:
        raise DeltaNotPositive("series only used in the Delta > 0 range")
    half = n_rank // 2
    chi = CHI_PRINCIPAL if half % 2 == 0 else CHI_MINUS4
    base = zeta_even(k - n_rank) * (1 - Fraction(1, 2 ** (k - n_rank)))
    base = base / l_chi4_positive(k - half, chi)
    alpha2 = alpha2_exact(n_rank, lam_int, delta4, k)
    value = base * alpha2
    for p, _ in _odd_part_factorization(delta4, include_two=False):
        corr = local_factor_na1_odd(n_rank, p, delta4, k)
        corr *= (1 - Fraction(1, p ** (k - n_rank))) / (
            1 - Fraction(kronecker((-1) ** half, p), p ** (k - half))
        )
        value = value * corr
    return value


# ---------------------------------------------------------------------------
# closed-form coefficients
# ---------------------------------------------------------------------------

def coefficient_unimodular(k: int, n_rank: int, delta: int) -> Fraction:
    """beta_{k,1}(n, lambda) = -(2k - N)/B_{k-N/2} * sigma_{k-N/2-1}(Delta)
    for an even unimodular lattice; depends on (n, lambda) only through
    Delta = n - q(lambda)."""
    if n_rank % 8 != 0 or n_rank < 8:
        raise RankNotUnimodularEven("even unimodular lattices have rank 8 | N")
    _check_weight(k, n_rank)
    if delta < 1:
        raise DeltaNotPositive("Delta must be >= 1 (Delta = 0 is the theta part)")
    half = n_rank // 2
    return -Fraction(2 * k - n_rank) / bernoulli(k - half) * divisor_sigma(
        k - half - 1, delta
    )


def coefficient_na1(k: int, n_rank: int, n: int, lam_int) -> Fraction:
    """The exact Fourier coefficient e_{k,1}(n, lambda) for Gram 2*I_N,
    lambda an integer vector, Delta = 4n - sum lambda_i^2 > 0.

    Assembled as gamma / zeta(k-N) times the exact Euler-factor series; the
    pi powers cancel structurally and the result is rational in both rank
    classes mod 4.
    """
    if n_rank % 2 != 0 or n_rank < 4:
        raise UnsupportedRank("NA1 pipeline needs even rank N >= 4")
    _check_weight(k, n_rank)
    lam_int = [int(c) for c in lam_int]
    delta4 = 4 * n - sum(c * c for c in lam_int)
    if delta4 <= 0:
        raise DeltaNotPositive("Delta <= 0 belongs to the theta part")
    gamma = gamma_factor(k, n_rank, delta4, "theta")
    series = na1_series_exact(k, n_rank, lam_int, delta4)
    return (gamma * series / zeta_even(k - n_rank)).as_fraction()


def coefficient_na1_printed(k: int, n_rank: int, n: int, lam_int) -> Fraction:
    """Verbatim transcription of the printed NA1 coefficient formulas (both
    rank classes mod 4).  Kept for the verification report, which compares
    it against the assembled pipeline and flags discrepancies."""
    from .density import rp_printed_na1

    if n_rank % 2 != 0 or n_rank < 4:
        raise UnsupportedRank("NA1 pipeline needs even rank N >= 4")
    _check_weight(k, n_rank)
    lam_int = [int(c) for c in lam_int]
    delta4 = 4 * n - sum(c * c for c in lam_int)
    if delta4 <= 0:
        raise DeltaNotPositive("Delta <= 0 belongs to the theta part")
    half = n_rank // 2
    alpha2 = alpha2_exact(n_rank, lam_int, delta4, k)
    common = alpha2 * (1 - Fraction(1, 2 ** (k - n_rank)))
    if half % 2 == 1:
        # N == 2 mod 4, chi_4D = chi_-4
        sign = -1 if ((n_rank - 2) // 4) % 2 else 1
        front = sign * Fraction(2) ** (2 - half)
        front /= factorial((2 * k - n_rank - 2) // 4)
        char_sum = sum(
            Fraction(kronecker(-4, a), a ** (half - 1)) for a in divisors(delta4)
        )
        lneg = l_value_negative(k - half, CHI_MINUS4)
        value = common * front * char_sum / lneg * Fraction(delta4) ** (k - half)
        for p, _ in _odd_part_factorization(delta4, include_two=False):
            chi_p = kronecker(-1, p)
            value *= (
                (1 - Fraction(chi_p, p**half))
                * (1 - Fraction(1, p ** (k - n_rank)))
                / (1 - Fraction(chi_p, p ** (k - half)))
                * rp_printed_na1(n_rank, p, delta4, k)
            )
        return value
    # N == 0 mod 4
    e2 = ord_p(delta4, 2) if delta4 % 2 == 0 else 0
    sign = -1 if (n_rank // 4) % 2 else 1
    value = (
        common
        * Fraction(2) ** (e2 * (k - half - 1))
        * divisor_sigma(k - half - 1, delta4)
        * delta4
        * divisor_sigma(1 - half, 2**e2)
        / divisor_sigma(k - half - 1, 2**e2)
        * sign
        * Fraction(2 * k - n_rank)
        / (Fraction(2 ** (k - 2 - half)) * bernoulli(k - half))
    )
    return value


# ---------------------------------------------------------------------------
# independent truncated oracles (gamma / zeta x counting series)
# ---------------------------------------------------------------------------

def beta_m1_oracle(
    lattice: Lattice,
    k: int,
    n: int,
    lam,
    a_max: int = 50,
    mode: str = "counting_euler",
    budget=None,
) -> FloatWithBound:
    """beta_{k,1}(n, lambda) via the analytic prefactor over zeta(k-N) times
    the brute-force N_a(Q) series; independent of every closed form."""
    nr = lattice.rank
    form = ShiftedForm(lattice, 1, n, tuple(Fraction(c) for c in lam))
    delta = n - lattice.dual_norm_half(form.lam)
    if delta <= 0:
        raise DeltaNotPositive("oracle only applies for Delta > 0")
    pref = m1_prefactor(k, nr, lattice.det, delta)
    series = dirichlet_series(form, k, mode, a_max=a_max, budget=budget)
    scale = float(pref) / float(zeta_even(k - nr))
    return FloatWithBound(scale * series.value, abs(scale) * series.error_bound)


def na1_oracle(
    k: int, n_rank: int, n: int, lam_int, a_max: int = 50, budget=None
) -> FloatWithBound:
    """e_{k,1}(n, lambda) for Gram 2*I via gamma / zeta(k-N) times the
    truncated D_a series (brute-force counts)."""
    from .lattice import get_preset

    lam_int = [int(c) for c in lam_int]
    delta4 = 4 * n - sum(c * c for c in lam_int)
    if delta4 <= 0:
        raise DeltaNotPositive("oracle only applies for Delta > 0")
    lattice = get_preset(f"{n_rank}A1")
    mu = tuple(Fraction(c, 2) for c in lam_int)
    form = ShiftedForm(lattice, 1, n, mu)
    series = dirichlet_series(form, k, "truncated", a_max=a_max, budget=budget)
    gamma = gamma_factor(k, n_rank, delta4, "theta")
    scale = float(gamma) / float(zeta_even(k - n_rank))
    return FloatWithBound(scale * series.value, abs(scale) * series.error_bound)


# ---------------------------------------------------------------------------
# general index via the theta-transformation triple sum
# ---------------------------------------------------------------------------

def _inner_sum_reorganized(form: ShiftedForm, c: int, budget=None) -> int:
    """sum over d' mod mc coprime to c and x mod c of
    e_c(m a q(x) - (lambda, x) + n d') with a d' == 1 mod c.

    Substituting x -> d'x turns the summand into e_c(d' Q(x)); the d'-sum is
    then m times a Ramanujan sum, leaving
    m * sum_{a | c} mu(c/a) a (c/a)^N N_a(Q).
    """
    n = form.lattice.rank
    total = 0
    for a in divisors(c):
        mu = mobius(c // a)
        if mu:
            total += mu * a * (c // a) ** n * count_Na(form, a, budget)
    return form.m * total


def _inner_sum_literal(form: ShiftedForm, c: int) -> complex:
    """The same double sum evaluated term by term (test oracle; tiny c only)."""
    from cmath import exp as cexp
    from itertools import product as iproduct

    n = form.lattice.rank
    m = form.m
    w = form.w_int()
    g = form.lattice.gram
    total = 0.0 + 0.0j
    for dp in range(m * c):
        from math import gcd

        if gcd(dp, c) != 1:
            continue
        a_inv = pow(dp % c if c > 1 else 0, -1, c) if c > 1 else 0
        for x in iproduct(range(c), repeat=n):
            xx = sum(x[i] * g[i][j] * x[j] for i in range(n) for j in range(n))
            q_x = xx // 2
            wx = sum(wi * xi for wi, xi in zip(w, x))
            phase = (m * a_inv * q_x - wx + form.n * dp) % c
            total += cexp(2j * pi * phase / c)
    return total


def _nu_sum_exact(lattice: Lattice, m: int, n: int, lam) -> int:
    """The character sum over nu mod q(L): each term is exp(pi i nu ((p,p) -
    (lambda,lambda) + 2nm)) for a representative p of lambda + L, and the
    exponent is an even integer, so the sum is exactly q(L)."""
    lam = [Fraction(c) for c in lam]
    rep = [c - (c.numerator // c.denominator) for c in lam]  # coords in [0,1)
    norm_lam = Fraction(0)
    norm_rep = Fraction(0)
    for i in range(lattice.rank):
        for j in range(lattice.rank):
            norm_lam += lam[i] * lattice.gram[i][j] * lam[j]
            norm_rep += rep[i] * lattice.gram[i][j] * rep[j]
    diff = norm_rep - norm_lam + 2 * n * m
    assert diff.denominator == 1 and diff.numerator % 2 == 0, "phase not even"
    return lattice.level


def coefficient_general_m(
    k: int,
    m: int,
    lattice: Lattice,
    n: int,
    lam,
    c_max: int = 40,
    budget=None,
) -> FloatWithBound:
    """beta_{k,m}(n, lambda) for any even lattice by the theta-transformation
    triple sum, truncated at c <= c_max: the inner x- and nu-sums are exact
    integers, the complex prefactor is evaluated in floating point, and the
    reported error is the O(c_max^(N+2-k)) tail estimate."""
    nr = lattice.rank
    if nr % 2 != 0:
        raise UnsupportedRank("triple-sum pipeline needs even rank")
    _check_weight(k, nr)
    if c_max < 1:
        raise ValueError("c_max must be >= 1")
    lam = tuple(Fraction(c) for c in lam)
    form = ShiftedForm(lattice, m, n, lam)
    delta = Fraction(n * m) - lattice.dual_norm_half(lam)
    if delta <= 0:
        raise DeltaNotPositive("need m n > (lambda, lambda)/2")
    q_level = lattice.level
    q_delta = q_level * delta
    assert q_delta.denominator == 1, "level times Delta must be integral"
    q_delta = int(q_delta)

    s = k - nr // 2
    # (-2 pi i / q)^s / (s-1)! * det^(-1/2) / i^(N/2) * (q Delta)^(s-1)
    prefactor = (-2j * pi / q_level) ** s / factorial(s - 1)
    prefactor *= lattice.det ** (-0.5) / (1j ** (nr // 2))
    prefactor *= float(q_delta) ** (s - 1)
    nu = _nu_sum_exact(lattice, m, n, lam)

    series = Fraction(0)
    for c in range(1, c_max + 1):
        series += Fraction(_inner_sum_reorganized(form, c, budget), (m * c) ** k)
    total = prefactor * nu * float(series)

    tail = (
        abs(prefactor)
        * nu
        * 2.0
        * m ** (1 - k)
        * c_max ** (nr + 2.5 - k)
        / (k - nr - 2.5)
    )
    return FloatWithBound(total.real, tail + abs(total.imag))


# ---------------------------------------------------------------------------
# full q-expansions
# ---------------------------------------------------------------------------

def q_expansion(
    lattice: Lattice,
    k: int,
    m: int,
    n_max: int,
    pipeline: str = "auto",
    a_max: int = 50,
    c_max: int = 40,
    budget=None,
) -> QExpansion:
    """Assemble E_{k,m} up to q^n_max: theta part (coefficient 1 on the
    hyperbolic-norm-zero support) plus Eisenstein coefficients on Delta > 0.

    pipeline "auto" dispatches: det 1 and 8 | N -> unimodular closed form;
    Gram 2*I -> NA1 closed form (both m = 1 only); anything else -> the
    numeric general pipeline.
    """
    nr = lattice.rank
    _check_weight(k, nr)
    if m < 1 or n_max < 0:
        raise ValueError("need m >= 1 and n_max >= 0")
    if pipeline == "auto":
        if lattice.is_unimodular and nr % 8 == 0 and m == 1:
            pipeline = "unimodular"
        elif lattice.is_na1 and m == 1 and nr >= 4 and nr % 2 == 0:
            pipeline = "na1"
        else:
            pipeline = "general"
    if pipeline == "unimodular" and (lattice.det != 1 or nr % 8 != 0 or m != 1):
        raise UnsupportedLattice("unimodular pipeline needs det 1, 8 | N, m = 1")
    if pipeline == "na1" and (not lattice.is_na1 or m != 1 or nr < 4 or nr % 2):
        raise UnsupportedLattice("NA1 pipeline needs Gram 2*I, even N >= 4, m = 1")
    if pipeline not in ("unimodular", "na1", "general"):
        raise ValueError(f"unknown pipeline {pipeline!r}")

    qe = QExpansion(
        weight=k, index=m, lattice_name=lattice.name, gram=lattice.gram, n_max=n_max
    )
    qe.entries.update(theta_coefficients(lattice, m, n_max).entries)

    if n_max >= 1:
        duals = enumerate_dual_by_norm_half(lattice, Fraction(n_max * m))
        for n in range(1, n_max + 1):
            for lam, halfnorm in duals:
                delta = n * m - halfnorm
                if delta <= 0:
                    continue
                if pipeline == "unimodular":
                    coeff = Coefficient(
                        "rational", coefficient_unimodular(k, nr, int(delta))
                    )
                elif pipeline == "na1":
                    lam_int = [int(2 * c) for c in lam]
                    coeff = Coefficient(
                        "rational", coefficient_na1(k, nr, n, lam_int)
                    )
                else:
                    est = coefficient_general_m(
                        k, m, lattice, n, lam, c_max=c_max, budget=budget
                    )
                    coeff = Coefficient("float", est.value, est.error_bound)
                qe.entries[(n, lam)] = coeff
    return qe
