"""Exact integer/rational arithmetic and the classical arithmetic functions
the coefficient formulas consume.

Everything here returns exact values: Fractions, integers, or PiRational
(a rational multiple of an integer power of pi).  Conventions:

* Bernoulli numbers use B_1 = -1/2, so zeta(2m) = (-1)^(m+1) (2pi)^(2m) B_2m / (2 (2m)!).
* Generalized Bernoulli numbers B_{n,chi} for the two characters mod 4 give
  the L-values at non-positive integers via L(1-n, chi) = -B_{n,chi}/n.
* The Dirichlet beta function beta(s) = L(s, chi_-4) at odd s >= 1 is an exact
  rational multiple of pi^s via Euler numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, isqrt


# ---------------------------------------------------------------------------
# factorization and multiplicative functions
# ---------------------------------------------------------------------------

def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization of n >= 1, primes ascending.

    Desk scale (n up to ~10^12); no Pollard rho on purpose.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    # 6k +- 1 wheel
    step = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    facs = factorize(n)
    return len(facs) == 1 and facs[0][1] == 1


def primes_up_to(bound: int) -> list[int]:
    """Primes <= bound by sieve."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, b in enumerate(sieve) if b]


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, ascending."""
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def divisor_sigma(s: int, n: int) -> Fraction:
    """sigma_s(n) = sum of d^s over divisors d of n; exact for negative s."""
    if n < 1:
        raise ValueError("divisor_sigma needs n >= 1")
    return sum((Fraction(d) ** s for d in divisors(n)), Fraction(0))


def mobius(n: int) -> int:
    """Moebius function via factorization."""
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    facs = factorize(n)
    if any(e > 1 for _, e in facs):
        return 0
    return -1 if len(facs) % 2 else 1


def ord_p(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("ord_p(0) is infinite")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1: Legendre at odd primes, the
    standard mod-8 rule at 2, extended multiplicatively."""
    if n < 1:
        raise ValueError("kronecker needs n >= 1")
    result = 1
    for p, e in factorize(n):
        if p == 2:
            if a % 2 == 0:
                return 0
            s = 1 if a % 8 in (1, 7) else -1
        else:
            s = legendre(a, p)
            if s == 0:
                return 0
        result *= s**e
    return result


# ---------------------------------------------------------------------------
# Bernoulli and Euler numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n in the B_1 = -1/2 convention.

    Standard recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1.
    """
    if n < 0:
        raise ValueError("bernoulli needs n >= 0")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(n):
        acc += comb(n + 1, j) * bernoulli(j)
    return -acc / (n + 1)


def bernoulli_polynomial(n: int, x: Fraction) -> Fraction:
    """B_n(x) = sum_j C(n,j) B_j x^(n-j), exact at rational x."""
    x = Fraction(x)
    return sum(
        (comb(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def euler_number(n: int) -> int:
    """Euler number E_n (E_0 = 1, E_2 = -1, E_4 = 5, ...); zero at odd n."""
    if n < 0:
        raise ValueError("euler_number needs n >= 0")
    if n % 2 == 1:
        return 0
    if n == 0:
        return 1
    # sum_{k=0}^{n/2} C(n, 2k) E_2k = 0
    acc = 0
    for k in range(n // 2):
        acc += comb(n, 2 * k) * euler_number(2 * k)
    return -acc


# ---------------------------------------------------------------------------
# Dirichlet characters mod 4 and their L-values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirichletCharacterMod4:
    """The two characters mod 4: the principal one (discriminant +1) and
    chi_-4 (discriminant -1, the odd character)."""

    discriminant: int  # +1 or -1

    def __post_init__(self):
        if self.discriminant not in (1, -1):
            raise ValueError("discriminant must be +1 or -1")

    def __call__(self, a: int) -> int:
        if a % 2 == 0:
            return 0
        if self.discriminant == 1:
            return 1
        return 1 if a % 4 == 1 else -1

    @property
    def is_odd(self) -> bool:
        """Whether chi(-1) = -1."""
        return self.discriminant == -1


CHI_PRINCIPAL = DirichletCharacterMod4(1)
CHI_MINUS4 = DirichletCharacterMod4(-1)


def generalized_bernoulli(n: int, chi: DirichletCharacterMod4) -> Fraction:
    """B_{n,chi} = f^(n-1) sum_{a=1}^{f} chi(a) B_n(a/f) with conductor f = 4."""
    if n < 1:
        raise ValueError("generalized_bernoulli needs n >= 1")
    f = 4
    acc = Fraction(0)
    for a in range(1, f + 1):
        c = chi(a)
        if c:
            acc += c * bernoulli_polynomial(n, Fraction(a, f))
    return Fraction(f) ** (n - 1) * acc


def l_value_negative(n: int, chi: DirichletCharacterMod4) -> Fraction:
    """L(1-n, chi) = -B_{n,chi}/n, exact."""
    return -generalized_bernoulli(n, chi) / n


# ---------------------------------------------------------------------------
# PiRational
# ---------------------------------------------------------------------------

_PI = 3.14159265358979323846264338327950288


@dataclass(frozen=True)
class PiRational:
    """An exact value r * pi^e with r rational.

    Closed under multiplication and division (pi powers add/subtract);
    addition is only defined between values of equal pi power.  The
    canonical zero has pi_power 0.  Quantities exposed by the density and
    coefficient APIs keep pi_power >= 0; negative powers occur only in
    intermediate zeta-ratio quotients.
    """

    coeff: Fraction
    pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.coeff == 0 and self.pi_power != 0:
            object.__setattr__(self, "pi_power", 0)

    @staticmethod
    def zero() -> "PiRational":
        return PiRational(Fraction(0), 0)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def _coerce(self, other) -> "PiRational":
        if isinstance(other, PiRational):
            return other
        if isinstance(other, (int, Fraction)):
            return PiRational(Fraction(other), 0)
        return NotImplemented

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.coeff == 0 or o.coeff == 0:
            return PiRational.zero()
        return PiRational(self.coeff * o.coeff, self.pi_power + o.pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.coeff == 0:
            raise ZeroDivisionError("division by zero PiRational")
        if self.coeff == 0:
            return PiRational.zero()
        return PiRational(self.coeff / o.coeff, self.pi_power - o.pi_power)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.coeff == 0:
            return o
        if o.coeff == 0:
            return self
        if self.pi_power != o.pi_power:
            raise ValueError("cannot add PiRationals of different pi powers")
        return PiRational(self.coeff + o.coeff, self.pi_power)

    __radd__ = __add__

    def __neg__(self):
        return PiRational(-self.coeff, self.pi_power)

    def __sub__(self, other):
        o = self._coerce(other)
        return self + (-o)

    def as_fraction(self) -> Fraction:
        """The rational value; raises unless the pi power is zero."""
        if self.coeff != 0 and self.pi_power != 0:
            raise ValueError(f"pi power {self.pi_power} did not cancel")
        return self.coeff

    def __float__(self) -> float:
        return float(self.coeff) * _PI**self.pi_power

    def __repr__(self):
        if self.pi_power == 0:
            return f"{self.coeff}"
        return f"({self.coeff})*pi^{self.pi_power}"


def zeta_even(s: int) -> PiRational:
    """zeta(s) for even s >= 2 as an exact PiRational:
    zeta(2m) = (-1)^(m+1) (2pi)^(2m) B_2m / (2 (2m)!)."""
    if s < 2 or s % 2 != 0:
        raise ValueError("zeta_even needs even s >= 2")
    m = s // 2
    sign = 1 if m % 2 == 1 else -1
    coeff = sign * Fraction(2**s) * bernoulli(s) / (2 * factorial(s))
    return PiRational(coeff, s)


def dirichlet_beta_odd(s: int) -> PiRational:
    """beta(s) = L(s, chi_-4) for odd s >= 1 as an exact PiRational:
    beta(2j+1) = (-1)^j E_2j pi^(2j+1) / (4^(j+1) (2j)!)."""
    if s < 1 or s % 2 != 1:
        raise ValueError("dirichlet_beta_odd needs odd s >= 1")
    j = (s - 1) // 2
    sign = 1 if j % 2 == 0 else -1
    coeff = sign * Fraction(euler_number(2 * j), 4 ** (j + 1) * factorial(2 * j))
    return PiRational(coeff, s)


def l_chi4_positive(s: int, chi: DirichletCharacterMod4) -> PiRational:
    """L(s, chi) at positive integer s of matching parity, exact.

    For the principal character this is zeta(s)(1 - 2^-s) and needs even s;
    for chi_-4 it is beta(s) and needs odd s.
    """
    if chi.discriminant == 1:
        z = zeta_even(s)
        return PiRational(z.coeff * (1 - Fraction(1, 2**s)), z.pi_power)
    return dirichlet_beta_odd(s)
