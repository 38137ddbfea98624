"""Brute-force residue-class counting oracles.

The quantities counted here drive every Dirichlet series in the package:

* N_a(Q) = #{x mod a : Q(x) == 0 mod a} for the shifted quadratic polynomial
  Q(x) = (m (x,x) - 2 (lambda, x) + 2n) / 2 with lambda in the dual lattice;
* the diagonal-lattice counts D_a(lambda, Delta) = #{x mod a : q(2x - lambda)
  == Delta mod 4a} with q the sum of squares;
* the plain sum-of-squares counts A_N(t, p^l);
* the binomial weights alpha(lambda), omega(lambda) relating the two.

Counting is exact.  Small residue spaces are walked naively; larger prime
powers go through a change of basis splitting the form into orthogonal
blocks of size <= 2 over Z_p, after which per-block value distributions are
convolved.  Both strategies are cross-checked against each other in the
test suite, and jobs whose work estimate exceeds the configured ceiling
raise BudgetExceeded instead of silently truncating.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, gcd

from .arith import factorize, ord_p
from .errors import BudgetExceeded, InconsistentInput
from .lattice import Lattice

DEFAULT_BUDGET = 10**9


def counting_budget() -> int:
    """The residue-counting work ceiling; override with env var JE_BUDGET."""
    raw = os.environ.get("JE_BUDGET")
    if raw:
        return int(float(raw))
    return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# shifted quadratic forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShiftedForm:
    """Q(x) = (m (x,x) - 2 (lambda, x) + 2 n) / 2, integer-valued on Z^N.

    lambda lives in the dual lattice, so w = S lambda is an integer vector;
    that is exactly the integrality the zero counts need.
    """

    lattice: Lattice
    m: int
    n: int
    lam: tuple[Fraction, ...]

    def __post_init__(self):
        if self.m < 1:
            raise InconsistentInput("index m must be >= 1")
        lam = tuple(Fraction(c) for c in self.lam)
        object.__setattr__(self, "lam", lam)
        if len(lam) != self.lattice.rank:
            raise InconsistentInput("lambda has wrong length")
        for c in self.w_vector():
            if c.denominator != 1:
                raise InconsistentInput("lambda is not in the dual lattice")

    def w_vector(self) -> tuple[Fraction, ...]:
        """S * lambda (integer entries when lambda is a dual vector)."""
        g = self.lattice.gram
        n = self.lattice.rank
        return tuple(
            sum(Fraction(g[i][j]) * self.lam[j] for j in range(n)) for i in range(n)
        )

    def w_int(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.w_vector())

    def value(self, x) -> int:
        g = self.lattice.gram
        nn = self.lattice.rank
        xx = sum(x[i] * g[i][j] * x[j] for i in range(nn) for j in range(nn))
        wx = sum(w * x[i] for i, w in enumerate(self.w_int()))
        f = self.m * xx - 2 * wx + 2 * self.n
        assert f % 2 == 0
        return f // 2


# ---------------------------------------------------------------------------
# naive counting (small residue spaces; the reference oracle)
# ---------------------------------------------------------------------------

def count_na_naive(form: ShiftedForm, a: int, budget: int | None = None) -> int:
    """Walk all a^N residue classes and test Q(x) == 0 mod a directly."""
    if a < 1:
        raise ValueError("a must be >= 1")
    if a == 1:
        return 1
    n = form.lattice.rank
    limit = budget if budget is not None else counting_budget()
    if a**n > limit:
        raise BudgetExceeded(f"naive count over {a}^{n} classes exceeds budget {limit}")
    g = form.lattice.gram
    w = form.w_int()
    m = form.m
    two_a = 2 * a
    count = 0
    for x in product(range(a), repeat=n):
        xx = sum(x[i] * g[i][j] * x[j] for i in range(n) for j in range(n))
        f = m * xx - 2 * sum(wi * xi for wi, xi in zip(w, x)) + 2 * form.n
        if f % two_a == 0:  # Q(x) = f/2 == 0 mod a
            count += 1
    return count


# ---------------------------------------------------------------------------
# block splitting over Z_p
# ---------------------------------------------------------------------------

def _split_blocks(t_mat: list[list[int]], p: int, prec: int):
    """Change of basis x = U y making the even symmetric matrix T block
    diagonal over Z/p^prec with blocks of size <= 2 (size 1 for odd p).

    Returns (u_mat, m_mat, blocks): det(u_mat) is a p-unit and
    u^T T u == m_mat mod p^prec with m_mat supported on the blocks.
    """
    n = len(t_mat)
    big = p**prec
    m = [[t_mat[i][j] % big for j in range(n)] for i in range(n)]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def val(x: int) -> int:
        x %= big
        if x == 0:
            return prec
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    def col_op(target: int, source: int, t: int) -> None:
        # basis change u_target <- u_target - t * u_source
        for r in range(n):
            u[r][target] = (u[r][target] - t * u[r][source]) % big
        for r in range(n):
            m[r][target] = (m[r][target] - t * m[r][source]) % big
        for s in range(n):
            m[target][s] = (m[target][s] - t * m[source][s]) % big

    active = list(range(n))
    blocks: list[tuple[int, ...]] = []
    while active:
        v = prec
        arg = None
        for i in active:
            for j in active:
                w = val(m[i][j])
                if w < v:
                    v, arg = w, (i, j)
        if arg is None:
            # remaining form vanishes mod p^prec
            blocks.extend((i,) for i in active)
            break
        i, j = arg
        diag = next((d for d in active if val(m[d][d]) == v), None)
        if diag is None and p != 2:
            # odd p: a transvection moves the minimal valuation onto the
            # diagonal (the cross term 2*m[i][j] is a unit times p^v)
            col_op(i, j, -1)
            diag = i
        if diag is not None:
            i = diag
            piv_unit = (m[i][i] // p**v) % big
            inv = pow(piv_unit, -1, big)
            for j2 in [x for x in active if x != i]:
                if m[i][j2] % big == 0:
                    continue
                t = ((m[i][j2] // p**v) * inv) % big
                col_op(j2, i, t)
            blocks.append((i,))
            active.remove(i)
        else:
            # p = 2 with the minimum on an off-diagonal entry: 2x2 pivot
            det2 = (m[i][i] * m[j][j] - m[i][j] * m[i][j]) % big
            if val(det2) != 2 * v:
                raise AssertionError("block splitting lost p-adic precision")
            dinv = pow((det2 // p ** (2 * v)) % big, -1, big)
            for k in [x for x in active if x not in (i, j)]:
                a_num = (m[j][j] * m[i][k] - m[i][j] * m[j][k]) % big
                b_num = (m[i][i] * m[j][k] - m[i][j] * m[i][k]) % big
                ta = ((a_num // p ** (2 * v)) * dinv) % big
                tb = ((b_num // p ** (2 * v)) * dinv) % big
                if ta:
                    col_op(k, i, ta)
                if tb:
                    col_op(k, j, tb)
            blocks.append((i, j))
            active.remove(i)
            active.remove(j)
    return u, m, blocks


def _convolve_mod(d1: list[int], d2: list[int], modulus: int) -> list[int]:
    out = [0] * modulus
    for s, c1 in enumerate(d1):
        if c1:
            for t, c2 in enumerate(d2):
                if c2:
                    out[(s + t) % modulus] += c1 * c2
    return out


def _convolve_mod_numpy(d1, d2, modulus: int):
    """Cyclic integer convolution via numpy; caller guarantees the counts
    stay below 2^62 so int64 arithmetic is exact."""
    import numpy as np

    full = np.convolve(np.asarray(d1, dtype=np.int64), np.asarray(d2, dtype=np.int64))
    out = np.zeros(modulus, dtype=np.int64)
    for start in range(0, len(full), modulus):
        chunk = full[start : start + modulus]
        out[: len(chunk)] += chunk
    return out.tolist()


def count_na_prime_power(
    form: ShiftedForm, p: int, l: int, budget: int | None = None
) -> int:
    """N_{p^l}(Q) by block splitting and value-distribution convolution.

    The doubled form F(x) = m (x,x) - 2 (S lambda, x) + 2n is always even,
    and Q == 0 mod p^l iff F == 0 mod 2 p^l; for odd p the factor 2 is a
    unit, for p = 2 the distributions are taken mod 2^(l+1).
    """
    if l == 0:
        return 1
    nrank = form.lattice.rank
    limit = budget if budget is not None else counting_budget()
    y_mod = p**l
    value_mod = 2 * y_mod if p == 2 else y_mod
    # counts are bounded by y_mod^N; below 2^62 the convolutions can run in
    # exact int64 numpy (roughly 64x cheaper per cell than big-int Python)
    use_numpy = (y_mod**nrank).bit_length() < 62
    enum_cost = nrank * (y_mod**2 if p == 2 else y_mod)
    conv_cost = nrank * value_mod**2 // (64 if use_numpy else 1)
    if enum_cost + conv_cost > limit:
        raise BudgetExceeded(
            f"work estimate {enum_cost + conv_cost} exceeds budget {limit}"
        )

    t_mat = [[form.m * form.lattice.gram[i][j] for j in range(nrank)] for i in range(nrank)]
    det_t = 1
    for i in range(nrank):
        det_t *= form.m
    det_t *= form.lattice.det
    prec = l + 4 + 2 * ord_p(det_t, p)
    u, m_mat, blocks = _split_blocks(t_mat, p, prec)
    big = p**prec

    w = form.w_int()
    c = [sum(u[r][i] * w[r] for r in range(nrank)) % big for i in range(nrank)]

    dist = [0] * value_mod
    dist[0] = 1
    for block in blocks:
        bd = [0] * value_mod
        if len(block) == 1:
            (i,) = block
            bii, ci = m_mat[i][i], c[i]
            for y in range(y_mod):
                bd[(bii * y * y - 2 * ci * y) % value_mod] += 1
        else:
            i, j = block
            bii, bjj, bij = m_mat[i][i], m_mat[j][j], m_mat[i][j]
            ci, cj = c[i], c[j]
            for y1 in range(y_mod):
                base = bii * y1 * y1 - 2 * ci * y1
                cross = 2 * bij * y1 - 2 * cj
                for y2 in range(y_mod):
                    bd[(base + y2 * (bjj * y2 + cross)) % value_mod] += 1
        if use_numpy:
            dist = _convolve_mod_numpy(dist, bd, value_mod)
        else:
            dist = _convolve_mod(dist, bd, value_mod)
    return dist[(-2 * form.n) % value_mod]


def count_Na(form: ShiftedForm, a: int, budget: int | None = None, naive: bool = False) -> int:
    """N_a(Q) = #{x mod a : Q(x) == 0 mod a}, exact.

    Computed per prime power and recombined by CRT multiplicativity; pass
    naive=True to force the plain residue walk (reference oracle).
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    if naive:
        return count_na_naive(form, a, budget)
    result = 1
    for p, e in factorize(a):
        result *= count_na_prime_power(form, p, e, budget)
    return result


# ---------------------------------------------------------------------------
# NA1-specific counts
# ---------------------------------------------------------------------------

def count_D_NA1(
    n_rank: int, lam, delta: int, a: int, budget: int | None = None
) -> int:
    """D_a = #{x mod a : q(2x - lambda) == delta mod 4a} with q(y) = sum y_i^2
    (the quadratic form of Gram 2*I)."""
    if a < 1:
        raise ValueError("a must be >= 1")
    lam = [int(c) for c in lam]
    if len(lam) != n_rank:
        raise InconsistentInput("lambda has wrong length")
    limit = budget if budget is not None else counting_budget()
    mod = 4 * a
    if n_rank * (a + mod**2) > limit:
        raise BudgetExceeded("distribution work exceeds budget")
    dist = [0] * mod
    dist[0] = 1
    for li in lam:
        bd = [0] * mod
        for y in range(a):
            bd[(2 * y - li) ** 2 % mod] += 1
        dist = _convolve_mod(dist, bd, mod)
    return dist[delta % mod]


def count_sum_squares(
    n_rank: int, target: int, p: int, l: int, budget: int | None = None
) -> int:
    """A_N(target, p^l) = #{x mod p^l : sum x_i^2 == target mod p^l}."""
    if l == 0:
        return 1
    mod = p**l
    limit = budget if budget is not None else counting_budget()
    if n_rank * (mod + mod**2) > limit:
        raise BudgetExceeded("distribution work exceeds budget")
    sq = [0] * mod
    for y in range(mod):
        sq[y * y % mod] += 1
    dist = [0] * mod
    dist[0] = 1
    for _ in range(n_rank):
        dist = _convolve_mod(dist, sq, mod)
    return dist[target % mod]


def alpha_omega(n_rank: int, lam, delta: int) -> tuple[int, int]:
    """The binomial weights relating D_a to the sum-of-squares counts A_N.

    alpha depends on lambda only through j = #{i : lambda_i even}:
        alpha = sum_r (sum_i C(j, 4i+r)) (sum_i C(N-j, 4i+r));
    omega counts sign patterns with coordinate sum == -delta mod 4:
        omega = sum_{s == -delta mod 4} C(N, s).
    """
    lam = [int(c) for c in lam]
    if len(lam) != n_rank:
        raise InconsistentInput("lambda has wrong length")
    j = sum(1 for c in lam if c % 2 == 0)

    def residue_sum(total: int, r: int) -> int:
        return sum(comb(total, s) for s in range(r, total + 1, 4))

    alpha = sum(residue_sum(j, r) * residue_sum(n_rank - j, r) for r in range(4))
    r = (-delta) % 4
    omega = residue_sum(n_rank, r)
    return alpha, omega


def alpha_set_count(n_rank: int, lam) -> int:
    """alpha(lambda) by direct enumeration of sign patterns (test oracle):
    #{sigma in {0,1}^N : sum over odd-coordinate slots == sum over
    even-coordinate slots mod 4}."""
    lam = [int(c) for c in lam]
    count = 0
    even_idx = [i for i in range(n_rank) if lam[i] % 2 == 0]
    for sigma in product((0, 1), repeat=n_rank):
        s_even = sum(sigma[i] for i in even_idx)
        s_odd = sum(sigma) - s_even
        if (s_odd - s_even) % 4 == 0:
            count += 1
    return count
