"""Independent verification battery.

Three kinds of checks:

* transformation laws (theta inversion, Jacobi slash invariance) evaluated
  numerically on truncated expansions, with compensated (exact) summation
  and explicit truncation witnesses -- these are double-precision checks
  and never claim exactness;
* closed formulas held against brute-force counting, compared as exact
  rationals;
* transcription records: places where a printed source formula disagrees
  with the independently validated pipeline get a flag in the report
  instead of a silent fix.

A report with any failed check makes the CLI exit nonzero; flags are
informational and printed loudly but do not fail the run.
"""

from __future__ import annotations

from cmath import exp as cexp
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import fsum, pi
from typing import Optional, Sequence, Union

import numpy as np

from .arith import ord_p
from .counting import (
    ShiftedForm,
    alpha_omega,
    alpha_set_count,
    count_D_NA1,
    count_na_prime_power,
    count_sum_squares,
)
from .density import (
    density_counting,
    density_good_prime,
    density_na1_odd,
    density_na1_two,
    density_unimodular,
    genus_representation,
    local_factor_na1_odd,
    local_factor_unimodular,
    rp_printed_na1,
    rp_printed_unimodular,
)
from .eisenstein import (
    beta_m1_oracle,
    coefficient_general_m,
    coefficient_na1,
    coefficient_na1_printed,
    coefficient_unimodular,
    gamma_factor,
    na1_oracle,
)
from .errors import TruncationInsufficient
from .lattice import (
    Lattice,
    discriminant_representatives,
    enumerate_by_norm,
    enumerate_shifted,
    get_preset,
    validate_lattice,
)
from .qexp import QExpansion


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------

@dataclass
class CheckRecord:
    name: str
    point: str
    lhs: str
    rhs: str
    passed: bool
    error: Optional[float] = None
    tol: Optional[float] = None
    exact: bool = False
    flag: Optional[str] = None

    def to_json(self) -> dict:
        d = {
            "name": self.name,
            "point": self.point,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "exact": self.exact,
        }
        if self.error is not None:
            d["abs_error"] = self.error
        if self.tol is not None:
            d["tol"] = self.tol
        if self.flag:
            d["flag"] = self.flag
        return d


@dataclass
class VerificationReport:
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def counts(self) -> tuple[int, int, int]:
        ok = sum(r.passed for r in self.records)
        flagged = sum(1 for r in self.records if r.flag)
        return ok, len(self.records) - ok, flagged

    def extend(self, records: Sequence[CheckRecord]) -> None:
        self.records.extend(records)

    def to_json(self) -> dict:
        ok, bad, flagged = self.counts
        return {
            "summary": {"pass": ok, "fail": bad, "flagged": flagged},
            "checks": [r.to_json() for r in self.records],
        }

    def format_table(self, verbose: bool = False) -> str:
        lines = []
        groups: dict[str, list[CheckRecord]] = {}
        for r in self.records:
            groups.setdefault(r.name, []).append(r)
        for name, recs in groups.items():
            bad = [r for r in recs if not r.passed]
            worst = max((r.error for r in recs if r.error is not None), default=None)
            status = "PASS" if not bad else f"FAIL ({len(bad)}/{len(recs)})"
            extra = f"  worst |err| = {worst:.2e}" if worst is not None else ""
            lines.append(f"[{status:>9}] {name} ({len(recs)} checks){extra}")
            shown = bad if not verbose else recs
            for r in shown:
                lines.append(f"    {'ok' if r.passed else 'XX'} {r.point}: {r.lhs} vs {r.rhs}")
            for r in recs:
                if r.flag:
                    lines.append(f"    ** flag @ {r.point}: {r.flag}")
        ok, bad, flagged = self.counts
        lines.append(f"total: {ok} passed, {bad} failed, {flagged} flagged")
        return "\n".join(lines)


def _exact_record(name, point, lhs, rhs) -> CheckRecord:
    return CheckRecord(
        name=name,
        point=point,
        lhs=str(lhs),
        rhs=str(rhs),
        passed=lhs == rhs,
        exact=True,
    )


def _numeric_record(name, point, lhs, rhs, tol, relative=False) -> CheckRecord:
    err = abs(lhs - rhs)
    if relative:
        err /= max(abs(rhs), 1e-300)
    return CheckRecord(
        name=name,
        point=point,
        lhs=f"{lhs:.12g}",
        rhs=f"{rhs:.12g}",
        passed=err < tol,
        error=float(err),
        tol=tol,
    )


# ---------------------------------------------------------------------------
# numeric theta series and expansion evaluation
# ---------------------------------------------------------------------------

def _csum(terms: np.ndarray) -> complex:
    """Compensated (exact) summation of a complex term array."""
    return complex(fsum(terms.real.tolist()), fsum(terms.imag.tolist()))


def theta_numeric(
    lattice: Lattice, a_vec, b_vec, tau: complex, z, q_trunc: int
) -> tuple[complex, float]:
    """Theta_{S,a,b}(tau, z) = sum_x exp(pi i [(x+a, x+a) tau + 2 (x+a, z+b)])
    truncated at (x+a, x+a) <= 2 q_trunc.

    Returns (value, ring) where ring is the total magnitude of the two
    outermost norm shells -- the truncation witness.
    """
    n = lattice.rank
    a_vec = [Fraction(v) for v in a_vec]
    hits = enumerate_shifted(lattice.gram, a_vec, Fraction(2 * q_trunc))
    ys = np.array(
        [[float(Fraction(x[i]) + a_vec[i]) for i in range(n)] for x, _ in hits]
    )
    norms = np.array([float(nv) for _, nv in hits])
    s_mat = np.array(lattice.gram, dtype=float)
    zb = np.asarray(z, dtype=complex) + np.array([float(Fraction(v)) for v in b_vec])
    dots = ys @ (s_mat @ zb)
    terms = np.exp(1j * pi * (norms * tau + 2 * dots))
    ring = float(np.abs(terms[norms > 2 * q_trunc - 2]).sum()) if len(terms) else 0.0
    return _csum(terms), ring


class ExpansionEvaluator:
    """Array-backed numeric evaluation of a truncated Fourier expansion
    sum c(n, lambda) e^(2 pi i n tau) e^(2 pi i (lambda, z))."""

    def __init__(self, lattice: Lattice, weight: int, index: int, n_vals, lams, coeffs):
        self.lattice = lattice
        self.weight = weight
        self.index = index
        self.n_vals = np.asarray(n_vals, dtype=float)
        self.lams = np.asarray(lams, dtype=float)
        self.coeffs = np.asarray(coeffs, dtype=complex)
        self._s = np.array(lattice.gram, dtype=float)

    @staticmethod
    def from_qexpansion(lattice: Lattice, qe: QExpansion) -> "ExpansionEvaluator":
        n_vals, lams, coeffs = [], [], []
        for (n, lam), coeff in qe.entries.items():
            n_vals.append(n)
            lams.append([float(c) for c in lam])
            coeffs.append(float(coeff.value))
        return ExpansionEvaluator(lattice, qe.weight, qe.index, n_vals, lams, coeffs)

    @staticmethod
    def build_unimodular(lattice: Lattice, k: int, n_max: int) -> "ExpansionEvaluator":
        """E_{k,1} for an even unimodular lattice, assembled shell by shell
        (coefficients depend only on the hyperbolic norm; the Delta = 0
        term on each shell is the theta part)."""
        shells = enumerate_by_norm(lattice, n_max)
        coeff_by_delta = {0: 1.0}
        for d in range(1, n_max + 1):
            coeff_by_delta[d] = float(coefficient_unimodular(k, lattice.rank, d))
        n_vals, lams, coeffs = [], [], []
        for q_norm, vecs in shells.items():
            for x in vecs:
                for n in range(q_norm, n_max + 1):
                    n_vals.append(n)
                    lams.append(list(map(float, x)))
                    coeffs.append(coeff_by_delta[n - q_norm])
        return ExpansionEvaluator(lattice, k, 1, n_vals, lams, coeffs)

    def value(self, tau: complex, z) -> complex:
        zz = np.asarray(z, dtype=complex)
        dots = self.lams @ (self._s @ zz)
        terms = self.coeffs * np.exp(2j * pi * (self.n_vals * tau + dots))
        return _csum(terms)


def evaluate_qexpansion(lattice: Lattice, qe: QExpansion, tau: complex, z) -> complex:
    return ExpansionEvaluator.from_qexpansion(lattice, qe).value(tau, z)


# ---------------------------------------------------------------------------
# transformation-law checks
# ---------------------------------------------------------------------------

def check_theta_transformation(
    lattice: Lattice,
    a_vec,
    tau: complex,
    z=None,
    q_trunc: int = 10,
    tol: float = 1e-8,
) -> CheckRecord:
    """Theta_{S,a,0}(-1/tau, z/tau) against
    (tau/i)^(N/2) det^(-1/2) e^(pi i (z,z)/tau) sum_p Theta_{S,p,-a}(tau, z),
    p running over the discriminant group."""
    n = lattice.rank
    if z is None:
        z = np.zeros(n, dtype=complex)
    z = np.asarray(z, dtype=complex)
    zeros = [Fraction(0)] * n
    lhs, ring_l = theta_numeric(lattice, a_vec, zeros, -1 / tau, z / tau, q_trunc)
    rhs_sum = 0j
    ring_r = 0.0
    neg_a = [-Fraction(v) for v in a_vec]
    for p_rep in discriminant_representatives(lattice):
        val, ring = theta_numeric(lattice, p_rep, neg_a, tau, z, q_trunc)
        rhs_sum += val
        ring_r = max(ring_r, ring)
    s_mat = np.array(lattice.gram, dtype=float)
    zsz = complex(z @ (s_mat @ z))
    factor = (tau / 1j) ** (n / 2) * lattice.det ** (-0.5) * cexp(1j * pi * zsz / tau)
    rhs = factor * rhs_sum
    witness = ring_l + abs(factor) * ring_r
    if witness > tol / 20:
        raise TruncationInsufficient(
            f"theta tails ({witness:.2e}) too large for tol {tol:.1e}; raise q_trunc"
        )
    point = f"{lattice.name}, a={tuple(str(v) for v in a_vec)}, tau={tau}, q_trunc={q_trunc}"
    return _numeric_record("theta_transformation", point, lhs, rhs, tol)


def check_slash_invariance(
    lattice: Lattice,
    k: int,
    m: int,
    element,
    tau: complex,
    z,
    expansion: Union[QExpansion, ExpansionEvaluator],
    tol: float,
) -> CheckRecord:
    """Invariance of the truncated expansion under a Jacobi-group generator:
    element is "T", "S", or ("translate", x, y) with x, y integer vectors.
    Reports the relative error |E|_{k,m} g - E| / |E|."""
    ev = (
        expansion
        if isinstance(expansion, ExpansionEvaluator)
        else ExpansionEvaluator.from_qexpansion(lattice, expansion)
    )
    z = np.asarray(z, dtype=complex)
    s_mat = np.array(lattice.gram, dtype=float)
    rhs = ev.value(tau, z)
    if element == "T":
        lhs = ev.value(tau + 1, z)
        desc = "T"
    elif element == "S":
        zsz = complex(z @ (s_mat @ z))
        lhs = tau ** (-k) * cexp(-1j * pi * m * zsz / tau) * ev.value(-1 / tau, z / tau)
        desc = "S"
    else:
        _, xv, yv = element
        xv = np.asarray(xv, dtype=float)
        yv = np.asarray(yv, dtype=float)
        xsx = float(xv @ (s_mat @ xv))
        xsz = complex(xv @ (s_mat @ z))
        lhs = cexp(1j * pi * m * (xsx * tau + 2 * xsz)) * ev.value(tau, z + xv * tau + yv)
        desc = f"[{tuple(int(v) for v in xv)},{tuple(int(v) for v in yv)}]"
    point = f"{lattice.name}, k={k}, m={m}, {desc}, tau={tau}"
    return _numeric_record("slash_invariance", point, lhs, rhs, tol, relative=True)


# ---------------------------------------------------------------------------
# formula-vs-oracle suite
# ---------------------------------------------------------------------------

def _check_unimodular_lemma(extended: bool) -> list[CheckRecord]:
    e8 = get_preset("E8")
    recs = []
    zeros = (Fraction(0),) * 8
    l_max = 2 if extended else 1
    for p in (2, 3):
        for l in range(1, l_max + 1):
            for delta in range(1, 9):
                form = ShiftedForm(e8, 1, -delta, zeros)
                counted = Fraction(count_na_prime_power(form, p, l), p ** (l * 7))
                closed = density_unimodular(8, p, l, delta)
                r = _exact_record(
                    "unimodular_lemma_vs_counting",
                    f"E8, p={p}, l={l}, Delta={delta}",
                    closed,
                    counted,
                )
                recs.append(r)
    return recs


def _check_good_prime(extended: bool) -> list[CheckRecord]:
    recs = []
    lattices = [
        get_preset("2A1"),
        get_preset("4A1"),
        get_preset("D4"),
        validate_lattice([[2, 1], [1, 2]], "A2"),
        get_preset("A1"),
        get_preset("3A1"),
    ]
    for lat in lattices:
        primes = [p for p in (3, 5, 7) if (2 * lat.det) % p != 0][:2]
        t_values = list(range(1, 13)) + [18, 27] + ([25, 50, 75] if extended else [25])
        for p in primes:
            for t in t_values:
                closed = density_good_prime(lat, p, t)
                counted = density_counting(lat, p, t).value
                recs.append(
                    _exact_record(
                        "good_prime_vs_counting",
                        f"{lat.name}, p={p}, t={t}",
                        closed,
                        counted,
                    )
                )
    return recs


def _check_na1_odd(extended: bool) -> list[CheckRecord]:
    recs = []
    ranks = (2, 4, 6) if extended else (2, 4)
    for n_rank in ranks:
        for p in (3, 5):
            for l in (1, 2):
                for delta in range(-24, 25):
                    counted = Fraction(
                        count_sum_squares(n_rank, -delta, p, l),
                        p ** (l * (n_rank - 1)),
                    )
                    closed = density_na1_odd(n_rank, p, l, delta)
                    recs.append(
                        _exact_record(
                            "na1_odd_prime_vs_counting",
                            f"N={n_rank}, p={p}, l={l}, Delta={delta}",
                            closed,
                            counted,
                        )
                    )
    return recs


def _check_na1_two(extended: bool) -> list[CheckRecord]:
    recs = []
    ranks = (2, 4, 6) if extended else (2, 4)
    l_max = 4 if extended else 3
    edge_points = 0  # the doubted branch: l = ord_2(kappa)+1, N == 0 mod 4
    edge_ok = 0
    for n_rank in ranks:
        for pattern in product((0, 1), repeat=n_rank):
            for n in range(-6, 7):
                delta = 4 * n - sum(x * x for x in pattern)
                if abs(delta) > 24:
                    continue
                for l in range(1, l_max + 1):
                    counted = Fraction(
                        count_D_NA1(n_rank, pattern, -delta, 2**l),
                        2 ** (l * (n_rank - 1)),
                    )
                    closed = density_na1_two(n_rank, pattern, l, delta)
                    rec = _exact_record(
                        "na1_two_vs_counting",
                        f"N={n_rank}, lam={pattern}, n={n}, l={l}",
                        closed,
                        counted,
                    )
                    if not rec.passed:
                        rec.flag = (
                            "counting disagrees with the printed p=2 formula; "
                            "the counting value is authoritative"
                        )
                    if (
                        not any(x % 2 for x in pattern)
                        and delta != 0
                        and delta % 8 == 0
                        and n_rank % 4 == 0
                        and l == ord_p(-delta // 4, 2) + 1
                    ):
                        edge_points += 1
                        edge_ok += rec.passed
                    recs.append(rec)
    recs.append(
        CheckRecord(
            name="na1_two_vs_counting",
            point=f"doubted branch l = ord_2(kappa)+1, N == 0 mod 4: {edge_points} grid points",
            lhs="printed bracket formula",
            rhs="brute-force counting",
            passed=edge_points == edge_ok and edge_points > 0,
            exact=True,
            flag=(
                "the printed bracket {(2^(ord(kappa)(N/2-1))-1)/(2^(N/2-1)-1) - 2} "
                f"matches counting on all {edge_points} exercised grid points"
                if edge_points == edge_ok
                else "printed bracket formula REFUTED by counting; counting is pinned"
            ),
        )
    )
    return recs


def _check_stabilization(extended: bool) -> list[CheckRecord]:
    recs = []
    lattices = [get_preset("2A1"), get_preset("4A1"), get_preset("D4")]
    for lat in lattices:
        zeros = (Fraction(0),) * lat.rank
        for p in (2, 3, 5):
            for delta in (1, 2, 3, 4, 6, 9, 12) if extended else (1, 2, 4, 9):
                form = ShiftedForm(lat, 1, -delta, zeros)
                threshold = 2 * ord_p(2 * delta, p)
                vals = []
                for l in range(threshold + 1, threshold + 3):
                    if (p ** l) ** 2 * lat.rank > 10**8:
                        break
                    vals.append(
                        Fraction(
                            count_na_prime_power(form, p, l),
                            p ** (l * (lat.rank - 1)),
                        )
                    )
                if len(vals) < 2:
                    continue
                recs.append(
                    _exact_record(
                        "counting_stabilization",
                        f"{lat.name}, p={p}, Delta={delta}, l={threshold + 1}..{threshold + 2}",
                        vals[0],
                        vals[1],
                    )
                )
    return recs


def _check_corollary(extended: bool) -> list[CheckRecord]:
    recs = []
    n_top = 12
    for n_rank in range(1, n_top + 1):
        bad = 0
        total = 0
        for pattern in product((0, 1), repeat=n_rank):
            # any Delta consistent with the pattern: Delta = 4n - q(lambda)
            delta = 4 - sum(x * x for x in pattern)
            a, w = alpha_omega(n_rank, pattern, delta)
            total += 1
            if a != w:
                bad += 1
        recs.append(
            CheckRecord(
                name="corollary_alpha_equals_omega",
                point=f"N={n_rank}, all {total} parity patterns",
                lhs="alpha(lambda)",
                rhs="omega(lambda)",
                passed=bad == 0,
                exact=True,
            )
        )
    # alpha from the printed double-binomial sum vs direct set enumeration
    for n_rank in (1, 2, 3, 4, 6, 8):
        ok = True
        for pattern in product((0, 1), repeat=n_rank):
            a, _ = alpha_omega(n_rank, pattern, 4 - sum(pattern))
            if a != alpha_set_count(n_rank, pattern):
                ok = False
        recs.append(
            CheckRecord(
                name="alpha_binomial_vs_set_count",
                point=f"N={n_rank}",
                lhs="binomial formula",
                rhs="sign-pattern enumeration",
                passed=ok,
                exact=True,
            )
        )
    # D_{p^l} = A_N for odd p (and the alpha/omega-weighted identity)
    for n_rank in (2, 4):
        for p in (3, 5):
            for l in (1, 2):
                for pattern in product((0, 1), repeat=n_rank):
                    for n in (0, 1, 2):
                        delta = 4 * n - sum(x * x for x in pattern)
                        d_cnt = count_D_NA1(n_rank, pattern, -delta, p**l)
                        a_cnt = count_sum_squares(n_rank, -delta, p, l)
                        recs.append(
                            _exact_record(
                                "corollary_D_equals_A",
                                f"N={n_rank}, p={p}, l={l}, lam={pattern}, n={n}",
                                d_cnt,
                                a_cnt,
                            )
                        )
    return recs


def _check_rescaling(extended: bool) -> list[CheckRecord]:
    # rescaling identities for the doubled Gram matrix: counting forces
    # delta_p(2t, L(2)) = delta_p(t, L) at odd p and
    # delta_2(2t, L(2)) = 2 delta_2(t, L) at p = 2.  The printed remark puts
    # the factor 2 on the other side of the p = 2 identity; a one-line lift
    # count (each residue mod 2^(a-1) has 2^N lifts mod 2^a) plus brute force
    # refute that placement, so the printed constant gets a flag.
    recs = []
    for name in ("2A1", "4A1", "D4"):
        lat = get_preset(name)
        doubled = validate_lattice(
            [[2 * v for v in row] for row in lat.gram], f"{name}(2)"
        )
        for t in (1, 2, 3, 4, 6):
            for p in (2, 3, 5):
                lhs = density_counting(doubled, p, 2 * t).value
                rhs = density_counting(lat, p, t).value
                if p == 2:
                    rhs = 2 * rhs
                recs.append(
                    _exact_record(
                        "rescaling_identity",
                        f"{name}, p={p}, t={t}",
                        lhs,
                        rhs,
                    )
                )
    recs.append(
        CheckRecord(
            name="rescaling_identity",
            point="p=2 constant",
            lhs="delta_2(2t, L(2)) = 2 delta_2(t, L)  [counting]",
            rhs="2 delta_2(2t, L(2)) = delta_2(t, L)  [printed]",
            passed=True,
            exact=True,
            flag=(
                "the printed p=2 rescaling constant is off by a factor 4; "
                "brute-force counting pins delta_2(2t, L(2)) = 2 delta_2(t, L)"
            ),
        )
    )
    return recs


def _check_rp_printed(extended: bool) -> list[CheckRecord]:
    recs = []
    for k in (12, 14):
        for p in (2, 3):
            for delta in (p, 2 * p, p * p, 3 * p * p):
                lhs = local_factor_unimodular(8, p, delta, k)
                stable = density_unimodular(8, p, ord_p(delta, p) + 1, delta)
                rhs = stable * rp_printed_unimodular(8, p, delta, k)
                recs.append(
                    _exact_record(
                        "rp_printed_unimodular",
                        f"N=8, k={k}, p={p}, Delta={delta}",
                        lhs,
                        rhs,
                    )
                )
    for n_rank in (4, 6):
        k = n_rank + 6
        for p in (3, 5):
            for delta in (p, 2 * p, p * p):
                lhs = local_factor_na1_odd(n_rank, p, delta, k)
                stable = density_na1_odd(n_rank, p, ord_p(delta, p) + 1, delta)
                rhs = stable * rp_printed_na1(n_rank, p, delta, k)
                recs.append(
                    _exact_record(
                        "rp_printed_na1",
                        f"N={n_rank}, k={k}, p={p}, Delta={delta}",
                        lhs,
                        rhs,
                    )
                )
    return recs


def _check_gamma_sign() -> list[CheckRecord]:
    printed = gamma_factor(12, 8, 1, "printed")
    theta = gamma_factor(12, 8, 1, "theta")
    rec = CheckRecord(
        name="gamma_sign_consistency",
        point="k=12, N=8, Delta=1",
        lhs=str(printed),
        rhs=str(theta),
        passed=printed.coeff == -theta.coeff and printed.pi_power == theta.pi_power,
        exact=True,
        flag=(
            "the printed gamma sign (-1)^(3k/2-N-1) is opposite to the sign "
            "i^(k-N)(-2pi)^(k-N/2) forced by the theta-transformation "
            "derivation; the positive E8 coefficient at k=12 (beta = 480, "
            "confirmed by counting) fixes the theta convention, which all "
            "pipelines use"
        ),
    )
    oracle = beta_m1_oracle(get_preset("E8"), 12, 1, (0,) * 8, a_max=50)
    witness = CheckRecord(
        name="gamma_sign_consistency",
        point="E8 positivity witness",
        lhs=f"{oracle.value:.6f}",
        rhs="480",
        passed=abs(oracle.value - 480) < 1e-3 * 480,
        error=abs(oracle.value - 480) / 480,
        tol=1e-3,
    )
    return [rec, witness]


def _check_na1_printed() -> list[CheckRecord]:
    recs = []
    for (n, lam) in [(1, (0, 0, 0, 0)), (1, (1, 1, 0, 0)), (2, (1, 1, 1, 1))]:
        assembled = coefficient_na1(8, 4, n, lam)
        printed = coefficient_na1_printed(8, 4, n, lam)
        agree = assembled == printed
        recs.append(
            CheckRecord(
                name="na1_printed_theorem",
                point=f"N=4, k=8, n={n}, lam={lam}",
                lhs=str(printed),
                rhs=str(assembled),
                passed=True,
                exact=True,
                flag=None
                if agree
                else (
                    "printed closed-form display deviates from the assembled "
                    f"pipeline by factor {printed / assembled}; the assembled value "
                    "is confirmed by the counting oracle and the "
                    "theta-transformation pipeline"
                ),
            )
        )
    return recs


def _check_coefficient_oracles(extended: bool) -> list[CheckRecord]:
    recs = []
    e8 = get_preset("E8")
    deltas = (1, 2, 3, 4) if extended else (1, 2)
    for k in (12, 14):
        for delta in deltas:
            closed = float(coefficient_unimodular(k, 8, delta))
            oracle = beta_m1_oracle(e8, k, delta, (0,) * 8, a_max=100)
            recs.append(
                _numeric_record(
                    "unimodular_coefficient_vs_oracle",
                    f"E8, k={k}, Delta={delta}",
                    oracle.value,
                    closed,
                    1e-6,
                    relative=True,
                )
            )
    for (n, lam) in [(1, (0, 0, 0, 0)), (1, (1, 1, 0, 0)), (1, (1, 1, 1, 0))]:
        closed = float(coefficient_na1(8, 4, n, lam))
        oracle = na1_oracle(8, 4, n, lam, a_max=50)
        recs.append(
            _numeric_record(
                "na1_coefficient_vs_oracle",
                f"N=4, k=8, n={n}, lam={lam}",
                oracle.value,
                closed,
                1e-4,
                relative=True,
            )
        )
    # theta-transformation pipeline as an independent arbiter
    mu = (Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(0))
    est = coefficient_general_m(8, 1, get_preset("4A1"), 1, mu, c_max=30)
    recs.append(
        _numeric_record(
            "na1_coefficient_vs_general_pipeline",
            "N=4, k=8, n=1, lam=(1,1,0,0)",
            est.value,
            float(coefficient_na1(8, 4, 1, (1, 1, 0, 0))),
            1e-6,
            relative=True,
        )
    )
    return recs


def _check_genus(extended: bool) -> list[CheckRecord]:
    recs = []
    e8 = get_preset("E8")
    shells = enumerate_by_norm(e8, 4)
    for delta in (1, 2, 3, 4):
        recs.append(
            _exact_record(
                "genus_representation_vs_enumeration",
                f"E8, Delta={delta}",
                genus_representation(e8, delta),
                Fraction(len(shells[delta])),
            )
        )
    na4 = get_preset("4A1")
    shells4 = enumerate_by_norm(na4, 8)
    for delta in range(1, 9):
        recs.append(
            _exact_record(
                "genus_representation_vs_enumeration",
                f"4A1, Delta={delta}",
                genus_representation(na4, delta),
                Fraction(len(shells4[delta])),
            )
        )
    return recs


def _check_transformations(extended: bool) -> list[CheckRecord]:
    recs = []
    e8 = get_preset("E8")
    a2 = get_preset("2A1")
    # theta transformation law
    recs.append(
        check_theta_transformation(e8, [Fraction(0)] * 8, 1j, q_trunc=9, tol=1e-8)
    )
    recs.append(
        check_theta_transformation(
            a2, [Fraction(1, 2), Fraction(0)], 2j, q_trunc=40, tol=1e-8
        )
    )
    # a -> -a symmetry at z = 0: reindexing x -> -x fixes the lattice sum
    val_plus, _ = theta_numeric(
        a2, [Fraction(1, 2), Fraction(0)], [Fraction(0)] * 2, 1.5j, np.zeros(2), 40
    )
    val_minus, _ = theta_numeric(
        a2, [Fraction(-1, 2), Fraction(0)], [Fraction(0)] * 2, 1.5j, np.zeros(2), 40
    )
    recs.append(
        _numeric_record(
            "theta_characteristic_symmetry",
            "2A1, a=(1/2,0) vs -a, tau=1.5i, z=0",
            val_plus,
            val_minus,
            1e-8,
        )
    )
    # slash invariance for E8, k = 12, m = 1, n_max = 8
    ev = ExpansionEvaluator.build_unimodular(e8, 12, 8)
    z_test = 0.1 * np.ones(8)
    recs.append(
        check_slash_invariance(e8, 12, 1, "T", 0.3 + 1.1j, z_test, ev, 1e-12)
    )
    x1 = [1, 0, 0, 0, 0, 0, 0, 0]
    recs.append(
        check_slash_invariance(
            e8, 12, 1, ("translate", x1, [0] * 8), 2j, z_test, ev, 1e-5
        )
    )
    recs.append(
        check_slash_invariance(
            e8, 12, 1, ("translate", [0] * 8, x1), 2j, z_test, ev, 1e-12
        )
    )
    recs.append(check_slash_invariance(e8, 12, 1, "S", 1j, np.zeros(8), ev, 1e-4))
    recs.append(
        check_slash_invariance(e8, 12, 1, "S", 0.3 + 1.1j, np.zeros(8), ev, 1e-4)
    )
    return recs


def run_formula_vs_oracle_suite(grid: str = "default") -> VerificationReport:
    """Every closed form against its brute-force oracle, plus the numeric
    transformation-law checks and the printed-formula discrepancy records."""
    extended = grid == "extended"
    report = VerificationReport()
    report.extend(_check_unimodular_lemma(extended))
    report.extend(_check_good_prime(extended))
    report.extend(_check_na1_odd(extended))
    report.extend(_check_na1_two(extended))
    report.extend(_check_stabilization(extended))
    report.extend(_check_corollary(extended))
    report.extend(_check_rescaling(extended))
    report.extend(_check_rp_printed(extended))
    report.extend(_check_gamma_sign())
    report.extend(_check_na1_printed())
    report.extend(_check_coefficient_oracles(extended))
    report.extend(_check_genus(extended))
    report.extend(_check_transformations(extended))
    return report
