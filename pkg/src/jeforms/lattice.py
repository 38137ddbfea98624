"""Even positive-definite lattices: validation, dual data, level, and exact
lattice-point enumeration.

A lattice is identified with Z^N carrying the bilinear form of an even
symmetric Gram matrix S; q(x) = (x, x)_S / 2 is the quadratic form.  The
enumerator is a Fincke-Pohst depth-first search over an exact LDL^T
decomposition (Fractions throughout, so no floating-point Cholesky), with
optional rational center shift for theta characteristics.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, sqrt

from .errors import (
    DimensionMismatch,
    NotEven,
    NotPositiveDefinite,
    NotSymmetric,
)
from .qexp import Coefficient, QExpansion

Gram = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Lattice:
    name: str
    gram: Gram
    rank: int
    det: int
    dual_gram: tuple[tuple[Fraction, ...], ...]
    level: int

    def bilinear(self, x, y) -> Fraction:
        if len(x) != self.rank or len(y) != self.rank:
            raise DimensionMismatch(f"vectors must have length {self.rank}")
        acc = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.gram[i]
                acc += Fraction(xi) * sum(Fraction(row[j]) * Fraction(y[j]) for j in range(self.rank))
        return acc

    def quadratic_value(self, x) -> int:
        """q(x) = (x, x)_S / 2 for an integer vector x; always an integer."""
        if len(x) != self.rank:
            raise DimensionMismatch(f"vector must have length {self.rank}")
        acc = 0
        for i, xi in enumerate(x):
            if xi:
                row = self.gram[i]
                acc += xi * sum(row[j] * x[j] for j in range(self.rank))
        assert acc % 2 == 0, "even lattice produced odd (x, x)"
        return acc // 2

    def dual_norm_half(self, lam) -> Fraction:
        """(lambda, lambda)_S / 2 for a rational vector lambda."""
        lam = [Fraction(c) for c in lam]
        acc = Fraction(0)
        for i, li in enumerate(lam):
            if li:
                acc += li * sum(Fraction(self.gram[i][j]) * lam[j] for j in range(self.rank))
        return acc / 2

    def dual_coords(self, v) -> tuple[Fraction, ...]:
        """The dual vector S^-1 v (standard-basis coordinates) for v in Z^N."""
        return tuple(
            sum(self.dual_gram[i][j] * Fraction(v[j]) for j in range(self.rank))
            for i in range(self.rank)
        )

    @property
    def is_unimodular(self) -> bool:
        return self.det == 1

    @property
    def is_na1(self) -> bool:
        """Whether the Gram matrix is 2*I (orthogonal sum of A1 copies)."""
        return all(
            self.gram[i][j] == (2 if i == j else 0)
            for i in range(self.rank)
            for j in range(self.rank)
        )


def _exact_inverse(gram: Gram) -> tuple[tuple[Fraction, ...], ...]:
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise NotPositiveDefinite("gram matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def _exact_det(gram: Gram) -> int:
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def _leading_minors_positive(gram: Gram) -> bool:
    n = len(gram)
    for k in range(1, n + 1):
        sub = tuple(tuple(gram[i][j] for j in range(k)) for i in range(k))
        if _exact_det(sub) <= 0:
            return False
    return True


def validate_lattice(gram, name: str = "custom") -> Lattice:
    """Build a Lattice from an integer Gram matrix, checking all invariants.

    Raises NotSymmetric, NotEven, or NotPositiveDefinite.
    """
    rows = [tuple(int(x) for x in row) for row in gram]
    n = len(rows)
    if any(len(r) != n for r in rows) or n == 0:
        raise NotSymmetric("gram matrix must be square and nonempty")
    g: Gram = tuple(rows)
    for i in range(n):
        for j in range(n):
            if g[i][j] != g[j][i]:
                raise NotSymmetric(f"gram[{i}][{j}] != gram[{j}][{i}]")
    for i in range(n):
        if g[i][i] % 2 != 0:
            raise NotEven(f"diagonal entry gram[{i}][{i}] = {g[i][i]} is odd")
    if not _leading_minors_positive(g):
        raise NotPositiveDefinite("a leading principal minor is <= 0")
    det = _exact_det(g)
    dual = _exact_inverse(g)
    # level: least mu with mu * S^-1 integral and even on the diagonal
    mu = 1
    for i in range(n):
        for j in range(n):
            mu = lcm(mu, dual[i][j].denominator)
    if any((mu * dual[i][i]).numerator % 2 != 0 for i in range(n)):
        mu *= 2
    return Lattice(name=name, gram=g, rank=n, det=det, dual_gram=dual, level=mu)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

# E8 root-basis Gram matrix (Bourbaki node ordering: chain 1-3-4-5-6-7-8 with
# node 2 attached to node 4); det 1, minimum 2, kissing number 240.
_E8_GRAM = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)

_D4_GRAM = (
    (2, -1, 0, 0),
    (-1, 2, -1, -1),
    (0, -1, 2, 0),
    (0, -1, 0, 2),
)


def na1_gram(n: int) -> Gram:
    """Gram matrix 2*I_n of the orthogonal sum of n copies of A1."""
    return tuple(tuple(2 if i == j else 0 for j in range(n)) for i in range(n))


def get_preset(name: str) -> Lattice:
    """Presets: E8, D4, and nA1 for n >= 1 (A1, 2A1, 4A1, ...)."""
    key = name.strip().upper()
    if key == "E8":
        return validate_lattice(_E8_GRAM, "E8")
    if key == "D4":
        return validate_lattice(_D4_GRAM, "D4")
    m = re.fullmatch(r"(\d*)A1", key)
    if m:
        n = int(m.group(1)) if m.group(1) else 1
        if n >= 1:
            return validate_lattice(na1_gram(n), f"{n}A1" if n > 1 else "A1")
    raise KeyError(f"unknown preset {name!r}")


def load_lattice_file(path: str) -> Lattice:
    """Read a JSON lattice definition {"name": str, "gram": [[int]]}."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "gram" not in data:
        raise NotSymmetric("lattice file must be a JSON object with a 'gram' key")
    return validate_lattice(data["gram"], str(data.get("name", "file")))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _ldlt(a: list[list[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact LDL^T data for a PD symmetric rational matrix: returns (d, l)
    with x^T A x = sum_i d[i] * (x_i + sum_{j>i} l[i][j] x_j)^2."""
    n = len(a)
    q = [row[:] for row in a]
    d = [Fraction(0)] * n
    lo = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = q[i][i]
        if d[i] <= 0:
            raise NotPositiveDefinite("LDL^T hit a nonpositive pivot")
        for j in range(i + 1, n):
            lo[i][j] = q[i][j] / d[i]
        for r in range(i + 1, n):
            for s in range(r, n):
                q[r][s] -= q[i][r] * q[i][s] / d[i]
                q[s][r] = q[r][s]
    return d, lo


_enumeration_cache: dict = {}


def enumerate_shifted(
    matrix, center, bound: Fraction
) -> list[tuple[tuple[int, ...], Fraction]]:
    """All x in Z^N with (x+c)^T A (x+c) <= bound for PD rational A, sorted
    lexicographically; each result carries its exact form value.

    The depth-first search runs in floating point with a safety cushion to
    stay fast, but membership is decided by an exact integer comparison
    (denominators scaled away), so the output is exhaustive.
    """
    n = len(matrix)
    a = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
    c = [Fraction(x) for x in center]
    bound = Fraction(bound)
    key = (tuple(tuple(row) for row in a), tuple(c), bound)
    cached = _enumeration_cache.get(key)
    if cached is not None:
        return cached
    if bound < 0:
        _enumeration_cache[key] = []
        return []
    d_ex, lo_ex = _ldlt(a)
    d = [float(v) for v in d_ex]
    lo = [[float(v) for v in row] for row in lo_ex]
    cf = [float(v) for v in c]
    cushion = 1e-9 * (float(bound) + 1.0)
    budget0 = float(bound) + cushion
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def dfs(i: int, remaining: float):
        if i < 0:
            out.append(tuple(x))
            return
        shift = cf[i] + sum(lo[i][j] * (x[j] + cf[j]) for j in range(i + 1, n))
        radius2 = remaining / d[i]
        r = sqrt(radius2) if radius2 > 0 else 0.0
        low = int(-shift - r) - 1
        high = int(-shift + r) + 1
        for xi in range(low, high + 1):
            term = d[i] * (xi + shift) ** 2
            if term <= remaining:
                x[i] = xi
                dfs(i - 1, remaining - term)
        x[i] = 0

    dfs(n - 1, budget0)

    # exact filter: scale denominators away and compare integers (int64 is
    # ample at desk scale: entries and bounds stay far below 2^40)
    import numpy as np

    den_a = 1
    for row in a:
        for v in row:
            den_a = lcm(den_a, v.denominator)
    den_c = 1
    for v in c:
        den_c = lcm(den_c, v.denominator)
    ai = np.array([[int(v * den_a) for v in row] for row in a], dtype=np.int64)
    ci = np.array([int(v * den_c) for v in c], dtype=np.int64)
    scale = den_a * den_c * den_c
    b_scaled = bound * scale
    results: list[tuple[tuple[int, ...], Fraction]] = []
    if out:
        vecs = np.array(sorted(out), dtype=np.int64)
        ys = den_c * vecs + ci
        norms = np.einsum("ij,jk,ik->i", ys, ai, ys)
        keep = norms * b_scaled.denominator <= b_scaled.numerator
        for vec, norm in zip(vecs[keep], norms[keep]):
            results.append((tuple(int(v) for v in vec), Fraction(int(norm), scale)))
    _enumeration_cache[key] = results
    return results


def enumerate_by_norm(lattice: Lattice, max_q: int) -> dict[int, list[tuple[int, ...]]]:
    """Map n in [0, max_q] to the lattice vectors with q(x) = n, exhaustive
    and duplicate-free, each list in lexicographic order."""
    if max_q < 0:
        raise ValueError("max_q must be >= 0")
    shells: dict[int, list[tuple[int, ...]]] = {n: [] for n in range(max_q + 1)}
    hits = enumerate_shifted(lattice.gram, [0] * lattice.rank, Fraction(2 * max_q))
    for vec, norm in hits:
        assert norm.denominator == 1 and norm.numerator % 2 == 0
        shells[norm.numerator // 2].append(vec)
    return shells


def enumerate_dual_by_norm_half(
    lattice: Lattice, bound: Fraction
) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Dual vectors lambda in L^v with (lambda, lambda)/2 <= bound, as
    (standard-basis coordinates, norm/2) pairs in a deterministic order.

    Enumerates v in Z^N against the dual Gram S^-1 (lambda = S^-1 v), since
    (lambda, lambda)_S = v^T S^-1 v.
    """
    hits = enumerate_shifted(lattice.dual_gram, [0] * lattice.rank, 2 * Fraction(bound))
    out = []
    for v, norm in hits:
        out.append((lattice.dual_coords(v), norm / 2))
    return out


def discriminant_representatives(lattice: Lattice) -> list[tuple[Fraction, ...]]:
    """Representatives of L^v / L (order det S), each with coordinates in
    [0, 1): dual vectors lambda = S^-1 v over the fundamental domain."""
    n = lattice.rank
    lows = [sum(min(0, lattice.gram[i][j]) for j in range(n)) for i in range(n)]
    highs = [sum(max(0, lattice.gram[i][j]) for j in range(n)) for i in range(n)]
    reps = []

    def rec(i, v):
        if i == n:
            lam = lattice.dual_coords(v)
            if all(0 <= c < 1 for c in lam):
                reps.append(lam)
            return
        for vi in range(lows[i], highs[i] + 1):
            rec(i + 1, v + [vi])

    rec(0, [])
    assert len(reps) == lattice.det, "fundamental domain misses classes"
    reps.sort()
    return reps


def theta_coefficients(lattice: Lattice, m: int, n_max: int) -> QExpansion:
    """The singular (c = 0) part of E_{k,m}: the theta series of the index-m
    rescaled lattice, as a q-expansion in the dual-vector convention.

    Entry (n, lambda) has coefficient 1 exactly when lambda = m*x for a
    lattice vector x with m*q(x) = n; these are precisely the entries of
    hyperbolic norm zero.
    """
    if m < 1:
        raise ValueError("index m must be >= 1")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    qe = QExpansion(
        weight=0,
        index=m,
        lattice_name=lattice.name,
        gram=lattice.gram,
        n_max=n_max,
    )
    shells = enumerate_by_norm(lattice, n_max // m)
    one = Coefficient("rational", Fraction(1))
    for n, vecs in shells.items():
        for x in vecs:
            lam = tuple(Fraction(m * xi) for xi in x)
            qe.entries[(m * n, lam)] = one
    return qe
