import json
from fractions import Fraction
from itertools import permutations

import pytest

from jeforms.arith import divisor_sigma
from jeforms.errors import DimensionMismatch, NotEven, NotPositiveDefinite, NotSymmetric
from jeforms.lattice import (
    discriminant_representatives,
    enumerate_by_norm,
    enumerate_dual_by_norm_half,
    get_preset,
    load_lattice_file,
    na1_gram,
    theta_coefficients,
    validate_lattice,
)


def test_validate_examples():
    a1 = validate_lattice([[2]])
    assert (a1.rank, a1.det, a1.level) == (1, 2, 4)
    na4 = validate_lattice(na1_gram(4))
    assert (na4.det, na4.level) == (16, 4)
    e8 = get_preset("E8")
    assert (e8.det, e8.level) == (1, 1)


def test_validate_errors():
    with pytest.raises(NotSymmetric):
        validate_lattice([[2, 1], [0, 2]])
    with pytest.raises(NotEven):
        validate_lattice([[1, 0], [0, 2]])
    with pytest.raises(NotPositiveDefinite):
        validate_lattice([[2, 3], [3, 2]])
    with pytest.raises(NotPositiveDefinite):
        validate_lattice([[0, 0], [0, 0]])


def test_quadratic_value():
    na4 = get_preset("4A1")
    assert na4.quadratic_value((1, 0, 0, 0)) == 1
    assert na4.quadratic_value((1, 1, 1, 1)) == 4
    e8 = get_preset("E8")
    assert e8.quadratic_value((0,) * 8) == 0
    with pytest.raises(DimensionMismatch):
        na4.quadratic_value((1, 0))


def test_enumeration_examples():
    e8 = get_preset("E8")
    shells = enumerate_by_norm(e8, 4)
    assert [len(shells[n]) for n in range(5)] == [1, 240, 2160, 6720, 17520]
    for n in range(1, 5):
        assert len(shells[n]) == 240 * divisor_sigma(3, n)
    two = validate_lattice(na1_gram(2))
    shells2 = enumerate_by_norm(two, 1)
    assert shells2[0] == [(0, 0)]
    assert sorted(shells2[1]) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_enumeration_exhaustive_and_duplicate_free():
    d4 = get_preset("D4")
    shells = enumerate_by_norm(d4, 3)
    seen = set()
    for n, vecs in shells.items():
        for v in vecs:
            assert d4.quadratic_value(v) == n
            assert v not in seen
            seen.add(v)
    # brute-force box cross-check
    from itertools import product

    brute = sum(
        1
        for x in product(range(-4, 5), repeat=4)
        if d4.quadratic_value(x) <= 3
    )
    assert brute == len(seen)


def test_enumeration_permutation_invariance():
    gram = [[2, 1, 0], [1, 4, 1], [0, 1, 6]]
    base = validate_lattice(gram)
    counts = {n: len(v) for n, v in enumerate_by_norm(base, 5).items()}
    for perm in permutations(range(3)):
        pg = [[gram[perm[i]][perm[j]] for j in range(3)] for i in range(3)]
        pl = validate_lattice(pg)
        pcounts = {n: len(v) for n, v in enumerate_by_norm(pl, 5).items()}
        assert pcounts == counts


def test_level_divides_two_det():
    for name in ("A1", "2A1", "4A1", "D4", "E8"):
        lat = get_preset(name)
        assert (2 * lat.det) % lat.level == 0
    from itertools import product

    import random

    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 3)
        while True:
            diag = [2 * rng.randint(1, 3) for _ in range(n)]
            off = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
            gram = [
                [
                    diag[i] if i == j else off[min(i, j)][max(i, j)]
                    for j in range(n)
                ]
                for i in range(n)
            ]
            try:
                lat = validate_lattice(gram)
                break
            except NotPositiveDefinite:
                continue
        assert (2 * lat.det) % lat.level == 0


def test_dual_enumeration():
    na4 = get_preset("4A1")
    duals = enumerate_dual_by_norm_half(na4, Fraction(1))
    # lambda in (1/2)Z^4 with sum(lambda_i^2) <= 1
    norms = {}
    for lam, half in duals:
        assert all(c.denominator in (1, 2) for c in lam)
        norms[half] = norms.get(half, 0) + 1
    assert norms[Fraction(0)] == 1
    assert norms[Fraction(1, 4)] == 8  # (+-1/2) e_i
    assert norms[Fraction(1)] == 8 + 16 + 8  # +-e_i, (+-1/2)^4, mixtures


def test_discriminant_representatives():
    for name, order in (("E8", 1), ("2A1", 4), ("4A1", 16), ("D4", 4)):
        reps = discriminant_representatives(get_preset(name))
        assert len(reps) == order


def test_theta_coefficients():
    e8 = get_preset("E8")
    th = theta_coefficients(e8, 1, 2)
    zero = tuple(Fraction(0) for _ in range(8))
    assert th.entries[(0, zero)].value == 1
    level1 = [k for k in th.entries if k[0] == 1]
    assert len(level1) == 240
    assert all(th.delta(*k) == 0 for k in th.entries)
    na4 = get_preset("4A1")
    th4 = theta_coefficients(na4, 1, 1)
    assert len([k for k in th4.entries if k[0] == 1]) == 8
    # index 2: entries sit at (2 q(x), 2x), still at hyperbolic norm zero
    th_m2 = theta_coefficients(e8, 2, 4)
    assert all(th_m2.delta(*k) == 0 for k in th_m2.entries)
    assert len([k for k in th_m2.entries if k[0] == 2]) == 240


def test_lattice_file_roundtrip(tmp_path):
    path = tmp_path / "lat.json"
    path.write_text(json.dumps({"name": "myD4", "gram": [list(r) for r in get_preset("D4").gram]}))
    lat = load_lattice_file(str(path))
    assert lat.name == "myD4" and lat.det == 4
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "x", "gram": [[2, 1], [0, 2]]}))
    with pytest.raises(NotSymmetric):
        load_lattice_file(str(bad))


def test_unknown_preset():
    with pytest.raises(KeyError):
        get_preset("Leech")
