"""Finite Fourier expansions indexed by (n, lambda) with lambda in the dual
lattice.

Indexing convention: every public coefficient is attached to the phase
e^(2 pi i n tau) e^(2 pi i (lambda, z)) with lambda written in the standard
basis of L (x) Q, so its coordinates are rationals.  The hyperbolic norm of
an index pair is Delta(n, lambda) = n*m - (lambda, lambda)/2; entries with
Delta = 0 come from the theta part, entries with Delta > 0 from the
Eisenstein part.

Rational coefficients serialize as "p/q" strings so files round-trip
bit-exactly; float coefficients carry an explicit error bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union


def _frac_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _frac_from_str(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class Coefficient:
    kind: str  # "rational" | "float"
    value: Union[Fraction, float]
    error_bound: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("rational", "float"):
            raise ValueError(f"bad coefficient kind {self.kind!r}")
        if self.kind == "rational" and not isinstance(self.value, (Fraction, int)):
            raise ValueError("rational coefficient needs a Fraction value")

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational", "value": _frac_to_str(Fraction(self.value))}
        d = {"kind": "float", "value": float(self.value)}
        if self.error_bound is not None:
            d["error_bound"] = self.error_bound
        return d

    @staticmethod
    def from_json(d: dict) -> "Coefficient":
        if d["kind"] == "rational":
            return Coefficient("rational", _frac_from_str(d["value"]))
        return Coefficient("float", float(d["value"]), d.get("error_bound"))


Index = tuple[int, tuple[Fraction, ...]]


@dataclass
class QExpansion:
    weight: int
    index: int
    lattice_name: str
    gram: tuple[tuple[int, ...], ...]
    n_max: int
    entries: dict[Index, Coefficient] = field(default_factory=dict)

    def delta(self, n: int, lam: tuple[Fraction, ...]) -> Fraction:
        """Hyperbolic norm n*m - (lambda, lambda)/2 of an index pair."""
        lam = tuple(Fraction(c) for c in lam)
        norm = Fraction(0)
        for i, li in enumerate(lam):
            for j, lj in enumerate(lam):
                norm += li * self.gram[i][j] * lj
        return n * self.index - norm / 2

    def set(self, n: int, lam, coeff: Coefficient) -> None:
        key = (n, tuple(Fraction(c) for c in lam))
        if self.delta(*key) < 0:
            raise ValueError("entry with negative hyperbolic norm")
        self.entries[key] = coeff

    def get(self, n: int, lam) -> Optional[Coefficient]:
        return self.entries.get((n, tuple(Fraction(c) for c in lam)))

    def theta_entries(self) -> dict[Index, Coefficient]:
        return {k: v for k, v in self.entries.items() if self.delta(*k) == 0}

    def eisenstein_entries(self) -> dict[Index, Coefficient]:
        return {k: v for k, v in self.entries.items() if self.delta(*k) > 0}

    def to_json(self) -> dict:
        entries = []
        for (n, lam), coeff in sorted(self.entries.items()):
            entries.append(
                {
                    "n": n,
                    "lambda": [_frac_to_str(c) for c in lam],
                    "delta": _frac_to_str(self.delta(n, lam)),
                    "coeff": coeff.to_json(),
                }
            )
        return {
            "lattice": self.lattice_name,
            "gram": [list(row) for row in self.gram],
            "k": self.weight,
            "m": self.index,
            "n_max": self.n_max,
            "entries": entries,
        }

    @staticmethod
    def from_json(d: dict) -> "QExpansion":
        qe = QExpansion(
            weight=d["k"],
            index=d["m"],
            lattice_name=d["lattice"],
            gram=tuple(tuple(row) for row in d["gram"]),
            n_max=d["n_max"],
        )
        for e in d["entries"]:
            lam = tuple(_frac_from_str(s) for s in e["lambda"])
            qe.entries[(e["n"], lam)] = Coefficient.from_json(e["coeff"])
        return qe
