"""Exception types shared across the package.

The CLI maps these onto exit codes: input/validation problems exit 2,
verification failures exit 1, blown counting budgets exit 3.
"""


class JEFormsError(Exception):
    """Base class for all package errors."""


class LatticeError(JEFormsError):
    """Base class for lattice validation errors."""


class NotSymmetric(LatticeError):
    pass


class NotEven(LatticeError):
    """Some diagonal entry of the Gram matrix is odd."""


class NotPositiveDefinite(LatticeError):
    pass


class DimensionMismatch(JEFormsError):
    pass


class BudgetExceeded(JEFormsError):
    """A residue-counting job is larger than the configured ceiling."""


class StabilizationFailure(JEFormsError):
    """Counting densities at consecutive precision levels disagreed where
    theory says they must agree; signals an implementation bug."""


class BadPrime(JEFormsError):
    """Closed density formula requested at a prime dividing 2*det."""


class OddRankUnsupported(JEFormsError):
    """Archimedean density at odd rank leaves exact pi-rational arithmetic."""


class UnsupportedRank(JEFormsError):
    pass


class NonSquareDeterminant(JEFormsError):
    """sqrt(det) is irrational, so the exact archimedean density is not
    representable; callers fall back to floats."""


class WeightTooSmall(JEFormsError):
    """Weight must be even and exceed rank + 2 for convergence."""


class RankNotUnimodularEven(JEFormsError):
    """Even unimodular lattices only exist in ranks divisible by 8."""


class DeltaNotPositive(JEFormsError):
    """Coefficient formulas only apply in the positive hyperbolic-norm range;
    the boundary belongs to the theta part."""


class InconsistentInput(JEFormsError):
    pass


class UnsupportedLattice(JEFormsError):
    """Requested an exact pipeline on a lattice without closed Euler factors."""


class TruncationInsufficient(JEFormsError):
    """A truncated numeric check could not push its tail below tolerance."""
