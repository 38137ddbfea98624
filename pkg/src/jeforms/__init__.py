"""Jacobi-Eisenstein series for even positive-definite lattices.

Exact Fourier coefficients for even unimodular and 2*I_N lattices, a
numeric pipeline for everything else, Siegel local densities with counting
oracles, and a verification battery holding the closed formulas against
brute force.
"""

from .arith import (
    CHI_MINUS4,
    CHI_PRINCIPAL,
    DirichletCharacterMod4,
    PiRational,
    bernoulli,
    divisor_sigma,
    dirichlet_beta_odd,
    factorize,
    generalized_bernoulli,
    kronecker,
    l_value_negative,
    mobius,
    zeta_even,
)
from .counting import (
    ShiftedForm,
    alpha_omega,
    count_D_NA1,
    count_Na,
    count_sum_squares,
)
from .density import (
    DensityReport,
    density_counting,
    density_good_prime,
    density_infty,
    density_na1_odd,
    density_na1_two,
    density_unimodular,
    genus_representation,
)
from .eisenstein import (
    FloatWithBound,
    beta_m1_oracle,
    coefficient_general_m,
    coefficient_na1,
    coefficient_unimodular,
    dirichlet_series,
    gamma_factor,
    m1_prefactor,
    na1_oracle,
    q_expansion,
)
from .errors import JEFormsError
from .lattice import (
    Lattice,
    enumerate_by_norm,
    get_preset,
    load_lattice_file,
    theta_coefficients,
    validate_lattice,
)
from .qexp import Coefficient, QExpansion

__version__ = "0.1.0"
