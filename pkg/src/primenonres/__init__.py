"""Prime character nonresidues: characters, smooth numbers, Dickman rho, character sums and L(1, chi)."""

__version__ = "0.1.0"

from .arithmetic import (
    NotInGroupError,
    ResourceLimitError,
    discrete_log,
    euler_phi,
    factorize,
    is_prime,
    largest_prime_factor,
    lpf_segments,
    lpf_sieve,
    omega,
    primes_upto,
    spf_sieve,
)
from .characters import (
    DirichletCharacter,
    UnitGroup,
    character_from_label,
    enumerate_characters,
    kronecker,
    quadratic_characters,
    unit_group,
)
from .charsums import burgess_bound_shape, burgess_factors, partial_sum, polya_vinogradov_check
from .cyclotomic import CyclotomicInt
from .dickman import rho, u_k
from .lfunc import l_one, r_chi, r_chi_euler, sum_r_hyperbola, wolke_compare
from .residues import (
    SurveyRecord,
    ThresholdKind,
    fund_identity_check,
    least_nonresidue,
    prime_nonresidues_upto,
    prime_residues_upto,
    q_product_stats,
    subgroup_nonresidues,
    survey_modulus,
    theorem_threshold,
)
from .smooth import psi, psi_q, tenenbaum_compare
