"""Goldbach-style decomposition searches over four prime lattices.

The rings: Gaussian and Eisenstein integers in the plane, the quaternion
integer lattice (integer and half-odd classes), and the octonion integer
lattice (Gravesian / Kirmse / Kleinian classes).  The package counts
two- and three-prime decompositions under sector, class, and angle
constraints, scans regions for exceptions, and computes the analytic
constants that predict the densities involved.
"""
from .automata import MoatReport, life_run, life_step, moat_component, prime_grid
from .census import angle_sequence, count_by_norm, points_with_norm, primes_on_sphere
from .constants import (
    ConstantEstimate,
    IntPolynomial,
    accelerated_landau_constant,
    bateman_horn_constant,
    empirical_ratio,
    gaussian_row_census,
    hardy_littlewood_constant,
    jacobi,
)
from .errors import CapacityError, CheckpointError, InvariantError
from .goldbach import (
    RepQuery,
    RepReport,
    ScanRecord,
    ScanTemplate,
    bunyakovsky_boundary_decompose,
    comet_row,
    count_reps,
    holben_jordan_scan,
    landau_boundary_decompose,
    scan_exceptions,
    signed_prime_exceptions,
)
from .primality import (
    even_primes,
    is_eisenstein_prime,
    is_gaussian_prime,
    is_ring_prime,
    primes_in_box,
)
from .rational import PrimeTable, is_prime_u64, primes_up_to, sqrt_minus_one_mod
from .rings import (
    RINGS,
    EisensteinInt,
    GaussianInt,
    OctavianInt,
    QuaternionInt,
    element_type,
    parse_element,
    units,
)

__version__ = "0.1.0"
