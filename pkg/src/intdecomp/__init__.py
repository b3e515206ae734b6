"""Integer-valued polynomials on finite-rank Z-algebras, prime by prime."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    BudgetExceeded,
    FiniteAlgebra,
    InvalidAlgebraError,
    StructureAlgebra,
    load_algebra,
    reduce_mod,
    validate,
)
from .constructors import (  # noqa: E402
    direct_sum,
    fixture,
    group_algebra,
    matrix_algebra,
    monogenic_ring,
    quaternion_algebra,
    triangular_algebra,
)
from .decide import decide_at_prime, decide_over_primes, discriminant_primes  # noqa: E402
from .ivp import int_module_basis, intk_equals_intd, nu_sequence, verify_phi  # noqa: E402
from .null_ideals import full_null_ideal, is_N_decomposable, scalar_null_ideal  # noqa: E402
from .residue import center, jacobson_radical, residue_tower_diagnostic, wedderburn_profile  # noqa: E402
from .zmod import ModMatrix, howell_form, kernel, span_contains, span_equal  # noqa: E402
