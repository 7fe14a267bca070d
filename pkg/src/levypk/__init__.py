"""Fluctuation identities for Lévy processes with two-sided jumps."""
from .errors import *  # noqa: F401,F403
from .jumps import (  # noqa: F401
    Erlang,
    Exponential,
    HalfNormal,
    Hyperexponential,
    NegErlang,
    NegHyperexponential,
    PoleForm,
    Tabulated,
)
from .model import (  # noqa: F401
    CaseTag,
    ModelSpec,
    NegativeJumps,
    PositiveJumps,
    classify,
    cumulant,
    cumulant_prime,
    load_model,
    mean,
    model_from_dict,
    model_to_dict,
    variance,
)
from .roots import Root, RootSet, find_roots, root_slope_at_zero  # noqa: F401

__version__ = "0.1.0"
from .transforms import b_transform, c_transforms, pi_tilde, tail_transform  # noqa: F401,E402
from .infimum import (  # noqa: F401,E402
    InfimumDensity,
    MatrixExpForm,
    a_star_killed,
    infimum_density_matrix,
    infimum_density_residue,
    infimum_mgf,
    limit_density,
)
from .supremum import (  # noqa: F401,E402
    SupremumLaw,
    cramer_root,
    erlang_law,
    hyperexponential_law,
    killed_supremum_mgf,
    killed_supremum_mgf_wh,
    sample_supremum,
    supremum_cdf,
    supremum_law,
    supremum_mgf,
    supremum_mgf_wh,
)
from .montecarlo import SimConfig, SimResult, simulate_sup  # noqa: F401,E402
from .presets import PRESETS, reference_model  # noqa: F401,E402
