from .errors import (
    ConfigError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    IllConditionedError,
    NumericalError,
    PoleError,
    StabilityError,
    UnsupportedClassError,
)
from .special_functions import (
    MeijerGSpec,
    QuadratureRule,
    delta_list,
    gamma_fn,
    gauss_laguerre,
    meijer_g,
    regularized_gamma_pq,
    slater_series,
    tricomi_psi,
    upper_incomplete_gamma,
)
from .fading import GGHop, make_hop, nakagami_hop, weibull_hop, single_hop_moment
from .pade_mgf import MomentSequence, PadeMGF, build_pade, mgf_eval, poles_residues
from .relay import (
    RelaySystem,
    combine_snr,
    end_to_end_moment,
    end_to_end_moment_oracle,
    make_system,
    moment_sequence,
    nakagami_semi_blind_C,
    semi_blind_C,
    semi_blind_C_oracle,
    semi_blind_gain_squared,
)
from .metrics import (
    BDPSK,
    BFSK,
    BFSK_MIN_CORRELATION,
    BPSK,
    NCBFSK,
    SCHEMES,
    ModulationScheme,
    abep,
    abep_bdpsk,
    abep_coherent,
    abep_ncbfsk,
    mgf_for_system,
    outage_exact,
    outage_pade,
    outage_quadrature,
)
from .simulate import SimConfig, gaussian_q, mc_abep, mc_moments, mc_outage
from .config import ScenarioConfig, load_config
from .utils import db_to_linear, linear_to_db, rationalize_beta
from . import fading

__version__ = "0.1.0"
