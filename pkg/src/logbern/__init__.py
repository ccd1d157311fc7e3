"""Logarithmic Bernstein-type operators and a multiplicative-noise denoiser."""
from ._kernels import get_backend, set_backend, warmup
from .analysis import (error_bound, inverse_theorem_diagnostic, modulus_of_continuity,
                       differential_operator_D, saturation_solution, sup_error,
                       voronovskaja_limit, voronovskaja_residual)
from .core import algebraic_moment, basis, binomial_weight, first_absolute_moment
from .denoise import NoisySignal, reference_suite, synthesize_noisy
from .errors import (CapabilityError, DomainError, InputError, LogBernError,
                     ParameterError, PreconditionError)
from .functions import AnalyticFunction, builtin, f_mu, ln_mu_function, reference_signal, saturation_function
from .grid import GridFunction, uniform_grid
from .operators import (OperatorSpec, bernstein, exponential_comparison, king, logarithmic,
                        logarithmic_direct, operator_on_grid)
from .shape import bv_contraction_check, bv_norm, monotone_in_n_check
from .warp import WarpContext, gamma_n, ln_mu

__version__ = "0.1.0"
