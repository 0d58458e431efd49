"""Birkhoff-James orthogonality and best approximation in discretized
Lebesgue-Bochner spaces L^p(mu, X)."""
from .approx import (ApproxResult, LightResult, SubspaceBasis, best_approx,
                     check_l1_characterization, check_l1_subspace,
                     check_lp_characterization, light_check)
from .bochner import (BochnerFunction, elementary_tensor, lp_norm,
                      scalar_function, scalar_product_function, zero_set)
from .errors import (DegenerateBasis, InvalidArgument, NoSupportFunctional,
                     UncertifiedSolution, UnsupportedSpace)
from .measure import (DiscreteMeasure, counting_measure, integrate,
                      interval_quadrature, product_measure)
from .ortho import (OrthoCertificate, bj_check, bj_direct, bj_keckic,
                    bj_l1_criterion, bj_lp_criterion, bj_scalar_l1,
                    bj_scalar_lp, bj_vector)
from .space import (Functional, SmoothSpace, dual_norm, hilbert, lp_space,
                    norm, phase_gateaux, scalar_space, support_functional)

__version__ = "0.1.0"
