"""Aharonov-Bohm effect on the hyperbolic plane: spectra, propagators, interference."""
from .core import (NATURAL, EffectiveAngularMomentum, FluxParams, GeodesicInvariants, PhysicalParams,
                   PseudospherePoint, QuantumNumbers, effective_channel, geodesic_invariants)
from .errors import (ConicalRealityError, ConvergenceError, HypabError, PoleError, QuantumNumberError,
                     TruncationError, UnsupportedProblemError)
from .flat import (InterferenceGeometry, flat_radial_kernel, interference_term, legendre_bessel_limit_check,
                   max_interference, partial_propagator_flat)
from .grid import RadialGrid, build_radial_operator, grid_2d_kernel, grid_kernel
from .kernel import (KernelRequest, euclidean_radial_kernel, flat_ab_kernel, partial_wave_kernel,
                     radial_spectral_weight, winding_kernel, winding_kernel_sum)
from .landau import free_wavefunction, landau_bound_wavefunction, landau_levels, landau_scattering_wavefunction
from .potentials import (CoulombParams, HiggsParams, ab_partial_wave_assembly, coulomb_bound_spectrum,
                         higgs_bound_spectrum, higgs_bound_wavefunction, higgs_scattering_state)
from .specfun import (SeriesControls, bessel_i, bessel_i_asymptotic, gaussian_lambda_integral, hyp2f1,
                      jacobi_poly, legendre_p, log_gamma)

__version__ = "0.1.0"
