"""Lieb-Robinson-type bounds and signaling times for strongly long-range lattices."""

__version__ = "0.1.0"

from .analysis import (
    FitResult,
    fit_loglog_power,
    fit_model,
    fit_power_log,
    fit_pure_power,
)
from .bounds import (
    BoundPrefactor,
    BoundValue,
    HopSchedule,
    UNIT_PREFACTOR,
    analytic_bound,
    exact_sum_bound,
    exact_sum_bound_alpha0_closed_form,
    free_particle_bound,
    free_particle_envelope,
    many_site_bound,
)
from .dynamics import (
    ProtocolResult,
    Segment,
    SingleParticleHamiltonian,
    commutator_amplitude,
    evolve,
    ising_exact_oracle,
    schedule_from_hamiltonian,
    state_transfer_protocol,
    trajectory,
)
from .kernels import (
    FourierSpectrum,
    HopParameters,
    ReproducibilityReport,
    fourier_spectrum,
    lambda_upper_bound,
    reproducibility_check,
    ring_hop_sequence,
    self_hop_lambda,
    series_oracle,
    site_hop_strength,
    surface_area_constant,
)
from .lattice import (
    CouplingModel,
    LatticeSpec,
    chain,
    coupling,
    coupling_matrix,
    coupling_row,
    distance,
    distances_from,
    ring,
)
from .signaling import (
    NoCrossingError,
    SignalingSpec,
    SignalingTime,
    exact_sum_signaling_time,
    ising_signal,
    ising_signaling_time,
    many_site_signaling_time,
    signaling_contour,
    signaling_time_analytic,
    signaling_time_numeric,
)

__all__ = [
    "__version__",
    "BoundPrefactor",
    "BoundValue",
    "CouplingModel",
    "FitResult",
    "FourierSpectrum",
    "HopParameters",
    "HopSchedule",
    "LatticeSpec",
    "NoCrossingError",
    "ProtocolResult",
    "ReproducibilityReport",
    "Segment",
    "SignalingSpec",
    "SignalingTime",
    "SingleParticleHamiltonian",
    "UNIT_PREFACTOR",
    "analytic_bound",
    "chain",
    "commutator_amplitude",
    "coupling",
    "coupling_matrix",
    "coupling_row",
    "distance",
    "distances_from",
    "evolve",
    "exact_sum_bound",
    "exact_sum_bound_alpha0_closed_form",
    "exact_sum_signaling_time",
    "fit_loglog_power",
    "fit_model",
    "fit_power_log",
    "fit_pure_power",
    "fourier_spectrum",
    "free_particle_bound",
    "free_particle_envelope",
    "ising_exact_oracle",
    "ising_signal",
    "ising_signaling_time",
    "lambda_upper_bound",
    "many_site_bound",
    "many_site_signaling_time",
    "reproducibility_check",
    "ring",
    "ring_hop_sequence",
    "schedule_from_hamiltonian",
    "self_hop_lambda",
    "series_oracle",
    "signaling_contour",
    "signaling_time_analytic",
    "signaling_time_numeric",
    "site_hop_strength",
    "state_transfer_protocol",
    "surface_area_constant",
    "trajectory",
]
