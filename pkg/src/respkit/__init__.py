"""Vibrational response functions and 2D IR spectra of a weakly anharmonic
oscillator coupled to a harmonic bath.

Layers: units -> spectral_density -> lineshape -> response -> spectra, with
config/jobs/cli on top for file-based runs. Everything below jobs is pure
and safe for concurrent evaluation.
"""

from .errors import (ConfigError, DivergentBathError, DomainError,
                     NumericalError, RespkitError)
from .lineshape import (KernelEval, Ladder, Pathway, Stability,
                        StabilityVerdict, classify_stability,
                        estimate_h_infinity, exponent_nonrephasing,
                        exponent_rephasing, g_quantum, h_infinity, h_kernel,
                        h_kernel_quadrature, quantum_exponent_third_order)
from .response import (BathLimit, Oscillator, classical_linear,
                       classical_third_order, dl_limit_response,
                       peak_shift_estimate, quantum_linear,
                       quantum_third_order, third_order_grid,
                       zero_crossing_time)
from .spectra import (PeakMetrics, Signal2D, Spectrum1D, Spectrum2D,
                      SpectrumKind, TimeGrid, absorption_spectrum,
                      center_line_slope, correlation_spectrum, peak_metrics,
                      spectrum_2d)
from .spectral_density import (Kind, SpectralDensity, calibrate_coupling,
                               quantum_sd, reorganization_energy,
                               reorganization_energy_cm, sd_eval)
from .units import (UNITS, UnitSystem, angular_to_wavenumber, thermal_energy,
                    thermal_energy_angular, wavenumber_to_angular)

__version__ = "0.1.0"
