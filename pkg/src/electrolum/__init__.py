"""Electroluminescence of an electrically open, ultrastrongly coupled cavity.

A three-level electronic site (empty/ground/excited) exchanges electrons
with biased reservoirs while coupled to one photon mode beyond the
rotating-wave approximation.  The package diagonalizes the coupled
Hamiltonian, derives dressed-state Lindblad channels for the three
baths, solves the master equation for the steady state and the emission
spectrum, and cross-validates against a five-level rate model and
closed-form intensities.

Units: hbar = 1, omega_c = 1.
"""

__version__ = "0.1.0"

from .hilbert import ModelSpace, SystemParams, build_space
from .pipeline import DressedSystem, build_system, resolve_mu
from .rabi import DressedBasis, dressed_basis, hamiltonian
from .spectrum import Spectrum, emission_spectrum, integrate_peak

__all__ = [
    "ModelSpace",
    "SystemParams",
    "build_space",
    "DressedSystem",
    "build_system",
    "resolve_mu",
    "DressedBasis",
    "dressed_basis",
    "hamiltonian",
    "Spectrum",
    "emission_spectrum",
    "integrate_peak",
    "__version__",
]
