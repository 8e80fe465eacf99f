"""Charged particle on a sphere with a magnetic monopole and a Coulomb centre at the north pole.

Energies are dimensionless, in units of hbar^2 / (2 M R^2).  The spectrum is
computed as the zeros of a continued fraction built from the three-term
recursion of a hypergeometric expansion of the local Heun function; a
finite-difference oracle, Landau-level limits and Bohr-Sommerfeld
quantization are provided for cross-checks.
"""
from .classical import bohr_sommerfeld_level, effective_potential, potential_minimum
from .contfrac import cf_value, lentz_eval
from .estimators import SpectrumTransformer
from .exceptions import InsufficientRoots, SphereHeunError, ValidationError
from .limits import landau_level, planar_limit_check, vanishing_coulomb_level
from .oracle import oracle_spectrum
from .params import PhysicalConfig, exponents, heun_params, make_config
from .spectrum import EnergyLevel, ScanSettings, spectrum
from .wavefunction import build_wavefunction, eval_F, eval_Psi

__version__ = "0.1.0"

__all__ = [
    "PhysicalConfig",
    "make_config",
    "exponents",
    "heun_params",
    "cf_value",
    "lentz_eval",
    "EnergyLevel",
    "ScanSettings",
    "spectrum",
    "build_wavefunction",
    "eval_F",
    "eval_Psi",
    "effective_potential",
    "potential_minimum",
    "bohr_sommerfeld_level",
    "oracle_spectrum",
    "landau_level",
    "vanishing_coulomb_level",
    "planar_limit_check",
    "SpectrumTransformer",
    "SphereHeunError",
    "ValidationError",
    "InsufficientRoots",
]
