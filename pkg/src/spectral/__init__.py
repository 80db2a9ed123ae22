"""Discrete function spaces on a periodic box."""

from src.spectral.fields import PhysicalField, SpectralField, from_function, to_physical, to_spectral
from src.spectral.grid import Grid, build_grid
from src.spectral.operators import (
    advection_term,
    apply_directional_fractional,
    apply_isotropic_fractional,
    dealias,
    gradient,
    inner_product,
    riesz_velocity,
)
from src.spectral.params import AnisotropyParams

__all__ = [
    "AnisotropyParams",
    "Grid",
    "PhysicalField",
    "SpectralField",
    "advection_term",
    "apply_directional_fractional",
    "apply_isotropic_fractional",
    "build_grid",
    "dealias",
    "from_function",
    "gradient",
    "inner_product",
    "riesz_velocity",
    "to_physical",
    "to_spectral",
]
