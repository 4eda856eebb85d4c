"""Physical constants, fixed to CODATA 2018 in one place.

Pinned literals rather than scipy.constants re-exports: scipy tracks newer
CODATA adjustments (epsilon_0 and the atomic mass unit moved at the 1e-9
level in 2022), and frozen regression values depend on these digits.
h, c and k_B are exact SI definitions.
"""

#: Reduced Planck constant, J s (h = 6.62607015e-34 exact / 2 pi).
HBAR = 1.0545718176461565e-34

#: Vacuum permittivity, F/m (CODATA 2018 measured value).
EPSILON_0 = 8.8541878128e-12

#: Speed of light in vacuum, m/s (exact).
SPEED_OF_LIGHT = 299792458.0

#: Boltzmann constant, J/K (exact).
BOLTZMANN = 1.380649e-23

#: Atomic mass unit, kg (CODATA 2018).
ATOMIC_MASS = 1.66053906660e-27

#: Mass of rubidium-87 in kg.
MASS_RB87 = 86.909180520 * ATOMIC_MASS

__all__ = ["HBAR", "EPSILON_0", "SPEED_OF_LIGHT", "BOLTZMANN", "ATOMIC_MASS", "MASS_RB87"]
