"""Physical constants (SI units)."""

SPEED_OF_LIGHT = 299792458.0  # [m/s]
HBAR = 1.054571817e-34  # [J s]
VACUUM_PERMITTIVITY = 8.8541878128e-12  # [F/m]
