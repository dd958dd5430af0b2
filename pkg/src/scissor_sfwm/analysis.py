"""
Feature extraction from computed grids: diagonal FWHMs of the joint spectral
density and power-law fits of efficiency-versus-ring-count series.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bwf import BwfGrid


class GridTooSmallError(ValueError):
    """The requested feature is not bracketed inside the computed grid."""


@dataclass(frozen=True)
class EfficiencySeries:
    """
    Generation efficiency |beta|^2/|alpha|^4 versus ring count.

    ``pump_label`` is a free-form descriptor of the pump used for the scan.
    """

    pump_label: str
    n_values: tuple
    efficiencies: tuple

    def __post_init__(self) -> None:
        n = np.asarray(self.n_values)
        eff = np.asarray(self.efficiencies)
        if n.size != eff.size or n.size == 0:
            raise ValueError("n_values and efficiencies must be equal-length, non-empty")
        if np.any(np.diff(n) <= 0):
            raise ValueError("n_values must be strictly increasing")
        if np.any(eff <= 0):
            raise ValueError("efficiencies must be positive")


@dataclass(frozen=True)
class FwhmReport:
    """
    Full widths at half maximum of the joint spectral density along the two
    diagonals through its peak, in resonance-linewidth units.

    ``fwhm_diagonal`` is measured along equal signal/idler detunings (the
    energy-non-conserving direction, controlled by the pump bandwidth);
    ``fwhm_antidiagonal`` along opposite detunings (controlled by the
    resonance linewidth). Both are arc lengths in the detuning plane.
    """

    fwhm_diagonal: float
    fwhm_antidiagonal: float

    def __post_init__(self) -> None:
        if self.fwhm_diagonal <= 0 or self.fwhm_antidiagonal <= 0:
            raise ValueError("widths must be positive")


def fit_scaling_exponent(
    series: EfficiencySeries,
    n_min: float | None = None,
    n_max: float | None = None,
) -> float:
    """
    Least-squares slope of log(efficiency) versus log(N) over the window
    [n_min, n_max] (inclusive; defaults to the full series).

    Requires at least 3 points in the window.
    """
    n = np.asarray(series.n_values, dtype=float)
    eff = np.asarray(series.efficiencies, dtype=float)
    if n_min is not None:
        keep = n >= n_min
        n, eff = n[keep], eff[keep]
    if n_max is not None:
        keep = n <= n_max
        n, eff = n[keep], eff[keep]
    if n.size < 3:
        raise ValueError(f"need at least 3 points in the fit window, got {n.size}")
    slope, _ = np.polyfit(np.log(n), np.log(eff), 1)
    return float(slope)


def _bilinear(density: np.ndarray, x_axis: np.ndarray, y_axis: np.ndarray, xq, yq):
    hx = x_axis[1] - x_axis[0]
    hy = y_axis[1] - y_axis[0]
    fx = (xq - x_axis[0]) / hx
    fy = (yq - y_axis[0]) / hy
    i = np.clip(np.floor(fx).astype(int), 0, x_axis.size - 2)
    j = np.clip(np.floor(fy).astype(int), 0, y_axis.size - 2)
    tx = fx - i
    ty = fy - j
    return (
        density[i, j] * (1 - tx) * (1 - ty)
        + density[i + 1, j] * tx * (1 - ty)
        + density[i, j + 1] * (1 - tx) * ty
        + density[i + 1, j + 1] * tx * ty
    )


def _ray_length(start, component, lo, hi):
    # distance until the ray coordinate start + t*component leaves [lo, hi]
    if component > 0:
        return (hi - start) / component
    return (lo - start) / component


def _fwhm_along(density, x_axis, y_axis, peak_xy, direction, peak_value):
    """Arc-length FWHM along a unit direction through the peak."""
    x0, y0 = peak_xy
    dx, dy = direction
    step = 0.25 * min(x_axis[1] - x_axis[0], y_axis[1] - y_axis[0])
    half = 0.5 * peak_value

    crossings = []
    for sign in (1.0, -1.0):
        t_max = min(
            _ray_length(x0, sign * dx, x_axis[0], x_axis[-1]),
            _ray_length(y0, sign * dy, y_axis[0], y_axis[-1]),
        )
        t = step * np.arange(max(int(np.floor(t_max / step)), 2) + 1)
        values = _bilinear(
            density, x_axis, y_axis, x0 + sign * t * dx, y0 + sign * t * dy
        )
        below = np.nonzero(values < half)[0]
        if below.size == 0:
            raise GridTooSmallError(
                "half maximum not bracketed inside the grid along direction "
                f"({sign * dx:+.3f}, {sign * dy:+.3f}); widen the grid"
            )
        k = below[0]
        if k == 0:
            raise GridTooSmallError("peak sampling collapsed; grid too coarse")
        # inverse linear interpolation between the bracketing samples
        frac = (values[k - 1] - half) / (values[k - 1] - values[k])
        crossings.append(t[k - 1] + frac * step)
    return crossings[0] + crossings[1]


def extract_fwhm(grid: BwfGrid) -> FwhmReport:
    """
    FWHMs of the joint spectral density along the two diagonals through its
    peak, by linear interpolation of the half-maximum crossings.

    The peak must lie strictly inside the grid. Axes are the linewidth-
    normalized detunings, so the widths come out in linewidth units.
    """
    density = grid.density()
    x_axis = grid.signal_detunings()
    y_axis = grid.idler_detunings()
    ip, jp = np.unravel_index(np.argmax(density), density.shape)
    if ip in (0, density.shape[0] - 1) or jp in (0, density.shape[1] - 1):
        raise GridTooSmallError("density peak lies on the grid boundary")
    peak_value = float(density[ip, jp])
    if peak_value <= 0:
        raise ValueError("density peak is zero")
    peak_xy = (float(x_axis[ip]), float(y_axis[jp]))
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    fwhm_diag = _fwhm_along(
        density, x_axis, y_axis, peak_xy, (inv_sqrt2, inv_sqrt2), peak_value
    )
    fwhm_anti = _fwhm_along(
        density, x_axis, y_axis, peak_xy, (inv_sqrt2, -inv_sqrt2), peak_value
    )
    return FwhmReport(fwhm_diagonal=fwhm_diag, fwhm_antidiagonal=fwhm_anti)
