"""Extra-cavity emission spectrum via the regression theorem, and peak fluxes.

The stationary two-time correlation <X+(tau) X-(0)> evolves under the
same generator as the state, so its one-sided Fourier transform is a
resolvent of the Liouvillian:

    S(w) = (gamma_cav / pi) * Re Tr[ X+ . R(w) . (X- rho_ss) ],
    R(w) = -(L - i w)^(-1) on the complement of the stationary mode,

equivalent to the two-sided transform because C(-tau) = C(tau)*.  The
component of X- rho_ss along the stationary mode is projected out before
the solve; the corresponding coherent term Tr[X+ rho]Tr[X- rho] is
discarded (the drive here is incoherent and it is < 1e-20).

The generator is Schur-factorized once (L = Q T Q^dagger), after which
each grid point costs one triangular solve, so dense grids are cheap.
Spectra span many decades; the frequency-domain route has exact line
shapes with no windowing artifacts, and the time-domain transform is
kept only as a test oracle.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .dissipators import BATH_CAVITY
from .liouvillian import Superoperator, vec
from .rabi import DressedBasis

DEFAULT_GRID = (0.5, 1.5, 4001)


@dataclass(frozen=True)
class Spectrum:
    """Emission spectrum on an ascending frequency grid."""

    omegas: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if np.any(np.diff(self.omegas) <= 0):
            raise ValueError("frequency grid must be strictly ascending")


@dataclass(frozen=True)
class PeakWindow:
    """Integration window around one emission line."""

    center: float
    lo: float
    hi: float

    @property
    def halfwidth(self) -> float:
        return 0.5 * (self.hi - self.lo)


def default_grid(lo: float = 0.5, hi: float = 1.5, points: int = 4001) -> np.ndarray:
    return np.linspace(lo, hi, points)


def emission_spectrum(lv: Superoperator, rho_ss: np.ndarray, x_minus: np.ndarray,
                      x_plus: np.ndarray, grid, gamma_cav: float) -> Spectrum:
    """S(w) over the grid; one linear solve of (L - i w) per point.

    Points where that solve is singular (w hitting an undamped frequency)
    are recorded in metadata["failed_points"] and set to NaN; neighbors
    are unaffected.
    """
    omegas = np.asarray(grid, dtype=float)
    source = vec(x_minus @ rho_ss)
    # deflate the stationary mode: its left eigenvector is the trace
    source = source - vec(rho_ss) * np.trace(x_minus @ rho_ss)

    t, q = sla.schur(lv.matrix, output="complex")
    w = q.conj().T @ source
    # Tr[X+ M] = vec(X+^T)^T vec(M); fold the Q rotation into the probe
    probe = q.T @ vec(x_plus.T)

    t_work = t.copy()
    diag_idx = np.diag_indices_from(t_work)
    t_diag = t.diagonal().copy()

    values = np.empty_like(omegas)
    failed = []
    for k, omega in enumerate(omegas):
        t_work[diag_idx] = t_diag - 1j * omega
        try:
            with np.errstate(all="raise"):
                y = sla.solve_triangular(t_work, -w, lower=False)
        except (FloatingPointError, np.linalg.LinAlgError, sla.LinAlgError, ValueError):
            failed.append(int(k))
            values[k] = np.nan
            continue
        values[k] = (gamma_cav / np.pi) * np.real(probe @ y)

    metadata = {"gamma_cav": float(gamma_cav)}
    if failed:
        warnings.warn(f"resolvent solve failed at {len(failed)} grid point(s)")
        metadata["failed_points"] = failed
    return Spectrum(omegas=omegas, values=values, metadata=metadata)


def integrate_peak(spec: Spectrum, center: float, halfwidth: float) -> float:
    """Trapezoidal integral of S over [center - halfwidth, center + halfwidth].

    The window must lie inside the grid; the integrand is interpolated
    linearly at the two window edges so the bounds are honored exactly.
    """
    lo, hi = center - halfwidth, center + halfwidth
    omegas, values = spec.omegas, spec.values
    if lo < omegas[0] or hi > omegas[-1]:
        raise ValueError(
            f"window [{lo:g}, {hi:g}] exceeds the grid "
            f"[{omegas[0]:g}, {omegas[-1]:g}]"
        )
    inside = (omegas > lo) & (omegas < hi)
    xs = np.concatenate([[lo], omegas[inside], [hi]])
    ys = np.concatenate(
        [[np.interp(lo, omegas, values)], values[inside], [np.interp(hi, omegas, values)]]
    )
    return float(np.trapezoid(ys, xs))


def emission_line_centers(basis: DressedBasis):
    """Frequencies of the three reported lines: (- -> G), (s1 -> s0), (+ -> G)."""
    e = basis.energies
    central = float(e[basis.s_levels[1]] - e[basis.s_levels[0]])
    return {
        "minus": basis.omega_minus,
        "central": central,
        "plus": basis.omega_plus,
    }


def default_windows(basis: DressedBasis, grid_spacing: float | None = None):
    """Midpoint-bounded windows around the three emission lines.

    Adjacent windows share a boundary at the midpoint between centers;
    the outer edges extend by the same half-gap.  Centers closer than
    ten grid spacings trigger a resolution warning (they coincide at
    zero coupling).
    """
    if grid_spacing is None:
        lo, hi, points = DEFAULT_GRID
        grid_spacing = (hi - lo) / (points - 1)
    named = emission_line_centers(basis)
    order = sorted(named, key=named.get)
    centers = np.array([named[name] for name in order])
    gaps = np.diff(centers)
    if np.any(np.abs(gaps) < 10 * grid_spacing):
        warnings.warn(
            "emission line centers closer than 10 grid spacings; "
            "windows cannot resolve the peaks"
        )
    halfwidth_lo = np.concatenate([[gaps[0] / 2 if len(gaps) else 0.0], gaps / 2])
    halfwidth_hi = np.concatenate([gaps / 2, [gaps[-1] / 2 if len(gaps) else 0.0]])
    return {
        name: PeakWindow(center=c, lo=c - wlo, hi=c + whi)
        for name, c, wlo, whi in zip(order, centers, halfwidth_lo, halfwidth_hi)
    }


def _outgoing_rates(channels, dim: int) -> np.ndarray:
    rates = np.zeros(dim)
    for ch in channels:
        rates[ch.from_index] += ch.rate
    return rates


def line_halfwidths(basis: DressedBasis, channels):
    """Lorentzian half-widths of the three lines: mean of the two level widths."""
    out = _outgoing_rates(channels, basis.dim)
    s0, s1 = basis.s_levels[0], basis.s_levels[1]
    g = basis.index_ground
    return {
        "minus": 0.5 * (out[basis.index_minus] + out[g]),
        "central": 0.5 * (out[s1] + out[s0]),
        "plus": 0.5 * (out[basis.index_plus] + out[g]),
    }


def line_windows(basis: DressedBasis, channels, scale: float = 5.0):
    """Windows of +-scale half-widths around each line.

    Narrow windows keep the Lorentzian tail of the dominant line out of
    the weak satellites; the captured fraction of a Lorentzian is
    (2/pi) arctan(scale), available as :func:`window_capture`.
    """
    centers = emission_line_centers(basis)
    widths = line_halfwidths(basis, channels)
    return {
        name: PeakWindow(center=c, lo=c - scale * widths[name], hi=c + scale * widths[name])
        for name, c in centers.items()
    }


def window_capture(scale: float) -> float:
    """Fraction of a Lorentzian line inside +-scale half-widths."""
    return (2.0 / np.pi) * np.arctan(scale)


def line_fluxes(basis: DressedBasis, channels, rho_ss: np.ndarray):
    """Exact steady-state photon flux of each reported line.

    Every cavity channel emits rate * population of its upper level; the
    channels are grouped by emission frequency into the midpoint-bounded
    windows of the three lines.  This is the master-equation flux that
    the window-integrated spectrum estimates.
    """
    windows = default_windows(basis)
    fluxes = dict.fromkeys(windows, 0.0)
    populations = {
        k: basis.population(rho_ss, k)
        for k in {ch.from_index for ch in channels if ch.bath == BATH_CAVITY}
    }
    for ch in channels:
        if ch.bath != BATH_CAVITY:
            continue
        for name, win in windows.items():
            if win.lo <= ch.freq <= win.hi:
                fluxes[name] += ch.rate * populations[ch.from_index]
                break
    return fluxes


def total_emission(spec: Spectrum) -> float:
    """Trapezoidal integral of S over the whole grid."""
    return float(np.trapezoid(spec.values, spec.omegas))


def quadrature_moment(rho_ss: np.ndarray, x_minus: np.ndarray) -> float:
    """<X+ X-> in the steady state: the total emitted flux per unit gamma_cav."""
    x_plus = x_minus.conj().T
    return float(np.real(np.trace(x_plus @ x_minus @ rho_ss)))
