"""Time-domain causality diagnostics for response spectra.

A causal response function is analytic in the upper half plane, which shows
up in two testable ways on a sampled spectrum: its inverse Fourier transform is
supported at positive times, and its real and imaginary parts are Hilbert
transforms of each other.  Both checks are performed on the acceleration
response a(w) = -chi(w)/w^2 when the input grows like w^2 at the band edge
(the generic case for a mirror with inertia), after subtracting the
high-frequency plateau and tapering the band edges so the finite window does
not masquerade as acausal ringing.

The dispersion check is once subtracted and anchored at w = 0,

    Re a(w) - Re a(0)  vs  w * H[Im a(w') / w'](w),

which converges on a finite window even though the unsubtracted transform
would pick up an O(1/W) offset from the truncated tails.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import Spectrum
from .numerics import hilbert_transform, inverse_fourier_to_time


@dataclass(frozen=True)
class CausalityConfig:
    """Tuning knobs for the causality diagnostics.

    Parameters
    ----------
    taper_frac : float
        Fraction of each band edge smoothed to zero by a cosine ramp.
    fit_frac : float
        Fraction of each band edge used to fit the real plateau mu + c/|w|.
    exclusion_mult : float
        Half-width of the excluded window around t = 0, in units of pi/w_max;
        window-limited resolution makes times below this scale meaningless.
    interior_frac : float
        Fraction of the band (around zero) scored by the dispersion residual.
    nt : int
        Number of time samples for the energy-fraction metric.
    mode : str
        "inertial" divides by -w^2 first, "direct" uses the spectrum as is,
        "auto" picks by comparing edge magnitude against the interior median.
    """

    taper_frac: float = 0.15
    fit_frac: float = 0.10
    exclusion_mult: float = 8.0
    interior_frac: float = 0.25
    nt: int = 4001
    mode: str = "auto"

    def __post_init__(self) -> None:
        for name in ("taper_frac", "fit_frac", "interior_frac"):
            value = getattr(self, name)
            if not 0.0 < value < 0.5:
                raise ValueError(f"{name} must lie in (0, 0.5), got {value}")
        if self.exclusion_mult <= 0.0:
            raise ValueError("exclusion_mult must be positive")
        if self.nt < 64:
            raise ValueError("nt must be at least 64")
        if self.mode not in ("auto", "inertial", "direct"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class CausalityReport:
    """Outcome of the two causality metrics on one spectrum.

    Attributes
    ----------
    mode : str
        Resolved preprocessing mode ("inertial" or "direct").
    negative_time_fraction : float
        Energy at t < -t_exclusion over energy at |t| > t_exclusion.
    kk_residual : float
        Relative l2 mismatch of the once-subtracted dispersion relation
        over the scored interior band.
    plateau : float
        Real high-frequency plateau removed before transforming.
    t_exclusion : float
        Half-width of the ignored window around t = 0.
    negative_energy, total_energy : float
        The raw energies behind the fraction, for reporting.
    """

    mode: str
    negative_time_fraction: float
    kk_residual: float
    plateau: float
    t_exclusion: float
    negative_energy: float
    total_energy: float

    def passes(self, neg_tol: float = 1e-3, kk_tol: float = 0.01) -> bool:
        return self.negative_time_fraction < neg_tol and self.kk_residual < kk_tol

    def lines(self) -> list[str]:
        return [
            f"mode                    {self.mode}",
            f"negative_time_fraction  {self.negative_time_fraction:.6e}",
            f"kk_residual             {self.kk_residual:.6e}",
            f"plateau                 {self.plateau:.6e}",
            f"t_exclusion             {self.t_exclusion:.6e}",
        ]


def _fill_zero(om: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Replace samples at w = 0 by the average of their neighbours."""
    out = values.copy()
    for j in np.flatnonzero(om == 0.0):
        lo = max(j - 1, 0)
        hi = min(j + 1, om.size - 1)
        out[j] = 0.5 * (out[lo] + out[hi])
    return out


def _cosine_taper(n: int, frac: float) -> np.ndarray:
    window = np.ones(n)
    k = int(round(frac * n))
    if k > 1:
        ramp = 0.5 * (1.0 - np.cos(np.linspace(0.0, np.pi, k)))
        window[:k] = ramp
        window[-k:] = ramp[::-1]
    return window


def _subtract_plateau(om: np.ndarray, values: np.ndarray, frac: float) -> tuple[np.ndarray, float]:
    """Fit Re values ~ mu + c/|w| on the band edges and remove mu."""
    n = om.size
    k = max(3, int(round(frac * n)))
    sel = np.r_[0:k, n - k:n]
    x = np.abs(om[sel])
    basis = np.column_stack([np.ones_like(x), 1.0 / x])
    coef, *_ = np.linalg.lstsq(basis, values[sel].real, rcond=None)
    return values - coef[0], float(coef[0])


def causality_report(spectrum: Spectrum, config: CausalityConfig | None = None) -> CausalityReport:
    """Score a sampled response spectrum against both causality metrics.

    Parameters
    ----------
    spectrum : Spectrum
        Response samples on a sign-symmetric uniform grid containing w = 0.
    config : CausalityConfig, optional

    Returns
    -------
    CausalityReport

    Examples
    --------
    >>> from vacmirror import FrequencyGrid, SinglePoleMirror, VacuumState
    >>> from vacmirror.response import susceptibility_grid
    >>> grid = FrequencyGrid.symmetric(200.0, 16001)
    >>> chi = susceptibility_grid(SinglePoleMirror(2.0), VacuumState(), grid)
    >>> causality_report(chi).passes()
    True
    """
    cfg = config or CausalityConfig()
    om = spectrum.omega
    values = spectrum.values
    n = om.size
    if n < 128:
        raise ValueError("causality metrics need at least 128 samples")
    if not np.isclose(om[0], -om[-1], rtol=0.0, atol=1e-12 * abs(om[-1])):
        raise ValueError("grid must be symmetric about zero")
    mid = n // 2
    if om[mid] != 0.0:
        raise ValueError("grid must contain the zero frequency")
    w_max = float(om[-1])

    mode = cfg.mode
    if mode == "auto":
        k = max(3, n // 50)
        edge = max(float(np.mean(np.abs(values[:k]))), float(np.mean(np.abs(values[-k:]))))
        interior = np.abs(values[np.abs(om) <= 0.25 * w_max])
        mode = "inertial" if edge > 2.0 * float(np.median(interior)) else "direct"

    if mode == "inertial":
        safe = np.where(om == 0.0, 1.0, om)
        a = _fill_zero(om, np.where(om == 0.0, 0.0, -values / safe**2))
    else:
        a = values.astype(complex)

    a, plateau = _subtract_plateau(om, a, cfg.fit_frac)
    a = a * _cosine_taper(n, cfg.taper_frac)

    # energy fraction at negative times
    dw = float(om[1] - om[0])
    t_max = np.pi / (5.0 * dw)
    t = np.linspace(-t_max, t_max, cfg.nt)
    signal = inverse_fourier_to_time(Spectrum(spectrum.grid, a), t)
    power = np.abs(signal) ** 2
    t_excl = cfg.exclusion_mult * np.pi / w_max
    dt = float(t[1] - t[0])
    neg_energy = float(power[t < -t_excl].sum() * dt)
    total_energy = float(power[np.abs(t) > t_excl].sum() * dt)
    fraction = neg_energy / total_energy if total_energy > 0.0 else 0.0

    # once-subtracted dispersion relation anchored at w = 0
    safe = np.where(om == 0.0, 1.0, om)
    m = _fill_zero(om, np.where(om == 0.0, 0.0, a.imag / safe))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        transformed = hilbert_transform(Spectrum(spectrum.grid, m.astype(complex)))
    predicted = om * transformed.values.real
    anchored = a.real - a.real[mid]
    band = np.abs(om) <= cfg.interior_frac * w_max
    mismatch = np.linalg.norm(anchored[band] - predicted[band])
    denom = max(np.linalg.norm(anchored[band]), np.linalg.norm(predicted[band]), 1e-300)

    return CausalityReport(
        mode=mode,
        negative_time_fraction=float(fraction),
        kk_residual=float(mismatch / denom),
        plateau=plateau,
        t_exclusion=float(t_excl),
        negative_energy=neg_energy,
        total_energy=total_energy,
    )
