"""Force noise, the force commutator, and the fluctuation-dissipation check.

The radiation-pressure fluctuations on a motionless mirror are governed by
the two-frequency correlation kernel

    C_FF[w, w'] = 2 w^2 w'^2 Tr[F[w,w'] c(w) F[w,w']^dagger c(w')^T],

whose convolution C_FF(w) = integral dw'/(2 pi) C_FF[w', w - w'] is the force
noise spectrum.  For states diagonal in the doublet basis the trace collapses
to a sum over squared kernel entries weighted by W(v) = v^2 c(v),

    C_FF[w, w'] = 2 [ |alpha|^2 (W1 W1' + W2 W2') + |beta|^2 (W1 W2' + W2 W1') ],

which keeps every vacuum theta factor exact: negative-frequency vacuum noise
is identically zero, not small.

The antisymmetrized kernel is the force commutator.  It can be built either
from the noise kernel or from the susceptibility kernel,

    xi[w, w'] = (C_FF[w,w'] - C_FF[-w',-w]) / (2 hbar)
              = (chi[w,w'] - chi[-w,-w']) / (2 i),

and its convolution xi(w) ties noise to dissipation:

    xi(w) = (C_FF(w) - C_FF(-w)) / (2 hbar) = Im chi(w).

:func:`fdt_check` evaluates all three routes independently on a grid and
reports their maximum disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FrequencyGrid, Spectrum
from .mirrors import Mirror
from .numerics import NonConvergenceError, QuadratureConfig, integrate
from .pressure import alpha, beta, force_kernel
from .response import _THERMAL_DECADES, _require_decay, chi_kernel, susceptibility
from .states import FieldState, VacuumState


def cff_kernel(model: Mirror, state: FieldState, omega: float, omega2: float) -> complex:
    """Noise kernel C_FF[w, w'], symmetric in its arguments.

    Diagonal states evaluate through the noise weights (exact zeros where the
    vacuum occupancy vanishes); general states use the full-covariance trace,
    which requires w, w' != 0.
    """
    if state.diagonal:
        a = alpha(model, omega, omega2)
        b = beta(model, omega, omega2)
        w1 = state.noise_weight(omega)
        w2 = state.noise_weight(omega2)
        val = 2.0 * (
            np.abs(a) ** 2 * (w1[..., 0] * w2[..., 0] + w1[..., 1] * w2[..., 1])
            + np.abs(b) ** 2 * (w1[..., 0] * w2[..., 1] + w1[..., 1] * w2[..., 0])
        )
        return complex(val)
    f = force_kernel(model, omega, omega2)
    c_w = state.cfull(omega)
    c_w2 = state.cfull(omega2)
    return complex(
        2.0 * omega**2 * omega2**2 * np.trace(f @ c_w @ f.conj().T @ c_w2.T)
    )


def commutator_kernel(
    model: Mirror,
    state: FieldState,
    omega: float,
    omega2: float,
    route: str = "noise",
) -> complex:
    """Force commutator kernel xi[w, w'].

    route="noise" antisymmetrizes the noise kernel (valid beyond Gaussian
    states); route="response" antisymmetrizes the susceptibility kernel.  The
    two must agree for the built-in states.
    """
    if route == "noise":
        hbar = state.context.hbar
        return (
            cff_kernel(model, state, omega, omega2)
            - cff_kernel(model, state, -omega2, -omega)
        ) / (2.0 * hbar)
    if route == "response":
        return (
            chi_kernel(model, state, omega, omega2)
            - chi_kernel(model, state, -omega, -omega2)
        ) / 2.0j
    raise ValueError(f"unknown route {route!r}")


def _convolve(kernel, omega: float, state: FieldState, model: Mirror, quad: QuadratureConfig,
              what: str) -> complex:
    """integral dw'/(2 pi) kernel(w', w - w') with state-appropriate support."""
    hbar = state.context.hbar
    decay0 = state.decay_scale() or 0.0
    # natural magnitude of the convolved spectra: hbar^2 w^3 in vacuum, with
    # thermal contributions entering through the decay scale
    scale = hbar * (hbar * abs(omega) ** 3 + decay0**2 * abs(omega) + decay0**3)

    def integrand(w: float) -> complex:
        return kernel(w, omega - w) / (2.0 * np.pi)

    decay = state.decay_scale()
    if isinstance(state, VacuumState):
        if omega <= 0:
            # theta factors of the vacuum weights: empty support
            return 0.0 + 0.0j
        lo, hi = 0.0, omega
        points = None
    elif decay is None:
        if quad.window is None:
            raise ValueError(
                f"{what} for a custom state has no known support bound; "
                "set QuadratureConfig.window explicitly"
            )
        lo, hi = min(-quad.window, 0.0), max(quad.window, omega)
        points = (0.0, omega)
    else:
        _require_decay(model, state, what)
        span = _THERMAL_DECADES * decay / hbar
        lo, hi = min(0.0, omega) - span, max(0.0, omega) + span
        if quad.window is not None:
            lo, hi = min(-quad.window, lo), max(quad.window, hi)
        points = (0.0, omega)
    cfg = QuadratureConfig(
        abs_tol=min(quad.abs_tol, 1e-10 * scale) if scale > 0 else quad.abs_tol,
        rel_tol=quad.rel_tol,
        max_subdivisions=quad.max_subdivisions,
    )
    try:
        val, _ = integrate(integrand, lo, hi, cfg, points=points)
    except NonConvergenceError as exc:
        raise NonConvergenceError(
            f"{what} at omega={omega!r}: {exc.args[0]}",
            best=exc.best,
            error_estimate=exc.error_estimate,
        ) from None
    return val


def noise_spectrum(
    model: Mirror,
    state: FieldState,
    omega: float,
    quad: QuadratureConfig = QuadratureConfig(),
) -> float:
    """Force noise spectrum C_FF(w), real and nonnegative.

    Vacuum noise is exactly zero for w <= 0 (the vacuum damps mirror motion
    but cannot excite it); thermal spectra satisfy the detailed-balance ratio
    C_FF(-w)/C_FF(w) = e^{-hbar w / T}.
    """
    val = _convolve(
        lambda a, b: cff_kernel(model, state, a, b),
        omega, state, model, quad, "noise_spectrum",
    )
    if abs(val.imag) > 1e-10 * max(abs(val.real), 1e-300):
        raise ValueError(f"noise spectrum at w={omega:g} has imaginary residue {val.imag:.3e}")
    return float(val.real)


def xi_spectrum(
    model: Mirror,
    state: FieldState,
    omega: float,
    quad: QuadratureConfig = QuadratureConfig(),
) -> float:
    """Commutator spectrum xi(w): convolution of the commutator kernel.

    Real and odd in w; equals Im chi(w) when the fluctuation-dissipation
    relation holds.
    """
    if isinstance(state, VacuumState) and omega < 0:
        return -xi_spectrum(model, state, -omega, quad)
    val = _convolve(
        lambda a, b: commutator_kernel(model, state, a, b, route="noise"),
        omega, state, model, quad, "xi_spectrum",
    )
    if abs(val.imag) > 1e-10 * max(abs(val.real), 1e-300):
        raise ValueError(f"commutator spectrum at w={omega:g} has imaginary residue {val.imag:.3e}")
    return float(val.real)


def noise_spectrum_grid(
    model: Mirror,
    state: FieldState,
    grid: FrequencyGrid,
    quad: QuadratureConfig = QuadratureConfig(),
) -> Spectrum:
    """C_FF(w) sampled on a grid, as a Spectrum."""
    vals = np.array([
        noise_spectrum(model, state, float(w), quad) for w in grid.omega
    ], dtype=complex)
    return Spectrum(grid, vals, {"label": "noise-spectrum"})


@dataclass(frozen=True)
class FdtReport:
    """Three-route commutator spectra on a grid and their disagreement.

    Attributes
    ----------
    grid : FrequencyGrid
    xi_commutator : numpy.ndarray
        Route (a): convolution of the antisymmetrized noise kernel.
    xi_noise : numpy.ndarray
        Route (b): (C_FF(w) - C_FF(-w)) / (2 hbar).
    xi_chi : numpy.ndarray
        Route (c): Im chi(w).
    max_deviation : float
        Largest pairwise difference across the grid.
    peak : float
        max |xi| across routes, the natural scale for max_deviation.
    """

    grid: FrequencyGrid
    xi_commutator: np.ndarray
    xi_noise: np.ndarray
    xi_chi: np.ndarray
    max_deviation: float
    peak: float

    @property
    def relative_deviation(self) -> float:
        return self.max_deviation / max(self.peak, 1e-300)

    def passes(self, tol: float) -> bool:
        return self.relative_deviation <= tol


def fdt_check(
    model: Mirror,
    state: FieldState,
    grid: FrequencyGrid,
    quad: QuadratureConfig = QuadratureConfig(),
) -> FdtReport:
    """Evaluate the fluctuation-dissipation relation on a symmetric grid.

    Computes xi(w) three independent ways (commutator-kernel convolution,
    antisymmetrized noise spectra, imaginary part of the susceptibility) and
    reports the maximum pairwise deviation together with the peak magnitude
    it should be compared against.
    """
    om = grid.omega
    if not np.array_equal(om, -om[::-1]):
        raise ValueError("fdt_check needs a sign-symmetric grid")
    hbar = state.context.hbar

    xi_a = np.array([xi_spectrum(model, state, float(w), quad) for w in om])
    cff = np.array([noise_spectrum(model, state, float(w), quad) for w in om])
    xi_b = (cff - cff[::-1]) / (2.0 * hbar)
    xi_c = np.array([
        float(np.imag(susceptibility(model, state, float(w), quad))) for w in om
    ])

    deviation = max(
        float(np.max(np.abs(xi_a - xi_b))),
        float(np.max(np.abs(xi_a - xi_c))),
        float(np.max(np.abs(xi_b - xi_c))),
    )
    peak = float(max(np.max(np.abs(xi_a)), np.max(np.abs(xi_b)), np.max(np.abs(xi_c))))
    return FdtReport(
        grid=grid,
        xi_commutator=xi_a,
        xi_noise=xi_b,
        xi_chi=xi_c,
        max_deviation=deviation,
        peak=peak,
    )
