"""Motional force response of the mirror.

A small displacement dq(t) around rest modifies the scattering to first
order, and the mean force responds linearly,

    <dF[w]> = chi(w) dq[w],
    chi(w)  = integral dw'/(2 pi) chi[w', w - w'],

with a two-frequency kernel that contracts the static force kernel with the
state's anticommutator spectrum.  For diagonal states the kernel takes the
cancellation-free form

    chi[w, w'] = i alpha(w, w') (w' u(w) + w u(w')),     u(v) = v^2 tr cplus(v),

regular at zero frequency even though cplus alone diverges there.  For the
vacuum, u(v) = hbar |v| / 2 makes the opposite-sign contributions cancel
exactly, leaving the bounded support w' in [0, w]; the perfect-mirror limit
of the resulting integral is the cubic law chi(w) = i hbar w^3 / (6 pi).

The same response can be derived in the comoving frame by perturbing the
input covariance instead of the S-matrix
(:func:`comoving_covariance_perturbation`); both contractions agree
identically, which :func:`chi_kernel_comoving` exposes for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ETA, FrequencyGrid, Spectrum
from .mirrors import Mirror
from .numerics import NonConvergenceError, QuadratureConfig, integrate
from .pressure import alpha, force_kernel
from .states import FieldState, VacuumState

# occupancy factor e^{-x} below double precision; sets thermal windows
_THERMAL_DECADES = 46.0


def delta_smatrix(model: Mirror, omega: float, omega2: float) -> np.ndarray:
    """First-order scattering perturbation i w' (S(w) eta - eta S(w')).

    The returned matrix multiplies the trajectory weight dq[w - w']; at equal
    frequencies the diagonal cancels and only the off-diagonal -/+ 2 r
    structure survives, while w' = 0 gives the zero matrix.
    """
    return 1j * omega2 * (model.smatrix(omega) @ ETA - ETA @ model.smatrix(omega2))


def chi_kernel(model: Mirror, state: FieldState, omega: float, omega2: float) -> complex:
    """Two-frequency susceptibility kernel chi[w, w'].

    Diagonal states use the cancelled weight form, finite for all arguments;
    general states fall back to the matrix trace
    w w' Tr[F (i w cplus(w) eta + i w' eta cplus(-w'))], which requires
    w, w' != 0.
    """
    if state.diagonal:
        a = alpha(model, omega, omega2)
        u_w = float(state.chi_weight(omega))
        u_w2 = float(state.chi_weight(omega2))
        return complex(1j * a * (omega2 * u_w + omega * u_w2))
    f = force_kernel(model, omega, omega2)
    inner = 1j * omega * state.cplus(omega) @ ETA + 1j * omega2 * ETA @ state.cplus(-omega2)
    return complex(omega * omega2 * np.trace(f @ inner))


def chi_kernel_symmetrized(
    model: Mirror, state: FieldState, omega: float, omega2: float
) -> complex:
    """Cross-check route: the explicitly symmetrized full-covariance trace.

    (w w'/2) Tr[F[w,w'] (i w c(w) eta + i w' eta c(-w'))
                + F[w',w] (i w' c(w') eta + i w eta c(-w))]

    The commutator parts of c cancel inside the symmetrized trace, so this
    equals :func:`chi_kernel` wherever both are defined (w, w' != 0).
    """
    f12 = force_kernel(model, omega, omega2)
    f21 = force_kernel(model, omega2, omega)
    t1 = f12 @ (
        1j * omega * state.cfull(omega) @ ETA
        + 1j * omega2 * ETA @ state.cfull(-omega2)
    )
    t2 = f21 @ (
        1j * omega2 * state.cfull(omega2) @ ETA
        + 1j * omega * ETA @ state.cfull(-omega)
    )
    return complex(omega * omega2 / 2.0 * np.trace(t1 + t2))


def comoving_covariance_perturbation(
    state: FieldState, omega: float, omega2: float
) -> np.ndarray:
    """Input-covariance perturbation seen from the comoving frame.

    Returns -i w c(w) eta - i w' eta c(-w') per unit dq[w + w']: the mirror's
    motion makes the stationary input appear modulated.  Raises at zero
    frequency where the full covariance is singular.
    """
    return (
        -1j * omega * state.cfull(omega) @ ETA
        - 1j * omega2 * ETA @ state.cfull(-omega2)
    )


def chi_kernel_comoving(model: Mirror, state: FieldState, omega: float, omega2: float) -> complex:
    """Susceptibility kernel computed in the comoving frame.

    i w i w' Tr[F[w,w'] dC_in[w,w']]; identical to :func:`chi_kernel` because
    the commutator parts of the full covariance drop out of the trace.
    """
    f = force_kernel(model, omega, omega2)
    pert = comoving_covariance_perturbation(state, omega, omega2)
    return complex((1j * omega) * (1j * omega2) * np.trace(f @ pert))


def _require_decay(model: Mirror, state: FieldState, what: str) -> None:
    if state.decay_scale() is not None and not model.transparent:
        raise ValueError(
            f"{what} over a thermal state needs a transparent model: the "
            "integrand does not decay for a perfectly reflecting mirror"
        )


def susceptibility(
    model: Mirror,
    state: FieldState,
    omega: float,
    quad: QuadratureConfig = QuadratureConfig(),
) -> complex:
    """Force susceptibility chi(w) = integral dw'/(2 pi) chi[w', w - w'].

    Parameters
    ----------
    model : Mirror
    state : FieldState
        Built-in diagonal states integrate through the cancellation-free
        kernel; thermal tails are windowed where the occupancy has decayed
        below double precision.
    omega : float
        Analysis frequency; chi(0) = 0 and chi(-w) = conj(chi(w)) hold by
        construction.
    quad : QuadratureConfig
        ``abs_tol`` is tightened to 1e-10 * hbar |w|^3 when that is stricter,
        matching the natural scale of the response.

    Raises
    ------
    NonConvergenceError
        If the adaptive quadrature cannot meet its tolerance.
    ValueError
        For thermal states with a non-transparent model.
    """
    if omega == 0:
        return 0.0 + 0.0j
    if omega < 0:
        return complex(np.conj(susceptibility(model, state, -omega, quad)))

    hbar = state.context.hbar
    scale = hbar * abs(omega) ** 3
    decay = state.decay_scale()

    def integrand(w: float) -> complex:
        return chi_kernel(model, state, w, omega - w) / (2.0 * np.pi)

    if isinstance(state, VacuumState):
        # the vacuum weight u = hbar|v|/2 cancels exactly outside [0, w]
        cfg = QuadratureConfig(
            abs_tol=min(quad.abs_tol, 1e-10 * scale),
            rel_tol=quad.rel_tol,
            max_subdivisions=quad.max_subdivisions,
        )
        try:
            val, _ = integrate(integrand, 0.0, omega, cfg)
        except NonConvergenceError as exc:
            raise NonConvergenceError(
                f"susceptibility at omega={omega!r}: {exc.args[0]}",
                best=exc.best,
                error_estimate=exc.error_estimate,
            ) from None
        return val

    if decay is None:
        if quad.window is None:
            raise ValueError(
                "susceptibility for a custom state has no known support bound; "
                "set QuadratureConfig.window explicitly"
            )
        lo, hi = min(-quad.window, 0.0), max(quad.window, omega)
    else:
        _require_decay(model, state, "susceptibility")
        span = _THERMAL_DECADES * decay / hbar
        lo, hi = -span, omega + span
        if quad.window is not None:
            lo, hi = min(-quad.window, lo), max(quad.window, hi)
        scale = scale + abs(omega) * decay**2 / hbar
    cfg = QuadratureConfig(
        abs_tol=min(quad.abs_tol, 1e-10 * scale),
        rel_tol=quad.rel_tol,
        max_subdivisions=quad.max_subdivisions,
    )
    try:
        val, _ = integrate(integrand, lo, hi, cfg, points=(0.0, omega))
    except NonConvergenceError as exc:
        raise NonConvergenceError(
            f"susceptibility at omega={omega!r}: {exc.args[0]}",
            best=exc.best,
            error_estimate=exc.error_estimate,
        ) from None
    return val


def susceptibility_grid(
    model: Mirror,
    state: FieldState,
    grid: FrequencyGrid,
    quad: QuadratureConfig = QuadratureConfig(),
) -> Spectrum:
    """chi(w) sampled on a grid, as a Spectrum.

    On sign-symmetric grids only w >= 0 is integrated; negative frequencies
    are filled by conjugation, so the reality constraint holds bitwise.
    """
    om = grid.omega
    vals = np.empty(om.size, dtype=complex)
    symmetric = bool(np.array_equal(om, -om[::-1]))
    for k, w in enumerate(om):
        if symmetric and w < 0:
            continue
        vals[k] = susceptibility(model, state, float(w), quad)
    if symmetric:
        half = om.size // 2
        vals[:half] = np.conj(vals[:half:-1])
    return Spectrum(grid, vals, {"label": "susceptibility"})


@dataclass(frozen=True)
class MonochromaticOscillation:
    """Trajectory dq(t) = amplitude * cos(frequency * t).

    Its spectrum is a pair of lines at +/- frequency, each carrying weight
    amplitude / 2 as a coefficient of 2 pi delta(w -/+ frequency).
    """

    amplitude: float
    frequency: float

    def __post_init__(self) -> None:
        if not self.frequency > 0:
            raise ValueError("oscillation frequency must be positive")

    def line_weights(self) -> tuple[tuple[float, float], ...]:
        half = self.amplitude / 2.0
        return ((-self.frequency, half), (self.frequency, half))


@dataclass(frozen=True)
class TabulatedSpectrum:
    """Trajectory given by complex spectral samples dq[w] on a symmetric grid.

    Reality of dq(t) requires dq[-w] = conj(dq[w]), verified at construction.
    """

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=complex)
        om = self.grid.omega
        if vals.shape != om.shape:
            raise ValueError("trajectory samples must match the grid")
        if not np.array_equal(om, -om[::-1]):
            raise ValueError("tabulated trajectory needs a sign-symmetric grid")
        if not np.allclose(vals, np.conj(vals[::-1]), rtol=0.0, atol=1e-12 * max(1.0, np.max(np.abs(vals)))):
            raise ValueError("trajectory spectrum violates dq[-w] = conj(dq[w])")
        object.__setattr__(self, "values", vals)


def motional_force_spectrum(
    model: Mirror,
    state: FieldState,
    traj,
    grid: FrequencyGrid,
    quad: QuadratureConfig = QuadratureConfig(),
) -> Spectrum:
    """Mean force spectrum <dF[w]> = chi(w) dq[w] for a trajectory.

    For :class:`TabulatedSpectrum` trajectories (whose grid must equal
    ``grid``) this is the pointwise product.  For
    :class:`MonochromaticOscillation` the output is a line spectrum: zero
    except at the grid samples nearest +/- frequency, whose values are the
    delta-line coefficients (amplitude/2) chi(+/- frequency); the exact lines
    are also listed in ``meta["lines"]``.
    """
    if isinstance(traj, TabulatedSpectrum):
        if not np.array_equal(traj.grid.omega, grid.omega):
            raise ValueError("trajectory grid must match the requested output grid")
        chi = susceptibility_grid(model, state, grid, quad)
        return chi.with_values(chi.values * traj.values, label="force-spectrum")
    if isinstance(traj, MonochromaticOscillation):
        vals = np.zeros(grid.size, dtype=complex)
        lines = []
        for w_line, weight in traj.line_weights():
            chi_line = susceptibility(model, state, w_line, quad)
            k = int(np.argmin(np.abs(grid.omega - w_line)))
            vals[k] += weight * chi_line
            lines.append((w_line, weight * chi_line))
        return Spectrum(
            grid,
            vals,
            {
                "label": "force-spectrum",
                "lines": tuple(lines),
                "delta_convention": "values are coefficients of 2*pi*delta(omega - line)",
            },
        )
    raise TypeError(f"unsupported trajectory type {type(traj).__name__}")
