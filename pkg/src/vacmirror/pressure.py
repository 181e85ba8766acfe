"""Radiation-pressure force kernel for a motionless mirror.

The force exerted by the field on a static scatterer is governed by the
two-frequency kernel

    F[w, w'] = eta - S(w') eta S(w)
             = [[ alpha,  beta],
                [-beta, -alpha]],

    alpha = 1 - s(w) s(w') + r(w) r(w'),
    beta  = s(w) r(w') - r(w) s(w').

alpha is symmetric and beta antisymmetric under argument swap, giving the
exchange rules F[w,w']^T = F[w',w] = eta F[w,w'] eta and
F[w,w']^dagger = F[-w',-w].  For unitary models the kernel additionally
satisfies the product identities

    F F^dagger = F eta + eta F^dagger,
    F^dagger F = eta F + F^dagger eta,

whose residuals :func:`unitarity_identities` reports.  The mean pressure in a
stationary state contracts F(w, -w) with the state's anticommutator spectrum;
the energy-exchange kernel G(w, -w) = I - S(-w) S(w) vanishes for every
unitary, real model, expressing that a static mirror exchanges no net energy
with a stationary field.
"""

from __future__ import annotations

import numpy as np

from .core import ETA, EYE2, FrequencyGrid, dagger, max_entry
from .mirrors import Mirror
from .states import FieldState


def alpha(model: Mirror, omega, omega2):
    """Diagonal kernel entry 1 - s(w)s(w') + r(w)r(w'), vectorized."""
    return 1.0 - model.s(omega) * model.s(omega2) + model.r(omega) * model.r(omega2)


def beta(model: Mirror, omega, omega2):
    """Off-diagonal kernel entry s(w)r(w') - r(w)s(w'), vectorized."""
    return model.s(omega) * model.r(omega2) - model.r(omega) * model.s(omega2)


def force_kernel(model: Mirror, omega: float, omega2: float) -> np.ndarray:
    """F[w, w'] = eta - S(w') eta S(w) as a 2x2 array."""
    s_w = model.smatrix(omega)
    s_w2 = model.smatrix(omega2)
    return ETA - s_w2 @ ETA @ s_w


def unitarity_identities(model: Mirror, omega: float, omega2: float) -> tuple[float, float]:
    """Max-entry residuals of the two product identities at (w, w').

    Both vanish identically for unitary models; a non-unitary model (for
    example a tabulated mirror with rescaled reflection) yields nonzero
    residuals, which is how tests detect the broken symmetry.
    """
    f = force_kernel(model, omega, omega2)
    fd = dagger(f)
    res_a = max_entry(f @ fd - (f @ ETA + ETA @ fd))
    res_b = max_entry(fd @ f - (ETA @ f + fd @ ETA))
    return res_a, res_b


def energy_exchange_kernel(model: Mirror, omega: float) -> np.ndarray:
    """G(w, -w) = I - S(-w) S(w); zero for unitary, real models."""
    return EYE2 - model.smatrix(-omega) @ model.smatrix(omega)


def mean_force_integrand(model: Mirror, state: FieldState, omega):
    """w^2 Tr[F(w, -w) cplus(w)], evaluated in cancellation-free form.

    For diagonal states the trace collapses to
    alpha(w, -w) * (W_phi(w) - W_psi(w)) with W the per-component chi-type
    weights; for isotropic states (vacuum, thermal) the two components are
    equal and the integrand is exactly zero pointwise.
    """
    if not state.diagonal:
        omega_arr = np.atleast_1d(np.asarray(omega, dtype=float))
        vals = np.array([
            w * w * np.trace(force_kernel(model, w, -w) @ state.cplus(w))
            for w in omega_arr
        ])
        return vals.reshape(np.shape(omega))
    nw = state.noise_weight(omega)
    # v^2 cplus = v^2 (c - cminus); the cminus parts of the two components are
    # equal and cancel in the difference, so the noise weights serve directly
    diff = nw[..., 0] - nw[..., 1]
    a = alpha(model, omega, -np.asarray(omega, dtype=float))
    return a * diff


def mean_force(
    model: Mirror,
    state: FieldState,
    grid: FrequencyGrid,
    allow_cutoff: bool = False,
) -> float:
    """Mean radiation pressure: integral of w^2 Tr[F(w,-w) cplus(w)] / 2 pi.

    Parameters
    ----------
    model : Mirror
    state : FieldState
    grid : FrequencyGrid
        Quadrature support; use a symmetric grid wide enough that the thermal
        occupancy has decayed at the edges.
    allow_cutoff : bool
        A model that is not transparent makes the integrand non-decaying, so
        the grid edge acts as a physical cutoff; require the caller to
        acknowledge that instead of silently truncating.

    Returns
    -------
    float
        Net force; exactly zero (not merely small) for isotropic states,
        positive toward the colder side for two-temperature states with the
        hotter component incident from the left.
    """
    if not model.transparent and not allow_cutoff:
        raise ValueError(
            "model is not transparent at high frequency; the pressure integral "
            "does not converge - pass allow_cutoff=True to integrate over the "
            "grid span anyway"
        )
    vals = np.asarray(mean_force_integrand(model, state, grid.omega))
    imag = float(np.max(np.abs(vals.imag))) if np.iscomplexobj(vals) else 0.0
    scale = max(float(np.max(np.abs(vals))), 1e-300)
    if imag > 1e-10 * scale:
        raise ValueError(f"mean-force integrand has spurious imaginary part {imag:.3e}")
    return float(np.trapezoid(vals.real, grid.omega) / (2.0 * np.pi))
