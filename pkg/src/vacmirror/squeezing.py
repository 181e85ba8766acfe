"""Squeezing-like modification of the output field by a moving mirror.

To first order in the displacement, the output covariance acquires a
two-frequency perturbation proportional to the trajectory's spectral weight
dq[w + w'],

    dC_out[w, w'] = -i w' (S(w) eta - eta S(-w')) c(-w') S(w')
                    -i w  S(w) c(w) (eta S(w') - S(-w) eta),

per unit dq.  Over the vacuum this collapses to

    dC_out[w, w'] = (i hbar / 2) (theta(w) - theta(-w')) F[w', w],

supported only where the two frequencies share a sign: the mirror creates or
destroys correlated pairs, never a single quantum.  For an oscillation
dq(t) = dq0 cos(2 w0 t) the support is the pair of segments w + w' = +/-2 w0,
and the coupling is the Hamiltonian-weighted kernel w w' F[w, w'] paired with
dq[-w - w'].  Every measure of the line strength vanishes as w0 -> 0, which
is the covariance-level statement that a slowly moving mirror does not
squeeze the vacuum.
"""

from __future__ import annotations

import numpy as np

from .core import ETA, PhysicsContext
from .mirrors import Mirror
from .pressure import force_kernel
from .response import MonochromaticOscillation
from .states import FieldState


def delta_cout(model: Mirror, state: FieldState, omega: float, omega2: float) -> np.ndarray:
    """Output-covariance perturbation per unit dq[w + w'], general route.

    Contracts the first-order scattering with the state's full covariance;
    raises at zero frequency where the covariance is singular.
    """
    s_w = model.smatrix(omega)
    s_w2 = model.smatrix(omega2)
    s_neg_w = model.smatrix(-omega)
    s_neg_w2 = model.smatrix(-omega2)
    c_neg_w2 = state.cfull(-omega2)
    c_w = state.cfull(omega)
    term1 = -1j * omega2 * (s_w @ ETA - ETA @ s_neg_w2) @ c_neg_w2 @ s_w2
    term2 = -1j * omega * s_w @ c_w @ (ETA @ s_w2 - s_neg_w @ ETA)
    return term1 + term2


def delta_cout_vacuum(
    model: Mirror,
    omega: float,
    omega2: float,
    context: PhysicsContext = PhysicsContext(),
) -> np.ndarray:
    """Vacuum closed form (i hbar/2)(theta(w) - theta(-w')) F[w', w].

    Independent of the general route; the two must agree over the vacuum.
    Exactly zero when the frequencies have opposite signs.
    """
    sign_factor = np.heaviside(omega, 0.5) - np.heaviside(-omega2, 0.5)
    if sign_factor == 0.0:
        return np.zeros((2, 2), dtype=complex)
    return 0.5j * context.hbar * sign_factor * force_kernel(model, omega2, omega)


def secular_hamiltonian_kernel(model: Mirror, omega: float, omega2: float) -> np.ndarray:
    """Coupling kernel w w' F[w, w'] paired with dq[-w - w'].

    Its trace contraction with input covariances gives the time-integrated
    coupling energy; the w w' prefactor zeroes the kernel whenever either
    frequency vanishes, and the swap rule follows the force kernel's.
    """
    return omega * omega2 * force_kernel(model, omega, omega2)


def oscillation_squeeze_lines(
    model: Mirror,
    state: FieldState,
    osc: MonochromaticOscillation,
    n_samples: int = 33,
) -> list[tuple[float, float, np.ndarray]]:
    """Support lines of the output perturbation for an oscillating mirror.

    Enumerates (w, w', dq0/2 * dC_out) triples sampled along the two segments
    w + w' = +/- frequency with sign(w) = sign(w'); opposite-sign pairs are
    excluded because the vacuum kernel vanishes there.

    Parameters
    ----------
    model, state : Mirror, FieldState
    osc : MonochromaticOscillation
        The trajectory; its ``frequency`` is the line sum |w + w'|.
    n_samples : int
        Interior sample count per segment (endpoints sit at zero frequency
        and are excluded).
    """
    out: list[tuple[float, float, np.ndarray]] = []
    for total, weight in osc.line_weights():
        for k in range(1, n_samples + 1):
            w = total * k / (n_samples + 1)
            w2 = total - w
            out.append((w, w2, weight * delta_cout(model, state, w, w2)))
    return out


def oscillation_line_strength(
    model: Mirror,
    state: FieldState,
    osc: MonochromaticOscillation,
    n_samples: int = 129,
) -> dict[float, float]:
    """Integrated Frobenius norm of each line's kernel along its support.

    The segment length scales with the oscillation frequency while the kernel
    stays bounded, so both strengths tend to zero as the drive slows down.
    Returns {line sum: strength}.
    """
    strengths: dict[float, float] = {}
    for total, weight in osc.line_weights():
        ws = np.array([total * k / (n_samples + 1) for k in range(1, n_samples + 1)])
        norms = np.array([
            np.linalg.norm(weight * delta_cout(model, state, w, total - w))
            for w in ws
        ])
        # ws descends for the negative line; |.| restores the positive measure
        strengths[total] = float(abs(np.trapezoid(norms, ws)))
    return strengths
