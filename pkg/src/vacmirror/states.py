"""Stationary input-field states as covariance spectra.

A stationary Gaussian state of the counterpropagating doublet is described by
its frequency-diagonal covariance c(w), split into a state-dependent
anticommutator part and a universal commutator part:

    c(w) = cplus(w) + cminus(w),      cminus(w) = I * hbar / (4 w).

The anticommutator part satisfies cplus(-w) = cplus(w)^T and is Hermitian
positive semidefinite.  Built-in states (vacuum, thermal, two-temperature) are
diagonal in the doublet basis, which downstream kernels exploit through two
weights that stay finite where cplus alone diverges:

* :meth:`FieldState.chi_weight`  u(v) = v^2 tr cplus(v), entering the
  susceptibility kernel as i*alpha*(w' u(w) + w u(w')),
* :meth:`FieldState.noise_weight` W(v) = v^2 c(v) (diagonal entries),
  entering the noise kernel as 2 Tr[F W(w) F^dagger W(w')].

Both weights absorb the w^2 prefactors of the force kernels, so integrands
built from them are regular at zero frequency and, for the vacuum, vanish
identically outside bounded support instead of through catastrophic
cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import EYE2, PhysicsContext, SingularFrequencyError, max_entry


def _occupancy(x):
    """Bose occupancy 1/(e^x - 1) for x > 0, safe against overflow."""
    x = np.asarray(x, dtype=float)
    safe = np.where((x > 0.0) & (x < 700.0), x, 1.0)
    return np.where(x < 700.0, 1.0 / np.expm1(safe), 0.0) * np.where(x > 0.0, 1.0, np.nan)


class FieldState:
    """Base class for stationary states of the input field.

    Subclasses provide :meth:`cplus`; the commutator part, full covariance,
    and the scalar weights derive from it.  ``diagonal`` declares that
    cplus(w) is diagonal in the doublet basis at every frequency, enabling
    the cancellation-free kernel forms.
    """

    context: PhysicsContext
    diagonal: bool = True

    def cplus(self, omega: float) -> np.ndarray:
        raise NotImplementedError

    def cminus(self, omega: float) -> np.ndarray:
        """Universal commutator spectrum I*hbar/(4 w), state independent."""
        if omega == 0:
            raise SingularFrequencyError("cminus diverges at omega = 0")
        return EYE2 * (self.context.hbar / (4.0 * omega))

    def cfull(self, omega: float) -> np.ndarray:
        """Full covariance c = cplus + cminus."""
        return self.cplus(omega) + self.cminus(omega)

    def chi_weight(self, nu):
        """u(v) = v^2 tr cplus(v), vectorized, finite and even in v."""
        raise NotImplementedError

    def noise_weight(self, nu):
        """Diagonal entries of v^2 c(v) as an array of shape (..., 2)."""
        raise NotImplementedError

    def decay_scale(self) -> float | None:
        """Largest temperature driving the weights' high-frequency tails.

        None means the weights have bounded support structure (vacuum), so
        integrals over them need no thermal window.
        """
        return None


@dataclass(frozen=True)
class VacuumState(FieldState):
    """Ground state of the field: cplus(w) = I*hbar/(4|w|).

    The full covariance I*theta(w)*hbar/(2 w) is one-sided: negative
    frequencies carry no excitation, so the vacuum can absorb energy from the
    mirror but never excite it.
    """

    context: PhysicsContext = field(default_factory=PhysicsContext)

    def cplus(self, omega: float) -> np.ndarray:
        if omega == 0:
            raise SingularFrequencyError("vacuum cplus diverges at omega = 0")
        return EYE2 * (self.context.hbar / (4.0 * abs(omega)))

    def chi_weight(self, nu):
        nu = np.asarray(nu, dtype=float)
        return self.context.hbar * np.abs(nu) / 2.0

    def noise_weight(self, nu):
        nu = np.asarray(nu, dtype=float)
        w = self.context.hbar * np.abs(nu) / 2.0 * np.heaviside(nu, 0.5)
        return np.stack([w, w], axis=-1)


def _thermal_chi_weight(nu, temperature: float, hbar: float):
    """u(v) = (hbar|v|/2)(1 + 2 nbar), with the equipartition limit u(0) = T."""
    nu = np.asarray(nu, dtype=float)
    base = hbar * np.abs(nu) / 2.0
    x = hbar * np.abs(np.where(nu == 0.0, 1.0, nu)) / temperature
    return np.where(nu == 0.0, temperature, base * (1.0 + 2.0 * _occupancy(x)))


def _thermal_noise_weight(nu, temperature: float, hbar: float):
    """w(v) = (hbar|v|/2)(nbar + theta(v)), continuous with w(0) = T/2."""
    nu = np.asarray(nu, dtype=float)
    base = hbar * np.abs(nu) / 2.0
    x = hbar * np.abs(np.where(nu == 0.0, 1.0, nu)) / temperature
    return np.where(
        nu == 0.0,
        temperature / 2.0,
        base * (_occupancy(x) + np.heaviside(nu, 0.5)),
    )


@dataclass(frozen=True)
class ThermalState(FieldState):
    """Both field components at a common temperature.

    cplus(w) = I * (hbar/4|w|) * (1 + 2 nbar),  nbar = 1/(e^{hbar|w|/T} - 1),

    which interpolates between the vacuum (T -> 0) and the classical
    equipartition plateau u(0) = T.  The full covariance satisfies detailed
    balance c(-w) = e^{-hbar w/T} c(w).
    """

    temperature: float
    context: PhysicsContext = field(default_factory=PhysicsContext)

    def __post_init__(self) -> None:
        if not self.temperature > 0:
            raise ValueError(f"temperature must be positive, got {self.temperature}")

    def cplus(self, omega: float) -> np.ndarray:
        if omega == 0:
            raise SingularFrequencyError("thermal cplus diverges at omega = 0")
        hbar = self.context.hbar
        nbar = float(_occupancy(hbar * abs(omega) / self.temperature))
        return EYE2 * (hbar / (4.0 * abs(omega)) * (1.0 + 2.0 * nbar))

    def chi_weight(self, nu):
        return _thermal_chi_weight(nu, self.temperature, self.context.hbar)

    def noise_weight(self, nu):
        w = _thermal_noise_weight(nu, self.temperature, self.context.hbar)
        return np.stack([w, w], axis=-1)

    def decay_scale(self) -> float | None:
        return self.temperature


@dataclass(frozen=True)
class TwoTemperatureState(FieldState):
    """Right- and left-moving components thermalized at different temperatures.

    The doublet stays uncorrelated (cplus diagonal) but anisotropic, so the
    mean radiation pressure no longer vanishes: the hotter side pushes.
    """

    temp_phi: float
    temp_psi: float
    context: PhysicsContext = field(default_factory=PhysicsContext)

    def __post_init__(self) -> None:
        if not (self.temp_phi > 0 and self.temp_psi > 0):
            raise ValueError("both temperatures must be positive")

    def cplus(self, omega: float) -> np.ndarray:
        if omega == 0:
            raise SingularFrequencyError("cplus diverges at omega = 0")
        hbar = self.context.hbar
        x_phi = hbar * abs(omega) / self.temp_phi
        x_psi = hbar * abs(omega) / self.temp_psi
        pref = hbar / (4.0 * abs(omega))
        return np.diag([
            pref * (1.0 + 2.0 * float(_occupancy(x_phi))),
            pref * (1.0 + 2.0 * float(_occupancy(x_psi))),
        ]).astype(complex)

    def chi_weight(self, nu):
        u_phi = _thermal_chi_weight(nu, self.temp_phi, self.context.hbar)
        u_psi = _thermal_chi_weight(nu, self.temp_psi, self.context.hbar)
        return (u_phi + u_psi) / 2.0

    def noise_weight(self, nu):
        w_phi = _thermal_noise_weight(nu, self.temp_phi, self.context.hbar)
        w_psi = _thermal_noise_weight(nu, self.temp_psi, self.context.hbar)
        return np.stack([w_phi, w_psi], axis=-1)

    def decay_scale(self) -> float | None:
        return max(self.temp_phi, self.temp_psi)


class CustomState(FieldState):
    """State defined by a user-supplied anticommutator rule.

    Parameters
    ----------
    cplus_rule : callable
        Map from frequency to a 2x2 complex array.
    context : PhysicsContext
    diagonal : bool
        Declare the rule diagonal to enable the weight-based kernel forms.
    probe_frequencies : sequence of float
        Frequencies at which the state invariants (Hermiticity, positive
        semidefiniteness, cplus(-w) = cplus(w)^T) are verified at
        construction; violations raise immediately.
    """

    def __init__(
        self,
        cplus_rule: Callable[[float], np.ndarray],
        context: PhysicsContext = PhysicsContext(),
        diagonal: bool = False,
        probe_frequencies: Sequence[float] = (0.1, 1.0, 3.0, 10.0),
    ):
        self.context = context
        self.diagonal = bool(diagonal)
        self._rule = cplus_rule
        tol = 1e-10
        for nu in probe_frequencies:
            c = np.asarray(cplus_rule(float(nu)), dtype=complex)
            c_neg = np.asarray(cplus_rule(float(-nu)), dtype=complex)
            if c.shape != (2, 2):
                raise ValueError(f"cplus rule must return 2x2 matrices, got {c.shape}")
            scale = max(max_entry(c), 1e-300)
            if max_entry(c - c.conj().T) > tol * scale:
                raise ValueError(f"cplus({nu}) is not Hermitian")
            if np.min(np.linalg.eigvalsh(c)) < -tol * scale:
                raise ValueError(f"cplus({nu}) is not positive semidefinite")
            if max_entry(c_neg - c.T) > tol * scale:
                raise ValueError(f"cplus(-w) != cplus(w)^T at w = {nu}")
            if self.diagonal and max_entry(c - np.diag(np.diag(c))) > tol * scale:
                raise ValueError(f"cplus({nu}) declared diagonal but is not")

    def cplus(self, omega: float) -> np.ndarray:
        return np.asarray(self._rule(float(omega)), dtype=complex)

    def chi_weight(self, nu):
        nu_arr = np.atleast_1d(np.asarray(nu, dtype=float))
        out = np.array([v * v * np.trace(self.cplus(v)).real for v in nu_arr])
        return out.reshape(np.shape(nu))

    def noise_weight(self, nu):
        nu_arr = np.atleast_1d(np.asarray(nu, dtype=float))
        hbar = self.context.hbar
        rows = []
        for v in nu_arr:
            diag = np.real(np.diag(self.cplus(v))) * v * v + hbar * v / 4.0
            rows.append(diag)
        out = np.array(rows)
        return out.reshape(np.shape(nu) + (2,))
