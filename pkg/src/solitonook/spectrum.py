"""Discrete nonlinear Fourier spectrum types, unit normalization, and the
analytic in-spectrum propagation law.

Conventions (frozen for the whole package):

* Eigenvalues live in the open upper half plane, ``lam = omega + 1j*sigma``
  with ``sigma > 0``.
* A spectrum stores one complex amplitude per eigenvalue.  Amplitude phases
  are measured relative to the unit-Darboux-constant reference synthesis of
  the same eigenvalue set (see ``darboux.constants_from_spectrum``), so a
  spectrum whose amplitudes are the reference magnitudes at zero phase maps
  to unit Darboux constants.
* Normalized distance is physical distance divided by ``Z0 = T0^2/|beta2|``.
  Spectral amplitudes evolve as ``exp(EVOLUTION_CONSTANT * 1j * lam^2 * z)``
  per unit of that coordinate; the constant is frozen in ``calibration.py``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

# Planck constant, J*s (CODATA 2018); used for ASE noise densities.
PLANCK_H = 6.62607015e-34

#: A discrete spectral amplitude is a plain complex number.
SpectralAmplitude = complex


@dataclass(frozen=True, order=True)
class Eigenvalue:
    """Point of the discrete spectrum, ``lam = omega + 1j*sigma``.

    ``omega`` sets the soliton frequency/velocity, ``sigma`` its amplitude.
    Ordering is lexicographic (omega, then sigma), which is the canonical
    order used everywhere for serialization and bit mapping.
    """

    omega: float
    sigma: float

    def __post_init__(self):
        if not (self.sigma > 0):
            raise DomainError(f"sigma must be positive, got {self.sigma}")

    @property
    def value(self) -> complex:
        return complex(self.omega, self.sigma)

    @classmethod
    def from_complex(cls, lam: complex) -> "Eigenvalue":
        return cls(float(lam.real), float(lam.imag))


def make_grid(omegas: Iterable[float], sigmas: Iterable[float]) -> list[Eigenvalue]:
    """Cartesian product of frequencies and amplitudes, canonically ordered."""
    sigmas = list(sigmas)
    for s in sigmas:
        if not (s > 0):
            raise DomainError(f"sigma must be positive, got {s}")
    grid = [Eigenvalue(float(w), float(s)) for w in omegas for s in sigmas]
    return sorted(grid)


@dataclass(frozen=True)
class DiscreteSpectrum:
    """Ordered eigenvalue/amplitude pairs; the information-bearing object.

    Entries are stored in canonical (omega, sigma) order regardless of the
    order passed in, so serialization is deterministic.
    """

    eigenvalues: tuple[Eigenvalue, ...]
    amplitudes: tuple[complex, ...]

    def __post_init__(self):
        if len(self.eigenvalues) != len(self.amplitudes):
            raise DomainError("eigenvalue/amplitude length mismatch")
        order = sorted(range(len(self.eigenvalues)), key=lambda i: self.eigenvalues[i])
        object.__setattr__(self, "eigenvalues", tuple(self.eigenvalues[i] for i in order))
        object.__setattr__(self, "amplitudes", tuple(complex(self.amplitudes[i]) for i in order))
        for i in range(len(self.eigenvalues) - 1):
            if self.eigenvalues[i] == self.eigenvalues[i + 1]:
                raise DomainError(f"duplicate eigenvalue {self.eigenvalues[i].value}")
        for ev, amp in zip(self.eigenvalues, self.amplitudes):
            if amp == 0 or not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise DomainError(f"amplitude for {ev.value} must be finite and nonzero")

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def lam(self) -> np.ndarray:
        """Eigenvalues as a complex array in canonical order."""
        return np.array([ev.value for ev in self.eigenvalues], dtype=complex)

    @property
    def amp(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=complex)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Eigenvalue, complex]]) -> "DiscreteSpectrum":
        evs, amps = zip(*pairs) if pairs else ((), ())
        return cls(tuple(evs), tuple(amps))

    @classmethod
    def empty(cls) -> "DiscreteSpectrum":
        return cls((), ())

    def to_json_dict(self) -> dict:
        return {
            "eigenvalues": [[ev.omega, ev.sigma] for ev in self.eigenvalues],
            "amplitudes": [[a.real, a.imag] for a in self.amplitudes],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "DiscreteSpectrum":
        evs = tuple(Eigenvalue(float(w), float(s)) for w, s in obj["eigenvalues"])
        amps = tuple(complex(re, im) for re, im in obj["amplitudes"])
        return cls(evs, amps)


def soliton_energy(spec: DiscreteSpectrum) -> float:
    """Pulse energy carried by the discrete spectrum, ``4 * sum(sigma_i)``."""
    return 4.0 * sum(ev.sigma for ev in spec.eigenvalues)


def propagate_spectrum(spec: DiscreteSpectrum, z: float, constant: float | None = None) -> DiscreteSpectrum:
    """Evolve a spectrum over normalized distance ``z``.

    Eigenvalues are invariant; each amplitude is multiplied by
    ``exp(constant * 1j * lam^2 * z)``.  ``constant`` defaults to the frozen
    calibrated value.  Negative ``z`` back-propagates.
    """
    if constant is None:
        from .calibration import EVOLUTION_CONSTANT

        constant = EVOLUTION_CONSTANT
    amps = tuple(
        a * cmath.exp(constant * 1j * ev.value**2 * z)
        for ev, a in zip(spec.eigenvalues, spec.amplitudes)
    )
    return DiscreteSpectrum(spec.eigenvalues, amps)


@dataclass(frozen=True)
class SampledPulse:
    """Complex envelope on a uniform time grid, all in normalized units."""

    samples: np.ndarray
    t_start: float
    dt: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size < 2:
            raise DomainError("pulse needs a 1-d grid with at least 2 samples")
        if not (self.dt > 0):
            raise DomainError(f"dt must be positive, got {self.dt}")
        if not np.all(np.isfinite(samples.view(float))):
            raise DomainError("pulse samples must be finite")

    def __len__(self) -> int:
        return self.samples.size

    @property
    def t(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.samples.size)

    def energy(self) -> float:
        """Trapezoid-rule energy of |q|^2 over the grid."""
        return float(np.trapezoid(np.abs(self.samples) ** 2, dx=self.dt))

    def shifted(self, tau: float) -> "SampledPulse":
        return SampledPulse(self.samples.copy(), self.t_start + tau, self.dt)


def time_grid(t_start: float, dt: float, count: int) -> np.ndarray:
    return t_start + dt * np.arange(count)


@dataclass(frozen=True)
class NormalizationMap:
    """Bridge between physical units and normalized soliton units.

    ``Z0 = T0^2/|beta2|`` and ``P0 = |beta2|/(gamma*T0^2)`` hold exactly;
    normalized distance is ``z_m / Z0``.
    """

    t0_s: float
    p0_w: float
    z0_m: float
    beta2_s2_per_m: float
    gamma_per_w_per_m: float

    def __post_init__(self):
        if not (self.t0_s > 0 and self.p0_w > 0 and self.z0_m > 0):
            raise DomainError("T0, P0, Z0 must be positive")
        if not (self.beta2_s2_per_m < 0):
            raise DomainError("beta2 must be negative (anomalous dispersion)")
        if not (self.gamma_per_w_per_m > 0):
            raise DomainError("gamma must be positive")
        b2 = abs(self.beta2_s2_per_m)
        if not math.isclose(self.z0_m, self.t0_s**2 / b2, rel_tol=1e-12):
            raise DomainError("Z0 != T0^2/|beta2|")
        if not math.isclose(self.p0_w, b2 / (self.gamma_per_w_per_m * self.t0_s**2), rel_tol=1e-12):
            raise DomainError("P0 != |beta2|/(gamma*T0^2)")

    @classmethod
    def from_fiber(cls, t0_s: float, beta2_ps2_per_km: float, gamma_per_w_per_km: float) -> "NormalizationMap":
        """Build the map from a time scale and fiber parameters in common units."""
        beta2 = beta2_ps2_per_km * 1e-27  # ps^2/km -> s^2/m
        gamma = gamma_per_w_per_km * 1e-3  # 1/(W km) -> 1/(W m)
        if not (t0_s > 0):
            raise DomainError(f"T0 must be positive, got {t0_s}")
        if beta2 >= 0:
            raise DomainError("beta2 must be negative (anomalous dispersion)")
        z0 = t0_s**2 / abs(beta2)
        p0 = abs(beta2) / (gamma * t0_s**2)
        return cls(t0_s, p0, z0, beta2, gamma)

    def z_norm(self, z_m: float) -> float:
        return z_m / self.z0_m

    def z_m(self, z_norm: float) -> float:
        return z_norm * self.z0_m


def normalize(samples: Sequence[complex] | np.ndarray, dt_s: float, nmap: NormalizationMap,
              t_start_s: float = 0.0) -> SampledPulse:
    """Physical field (sqrt-W) on a grid in seconds -> normalized pulse."""
    q = np.asarray(samples, dtype=complex) / math.sqrt(nmap.p0_w)
    return SampledPulse(q, t_start_s / nmap.t0_s, dt_s / nmap.t0_s)


def denormalize(pulse: SampledPulse, nmap: NormalizationMap) -> tuple[np.ndarray, float, float]:
    """Normalized pulse -> (physical field in sqrt-W, dt in s, t_start in s)."""
    a = pulse.samples * math.sqrt(nmap.p0_w)
    return a, pulse.dt * nmap.t0_s, pulse.t_start * nmap.t0_s


# --- file I/O ---------------------------------------------------------------

def save_spectrum(spec: DiscreteSpectrum, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spec.to_json_dict(), sort_keys=True))


def load_spectrum(path: str | Path) -> DiscreteSpectrum:
    return DiscreteSpectrum.from_json_dict(json.loads(Path(path).read_text()))


def save_pulse(pulse: SampledPulse, path_base: str | Path) -> tuple[Path, Path]:
    """Write ``<base>.bin`` (little-endian float64 re,im pairs) + ``<base>.json``.

    The pair round-trips bit exactly.
    """
    base = Path(path_base)
    bin_path = base.with_suffix(".bin")
    meta_path = base.with_suffix(".json")
    flat = np.empty(2 * len(pulse), dtype="<f8")
    flat[0::2] = pulse.samples.real
    flat[1::2] = pulse.samples.imag
    flat.tofile(bin_path)
    meta_path.write_text(json.dumps(
        {"t_start": pulse.t_start, "dt": pulse.dt, "count": len(pulse)}, sort_keys=True))
    return bin_path, meta_path


def load_pulse(path_base: str | Path) -> SampledPulse:
    base = Path(path_base)
    meta = json.loads(base.with_suffix(".json").read_text())
    flat = np.fromfile(base.with_suffix(".bin"), dtype="<f8")
    if flat.size != 2 * meta["count"]:
        raise DomainError(f"pulse file {base}: expected {2 * meta['count']} floats, found {flat.size}")
    samples = flat[0::2] + 1j * flat[1::2]
    return SampledPulse(samples, meta["t_start"], meta["dt"])
