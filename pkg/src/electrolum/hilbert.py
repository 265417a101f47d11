"""Composite Hilbert space {|s>, |g>, |e>} x Fock(n_max) and bare operators.

Conventions, used everywhere in the package:

* hbar = 1 and omega_c = 1: every energy, frequency, and rate is a
  dimensionless multiple of the cavity frequency.
* Electronic labels: ``s`` empty site, ``g`` electron in the lower
  orbital, ``e`` electron in the upper orbital.  Double occupancy is
  excluded (Coulomb blockade), so one label is the whole electronic
  space.
* Flat basis index = electronic_index * (n_max + 1) + n with the
  electronic order (s, g, e).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ELECTRONIC_LABELS = ("s", "g", "e")


@dataclass(frozen=True)
class ModelSpace:
    """Basis bookkeeping for the truncated photon ladder over three electronic states."""

    n_max: int

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(
                "n_max must be at least 1: the satellite emission channels "
                "involve the one-photon states"
            )

    @property
    def n_photon(self) -> int:
        return self.n_max + 1

    @property
    def dim(self) -> int:
        return 3 * (self.n_max + 1)

    def index(self, label: str, n: int) -> int:
        """Flat basis index of |label, n>."""
        if label not in ELECTRONIC_LABELS:
            raise ValueError(f"unknown electronic label {label!r}")
        if not 0 <= n <= self.n_max:
            raise ValueError(f"photon number {n} outside [0, {self.n_max}]")
        return ELECTRONIC_LABELS.index(label) * self.n_photon + n

    def unindex(self, k: int):
        """Inverse of :meth:`index`: flat index -> (label, n)."""
        if not 0 <= k < self.dim:
            raise ValueError(f"flat index {k} outside [0, {self.dim})")
        return ELECTRONIC_LABELS[k // self.n_photon], k % self.n_photon

    def basis_state(self, label: str, n: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[self.index(label, n)] = 1.0
        return v


def build_space(n_max: int) -> ModelSpace:
    return ModelSpace(n_max=n_max)


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of the open system, in units of the cavity frequency.

    ``mu`` is the chemical potential of the injecting reservoir and may be
    negative (the dressed ground-state energy is negative at finite
    coupling); everything else is a frequency or a rate and must be >= 0.
    """

    rabi: float  # light-matter coupling Omega_R
    omega_c: float = 1.0  # cavity frequency (the unit)
    omega_e: float = 1.0  # g -> e transition frequency
    omega_s: float = 0.0  # s -> g offset; cancels from every gated rate
    gamma_in: float = 0.5e-6  # bare electron injection rate
    gamma_out: float = 0.5e-6  # bare electron extraction rate
    gamma_cav: float = 7e-4  # bare cavity decay rate
    mu: float = 0.0  # injecting-reservoir chemical potential

    def __post_init__(self):
        for name in ("rabi", "omega_c", "omega_e", "omega_s",
                     "gamma_in", "gamma_out", "gamma_cav"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
        if not np.isfinite(self.mu):
            raise ValueError(f"mu must be finite, got {self.mu}")

    @property
    def eta(self) -> float:
        """Normalised coupling rabi / omega_c."""
        return self.rabi / self.omega_c

    @property
    def is_resonant(self) -> bool:
        return abs(self.omega_e - self.omega_c) <= 1e-12 * max(self.omega_c, 1.0)

    @classmethod
    def from_eta(cls, eta: float, **kwargs) -> "SystemParams":
        """Resonant parameter set with coupling given as eta = Omega_R / omega_c."""
        omega_c = kwargs.pop("omega_c", 1.0)
        return cls(rabi=eta * omega_c, omega_c=omega_c, **kwargs)


def annihilation(space: ModelSpace) -> np.ndarray:
    """Photon annihilation a (identity on the electronic label)."""
    ladder = np.diag(np.sqrt(np.arange(1, space.n_photon, dtype=float)), k=1)
    return np.kron(np.eye(3), ladder).astype(complex)


def transition(space: ModelSpace, from_label: str, to_label: str) -> np.ndarray:
    """Electronic transition |to><from| tensored with the photon identity."""
    for label in (from_label, to_label):
        if label not in ELECTRONIC_LABELS:
            raise ValueError(f"unknown electronic label {label!r}")
    el = np.zeros((3, 3), dtype=complex)
    el[ELECTRONIC_LABELS.index(to_label), ELECTRONIC_LABELS.index(from_label)] = 1.0
    return np.kron(el, np.eye(space.n_photon, dtype=complex))


def number_electron(space: ModelSpace) -> np.ndarray:
    """Electron number: 0 on |s,n>, 1 on |g,n> and |e,n>."""
    return transition(space, "g", "g") + transition(space, "e", "e")


def number_photon(space: ModelSpace) -> np.ndarray:
    """Photon number a^dagger a."""
    a = annihilation(space)
    return a.conj().T @ a


def parity(space: ModelSpace) -> np.ndarray:
    """Excitation parity exp(i pi (a^dagger a + |e><e|)), diagonal in the bare basis.

    Conserved by the coupled Hamiltonian; used to resolve dressed-level
    ties and to explain which quadrature matrix elements vanish.
    """
    diag = np.empty(space.dim)
    for k in range(space.dim):
        label, n = space.unindex(k)
        diag[k] = (-1.0) ** (n + (1 if label == "e" else 0))
    return np.diag(diag).astype(complex)
