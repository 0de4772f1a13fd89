"""Jones-calculus simulation of the preparation and tomography optics.

Conventions (fixed so that the reported amplitudes of the polarization setup
are reproduced digit for digit):

* basis ``(H, V)``; the transverse-mode setup uses ``(h, v)`` with identical
  matrices (cylindrical-lens converter = QWP, Dove prism = HWP);
* the QWP matrix carries no global ``exp(-i*pi/4)`` prefactor;
* ``|R> = (|H> + i|V>)/sqrt(2)``, ``|D> = (|H> + |V>)/sqrt(2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NonNormalized, OutOfRange, UnknownLabel
from .geometry import LABELS, PrepVector

NORM_TOL = 1e-12
DRIFT_TOL = 1e-10


@dataclass(frozen=True)
class JonesState:
    """Normalised amplitudes on the horizontal/vertical basis."""

    a_h: complex
    a_v: complex

    @classmethod
    def from_array(cls, arr) -> "JonesState":
        return cls(complex(arr[0]), complex(arr[1]))

    @property
    def array(self) -> np.ndarray:
        return np.array([self.a_h, self.a_v], dtype=complex)

    def norm_sq(self) -> float:
        return abs(self.a_h) ** 2 + abs(self.a_v) ** 2


H = JonesState(1 + 0j, 0j)
V = JonesState(0j, 1 + 0j)


@dataclass(frozen=True)
class SixProbs:
    p_h: float
    p_v: float
    p_d: float
    p_a: float
    p_r: float
    p_l: float

    @property
    def stokes(self) -> PrepVector:
        """Disk coordinates ``(pD - pA, pR - pL)``."""
        return PrepVector(self.p_d - self.p_a, self.p_r - self.p_l)

    @property
    def s_z(self) -> float:
        """``pH - pV``; carried as a sanity check only."""
        return self.p_h - self.p_v

    def as_dict(self) -> dict[str, float]:
        return {"pH": self.p_h, "pV": self.p_v, "pD": self.p_d,
                "pA": self.p_a, "pR": self.p_r, "pL": self.p_l}


def qwp(theta: float) -> np.ndarray:
    """Quarter-wave plate with fast axis at ``theta`` from horizontal."""
    c, s = math.cos(theta), math.sin(theta)
    off = (1 - 1j) * s * c
    return np.array([[c * c + 1j * s * s, off],
                     [off, s * s + 1j * c * c]], dtype=complex)


def hwp(alpha: float) -> np.ndarray:
    """Half-wave plate with fast axis at ``alpha`` from horizontal."""
    c2, s2 = math.cos(2 * alpha), math.sin(2 * alpha)
    return np.array([[c2, s2], [s2, -c2]], dtype=complex)


# the transverse-mode elements share the wave-plate matrices
cylindrical_converter = qwp
dove_prism = hwp


def apply(circuit: Sequence[np.ndarray], state: JonesState) -> JonesState:
    """Send ``state`` through ``circuit`` (first element acts first)."""
    vec = state.array
    for m in circuit:
        vec = m @ vec
    n = float(np.vdot(vec, vec).real)
    if abs(n - 1.0) > DRIFT_TOL:
        raise NonNormalized(f"circuit is not lossless: |psi|^2 = {n:.12g}")
    vec = vec / math.sqrt(n)
    return JonesState.from_array(vec)


def tomography(state: JonesState) -> SixProbs:
    """Six-projector tomography of a normalised state."""
    h, v = state.a_h, state.a_v
    n = abs(h) ** 2 + abs(v) ** 2
    if abs(n - 1.0) > 1e-9:
        raise NonNormalized(f"state norm^2 = {n:.12g}")
    p_h = abs(h) ** 2
    p_v = abs(v) ** 2
    p_d = abs(h + v) ** 2 / 2
    p_a = abs(h - v) ** 2 / 2
    p_r = abs(h - 1j * v) ** 2 / 2
    p_l = abs(h + 1j * v) ** 2 / 2
    return SixProbs(p_h, p_v, p_d, p_a, p_r, p_l)


# (qwp angle, hwp angle) per label.  The two middle settings are listed in the
# experiment as (pi/8, -pi/16) for P01 and (-pi/8, pi/16) for P10; with the
# conventions above those land on (-,+) and (+,-) respectively, so they are
# assigned here by the Bloch quadrant they actually reach.
ANGLE_TABLE: dict[str, tuple[float, float]] = {
    "00": (math.pi / 8, 3 * math.pi / 16),
    "01": (-math.pi / 8, math.pi / 16),
    "10": (math.pi / 8, -math.pi / 16),
    "11": (-math.pi / 8, 5 * math.pi / 16),
}

#: order in which the middle two settings are listed by the experiment
LISTED_ANGLE_TABLE: dict[str, tuple[float, float]] = {
    "00": (math.pi / 8, 3 * math.pi / 16),
    "01": (math.pi / 8, -math.pi / 16),
    "10": (-math.pi / 8, math.pi / 16),
    "11": (-math.pi / 8, 5 * math.pi / 16),
}


def preparation_circuit(theta: float, alpha: float) -> list[np.ndarray]:
    return [qwp(theta), hwp(alpha)]


def prepare(label: str, angles: dict[str, tuple[float, float]] | None = None) -> JonesState:
    """Prepare the state for ``label`` from horizontal light via QWP then HWP."""
    table = ANGLE_TABLE if angles is None else angles
    if label not in table:
        raise UnknownLabel(f"unknown preparation label {label!r}; expected one of {', '.join(LABELS)}")
    theta, alpha = table[label]
    return apply(preparation_circuit(theta, alpha), H)


def prepared_vector(label: str) -> PrepVector:
    return tomography(prepare(label)).stokes


def depolarize(v: PrepVector, a: float) -> PrepVector:
    """Bloch-disk image of ``(1-a)*rho + a*I/2``."""
    if not 0 <= a <= 1:
        raise OutOfRange(f"mixing weight a={a} outside [0, 1]")
    return PrepVector((1 - a) * v.x, (1 - a) * v.y)


def beta_to_a(beta: float) -> float:
    """Fraction of intensity routed to the maximally mixed arm by a HWP at ``beta``."""
    return math.sin(2 * beta) ** 2


def beta_sweep(steps: int, beta_step_deg: float, include_zero: bool = False) -> list[float]:
    """Mixing weights for a HWP rotated in equal steps (degrees)."""
    start = 0 if include_zero else 1
    return [beta_to_a(math.radians(k * beta_step_deg)) for k in range(start, steps + 1)]


def is_unitary(m: np.ndarray, tol: float = NORM_TOL) -> bool:
    return bool(np.allclose(m.conj().T @ m, np.eye(2), atol=tol, rtol=0))


def simulate(label: str, theta: float | None = None, alpha: float | None = None,
             depol: float = 0.0) -> tuple[SixProbs, PrepVector]:
    """Tomography of one preparation, optionally with custom angles and depolarization."""
    if label not in ANGLE_TABLE:
        raise UnknownLabel(f"unknown preparation label {label!r}")
    t0, a0 = ANGLE_TABLE[label]
    theta = t0 if theta is None else theta
    alpha = a0 if alpha is None else alpha
    state = apply(preparation_circuit(theta, alpha), H)
    probs = tomography(state)
    if depol:
        probs = depolarize_probs(probs, depol)
    return probs, probs.stokes


def depolarize_probs(probs: SixProbs, a: float) -> SixProbs:
    """Each outcome probability mixed with 1/2 at weight ``a``."""
    if not 0 <= a <= 1:
        raise OutOfRange(f"mixing weight a={a} outside [0, 1]")

    def mix(p: float) -> float:
        return (1 - a) * p + a / 2

    return SixProbs(*(mix(p) for p in (probs.p_h, probs.p_v, probs.p_d,
                                       probs.p_a, probs.p_r, probs.p_l)))


def random_states(n: int, rng: np.random.Generator) -> Iterable[JonesState]:
    """Haar-random pure states (complex Gaussian, normalised)."""
    z = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    for row in z:
        yield JonesState.from_array(row)
