"""Berry phases of the subsystem bands and their spin-1/2 picture.

The numerical phase uses the gauge-invariant overlap product

    gamma = -arg prod_j <psi_j | psi_{j+1}>,   psi_N == psi_0,

over instantaneous eigenvectors sampled uniformly on one period. A direct
integral of i<psi|d psi/dt> in an explicit smooth gauge is kept as a second,
independent route.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .algebra import SQRT2, su2_realization
from .dynamics import (
    DOUBLET_SLOTS, HamiltonianSpec, _require_nondegenerate, band_order, block_diagonalize,
    build_H, numeric_eigenstates, o_matrix, periods, subsystem_block, subsystem_part,
)
from .errors import NotConverged
from .tensor import distance, eig_hermitian, expm
from .yangbaxter import weights

BANDS = ("+", "0", "-")
CONVERGENCE_TOL = 1e-4
MIN_STEPS = 16


def wrap_phase(phi: float) -> float:
    """Reduce an angle into (-pi, pi]."""
    r = float(np.mod(phi + np.pi, 2 * np.pi) - np.pi)
    return np.pi if r == -np.pi else r


def phase_difference(a: float, b: float) -> float:
    """Distance between two phases on the circle."""
    return abs(wrap_phase(a - b))


def _check_band(band: str) -> str:
    if band not in BANDS:
        raise ValueError(f"band must be one of {BANDS}, got {band!r}")
    return band


def berry_analytic(theta: float, band: str, orientation: int = 1) -> float:
    """gamma_+- = -+2pi(1/2 - (sqrt2/3) sin theta), gamma_0 = 0, wrapped to (-pi, pi].

    ``orientation`` is the sign of the loop frequency omega(k); reversing the
    loop flips the sign of both nonzero phases.
    """
    _check_band(band)
    if band == "0":
        return 0.0
    g = -2 * np.pi * (0.5 - SQRT2 / 3 * np.sin(theta))
    if band == "-":
        g = -g
    return wrap_phase(orientation * g)


def alpha_beta(theta: float, omega_t: float) -> tuple[float, float]:
    """Bloch-sphere angles of the subsystem-1 spin-1/2 field.

    cos(alpha) = (2 sqrt2/3) sin(theta), and beta is fixed by
    exp(-i beta) = -i b* exp(i Omega t) / |b|, whose real part reproduces
    cos(beta) = (-sin(theta) cos(Omega t) + 3 cos(theta) sin(Omega t)) / sqrt(9 - 8 sin^2 theta).
    """
    alpha = float(np.arccos(2 * SQRT2 / 3 * np.sin(theta)))
    b = weights(theta).b
    beta = float(np.mod(-np.angle(-1j * np.conj(b) * np.exp(1j * omega_t)), 2 * np.pi))
    return alpha, beta


def half_spin_hamiltonian(s: HamiltonianSpec, t: float) -> np.ndarray:
    """C(1)(sin a cos b S1 + sin a sin b S2 + cos a S3) on the full 9-dim space."""
    alpha, beta = alpha_beta(s.theta, s.Omega * t)
    r = su2_realization(1)
    n = (np.sin(alpha) * np.cos(beta), np.sin(alpha) * np.sin(beta), np.cos(alpha))
    return s.C(1) * (n[0] * r.s1 + n[1] * r.s2 + n[2] * r.s3)


def alpha_beta_residual(s: HamiltonianSpec, t: float) -> float:
    return distance(half_spin_hamiltonian(s, t), subsystem_part(build_H(s, t), 1))


def solid_angle(alpha: float) -> float:
    """2 pi (1 - cos alpha)."""
    return float(2 * np.pi * (1 - np.cos(alpha)))


@dataclass(frozen=True)
class LoopSpec:
    spec: HamiltonianSpec
    k: int
    band: str
    steps: int = 2048

    def __post_init__(self):
        _check_band(self.band)
        if self.steps < MIN_STEPS:
            raise ValueError(f"need at least {MIN_STEPS} steps, got {self.steps}")

    @property
    def period(self) -> float:
        return periods(self.spec)[self.k - 1]

    def with_steps(self, n: int) -> "LoopSpec":
        return LoopSpec(self.spec, self.k, self.band, n)


@dataclass(frozen=True)
class BerryResult:
    subsystem: int
    band: str
    theta: float
    omega1: float
    omega2: float
    steps: int
    numeric_phase: float
    analytic_phase: float
    richardson_estimate: float

    @property
    def error(self) -> float:
        return phase_difference(self.numeric_phase, self.analytic_phase)

    @property
    def converged(self) -> bool:
        return self.richardson_estimate <= CONVERGENCE_TOL

    def as_record(self) -> dict:
        rec = asdict(self)
        rec["error"] = self.error
        return rec


def loop_states(loop: LoopSpec) -> np.ndarray:
    """Instantaneous band eigenvectors of block k at t_j = j T / N, shape (N, 3).

    The spectrum does not depend on t and is nondegenerate, so the band is
    tracked by its position in the ascending eigenvalue list.
    """
    return _sample(loop, loop.steps)


def _sample(loop: LoopSpec, n: int) -> np.ndarray:
    s = loop.spec
    _require_nondegenerate(s.theta)
    idx = band_order(s, loop.k)[loop.band]
    T = loop.period
    out = np.empty((n, 3), dtype=np.complex128)
    for j in range(n):
        blk = subsystem_block(build_H(s, j * T / n), loop.k)
        out[j] = eig_hermitian(blk.h).vector(idx)
    return out


def overlap_phase(states: np.ndarray) -> float:
    """-arg prod <psi_j|psi_{j+1}> around a closed loop (psi_N = psi_0)."""
    nxt = np.roll(states, -1, axis=0)
    overlaps = np.einsum("ij,ij->i", states.conj(), nxt)
    # product of unit phases avoids underflow of the raw moduli
    return wrap_phase(-np.sum(np.angle(overlaps)))


def discrete_berry_phase(loop: LoopSpec) -> float:
    """Overlap-product phase at exactly ``loop.steps`` points, no convergence control."""
    return overlap_phase(loop_states(loop))


def berry_numeric(loop: LoopSpec, max_steps: int | None = None) -> BerryResult:
    """Discrete Berry phase of one band of one subsystem.

    The error estimate is |gamma_N - gamma_{N/2}| / 3, the Richardson
    correction for an O(N^-2) scheme. When it exceeds 1e-4 the step count is
    doubled until ``max_steps`` (default: the requested N) is reached.

    Raises
    ------
    DegenerateSpectrum
        If sin(theta) vanishes.
    NotConverged
        If the error estimate is still above 1e-4 at ``max_steps``.
    """
    s = loop.spec
    _require_nondegenerate(s.theta)
    limit = loop.steps if max_steps is None else max(max_steps, loop.steps)
    orientation = int(np.sign(s.omega(loop.k)))
    analytic = berry_analytic(s.theta, loop.band, orientation)
    while True:
        full = discrete_berry_phase(loop)
        half = overlap_phase(_sample(loop, loop.steps // 2))
        est = phase_difference(full, half) / 3
        if est <= CONVERGENCE_TOL or loop.steps * 2 > limit:
            break
        loop = loop.with_steps(loop.steps * 2)
    if est > CONVERGENCE_TOL:
        raise NotConverged(f"error estimate {est:.2e} at N={loop.steps}")
    return BerryResult(
        subsystem=loop.k, band=loop.band, theta=s.theta, omega1=s.omega1, omega2=s.omega2,
        steps=loop.steps, numeric_phase=full, analytic_phase=analytic, richardson_estimate=est,
    )


def gauge_fix(v: np.ndarray) -> np.ndarray:
    """Rotate v so its largest-modulus component is real and positive."""
    i = int(np.argmax(np.abs(v)))
    return v * np.exp(-1j * np.angle(v[i]))


def berry_integral(loop: LoopSpec) -> float:
    """i * integral <psi|d psi/dt> dt in the largest-component gauge.

    Derivatives are periodic central differences, the integral is the
    periodic trapezoid rule.
    """
    states = np.array([gauge_fix(v) for v in loop_states(loop)])
    dt = loop.period / loop.steps
    deriv = (np.roll(states, -1, axis=0) - np.roll(states, 1, axis=0)) / (2 * dt)
    integrand = np.real(1j * np.einsum("ij,ij->i", states.conj(), deriv))
    return wrap_phase(np.sum(integrand) * dt)


# --- spin coherent states ----------------------------------------------------

def new_basis_doublet() -> tuple[np.ndarray, np.ndarray]:
    """|1> = O (|10>+|01>)/sqrt2 and |2> = O|-1-1>, in new-basis coordinates."""
    e = np.eye(9, dtype=np.complex128)
    i, j = DOUBLET_SLOTS[1]
    return e[i], e[j]


def coherent_state(s: HamiltonianSpec, t: float, band: str, convention: str = "consistent") -> np.ndarray:
    """exp[zeta S+ - zeta* S-] applied to |2> (band +) or |1> (band -), in lex order.

    The operators are O S^(1) O^T, the doublet ladder on the new basis. With
    ``convention="printed"`` zeta = exp(-i beta) alpha / 2. That choice yields
    exp(-i beta) sin(a/2)|1> + cos(a/2)|2>, which is not an eigenstate of H;
    ``convention="consistent"`` flips the sign of zeta and reproduces the
    explicit states -exp(-i beta) sin(a/2)|1> + cos(a/2)|2> and
    cos(a/2)|1> + exp(i beta) sin(a/2)|2>.
    """
    _require_nondegenerate(s.theta)
    if band not in ("+", "-"):
        raise ValueError("coherent states exist for bands '+' and '-' only")
    alpha, beta = alpha_beta(s.theta, s.Omega * t)
    zeta = np.exp(-1j * beta) * alpha / 2
    if convention == "consistent":
        zeta = -zeta
    elif convention != "printed":
        raise ValueError(f"unknown convention {convention!r}")
    r = su2_realization(1)
    sp, sm = block_diagonalize(r.s_plus), block_diagonalize(r.s_minus)
    gen = zeta * sp - np.conj(zeta) * sm
    one, two = new_basis_doublet()
    v_new = expm(gen) @ (two if band == "+" else one)
    return o_matrix().T @ v_new


def explicit_coherent_state(s: HamiltonianSpec, t: float, band: str) -> np.ndarray:
    """The explicit (alpha, beta) forms of |E^(1)_+-> mapped back to lex order."""
    alpha, beta = alpha_beta(s.theta, s.Omega * t)
    one, two = new_basis_doublet()
    if band == "+":
        v = -np.exp(-1j * beta) * np.sin(alpha / 2) * one + np.cos(alpha / 2) * two
    elif band == "-":
        v = np.cos(alpha / 2) * one + np.exp(1j * beta) * np.sin(alpha / 2) * two
    else:
        raise ValueError("coherent states exist for bands '+' and '-' only")
    return o_matrix().T @ v


def coherent_state_check(s: HamiltonianSpec, t: float, convention: str = "consistent") -> float:
    """max over bands +- of 1 - |<coherent|numeric eigenvector>|."""
    numeric = numeric_eigenstates(s, 1, t)
    return max(1 - abs(np.vdot(coherent_state(s, t, b, convention), numeric[b])) for b in ("+", "-"))


def explicit_state_check(s: HamiltonianSpec, t: float) -> float:
    numeric = numeric_eigenstates(s, 1, t)
    return max(1 - abs(np.vdot(explicit_coherent_state(s, t, b), numeric[b])) for b in ("+", "-"))
