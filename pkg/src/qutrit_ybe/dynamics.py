"""Yang-Baxter Hamiltonian H = i hbar (dR/dt) R^dagger with phi_i = omega_i t.

H splits into three 3x3 subsystem blocks. Everything derived from the
analytic H built here is treated as ground truth; the published operator
expansions, B-component lists and eigenstate formulas are evaluated
alongside and compared, producing :class:`Discrepancy` records rather than
exceptions when they disagree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import algebra
from .algebra import (
    SQRT2, HeckeParams, build_M_dot, check_subsystem, ket, su2_realization,
    su3_realization, subsystem_indices, subsystem_projector,
)
from .errors import BlockLeakage, DegenerateSpectrum, ZeroFrequency
from .tensor import DEFAULT_TOL, dagger, distance, eig_hermitian, hermiticity_residual
from .yangbaxter import RParams, build_R, weights

DEGENERACY_THRESHOLD = 1e-8
BAND_INDEX = {"-": 0, "0": 1, "+": 2}


@dataclass(frozen=True)
class HamiltonianSpec:
    theta: float
    omega1: float
    omega2: float
    hbar: float = 1.0

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar!r}")

    @property
    def Omega(self) -> float:
        return self.omega1 + self.omega2

    def omega(self, k: int) -> float:
        """Loop frequency of subsystem k: Omega, omega1, omega2 for k = 1, 2, 3."""
        return {1: self.Omega, 2: self.omega1, 3: self.omega2}[check_subsystem(k)]

    def r_params(self, t: float) -> RParams:
        return RParams(self.theta, self.omega1 * t, self.omega2 * t)

    def C(self, k: int) -> float:
        """Prefactor C(k) = -(4 sqrt2/3) hbar omega(k) sin(theta)."""
        return -4 * SQRT2 / 3 * self.hbar * self.omega(k) * np.sin(self.theta)


@dataclass
class Discrepancy:
    """Outcome of comparing a published closed form with the computed value."""

    name: str
    residual: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    @property
    def matches(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def as_record(self) -> dict:
        return {"name": self.name, "residual": float(self.residual),
                "tolerance": self.tolerance, "matches": self.matches, **self.detail}


def _require_nondegenerate(theta: float) -> None:
    if abs(np.sin(theta)) <= DEGENERACY_THRESHOLD:
        raise DegenerateSpectrum(f"|sin(theta)| <= {DEGENERACY_THRESHOLD:g} at theta={theta!r}")


# --- the Hamiltonian --------------------------------------------------------

def build_H(s: HamiltonianSpec, t: float) -> np.ndarray:
    """Analytic H(t); only M depends on t, so dR/dt = (a/3) dM/dt."""
    p = s.r_params(t)
    a = weights(s.theta).a
    r_dot = a / 3 * build_M_dot(HeckeParams(p.phi1, p.phi2), s.omega1, s.omega2)
    return 1j * s.hbar * r_dot @ dagger(build_R(p))


def build_H_fd(s: HamiltonianSpec, t: float, dt: float) -> np.ndarray:
    """Central-difference H; an oracle independent of :func:`build_H`."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    r_dot = (build_R(s.r_params(t + dt)) - build_R(s.r_params(t - dt))) / (2 * dt)
    return 1j * s.hbar * r_dot @ dagger(build_R(s.r_params(t)))


def block_leakage(H: np.ndarray) -> float:
    """Norm of everything in H that couples different subsystems."""
    inside = sum(subsystem_projector(k) @ H @ subsystem_projector(k) for k in (1, 2, 3))
    return distance(H, inside)


@dataclass(frozen=True)
class SubsystemBlock:
    k: int
    basis: tuple[int, ...]
    h: np.ndarray
    leakage: float


def subsystem_block(H: np.ndarray, k: int, tol: float = DEFAULT_TOL) -> SubsystemBlock:
    """3x3 restriction of H to subsystem k's kets (in eigenstate-display order).

    Raises
    ------
    BlockLeakage
        If H couples subsystem k to the rest by more than ``tol``.
    """
    idx = subsystem_indices(k)
    p = subsystem_projector(k)
    leak = distance(p @ H @ (np.eye(9) - p), 0) + distance((np.eye(9) - p) @ H @ p, 0)
    if leak > tol * max(1.0, float(np.linalg.norm(H))):
        raise BlockLeakage(f"subsystem {k} leaks {leak:.3e} into the rest of H")
    return SubsystemBlock(k=k, basis=tuple(idx), h=H[np.ix_(idx, idx)].copy(), leakage=leak)


def subsystem_part(H: np.ndarray, k: int) -> np.ndarray:
    p = subsystem_projector(k)
    return p @ H @ p


def closed_form_spectrum(s: HamiltonianSpec, k: int) -> tuple[float, float, float]:
    """Block-k eigenvalues {0, +-(2 sqrt2/3) hbar omega(k) sin(theta)}, ascending."""
    e = abs(2 * SQRT2 / 3 * s.hbar * s.omega(k) * np.sin(s.theta))
    return (-e, 0.0, e)


def numeric_spectrum(s: HamiltonianSpec, k: int, t: float) -> np.ndarray:
    return eig_hermitian(subsystem_block(build_H(s, t), k).h).values


def periods(s: HamiltonianSpec) -> tuple[float, float, float]:
    """(2pi/|Omega|, 2pi/|omega1|, 2pi/|omega2|); always positive."""
    w = (s.Omega, s.omega1, s.omega2)
    if any(v == 0 for v in w):
        raise ZeroFrequency(f"all of Omega, omega1, omega2 must be nonzero; got {w}")
    return tuple(2 * np.pi / abs(v) for v in w)


# --- published eigenstates ----------------------------------------------------

def closed_form_eigenstates(s: HamiltonianSpec, k: int, t: float) -> dict[str, np.ndarray]:
    """The printed |E^(k)_{+,0,-}> evaluated as 9-vectors in lex order."""
    check_subsystem(k)
    _require_nondegenerate(s.theta)
    sn = np.sin(s.theta)
    b = weights(s.theta).b
    phase = np.exp(-1j * s.omega(k) * t)
    states = {}
    if k == 1:
        sym = ket(1, 0) + ket(0, 1)
        for band, sign in (("+", 1), ("-", -1)):
            n = np.sqrt((3 + sign * 2 * SQRT2 * sn) / 6)
            f = (4 * sn - sign * 3 * SQRT2) / (2j * b)
            states[band] = n * (f * sym + phase * ket(-1, -1))
        states["0"] = (-ket(1, 0) + ket(0, 1)) / SQRT2
        return states
    single, pair = {2: (ket(1, 1), (ket(0, -1), ket(-1, 0))),
                    3: (ket(0, 0), (ket(1, -1), ket(-1, 1)))}[k]
    for band, sign in (("+", 1), ("-", -1)):
        n = np.sqrt((3 + sign * 2 * SQRT2 * sn) / 12)
        f = (4 * sn - sign * 3 * SQRT2) / (1j * np.conj(b))
        states[band] = n * (f * single + phase * (pair[0] + pair[1]))
    states["0"] = (-pair[0] + pair[1]) / SQRT2
    return states


def band_order(s: HamiltonianSpec, k: int) -> dict[str, int]:
    """Position of each band in the ascending block spectrum.

    Band "+" is the level with energy +(2 sqrt2/3) hbar omega(k) sin(theta),
    which is the lowest one when omega(k) sin(theta) < 0.
    """
    if s.omega(k) * np.sin(s.theta) < 0:
        return {"+": 0, "0": 1, "-": 2}
    return dict(BAND_INDEX)


def numeric_eigenstates(s: HamiltonianSpec, k: int, t: float) -> dict[str, np.ndarray]:
    """Eigenvectors of block k, embedded back into 9 dims, keyed by band."""
    blk = subsystem_block(build_H(s, t), k)
    es = eig_hermitian(blk.h)
    out = {}
    for band, i in band_order(s, k).items():
        v = np.zeros(9, dtype=np.complex128)
        v[list(blk.basis)] = es.vector(i)
        out[band] = v
    return out


def eigenstate_report(s: HamiltonianSpec, k: int, t: float, tol: float = 1e-8) -> list[Discrepancy]:
    """Compare each printed eigenstate with H: norm, eigen-equation, overlap."""
    H = build_H(s, t)
    lo, _, hi = closed_form_spectrum(s, k)
    energy = {"+": hi, "0": 0.0, "-": lo}
    if s.omega(k) * np.sin(s.theta) < 0:
        energy = {"+": lo, "0": 0.0, "-": hi}
    numeric = numeric_eigenstates(s, k, t)
    out = []
    for band, v in closed_form_eigenstates(s, k, t).items():
        nrm = float(np.linalg.norm(v))
        overlap = abs(np.vdot(numeric[band], v / nrm))
        eig_res = float(np.linalg.norm(H @ v - energy[band] * v))
        out.append(Discrepancy(
            name=f"eigenstate k={k} band={band}",
            residual=max(abs(1 - overlap), abs(1 - nrm), eig_res),
            tolerance=tol,
            detail={"overlap": float(overlap), "norm": nrm, "eigen_residual": eig_res},
        ))
    return out


# --- B-vector decomposition ------------------------------------------------

def b_vector(s: HamiltonianSpec, k: int, t: float) -> np.ndarray:
    """B_lambda^(k) extracted from H by trace projection.

    ``tr(I_a^(k) I_b^(k)) = delta_ab / 2``, hence
    ``B_lambda = 2 tr(H I_lambda^(k)) / C(k)``.
    """
    _require_nondegenerate(s.theta)
    H = build_H(s, t)
    gens = su3_realization(k).generators()
    c = s.C(k)
    return np.array([np.real(2 * np.trace(H @ g)) / c for g in gens])


def printed_b_vector(s: HamiltonianSpec, k: int, t: float) -> np.ndarray:
    """The published B-component lists, taken verbatim."""
    check_subsystem(k)
    sn, cs = np.sin(s.theta), np.cos(s.theta)
    wt = s.omega(k) * t
    r2 = SQRT2
    if k == 1:
        b4 = -r2 / 6 * sn * np.cos(wt) + r2 / 2 * cs * np.sin(wt)
        b5 = r2 / 6 * sn * np.sin(wt) + r2 / 2 * cs * np.cos(wt)
        return np.array([r2 / 3 * sn, 0, 0, b4, b5, b4, b5, r2 / 2 * sn])
    b4 = r2 / 6 * sn * np.cos(wt) + r2 / 2 * cs * np.sin(wt)
    b5 = r2 / 6 * sn * np.sin(wt) - r2 / 2 * cs * np.cos(wt)
    return np.array([-r2 / 3 * sn, 0, 0, b4, b5, b4, b5, -r2 / 2 * sn])


def reconstruct_from_b(s: HamiltonianSpec, k: int, b: np.ndarray) -> np.ndarray:
    gens = su3_realization(k).generators()
    return s.C(k) * sum(bl * g for bl, g in zip(b, gens))


def b_vector_report(s: HamiltonianSpec, k: int, t: float, tol: float = 1e-10) -> list[Discrepancy]:
    extracted = b_vector(s, k, t)
    printed = printed_b_vector(s, k, t)
    return [
        Discrepancy(
            name=f"B_{lam + 1}^({k})",
            residual=abs(extracted[lam] - printed[lam]),
            tolerance=tol,
            detail={"printed": float(printed[lam]), "extracted": float(extracted[lam])},
        )
        for lam in range(8)
    ]


# --- SU(2) and SU(3) operator forms -----------------------------------------

def su2_coefficients(s: HamiltonianSpec, k: int, t: float) -> tuple[complex, float]:
    """(B_-^(k), B_3^(k)) of the SU(2) form; B_+ is the conjugate of B_-."""
    check_subsystem(k)
    b = weights(s.theta).b
    sn = np.sin(s.theta)
    if k == 1:
        return -1j / 3 * np.conj(b) * np.exp(1j * s.Omega * t), 2 * SQRT2 / 3 * sn
    return 1j / 3 * np.conj(b) * np.exp(-1j * s.omega(k) * t), -2 * SQRT2 / 3 * sn


def su2_form(s: HamiltonianSpec, k: int, t: float) -> np.ndarray:
    """C(k)[(B_- S_+ + B_+ S_-)/2 + B_3 S_3] using the k-th SU(2) realization."""
    bm, b3 = su2_coefficients(s, k, t)
    r = su2_realization(k)
    return s.C(k) * (0.5 * (bm * r.s_plus + np.conj(bm) * r.s_minus) + b3 * r.s3)


def su2_form_residual(s: HamiltonianSpec, k: int, t: float) -> float:
    return distance(su2_form(s, k, t), subsystem_part(build_H(s, t), k))


def operator_expansion(s: HamiltonianSpec, k: int, t: float, variant: str = "inner") -> np.ndarray:
    """The published SU(3)-operator expansion of H^(k).

    For k = 2 the printed brackets leave it open whether the two phase terms
    sit inside C(2); ``variant="inner"`` puts them inside, ``"outer"`` leaves
    them outside. k = 1 and k = 3 have a single reading.
    """
    check_subsystem(k)
    r = su3_realization(k)
    sn = np.sin(s.theta)
    b = weights(s.theta).b
    c = s.C(k)
    r2 = SQRT2
    ip = r.i_plus + r.i_minus
    if k == 1:
        Q = np.exp(1j * s.Omega * t)
        return c * (r2 / 6 * sn * ip + r2 / 2 * sn * r.y
                    - r2 / 12 * 1j * np.conj(b) * Q * (r.v_minus + r.u_plus)
                    + r2 / 12 * 1j * b / Q * (r.v_plus + r.u_minus))
    q = np.exp(1j * s.omega(k) * t)
    head = -r2 / 6 * sn * ip - r2 / 2 * sn * r.y
    tail = (r2 / 12 * 1j * np.conj(b) / q * (r.u_plus + r.v_minus)
            - r2 / 12 * 1j * b * q * (r.v_plus + r.u_minus))
    if k == 2 and variant == "outer":
        return c * head + tail
    return c * (head + tail)


def operator_expansion_residual(s: HamiltonianSpec, k: int, t: float, variant: str = "inner") -> float:
    return distance(operator_expansion(s, k, t, variant), subsystem_part(build_H(s, t), k))


# --- block diagonalization by the constant orthogonal matrix -----------------

_h = 1 / SQRT2
# rows act on kets in display order |11>,|10>,|01>,|1-1>,|00>,|-11>,|0-1>,|-10>,|-1-1>
O_DISPLAY = np.array([
    [0, _h, _h, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, -_h, _h, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, _h, _h, 0],
    [0, 0, 0, 0, 0, 0, -_h, _h, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, _h, 0, _h, 0, 0, 0],
    [0, 0, 0, -_h, 0, _h, 0, 0, 0],
])
O_DISPLAY.flags.writeable = False

# new-basis slots: (spin-1/2 doublet, spin-0 singlet) per subsystem
DOUBLET_SLOTS = {1: (0, 1), 2: (3, 4), 3: (6, 7)}
SINGLET_SLOTS = {1: 2, 2: 5, 3: 8}
BLOCKS = ((0, 1), (2,), (3, 4), (5,), (6, 7), (8,))


@lru_cache(maxsize=None)
def _o_lex() -> np.ndarray:
    o = O_DISPLAY @ algebra.display_permutation()
    o.flags.writeable = False
    return o


def o_matrix() -> np.ndarray:
    """O acting on lex-ordered vectors: ``O_lex = O_display @ P``."""
    return _o_lex().copy()


def block_diagonalize(H: np.ndarray) -> np.ndarray:
    o = _o_lex()
    return o @ H @ o.T


def block_mask() -> np.ndarray:
    mask = np.zeros((9, 9), dtype=bool)
    for blk in BLOCKS:
        for i in blk:
            for j in blk:
                mask[i, j] = True
    return mask


def off_pattern_norm(Ht: np.ndarray) -> float:
    """Norm of the entries of O H O^T outside the 2+1+2+1+2+1 block pattern."""
    return float(np.linalg.norm(np.where(block_mask(), 0, Ht)))


def casimir_blocks(k: int) -> np.ndarray:
    """O J^(k) O^T."""
    return block_diagonalize(su2_realization(k).casimir)


def casimir_block_target(k: int) -> np.ndarray:
    t = np.zeros((9, 9))
    for i in DOUBLET_SLOTS[check_subsystem(k)]:
        t[i, i] = 0.75
    return t


def new_basis_report(tol: float = 1e-14) -> list[Discrepancy]:
    """Check the printed preimages of the new basis kets |1>..|9> against O.

    Each printed ket |n> = O v_n must land on the n-th unit vector.
    """
    h = 1 / SQRT2
    printed = [
        ("|1>", h * (ket(1, 0) + ket(0, 1))),
        ("|2>", ket(-1, -1)),
        ("|3>", h * (-ket(1, 0) + ket(0, 1))),
        ("|4>", ket(1, 1)),
        ("|5>", h * (ket(0, -1) + ket(-1, 0))),
        ("|6>", h * (-ket(0, -1) + ket(-1, 0))),
        ("|7>", ket(1, 1)),
        ("|8>", h * (ket(1, -1) + ket(-1, 1))),
        ("|9>", h * (-ket(1, -1) + ket(-1, 1))),
    ]
    o = _o_lex()
    out = []
    for n, (label, v) in enumerate(printed):
        e = np.zeros(9)
        e[n] = 1.0
        out.append(Discrepancy(name=f"new basis {label}", residual=distance(o @ v, e), tolerance=tol))
    return out


def tilde_su2_report(tol: float = 1e-12) -> list[Discrepancy]:
    """Compare O S^(k) O^T with the printed slot operators."""

    def op(i, j):
        m = np.zeros((9, 9))
        m[i, j] = 1.0
        return m

    printed = {1: (op(0, 1), op(1, 0)), 2: (op(3, 4), op(4, 3)), 3: (op(6, 7), op(7, 6))}
    out = []
    for k in (1, 2, 3):
        r = su2_realization(k)
        pp, pm = printed[k]
        i, j = DOUBLET_SLOTS[k]
        s3 = 0.5 * (op(i, i) - op(j, j))
        for name, got, want in (("S+", r.s_plus, pp), ("S-", r.s_minus, pm), ("S3", r.s3, s3)):
            out.append(Discrepancy(name=f"tilde {name}^({k})",
                                   residual=distance(block_diagonalize(got), want), tolerance=tol))
    return out


def hermiticity(s: HamiltonianSpec, t: float) -> float:
    return hermiticity_residual(build_H(s, t))
