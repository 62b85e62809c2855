"""The unitary 9x9 braid-form R-matrix, its YBE checks, and negativity."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import HeckeParams, build_M, embed_pair, lex_index, su3_realization
from .errors import NotNormalized
from .tensor import DEFAULT_TOL, distance, eig_hermitian, partial_transpose, projector

TWO_PI = 2 * np.pi


def canonical_angle(a: float) -> float:
    """Reduce an angle into [0, 2pi)."""
    if not np.isfinite(a):
        raise ValueError(f"angle must be finite, got {a!r}")
    r = float(np.mod(a, TWO_PI))
    return 0.0 if r == TWO_PI else r


@dataclass(frozen=True)
class RParams:
    theta: float = 0.0
    phi1: float = 0.0
    phi2: float = 0.0

    def __post_init__(self):
        for name in ("theta", "phi1", "phi2"):
            object.__setattr__(self, name, canonical_angle(getattr(self, name)))

    @property
    def x(self) -> complex:
        return complex(np.exp(1j * self.theta))

    @property
    def hecke(self) -> HeckeParams:
        return HeckeParams(self.phi1, self.phi2)


@dataclass(frozen=True)
class WeightPair:
    rho: complex
    f: complex
    a: complex
    b: complex


def weights_x(x: complex) -> WeightPair:
    """rho(x) = (2x + 1/x)/3 and F(x) = -(x - 1/x)/(2x + 1/x), plus a, b."""
    a = 1 / x - x
    b = 2 * x + 1 / x
    return WeightPair(rho=b / 3, f=-(x - 1 / x) / b, a=a, b=b)


def weights(theta: float) -> WeightPair:
    return weights_x(np.exp(1j * theta))


def functional_residual(x: complex, y: complex) -> float:
    """|F(x) + F(y) + F(x)F(y) - [1 + 2F(x)F(y)] F(xy)|."""
    fx, fy, fxy = weights_x(x).f, weights_x(y).f, weights_x(x * y).f
    return abs(fx + fy + fx * fy - (1 + 2 * fx * fy) * fxy)


def unitarity_product(theta: float) -> complex:
    """rho(x) rho(1/x) [1 + 2 F(x) F(1/x)], which must equal 1 for a unitary R."""
    w, wi = weights(theta), weights(-theta)
    return w.rho * wi.rho * (1 + 2 * w.f * wi.f)


def unitarity_sum(theta: float) -> complex:
    """F(x) + F(1/x) + F(x) F(1/x); zero on the unit circle."""
    w, wi = weights(theta), weights(-theta)
    return w.f + wi.f + w.f * wi.f


def build_R_x(x: complex, p: HeckeParams) -> np.ndarray:
    """R(x) = rho(x) [I + F(x) M] for an arbitrary complex spectral parameter."""
    w = weights_x(x)
    return w.rho * (np.eye(9) + w.f * build_M(p))


def build_R(p: RParams) -> np.ndarray:
    """R = (b I + a M)/3 with a = 1/x - x, b = 2x + 1/x; lex order."""
    w = weights(p.theta)
    return (w.b * np.eye(9) + w.a * build_M(p.hecke)) / 3


def ybe_residual(theta_x: float, theta_y: float, phi1: float, phi2: float,
                 middle_shift: float = 0.0) -> float:
    """||R12(x) R23(xy) R12(y) - R23(y) R12(xy) R23(x)|| on three qutrits.

    ``middle_shift`` multiplies the product parameter xy by exp(i*shift) in
    both middle factors; any nonzero value should break the identity.
    """
    h = HeckeParams(phi1, phi2)
    x, y = np.exp(1j * theta_x), np.exp(1j * theta_y)
    xy = x * y * np.exp(1j * middle_shift)
    rx, ry, rxy = build_R_x(x, h), build_R_x(y, h), build_R_x(xy, h)

    def r12(r):
        return embed_pair(r, 0, 3)

    def r23(r):
        return embed_pair(r, 1, 3)

    lhs = r12(rx) @ r23(rxy) @ r12(ry)
    rhs = r23(ry) @ r12(rxy) @ r23(rx)
    return distance(lhs, rhs)


def act_on_basis(p: RParams, m: int, n: int) -> np.ndarray:
    """R|mn>, i.e. the column of R belonging to the product ket |mn>."""
    return build_R(p)[:, lex_index(m, n)].copy()


def negativity(state, tol: float = DEFAULT_TOL) -> float:
    """Negativity of a normalized two-qutrit pure state.

    Computed as (||rho^TA||_1 - 1)/2 and, independently, as the magnitude of
    the summed negative eigenvalues of rho^TA; the two must agree to ``tol``.
    """
    psi = np.asarray(state, dtype=np.complex128).reshape(-1)
    norm = np.linalg.norm(psi)
    if abs(norm - 1) > tol:
        raise NotNormalized(f"state norm is {norm!r}, expected 1")
    rho_ta = partial_transpose(projector(psi), "A")
    vals = eig_hermitian(rho_ta).values
    from_trace_norm = (np.sum(np.abs(vals)) - 1) / 2
    from_negatives = abs(np.sum(vals[vals < 0]))
    if abs(from_trace_norm - from_negatives) > tol:
        raise ArithmeticError(
            f"negativity routes disagree: {from_trace_norm!r} vs {from_negatives!r}")
    return float(from_trace_norm)


def negativity_closed(theta: float) -> float:
    """(4/9)(sin^2 theta + |sin theta| sqrt(1 + 8 cos^2 theta))."""
    s, c = np.sin(theta), np.cos(theta)
    return float(4 / 9 * (s * s + abs(s) * np.sqrt(1 + 8 * c * c)))


# (subsystem, operator name, phase factor key)
_EXPANSION_TERMS = (
    (1, "i_plus", 1), (1, "i_minus", 1),
    (1, "v_minus", "Q"), (1, "u_plus", "Q"),
    (1, "u_minus", "1/Q"), (1, "v_plus", "1/Q"),
    (2, "i_plus", 1), (2, "i_minus", 1),
    (2, "v_plus", "q1"), (2, "u_minus", "q1"),
    (2, "v_minus", "1/q1"), (2, "u_plus", "1/q1"),
    (3, "i_plus", 1), (3, "i_minus", 1),
    (3, "v_plus", "q2"), (3, "u_minus", "q2"),
    (3, "v_minus", "1/q2"), (3, "u_plus", "1/q2"),
)


def su3_expansion(p: RParams, drop: tuple[tuple[int, str], ...] = ()) -> np.ndarray:
    """R assembled term by term from the three SU(3) realizations.

    ``drop`` lists (subsystem, operator) terms to leave out, for negative
    controls.
    """
    h = p.hecke
    phases = {1: 1.0, "Q": h.Q, "1/Q": 1 / h.Q, "q1": h.q1, "1/q1": 1 / h.q1,
              "q2": h.q2, "1/q2": 1 / h.q2}
    w = weights(p.theta)
    acc = np.zeros((9, 9), dtype=np.complex128)
    for k, name, key in _EXPANSION_TERMS:
        if (k, name) in drop:
            continue
        acc += phases[key] * getattr(su3_realization(k), name)
    return w.a / 3 * acc + w.b / 3 * np.eye(9)


def rebuild_from_su3(p: RParams, drop: tuple[tuple[int, str], ...] = ()) -> float:
    return distance(su3_expansion(p, drop), build_R(p))


def printed_R_display(p: RParams) -> np.ndarray:
    """The R-matrix entry by entry as it is laid out in display order.

    Kept as a literal transcription, independent of :func:`build_M`, so that
    the index rule for M can be checked against it.
    """
    w = weights(p.theta)
    a, b = w.a, w.b
    h = p.hecke
    q1, q2, Q = h.q1, h.q2, h.Q
    r = np.array([
        [b, 0, 0, 0, 0, 0, a * q1, a * q1, 0],
        [0, b, a, 0, 0, 0, 0, 0, a * Q],
        [0, a, b, 0, 0, 0, 0, 0, a * Q],
        [0, 0, 0, b, a / q2, a, 0, 0, 0],
        [0, 0, 0, a * q2, b, a * q2, 0, 0, 0],
        [0, 0, 0, a, a / q2, b, 0, 0, 0],
        [a / q1, 0, 0, 0, 0, 0, b, a, 0],
        [a / q1, 0, 0, 0, 0, 0, a, b, 0],
        [0, a / Q, a / Q, 0, 0, 0, 0, 0, b],
    ], dtype=np.complex128)
    return r / 3
