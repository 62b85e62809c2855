"""Qutrit bases, SU(3)/SU(2) realizations on two qutrits, and the Hecke matrix M.

Conventions
-----------
A single qutrit carries the labels ``1, 0, -1`` mapped to rows ``0, 1, 2``.
Two-qutrit operators are stored in lexicographic ``kron`` order, i.e. the
ket ``|a b>`` sits at index ``3*idx(a) + idx(b)``. The ordering used when
printing the R-matrix in the literature,

    |11>, |10>, |01>, |1-1>, |00>, |-11>, |0-1>, |-10>, |-1-1>,

differs from the lexicographic one by swapping positions 2<->3 and 5<->6.
That permutation is applied only when importing or exporting matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import BadLabel, BadSubsystem
from .tensor import commutator, dagger, distance, kron, kron_all

LABELS = (1, 0, -1)
_LABEL_INDEX = {1: 0, 0: 1, -1: 2}

DISPLAY_ORDER = (
    (1, 1), (1, 0), (0, 1), (1, -1), (0, 0), (-1, 1), (0, -1), (-1, 0), (-1, -1),
)

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)


def label_index(m: int) -> int:
    try:
        return _LABEL_INDEX[m]
    except (KeyError, TypeError):
        raise BadLabel(f"qutrit label must be one of 1, 0, -1; got {m!r}") from None


def lex_index(a: int, b: int) -> int:
    return 3 * label_index(a) + label_index(b)


def ket(a: int, b: int) -> np.ndarray:
    v = np.zeros(9, dtype=np.complex128)
    v[lex_index(a, b)] = 1.0
    return v


def pair_label(i: int) -> str:
    a, b = LABELS[i // 3], LABELS[i % 3]
    return f"|{a}{b}>"


@lru_cache(maxsize=None)
def _display_permutation() -> np.ndarray:
    p = np.zeros((9, 9))
    for row, (a, b) in enumerate(DISPLAY_ORDER):
        p[row, lex_index(a, b)] = 1.0
    p.flags.writeable = False
    return p


def display_permutation() -> np.ndarray:
    """Permutation ``P`` with ``v_display = P @ v_lex``."""
    return _display_permutation().copy()


def to_display_order(m: np.ndarray) -> np.ndarray:
    p = _display_permutation()
    m = np.asarray(m)
    if m.ndim == 1:
        return p @ m
    return p @ m @ p.T


def from_display_order(m: np.ndarray) -> np.ndarray:
    p = _display_permutation()
    m = np.asarray(m)
    if m.ndim == 1:
        return p.T @ m
    return p.T @ m @ p


# Each subsystem is spanned by three product kets, listed in the order used
# for its eigenstates. ROLE_KETS gives, for the same subsystem, the kets that
# play the parts of the fundamental-representation states 1, 0, -1.
SUBSYSTEM_KETS = {
    1: ((1, 0), (0, 1), (-1, -1)),
    2: ((1, 1), (0, -1), (-1, 0)),
    3: ((0, 0), (1, -1), (-1, 1)),
}
ROLE_KETS = {
    1: ((1, 0), (0, 1), (-1, -1)),
    2: ((0, -1), (-1, 0), (1, 1)),
    3: ((-1, 1), (1, -1), (0, 0)),
}


def check_subsystem(k: int) -> int:
    if k not in (1, 2, 3):
        raise BadSubsystem(f"subsystem index must be 1, 2 or 3; got {k!r}")
    return k


def subsystem_indices(k: int) -> list[int]:
    return [lex_index(a, b) for a, b in SUBSYSTEM_KETS[check_subsystem(k)]]


def subsystem_projector(k: int) -> np.ndarray:
    p = np.zeros((9, 9), dtype=np.complex128)
    for i in subsystem_indices(k):
        p[i, i] = 1.0
    return p


# --- single qutrit ----------------------------------------------------------

def gellmann() -> list[np.ndarray]:
    """The eight Gell-Mann matrices lambda_1 .. lambda_8."""
    l = [np.zeros((3, 3), dtype=np.complex128) for _ in range(8)]
    l[0][0, 1] = l[0][1, 0] = 1
    l[1][0, 1], l[1][1, 0] = -1j, 1j
    l[2][0, 0], l[2][1, 1] = 1, -1
    l[3][0, 2] = l[3][2, 0] = 1
    l[4][0, 2], l[4][2, 0] = -1j, 1j
    l[5][1, 2] = l[5][2, 1] = 1
    l[6][1, 2], l[6][2, 1] = -1j, 1j
    l[7][0, 0] = l[7][1, 1] = 1 / SQRT3
    l[7][2, 2] = -2 / SQRT3
    return l


def su3_generators() -> list[np.ndarray]:
    """I_lambda = lambda / 2."""
    return [0.5 * g for g in gellmann()]


def structure_constants(generators: list[np.ndarray] | None = None) -> np.ndarray:
    """f[a, b, c] from ``[I_a, I_b] = i f_abc I_c`` via traces.

    Uses ``tr(I_a I_b) = delta_ab / 2``, so ``f_abc = -2i tr([I_a, I_b] I_c)``.
    Indices are zero-based.
    """
    gens = su3_generators() if generators is None else generators
    f = np.zeros((8, 8, 8))
    for a, b, c in product(range(8), repeat=3):
        f[a, b, c] = np.real(-2j * np.trace(commutator(gens[a], gens[b]) @ gens[c]))
    return f


@dataclass(frozen=True)
class SiteOps:
    """Ladder and diagonal operators of one qutrit in the fundamental rep."""

    i_plus: np.ndarray
    i_minus: np.ndarray
    u_plus: np.ndarray
    u_minus: np.ndarray
    v_plus: np.ndarray
    v_minus: np.ndarray
    i3: np.ndarray
    y: np.ndarray


def site_ops() -> SiteOps:
    i1, i2, i3, i4, i5, i6, i7, i8 = su3_generators()
    return SiteOps(
        i_plus=i1 + 1j * i2,
        i_minus=i1 - 1j * i2,
        u_plus=i6 + 1j * i7,
        u_minus=i6 - 1j * i7,
        v_plus=i4 - 1j * i5,
        v_minus=i4 + 1j * i5,
        i3=i3,
        y=(2 / SQRT3) * i8,
    )


# --- two-qutrit SU(3) realizations -----------------------------------------

@dataclass(frozen=True)
class Su3Realization:
    k: int
    i_plus: np.ndarray
    i_minus: np.ndarray
    u_plus: np.ndarray
    u_minus: np.ndarray
    v_plus: np.ndarray
    v_minus: np.ndarray
    i3: np.ndarray
    y: np.ndarray

    def generators(self) -> list[np.ndarray]:
        """I_1..I_8 rebuilt from the ladder combinations."""
        return [
            0.5 * (self.i_plus + self.i_minus),
            -0.5j * (self.i_plus - self.i_minus),
            self.i3,
            0.5 * (self.v_plus + self.v_minus),
            -0.5j * (self.v_minus - self.v_plus),
            0.5 * (self.u_plus + self.u_minus),
            -0.5j * (self.u_plus - self.u_minus),
            (SQRT3 / 2) * self.y,
        ]

    def operators(self) -> dict[str, np.ndarray]:
        return {
            "I+": self.i_plus, "I-": self.i_minus,
            "U+": self.u_plus, "U-": self.u_minus,
            "V+": self.v_plus, "V-": self.v_minus,
            "I3": self.i3, "Y": self.y,
        }


def _pair(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return kron(a, b)


def _diagonal_ops(k: int, s: SiteOps) -> tuple[np.ndarray, np.ndarray]:
    """I3^(k) and Y^(k) assembled term by term from the published formulas."""
    e = np.eye(3)
    i31, i32 = _pair(s.i3, e), _pair(e, s.i3)
    y1, y2 = _pair(s.y, e), _pair(e, s.y)
    i3i3 = _pair(s.i3, s.i3)
    y1y2 = _pair(s.y, s.y)
    i3y = _pair(s.i3, s.y)
    yi3 = _pair(s.y, s.i3)
    if k == 1:
        i3 = (i31 - i32) / 3 + 0.5 * (i3y - yi3)
        y = (y1 + y2) / 3 - (2 / 3) * i3i3 - 0.5 * y1y2
    elif k == 2:
        i3 = 0.5 * (-(i31 - i32) / 3 + 0.5 * (y1 - y2) + i3y - yi3)
        y = -((i31 + i32) / 3 + (y1 + y2) / 6 + (2 / 3) * i3i3 + 0.5 * y1y2)
    else:
        i3 = 0.5 * (-(i31 - i32) / 3 - 0.5 * (y1 - y2) + i3y - yi3)
        y = (i31 + i32) / 3 - (y1 + y2) / 6 - (2 / 3) * i3i3 - 0.5 * y1y2
    return i3, y


@lru_cache(maxsize=None)
def _su3_realization(k: int) -> Su3Realization:
    s = site_ops()
    # (first-site raising, second-site lowering) factors for I, U, V
    ladders = {
        1: ((s.i_plus, s.i_minus), (s.u_plus, s.v_minus), (s.v_plus, s.u_minus)),
        2: ((s.u_plus, s.u_minus), (s.v_plus, s.i_minus), (s.i_plus, s.v_minus)),
        3: ((s.v_plus, s.v_minus), (s.i_plus, s.u_minus), (s.u_plus, s.i_minus)),
    }[k]
    raised = [_pair(a, b) for a, b in ladders]
    i3, y = _diagonal_ops(k, s)
    ip, up, vp = raised
    ops = dict(i_plus=ip, i_minus=dagger(ip), u_plus=up, u_minus=dagger(up),
               v_plus=vp, v_minus=dagger(vp), i3=i3, y=y)
    for m in ops.values():
        m.flags.writeable = False
    return Su3Realization(k=k, **ops)


def su3_realization(k: int) -> Su3Realization:
    """The k-th SU(3) realization acting on two qutrits (9x9, lex order).

    The raising/lowering operators are products of single-site ladders; the
    diagonal pair (I3, Y) follows the published combinations of single-site
    I3 and Y. :func:`diagonal_consistency` checks the latter against the
    values forced by the ladder commutators.
    """
    return _su3_realization(check_subsystem(k))


def diagonal_consistency(k: int) -> dict[str, float]:
    """Distance between the printed I3^(k), Y^(k) and the commutator-implied ones.

    In the fundamental rep ``[I+, I-] = 2 I3`` and ``[U+, U-] = (3/2) Y - I3``.
    """
    r = su3_realization(k)
    i3 = 0.5 * commutator(r.i_plus, r.i_minus)
    y = (2 / 3) * (commutator(r.u_plus, r.u_minus) + i3)
    return {"I3": distance(r.i3, i3), "Y": distance(r.y, y)}


@dataclass(frozen=True)
class Su2Realization:
    k: int
    s_plus: np.ndarray
    s_minus: np.ndarray
    s3: np.ndarray
    casimir: np.ndarray = field(repr=False)

    @property
    def s1(self) -> np.ndarray:
        return 0.5 * (self.s_plus + self.s_minus)

    @property
    def s2(self) -> np.ndarray:
        return -0.5j * (self.s_plus - self.s_minus)


def su2_realization(k: int) -> Su2Realization:
    r = su3_realization(k)
    sp = (r.v_minus + r.u_plus) / SQRT2
    sm = (r.v_plus + r.u_minus) / SQRT2
    s3 = 0.75 * r.y + 0.25 * (r.i_plus + r.i_minus)
    j = 0.5 * (sp @ sm + sm @ sp) + s3 @ s3
    return Su2Realization(k=r.k, s_plus=sp, s_minus=sm, s3=s3, casimir=j)


# --- Hecke matrix -----------------------------------------------------------

@dataclass(frozen=True)
class HeckeParams:
    phi1: float = 0.0
    phi2: float = 0.0

    @property
    def q1(self) -> complex:
        return complex(np.exp(1j * self.phi1))

    @property
    def q2(self) -> complex:
        return complex(np.exp(1j * self.phi2))

    @property
    def Q(self) -> complex:
        return self.q1 * self.q2


def _is_complement(pair: tuple[int, int], a: int) -> bool:
    c, d = pair
    return c != d and a not in pair


@lru_cache(maxsize=None)
def _m_pattern() -> tuple[tuple[int, int, str], ...]:
    """(row, col, phase key) for every nonzero entry of M.

    Keys: "q1", "q2", "1/Q" for a = b = 1, 0, -1 on the row side; "1/q1",
    "1/q2", "Q" for c = d = 1, 0, -1 on the column side; "swap" for the
    permutation part.
    """
    row_key = {1: "q1", 0: "q2", -1: "1/Q"}
    col_key = {1: "1/q1", 0: "1/q2", -1: "Q"}
    out = []
    for a, b, c, d in product(LABELS, repeat=4):
        i, j = lex_index(a, b), lex_index(c, d)
        if a == b and _is_complement((c, d), a):
            out.append((i, j, row_key[a]))
        if c == d and _is_complement((a, b), c):
            out.append((i, j, col_key[c]))
        if a == d and b == c and a != b:
            out.append((i, j, "swap"))
    return tuple(out)


def _fill(values: dict[str, complex]) -> np.ndarray:
    m = np.zeros((9, 9), dtype=np.complex128)
    for i, j, key in _m_pattern():
        m[i, j] += values[key]
    return m


def build_M(p: HeckeParams) -> np.ndarray:
    """The 9x9 Hermitian Hecke generator in lex order.

    ``M[(a,b),(c,d)]``:

    * ``a = b`` and ``{c, d}`` the other two labels: q1, q2, 1/Q for a = 1, 0, -1;
    * ``c = d`` and ``{a, b}`` the other two labels: 1/q1, 1/q2, Q for c = 1, 0, -1;
    * ``(c, d) = (b, a)`` with ``a != b``: 1 (the swap part);
    * 0 otherwise.
    """
    q1, q2, Q = p.q1, p.q2, p.Q
    return _fill({"q1": q1, "q2": q2, "Q": Q, "1/q1": 1 / q1, "1/q2": 1 / q2,
                  "1/Q": 1 / Q, "swap": 1.0})


def build_M_dot(p: HeckeParams, omega1: float, omega2: float) -> np.ndarray:
    """Time derivative of M when phi_i = omega_i * t.

    Only the phase entries move: q1 -> i w1 q1, q2 -> i w2 q2, Q -> i (w1+w2) Q,
    and the inverses pick up the opposite sign.
    """
    q1, q2, Q = p.q1, p.q2, p.Q
    big = omega1 + omega2
    return _fill({
        "q1": 1j * omega1 * q1, "1/q1": -1j * omega1 / q1,
        "q2": 1j * omega2 * q2, "1/q2": -1j * omega2 / q2,
        "Q": 1j * big * Q, "1/Q": -1j * big / Q,
        "swap": 0.0,
    })


def embed_pair(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Place a two-qutrit operator on sites (site, site+1) of an n-site chain."""
    e = np.eye(3)
    factors = [e] * site + [op] + [e] * (n_sites - site - 2)
    return kron_all(*factors)


def quadratic_residual(p: HeckeParams) -> float:
    """||M^2 - M - 2I||."""
    m = build_M(p)
    return distance(m @ m, m + 2 * np.eye(9))


def hecke_residual(p: HeckeParams, g: float = 2.0) -> float:
    """||M12 M23 M12 + g M12 - M23 M12 M23 - g M23|| on three qutrits."""
    m = build_M(p)
    m12, m23 = embed_pair(m, 0, 3), embed_pair(m, 1, 3)
    lhs = m12 @ m23 @ m12 + g * m12
    rhs = m23 @ m12 @ m23 + g * m23
    return distance(lhs, rhs)


def braid_generator(p: HeckeParams) -> np.ndarray:
    """B = (2I - M)/3, the x -> infinity limit of R(x)/x up to a scalar."""
    return (2 * np.eye(9) - build_M(p)) / 3


def braid_limit_residual(p: HeckeParams) -> float:
    """||B12 B23 B12 - B23 B12 B23||."""
    b = braid_generator(p)
    b12, b23 = embed_pair(b, 0, 3), embed_pair(b, 1, 3)
    return distance(b12 @ b23 @ b12, b23 @ b12 @ b23)


def far_commutativity_residual(p: HeckeParams) -> float:
    """||[B12, B34]|| on four qutrits (81 dims)."""
    b = braid_generator(p)
    return distance(commutator(embed_pair(b, 0, 4), embed_pair(b, 2, 4)), 0)
