"""Weight-level algebra of the Bershadsky-Polyakov vertex algebra.

The formula helpers (``f_expr``, ``g_expr``, ``p_expr``, ...) use only ring
operations, so they evaluate equally on ``Fraction`` inputs and on the
symbolic ``Ring``/``KField`` elements of :mod:`bpwl.scalars`.  The public
functions below wrap them for exact numerical use.

W zero-mode eigenvalues are always carried as ``w_hat = alpha_k * w`` with
``alpha_k = (k+3)**(3/2) / sqrt(3)``; this keeps every quantity rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import InvariantFailure, LevelError
from .scalars import Q, RationalLike, mod1, rational_roots


@dataclass(frozen=True)
class Level:
    """A level ``k != -3``, optionally with its coprime pair ``k + 3 = u/v``."""

    k: Fraction
    u: int | None = None
    v: int | None = None
    kappa: Fraction = field(init=False)
    c_bp: Fraction = field(init=False)
    c_w3: Fraction = field(init=False)
    c_pi: Fraction = field(init=False)
    a_k: Fraction = field(init=False)
    #: alpha_k ** 2 = (k+3)**3 / 3, the rescaling of the W-W bracket.
    alpha_sq: Fraction = field(init=False)

    def __post_init__(self):
        k = Q(self.k)
        if k == -3:
            raise LevelError("the level k = -3 is excluded")
        object.__setattr__(self, "k", k)
        if self.u is None and k + 3 > 0:
            object.__setattr__(self, "u", (k + 3).numerator)
            object.__setattr__(self, "v", (k + 3).denominator)
        s = k + 3
        object.__setattr__(self, "kappa", kappa_expr(k))
        object.__setattr__(self, "c_bp", -4 * (k + 1) * (2 * k + 3) / s)
        object.__setattr__(self, "c_w3", -2 * (3 * k + 5) * (4 * k + 9) / s)
        object.__setattr__(self, "c_pi", 2 + 24 * self.kappa)
        object.__setattr__(self, "a_k", -(3 * k + 4) * (5 * k + 12) / (2 * s))
        object.__setattr__(self, "alpha_sq", s**3 / 3)

    @classmethod
    def from_pair(cls, u: int, v: int) -> "Level":
        if u < 2 or v < 1:
            raise LevelError(f"need u >= 2 and v >= 1, got ({u}, {v})")
        if gcd(u, v) != 1:
            raise LevelError(f"u = {u} and v = {v} are not coprime")
        return cls(Fraction(u, v) - 3, u, v)

    @property
    def has_pair(self) -> bool:
        return self.u is not None

    @property
    def admissible(self) -> bool:
        return self.has_pair and self.u >= 3

    @property
    def nondegenerate(self) -> bool:
        return self.admissible and self.v >= 3

    @property
    def embedding_exists(self) -> bool:
        """Whether the minimal-model embedding into Pi (x) W3 is available."""
        return not (self.has_pair and self.u >= 2 and self.v in (1, 2))

    def __str__(self) -> str:
        if self.has_pair:
            return f"k={self.k} (u,v)=({self.u},{self.v})"
        return f"k={self.k}"


def level_data(value) -> Level:
    """Build a :class:`Level` from a pair ``(u, v)``, a rational ``k`` or a Level."""
    if isinstance(value, Level):
        return value
    if isinstance(value, tuple):
        return Level.from_pair(*value)
    return Level(Q(value))


@dataclass(frozen=True, order=True)
class BPWeight:
    """Eigenvalues ``(j, delta)`` of ``J_0`` and ``L_0``."""

    j: Fraction
    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "j", Q(self.j))
        object.__setattr__(self, "delta", Q(self.delta))

    def as_tuple(self) -> tuple[Fraction, Fraction]:
        return (self.j, self.delta)


@dataclass(frozen=True, order=True)
class RelaxedLabel:
    """Data ``([j], h, w_hat)`` of a fully relaxed module built by inverse reduction."""

    j_coset: Fraction
    h: Fraction
    w_hat: Fraction

    def __post_init__(self):
        object.__setattr__(self, "j_coset", mod1(self.j_coset))
        object.__setattr__(self, "h", Q(self.h))
        object.__setattr__(self, "w_hat", Q(self.w_hat))


# --------------------------------------------------------------------------
# domain-generic formulas


def kappa_expr(k):
    return (2 * k + 3) / 3


def f_expr(j, delta, k):
    return 3 * j**2 - (k + 3) * delta - (2 * k + 3) * j


def g_expr(n, j, delta, k):
    return 3 * j**2 - (k + 3) * delta - (2 * k + 3 * n) * j + (n - 1) * (k + n + 1)


def p_expr(j, h, k):
    """Polynomial part of the G^-_0 eigenvalue on a relaxed top vector."""
    x = j + kappa_expr(k)
    return (
        -(k + 2) * (k + 3) * h
        + ((k + 3) * h - 2 * (k + 2) ** 2) * x
        + 3 * (k + 2) * x**2
        - x**3
    )


def relaxed_cubic_expr(j, h, w_hat, k):
    return w_hat + p_expr(j, h, k)


def omega_expr(j, h, w_hat, k):
    """Cubic Casimir eigenvalue evaluated through the charge-``j`` top vector."""
    kap = kappa_expr(k)
    return (
        2 * w_hat
        + p_expr(j, h, k)
        + p_expr(j + 1, h, k)
        + 2 * j**3
        - (2 * k + 3) * j**2
        + j
        - 2 * (k + 3) * j * (h + kap)
    )


def sf_weight_expr(ell, j, delta, k):
    kap = kappa_expr(k)
    return j + kap * ell, delta + ell * j + kap * ell * (ell - 1) / 2


def hw_sf_expr(n, j, delta, k):
    return j - n + 1 + kappa_expr(k), delta + j - n + 1


# --------------------------------------------------------------------------
# exact numerical API


def spectral_flow_weight(ell: int, w: BPWeight, level: Level) -> BPWeight:
    return BPWeight(*sf_weight_expr(ell, w.j, w.delta, level.k))


def conjugate_weight(w: BPWeight, level: Level) -> BPWeight:
    return BPWeight(level.kappa - w.j, w.delta)


def f_eval(w: BPWeight, level: Level) -> Fraction:
    return f_expr(w.j, w.delta, level.k)


def g_n_eval(n: int, w: BPWeight, level: Level) -> Fraction:
    if n < 1:
        raise ValueError(f"g_n needs n >= 1, got {n}")
    return g_expr(n, w.j, w.delta, level.k)


def top_space_dim(w: BPWeight, level: Level, n_max: int) -> int | None:
    """Dimension of the top space of the irreducible highest-weight module.

    This is the least ``n`` with ``g_n = 0``; ``None`` means no such ``n``
    up to ``n_max`` (for the irreducible module: an infinite top space, or a
    finite one larger than ``n_max``).
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    for n in range(1, n_max + 1):
        if g_expr(n, w.j, w.delta, level.k) == 0:
            return n
    return None


def top_space_dim_exact(w: BPWeight, level: Level) -> int | None:
    """Exact top-space dimension; ``None`` means infinite.

    ``g_n`` is the monic quadratic ``n^2 + (k - 3j) n + g_0`` in ``n``, so the
    answer is its least positive-integer root, if any.
    """
    k, j = level.k, w.j
    const = g_expr(0, j, w.delta, k)
    roots, _ = rational_roots([Fraction(1), k - 3 * j, const])
    for r in roots:
        if r.denominator == 1 and r >= 1:
            return int(r)
    return None


def relaxed_cubic_eval(j: RationalLike, h: RationalLike, w_hat: RationalLike, level: Level) -> Fraction:
    """Scalar by which ``G^-_0`` lowers the charge-``j`` top vector of a relaxed module."""
    return relaxed_cubic_expr(Q(j), Q(h), Q(w_hat), level.k)


def relaxed_cubic_coeffs(h: RationalLike, w_hat: RationalLike, level: Level) -> list[Fraction]:
    """Descending coefficients in ``j`` of :func:`relaxed_cubic_eval`."""
    # Recover the cubic from four exact samples (finite differences).
    ys = [relaxed_cubic_eval(x, h, w_hat, level) for x in range(4)]
    d1 = [ys[i + 1] - ys[i] for i in range(3)]
    d2 = [d1[i + 1] - d1[i] for i in range(2)]
    a3 = (d2[1] - d2[0]) / 6
    a2 = (d2[0] - 6 * a3) / 2
    a1 = d1[0] - a3 - a2
    return [a3, a2, a1, ys[0]]


def omega_eval(h: RationalLike, w_hat: RationalLike, level: Level) -> Fraction:
    h, w_hat = Q(h), Q(w_hat)
    at0 = omega_expr(Fraction(0), h, w_hat, level.k)
    at1 = omega_expr(Fraction(1), h, w_hat, level.k)
    if at0 != at1:
        raise InvariantFailure(f"Casimir eigenvalue depends on j: {at0} != {at1}")
    return at0


def hw_spectral_flow_image(w: BPWeight, n: int, level: Level) -> BPWeight:
    """Highest weight of sigma(H) when H has highest weight ``w`` and top dimension ``n``."""
    if n < 1:
        raise ValueError(f"top-space dimension must be positive, got {n}")
    return BPWeight(*hw_sf_expr(n, w.j, w.delta, level.k))
