"""Truncated q-series and the string functions of the vacuum character.

The vacuum character of the Bershadsky-Polyakov algebra (up to the
``q^{-c/24}`` prefactor, which is never expanded) is

    prod_{i>=1} 1 / ((1-q^i)(1-z q^i)(1-q^{i+1})(1-z^{-1} q^{i+1})),

one factor per generator J, G+, L, G-.  Its normalised string functions
``q^{-n} [z^n]`` converge, as ``n`` grows, to the series

    prod_{i>=1} 1 / ((1-q^i)^2 (1-q^{i+1})(1-q^{i+2})).

Everything is computed with exact integer coefficients stored as Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .scalars import fmt


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum_{d <= order} coeffs[d] q^d``, times a symbolic prefactor kept apart."""

    order: int
    coeffs: tuple[Fraction, ...]
    prefactor: str = ""

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("a series of order N needs N + 1 coefficients")

    @classmethod
    def from_list(cls, values, prefactor: str = "") -> "TruncatedSeries":
        vals = tuple(Fraction(v) for v in values)
        return cls(len(vals) - 1, vals, prefactor)

    def _aligned(self, other: "TruncatedSeries") -> int:
        if self.prefactor != other.prefactor:
            raise ValueError("series with different prefactors cannot be combined")
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._aligned(other)
        return TruncatedSeries(n, tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)), self.prefactor)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._aligned(other)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j, b in enumerate(other.coeffs[: n + 1 - i]):
                    out[i + j] += a * b
        return TruncatedSeries(n, tuple(out), self.prefactor)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(order, self.coeffs[: order + 1], self.prefactor)

    def to_json(self) -> list[str]:
        return [fmt(c) for c in self.coeffs]


ColorProfile = Mapping[int, int] | Callable[[int], int]


def _colors(profile: ColorProfile) -> Callable[[int], int]:
    if callable(profile):
        return profile
    return lambda size: profile.get(size, 0)


def step_profile(counts: list[int]) -> Callable[[int], int]:
    """Profile giving ``counts[i-1]`` colours to parts of size ``i``, the last entry for all larger sizes."""
    return lambda size: counts[min(size, len(counts)) - 1]


def inv_product_expand(profile: ColorProfile, order: int) -> TruncatedSeries:
    """Expand ``prod_i (1 - q^i)^{-colors(i)}``: generating function of coloured partitions."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    colors = _colors(profile)
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for size in range(1, order + 1):
        for _ in range(colors(size)):
            # multiply by 1/(1 - q^size) in place
            for d in range(size, order + 1):
                coeffs[d] += coeffs[d - size]
    return TruncatedSeries(order, tuple(Fraction(c) for c in coeffs))


#: colours of the limiting string function: two bosons of every size, one more from
#: size 2 and another from size 3 on.
TARGET_PROFILE = step_profile([2, 3, 4])


def string_fn_target(n: int, order: int) -> TruncatedSeries:
    """Normalised limiting string function; independent of ``n`` by construction."""
    s = inv_product_expand(TARGET_PROFILE, order)
    return TruncatedSeries(s.order, s.coeffs, f"q^({n} - c/24)")


@dataclass
class TwoVarSeries:
    """Series in ``q`` (up to ``order``) with Laurent-polynomial coefficients in ``z``.

    Only ``z``-powers in ``[zmin, zmax]`` are kept.  Multiplying by geometric
    factors in place is exact provided the discarded powers cannot contribute
    to the coefficients that are later read off; callers choose the window.
    """

    order: int
    zmin: int
    zmax: int
    data: dict[int, dict[int, int]] = field(default_factory=dict)

    @classmethod
    def one(cls, order: int, zmin: int, zmax: int) -> "TwoVarSeries":
        s = cls(order, zmin, zmax)
        if zmin <= 0 <= zmax:
            s.data[0] = {0: 1}
        return s

    def divide_by_one_minus(self, zpow: int, qpow: int) -> None:
        """Multiply in place by ``1 / (1 - z^zpow q^qpow)``, i.e. solve ``S' = S + m S'``."""
        if qpow < 0 or (qpow == 0 and zpow <= 0):
            raise ValueError("geometric factor does not converge in this window")
        if qpow > 0:
            # rows below q are already final when row q is updated
            for q in range(qpow, self.order + 1):
                src = self.data.get(q - qpow)
                if not src:
                    continue
                row = self.data.setdefault(q, {})
                for z, c in src.items():
                    if self.zmin <= z + zpow <= self.zmax:
                        row[z + zpow] = row.get(z + zpow, 0) + c
        else:
            for row in self.data.values():
                for z in range(min(row), self.zmax + 1):
                    prev = row.get(z - zpow)
                    if prev:
                        row[z] = row.get(z, 0) + prev

    def z_coefficient(self, n: int) -> list[int]:
        if not self.zmin <= n <= self.zmax:
            raise ValueError(f"z^{n} lies outside the stored window")
        return [self.data.get(q, {}).get(n, 0) for q in range(self.order + 1)]

    def z_window(self, q: int) -> tuple[int, int] | None:
        row = self.data.get(q)
        if not row:
            return None
        nz = [z for z, c in row.items() if c]
        return (min(nz), max(nz)) if nz else None


def bp_vacuum_shifted(order: int, ymax: int) -> TwoVarSeries:
    """Vacuum character in the variables ``y = z q`` and ``q``.

    ``[z^n q^(n+d)]`` of the character equals ``[y^n q^d]`` here.  Keeping
    ``y``-powers up to ``ymax`` is exact for every ``y^n`` with
    ``n <= ymax - order // 3``: lowering the ``y``-power by one costs at least
    ``q^3``.
    """
    s = TwoVarSeries.one(order, -(order // 3), ymax)
    for i in range(1, order + 2):
        if i <= order:
            s.divide_by_one_minus(0, i)  # J
        s.divide_by_one_minus(1, i - 1)  # G+ : z q^i = y q^(i-1)
        if i + 1 <= order:
            s.divide_by_one_minus(0, i + 1)  # L
        if i + 2 <= order:
            s.divide_by_one_minus(-1, i + 2)  # G- : z^-1 q^(i+1) = y^-1 q^(i+2)
    return s


def bp_string_fn(n: int, order: int) -> TruncatedSeries:
    """Normalised coefficient of ``z^n`` in the vacuum character, to ``q^order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if n < -(order // 3):
        return TruncatedSeries(order, (Fraction(0),) * (order + 1), f"q^({n} - c/24)")
    s = bp_vacuum_shifted(order, n + order // 3)
    return TruncatedSeries(order, tuple(Fraction(c) for c in s.z_coefficient(n)), f"q^({n} - c/24)")


def pi_w3_string_fn(n: int, order: int) -> TruncatedSeries:
    """Normalised ``z^n`` coefficient of (half-lattice vacuum char) x (W3 vacuum char).

    In the variable ``y = z q`` the half-lattice character is
    ``sum_m y^m / prod (1-q^i)^2`` and the W3 vacuum character is
    ``prod_{i>=1} 1/((1-q^{i+1})(1-q^{i+2}))``.  No factor changes the
    ``y``-power, so a window of width one around ``n`` is exact.
    """
    s = TwoVarSeries(order, n - 1, n + 1)
    s.data[0] = {m: 1 for m in range(n - 1, n + 2)}
    for i in range(1, order + 1):
        s.divide_by_one_minus(0, i)  # c
        s.divide_by_one_minus(0, i)  # d
        if i + 1 <= order:
            s.divide_by_one_minus(0, i + 1)  # T
        if i + 2 <= order:
            s.divide_by_one_minus(0, i + 2)  # W
    return TruncatedSeries(order, tuple(Fraction(c) for c in s.z_coefficient(n)), f"q^({n} - c/24)")


@dataclass(frozen=True)
class ConvergenceReport:
    order: int
    #: least n from which every probed n agrees with the limit
    n0: int
    probed: tuple[int, int]
    #: (q-power, BP coefficient, limit coefficient) of the first difference at n = 0
    witness: tuple[int, Fraction, Fraction] | None
    target: TruncatedSeries

    def to_json(self) -> dict:
        out = {
            "order": self.order,
            "n0": self.n0,
            "probed": list(self.probed),
            "target": self.target.to_json(),
        }
        if self.witness is not None:
            d, a, b = self.witness
            out["witness"] = {"n": 0, "q_power": d, "bp": fmt(a), "target": fmt(b)}
        return out


def check_string_convergence(order: int, n_max: int | None = None) -> ConvergenceReport:
    """Find where the BP string functions reach their limit at a given order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if n_max is None:
        n_max = 2 * order + 2
    target = string_fn_target(0, order)
    agree = {n: bp_string_fn(n, order).coeffs == target.coeffs for n in range(0, n_max + 1)}
    n0 = n_max + 1
    while n0 > 0 and agree[n0 - 1]:
        n0 -= 1
    witness = None
    at0 = bp_string_fn(0, order).coeffs
    for d, (a, b) in enumerate(zip(at0, target.coeffs)):
        if a != b:
            witness = (d, a, b)
            break
    return ConvergenceReport(order, n0, (0, n_max), witness, target)
