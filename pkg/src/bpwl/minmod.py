"""Spectra of the W3 minimal models and of the singlet algebra at k = -7/3.

Irreducible modules of the W3 minimal model with ``k + 3 = u/v`` are
labelled by orbits of pairs of triples ``(r, s)`` (sums ``u - 3`` and
``v - 3``) under the simultaneous cyclic shift :func:`nabla`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import Poly, QQ, Symbol

from .bpcore import Level, level_data, relaxed_cubic_coeffs
from .errors import DomainError, OutOfScopeLevel
from .scalars import Q, RationalLike, expand_roots, fmt, rational_roots

Triple = tuple[int, int, int]
Pair = tuple[Triple, Triple]


def pwlat_enum(total: int) -> list[Triple]:
    """All nonnegative integer triples summing to ``total``, in lexicographic order."""
    if total < 0:
        raise ValueError("total must be nonnegative")
    return [(a, b, total - a - b) for a in range(total + 1) for b in range(total - a + 1)]


def nabla(pair: Pair) -> Pair:
    (r0, r1, r2), (s0, s1, s2) = pair
    return ((r2, r0, r1), (s2, s0, s1))


def orbit_of(pair: Pair) -> list[Pair]:
    """The distinct elements of the cyclic orbit of ``pair``, starting with it."""
    out = [pair]
    nxt = nabla(pair)
    while nxt != pair:
        out.append(nxt)
        nxt = nabla(nxt)
    return out


def _check_nondegenerate(u: int, v: int) -> None:
    if gcd(u, v) != 1:
        raise DomainError(f"u = {u} and v = {v} are not coprime")
    if u < 3 or v < 3:
        raise OutOfScopeLevel(
            f"(u, v) = ({u}, {v}) is not a nondegenerate admissible level; "
            "triple-pair labels need u, v >= 3"
        )


@dataclass(frozen=True, order=True)
class OrbitLabel:
    """Lexicographically least representative of a cyclic orbit, with the orbit size."""

    rep: Pair
    size: int

    @classmethod
    def of(cls, pair: Pair) -> "OrbitLabel":
        orb = orbit_of(pair)
        return cls(min(orb), len(orb))

    def members(self) -> list[Pair]:
        return orbit_of(self.rep)


def z3_orbit_reps(u: int, v: int) -> list[OrbitLabel]:
    _check_nondegenerate(u, v)
    seen: set[Pair] = set()
    labels = []
    for r in pwlat_enum(u - 3):
        for s in pwlat_enum(v - 3):
            if (r, s) in seen:
                continue
            orb = orbit_of((r, s))
            seen.update(orb)
            labels.append(OrbitLabel(min(orb), len(orb)))
    return sorted(labels)


def pair_hw(pair: Pair, u: int, v: int) -> tuple[Fraction, Fraction]:
    """``(h, w_hat)`` of the W3 module labelled by ``pair``."""
    r, s = pair
    x1 = v * (r[1] + 1) - u * (s[1] + 1)
    x2 = v * (r[2] + 1) - u * (s[2] + 1)
    h = Fraction(x1 * x2 + x1**2 + x2**2 - 3 * (v - u) ** 2, 3 * u * v)

    def diff(a: int, b: int) -> int:
        return v * (r[a] - r[b]) - u * (s[a] - s[b])

    w_hat = Fraction(diff(0, 1) * diff(0, 2) * diff(1, 2), 27 * v**3)
    return h, w_hat


def orbit_hw(label: OrbitLabel | Pair, u: int, v: int) -> tuple[Fraction, Fraction]:
    _check_nondegenerate(u, v)
    pair = label.rep if isinstance(label, OrbitLabel) else label
    return pair_hw(pair, u, v)


def j_of_rs(pair: Pair, u: int, v: int) -> Fraction:
    """Charge at which the relaxed cubic of the orbit of ``pair`` vanishes."""
    r, s = pair
    return (r[2] - r[1] - Fraction(u, v) * (s[2] - s[1] - 1)) / 3


def orbit_j_roots(label: OrbitLabel, u: int, v: int) -> list[Fraction]:
    return sorted(j_of_rs(p, u, v) for p in orbit_of(label.rep) * (3 // label.size))


def cubic_factorization_holds(label: OrbitLabel, u: int, v: int) -> bool:
    """Check ``w_hat + P_k(j, h) == -prod (j - j_(r',s'))`` coefficientwise."""
    h, w_hat = orbit_hw(label, u, v)
    level = Level.from_pair(u, v)
    return relaxed_cubic_coeffs(h, w_hat, level) == expand_roots(orbit_j_roots(label, u, v), -1)


def minmod_table(u: int, v: int) -> dict:
    """JSON-ready spectrum table."""
    orbits = []
    for label in z3_orbit_reps(u, v):
        h, w_hat = orbit_hw(label, u, v)
        orbits.append(
            {
                "rep": [list(label.rep[0]), list(label.rep[1])],
                "h": fmt(h),
                "w_hat": fmt(w_hat),
                "j_roots": [fmt(j) for j in orbit_j_roots(label, u, v)],
            }
        )
    return {"u": u, "v": v, "orbits": orbits}


def minmod_table_json(u: int, v: int) -> str:
    return json.dumps(minmod_table(u, v), indent=2, sort_keys=True)


# --------------------------------------------------------------------------
# the singlet spectrum at (u, v) = (2, 3)

SINGLET_LEVEL: Level = level_data((2, 3))


def singlet_h(lam: RationalLike) -> Fraction:
    lam = Q(lam)
    return lam * (lam + 1) / 2


def singlet_w_hat(lam: RationalLike) -> Fraction:
    lam = Q(lam)
    return -lam * (lam + 1) * (2 * lam + 1) / 27


def singlet_roots(lam: RationalLike) -> list[Fraction]:
    """Roots in ``j`` of the relaxed cubic at the singlet point ``lam``."""
    lam = Q(lam)
    return sorted([(3 * lam + 5) / 9, (3 * lam + 2) / 9, -(6 * lam + 1) / 9])


@dataclass(frozen=True)
class Sigma23Match:
    lams: tuple[Fraction, ...]
    #: True when some solution lambda is irrational (its value is not reported).
    non_rational: bool


_LAM = Symbol("lam")


def sigma23_lookup(h: RationalLike, w_hat: RationalLike) -> Sigma23Match:
    """All ``lam`` with ``(h_lam, w_hat_lam) == (h, w_hat)``."""
    h, w_hat = Q(h), Q(w_hat)
    # h_lam = h  <=>  lam^2 + lam - 2h = 0
    quad = [Fraction(1), Fraction(1), -2 * h]
    # w_hat_lam = w_hat  <=>  2 lam^3 + 3 lam^2 + lam + 27 w_hat = 0
    cubic = [Fraction(2), Fraction(3), Fraction(1), 27 * w_hat]
    q_roots, q_rest = rational_roots(quad)
    c_roots, c_rest = rational_roots(cubic)
    lams = tuple(sorted(set(q_roots) & set(c_roots)))
    common = Poly([QQ(c.numerator, c.denominator) for c in q_rest], _LAM).gcd(
        Poly([QQ(c.numerator, c.denominator) for c in c_rest], _LAM)
    )
    return Sigma23Match(lams, common.degree() > 0)

