"""Exact scalars: rationals, the function field Q(k), and polynomials over it.

Rationals are :class:`fractions.Fraction`.  The level field ``Q(k)`` and the
multivariate polynomial ring over it are sympy's sparse ``field``/``ring``
implementations; everything leaving this module is converted back to
``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

from sympy import QQ, divisors
from sympy.polys.fields import FracElement, field
from sympy.polys.rings import PolyElement, ring

from .errors import LevelPole, UnboundVariable

RationalLike = Union[Fraction, int, str]

#: The rational function field Q(k) in the level symbol.
KField, k_sym = field("k", QQ)

#: Variables available to symbolic identities.
VARIABLES = ("j", "h", "Delta", "w_hat", "lam", "m", "n")
Ring, j_sym, h_sym, Delta_sym, w_hat_sym, lam_sym, m_sym, n_sym = ring(",".join(VARIABLES), KField)


def Q(x: RationalLike, den: int | None = None) -> Fraction:
    """Coerce ``x`` (int, Fraction, "p/q" string, gmpy mpq) to a Fraction."""
    if den is not None:
        return Fraction(x, den)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    # Fraction() also accepts decimals and exponents; only p or p/q is allowed.
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def fmt(x: RationalLike) -> str:
    """Render a rational as ``"p/q"``, or ``"p"`` when integral."""
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_div(a: RationalLike, b: RationalLike) -> Fraction:
    b = Q(b)
    if b == 0:
        raise ZeroDivisionError(f"division of {fmt(a)} by zero")
    return Q(a) / b


def mod1(x: RationalLike) -> Fraction:
    """Canonical coset representative of ``x + Z`` in ``[0, 1)``."""
    x = Q(x)
    return x - (x.numerator // x.denominator)


def same_coset(a: RationalLike, b: RationalLike) -> bool:
    return (Q(a) - Q(b)).denominator == 1


# --------------------------------------------------------------------------
# Q(k) and polynomials over it


def ratfunc(expr) -> FracElement:
    """Lift an int/Fraction/polynomial in ``k_sym`` into ``KField``."""
    if isinstance(expr, FracElement):
        return expr
    if isinstance(expr, Fraction):
        return KField(QQ(expr.numerator, expr.denominator))
    return KField(expr)


def ratfunc_eval(f, level: RationalLike) -> Fraction:
    """Evaluate an element of ``Q(k)`` at ``k = level``."""
    level = Q(level)
    f = ratfunc(f)
    x = QQ(level.numerator, level.denominator)
    den = f.denom.evaluate(f.denom.ring.gens[0], x) if f.denom.ring.ngens else f.denom
    if den == 0:
        raise LevelPole(f"k = {fmt(level)} is a pole of {f}")
    num = f.numer.evaluate(f.numer.ring.gens[0], x) if f.numer.ring.ngens else f.numer
    return Q(num) / Q(den)


def mpoly_eval(p, bindings: Mapping[str, RationalLike], level: RationalLike) -> Fraction:
    """Evaluate ``p`` (a ``Ring`` element or ``KField`` constant) exactly."""
    if not isinstance(p, PolyElement) or p.ring is not Ring:
        return ratfunc_eval(p, level)
    names = [str(g) for g in Ring.gens]
    total = Fraction(0)
    for monom, coeff in p.terms():
        term = ratfunc_eval(coeff, level)
        for name, e in zip(names, monom):
            if e:
                if name not in bindings:
                    raise UnboundVariable(name)
                term *= Q(bindings[name]) ** e
        total += term
    return total


def poly_in(p: PolyElement, var: PolyElement) -> list:
    """Coefficients of ``p`` as a polynomial in ``var``, lowest degree first.

    Coefficients are ``Ring`` elements free of ``var``.
    """
    idx = Ring.gens.index(var)
    deg = p.degree(var)
    out = [Ring.zero] * (max(deg, 0) + 1)
    for monom, coeff in p.terms():
        rest = list(monom)
        e = rest[idx]
        rest[idx] = 0
        out[e] += Ring({tuple(rest): coeff})
    return out


# --------------------------------------------------------------------------
# rational roots of univariate polynomials with rational coefficients


def _synthetic_div(coeffs: list[Fraction], r: Fraction) -> tuple[list[Fraction], Fraction]:
    """Divide (descending coeffs) by ``x - r``; return quotient and remainder."""
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + out[-1] * r)
    return out[:-1], out[-1]


def _candidates(coeffs: list[Fraction]) -> list[Fraction]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    lead, const = abs(ints[0]), abs(ints[-1])
    cands = set()
    for p in divisors(const):
        for q in divisors(lead):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    return sorted(cands)


def rational_roots(coeffs: Sequence[RationalLike]) -> tuple[list[Fraction], list[Fraction]]:
    """All rational roots (with multiplicity) of a polynomial.

    ``coeffs`` are given highest degree first.  Returns ``(roots, residual)``
    where ``roots`` is sorted and ``residual`` (descending coefficients) is
    the cofactor, which has no rational roots.
    """
    cs = [Q(c) for c in coeffs]
    while cs and cs[0] == 0:
        cs.pop(0)
    if not cs:
        raise ValueError("the zero polynomial has no well-defined roots")
    roots: list[Fraction] = []
    while len(cs) > 1 and cs[-1] == 0:
        roots.append(Fraction(0))
        cs.pop()
    if len(cs) > 1:
        for r in _candidates(cs):
            while len(cs) > 1:
                quo, rem = _synthetic_div(cs, r)
                if rem != 0:
                    break
                roots.append(r)
                cs = quo
    return sorted(roots), cs


def rational_roots_cubic(coeffs: Sequence[RationalLike]) -> tuple[list[Fraction], list[Fraction]]:
    if len(coeffs) != 4:
        raise ValueError("a cubic needs exactly four coefficients")
    if Q(coeffs[0]) == 0:
        raise ValueError("leading coefficient of a cubic must be nonzero")
    return rational_roots(coeffs)


def expand_roots(roots: Iterable[RationalLike], lead: RationalLike = 1) -> list[Fraction]:
    """Descending coefficients of ``lead * prod(x - r)``."""
    cs = [Q(lead)]
    for r in roots:
        r = Q(r)
        cs = [a - r * b for a, b in zip(cs + [Fraction(0)], [Fraction(0)] + cs)]
    return cs


def poly_value(coeffs: Sequence[RationalLike], x: RationalLike) -> Fraction:
    """Horner evaluation of descending coefficients."""
    x = Q(x)
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + Q(c)
    return acc
