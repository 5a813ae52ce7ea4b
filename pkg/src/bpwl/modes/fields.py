"""Field expressions, OPE tables and the mode commutator formula.

A field expression is one of

* ``ONE``                  the identity field,
* ``("g", X)``             a generator,
* ``("d", k, X)``          the k-th derivative of a generator or of an expression,
* ``("no", X, Y)``         the normal-ordered product ``:XY:``.

An OPE table maps an ordered generator pair ``(A, B)`` to ``{j: combo}``
where ``combo`` lists ``(coefficient, expression)`` pairs giving
``A_{(j)} B``.  Modes use the conformal-weight labelling
``X(z) = sum_m X_m z^{-m-h_X}``.
"""

from __future__ import annotations

from gmpy2 import mpq
from math import factorial
from typing import Mapping, Sequence

State = dict  # basis key -> mpq
Expr = tuple
Combo = Sequence[tuple[mpq, Expr]]

ONE: Expr = ("1",)


def g(x: str) -> Expr:
    return ("g", x)


def deriv(x: str | Expr, k: int = 1) -> Expr:
    return ("d", k, x)


def no(x: str, y: str) -> Expr:
    return ("no", x, y)


def gbinom(x, j: int) -> mpq:
    """Generalised binomial coefficient for integer or rational ``x``."""
    num = mpq(1)
    for i in range(j):
        num *= x - i
    return num / factorial(j)


def add_into(dst: State, src: Mapping, scale=1) -> None:
    """``dst += scale * src``.  Cancelled entries stay as zeros; see :func:`prune`."""
    get = dst.get
    if scale == 1:
        for key, c in src.items():
            dst[key] = get(key, 0) + c
    else:
        for key, c in src.items():
            dst[key] = get(key, 0) + scale * c


def prune(state: Mapping) -> State:
    return {k: c for k, c in state.items() if c}


def scaled(src: Mapping, scale) -> State:
    if not scale:
        return {}
    return {k: scale * c for k, c in src.items()}


def expr_weight(expr: Expr, weights: Mapping[str, int]) -> int:
    tag = expr[0]
    if tag == "1":
        return 0
    if tag == "g":
        return weights[expr[1]]
    if tag == "d":
        inner = expr[2]
        base = expr_weight(inner, weights) if isinstance(inner, tuple) else weights[inner]
        return base + expr[1]
    return weights[expr[1]] + weights[expr[2]]


class ModeAction:
    """Mixin evaluating modes of field expressions on a module.

    Subclasses provide ``weights``, ``apply_gen(name, m, key)`` and
    ``mode_bound(key)``: an integer ``M`` such that every generator mode
    ``X_m`` with ``m > M`` annihilates the basis vector ``key``.
    """

    weights: Mapping[str, int]

    def apply_gen(self, name: str, m: int, key) -> State:  # pragma: no cover - abstract
        raise NotImplementedError

    def mode_bound(self, key) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def apply_gen_state(self, name: str, m: int, state: Mapping) -> State:
        out: State = {}
        for key, c in state.items():
            add_into(out, self.apply_gen(name, m, key), c)
        return prune(out)

    def apply_expr(self, expr: Expr, m: int, key) -> State:
        tag = expr[0]
        if tag == "1":
            return {key: mpq(1)} if m == 0 else {}
        if tag == "g":
            return self.apply_gen(expr[1], m, key)
        if tag == "d":
            k, x = expr[1], expr[2]
            composite = isinstance(x, tuple)
            h = expr_weight(x, self.weights) if composite else self.weights[x]
            coef = mpq((-1) ** k)
            for i in range(k):
                coef *= m + h + i
            if not coef:
                return {}
            inner = self.apply_expr(x, m, key) if composite else self.apply_gen(x, m, key)
            return scaled(inner, coef)
        # normal-ordered product: modes A_p with p <= -h_A stand to the left
        a, b = expr[1], expr[2]
        ha = self.weights[a]
        bound = self.mode_bound(key)
        out: State = {}
        for p in range(m - bound, -ha + 1):
            inner = self.apply_gen(b, m - p, key)
            if inner:
                add_into(out, self.apply_gen_state(a, p, inner))
        for p in range(-ha + 1, bound + 1):
            inner = self.apply_gen(a, p, key)
            if inner:
                add_into(out, self.apply_gen_state(b, m - p, inner))
        return prune(out)

    def apply_combo(self, combo: Combo, m: int, key) -> State:
        out: State = {}
        for coef, expr in combo:
            if coef:
                add_into(out, self.apply_expr(expr, m, key), coef)
        return prune(out)


def commutator_terms(
    table: Mapping[tuple[str, str], Mapping[int, Combo]],
    weights: Mapping[str, int],
    a: str,
    m: int,
    b: str,
    n: int,
) -> list[tuple[mpq, Expr, int]]:
    """``[A_m, B_n]`` as a list of ``(coefficient, expression, mode)``.

    Pairs missing from the table are taken from the reversed pair by
    antisymmetry, or commute if neither is present.
    """
    if (a, b) in table:
        sign, (x, mx), ope = 1, (a, m), table[(a, b)]
    elif (b, a) in table:
        sign, (x, mx), ope = -1, (b, n), table[(b, a)]
    else:
        return []
    out = []
    for j, combo in ope.items():
        c = gbinom(mx + weights[x] - 1, j)
        if c:
            for coef, expr in combo:
                out.append((sign * c * coef, expr, m + n))
    return out


def apply_terms(module: ModeAction, terms, key) -> State:
    out: State = {}
    for coef, expr, mode in terms:
        add_into(out, module.apply_expr(expr, mode, key), coef)
    return prune(out)


def apply_terms_state(module: ModeAction, terms, state: Mapping) -> State:
    out: State = {}
    for key, c in state.items():
        add_into(out, apply_terms(module, terms, key), c)
    return prune(out)

