"""Verma modules of the W3 algebra with exact rational mode action.

The rescaled generator ``W_hat = alpha_k W`` is used throughout, so all
structure constants are rational.  Basis vectors are PBW monomials
``W_{-m1} ... W_{-mr} T_{-n1} ... T_{-ns} v`` stored as tuples of
``(kind, mode)`` with kind 0 for W and 1 for T, sorted ascending (W-modes
first, most negative mode first within each kind).
"""

from __future__ import annotations

from gmpy2 import mpq

from ..bpcore import Level
from .lattice import _partitions
from .fields import ONE, ModeAction, State, add_into, apply_terms, commutator_terms, deriv, g, no, prune

W3Key = tuple[tuple[int, int], ...]

_KIND = {"W": 0, "T": 1}
_NAME = ("W", "T")
WEIGHTS = {"T": 2, "W": 3}


def lam_combo(scale=mpq(1)):
    """``scale * Lambda`` with ``Lambda = :TT: - (3/10) d^2 T``."""
    return [(scale, no("T", "T")), (-mpq(3, 10) * scale, deriv("T", 2))]


def w3_ope_table(level: Level) -> dict:
    c, a, al2 = mpq(level.c_w3), mpq(level.a_k), mpq(level.alpha_sq)
    tt = no("T", "T")
    return {
        ("T", "T"): {3: [(c / 2, ONE)], 1: [(mpq(2), g("T"))], 0: [(mpq(1), deriv("T"))]},
        ("T", "W"): {1: [(mpq(3), g("W"))], 0: [(mpq(1), deriv("W"))]},
        ("W", "W"): {
            5: [(al2 * a * c / 3, ONE)],
            3: [(2 * al2 * a, g("T"))],
            2: [(al2 * a, deriv("T"))],
            1: lam_combo(2 * al2) + [(al2 * a * mpq(3, 10), deriv("T", 2))],
            0: [
                (al2, deriv(tt)),
                (-al2 * mpq(3, 10), deriv("T", 3)),
                (al2 * a / 15, deriv("T", 3)),
            ],
        },
    }


def w3_depth(key: W3Key) -> int:
    return -sum(m for _, m in key)


class W3Verma(ModeAction):
    """Verma module with highest weight ``(h, w_hat)``: ``T_0 v = h v``, ``W_hat_0 v = w_hat v``."""

    weights = WEIGHTS

    def __init__(self, level: Level, h, w_hat):
        self.level = level
        self.h = mpq(h)
        self.w_hat = mpq(w_hat)
        self.table = w3_ope_table(level)
        self._cache: dict = {}
        self._terms: dict = {}

    def mode_bound(self, key: W3Key) -> int:
        return w3_depth(key)

    def bracket(self, a: str, m: int, b: str, n: int):
        ck = (a, m, b, n)
        hit = self._terms.get(ck)
        if hit is None:
            hit = commutator_terms(self.table, self.weights, a, m, b, n)
            self._terms[ck] = hit
        return hit

    def apply_gen(self, name: str, n: int, key: W3Key) -> State:
        ck = (name, n, key)
        hit = self._cache.get(ck)
        if hit is None:
            hit = prune(self._apply(name, n, key))
            self._cache[ck] = hit
        return hit

    def _apply(self, name: str, n: int, key: W3Key) -> State:
        kind = _KIND[name]
        if not key:
            if n > 0:
                return {}
            if n == 0:
                val = self.h if kind else self.w_hat
                return {key: val} if val else {}
            return {((kind, n),): mpq(1)}
        if n < 0 and (kind, n) <= key[0]:
            return {((kind, n),) + key: mpq(1)}
        # X_n Y R = Y (X_n R) + [X_n, Y] R
        (ykind, ym), rest = key[0], key[1:]
        yname = _NAME[ykind]
        out: State = {}
        for k2, c2 in self.apply_gen(name, n, rest).items():
            add_into(out, self.apply_gen(yname, ym, k2), c2)
        add_into(out, apply_terms(self, self.bracket(name, n, yname, ym), rest))
        return out

    def jacobi_residual(self, x, y, z, key: W3Key) -> State:
        """``sum_cyclic [X_l, [Y_m, Z_n]]`` on ``key``, inner brackets from the OPE table.

        Each argument is a ``(name, mode)`` pair.
        """
        out: State = {}
        for (a, l), (b, m), (c, n) in ((x, y, z), (y, z, x), (z, x, y)):
            inner = self.bracket(b, m, c, n)
            # X_l (B key) - B (X_l key)
            for k2, c2 in apply_terms(self, inner, key).items():
                add_into(out, self.apply_gen(a, l, k2), c2)
            for k2, c2 in self.apply_gen(a, l, key).items():
                add_into(out, apply_terms(self, inner, k2), -c2)
        return prune(out)


def w3_basis(grade: int) -> list[W3Key]:
    """All PBW monomials of depth at most ``grade``."""
    out = []
    for d in range(grade + 1):
        for dw in range(d + 1):
            for pw in _partitions(dw):
                for pt in _partitions(d - dw):
                    out.append(tuple((0, -i) for i in pw) + tuple((1, -i) for i in pt))
    return out


def w3_apply_mode(module: W3Verma, field: str, m: int, state: State) -> State:
    """Apply ``T_m``, ``W_m`` or ``Lambda_m`` to a state of the Verma module."""
    if field == "Lambda":
        out: State = {}
        for key, c in state.items():
            add_into(out, module.apply_combo(lam_combo(), m, key), c)
        return prune(out)
    return module.apply_gen_state(field, m, state)
