"""Fock modules of the half-lattice vertex algebra Pi.

Pi is generated by the Heisenberg fields ``c`` and ``d`` with
``<c,d> = 2`` and ``<c,c> = <d,d> = 0`` together with the exponentials
``e^{nc}``.  A basis vector is ``PiKey(ell, mu, cpart, dpart)``, standing for

    c_{-i1} c_{-i2} ... d_{-j1} ... e^{ell b + mu c},

with ``b = (d + kappa c) / 2`` and oscillator indices stored as weakly
decreasing tuples of positive integers.  Vertex operators of vacuum-sector
states ``P(c, d) e^{nc}`` are evaluated with free-field normal ordering and
the trivial cocycle.
"""

from __future__ import annotations

import re
from gmpy2 import mpq
from itertools import product
from math import comb, factorial
from typing import NamedTuple

from ..errors import TruncationOverflow
from .fields import ModeAction, State, add_into, deriv, gbinom, no, prune


class PiKey(NamedTuple):
    ell: int
    mu: mpq
    cpart: tuple[int, ...] = ()
    dpart: tuple[int, ...] = ()

    @property
    def depth(self) -> int:
        return sum(self.cpart) + sum(self.dpart)


#: A vacuum-sector state: list of ``(coef, n, cpart, dpart)`` meaning
#: ``coef * c_{-cpart} d_{-dpart} e^{nc}``.
VacuumState = tuple[tuple[mpq, int, tuple[int, ...], tuple[int, ...]], ...]


def _insert(part: tuple[int, ...], i: int) -> tuple[int, ...]:
    return tuple(sorted(part + (i,), reverse=True))


def _remove(part: tuple[int, ...], i: int, times: int = 1) -> tuple[int, ...]:
    out = list(part)
    for _ in range(times):
        out.remove(i)
    return tuple(out)


def _partitions(total: int, largest: int | None = None):
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def heis_monomial(factors) -> list[tuple[mpq, tuple[int, ...], tuple[int, ...]]]:
    """Expand ``prod (x c_{-i} + y d_{-i})`` over ``factors = [(x, y, i), ...]``."""
    acc: dict[tuple, mpq] = {((), ()): mpq(1)}
    for x, y, i in factors:
        nxt: dict[tuple, mpq] = {}
        for (cp, dp), coef in acc.items():
            for scale, key in ((x, (_insert(cp, i), dp)), (y, (cp, _insert(dp, i)))):
                if scale:
                    nxt[key] = nxt.get(key, 0) + coef * scale
        acc = {k: v for k, v in nxt.items() if v}
    return [(coef, cp, dp) for (cp, dp), coef in sorted(acc.items())]


_EXP_FIELD = re.compile(r"^e\^\{?(-?\d*)c\}?$")


def parse_exp_field(name: str) -> int | None:
    """``"e^{c}" -> 1``, ``"e^{-2c}" -> -2``; ``None`` if ``name`` is not an exponential."""
    m = _EXP_FIELD.match(name.replace(" ", ""))
    if not m:
        return None
    n = m.group(1)
    return {"": 1, "-": -1}[n] if n in ("", "-") else int(n)


class PiModule(ModeAction):
    """Mode action of Pi on the direct sum of its Fock modules, at fixed ``kappa``."""

    weights = {"c": 1, "d": 1, "a": 1, "b": 1, "t": 2}

    def __init__(self, kappa: mpq, truncation: int | None = None):
        self.kappa = mpq(kappa)
        self.truncation = truncation
        half = mpq(1, 2)
        #: Heisenberg fields as (x, y) in h = x c + y d
        self.heis = {
            "c": (mpq(1), mpq(0)),
            "d": (mpq(0), mpq(1)),
            "a": (-self.kappa * half, half),
            "b": (self.kappa * half, half),
        }
        self.t_combo = [(half, no("c", "d")), (self.kappa, deriv("c")), (-half, deriv("d"))]
        self._cache: dict = {}
        self._ann_cache: dict = {}
        self._cre_cache: dict = {}

    # ---- basic data ------------------------------------------------------

    def weight(self, key: PiKey) -> mpq:
        """L_0 eigenvalue: ``mu (ell + 1) + kappa ell (ell - 1) / 2`` plus the oscillator depth."""
        ell, mu = key.ell, key.mu
        return mu * (ell + 1) + self.kappa * ell * (ell - 1) / 2 + key.depth

    def charge(self, key: PiKey) -> mpq:
        """Eigenvalue of ``b_0``."""
        return key.ell * self.kappa + key.mu

    def pairing(self, x: mpq, y: mpq, key: PiKey) -> mpq:
        """``<x c + y d, beta>`` for the lattice point of ``key``."""
        return x * key.ell + y * (key.ell * self.kappa + 2 * key.mu)

    def mode_bound(self, key: PiKey) -> int:
        return key.depth

    def _checked(self, key: PiKey) -> PiKey:
        if self.truncation is not None and key.depth > self.truncation:
            raise TruncationOverflow(f"oscillator depth {key.depth} exceeds truncation {self.truncation}")
        return key

    # ---- Heisenberg modes ------------------------------------------------

    def heis_mode(self, x: mpq, y: mpq, m: int, key: PiKey) -> State:
        if m == 0:
            val = self.pairing(x, y, key)
            return {key: val} if val else {}
        if m < 0:
            out: State = {}
            if x:
                out[self._checked(PiKey(key.ell, key.mu, _insert(key.cpart, -m), key.dpart))] = x
            if y:
                out[self._checked(PiKey(key.ell, key.mu, key.cpart, _insert(key.dpart, -m)))] = y
            return out
        out = {}
        # c_m removes d_{-m}; d_m removes c_{-m}; both with factor 2m per copy
        mult_d = key.dpart.count(m)
        if x and mult_d:
            out[PiKey(key.ell, key.mu, key.cpart, _remove(key.dpart, m))] = 2 * m * x * mult_d
        mult_c = key.cpart.count(m)
        if y and mult_c:
            k2 = PiKey(key.ell, key.mu, _remove(key.cpart, m), key.dpart)
            out[k2] = out.get(k2, 0) + 2 * m * y * mult_c
        return out

    def apply_gen(self, name: str, m: int, key: PiKey) -> State:
        ck = (name, m, key)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        if name in self.heis:
            res = self.heis_mode(*self.heis[name], m, key)
        elif name == "t":
            res = self.apply_combo(self.t_combo, m, key)
        else:
            n = parse_exp_field(name)
            if n is None:
                raise KeyError(f"unknown Pi field {name!r}")
            res = self.vertex_mode(((mpq(1), n, (), ()),), m, key)
        res = prune(res)
        self._cache[ck] = res
        return res

    # ---- general vertex operators ---------------------------------------

    @staticmethod
    def state_weight(term) -> int:
        _, n, cp, dp = term
        return n + sum(cp) + sum(dp)

    def vertex_mode(self, state: VacuumState, p: int, key: PiKey) -> State:
        """Mode ``p`` (weight labelling) of the vertex operator of a homogeneous vacuum-sector state."""
        out: State = {}
        for term in state:
            add_into(out, self._vertex_mode_term(term, p, key))
        return prune(out)

    def vertex_bound(self, state: VacuumState, key: PiKey) -> int:
        """Every mode ``p`` above this bound annihilates ``key``."""
        best = None
        for term in state:
            _, n, cp, dp = term
            b = -self.state_weight(term) - n * key.ell + key.depth + sum(cp) + sum(dp)
            best = b if best is None else max(best, b)
        return best if best is not None else 0

    def _vertex_mode_term(self, term, p: int, key: PiKey) -> State:
        n = term[1]
        target = -p - self.state_weight(term)  # wanted power of z
        out: State = {}
        for cre, e, shifted, coef in self._annihilated(term, key):
            need = target - e
            if need >= 0:
                add_into(out, self._creation(n, cre, need, shifted), coef)
        return out

    def _annihilated(self, term, key: PiKey) -> list:
        """Everything right of the creation operators, as ``(creation factors, z-power, key, coef)``.

        The lattice shift ``e^{nc}`` and ``z^{<nc, beta>}`` are already applied.
        """
        ck = (term, key)
        hit = self._ann_cache.get(ck)
        if hit is not None:
            return hit
        coef, n, cp, dp = term
        factors = [("c", i) for i in cp] + [("d", i) for i in dp]
        res = []
        for mask in product((False, True), repeat=len(factors)):
            ann = [f for f, on in zip(factors, mask) if on]
            cre = tuple(f for f, on in zip(factors, mask) if not on)
            stage: dict[int, State] = {0: {key: mpq(coef)}}
            for name, i in ann:
                x, y = self.heis[name]
                nxt: dict[int, State] = {}
                for e, st in stage.items():
                    depth = max(k.depth for k in st)
                    for m in range(0, depth + 1):
                        b = gbinom(-m - 1, i - 1)
                        for k2, c2 in st.items():
                            r = self.heis_mode(x, y, m, k2)
                            if r:
                                add_into(nxt.setdefault(e - m - i, {}), r, b * c2)
                stage = {e: st for e, st in ((e, prune(st)) for e, st in nxt.items()) if st}
            for e, st in self._apply_eplus(n, stage).items():
                for k2, c2 in st.items():
                    shifted = PiKey(k2.ell, k2.mu + n, k2.cpart, k2.dpart)
                    res.append((cre, e + n * k2.ell, shifted, c2))
        self._ann_cache[ck] = res
        return res

    def _apply_eplus(self, n: int, stage: dict[int, State]) -> dict[int, State]:
        """``exp(-sum_{m>0} (nc)_m z^{-m} / m)``; each removal of ``k`` copies of ``d_{-m}``
        carries ``(-2n)^k binom(r, k)``."""
        if n == 0:
            return stage
        nxt: dict[int, State] = {}
        for e, st in stage.items():
            for k2, c2 in st.items():
                options = []
                for m in sorted(set(k2.dpart)):
                    r = k2.dpart.count(m)
                    options.append([(m, k, mpq((-2 * n) ** k * comb(r, k))) for k in range(r + 1)])
                for choice in product(*options):
                    dp = k2.dpart
                    scale = c2
                    drop = 0
                    for m, k, f in choice:
                        if k:
                            dp = _remove(dp, m, k)
                        scale *= f
                        drop += m * k
                    tgt = nxt.setdefault(e - drop, {})
                    add_into(tgt, {PiKey(k2.ell, k2.mu, k2.cpart, dp): scale})
        return {e: st for e, st in ((e, prune(st)) for e, st in nxt.items()) if st}

    def _creation(self, n: int, cre, need: int, key: PiKey) -> State:
        """Creation factors and ``exp(sum (nc)_{-m} z^m / m)`` contributing exactly ``z^need``."""
        ck = (n, cre, need, key)
        hit = self._cre_cache.get(ck)
        if hit is not None:
            return hit
        out: State = {}
        for exps in product(range(need + 1), repeat=len(cre)):
            rest = need - sum(exps)
            if rest < 0:
                continue
            cp, dp = list(key.cpart), list(key.dpart)
            scale = mpq(1)
            for (name, i), e_f in zip(cre, exps):
                # h_{-(e_f + i)} enters d^{(i-1)} h(z) with coefficient binom(e_f + i - 1, i - 1) z^{e_f}
                scale *= comb(e_f + i - 1, i - 1)
                (cp if name == "c" else dp).append(e_f + i)
            if rest and not n:
                continue
            for lam in _partitions(rest):
                s = scale
                for part in set(lam):
                    k = lam.count(part)
                    s *= mpq(n, part) ** k / factorial(k)
                k2 = PiKey(
                    key.ell,
                    key.mu,
                    tuple(sorted(cp + list(lam), reverse=True)),
                    tuple(sorted(dp, reverse=True)),
                )
                add_into(out, {self._checked(k2): s})
        out = prune(out)
        self._cre_cache[ck] = out
        return out


def pi_apply_mode(module: PiModule, field: str, m: int, state: State) -> State:
    """Apply the mode ``field_m`` (``c``, ``d``, ``a``, ``b``, ``t`` or ``e^{nc}``) to a Pi state."""
    return module.apply_gen_state(field, m, state)
