"""Bershadsky-Polyakov generators acting on Pi-modules tensored with W3 Verma modules.

The embedding is

    J  -> b (x) 1,        G+ -> e^{c} (x) 1,       L -> t (x) 1 + 1 (x) T,
    G- -> e^{-c} (x) (W_hat + (k+2)(k+3)/2 dT)
          + (k+3) a_{-1} e^{-c} (x) T
          - (a_{-1}^3 + 3(k+2) a_{-2} a_{-1} + 2(k+2)^2 a_{-3}) e^{-c} (x) 1.

Basis vectors are pairs ``(PiKey, W3Key)``; internally they are interned as
integers so that accumulating states hashes plain ints.  All modes use the conformal
weight labelling ``X(z) = sum X_m z^{-m-h_X}``.
"""

from __future__ import annotations

import gc
import os
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from gmpy2 import mpq
from itertools import combinations_with_replacement

from ..bpcore import Level, level_data
from ..errors import InvariantFailure, OutOfScopeLevel, TruncationOverflow
from ..scalars import fmt
from .fields import ONE, ModeAction, State, add_into, apply_terms_state, commutator_terms, deriv, g, no, prune
from .lattice import PiKey, PiModule, _partitions, heis_monomial
from .w3 import W3Verma, w3_basis, w3_depth

TensorKey = tuple[PiKey, tuple]

GENERATORS = ("J", "G+", "L", "G-")
WEIGHTS = {"J": 1, "G+": 1, "L": 2, "G-": 2}
CHARGES = {"J": 0, "G+": 1, "L": 0, "G-": -1}

NO_EMBEDDING = (
    "no embedding into Pi (x) W3 at this level: the minimal-model realisation "
    "is only available when k + 3 = u/v has v >= 3 (or no such pair)"
)


def bp_ope_table(level: Level) -> dict:
    k, kap = mpq(level.k), mpq(level.kappa)
    one = mpq(1)
    return {
        ("J", "J"): {1: [(kap, ONE)]},
        ("J", "G+"): {0: [(one, g("G+"))]},
        ("J", "G-"): {0: [(-one, g("G-"))]},
        ("L", "J"): {2: [(-kap, ONE)], 1: [(one, g("J"))], 0: [(one, deriv("J"))]},
        ("L", "G+"): {1: [(one, g("G+"))], 0: [(one, deriv("G+"))]},
        ("L", "G-"): {1: [(2 * one, g("G-"))], 0: [(one, deriv("G-"))]},
        ("L", "L"): {3: [(mpq(level.c_bp) / 2, ONE)], 1: [(2 * one, g("L"))], 0: [(one, deriv("L"))]},
        ("G+", "G-"): {
            2: [((k + 1) * (2 * k + 3), ONE)],
            1: [(3 * (k + 1), g("J"))],
            0: [(3 * one, no("J", "J")), (2 * k + 3, deriv("J")), (-(k + 3), g("L"))],
        },
    }


class EmbeddedModule(ModeAction):
    """``Pi-modules (x) M(h, w_hat)`` with the embedded BP action at a fixed level."""

    weights = WEIGHTS

    def __init__(self, level, h=0, w_hat=0, truncation: int | None = None):
        level = level_data(level)
        if not level.embedding_exists:
            raise OutOfScopeLevel(f"{NO_EMBEDDING}; got {level}")
        self.level = level
        self.truncation = truncation
        self.pi = PiModule(level.kappa, truncation)
        self.w3 = W3Verma(level, h, w_hat)
        self.table = bp_ope_table(level)
        k, kap = mpq(level.k), mpq(level.kappa)
        half = mpq(1, 2)
        ax, ay = -kap * half, half
        self.em = ((mpq(1), -1, (), ()),)
        self.a_em = tuple((coef, -1, cp, dp) for coef, cp, dp in heis_monomial([(ax, ay, 1)]))
        cubic = []
        for scale, factors in (
            (mpq(1), [(ax, ay, 1)] * 3),
            (3 * (k + 2), [(ax, ay, 2), (ax, ay, 1)]),
            (2 * (k + 2) ** 2, [(ax, ay, 3)]),
        ):
            cubic += [(scale * coef, -1, cp, dp) for coef, cp, dp in heis_monomial(factors)]
        merged: dict = {}
        for coef, n, cp, dp in cubic:
            merged[(n, cp, dp)] = merged.get((n, cp, dp), 0) + coef
        self.cubic_em = tuple((c, n, cp, dp) for (n, cp, dp), c in sorted(merged.items()) if c)
        self.dt_coef = (k + 2) * (k + 3) / 2
        self._cache: dict = {}
        self._pi_cache: dict = {}
        self._w_cache: dict = {}
        # interned factor keys; a tensor id is pid * STRIDE + wid
        self._pids: dict = {}
        self._pkeys: list[PiKey] = []
        self._wids: dict = {}
        self._wkeys: list = []

    # ---- interning -----------------------------------------------------------

    STRIDE = 1 << 32

    def _pid(self, pk: PiKey) -> int:
        i = self._pids.get(pk)
        if i is None:
            i = self._pids[pk] = len(self._pkeys)
            self._pkeys.append(pk)
        return i

    def _wid(self, wk) -> int:
        i = self._wids.get(wk)
        if i is None:
            i = self._wids[wk] = len(self._wkeys)
            self._wkeys.append(wk)
        return i

    def intern(self, key: TensorKey) -> int:
        return self._pid(key[0]) * self.STRIDE + self._wid(key[1])

    def key_of(self, i: int) -> TensorKey:
        pid, wid = divmod(i, self.STRIDE)
        return self._pkeys[pid], self._wkeys[wid]

    def to_ids(self, state) -> State:
        return {self.intern(k): mpq(c) for k, c in state.items()}

    def from_ids(self, state: State) -> dict:
        return {self.key_of(i): c for i, c in state.items()}

    # ---- gradings ----------------------------------------------------------

    def weight(self, key: TensorKey) -> mpq:
        return self.pi.weight(key[0]) + self.w3.h + w3_depth(key[1])

    def charge(self, key: TensorKey) -> mpq:
        return self.pi.charge(key[0])

    def depth(self, key: TensorKey) -> int:
        return key[0].depth + w3_depth(key[1])

    def mode_bound(self, i: int) -> int:
        return self.depth(self.key_of(i)) + 3

    # ---- factor actions, keyed by factor ids ---------------------------------

    def _pi_mode(self, name: str, m: int, pid: int) -> State:
        ck = (name, m, pid)
        hit = self._pi_cache.get(ck)
        if hit is None:
            res = self.pi.apply_gen(name, m, self._pkeys[pid])
            hit = self._pi_cache[ck] = {self._pid(k) * self.STRIDE: c for k, c in res.items()}
        return hit

    def _pi_vertex(self, tag: str, state, p: int, pid: int) -> State:
        ck = (tag, p, pid)
        hit = self._pi_cache.get(ck)
        if hit is None:
            res = self.pi.vertex_mode(state, p, self._pkeys[pid])
            hit = self._pi_cache[ck] = {self._pid(k) * self.STRIDE: c for k, c in res.items()}
        return hit

    def _w_mode(self, name: str, q: int, wid: int) -> State:
        ck = (name, q, wid)
        hit = self._w_cache.get(ck)
        if hit is None:
            res = self.w3.apply_gen(name, q, self._wkeys[wid])
            hit = self._w_cache[ck] = {self._wid(k): c for k, c in res.items()}
        return hit

    @staticmethod
    def _outer_into(out: State, pi_state: State, w_state: State, scale=1) -> None:
        get = out.get
        for pbase, a in pi_state.items():
            if scale != 1:
                a = a * scale
            for wid, b in w_state.items():
                i = pbase + wid
                out[i] = get(i, 0) + a * b

    # ---- generator action --------------------------------------------------

    def _check(self, out: State) -> State:
        if self.truncation is not None:
            for i in out:
                d = self.depth(self.key_of(i))
                if d > self.truncation:
                    raise TruncationOverflow(f"grade {d} exceeds truncation {self.truncation}")
        return out

    def apply_gen(self, name: str, m: int, i: int) -> State:
        """Mode ``name_m`` on the interned basis vector ``i``; the result uses ids too."""
        ck = (name, m, i)
        hit = self._cache.get(ck)
        if hit is None:
            hit = self._check(prune(self._apply(name, m, i)))
            self._cache[ck] = hit
        return hit

    def apply_gen_state(self, name: str, m: int, state) -> State:
        out: State = {}
        get = out.get
        cache = self._cache
        for i, c in state.items():
            res = cache.get((name, m, i))
            if res is None:
                res = self.apply_gen(name, m, i)
            if c == 1:
                for k, v in res.items():
                    out[k] = get(k, 0) + v
            else:
                for k, v in res.items():
                    out[k] = get(k, 0) + c * v
        return prune(out)

    def act(self, name: str, m: int, state) -> dict:
        """Mode ``name_m`` on a state keyed by ``(PiKey, W3Key)`` pairs."""
        return self.from_ids(self.apply_gen_state(name, m, self.to_ids(state)))

    def _apply(self, name: str, m: int, i: int) -> State:
        pid, wid = divmod(i, self.STRIDE)
        out: State = {}
        if name == "J":
            self._outer_into(out, self._pi_mode("b", m, pid), {wid: 1})
        elif name == "G+":
            self._outer_into(out, self._pi_mode("e^{c}", m, pid), {wid: 1})
        elif name == "L":
            self._outer_into(out, self._pi_mode("t", m, pid), {wid: 1})
            self._outer_into(out, {pid * self.STRIDE: 1}, self._w_mode("T", m, wid))
        elif name == "G-":
            self._gminus(out, m, pid, wid)
        else:
            raise KeyError(f"unknown generator {name!r}")
        return out

    def _gminus(self, out: State, m: int, pid: int, wid: int) -> None:
        pk, wk = self._pkeys[pid], self._wkeys[wid]
        k3 = mpq(self.level.k) + 3
        lo = m - w3_depth(wk)  # W3 modes above the depth annihilate
        for tag, state, parts in (
            ("e", self.em, (("W", 0, mpq(1)), ("T", 1, self.dt_coef))),
            ("ae", self.a_em, (("T", 0, k3),)),
        ):
            for p in range(lo, self.pi.vertex_bound(state, pk) + 1):
                pi_res = self._pi_vertex(tag, state, p, pid)
                if not pi_res:
                    continue
                q = m - p
                w_res: State = {}
                for field, nder, scale in parts:
                    coef = -scale * (q + 2) if nder else scale  # (dT)_q = -(q + 2) T_q
                    if coef:
                        add_into(w_res, self._w_mode(field, q, wid), coef)
                self._outer_into(out, pi_res, prune(w_res))
        self._outer_into(out, self._pi_vertex("cubic", self.cubic_em, m, pid), {wid: 1}, -1)


def bp_apply_generator(gen: str, m: int, state: State, module: EmbeddedModule) -> State:
    if gen not in WEIGHTS:
        raise KeyError(f"unknown generator {gen!r}; expected one of {', '.join(GENERATORS)}")
    return module.act(gen, m, state)


# --------------------------------------------------------------------------
# commutation checks


@dataclass(frozen=True)
class CommutationReport:
    lhs: dict
    rhs: dict
    equal: bool


def gpm_bracket_terms(level: Level, m: int, n: int):
    """``[G+_m, G-_n]`` written out in modes, as ``(coef, expr, mode)`` terms."""
    k = mpq(level.k)
    terms = [
        (mpq(3), no("J", "J"), m + n),
        (-(k + 3), g("L"), m + n),
        (k * m - (2 * k + 3) * (n + 1), g("J"), m + n),
    ]
    if m + n == 0:
        terms.append(((k + 1) * (2 * k + 3) * m * (m - 1) / 2, ONE, 0))
    return terms


def bracket_terms(module: EmbeddedModule, a: str, m: int, b: str, n: int):
    if (a, b) == ("G+", "G-"):
        return gpm_bracket_terms(module.level, m, n)
    if (a, b) == ("G-", "G+"):
        return [(-c, e, mode) for c, e, mode in gpm_bracket_terms(module.level, n, m)]
    return commutator_terms(module.table, WEIGHTS, a, m, b, n)


def _commutator_lhs(a: str, m: int, b: str, n: int, state: State, module: EmbeddedModule) -> State:
    lhs: State = {}
    add_into(lhs, module.apply_gen_state(a, m, module.apply_gen_state(b, n, state)))
    add_into(lhs, module.apply_gen_state(b, n, module.apply_gen_state(a, m, state)), -1)
    return prune(lhs)


def _commutation_ids(a: str, m: int, b: str, n: int, state: State, module: EmbeddedModule):
    lhs = _commutator_lhs(a, m, b, n, state, module)
    return lhs, apply_terms_state(module, bracket_terms(module, a, m, b, n), state)


def check_commutation(a: str, m: int, b: str, n: int, state, module: EmbeddedModule) -> CommutationReport:
    """Compare ``[A_m, B_n]`` computed as an operator commutator with the bracket formula."""
    lhs, rhs = _commutation_ids(a, m, b, n, module.to_ids(state), module)
    return CommutationReport(module.from_ids(lhs), module.from_ids(rhs), lhs == rhs)


def gminus_topspace_coeff(j, h, w_hat, level) -> mpq:
    """Scalar by which ``G-_0`` maps the charge-``j`` relaxed top vector to the charge-``(j-1)`` one."""
    level = level_data(level)
    module = EmbeddedModule(level, h, w_hat)
    mu = mpq(j) + level.kappa
    top = (PiKey(-1, mu), ())
    res = module.act("G-", 0, {top: 1})
    target = (PiKey(-1, mu - 1), ())
    extra = [key for key in res if key != target]
    if extra:
        raise InvariantFailure(f"G-_0 left the top space: {extra}")
    return res.get(target, mpq(0))


# --------------------------------------------------------------------------
# the verification sweep


def pi_basis(ell: int, mu: mpq, grade: int) -> list[PiKey]:
    out = []
    for d in range(grade + 1):
        for dc in range(d + 1):
            for pc in _partitions(dc):
                for pd in _partitions(d - dc):
                    out.append(PiKey(ell, mu, pc, pd))
    return out


def tensor_basis(sectors, grade: int) -> list[TensorKey]:
    wb = w3_basis(grade)
    out = []
    for ell, mu in sectors:
        for pk in pi_basis(ell, mu, grade):
            out += [(pk, wk) for wk in wb if pk.depth + w3_depth(wk) <= grade]
    return out


#: Highest weight of the W3 factor and lattice sectors used by the sweep.
DEFAULT_HW = (mpq(1, 5), mpq(2, 7))


def default_sectors(level: Level) -> list[tuple[int, mpq]]:
    """The vacuum sector and a relaxed sector of generic charge ``2/7``."""
    return [(0, mpq(0)), (-1, mpq(2, 7) + level.kappa)]


def _fmt_state(state: State) -> dict:
    out = {}
    for (pk, wk), c in sorted(state.items(), key=lambda kv: repr(kv[0])):
        label = f"ell={pk.ell} mu={fmt(pk.mu)} c={list(pk.cpart)} d={list(pk.dpart)} w3={list(wk)}"
        out[label] = fmt(c)
    return out


@contextmanager
def _gc_paused():
    # the sweep allocates millions of acyclic dicts; cycle scans only cost time
    was_on = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_on:
            gc.enable()


def verify_level(level, grade: int = 3, max_mode: int = 2, pairs=None) -> dict:
    """Check every generator bracket ``[A_m, B_n]``, ``|m|, |n| <= max_mode``, on the grade-``grade`` basis."""
    with _gc_paused():
        return _verify_level(level_data(level), grade, max_mode, pairs)


def _verify_level(level: Level, grade: int, max_mode: int, pairs) -> dict:
    module = EmbeddedModule(level, *DEFAULT_HW)
    basis = tensor_basis(default_sectors(level), grade)
    if pairs is None:
        pairs = list(combinations_with_replacement(GENERATORS, 2))
    modes = range(-max_mode, max_mode + 1)
    ids = [module.intern(key) for key in basis]
    one = mpq(1)
    matrix = {}
    failures = []
    for a, b in pairs:
        ok = True
        for m in modes:
            for n in modes:
                if a == b and n < m:
                    continue  # covered by the (n, m) case below
                for i in ids:
                    state = {i: one}
                    if a == b:
                        # [A_m, A_n] = -[A_n, A_m] as operators: one lhs serves both orders
                        lhs = {} if m == n else _commutator_lhs(a, m, b, n, state, module)
                        cases = [((m, n), lhs), ((n, m), {key: -c for key, c in lhs.items()})]
                    else:
                        cases = [((m, n), _commutator_lhs(a, m, b, n, state, module))]
                    for (mm, nn), lhs in cases:
                        rhs = apply_terms_state(module, bracket_terms(module, a, mm, b, nn), state)
                        if lhs != rhs:
                            ok = False
                            if len(failures) < 5:
                                failures.append(
                                    {
                                        "pair": [a, mm, b, nn],
                                        "lhs": _fmt_state(module.from_ids(lhs)),
                                        "rhs": _fmt_state(module.from_ids(rhs)),
                                    }
                                )
        matrix[f"{a},{b}"] = ok
    vac = (PiKey(0, mpq(0)), ())
    gg = check_commutation("G+", 2, "G-", -2, {vac: mpq(1)}, EmbeddedModule(level))
    expected = (level.k + 1) * (2 * level.k + 3)
    central_ok = gg.equal and gg.lhs == ({vac: expected} if expected else {})
    return {
        "k": fmt(level.k),
        "grade": grade,
        "max_mode": max_mode,
        "basis_size": len(basis),
        "matrix": matrix,
        "central_term": {"value": fmt(gg.lhs.get(vac, mpq(0))), "expected": fmt(expected), "pass": central_ok},
        "failures": failures,
        "pass": all(matrix.values()) and central_ok,
    }


def worker_count() -> int:
    raw = os.environ.get("BPWL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def verify_embedding(levels, grade: int = 3, max_mode: int = 2, pairs=None) -> dict:
    """Run :func:`verify_level` for each level, in parallel when ``BPWL_THREADS`` > 1."""
    levels = [level_data(x) for x in levels]
    workers = min(worker_count(), len(levels))
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(verify_level, levels, [grade] * len(levels), [max_mode] * len(levels), [pairs] * len(levels)))
    else:
        results = [verify_level(x, grade, max_mode, pairs) for x in levels]
    return {"levels": results, "pass": all(r["pass"] for r in results)}
