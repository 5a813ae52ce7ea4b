"""Classification tables for the Bershadsky-Polyakov minimal models.

Two regimes are covered: nondegenerate levels ``u, v >= 3`` and the level
``(u, v) = (2, 3)``, where the W3 side is the singlet algebra.  Everything
is recomputed from weight-level formulas; the only fixed inputs are the
family parametrisations in :data:`HW_FAMILIES` and :data:`ORDINARY_FAMILIES`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .bpcore import (
    BPWeight,
    Level,
    RelaxedLabel,
    g_n_eval,
    hw_spectral_flow_image,
    level_data,
    relaxed_cubic_coeffs,
    relaxed_cubic_eval,
    top_space_dim_exact,
)
from .errors import DomainError, InvariantFailure, OutOfScopeLevel
from .minmod import (
    SINGLET_LEVEL,
    OrbitLabel,
    cubic_factorization_holds,
    j_of_rs,
    orbit_hw,
    orbit_of,
    singlet_h,
    singlet_roots,
    singlet_w_hat,
    z3_orbit_reps,
)
from .scalars import Q, RationalLike, fmt, mod1, rational_roots

#: Explanation attached to refusals for levels without the free-field embedding.
NO_EMBEDDING_REASON = (
    "levels with v = 1 or v = 2 (and u >= 2) admit no embedding of the minimal "
    "model into the half-lattice algebra tensored with the W3 minimal model, "
    "so the inverse-reduction classification does not apply"
)


class Kind(str, Enum):
    FULLY_RELAXED = "FullyRelaxed"
    HIGHEST_WEIGHT = "HighestWeight"
    CONJUGATE_HIGHEST_WEIGHT = "ConjugateHighestWeight"


@dataclass(frozen=True)
class ModuleDescriptor:
    kind: Kind
    payload: BPWeight | RelaxedLabel
    spectral_flow: int = 0
    #: ``None`` means an infinite-dimensional top space.
    top_dim: int | None = None
    family: str | None = None
    roots: tuple[Fraction, ...] = ()
    #: highest weight of the conjugate highest-weight submodule, when relevant
    conjugate: BPWeight | None = None

    def key(self) -> tuple:
        return (self.kind.value, self.spectral_flow, self.payload)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value, "spectral_flow": self.spectral_flow}
        if isinstance(self.payload, BPWeight):
            out["j"], out["delta"] = fmt(self.payload.j), fmt(self.payload.delta)
        else:
            out["j_coset"] = fmt(self.payload.j_coset)
            out["h"], out["w_hat"] = fmt(self.payload.h), fmt(self.payload.w_hat)
        out["top_dim"] = "infinite" if self.top_dim is None else self.top_dim
        if self.family is not None:
            out["family"] = self.family
        if self.roots:
            out["roots"] = [fmt(r) for r in self.roots]
        if self.conjugate is not None:
            out["conjugate"] = [fmt(self.conjugate.j), fmt(self.conjugate.delta)]
        return out


def _check_distinct(entries) -> None:
    keys = [e.key() for e in entries]
    if len(set(keys)) != len(keys):
        raise InvariantFailure("classification produced a repeated module")


# --------------------------------------------------------------------------
# nondegenerate levels


@dataclass(frozen=True)
class OrbitClass:
    label: OrbitLabel
    h: Fraction
    w_hat: Fraction
    j_roots: tuple[Fraction, ...]
    reducible_cosets: tuple[Fraction, ...]
    quotients: tuple[ModuleDescriptor, ...]

    def to_json(self) -> dict:
        return {
            "rep": [list(self.label.rep[0]), list(self.label.rep[1])],
            "h": fmt(self.h),
            "w_hat": fmt(self.w_hat),
            "j_roots": [fmt(j) for j in self.j_roots],
            "reducible_cosets": [fmt(c) for c in self.reducible_cosets],
            "quotients": [
                {
                    "j": fmt(q.payload.j),
                    "delta": fmt(q.payload.delta),
                    "top_dim": "infinite" if q.top_dim is None else q.top_dim,
                    "conjugate": [fmt(q.conjugate.j), fmt(q.conjugate.delta)],
                }
                for q in self.quotients
            ],
        }


@dataclass(frozen=True)
class ClassificationTable:
    level: Level
    orbits: tuple[OrbitClass, ...]
    entries: tuple[ModuleDescriptor, ...] = field(default=())

    def reducible_index(self) -> dict[tuple, tuple[Fraction, ...]]:
        return {o.label.rep: o.reducible_cosets for o in self.orbits}

    def to_json(self) -> dict:
        return {
            "u": self.level.u,
            "v": self.level.v,
            "k": fmt(self.level.k),
            "kappa": fmt(self.level.kappa),
            "orbits": [o.to_json() for o in self.orbits],
        }


def check_level_in_scope(u: int, v: int) -> None:
    """Raise :class:`OutOfScopeLevel` for levels outside the classified range."""
    if v in (1, 2):
        raise OutOfScopeLevel(f"(u, v) = ({u}, {v}): {NO_EMBEDDING_REASON}")
    if u == 2 and v != 3:
        raise OutOfScopeLevel(
            f"(u, v) = (2, {v}): the spectrum of the W3 minimal model is not known "
            "for u = 2 beyond v = 3, so no classification is produced"
        )


def classify_nondegenerate(u: int, v: int) -> ClassificationTable:
    check_level_in_scope(u, v)
    level = Level.from_pair(u, v)
    if not level.nondegenerate:
        raise OutOfScopeLevel(f"(u, v) = ({u}, {v}) is not nondegenerate; use the singlet classifier")
    orbits = []
    entries: list[ModuleDescriptor] = []
    for label in z3_orbit_reps(u, v):
        h, w_hat = orbit_hw(label, u, v)
        if not cubic_factorization_holds(label, u, v):
            raise InvariantFailure(f"relaxed cubic does not factor over the orbit {label.rep}")
        members = orbit_of(label.rep)
        roots = sorted(j_of_rs(p, u, v) for p in members)
        cosets = sorted(mod1(r) for r in roots)
        if len(set(cosets)) != 3:
            raise InvariantFailure(f"reducible cosets of {label.rep} are not distinct")
        quotients = []
        for root in roots:
            wt = BPWeight(root - 1, h + level.kappa)
            dim = top_space_dim_exact(wt, level)
            if dim is not None:
                raise InvariantFailure(f"quotient {wt} has a finite top space")
            quotients.append(
                ModuleDescriptor(
                    Kind.HIGHEST_WEIGHT,
                    wt,
                    top_dim=None,
                    roots=tuple(roots),
                    conjugate=BPWeight(root, h + level.kappa),
                )
            )
        entries.append(
            ModuleDescriptor(Kind.FULLY_RELAXED, RelaxedLabel(0, h, w_hat), roots=tuple(roots))
        )
        entries.extend(quotients)
        orbits.append(OrbitClass(label, h, w_hat, tuple(roots), tuple(cosets), tuple(quotients)))
    _check_distinct(entries)
    return ClassificationTable(level, tuple(orbits), tuple(entries))


# --------------------------------------------------------------------------
# the level (2, 3): fully relaxed modules and infinite-top highest-weight modules


def _in_shifted_naturals(x: Fraction, shift: Fraction, sign: int = 1) -> bool:
    """Whether ``x`` lies in ``sign * (N + shift)`` (N includes 0)."""
    y = sign * x - shift
    return y.denominator == 1 and y >= 0


@dataclass(frozen=True)
class HWFamily:
    tag: str
    j: Callable[[Fraction], Fraction]
    delta: Callable[[Fraction], Fraction]
    #: parameter values that are in the family
    member: Callable[[Fraction], bool]
    #: parameter values that are excluded but still produce a module of this shape
    excluded: Callable[[Fraction], bool]
    #: the root of the relaxed cubic whose coset yields this quotient
    root: Callable[[Fraction], Fraction] | None = None

    def weight(self, lam: RationalLike) -> BPWeight:
        lam = Q(lam)
        return BPWeight(self.j(lam), self.delta(lam))


def _shifted_delta(lam: Fraction) -> Fraction:
    return singlet_h(lam) - Fraction(5, 9)


def _hw_family(tag, j, root, extra_excl) -> HWFamily:
    def excluded(lam: Fraction) -> bool:
        return lam == -1 or extra_excl(lam)

    return HWFamily(tag, j, _shifted_delta, lambda lam: not excluded(lam), excluded, root)


_THIRD, _TWO_THIRDS = Fraction(1, 3), Fraction(2, 3)

HW_FAMILIES: dict[str, HWFamily] = {
    "i": _hw_family(
        "i",
        lambda lam: (3 * lam - 4) / 9,
        lambda lam: (3 * lam + 5) / 9,
        lambda lam: _in_shifted_naturals(lam, _THIRD),
    ),
    "ii": _hw_family(
        "ii",
        lambda lam: (3 * lam - 7) / 9,
        lambda lam: (3 * lam + 2) / 9,
        lambda lam: _in_shifted_naturals(lam, _TWO_THIRDS),
    ),
    "iii": _hw_family(
        "iii",
        lambda lam: -(6 * lam + 10) / 9,
        lambda lam: -(6 * lam + 1) / 9,
        lambda lam: _in_shifted_naturals(lam, _THIRD, -1) or _in_shifted_naturals(lam, _TWO_THIRDS, -1),
    ),
}


def _lattice(shift: Fraction) -> Callable[[Fraction], bool]:
    return lambda lam: (lam - shift).denominator == 1


def _ordinary(tag, j, delta, member, lattice, dim) -> tuple[HWFamily, Callable]:
    fam = HWFamily(tag, j, delta, member, lambda lam: lattice(lam) and not member(lam))
    return fam, dim


_ORD = {
    "1": _ordinary(
        "1",
        lambda lam: lam / 3,
        lambda lam: singlet_h(lam) + lam / 3,
        lambda lam: lam != Fraction(-5, 3),
        lambda lam: True,
        lambda lam: 1,
    ),
    "2": _ordinary(
        "2",
        HW_FAMILIES["i"].j,
        _shifted_delta,
        lambda lam: _in_shifted_naturals(lam, Fraction(4, 3)),
        _lattice(_THIRD),
        lambda lam: lam + _TWO_THIRDS,
    ),
    "3": _ordinary(
        "3",
        HW_FAMILIES["ii"].j,
        _shifted_delta,
        lambda lam: _in_shifted_naturals(lam, _TWO_THIRDS),
        _lattice(_TWO_THIRDS),
        lambda lam: lam + _THIRD,
    ),
    "4": _ordinary(
        "4",
        HW_FAMILIES["iii"].j,
        _shifted_delta,
        lambda lam: _in_shifted_naturals(lam, Fraction(8, 3), -1),
        _lattice(_THIRD),
        lambda lam: -lam - _TWO_THIRDS,
    ),
    "5": _ordinary(
        "5",
        HW_FAMILIES["iii"].j,
        _shifted_delta,
        lambda lam: _in_shifted_naturals(lam, Fraction(7, 3), -1),
        _lattice(_TWO_THIRDS),
        lambda lam: -lam - _THIRD,
    ),
}

ORDINARY_FAMILIES: dict[str, HWFamily] = {tag: fam for tag, (fam, _) in _ORD.items()}


def ordinary_dim_formula(tag: str, lam: RationalLike) -> int:
    d = _ORD[tag][1](Q(lam))
    return int(d)


@dataclass(frozen=True)
class SingletRelaxed:
    lam: Fraction
    h: Fraction
    w_hat: Fraction
    roots: tuple[Fraction, ...]
    #: pairs of root tags whose roots share a coset
    collisions: tuple[tuple[str, str], ...]
    excluded_cosets: tuple[Fraction, ...]
    #: one highest-weight quotient per reducible coset
    quotients: tuple[ModuleDescriptor, ...]

    def to_json(self) -> dict:
        return {
            "lambda": fmt(self.lam),
            "h": fmt(self.h),
            "w_hat": fmt(self.w_hat),
            "roots": [fmt(r) for r in self.roots],
            "collisions": [list(c) for c in self.collisions],
            "excluded_cosets": [fmt(c) for c in self.excluded_cosets],
            "quotients": [q.to_json() for q in self.quotients],
        }


def classify_singlet_relaxed(lam: RationalLike) -> SingletRelaxed:
    """Reducibility data of the fully relaxed modules over the singlet point ``lam``.

    At a coset holding several roots, the quotient is taken at the root with
    the smallest charge.
    """
    lam = Q(lam)
    if lam == -1:
        raise DomainError("lambda = -1 gives the same W3 weight as lambda = 0; use lambda = 0")
    level = SINGLET_LEVEL
    h, w_hat = singlet_h(lam), singlet_w_hat(lam)
    tagged = {tag: fam.root(lam) for tag, fam in HW_FAMILIES.items()}
    roots, residual = rational_roots(relaxed_cubic_coeffs(h, w_hat, level))
    if singlet_roots(lam) != roots or len(residual) != 1:
        raise InvariantFailure(f"singlet cubic roots disagree at lambda = {lam}")
    collisions = tuple(
        (a, b) for a, b in combinations(tagged, 2) if mod1(tagged[a]) == mod1(tagged[b])
    )
    by_coset: dict[Fraction, list[str]] = {}
    for tag, r in tagged.items():
        by_coset.setdefault(mod1(r), []).append(tag)
    quotients = []
    for coset in sorted(by_coset):
        tag = min(by_coset[coset], key=lambda t: (tagged[t], t))
        wt = HW_FAMILIES[tag].weight(lam)
        if wt != BPWeight(tagged[tag] - 1, h + level.kappa):
            raise InvariantFailure(f"family {tag} formula disagrees with its root at lambda = {lam}")
        quotients.append(
            ModuleDescriptor(
                Kind.HIGHEST_WEIGHT,
                wt,
                top_dim=top_space_dim_exact(wt, level),
                family=tag,
                roots=tuple(roots),
                conjugate=BPWeight(tagged[tag], wt.delta),
            )
        )
    return SingletRelaxed(
        lam, h, w_hat, tuple(roots), collisions, tuple(sorted(by_coset)), tuple(quotients)
    )


# --------------------------------------------------------------------------
# the level (2, 3): ordinary modules


def _lattice_points(lo: Fraction, hi: Fraction, shift: Fraction) -> list[Fraction]:
    start = math.ceil(lo - shift)
    stop = math.floor(hi - shift)
    return [shift + n for n in range(start, stop + 1)]


def classify_singlet_ordinary(
    lam_min: RationalLike, lam_max: RationalLike, dim_max: int, den: int = 9
) -> list[ModuleDescriptor]:
    """Ordinary highest-weight modules with parameter in ``[lam_min, lam_max]``.

    The continuous family ``"1"`` is sampled on the grid ``Z / den``; the
    discrete families are listed completely.  Each dimension is rechecked
    against the exact top-space computation.
    """
    lo, hi = Q(lam_min), Q(lam_max)
    level = SINGLET_LEVEL
    out = []
    shifts = {"1": None, "2": _THIRD, "3": _TWO_THIRDS, "4": _THIRD, "5": _TWO_THIRDS}
    for tag, shift in shifts.items():
        fam, dim_fn = _ORD[tag]
        if shift is None:
            grid = [Fraction(p, den) for p in range(math.ceil(lo * den), math.floor(hi * den) + 1)]
        else:
            grid = _lattice_points(lo, hi, shift)
        for lam in grid:
            if not fam.member(lam):
                continue
            dim = int(dim_fn(lam))
            if dim > dim_max:
                continue
            wt = fam.weight(lam)
            found = top_space_dim_exact(wt, level)
            if found != dim:
                raise InvariantFailure(
                    f"family {tag} at lambda = {lam}: expected top dimension {dim}, found {found}"
                )
            out.append(
                ModuleDescriptor(Kind.HIGHEST_WEIGHT, wt, top_dim=dim, family=f"{tag}:{fmt(lam)}")
            )
    out.sort(key=lambda d: (d.payload, d.family))
    return out


# --------------------------------------------------------------------------
# coincidences between family formulas


@dataclass(frozen=True)
class Coincidence:
    weight: BPWeight
    #: ``(tag, parameter)`` of the family that contains the module
    member: tuple[str, Fraction]
    #: ``(tag, parameter)`` whose exclusion prevents the duplicate
    excluded: tuple[str, Fraction]


def _pair_solutions(fa: HWFamily, fb: HWFamily) -> list[tuple[Fraction, Fraction]]:
    """All ``(lam, mu)`` with ``fa.weight(lam) == fb.weight(mu)`` (rational solutions)."""
    # j is affine in the parameter: j = slope * lam + offset.
    a0, a1 = fa.j(Fraction(0)), fa.j(Fraction(1)) - fa.j(Fraction(0))
    b0, b1 = fb.j(Fraction(0)), fb.j(Fraction(1)) - fb.j(Fraction(0))

    def mu_of(lam: Fraction) -> Fraction:
        return (a1 * lam + a0 - b0) / b1

    def gap(lam: Fraction) -> Fraction:
        return fa.delta(lam) - fb.delta(mu_of(lam))

    # gap is a quadratic in lam: recover it from three samples.
    y0, y1, y2 = gap(Fraction(0)), gap(Fraction(1)), gap(Fraction(2))
    c2 = (y2 - 2 * y1 + y0) / 2
    c1 = y1 - y0 - c2
    if c2 == c1 == y0 == 0:
        raise InvariantFailure(f"families {fa.tag} and {fb.tag} coincide identically")
    roots, _ = rational_roots([c2, c1, y0]) if (c2 or c1) else ([], None)
    return [(lam, mu_of(lam)) for lam in sorted(set(roots))]


def _coincidences(families: dict[str, HWFamily]) -> list[Coincidence]:
    found = []
    for ta, tb in combinations(families, 2):
        fa, fb = families[ta], families[tb]
        if fa.j is fb.j:
            continue
        for lam, mu in _pair_solutions(fa, fb):
            wt = fa.weight(lam)
            if wt != fb.weight(mu):
                raise InvariantFailure("coincidence recomputation mismatch")
            if fa.member(lam) and fb.member(mu):
                raise InvariantFailure(f"{wt} lies in both family {ta} and family {tb}")
            if fa.member(lam) and fb.excluded(mu):
                found.append(Coincidence(wt, (ta, lam), (tb, mu)))
            elif fb.member(mu) and fa.excluded(lam):
                found.append(Coincidence(wt, (tb, mu), (ta, lam)))
    return sorted(found, key=lambda c: (c.weight, c.member))


def coincidences_23() -> tuple[list[Coincidence], list[Coincidence]]:
    """Coincidences prevented by the parameter exclusions.

    Returns the list for the infinite-top families and the list for the
    ordinary families, each recomputed by solving the family formulas pairwise.
    """
    return _coincidences(HW_FAMILIES), _coincidences(ORDINARY_FAMILIES)


# --------------------------------------------------------------------------
# spectral flow between highest-weight modules at (2, 3)


@dataclass(frozen=True)
class OrbitArrow:
    source: str
    lam: Fraction
    target: str
    mu: Fraction
    source_weight: BPWeight
    weight: BPWeight
    source_top_dim: int


# (source formula tag, parameter domain, target formula tag, mu - lambda)
_ARROWS = [
    ("1", lambda lam: True, "ii", _TWO_THIRDS),
    ("i", lambda lam: _in_shifted_naturals(lam, _THIRD), "iii", -_TWO_THIRDS),
    ("ii", lambda lam: _in_shifted_naturals(lam, _TWO_THIRDS), "iii", -_TWO_THIRDS),
    ("iii", lambda lam: _in_shifted_naturals(lam, Fraction(5, 3), -1), "1", Fraction(0)),
    ("iii", lambda lam: _in_shifted_naturals(lam, Fraction(4, 3), -1), "i", _THIRD),
]

#: Ordinary-family tags accepted as aliases for the formula they use.
_TAG_ALIASES = {"2": "i", "3": "ii", "4": "iii", "5": "iii"}


def _formula(tag: str) -> HWFamily:
    if tag == "1":
        return ORDINARY_FAMILIES["1"]
    return HW_FAMILIES[tag]


def orbit_image_hw_23(family_tag: str, lam: RationalLike) -> OrbitArrow:
    """Image under one unit of spectral flow of a finite-top highest-weight module.

    ``family_tag`` names the weight formula: ``"1"``, ``"i"``, ``"ii"``,
    ``"iii"``, or one of the ordinary tags ``"2"``-``"5"``.
    """
    lam = Q(lam)
    tag = _TAG_ALIASES.get(family_tag, family_tag)
    for src, domain, target, shift in _ARROWS:
        if src == tag and domain(lam):
            break
    else:
        raise DomainError(f"no spectral-flow rule for family {family_tag} at lambda = {fmt(lam)}")
    level = SINGLET_LEVEL
    src_wt = _formula(tag).weight(lam)
    mu = lam + shift
    img = _formula(target).weight(mu)
    n = top_space_dim_exact(src_wt, level)
    if n is None:
        raise InvariantFailure(f"source {src_wt} has an infinite top space")
    check = hw_spectral_flow_image(src_wt, n, level)
    if check != img:
        raise InvariantFailure(f"spectral flow of {src_wt} gives {check}, rule says {img}")
    return OrbitArrow(tag, lam, target, mu, src_wt, img, n)


def arrow_domain_sample(family_tag: str, count: int) -> list[Fraction]:
    """The first ``count`` parameters in the domain of an arrow (for testing and the CLI)."""
    tag = _TAG_ALIASES.get(family_tag, family_tag)
    rules = [r for r in _ARROWS if r[0] == tag]
    if not rules:
        raise DomainError(f"unknown family tag {family_tag!r}")
    if tag == "1":
        # alternate signs around 0 on the grid Z/7
        return [Fraction((p + 1) // 2 * (1 if p % 2 else -1), 7) for p in range(count)]
    if tag in ("i", "ii"):
        base = _THIRD if tag == "i" else _TWO_THIRDS
        return [base + n for n in range(count)]
    # "iii" has two interleaved domains
    both = [-(Fraction(5, 3) + n) for n in range(count)] + [-(Fraction(4, 3) + n) for n in range(count)]
    return sorted(both, reverse=True)[:count]


# --------------------------------------------------------------------------
# minimal reduction of ordinary sl3 modules


def _check_qhr_level(level: Level, r: int, s: int) -> None:
    if r < 1 or s < 1:
        raise DomainError(f"r and s must be positive, got ({r}, {s})")
    k = level.k
    if k.denominator == 1 and k >= -1:
        raise OutOfScopeLevel(f"k = {fmt(k)} is a nonnegative-type integer level (k in Z, k >= -1)")


def minimal_qhr(r: int, s: int, level) -> tuple[BPWeight, int]:
    """Highest weight and top-space dimension of the minimal reduction of ``L_{r,s}``."""
    level = level_data(level)
    _check_qhr_level(level, r, s)
    k = level.k
    j = Fraction(r + 2 * s - 3, 3)
    delta = Fraction(r * r + r * s + s * s - 3) / (3 * (k + 3)) - Fraction(2 * r + s - 3, 3)
    wt = BPWeight(j, delta)
    # g_n(j, delta) = (n - r - s + k + 3)(n - s), checked at three values of n
    for n in (1, 2, 3):
        if g_n_eval(n, wt, level) != (n - r - s + k + 3) * (n - s):
            raise InvariantFailure(f"g_n does not factor for (r, s) = ({r}, {s})")
    dim = top_space_dim_exact(wt, level)
    if dim != s:
        raise InvariantFailure(f"top dimension {dim} != {s} for (r, s) = ({r}, {s})")
    return wt, s


def submodule_realisation(r: int, s: int, level) -> tuple[Fraction, RelaxedLabel]:
    """Relaxed data ``(j', h, w_hat)`` whose spectral flow contains the reduced module.

    Returns the representative ``j'`` itself together with the label (which
    stores only its coset).
    """
    level = level_data(level)
    _check_qhr_level(level, r, s)
    k = level.k
    t = k + 3
    jp = (r + 2 * s - 2 * t) / 3
    h = Fraction(r * r + r * s + s * s - 3) / (3 * t) - r - s + 2
    w_hat = -Fraction(r - s, 3) * (Fraction(2 * r + s, 3) - t) * (Fraction(r + 2 * s, 3) - t)
    wt, _ = minimal_qhr(r, s, level)
    if h != wt.delta - wt.j or jp != wt.j - level.kappa:
        raise InvariantFailure(f"realisation data inconsistent for (r, s) = ({r}, {s})")
    if relaxed_cubic_eval(jp, h, w_hat, level) != 0:
        raise InvariantFailure(f"no conjugate highest-weight vector at j' for (r, s) = ({r}, {s})")
    return jp, RelaxedLabel(jp, h, w_hat)


def kl_membership_23(r: int, s: int) -> bool:
    """Whether the minimal reduction of ``L_{r,s}`` at k = -7/3 is a minimal-model module.

    Decided by matching its highest weight against the ordinary families.
    """
    wt, dim = minimal_qhr(r, s, SINGLET_LEVEL)
    return any(_family_param(fam, wt) is not None for fam in ORDINARY_FAMILIES.values())


def _family_param(fam: HWFamily, wt: BPWeight) -> Fraction | None:
    """The member parameter of ``fam`` with weight ``wt``, if any."""
    j0, j1 = fam.j(Fraction(0)), fam.j(Fraction(1))
    lam = (wt.j - j0) / (j1 - j0)
    if fam.member(lam) and fam.delta(lam) == wt.delta:
        return lam
    return None


def identify_ordinary(wt: BPWeight) -> list[tuple[str, Fraction]]:
    """All ``(tag, lam)`` of ordinary families containing the weight."""
    out = []
    for tag, fam in ORDINARY_FAMILIES.items():
        lam = _family_param(fam, wt)
        if lam is not None:
            out.append((tag, lam))
    return out


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
