"""Command-line front end: ``bpwl <verb> [flags]``.

Exit status: 0 success, 2 usage or domain error, 3 level out of scope,
4 internal invariant failure (including a failed embedding check).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bpcore import level_data
from .classifier import (
    arrow_domain_sample,
    classify_nondegenerate,
    classify_singlet_ordinary,
    classify_singlet_relaxed,
    check_level_in_scope,
    coincidences_23,
    kl_membership_23,
    minimal_qhr,
    orbit_image_hw_23,
    submodule_realisation,
)
from .errors import BPWLError, DomainError, InvariantFailure, LevelError, OutOfScopeLevel
from .minmod import SINGLET_LEVEL
from .qseries import check_string_convergence
from .scalars import fmt, parse_rational

EXIT_OK, EXIT_USAGE, EXIT_SCOPE, EXIT_INVARIANT = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _weight_json(w) -> dict:
    return {"j": fmt(w.j), "delta": fmt(w.delta)}


# --------------------------------------------------------------------------
# verbs


def cmd_classify(args) -> dict:
    if args.u is None or args.v is None:
        raise UsageError("classify needs --u and --v")
    check_level_in_scope(args.u, args.v)
    if (args.u, args.v) == (2, 3):
        infinite, ordinary = coincidences_23()
        level = SINGLET_LEVEL

        def coinc(c):
            return {
                "weight": _weight_json(c.weight),
                "member": [c.member[0], fmt(c.member[1])],
                "excluded": [c.excluded[0], fmt(c.excluded[1])],
            }

        return {
            "u": 2,
            "v": 3,
            "k": fmt(level.k),
            "kappa": fmt(level.kappa),
            "families": ["i", "ii", "iii", "1", "2", "3", "4", "5"],
            "coincidences": {
                "infinite_top": [coinc(c) for c in infinite],
                "ordinary": [coinc(c) for c in ordinary],
            },
        }
    return classify_nondegenerate(args.u, args.v).to_json()


def cmd_singlet(args) -> dict:
    return classify_singlet_relaxed(args.lam).to_json()


def cmd_ordinary(args) -> dict:
    entries = classify_singlet_ordinary(args.lam_min, args.lam_max, args.dim_max, args.den)
    return {
        "lam_min": fmt(args.lam_min),
        "lam_max": fmt(args.lam_max),
        "dim_max": args.dim_max,
        "modules": [e.to_json() for e in entries],
    }


def cmd_orbit(args) -> dict:
    lams = [args.lam] if args.lam is not None else arrow_domain_sample(args.family, args.count)
    arrows = []
    for lam in lams:
        a = orbit_image_hw_23(args.family, lam)
        arrows.append(
            {
                "source": a.source,
                "lambda": fmt(a.lam),
                "source_weight": _weight_json(a.source_weight),
                "source_top_dim": a.source_top_dim,
                "target": a.target,
                "mu": fmt(a.mu),
                "image_weight": _weight_json(a.weight),
            }
        )
    return {"family": args.family, "arrows": arrows}


def cmd_qhr(args) -> dict:
    level = level_data(args.k)
    wt, dim = minimal_qhr(args.r, args.s, level)
    jp, label = submodule_realisation(args.r, args.s, level)
    return {
        "k": fmt(level.k),
        "r": args.r,
        "s": args.s,
        "weight": _weight_json(wt),
        "top_dim": dim,
        "relaxed": {"j_prime": fmt(jp), "j_coset": fmt(label.j_coset), "h": fmt(label.h), "w_hat": fmt(label.w_hat)},
    }


def cmd_kl(args) -> dict:
    if (args.u, args.v) != (2, 3):
        raise OutOfScopeLevel(f"the membership criterion is implemented for (u, v) = (2, 3) only, got ({args.u}, {args.v})")
    grid = [[kl_membership_23(r, s) for s in range(1, args.max + 1)] for r in range(1, args.max + 1)]
    return {"u": 2, "v": 3, "max": args.max, "rows": "r", "cols": "s", "grid": grid}


def cmd_stringfn(args) -> dict:
    return check_string_convergence(args.order, args.n_max).to_json()


def cmd_verify_embedding(args) -> dict:
    from .modes.embedding import GENERATORS, verify_embedding

    if args.k:
        levels = list(args.k)
    elif args.u is not None and args.v is not None:
        levels = [(args.u, args.v)]
    else:
        levels = [Fraction(-7, 3), Fraction(-5, 3), Fraction(-12, 5)]
    pairs = None
    if args.pairs:
        pairs = []
        for item in args.pairs.split(";"):
            a, _, b = item.partition(",")
            if a not in GENERATORS or b not in GENERATORS:
                raise UsageError(f"bad generator pair {item!r}; generators are {', '.join(GENERATORS)}")
            pairs.append((a, b))
    return verify_embedding(levels, args.grade, args.max_mode, pairs)


# --------------------------------------------------------------------------
# parser and output


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bpwl", description="Weight modules of the Bershadsky-Polyakov algebra.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("classify", parents=[common], help="classification table at k + 3 = u/v")
    s.add_argument("--u", type=int)
    s.add_argument("--v", type=int)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("singlet", parents=[common], help="relaxed modules over a singlet point (k = -7/3)")
    s.add_argument("--lam", type=_rational, required=True)
    s.set_defaults(func=cmd_singlet)

    s = sub.add_parser("ordinary", parents=[common], help="ordinary modules at k = -7/3")
    s.add_argument("--lam-min", type=_rational, default=Fraction(-5))
    s.add_argument("--lam-max", type=_rational, default=Fraction(5))
    s.add_argument("--dim-max", type=int, default=10)
    s.add_argument("--den", type=int, default=9, help="grid denominator for the continuous family")
    s.set_defaults(func=cmd_ordinary)

    s = sub.add_parser("orbit", parents=[common], help="spectral-flow images of finite-top modules")
    s.add_argument("--family", required=True, help="1, i, ii, iii (or 2-5)")
    s.add_argument("--lam", type=_rational)
    s.add_argument("--count", type=int, default=5)
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("qhr", parents=[common], help="minimal reduction of L_{r,s}")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--k", type=_rational, default=Fraction(-7, 3))
    s.set_defaults(func=cmd_qhr)

    s = sub.add_parser("kl", parents=[common], help="membership grid of reduced modules")
    s.add_argument("--u", type=int, default=2)
    s.add_argument("--v", type=int, default=3)
    s.add_argument("--max", type=int, default=12)
    s.set_defaults(func=cmd_kl)

    s = sub.add_parser("stringfn", parents=[common], help="vacuum string-function convergence")
    s.add_argument("--order", type=int, default=10)
    s.add_argument("--n-max", type=int)
    s.set_defaults(func=cmd_stringfn)

    s = sub.add_parser("verify-embedding", parents=[common], help="check the free-field embedding mode by mode")
    s.add_argument("--k", type=_rational, action="append", help="level (repeatable)")
    s.add_argument("--u", type=int)
    s.add_argument("--v", type=int)
    s.add_argument("--grade", type=int, default=3, help="largest basis grade checked")
    s.add_argument("--max-mode", type=int, default=2, help="check modes with |m|, |n| up to this")
    s.add_argument("--pairs", help='generator pairs, e.g. "G+,G-;J,L"')
    s.set_defaults(func=cmd_verify_embedding)
    return p


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(val)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if _flat(obj):
            return pad + _inline(obj)
        return "\n".join(
            f"{pad}-\n{render_text(item, indent + 1)}" if isinstance(item, (dict, list)) else f"{pad}- {_inline(item)}"
            for item in obj
        )
    return pad + _inline(obj)


def _flat(val) -> bool:
    return isinstance(val, list) and all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in val)


def _inline(val) -> str:
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, list):
        return "[" + ", ".join(_inline(x) for x in val) + "]"
    if isinstance(val, dict):
        return "{}" if not val else json.dumps(val, sort_keys=True)
    return str(val)


def emit(doc: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(doc, indent=2, sort_keys=True)
    return render_text(doc)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        doc = args.func(args)
    except OutOfScopeLevel as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except InvariantFailure as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, DomainError, LevelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BPWLError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    print(emit(doc, args.format))
    if isinstance(doc, dict) and doc.get("pass") is False:
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
