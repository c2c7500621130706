"""Command line front end.

Classes are given in the fixed basis ``(C0, f)``: ``--xi 1,1`` is ``C0 + f``.
Rationals are accepted as ``p/q`` or integers; use ``--x=-1/4`` for negative
values so they are not mistaken for options.

Exit status: 0 computed, 2 invalid input, 3 unsupported hypothesis.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import InvalidInput, UnsupportedHypothesis
from .invariants import (
    ChernVector,
    c2,
    discriminant,
    euler_pairing,
    gcd_divisibility,
    normalize_fiber_degree,
    slope_vec,
)
from .moduli import (
    construct_general,
    exists_mu_ss,
    moduli_report,
    stack_dim,
)
from .surface_lattice import DivClass, RuledSurface, ample_threshold, canonical, intersect
from .walls import chambers, enumerate_walls

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 2, 3


def q(value) -> str:
    """Lowest-terms string for a rational: ``"p/q"`` or ``"n"``."""
    return str(Fraction(value))


def parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None
    if "." in text or "e" in text.lower():
        raise argparse.ArgumentTypeError(f"use p/q or an integer, not a decimal: {text!r}")
    return value


def parse_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer pair a,b, got {text!r}") from None
    return a, b


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ruledmoduli", description="mu-semistable sheaves on ruled surfaces, exactly")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, vector=True, point=False, range_=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--genus", type=int, required=True)
        p.add_argument("--invariant", type=int, required=True, help="e, with (C0^2) = -e")
        if vector:
            p.add_argument("-r", type=int, required=True, help="rank")
            p.add_argument("--xi", type=parse_pair, required=True, help="c1 as a,b meaning a*C0 + b*f")
            p.add_argument("--chi", type=int, required=True)
        if point:
            p.add_argument("--x", type=parse_rational, required=not range_, default=None)
        if range_:
            p.add_argument("--x-min", type=parse_rational, default=None)
            p.add_argument("--x-max", type=parse_rational, default=None)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    add("surface-info", "canonical class and ample range", vector=False)
    add("delta", "discriminant, c2, slope and normalization")
    pp = add("pairing", "Euler pairing chi(e1, e2)")
    pp.add_argument("--r2", type=int, required=True)
    pp.add_argument("--xi2", type=parse_pair, required=True)
    pp.add_argument("--chi2", type=int, required=True)
    add("walls", "numerical walls on the ray", range_=True)
    add("chambers", "chamber decomposition of the ray", range_=True)
    add("exists", "non-emptiness at H(x)", point=True)
    add("construct", "extension data of a general member")
    add("dim", "stack dimension at H(x)", point=True)
    add("report", "everything at H(x) or over a range", point=True, range_=True)
    return parser


def _vector(args) -> ChernVector:
    return ChernVector.of(args.r, args.xi[0], args.xi[1], args.chi)


def _xi_json(d: DivClass):
    if d.integral:
        return [int(d.a), int(d.b)]
    return [q(d.a), q(d.b)]


def _vec_json(e: ChernVector):
    return {"r": e.r, "xi": _xi_json(e.xi), "chi": e.chi}


def _range_json(rng):
    return {
        "lo": q(rng.lo),
        "hi": None if rng.hi is None else q(rng.hi),
        "lo_closed": rng.lo_closed,
        "hi_closed": rng.hi_closed,
    }


def _walls_json(walls):
    return [
        {
            "x": q(w.x),
            "zeta": _xi_json(w.zeta),
            "witnesses": [
                {"r1": t.r1, "xi1": list(t.xi1), "chi_min": t.chi_min, "chi_max": t.chi_max} for t in w.witnesses
            ],
        }
        for w in walls
    ]


def _walls_text(walls) -> list[str]:
    if not walls:
        return ["no walls"]
    lines = []
    for w in walls:
        wits = "; ".join(
            f"r1={t.r1} xi1={DivClass(*t.xi1)} chi1 in [{t.chi_min}, {t.chi_max}]" for t in w.witnesses
        )
        lines.append(f"wall x = {q(w.x)}  zeta = {w.zeta}  witnesses: {wits}")
    return lines


def _cmd_surface_info(S, args):
    k = canonical(S)
    res = {
        "chi_O": S.chi_O,
        "canonical": _xi_json(k),
        "k_squared": q(intersect(k, k, S)),
        "ample_x_greater_than": q(ample_threshold(S)),
        "ample_criterion": "standard numerical criterion for ruled surfaces",
    }
    text = [
        f"surface: {S}",
        f"chi(O_X) = {S.chi_O}",
        f"K_X = {k}",
        f"K_X^2 = {res['k_squared']}",
        f"H(x) = C0 + x f ample iff x > {res['ample_x_greater_than']}",
    ]
    return res, text


def _cmd_delta(S, args):
    e = _vector(args)
    ne, m = normalize_fiber_degree(e, S)
    res = {
        "delta": q(discriminant(e, S)),
        "c2": q(c2(e, S)),
        "slope": _xi_json(slope_vec(e)),
        "gcd": gcd_divisibility(e),
        "normalized": _vec_json(ne),
        "twist_c0": m,
    }
    text = [
        f"Delta = {res['delta']}",
        f"c2 = {res['c2']}",
        f"mu = {slope_vec(e)}",
        f"gcd(r, xi, chi) = {res['gcd']}",
        f"normalized: {ne} (twist by {m}*C0)",
    ]
    return res, text


def _cmd_pairing(S, args):
    e1 = _vector(args)
    e2 = ChernVector.of(args.r2, args.xi2[0], args.xi2[1], args.chi2)
    val = euler_pairing(e1, e2, S)
    return {"vector2": _vec_json(e2), "chi": q(val)}, [f"chi(e1, e2) = {q(val)}"]


def _cmd_walls(S, args):
    walls = enumerate_walls(_vector(args), S, args.x_min, args.x_max)
    return {"walls": _walls_json(walls)}, _walls_text(walls)


def _cmd_chambers(S, args):
    d = chambers(_vector(args), S, args.x_min, args.x_max)
    res = {
        "range": _range_json(d.range),
        "walls": _walls_json(d.walls),
        "chambers": [_range_json(c) for c in d.chambers],
    }
    text = [f"range {d.range}"] + _walls_text(d.walls) + [f"chamber {c}" for c in d.chambers]
    return res, text


def _cmd_exists(S, args):
    v = exists_mu_ss(_vector(args), S, args.x)
    res = {
        "x": q(args.x),
        "exists": v.exists,
        "delta": q(v.delta),
        "r1": v.r1,
        "x0": None if v.x0 is None else q(v.x0),
        "normalized": _vec_json(v.normalized),
        "twist_c0": v.twist_m,
        "reason": v.reason,
        "via_cited_result": v.via_cited_result,
    }
    head = f"exists: {'true' if v.exists else 'false'}"
    if v.x0 is not None:
        head += f" (x0 = {q(v.x0)})"
    text = [head]
    if v.lhs is not None:
        text.append(v.inequality())
    text.append(f"reason: {v.reason}")
    return res, text


def _cmd_construct(S, args):
    e = _vector(args)
    ne, m = normalize_fiber_degree(e, S)
    c = construct_general(ne, S)
    res = {
        "normalized": _vec_json(ne),
        "twist_c0": m,
        "r1": c.r1,
        "d1": c.d1,
        "r2": c.r2,
        "d2": c.d2,
        "x0": q(c.x0),
    }
    text = [
        "0 -> F1(C0) -> E -> F2 -> 0",
        f"F1: rank {c.r1}, degree {c.d1}; F2: rank {c.r2}, degree {c.d2}",
        f"equal slopes at x0 = {q(c.x0)}",
    ]
    if m:
        text.append(f"(for the twist of E by {m}*C0: {ne})")
    return res, text


def _cmd_dim(S, args):
    d = stack_dim(_vector(args), S, args.x)
    return {"x": q(args.x), "dim_stack": q(d)}, [f"dim_stack = {q(d)}"]


def _cmd_report(S, args):
    e = _vector(args)
    if args.x is not None:
        if args.x_min is not None or args.x_max is not None:
            raise InvalidInput("give either --x or a range, not both")
        rep = moduli_report(e, S, x=args.x)
    else:
        rep = moduli_report(e, S, x_range=(args.x_min, args.x_max))
    d = rep.decomposition
    res = {
        "query": _range_json(rep.query),
        "normalized": _vec_json(rep.normalized),
        "twist_c0": rep.twist_m,
        "delta": q(rep.delta),
        "gcd": rep.gcd,
        "kh_negative": rep.kh_negative,
        "dim_stack": None if rep.dim_stack is None else q(rep.dim_stack),
        "dim_coarse": None if rep.dim_coarse is None else q(rep.dim_coarse),
        "exists": rep.exists,
        "exists_reason": rep.exists_reason,
        "exists_region": None if rep.exists_region is None else _range_json(rep.exists_region),
        "x0": None if rep.x0 is None else q(rep.x0),
        "walls": _walls_json(d.walls),
        "chambers": [
            {"chamber": _range_json(cv.chamber), "sample": q(cv.sample), "exists": cv.exists}
            for cv in rep.chamber_verdicts
        ],
        "flags": {k: {"value": f.value, "hypothesis": f.hypothesis} for k, f in rep.flags.items()},
        "construction": None
        if rep.construction is None
        else {
            "r1": rep.construction.r1,
            "d1": rep.construction.d1,
            "r2": rep.construction.r2,
            "d2": rep.construction.d2,
            "x0": q(rep.construction.x0),
        },
        "non_locally_free_codim": rep.non_lf_codim,
        "notes": list(rep.notes),
    }
    text = [
        f"surface {S}, e = {e}, query {rep.query}",
        f"normalized {rep.normalized} (twist by {rep.twist_m}*C0)",
        f"Delta = {q(rep.delta)}, gcd = {rep.gcd}",
        f"dim_stack = {res['dim_stack'] or 'n/a'}, dim_coarse = {res['dim_coarse'] or 'n/a'}",
        f"exists: {_tri(rep.exists)}" + (f" on {rep.exists_region}" if rep.exists_region else ""),
        f"reason: {rep.exists_reason}",
    ]
    if rep.x0 is not None:
        text.append(f"x0 = {q(rep.x0)}")
    text.append(f"{'x':>12}  {'kind':<8} exists")
    for cv in rep.chamber_verdicts:
        text.append(f"{str(cv.chamber):>12}  chamber  {_tri(cv.exists)}")
    for x, ok in rep.wall_verdicts:
        text.append(f"{q(x):>12}  wall     {_tri(ok)}")
    for name, f in rep.flags.items():
        text.append(f"flag {name} = {_tri(f.value)}  [{f.hypothesis}]")
    if rep.construction is not None:
        c = rep.construction
        text.append(f"construction: r1={c.r1} d1={c.d1} r2={c.r2} d2={c.d2} x0={q(c.x0)}")
    text.append(f"non-locally-free codimension = {rep.non_lf_codim}")
    text += [f"note: {n}" for n in rep.notes]
    return res, text


def _tri(v) -> str:
    return "n/a" if v is None else ("true" if v else "false")


COMMANDS = {
    "surface-info": _cmd_surface_info,
    "delta": _cmd_delta,
    "pairing": _cmd_pairing,
    "walls": _cmd_walls,
    "chambers": _cmd_chambers,
    "exists": _cmd_exists,
    "construct": _cmd_construct,
    "dim": _cmd_dim,
    "report": _cmd_report,
}


@dataclass(frozen=True)
class CliResult:
    status: int
    stdout: str
    stderr: str


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def run(argv) -> CliResult:
    """Execute one command; never raises for bad input."""
    try:
        args = build_parser().parse_args(argv)
        try:
            S = RuledSurface(args.genus, args.invariant)
        except ValueError as exc:
            raise InvalidInput(str(exc)) from None
        result, text = COMMANDS[args.command](S, args)
    except InvalidInput as exc:
        return CliResult(EXIT_INVALID, "", f"error: {exc}\n")
    except UnsupportedHypothesis as exc:
        return CliResult(EXIT_UNSUPPORTED, "", f"error: {exc}\n")
    if args.json:
        payload = {"surface": {"genus": S.genus, "invariant": S.invariant}}
        if hasattr(args, "r"):
            payload["vector"] = _vec_json(_vector(args))
        payload["result"] = result
        return CliResult(EXIT_OK, dumps(payload), "")
    return CliResult(EXIT_OK, "\n".join(text) + "\n", "")


def main(argv=None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.status


if __name__ == "__main__":
    sys.exit(main())
