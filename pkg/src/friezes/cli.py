"""Command-line front end.

Exit status: 0 on success, 1 for invalid input, 2 when a checked invariant
fails (the offending cases are printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import golden
from .checks import CHECKS, run_suite
from .frieze import Frieze, FriezeError, frieze_from_quiddity, frieze_from_triangulation, render, verify
from .mutation import NonPositiveEntry, delta, mutate_frieze, rays
from .polygon import (
    InvalidTriangulation,
    Triangulation,
    all_arcs,
    enumerate_triangulations,
    flip,
    parse_arc,
    parse_arc_list,
    quadrilateral,
    quiddity,
    triangulation_from_quiddity,
    validate,
)
from .strings import (
    StringModule,
    WalkTooLong,
    admissible,
    fit_admissibility,
    shape,
    submodule_count,
    submodule_count_bruteforce,
    submodule_count_formula,
    submodule_count_transfer,
)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(source: str):
    """Inline JSON, a path to a JSON file, or "-" for stdin."""
    if source == "-":
        return json.load(sys.stdin)
    text = source.strip()
    if text.startswith(("{", "[")):
        return json.loads(text)
    path = Path(source)
    if not path.exists():
        raise InputError(f"no such file: {source}")
    return json.loads(path.read_text())


def load_triangulation(args) -> Triangulation:
    if getattr(args, "quiddity", None):
        return triangulation_from_quiddity(_int_list(args.quiddity))
    if getattr(args, "diagonals", None) is not None:
        if args.n is None:
            raise InputError("--diagonals needs --n")
        return validate(args.n, parse_arc_list(args.diagonals))
    src = getattr(args, "input", None)
    if src is None:
        raise InputError("give a triangulation: INPUT (file or inline JSON), 'golden', "
                         "--n with --diagonals, or --quiddity")
    if src == "golden":
        return golden.golden_triangulation()[0]
    data = _read_json(src)
    try:
        return validate(int(data["n"]), data["diagonals"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"triangulation JSON needs 'n' and 'diagonals': {exc}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"expected integers, got {text!r}") from None


def _arc(text: str, T: Triangulation):
    arc = parse_arc(text)
    if not all(1 <= v <= T.n for v in arc):
        raise InputError(f"arc {text} has an endpoint outside 1..{T.n}")
    return arc


def _diagonal(text: str, T: Triangulation):
    a = _arc(text, T)
    if a not in T.diagonals:
        raise InputError(f"{text} is not a diagonal of {T}")
    return a


def _emit(args, payload, text: str):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _tri_json(T: Triangulation) -> dict:
    return {"n": T.n, "diagonals": [list(d) for d in T.key]}


def _arc_text(arc) -> str:
    return f"{arc[0]}-{arc[1]}"


# subcommands -------------------------------------------------------------

def cmd_gen(args) -> int:
    T = load_triangulation(args)
    friezes = {}
    if args.pipeline in ("quiddity", "both"):
        friezes["quiddity"] = frieze_from_quiddity(quiddity(T))
    if args.pipeline in ("ccmap", "both"):
        friezes["ccmap"] = frieze_from_triangulation(T)
    F = next(iter(friezes.values()))
    problems = []
    if len(friezes) == 2 and friezes["quiddity"] != friezes["ccmap"]:
        problems.append("pipelines disagree")
    for name, G in friezes.items():
        rep = verify(G)
        problems += [f"{name}: {v}" for v in rep.violations]
    payload = {"triangulation": _tri_json(T), "quiddity": list(quiddity(T)),
               "frieze": F.to_json(), "pipelines": sorted(friezes), "ok": not problems}
    if problems:
        payload["violations"] = problems
    text = f"{T}\nquiddity {' '.join(map(str, quiddity(T)))}\n" + render(F, args.window)
    text += "".join(f"VIOLATION {p}\n" for p in problems)
    _emit(args, payload, text)
    return EXIT_VIOLATION if problems else EXIT_OK


def cmd_flip(args) -> int:
    T = load_triangulation(args)
    seq = parse_arc_list(args.seq) if args.seq else [parse_arc(args.at)] if args.at else None
    if not seq:
        raise InputError("flip needs --at or --seq")
    steps = []
    text = []
    for a in seq:
        a = _diagonal(_arc_text(a), T)
        T, new = flip(T, a)
        F = frieze_from_triangulation(T)
        steps.append({"flipped": list(a), "new": list(new), "triangulation": _tri_json(T),
                      "frieze": F.to_json()})
        text.append(f"flip {_arc_text(a)} -> {_arc_text(new)}: {T}\n" + render(F, args.window))
    _emit(args, {"steps": steps}, "\n".join(text))
    return EXIT_OK


def cmd_delta(args) -> int:
    T = load_triangulation(args)
    a = _diagonal(args.at, T)
    F = frieze_from_triangulation(T)
    quad = quadrilateral(T, a, swap=args.swap)
    if args.arc is None:
        reports = [delta(T, a, x, F, quad) for x in all_arcs(T.n)]
    else:
        reports = [delta(T, a, _arc(args.arc, T), F, quad)]
    payload = [r.to_json() for r in reports]
    lines = []
    for r in reports:
        vals = " ".join(f"{k}={_arc_text(r.projections[k])}:{r.values[k]}" for k in r.projections)
        lines.append(f"{_arc_text(r.arc)} {r.region} delta={r.delta} {vals}".rstrip())
    _emit(args, payload if args.arc is None else payload[0], "\n".join(lines))
    return EXIT_OK


def cmd_mutate(args) -> int:
    T = load_triangulation(args)
    a = _diagonal(args.at, T)
    F = frieze_from_triangulation(T)
    try:
        F2, reports = mutate_frieze(T, a, F, quadrilateral(T, a, swap=args.swap))
    except NonPositiveEntry as exc:
        print(f"VIOLATION {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    direct = frieze_from_triangulation(flip(T, a)[0])
    payload = {
        "frieze_before": F.to_json(),
        "frieze_after": F2.to_json(),
        "deltas": [{"arc": list(r.arc), "region": r.region, "delta": r.delta} for r in reports],
        "matches_recomputed": F2 == direct,
    }
    text = "before\n" + render(F, args.window) + "after\n" + render(F2, args.window)
    if F2 != direct:
        text += "VIOLATION mutated frieze differs from the recomputed one\n"
    _emit(args, payload, text)
    return EXIT_OK if F2 == direct else EXIT_VIOLATION


def cmd_verify(args) -> int:
    checks = args.checks.split(",") if args.checks else list(CHECKS)
    if args.n_max < 4:
        raise InputError("--n-max must be at least 4")
    rep = run_suite(args.n_max, n_min=args.n_min, checks=checks, jobs=args.jobs)
    _emit(args, rep.to_json(), "\n".join(rep.lines()))
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_enumerate(args) -> int:
    if args.n is None:
        raise InputError("enumerate needs --n")
    Ts = enumerate_triangulations(args.n)
    _emit(args, [_tri_json(T) for T in Ts],
          "\n".join(",".join(_arc_text(d) for d in T.key) for T in Ts))
    return EXIT_OK


def cmd_fit(args) -> int:
    rep = fit_admissibility(args.n_max)
    _emit(args, rep.to_json(), "\n".join(rep.lines()))
    return EXIT_OK if rep.fitted else EXIT_VIOLATION


def cmd_render(args) -> int:
    if args.input is None and args.quiddity is None and args.diagonals is None:
        raise InputError("render needs a frieze or triangulation")
    F = None
    if args.input not in (None, "golden"):
        data = _read_json(args.input)
        if "rows" in data:
            F = Frieze.from_json(data)
            rep = verify(F)
            if not rep.ok:
                raise InputError(f"not a frieze: {rep.violations[0]}")
    if F is None:
        F = frieze_from_triangulation(load_triangulation(args))
    _emit(args, F.to_json(), render(F, args.window))
    return EXIT_OK


def cmd_rays(args) -> int:
    T = load_triangulation(args)
    a = _diagonal(args.at, T)
    R = rays(T, a, quadrilateral(T, a, swap=args.swap))
    _emit(args, {k: [list(x) for x in v] for k, v in R.items()},
          "\n".join(f"{k:<4} " + " ".join(_arc_text(x) for x in v) for k, v in R.items()))
    return EXIT_OK


def cmd_strings_count(args) -> int:
    if args.input is None:
        raise InputError('strings count needs {"walk": [...], "dirs": [...]}')
    M = StringModule.from_json(_read_json(args.input))
    sh = shape(M)
    payload = {"module": M.to_json(), "legs": list(sh.legs),
               "transfer": submodule_count_transfer(M),
               "formula": submodule_count_formula(sh, admissible)}
    try:
        payload["bruteforce"] = submodule_count_bruteforce(M)
    except WalkTooLong:
        payload["bruteforce"] = None
    payload["count"] = submodule_count(M)
    agree = {v for k, v in payload.items() if k in ("transfer", "formula", "bruteforce") and v is not None}
    text = (f"legs {list(sh.legs)}\nsubmodules {payload['count']}\n"
            f"transfer {payload['transfer']} formula {payload['formula']} "
            f"bruteforce {payload['bruteforce']}\n")
    _emit(args, payload, text)
    return EXIT_OK if len(agree) == 1 else EXIT_VIOLATION


# parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="friezes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tri=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        if tri:
            p.add_argument("input", nargs="?",
                           help="triangulation JSON (path, inline, '-' for stdin) or 'golden'")
            p.add_argument("--n", type=int)
            p.add_argument("--diagonals", help="comma-separated i-j list")
            p.add_argument("--quiddity", help="comma-separated quiddity sequence")
            p.add_argument("--window", type=int, default=12)
        return p

    p = common(sub.add_parser("gen", help="frieze of a triangulation or quiddity sequence"))
    p.add_argument("--pipeline", choices=("quiddity", "ccmap", "both"), default="both")
    p.set_defaults(func=cmd_gen)

    p = common(sub.add_parser("flip", help="flip one diagonal or a sequence"))
    p.add_argument("--at")
    p.add_argument("--seq", help="comma-separated diagonals flipped in order")
    p.set_defaults(func=cmd_flip)

    p = common(sub.add_parser("delta", help="frieze corrections for flipping --at"))
    p.add_argument("--at", required=True)
    p.add_argument("--arc", help="report a single position")
    p.add_argument("--swap", action="store_true",
                   help="mirror the quadrilateral labels (b, c) <-> (d, e)")
    p.set_defaults(func=cmd_delta)

    p = common(sub.add_parser("mutate", help="frieze after flipping --at, from corrections"))
    p.add_argument("--at", required=True)
    p.add_argument("--swap", action="store_true",
                   help="mirror the quadrilateral labels (b, c) <-> (d, e)")
    p.set_defaults(func=cmd_mutate)

    p = common(sub.add_parser("rays", help="the eight rays through the quadrilateral of --at"))
    p.add_argument("--at", required=True)
    p.add_argument("--swap", action="store_true",
                   help="mirror the quadrilateral labels (b, c) <-> (d, e)")
    p.set_defaults(func=cmd_rays)

    p = common(sub.add_parser("verify", help="exhaustive invariant suite"), tri=False)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("enumerate", help="all triangulations of an n-gon"), tri=False)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = common(sub.add_parser("fit", help="fit the admissible-set rule for submodule counts"), tri=False)
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_fit)

    p = common(sub.add_parser("render", help="staggered text grid of a frieze"))
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("strings", help="string module utilities")
    ssub = p.add_subparsers(dest="strings_command", required=True)
    q = common(ssub.add_parser("count", help="submodule count of a string module"), tri=False)
    q.add_argument("input", nargs="?", help='{"walk": [...], "dirs": ["f", "b", ...]}')
    q.set_defaults(func=cmd_strings_count)
    q = common(ssub.add_parser("fit", help="same as the top-level fit"), tri=False)
    q.add_argument("--n-max", type=int, default=10)
    q.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, InvalidTriangulation, FriezeError, WalkTooLong,
            json.JSONDecodeError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
