"""Command-line front end.

Exit codes: 0 success / EQUIVALENT / PASS, 1 NONEQUIVALENT / FAIL,
2 UNKNOWN / INCONCLUSIVE / incomplete, 64 usage error, 65 invalid input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .bracket import DEFAULT_MAX_CROSSINGS, CrossingLimitError, jones, kauffman_bracket
from .classify import Result, classify, classify_family_pairwise
from .diagram.annular import AnnularDiagram, random_isotopy
from .diagram.planar import DiagramError, PlanarDiagram, parse_gauss
from .diagram.simplify import INCONCLUSIVE as BFS_INCONCLUSIVE
from .diagram.simplify import simplify_bfs
from .family import FamilyParams, gen_k4_scheme, gen_k5_scheme, realization_report, report_text
from .scheme import FAIL, INCONCLUSIVE, PASS, Ambient, Scheme, derived_invariant, validate_scheme

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65

DEFAULT_SEED = 20240601
DEFAULT_BFS_BUDGET = 20_000

_VERDICT_EXIT = {Result.EQUIVALENT: EXIT_OK, Result.NONEQUIVALENT: EXIT_NEGATIVE, Result.UNKNOWN: EXIT_UNDECIDED}
_STATUS_EXIT = {PASS: EXIT_OK, FAIL: EXIT_NEGATIVE, INCONCLUSIVE: EXIT_UNDECIDED}


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS)
    common.add_argument("--bfs-budget", type=int, default=DEFAULT_BFS_BUDGET)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = _Parser(prog="knotscheme", description="Schemes of gradient-like flows on 4-manifolds.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", parents=[common], help="rule checks for a scheme")
    v.add_argument("scheme")
    v = sub.add_parser("invariants", parents=[common], help="b, index and the derived invariant")
    v.add_argument("scheme")
    v = sub.add_parser("compare", parents=[common], help="classify two schemes")
    v.add_argument("left")
    v.add_argument("right")
    v.add_argument("--time-reversed", action="store_true", help="flows with saddle indices (2,3)")
    v = sub.add_parser("pairwise", parents=[common], help="verdict matrix for several schemes")
    v.add_argument("schemes", nargs="*")
    v.add_argument("--time-reversed", action="store_true")
    v = sub.add_parser("generate", parents=[common], help="write a family scheme")
    v.add_argument("--k", type=int, choices=(4, 5), required=True)
    v.add_argument("--gamma", type=int, required=True)
    v.add_argument("--i", type=int, default=0)
    v.add_argument("--perturb", type=int, default=0, help="random isotopy steps (uses --seed)")
    v.add_argument("-o", "--output")
    v = sub.add_parser("realize", parents=[common], help="describe a realizing flow")
    v.add_argument("scheme")
    v = sub.add_parser("jones", parents=[common], help="Jones polynomial of a knot or link")
    v.add_argument("diagram")
    v = sub.add_parser("simplify", parents=[common], help="bounded Reidemeister search")
    v.add_argument("diagram")
    return p


# -- input ---------------------------------------------------------------------------


def _read(arg: str) -> tuple[str, str | None]:
    """(text, suffix) for a path, or (arg, None) for an inline code or ``-`` (stdin)."""
    if arg == "-":
        return sys.stdin.read(), None
    p = Path(arg)
    try:
        if p.exists() and not p.is_dir():
            return p.read_text(), p.suffix
    except OSError as exc:
        raise InputError(f"cannot read {arg}: {exc}") from exc
    return arg, None


def _scheme_from_text(arg: str, text: str, suffix: str | None) -> Scheme:
    try:
        if suffix == ".ann":
            return Scheme(Ambient.S2xS1, AnnularDiagram.parse(text), Path(arg).stem)
        if text.lstrip().startswith("{"):
            return Scheme.from_json(text)
    except DiagramError as exc:
        raise InputError(str(exc)) from exc
    raise InputError(f"{arg!r} is neither a scheme file nor scheme JSON")


def load_scheme(arg: str) -> Scheme:
    return _scheme_from_text(arg, *_read(arg))


def load_diagram(arg: str) -> PlanarDiagram:
    text, suffix = _read(arg)
    try:
        if suffix in (".scheme", ".json", ".ann"):
            return _scheme_from_text(arg, text, suffix).planar()
        return parse_gauss(text)
    except DiagramError as exc:
        raise InputError(str(exc)) from exc


# -- output --------------------------------------------------------------------------


def _emit(args, payload: dict[str, Any], text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _poly_dict(p) -> dict[str, str]:
    return {"A": p.to_text(), "t": p.to_t_text()}


# -- verbs --------------------------------------------------------------------------


def _cmd_validate(args) -> int:
    s = load_scheme(args.scheme)
    rep = validate_scheme(s, args.bfs_budget)
    lines = [f"{rep.status}"] + [f"  {c.name}: {c.status} ({c.detail})" for c in rep.checks]
    _emit(args, rep.to_dict(), "\n".join(lines))
    return _STATUS_EXIT[rep.status]


def _cmd_invariants(args) -> int:
    s = load_scheme(args.scheme)
    payload: dict[str, Any] = {
        "ambient": s.ambient.value,
        "k": s.k,
        "b": s.b,
        "index": s.index,
        "cut_signs": list(s.cut_signs),
    }
    lines = [f"ambient {s.ambient.value} (k={s.k})", f"b = {s.b}", f"index = {s.index}"]
    code = EXIT_OK
    if s.ambient.value == "S2xS1":
        d = derived_invariant(s, args.max_crossings)
        payload["derived_invariant"] = d.to_dict()
        lines.append(f"derived invariant ({d.status}):")
        for e in d.to_dict()["entries"]:
            lines.append("  {" + ", ".join(e) + "}")
        if not d.complete:
            lines.append(f"  strands over the crossing limit: {list(d.incomplete)}")
            code = EXIT_UNDECIDED
    _emit(args, payload, "\n".join(lines))
    return code


def _cmd_compare(args) -> int:
    s1, s2 = load_scheme(args.left), load_scheme(args.right)
    v = classify(s1, s2, args.time_reversed, True, args.max_crossings)
    text = v.result.value + "\n" + "\n".join(f"  {k}: {val}" for k, val in v.certificate.items())
    _emit(args, v.to_dict(), text)
    return _VERDICT_EXIT[v.result]


def _cmd_pairwise(args) -> int:
    schemes = [load_scheme(a) for a in args.schemes]
    m = classify_family_pairwise(schemes, True, args.max_crossings, args.time_reversed)
    payload = {
        "schemes": list(args.schemes),
        "matrix": [[v.to_dict() for v in row] for row in m],
    }
    short = {Result.EQUIVALENT: "EQ", Result.NONEQUIVALENT: "NE", Result.UNKNOWN: "??"}
    lines = [" ".join(short[v.result] for v in row) for row in m]
    _emit(args, payload, "\n".join(lines))
    if any(v.result is Result.UNKNOWN for row in m for v in row):
        return EXIT_UNDECIDED
    return EXIT_OK


def _cmd_generate(args) -> int:
    try:
        if args.k == 4:
            s = gen_k4_scheme(FamilyParams(args.gamma, args.i), max_crossings=args.max_crossings)
        else:
            if args.i:
                raise UsageError("--i applies to k=4 only")
            s = gen_k5_scheme(args.gamma)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.perturb:
        knot = random_isotopy(s.knot, random.Random(args.seed), args.perturb)
        s = Scheme(s.ambient, knot, s.name)
    out = s.to_json() + "\n"
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _cmd_realize(args) -> int:
    s = load_scheme(args.scheme)
    try:
        r = realization_report(s)
    except DiagramError as exc:
        raise InputError(str(exc)) from exc
    _emit(args, r, report_text(r))
    return EXIT_OK


def _cmd_jones(args) -> int:
    d = load_diagram(args.diagram)
    try:
        j = jones(d, args.max_crossings)
        br = kauffman_bracket(d, args.max_crossings)
    except CrossingLimitError as exc:
        _emit(args, {"status": "INCOMPLETE", "reason": str(exc)}, f"INCOMPLETE: {exc}")
        return EXIT_UNDECIDED
    payload = {
        "crossings": d.n,
        "components": d.num_components,
        "writhe": d.writhe,
        "bracket": _poly_dict(br),
        "jones": _poly_dict(j),
    }
    _emit(args, payload, j.to_t_text())
    return EXIT_OK


def _cmd_simplify(args) -> int:
    d = load_diagram(args.diagram)
    res = simplify_bfs(d, args.max_crossings, args.bfs_budget)
    payload = {
        "status": res.status,
        "crossings_before": d.n,
        "crossings_after": res.crossings,
        "states": res.states,
        "gauss_code": res.diagram.to_gauss(),
    }
    text = f"{res.status}: {d.n} -> {res.crossings} crossings ({res.states} states)\n{res.diagram}"
    _emit(args, payload, text)
    return EXIT_UNDECIDED if res.status == BFS_INCONCLUSIVE else EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "invariants": _cmd_invariants,
    "compare": _cmd_compare,
    "pairwise": _cmd_pairwise,
    "generate": _cmd_generate,
    "realize": _cmd_realize,
    "jones": _cmd_jones,
    "simplify": _cmd_simplify,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
        if args.max_crossings <= 0 or args.bfs_budget <= 0:
            raise UsageError("--max-crossings and --bfs-budget must be positive")
        return _COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, DiagramError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_DATAERR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
