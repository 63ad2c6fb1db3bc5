"""Command-line entry point: ``braidforge <command> ...``.

Every command returns a :class:`CommandOutcome`. With ``--json`` the payload is printed as a JSON
document carrying ``"schema": "braidforge/1"``; otherwise an aligned table is printed.
Exit codes: 0 success, 1 domain error, 2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import sys
from typing import Any, Callable, Sequence

import numpy as np

from .braids import BraidWord, garside_normal_form, underlying_permutation, words_equal
from .compiler import NAMED_GATES, SearchConfig, TargetGate, compile_gate, density_probe
from .errors import BraidforgeError, InvalidInputError
from .invariants import OrbifoldGeometry, invariant_report
from .jones import rep_matrices, unitarize
from .presentations import GroupPresentation, abelianization, orbifold_quotient, validate_c_group
from .surface_braids import (
    BraidSystem,
    boundary_braid,
    hurwitz_orbit,
    monodromy_report,
    orbit_size_formula,
    standard_braid_system,
)
from .temperley_lieb import TLParams, parse_angle

SCHEMA = "braidforge/1"

log = logging.getLogger("braidforge")


@dataclasses.dataclass
class CommandOutcome:
    exit_code: int
    payload: dict[str, Any]
    text: str = ""

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.payload, indent=2)
        return self.text


class _UsageError(Exception):
    def __init__(self, message: str, usage: str) -> None:
        super().__init__(message)
        self.usage = usage


class _HelpShown(Exception):
    def __init__(self, text: str) -> None:
        super().__init__(text)
        self.text = text


class _Parser(argparse.ArgumentParser):
    # argparse exits the process on errors and --help; run() must return instead

    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message, self.format_usage())

    def print_help(self, file=None) -> None:  # type: ignore[override]
        raise _HelpShown(self.format_help())

    def exit(self, status: int = 0, message: str | None = None) -> None:  # type: ignore[override]
        raise _UsageError(message or "", self.format_usage())


def _table(rows: Sequence[tuple[str, Any]]) -> str:
    if not rows:
        return ""
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {str(v).lower() if isinstance(v, bool) else v}"
                     for k, v in rows)


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path!r}: {exc.strerror}") from None


def _ok(command: str, data: dict[str, Any], rows: Sequence[tuple[str, Any]]) -> CommandOutcome:
    return CommandOutcome(0, {"schema": SCHEMA, "command": command, **data}, _table(rows))


def _pairs(m: np.ndarray) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _complex_text(z: complex) -> str:
    return f"{z.real:+.6f}{z.imag:+.6f}i"


# --- commands -------------------------------------------------------------------

def _cmd_invariants(args: argparse.Namespace) -> CommandOutcome:
    geometry = OrbifoldGeometry.from_json(_read_source(args.source))
    report = invariant_report(geometry)
    data = report.to_json_dict()
    rows = [(k, v) for k, v in data.items() if k != "warnings"]
    rows += [("warning", w) for w in report.warnings]
    return _ok("invariants", {"input": geometry.to_dict(), "report": data}, rows)


def _load_system(args: argparse.Namespace) -> BraidSystem:
    if args.system is not None:
        if args.standard:
            raise InvalidInputError("give either --standard or --system, not both")
        return BraidSystem.parse(_read_source(args.system))
    if not args.standard or args.degree is None:
        raise InvalidInputError("need --standard --degree m or --system FILE")
    return standard_braid_system(args.degree)


def _cmd_hurwitz_orbit(args: argparse.Namespace) -> CommandOutcome:
    bs = _load_system(args)
    result = hurwitz_orbit(bs, cap=args.cap)
    data: dict[str, Any] = {"degree": bs.degree, "length": len(bs), "size": result.size,
                            "truncated": result.truncated}
    if args.standard:
        data["expected"] = orbit_size_formula(len(bs))
    return _ok("hurwitz-orbit", data, list(data.items()))


def _cmd_cover_report(args: argparse.Namespace) -> CommandOutcome:
    bs = _load_system(args)
    report = monodromy_report(bs, args.base_euler)
    data = dataclasses.asdict(report)
    data["notes"] = list(report.notes)
    data["boundary_braid"] = boundary_braid(bs).signed()
    rows = [(k, v) for k, v in data.items() if k != "notes"] + [("note", n) for n in report.notes]
    return _ok("cover-report", data, rows)


def _cmd_braid(args: argparse.Namespace) -> CommandOutcome:
    n = args.strands
    if args.braid_command == "eq":
        w1, w2 = BraidWord.parse(args.word1, n), BraidWord.parse(args.word2, n)
        equal = words_equal(w1, w2)
        return _ok("braid eq", {"strands": n, "equal": equal}, [("equal", str(equal).lower())])
    w = BraidWord.parse(args.word, n)
    if args.braid_command == "nf":
        nf = garside_normal_form(w)
        factors = [list(f.images) for f in nf.factors]
        data = {"strands": n, "delta_power": nf.delta_power, "factors": factors,
                "canonical_length": nf.canonical_length(), "word": nf.to_word().signed()}
        rows = [("delta_power", nf.delta_power), ("canonical_length", nf.canonical_length())]
        rows += [(f"factor {k + 1}", " ".join(map(str, f))) for k, f in enumerate(factors)]
        rows.append(("word", str(nf.to_word()) or "(empty)"))
        return _ok("braid nf", data, rows)
    perm = underlying_permutation(w)
    cycles = [list(c) for c in perm.cycles()]
    data = {"strands": n, "images": list(perm.images), "cycles": cycles}
    return _ok("braid perm", data, [("images", " ".join(map(str, perm.images))),
                                    ("cycles", " ".join("(" + " ".join(map(str, c)) + ")" for c in cycles))])


def _parse_loop(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split()]
    except ValueError:
        raise InvalidInputError(f"cannot parse loop {text!r}") from None


def _cmd_presentation(args: argparse.Namespace) -> CommandOutcome:
    p = GroupPresentation.parse(_read_source(args.source))
    command = f"presentation {args.presentation_command}"
    extra: dict[str, Any] = {}
    if args.presentation_command == "orbifold-quotient":
        loops = [_parse_loop(t) for t in args.loop or []]
        p = orbifold_quotient(p, loops, args.order or [])
        extra["presentation"] = p.dumps()
    elif args.presentation_command == "c-group":
        if not validate_c_group(p):
            raise InvalidInputError("not a C-group presentation: relators must read a b a^-1 c^-1")
        extra["c_group"] = True
    ab = abelianization(p)
    data = {"generators": p.generator_count, "relators": len(p.relators), "free_rank": ab.free_rank,
            "torsion": list(ab.torsion_coefficients), "abelianization": str(ab), **extra}
    if args.presentation_command == "c-group":
        data["components"] = ab.free_rank
    rows = [(k, v) for k, v in data.items() if k not in ("presentation", "torsion")]
    return _ok(command, data, rows)


def _params(text: str) -> TLParams:
    return TLParams.from_angle(parse_angle(text))


def _cmd_rep(args: argparse.Namespace) -> CommandOutcome:
    params = _params(args.a)
    rm = rep_matrices(args.n, args.p, params)
    if not args.raw:
        rm = unitarize(rm, params)
    images = []
    rows: list[tuple[str, Any]] = [("dimension", rm.dimension), ("unitary", str(rm.unitary).lower()),
                                   ("delta", f"{params.delta:.12g}")]
    for i, m in enumerate(rm.sigma_images, start=1):
        eig = np.linalg.eigvals(m)
        images.append({"index": i, "matrix": _pairs(m),
                       "eigenvalues": [[float(z.real), float(z.imag)] for z in eig]})
        rows.append((f"sigma_{i} eigenvalues", "  ".join(_complex_text(z) for z in eig)))
    data = {"n": args.n, "p": args.p, "a": [rm.a_value.real, rm.a_value.imag],
            "delta": params.delta, "dimension": rm.dimension, "unitary": rm.unitary,
            "sigma": images, "braid_residual": rm.braid_residual(),
            "unitarity_residual": rm.unitarity_residual()}
    rows += [("braid_residual", f"{data['braid_residual']:.3g}"),
             ("unitarity_residual", f"{data['unitarity_residual']:.3g}")]
    return _ok("rep", data, rows)


def _target(spec: str, seed: int) -> TargetGate:
    key = spec.lower()
    if key in NAMED_GATES:
        return NAMED_GATES[key]
    if key == "haar":
        return TargetGate.haar(2, seed)
    return TargetGate.from_json(_read_source(spec))


def _cmd_compile(args: argparse.Namespace) -> CommandOutcome:
    params = _params(args.a)
    rm = unitarize(rep_matrices(args.n, args.p, params), params)
    target = _target(args.target, args.seed)
    cfg = SearchConfig(max_depth=args.depth, tolerance=args.tolerance, beam_width=args.beam,
                       strategy=args.strategy, dedupe=not args.no_dedupe)
    result = compile_gate(target, rm, cfg)
    data = {"target": target.name, "seed": args.seed, "result": result.to_json_dict()}
    rows = [("target", target.name), ("word", str(result.word) or "(empty)"),
            ("length", len(result.word)), ("achieved_distance", f"{result.achieved_distance:.6e}"),
            ("nodes_explored", result.nodes_explored), ("depth_reached", result.depth_reached)]
    return _ok("compile", data, rows)


def _cmd_probe(args: argparse.Namespace) -> CommandOutcome:
    params = _params(args.a)
    rm = unitarize(rep_matrices(3, 1, params), params)
    stats = [density_probe(rm, args.samples, d, args.seed) for d in args.depth]
    data = {"probes": [s.to_json_dict() for s in stats]}
    rows = [(f"depth {s.depth}", f"min {s.minimum:.4e}  median {s.median:.4e}  max {s.maximum:.4e}")
            for s in stats]
    return _ok("probe", data, rows)


# --- parser ---------------------------------------------------------------------

def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print a JSON document instead of a table")

    parser = _Parser(prog="braidforge", description="Braid, orbifold and Jones-representation toolkit.")
    parser.add_argument("--json", action="store_true", default=False,
                        help="print a JSON document instead of a table")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def add(name: str, handler: Callable, help_text: str, target=sub) -> _Parser:
        p = target.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("invariants", _cmd_invariants, "orbifold invariants of (M, Σ, ν) from a JSON file")
    p.add_argument("source", help="JSON file, or - for stdin")

    for name, handler, text in [
        ("hurwitz-orbit", _cmd_hurwitz_orbit, "size of the Hurwitz orbit of a braid system"),
        ("cover-report", _cmd_cover_report, "Riemann-Hurwitz data of a braided surface"),
    ]:
        p = add(name, handler, text)
        p.add_argument("--degree", type=int, help="degree m of the standard system")
        p.add_argument("--standard", action="store_true", help="use (σ_1, ..., σ_{m-1})")
        p.add_argument("--system", help="braid-system file, or - for stdin")
        if name == "hurwitz-orbit":
            p.add_argument("--cap", type=int, default=100_000, help="stop after this many systems")
        else:
            p.add_argument("--base-euler", type=int, default=1,
                           help="Euler characteristic of the base (1 disc, 2 sphere)")

    braid = add("braid", None, "braid word utilities")
    braid_sub = braid.add_subparsers(dest="braid_command", metavar="ACTION", parser_class=_Parser,
                                     required=True)
    p = add("eq", _cmd_braid, "decide whether two words are the same braid", braid_sub)
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--strands", "-n", type=int, required=True)
    for name, text in [("nf", "left Garside normal form"), ("perm", "underlying permutation")]:
        p = add(name, _cmd_braid, text, braid_sub)
        p.add_argument("word", help='signed generator indices, e.g. "1 2 -1"')
        p.add_argument("--strands", "-n", type=int, required=True)

    pres = add("presentation", None, "finitely presented group utilities")
    pres_sub = pres.add_subparsers(dest="presentation_command", metavar="ACTION",
                                   parser_class=_Parser, required=True)
    for name, text in [("abelianize", "abelianization via Smith normal form"),
                       ("orbifold-quotient", "add relators killing powers of meridian loops"),
                       ("c-group", "check a C-group presentation and count its components")]:
        p = add(name, _cmd_presentation, text, pres_sub)
        p.add_argument("source", help="presentation file, or - for stdin")
        if name == "orbifold-quotient":
            p.add_argument("--loop", action="append", help='loop word, e.g. "1"; repeatable')
            p.add_argument("--order", action="append", type=int, help="cone order per loop")

    def rep_flags(p: _Parser, n_default: int = 3, p_default: int = 1) -> None:
        p.add_argument("--n", type=int, default=n_default, help="strands")
        p.add_argument("--p", type=int, default=p_default, help="through strands of the module")
        p.add_argument("--a", default="2pi/5", help="angle of A on the unit circle")

    p = add("rep", _cmd_rep, "Jones representation matrices")
    rep_flags(p)
    p.add_argument("--raw", action="store_true", help="skip unitarisation")

    p = add("compile", _cmd_compile, "approximate a gate by a braid word")
    rep_flags(p)
    p.add_argument("--target", default="h", help="x, z, h, i, haar or a JSON matrix file")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--seed", type=int, default=0, help="seed for --target haar")
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--beam", type=int, default=None)
    p.add_argument("--strategy", choices=["exhaustive", "meet-in-middle"], default="exhaustive")
    p.add_argument("--no-dedupe", action="store_true")

    p = add("probe", _cmd_probe, "seeded density probe on B_3 with Haar-random targets")
    p.add_argument("--a", default="2pi/5")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--depth", type=int, nargs="+", default=[4, 8, 12])
    p.add_argument("--seed", type=int, default=0)
    return parser


def _error(kind: str, message: str, code: int, **extra: Any) -> CommandOutcome:
    payload = {"schema": SCHEMA, "error": {"kind": kind, "message": message, "exit_code": code, **extra}}
    return CommandOutcome(code, payload, f"error: {message}")


def _wants_json(argv: Sequence[str]) -> bool:
    return "--json" in argv


def run(argv: Sequence[str]) -> CommandOutcome:
    argv = list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _HelpShown as shown:
        return CommandOutcome(0, {"schema": SCHEMA, "help": shown.text}, shown.text)
    except _UsageError as exc:
        return _error("usage_error", str(exc), 2, usage=exc.usage.strip())
    if getattr(args, "handler", None) is None:
        return _error("usage_error", "missing command", 2, usage=parser.format_usage().strip())
    try:
        return args.handler(args)
    except BraidforgeError as exc:
        return _error(exc.kind, str(exc), exc.exit_code)


def _default(o: Any) -> Any:
    if isinstance(o, float) and math.isinf(o):
        return "inf"
    raise TypeError(f"not serialisable: {type(o).__name__}")


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    logging.basicConfig(level=logging.DEBUG if ("-v" in argv or "--verbose" in argv) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    outcome = run(argv)
    as_json = _wants_json(argv)
    is_error = "error" in outcome.payload
    if is_error:
        err = outcome.payload["error"]
        print(f"braidforge: {err['message']}", file=sys.stderr)
        if "usage" in err:
            print(err["usage"], file=sys.stderr)
    if as_json:
        print(json.dumps(outcome.payload, indent=2, default=_default))
    elif not is_error and outcome.text:
        print(outcome.text)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
