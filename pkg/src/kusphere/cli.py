"""kusphere command line: homotopy, coker, verify, lattice."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .errors import InputError, KuSphereError, ResourceError
from .kulocal import HomotopyQuery, homotopy_mackey, local_homotopy_mackey
from .mackey import SCHEMA_VERSION, coker_closed_form, coker_mackey
from .qgroups import DEFAULT_ORDER_BOUND, lattice, load_class_data, parse_group
from .render import lattice_dot, lattice_text, render_text

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _int_range(text: str) -> range:
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            return range(int(lo), int(lo) + 1)
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kusphere", description=__doc__)
    p.add_argument("--version", action="version", version=f"kusphere {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("homotopy", help="homotopy Mackey functor in degree n")
    h.add_argument("--group", required=True)
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--ell", type=int, help="primitive root mod |G| (default: smallest)")
    h.add_argument("--prime", type=int, help="only the piece localized at this prime")
    h.add_argument("--format", choices=("text", "json"), default="text")
    h.add_argument("--order-bound", type=int, default=DEFAULT_ORDER_BOUND)

    c = sub.add_parser("coker", help="cokernel of psi^l - 1 on RU{beta^d}")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--group")
    src.add_argument("--classdata", metavar="FILE")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--ell", type=int)
    c.add_argument("--method", choices=("closed", "snf", "both"), default="closed")
    c.add_argument("--mode", choices=("q_complete", "integral"), default="q_complete")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--order-bound", type=int, default=DEFAULT_ORDER_BOUND)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=("examples", "sweep", "axioms"), required=True)
    v.add_argument("--qset", type=_int_list, default=[3, 5, 7])
    v.add_argument("--order-max", type=int, help="largest group order (default: q^4, and 3^5)")
    v.add_argument("--d-range", type=_int_range, default=range(-6, 7), metavar="LO:HI")
    v.add_argument("--format", choices=("text", "json"), default="text")

    lat = sub.add_parser("lattice", help="subgroup lattice")
    lat.add_argument("--group", required=True)
    lat.add_argument("--format", choices=("text", "dot"), default="text")
    lat.add_argument("--order-bound", type=int, default=DEFAULT_ORDER_BOUND)
    return p


def _classdata_source(arg: str) -> str:
    """A path, or the name of a bundled fixture such as extraspecial27.json."""
    if Path(arg).is_file():
        return Path(arg).read_text(encoding="utf-8")
    bundled = resources.files("kusphere").joinpath("data", Path(arg).name)
    if bundled.is_file():
        return bundled.read_text(encoding="utf-8")
    raise InputError(f"no class data file {arg!r}")


def _document(command: dict, result) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "result": result}
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def cmd_homotopy(args) -> tuple[str, int]:
    G = parse_group(args.group)
    query = HomotopyQuery(G, args.n, args.ell, args.order_bound)
    if args.prime is not None:
        M = local_homotopy_mackey(G, args.n, args.prime, query.ell, args.order_bound)
    else:
        M = homotopy_mackey(query)
    echo = {"name": "homotopy", "group": G.name, "n": args.n, "ell": query.ell,
            "ell_source": "given" if args.ell is not None else "auto", "prime": args.prime}
    if args.format == "json":
        return _document(echo, M.to_json()), EXIT_OK
    return render_text(M), EXIT_OK


def cmd_coker(args) -> tuple[str, int]:
    if args.classdata:
        data = load_class_data(_classdata_source(args.classdata), name=Path(args.classdata).stem)
        ell = args.ell if args.ell is not None else min(data.power_maps)
        value = coker_closed_form(data, ell, args.d, args.mode)
        echo = {"name": "coker", "classdata": data.name, "d": args.d, "ell": ell, "mode": args.mode}
        if args.format == "json":
            return _document(echo, {"value": str(value)}), EXIT_OK
        return f"{value}\n", EXIT_OK
    G = parse_group(args.group)
    ell = HomotopyQuery(G, 1, args.ell).ell
    M = coker_mackey(G, ell, args.d, method=args.method, mode=args.mode, bound=args.order_bound)
    echo = {"name": "coker", "group": G.name, "d": args.d, "ell": ell, "method": args.method, "mode": args.mode}
    agreement = "closed form and SNF agree at every level" if args.method == "both" else None
    if args.format == "json":
        result = M.to_json()
        if agreement:
            result["agreement"] = agreement
        return _document(echo, result), EXIT_OK
    text = render_text(M)
    if agreement:
        text = f"# {agreement}\n" + text
    return text, EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    from . import suites

    if args.suite == "examples":
        rep = suites.examples_suite()
    elif args.suite == "sweep":
        rep = suites.sweep_suite(args.qset, args.order_max, args.d_range)
    else:
        rep = suites.axioms_suite(args.qset, args.order_max, args.d_range)
    echo = {"name": "verify", "suite": args.suite, "qset": args.qset, "order_max": args.order_max,
            "d_range": [args.d_range.start, args.d_range.stop - 1]}
    code = EXIT_OK if rep.ok else EXIT_FAILED
    if args.format == "json":
        return _document(echo, rep.to_json()), code
    lines = [rep.summary()] + [f"  FAIL {c.name}: {c.detail}" for c in rep.failures]
    return "\n".join(lines) + "\n", code


def cmd_lattice(args) -> tuple[str, int]:
    lat = lattice(parse_group(args.group), args.order_bound)
    return (lattice_dot(lat) if args.format == "dot" else lattice_text(lat)), EXIT_OK


COMMANDS = {"homotopy": cmd_homotopy, "coker": cmd_coker, "verify": cmd_verify, "lattice": cmd_lattice}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out, code = COMMANDS[args.command](args)
    except ResourceError as exc:
        print(f"kusphere: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InputError as exc:
        print(f"kusphere: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KuSphereError as exc:
        print(f"kusphere: {exc}", file=sys.stderr)
        return EXIT_FAILED
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
