"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 no augmentation (``augs
--exists``), 3 usage error, 4 cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import builders, front_model, monodromy
from .aug_search import CapExceeded, SearchConfig, brute_force, staged_search
from .chd import Augmentation
from .free_dga import CellularDGA
from .gf2_core import BitMatrix

EXIT_OK, EXIT_INVALID, EXIT_NO_AUG, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cellular-dga", description="Cellular DGAs of Legendrian surface fronts over GF(2).")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="check a front complex file")
    v.add_argument("file")

    d = sub.add_parser("dga", help="generators, degrees and the d^2 = 0 check")
    d.add_argument("file")
    d.add_argument("--print", action="store_true", dest="show", help="print the differential of every generator")

    a = sub.add_parser("augs", help="existence, count or list of augmentations")
    a.add_argument("file")
    a.add_argument("--rho", type=int, required=True)
    mode = a.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exists", action="store_const", const="exists", dest="mode")
    mode.add_argument("--count", action="store_const", const="count", dest="mode")
    mode.add_argument("--list", action="store_const", const="list", dest="mode")
    a.add_argument("--brute-force", action="store_true")
    a.add_argument("--cap", type=int, default=None,
                   help="generator cap for --brute-force, solution cap for --list")

    h = sub.add_parser("homology", help="fiber homology of one augmentation at a 0-cell")
    h.add_argument("file")
    h.add_argument("--rho", type=int, required=True)
    h.add_argument("--aug", type=int, required=True, help="index in the --list order")
    h.add_argument("--vertex", required=True)
    h.add_argument("--cap", type=int, default=10000)

    m = sub.add_parser("monodromy", help="continuation and homology maps of loop words")
    m.add_argument("file")
    m.add_argument("--rho", type=int, required=True)
    m.add_argument("--aug", type=int, required=True)
    m.add_argument("--loop", required=True)
    m.add_argument("--cap", type=int, default=10000)

    o = sub.add_parser("obstruct", help="generating family obstruction report")
    o.add_argument("file")
    o.add_argument("--rho", type=int, required=True)
    o.add_argument("--loops", default=None)
    o.add_argument("--vertex", default=None, help="basepoint when no loops are given")
    o.add_argument("--json", action="store_true")

    g = sub.add_parser("gen", help="write a builder complex")
    g.add_argument("family", choices=["tz", "tz_local", "conormal", "torus", "saucer", "parallel_torus"])
    g.add_argument("--graph", default=None, help="trigraph/1 file (tz only)")
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--loops-out", default=None, help="also write the canonical loop words (torus only)")

    gr = sub.add_parser("graph", help="write a corpus graph as trigraph/1")
    gr.add_argument("name", choices=[x.name for x in builders.graph_corpus()])
    gr.add_argument("-o", "--output", required=True)
    return p


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise front_model.SchemaError(f"{path}: line {exc.lineno}: {exc.msg}") from None


def _load_dga(path: str) -> CellularDGA:
    fc = front_model.load(_read_json(path))
    return CellularDGA(fc)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _aug_label(dga: CellularDGA, aug: Augmentation) -> str:
    ones = [dga.gens[i].label() for i, v in enumerate(aug.values) if v]
    return " ".join(ones) if ones else "(all zero)"


def _pick(dga: CellularDGA, rho: int, index: int, cap: int) -> Augmentation:
    augs = staged_search(dga, SearchConfig(rho=rho, mode="list", solution_cap=cap)).augmentations
    if not 0 <= index < len(augs):
        raise UsageError(f"augmentation index {index} out of range (0..{len(augs) - 1})")
    return augs[index]


def _matrix(m: BitMatrix, indent: str = "  ") -> str:
    return "".join(indent + r + "\n" for r in m.to_strings()) if m.nrows else indent + "(empty)\n"


def _run(args: argparse.Namespace, out) -> int:
    if args.verb == "validate":
        fc = front_model.load(_read_json(args.file))
        problems = front_model.validate(fc)
        for line in problems:
            out.write(line + "\n")
        if problems:
            return EXIT_INVALID
        out.write("ok\n")
        return EXIT_OK

    if args.verb == "gen":
        if args.family == "tz":
            if args.graph is None:
                raise UsageError("gen tz needs --graph")
            fc = builders.tz_complex(builders.load_graph(_read_json(args.graph)))
        else:
            if args.graph is not None:
                raise UsageError("--graph only applies to gen tz")
            fc = builders.BUILDERS[args.family]()
        _write(args.output, front_model.dumps(fc))
        if args.loops_out:
            if args.family != "torus":
                raise UsageError("--loops-out only applies to gen torus")
            _write(args.loops_out, json.dumps(builders.torus_loops(), indent=1) + "\n")
        return EXIT_OK

    if args.verb == "graph":
        g = {x.name: x for x in builders.graph_corpus()}[args.name]
        _write(args.output, json.dumps(builders.save_graph(g), indent=1) + "\n")
        return EXIT_OK

    dga = _load_dga(args.file)
    if args.verb == "dga":
        bad_d2 = dga.check_d_squared()
        bad_deg = dga.check_degrees()
        out.write(f"generators {len(dga.gens)}\n")
        out.write(f"d^2 = 0: {'yes' if not bad_d2 else 'no'}\n")
        out.write(f"degree -1: {'yes' if not bad_deg else 'no'}\n")
        if args.show:
            out.write(dga.dump())
        return EXIT_OK if not (bad_d2 or bad_deg) else EXIT_INVALID

    if args.verb == "augs":
        cfg = SearchConfig(rho=args.rho, mode=args.mode,
                           generator_cap=args.cap if (args.cap and args.brute_force) else 24,
                           solution_cap=args.cap if (args.cap and not args.brute_force) else 10000)
        res = (brute_force if args.brute_force else staged_search)(dga, cfg)
        if args.mode == "exists":
            out.write("yes\n" if res.exists else "no\n")
            return EXIT_OK if res.exists else EXIT_NO_AUG
        if args.mode == "count":
            out.write(f"{res.count}\n")
            return EXIT_OK
        for i, aug in enumerate(res.augmentations):
            out.write(f"{i}: {_aug_label(dga, aug)}\n")
        return EXIT_OK

    if args.verb == "homology":
        aug = _pick(dga, args.rho, args.aug, args.cap)
        basis, d = monodromy.fiber_complex(dga, aug, args.vertex)
        dims = monodromy.homology_dims(d, basis)
        out.write(f"vertex {args.vertex}  sheets {basis.size}\n")
        out.write("differential\n" + _matrix(d))
        for deg in sorted(dims):
            out.write(f"H[{deg}] = {dims[deg]}\n")
        out.write(f"total {sum(dims.values())}\n")
        return EXIT_OK

    if args.verb == "monodromy":
        aug = _pick(dga, args.rho, args.aug, args.cap)
        for lp in monodromy.load_loops(_read_json(args.loop)):
            cont = monodromy.continuation(dga, aug, lp)
            hmap = monodromy.monodromy_on_homology(dga, aug, lp)
            trivial = hmap == BitMatrix.identity(hmap.nrows)
            out.write(f"loop {lp.name} at {lp.basepoint}\n")
            out.write("continuation\n" + _matrix(cont))
            out.write("on homology\n" + _matrix(hmap))
            out.write(f"trivial: {'yes' if trivial else 'no'}\n")
        return EXIT_OK

    if args.verb == "obstruct":
        loops = monodromy.load_loops(_read_json(args.loops)) if args.loops else []
        rep = monodromy.obstruction_report(dga, loops, args.rho, basepoint=args.vertex)
        if args.json:
            out.write(json.dumps(rep.to_json(), indent=1, sort_keys=True) + "\n")
        else:
            out.write(rep.table())
        return EXIT_OK
    raise UsageError(f"unknown verb {args.verb}")


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = _parser().parse_args(argv)
        return _run(args, out)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except CapExceeded as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP
    except (front_model.SchemaError, front_model.FrontError, builders.GraphError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID
    except monodromy.LoopError as exc:
        sys.stderr.write(f"invalid loop: {exc}\n")
        return EXIT_INVALID
    except ValueError as exc:  # invalid complexes and search settings
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
