"""Command line front end: `dwdefect {surface,cobordism,oracle,examples}`.

Exit codes: 0 success, 1 usage error, 2 input or budget error, 3 failed
computation or consistency check.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from .cobordism import CobordismSpan, HandlebodyResult, load_cobordism
from .config import configure, settings
from .errors import DWError
from .examples import run_examples
from .kitaev import ground_space_dim
from .surface import load_surface, z_surface

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve(path: str) -> Path:
    """A path on disk, or the name of a bundled input file."""
    p = Path(path)
    if p.exists():
        return p
    bundled = resources.files("dwdefect") / "data" / p.name
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(path)


def _fmt(x: float) -> str:
    x = round(float(x), 10) + 0.0
    return f"{x:g}"


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) < 1e-10:
        return _fmt(z.real)
    return f"{_fmt(z.real)}{'+' if z.imag >= 0 else '-'}{_fmt(abs(z.imag))}i"


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def cmd_surface(args) -> int:
    S = load_surface(_resolve(args.file))
    space = z_surface(S, basis=args.basis, budget=args.budget)
    if args.json:
        _emit({"surface": S.name, **space.as_json(basis=args.basis)})
        return EXIT_OK
    print(f"dim Z(Σ) = {space.dim}")
    print(f"supported configurations: {space.supported}, gauge group order: {space.gauge_order}")
    for r in space.decomposition:
        label = ", ".join(f"{e}={v}" for e, v in r.labels.items())
        print(f"  [{label}] orbit {r.orbit_size}, stabilizer {r.stabilizer_order}, invariants {r.invariant_dim}")
    if args.basis and space.bases is not None:
        for r, B in zip(space.decomposition, space.bases):
            if B.shape[1]:
                print(f"  basis at [{', '.join(r.labels.values())}]:")
                for row in B:
                    print("    " + " ".join(_fmt_complex(z) for z in row))
    return EXIT_OK


def cmd_cobordism(args) -> int:
    result = load_cobordism(_resolve(args.file))
    if isinstance(result, HandlebodyResult):
        record = {
            "enumerated": str(result.enumerated),
            "via_groupoid": str(result.via_groupoid),
            "closed_form": None if result.closed_form is None else str(result.closed_form),
            "closed_form_kind": result.closed_form_kind,
            "consistent": result.consistent(),
        }
        if args.json:
            _emit(record)
        else:
            print(f"Z(M) = {result.enumerated} (gauge groupoid: {result.via_groupoid}, "
                  f"{result.closed_form_kind} closed form: {record['closed_form']})")
        if not result.consistent():
            print("error: the three evaluations disagree", file=sys.stderr)
            return EXIT_COMPUTE
        return EXIT_OK
    assert isinstance(result, CobordismSpan)
    if args.json:
        _emit(result.as_json())
        return EXIT_OK
    M = result.matrix()
    print(f"{result.provenance}: Z = {M.shape[0]}×{M.shape[1]} matrix")
    for row in M:
        print("  " + " ".join(_fmt_complex(z) for z in row))
    return EXIT_OK


def cmd_oracle(args) -> int:
    S = load_surface(_resolve(args.file))
    r = ground_space_dim(S, budget=args.budget)
    if args.json:
        _emit({"surface": S.name, **r.as_json()})
    else:
        print(f"ground space dim = {r.dim} (matches surface: {'yes' if r.matches else 'no'})")
    return EXIT_OK if r.matches else EXIT_COMPUTE


def cmd_examples(args) -> int:
    results = run_examples()
    if args.json:
        _emit({"examples": [{"topic": r.topic, "name": r.name, "expected": str(r.expected),
                             "computed": str(r.computed), "passed": r.passed} for r in results]})
    else:
        for r in results:
            print(r.line())
        failed = sum(not r.passed for r in results)
        print(f"{len(results) - failed}/{len(results)} examples passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_COMPUTE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=None, metavar="N", help="work budget (at least 10^4 steps)")
    common.add_argument("--tol", type=float, default=None, metavar="X", help="matrix tolerance in [1e-12, 1e-3]")
    parser = _Parser(prog="dwdefect", description="Exact finite-group gauge theory with defects.")
    parser.add_argument("--version", action="version", version=f"dwdefect {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)
    p = sub.add_parser("surface", parents=[common], help="state space of a defect surface")
    p.add_argument("file")
    p.add_argument("--basis", action="store_true", help="also print invariant bases")
    p.set_defaults(run=cmd_surface)
    p = sub.add_parser("cobordism", parents=[common], help="linear map or number of a defect cobordism")
    p.add_argument("file")
    p.set_defaults(run=cmd_cobordism)
    p = sub.add_parser("oracle", parents=[common], help="lattice Hamiltonian ground space cross-check")
    p.add_argument("file")
    p.set_defaults(run=cmd_oracle)
    p = sub.add_parser("examples", parents=[common], help="run the built-in worked examples")
    p.set_defaults(run=cmd_examples)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = (settings.budget, settings.tol)
    try:
        configure(budget=args.budget, tol=args.tol)
        return args.run(args)
    except FileNotFoundError as exc:
        print(f"error: no such file: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_INPUT
    except DWError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    finally:
        settings.budget, settings.tol = saved


if __name__ == "__main__":
    sys.exit(main())
