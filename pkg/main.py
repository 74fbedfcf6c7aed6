#!/usr/bin/env python3
"""
ordkit: main entry point
Order-theoretic dualities at desk scale: posets, doctrines, continuity,
two-valued and [0,1]-valued duality, each backed by an executable suite.
"""

import argparse
import json
import sys
from fractions import Fraction

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from core.budget import DEFAULT_SEED, WORKERS
from core.errors import OrdkitError, SchemaError
from core.log import console as stderr, log, warn
from duality.continuity import compact_elements, continuity_criteria, is_algebraic, waydown
from duality.doctrines import PAIR_ORDER, doctrine_by_name, pair_by_name
from duality.gelfand import DEFAULT_DEPTH, approximate_inverse, iota, urysohn_separate
from duality.two_duality import dual_morphism, dual_of_inflattice, dual_of_lattice, roundtrip
from formats.codec import (
    canonical_poset_json,
    dumps,
    element_from_json,
    load_json,
    load_poset,
    module_from_json,
    morphism_from_json,
    morphism_to_json,
    plmap_from_json,
    plmap_to_json,
    poset_to_json,
)
from formats.dot import hasse_dot
from order.enumerate import enumerate_lattices, enumerate_posets
from order.poset import bits
from scale.interval import classify, compose, evaluate, left_adjoint_pl, linf_rho, right_adjoint_pl
from scale.rational import fmt, parse_rational
from scale.umodules import (
    MODULES,
    FunctionModule,
    InvariantFilter,
    le_r,
    morphisms_to_I,
    rho,
    stack_glue,
)
from suites.registry import SuiteRegistry

console = Console()

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# ─────────────────────────────────────────────
# Display helpers
# ─────────────────────────────────────────────

def emit(args, data, title: str = ""):
    """JSON on stdout with --json, a rich panel otherwise."""
    if args.json:
        print(dumps(data))
        return
    console.print(Panel(json.dumps(data, indent=2), title=f"[dim]{title}[/dim]" if title else None,
                        border_style="cyan", expand=False))


def print_report(report, timing: bool = False):
    table = Table(title=f"Suite {report.name}", box=box.SIMPLE)
    table.add_column("Check", style="dim")
    table.add_column("Status", justify="center")
    table.add_column("Reason")
    shown = 0
    for v in report.verdicts:
        if v.ok and not v.skipped:
            continue
        status = "[yellow]skipped[/yellow]" if v.skipped else "[red]✗ fail[/red]"
        table.add_row(v.check, status, v.failure_reason[:100])
        shown += 1
        if shown >= 40:
            break
    counts = report.counts
    summary = f"[green]{counts['pass']} pass[/green] | [red]{counts['fail']} fail[/red] | " \
              f"[yellow]{counts['skipped']} skipped[/yellow]"
    if timing:
        summary += f" | [dim]{report.wall_time:.2f}s[/dim]"
    if shown:
        console.print(table)
    console.print(Panel(summary, title=f"{'[green]✓' if report.passed else '[red]✗'} {report.name}[/]",
                        border_style="green" if report.passed else "red", expand=False))


def _value(text: str):
    """Inline JSON, a path to a JSON file, or a bare string."""
    text = text.strip()
    if text.startswith(("{", "[", '"')):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError("", f"invalid inline JSON: {e.msg}")
    if text.endswith(".json"):
        return load_json(text)
    return text


def _module(args):
    """A module name, or a module object given inline or as a .json file."""
    if args.module.strip().startswith("{") or args.module.endswith(".json"):
        return module_from_json(_value(args.module), args.pair)
    pair = pair_by_name(args.pair)
    if args.module == "functions":
        if not args.lattice:
            raise SchemaError("", "the functions module needs --lattice")
        return FunctionModule(load_poset(args.lattice), pair)
    if args.module not in MODULES:
        raise ValueError(f"Module '{args.module}' not found. Available: functions, {', '.join(MODULES)} or a module .json")
    return MODULES[args.module](pair)


def _element(A, text: str, name: str):
    return element_from_json(A, _value(text), f"/{name}")


# ─────────────────────────────────────────────
# Command handlers
# ─────────────────────────────────────────────

def handle_posets(args) -> int:
    if args.action == "canonical":
        X = load_poset(args.input)
        if args.json:
            print(canonical_poset_json(X))
        else:
            console.print(canonical_poset_json(X))
        return EXIT_PASS

    source = enumerate_lattices if args.lattices else enumerate_posets
    found = list(source(args.n))
    if args.json:
        print(dumps([poset_to_json(X) for X in found]))
        return EXIT_PASS
    table = Table(title=f"{len(found)} {'lattices' if args.lattices else 'posets'} with {args.n} elements",
                  box=box.SIMPLE)
    table.add_column("#", justify="right", style="dim")
    table.add_column("Covers")
    for i, X in enumerate(found):
        table.add_row(str(i), ", ".join(f"{a}<{b}" for a, b in X.hasse_edges) or "-")
    console.print(table)
    return EXIT_PASS


def handle_continuity(args) -> int:
    X = load_poset(args.lattice)
    d = doctrine_by_name(args.doctrine)
    report = continuity_criteria(X, d)
    W = waydown(X, d)
    continuous = report.passed
    data = {
        "doctrine": d.name,
        "continuous": continuous,
        "algebraic": is_algebraic(X, d),
        "compacts": [X.label(i) for i in bits(compact_elements(X, d))],
        "waybelow": W.rel.tolist(),
        "criteria": report.to_json()["checks"],
    }
    emit(args, data, f"continuity {d.name}")
    return EXIT_PASS


def handle_dual(args) -> int:
    pair = pair_by_name(args.doctrine)
    if args.morphism:
        f = morphism_from_json(_value(args.morphism))
        emit(args, {"pair": pair.name, "morphism": morphism_to_json(dual_morphism(f, pair))}, "dual morphism")
        return EXIT_PASS
    if not args.input:
        raise SchemaError("", "dual needs --input or --morphism")
    X = load_poset(args.input)
    if args.direction == "lattice":
        dual = dual_of_lattice(X, pair)
        w = roundtrip(X, pair)
        witness = {"forward": morphism_to_json(w.forward), "backward": morphism_to_json(w.backward)}
    else:
        dual = dual_of_inflattice(X, pair)
        witness = {"compacts": [dual.label(i) for i in bits(compact_elements(dual, pair.phi))]}
    emit(args, {"pair": pair.name, "direction": args.direction, "dual": poset_to_json(dual),
                "witness": witness}, f"dual {args.direction}")
    return EXIT_PASS


def handle_pl(args) -> int:
    u = plmap_from_json(_value(args.map))
    if args.action in ("compose", "rho") and not args.other:
        raise SchemaError("", f"pl {args.action} needs --other")
    if args.action == "eval":
        if args.x is None:
            raise SchemaError("", "pl eval needs --x")
        data = {"value": fmt(evaluate(u, args.x))}
    elif args.action == "compose":
        v = plmap_from_json(_value(args.other))
        data = {"map": plmap_to_json(compose(u, v))}
    elif args.action == "adjoint":
        adj = right_adjoint_pl(u) if args.side == "right" else left_adjoint_pl(u)
        data = {"side": args.side, "map": plmap_to_json(adj)}
    elif args.action == "rho":
        v = plmap_from_json(_value(args.other))
        data = {"rho": fmt(linf_rho(u, v))}
    else:
        data = classify(u).to_json()
    emit(args, data, f"pl {args.action}")
    return EXIT_PASS


def handle_umod(args) -> int:
    A = _module(args)
    if args.action == "filters":
        found = morphisms_to_I(A)
        data = {"module": A.name, "pair": A.pair.name, "morphisms": len(found),
                "filters": [f.to_json() for f, _ in found]}
        emit(args, data, "kernel filters")
        return EXIT_PASS

    if not args.a or not args.b:
        raise SchemaError("", f"umod {args.action} needs --a and --b")
    a, b = _element(A, args.a, "a"), _element(A, args.b, "b")
    if args.action == "le_r":
        data = {"le_r": le_r(A, a, b, args.r)}
    elif args.action == "rho":
        data = {"rho": fmt(rho(A, a, b))}
    else:
        data = {"glued": A.to_json(stack_glue(A, args.r, a, b))}
    emit(args, data, f"umod {args.action}")
    return EXIT_PASS


def _grade_filters(A, data) -> dict:
    if not isinstance(data, dict) or not isinstance(data.get("grades"), dict):
        raise SchemaError("/grades", "expected an object from grades to filters")
    out = {}
    for key, filt in data["grades"].items():
        at = f"/grades/{key}"
        if not isinstance(filt, dict) or not isinstance(filt.get("minima"), list):
            raise SchemaError(at, "a filter is an object with a 'minima' list")
        minima = tuple(element_from_json(A, e, f"{at}/minima/{i}") for i, e in enumerate(filt["minima"]))
        out[parse_rational(key)] = InvariantFilter(A, minima, A.has_top)
    return out


def handle_gelfand(args) -> int:
    if args.action == "urysohn":
        d = doctrine_by_name(args.doctrine)
        if args.lattice:
            X = load_poset(args.lattice)
            f = urysohn_separate(X, d, X.index(args.y), X.index(args.x), args.depth)
        else:
            f = urysohn_separate(None, d, args.y, args.x, args.depth)
        emit(args, f.to_json(), "urysohn")
        return EXIT_PASS

    A = _module(args)
    if args.f:
        table = _grade_filters(A, _value(args.f))

        def f(t):
            if Fraction(t) not in table:
                raise SchemaError("/grades", f"no filter given for grade {fmt(t)}")
            return table[Fraction(t)]
    elif args.a:
        f = iota(A, _element(A, args.a, "a"))
    else:
        raise SchemaError("", "approx-inverse needs --f or --a")
    a = approximate_inverse(A, f, args.n)
    emit(args, {"n": args.n, "element": A.to_json(a)}, "approximate inverse")
    return EXIT_PASS


def handle_suite(args) -> int:
    registry = SuiteRegistry()
    if args.action == "list":
        if args.json:
            print(registry.list_suites())
        else:
            table = Table(title="Suites", box=box.SIMPLE)
            table.add_column("Name", style="cyan")
            table.add_column("Checks")
            for name, mod in registry.suites.items():
                table.add_row(name, mod.DESCRIPTION)
            console.print(table)
        return EXIT_PASS

    if not args.name:
        raise SchemaError("", "suite run needs a suite name")
    params = {"seed": args.seed}
    if args.max_size is not None:
        params["max_size"] = args.max_size
    if args.samples is not None:
        params["samples"] = args.samples
    report = registry.run(args.name, params, workers=args.workers)
    if args.json:
        print(dumps(report.to_json(timing=args.timing)))
    else:
        print_report(report, args.timing)
    return EXIT_PASS if report.passed else EXIT_FAIL


def handle_replay(args) -> int:
    data = load_json(args.report)
    checks = data.get("checks") if isinstance(data, dict) else None
    if not isinstance(checks, list):
        raise SchemaError("/checks", "expected a suite report with a 'checks' list")
    registry = SuiteRegistry()
    results = []
    for i, entry in enumerate(checks):
        if not isinstance(entry, dict) or entry.get("status") != "fail":
            continue
        witness = entry.get("witness")
        if not isinstance(witness, dict) or "check" not in witness:
            warn("REPLAY", f"check {i} has no replayable witness")
            continue
        verdict = registry.replay(witness)
        results.append({"witness": witness, "verdict": verdict.to_json()})
    reproduced = sum(1 for r in results if r["verdict"]["status"] == "fail")
    log("REPLAY", f"{len(results)} witnesses replayed, {reproduced} still fail")
    emit(args, {"replayed": len(results), "reproduced": reproduced, "results": results}, "replay")
    return EXIT_FAIL if reproduced else EXIT_PASS


def handle_export(args) -> int:
    text = hasse_dot(load_poset(args.input))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        log("EXPORT", f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_PASS


# ─────────────────────────────────────────────
# Argument parsing
# ─────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordkit", description="Order-theoretic dualities at desk scale")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized checks")
    parser.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    parser.add_argument("--workers", type=int, default=WORKERS, help="suite worker pool size")
    parser.add_argument("--timing", action="store_true", help="include wall time in suite reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("posets", help="enumerate posets or lattices, canonicalize a poset")
    p.add_argument("action", choices=["enumerate", "canonical"])
    p.add_argument("-n", type=int, default=4)
    p.add_argument("--lattices", action="store_true")
    p.add_argument("--input")
    p.set_defaults(handler=handle_posets)

    p = sub.add_parser("continuity", help="way-below relation and continuity of a lattice")
    p.add_argument("--doctrine", default="directed")
    p.add_argument("--lattice", required=True)
    p.set_defaults(handler=handle_continuity)

    p = sub.add_parser("dual", help="two-valued dual of a lattice or an inflattice")
    p.add_argument("--doctrine", default="directed")
    p.add_argument("--input")
    p.add_argument("--direction", choices=["lattice", "inflattice"], default="lattice")
    p.add_argument("--morphism", help="lattice morphism table, inline or a .json file; its dual is printed")
    p.set_defaults(handler=handle_dual)

    p = sub.add_parser("pl", help="piecewise-linear maps of [0,1]")
    p.add_argument("action", choices=["eval", "compose", "adjoint", "rho", "classify"])
    p.add_argument("--map", required=True, help="PL map as inline JSON or a .json file")
    p.add_argument("--other", help="second map for compose and rho")
    p.add_argument("--x")
    p.add_argument("--side", choices=["left", "right"], default="right")
    p.set_defaults(handler=handle_pl)

    p = sub.add_parser("umod", help="graded order, distances, gluing and kernels of U-modules")
    p.add_argument("action", choices=["le_r", "rho", "glue", "filters"])
    p.add_argument("--module", default="interval", help="interval, pl, infinitesimal, functions, or a module .json")
    p.add_argument("--lattice")
    p.add_argument("--pair", choices=list(PAIR_ORDER), default="directed")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--r", default="0")
    p.set_defaults(handler=handle_umod)

    p = sub.add_parser("gelfand", help="Urysohn separation and the approximate inverse")
    p.add_argument("action", choices=["urysohn", "approx-inverse"])
    p.add_argument("--doctrine", default="directed")
    p.add_argument("--lattice")
    p.add_argument("--y")
    p.add_argument("--x")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--module", default="interval", help="interval, pl, infinitesimal, functions, or a module .json")
    p.add_argument("--pair", choices=list(PAIR_ORDER), default="directed")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--f", help="filters per grade, {\"grades\": {\"p/q\": {\"minima\": [...]}}}")
    p.add_argument("--a", help="element whose evaluation is inverted")
    p.set_defaults(handler=handle_gelfand)

    p = sub.add_parser("suite", help="run or list verification suites")
    p.add_argument("action", choices=["run", "list"])
    p.add_argument("name", nargs="?")
    p.add_argument("--max-size", type=int)
    p.add_argument("--samples", type=int)
    p.set_defaults(handler=handle_suite)

    p = sub.add_parser("replay", help="re-run every failing witness of a suite report")
    p.add_argument("report")
    p.set_defaults(handler=handle_replay)

    p = sub.add_parser("export", help="export a poset")
    p.add_argument("format", choices=["dot"])
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(handler=handle_export)
    return parser


# ─────────────────────────────────────────────
# Entry point
# ─────────────────────────────────────────────

def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SchemaError as e:
        stderr.print(f"[red]schema error[/red] {e}")
        return EXIT_USAGE
    except (ValueError, IndexError) as e:
        stderr.print(f"[red]usage error[/red] {e}")
        return EXIT_USAGE
    except OrdkitError as e:
        stderr.print(f"[red]{type(e).__name__}[/red] {e}")
        if args.json and e.witness is not None:
            print(dumps({"error": type(e).__name__, "message": str(e), "witness": e.witness}))
        return EXIT_FAIL
    except KeyboardInterrupt:
        stderr.print("\n[yellow]Interrupted.[/yellow]")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
