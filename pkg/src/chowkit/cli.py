"""Batch interface: load a catalog entry or data files, run verification
suites, print reports.

Exit codes: 0 all checks pass, 1 a suite failed, 2 the input did not parse,
3 the input parsed but failed validation.  With --format json the report is
a single document whose "lines" fields reproduce the text rendering, so a
saved report re-summarizes identically.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .fibrations import (
    build_projector_family,
    duality_report,
    manin_battery,
    validate_fibration,
    verify_projector_family,
    FibrationModel,
)
from .fileio import FileFormatError, load_fibration, load_ring
from .motives import (
    SystemReport,
    decompose_model,
    decompose_motive,
    fiber_projectors,
    verify_projector_system,
)
from .murre import (
    cellular_ck,
    ck_battery,
    lift_ck,
    verify_action_window,
    verify_block_diagonality,
    verify_ck,
)
from .rings import ChowRing, verify_pairing

EXIT_PASS = 0
EXIT_SUITE_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_VALIDATION_FAILURE = 3

SUITE_NAMES = (
    "ck",
    "duality",
    "identities",
    "manin",
    "motives",
    "murre",
    "pairing",
    "projectors",
)


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


# -- target loading ------------------------------------------------------------


def _resolve_catalog(name):
    from .catalog import resolve

    try:
        return resolve(name)
    except ValueError as e:
        raise CliError(str(e), EXIT_PARSE_ERROR) from e


def load_target(args):
    """The ring or model named by --catalog / --ring-file / --fibration-file."""
    given = [
        flag
        for flag, value in (
            ("--catalog", args.catalog),
            ("--ring-file", args.ring_file),
            ("--fibration-file", args.fibration_file),
        )
        if value
    ]
    if len(given) != 1:
        raise CliError(
            "need exactly one of --catalog, --ring-file, --fibration-file", EXIT_PARSE_ERROR
        )
    if args.catalog:
        return args.catalog, _resolve_catalog(args.catalog)
    path = args.ring_file or args.fibration_file
    loader = load_ring if args.ring_file else load_fibration
    try:
        target = loader(path)
    except FileFormatError as e:
        raise CliError(str(e), EXIT_PARSE_ERROR) from e
    except ValueError as e:
        raise CliError(str(e), EXIT_VALIDATION_FAILURE) from e
    if isinstance(target, FibrationModel):
        report = validate_fibration(target)
        if not report.passed:
            raise CliError("\n".join(report.lines()), EXIT_VALIDATION_FAILURE)
    return target.name, target


def _parse_battery(spec):
    if not spec:
        return None
    rings = []
    for name in spec.split(","):
        thing = _resolve_catalog(name.strip())
        if not isinstance(thing, ChowRing):
            raise CliError(f"battery entry {name!r} is a model, not a ring", EXIT_PARSE_ERROR)
        rings.append(thing)
    return tuple(rings)


# -- suites --------------------------------------------------------------------


def _wrap(suite, *reports):
    lines = []
    data = []
    for rep in reports:
        lines.extend(rep.lines())
        data.append(rep.to_dict())
    return {
        "suite": suite,
        "passed": all(rep.passed for rep in reports),
        "lines": lines,
        "data": data[0] if len(data) == 1 else data,
    }


def _skip(suite, why):
    return {"suite": suite, "passed": True, "skipped": why, "lines": [f"skipped: {why}"], "data": None}


def _fail(suite, message):
    return {"suite": suite, "passed": False, "lines": message.splitlines(), "data": None}


def _suite_pairing(target, config):
    if isinstance(target, ChowRing):
        return _wrap("pairing", verify_pairing(target))
    # the delta pattern lives on the factors; product bases cannot satisfy it
    # in the middle degree, and the model-level pattern is the duality suite
    return _wrap("pairing", verify_pairing(target.base), verify_pairing(target.fiber))


def _suite_duality(target, config):
    if isinstance(target, ChowRing):
        from .correspondences import dual_basis_cycles

        report = SystemReport(target.name)
        fails = []
        for p in range(target.dimension + 1):
            try:
                dual_basis_cycles(target, p)
            except ValueError as e:
                fails.append(f"codim {p}: {e}")
        report.add("perfect degree pairings (dual bases exist)", fails)
        return _wrap("duality", report)
    return _wrap(
        "duality",
        duality_report(target, samples=config.samples, seed=config.seed, bound=config.bound),
    )


def _suite_projectors(target, config):
    if isinstance(target, ChowRing):
        return _wrap("projectors", verify_projector_system(fiber_projectors(target)))
    family = build_projector_family(target)
    reports = [
        verify_projector_family(
            family, samples=config.samples, seed=config.seed, bound=config.bound
        )
    ]
    if config.battery:
        reports.append(
            manin_battery(
                target,
                battery=config.battery,
                samples=config.samples,
                seed=config.seed,
                bound=config.bound,
            )
        )
    return _wrap("projectors", *reports)


def _suite_manin(target, config):
    if isinstance(target, ChowRing):
        return _skip("manin", "needs a fibration model")
    return _wrap(
        "manin",
        manin_battery(
            target,
            battery=config.battery,
            samples=config.samples,
            seed=config.seed,
            bound=config.bound,
        ),
    )


def _suite_motives(target, config):
    try:
        dec = decompose_motive(target) if isinstance(target, ChowRing) else decompose_model(target)
    except ValueError as e:
        return _fail("motives", str(e))
    return {
        "suite": "motives",
        "passed": dec.report.passed,
        "lines": dec.lines(),
        "data": dec.to_dict(),
    }


def _build_ck(target):
    if isinstance(target, ChowRing):
        return cellular_ck(target, validate=False)
    return lift_ck(target, validate=False)


def _suite_ck(target, config):
    try:
        ck = _build_ck(target)
    except ValueError as e:
        return _fail("ck", str(e))
    reports = [verify_ck(ck)]
    if config.battery and isinstance(target, FibrationModel):
        reports.append(ck_battery(target, battery=config.battery))
    return _wrap("ck", *reports)


def _suite_murre(target, config):
    try:
        ck = _build_ck(target)
    except ValueError as e:
        return _fail("murre", str(e))
    reports = [verify_action_window(ck)]
    if isinstance(target, FibrationModel):
        reports.append(
            verify_block_diagonality(
                target, samples=min(config.samples, 20), seed=config.seed, bound=config.bound
            )
        )
    return _wrap("murre", *reports)


def _suite_identities(target, config):
    from .identities import compose_oracle_battery, run_identity_battery

    return _wrap(
        "identities",
        run_identity_battery(samples=config.samples, seed=config.seed, bound=config.bound),
        compose_oracle_battery(samples=config.samples, seed=config.seed, bound=config.bound),
    )


_SUITES = {
    "ck": _suite_ck,
    "duality": _suite_duality,
    "identities": _suite_identities,
    "manin": _suite_manin,
    "motives": _suite_motives,
    "murre": _suite_murre,
    "pairing": _suite_pairing,
    "projectors": _suite_projectors,
}


class RunConfig:
    """Run parameters; the seed fully determines every randomized check."""

    def __init__(self, battery=None, seed=0, samples=100, bound=10):
        self.battery = battery
        self.seed = seed
        self.samples = samples
        self.bound = bound


# -- report rendering ----------------------------------------------------------


def render_text(report):
    """The text rendering of a report document; pure, so a saved JSON
    report re-renders identically."""
    out = [f"chowkit {report['command']}: {report.get('target', '-')}"]
    if "seed" in report:
        out.append(f"seed {report['seed']}, samples {report['samples']}")
    for suite in report.get("suites", ()):
        verdict = "pass" if suite["passed"] else "FAIL"
        if suite.get("skipped"):
            verdict = "skipped"
        out.append(f"[{suite['suite']}] {verdict}")
        out.extend("  " + line for line in suite["lines"])
    out.append("result: " + ("pass" if report["passed"] else "FAIL"))
    return out


def _emit(report, fmt, started):
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        for line in render_text(report):
            print(line)
        print(f"elapsed: {time.perf_counter() - started:.2f}s")


# -- subcommands ----------------------------------------------------------------


def _cmd_catalog(args, started):
    from .catalog import catalog_entries

    entries = []
    for entry in catalog_entries():
        thing = entry.build()
        if isinstance(thing, ChowRing):
            ranks = list(thing.ranks)
            dim = thing.dimension
        else:
            dim = thing.dimension
            ranks = [thing.rank(p) for p in range(dim + 1)]
        entries.append(
            {
                "name": entry.name,
                "kind": entry.kind,
                "dimension": dim,
                "ranks": ranks,
                "description": entry.description,
            }
        )
    report = {
        "command": "catalog",
        "passed": True,
        "suites": [],
        "entries": entries,
    }
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        width = max(len(e["name"]) for e in entries)
        for e in entries:
            ranks = ",".join(str(r) for r in e["ranks"])
            print(f"{e['name']:<{width}}  dim {e['dimension']}  ranks ({ranks})  {e['description']}")
    return EXIT_PASS


def _cmd_verify(args, started):
    name, target = load_target(args)
    config = RunConfig(
        battery=_parse_battery(args.battery), seed=args.seed, samples=args.samples
    )
    wanted = SUITE_NAMES if args.suite == "all" else (args.suite,)
    suites = [_SUITES[s](target, config) for s in sorted(wanted)]
    report = {
        "command": "verify",
        "target": name,
        "seed": config.seed,
        "samples": config.samples,
        "suites": suites,
        "passed": all(s["passed"] for s in suites),
    }
    _emit(report, args.format, started)
    return EXIT_PASS if report["passed"] else EXIT_SUITE_FAILURE


def _cmd_decompose(args, started):
    name, target = load_target(args)
    suite = _suite_motives(target, RunConfig())
    report = {
        "command": "decompose",
        "target": name,
        "suites": [suite],
        "passed": suite["passed"],
    }
    _emit(report, args.format, started)
    return EXIT_PASS if report["passed"] else EXIT_SUITE_FAILURE


def _cmd_ck(args, started):
    name, target = load_target(args)
    config = RunConfig(battery=_parse_battery(args.battery))
    # a failure before the lifted projectors exist is a hypothesis failure
    try:
        ck = _build_ck(target)
    except ValueError as e:
        raise CliError(str(e), EXIT_VALIDATION_FAILURE) from e
    reports = [verify_ck(ck)]
    if config.battery and isinstance(target, FibrationModel):
        try:
            reports.append(ck_battery(target, battery=config.battery))
        except ValueError as e:
            return _finish_ck(args, name, [_fail("ck", str(e))], started)
    suites = [_wrap("ck", *reports)]
    return _finish_ck(args, name, suites, started)


def _finish_ck(args, name, suites, started):
    report = {
        "command": "ck",
        "target": name,
        "suites": suites,
        "passed": all(s["passed"] for s in suites),
    }
    _emit(report, args.format, started)
    return EXIT_PASS if report["passed"] else EXIT_SUITE_FAILURE


def _cmd_identities(args, started):
    config = RunConfig(seed=args.seed, samples=args.samples)
    suite = _suite_identities(None, config)
    report = {
        "command": "identities",
        "target": "(P^1, P^2)",
        "seed": config.seed,
        "samples": config.samples,
        "suites": [suite],
        "passed": suite["passed"],
    }
    _emit(report, args.format, started)
    return EXIT_PASS if report["passed"] else EXIT_SUITE_FAILURE


# -- argument parsing ------------------------------------------------------------


def _add_target_flags(parser):
    parser.add_argument("--catalog", metavar="NAME", help="catalog entry name")
    parser.add_argument("--ring-file", metavar="PATH", help="ring document")
    parser.add_argument("--fibration-file", metavar="PATH", help="fibration document")


def _add_format_flag(parser):
    parser.add_argument("--format", choices=("text", "json"), default="text")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chowkit",
        description="Exact verification of cellular Chow rings, fibration projectors and Chow-Kunneth lifts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list catalog entries with dimensions and ranks")
    _add_format_flag(p)

    p = sub.add_parser("verify", help="run verification suites on a ring or model")
    _add_target_flags(p)
    p.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    p.add_argument("--battery", metavar="NAMES", help="comma-separated ambient catalog rings")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    _add_format_flag(p)

    p = sub.add_parser("decompose", help="print the motive decomposition")
    _add_target_flags(p)
    _add_format_flag(p)

    p = sub.add_parser("ck", help="build and verify the Chow-Kunneth decomposition")
    _add_target_flags(p)
    p.add_argument("--battery", metavar="NAMES", help="comma-separated ambient catalog rings")
    _add_format_flag(p)

    p = sub.add_parser("identities", help="run the composition identity batteries")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    _add_format_flag(p)

    return parser


_COMMANDS = {
    "catalog": _cmd_catalog,
    "verify": _cmd_verify,
    "decompose": _cmd_decompose,
    "ck": _cmd_ck,
    "identities": _cmd_identities,
}


def main(argv=None):
    started = time.perf_counter()
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, started)
    except CliError as e:
        print(str(e), file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
