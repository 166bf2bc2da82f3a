"""Command-line front end.

Exit codes: 0 success, 1 structurally invalid instance (or a witness that
does not reproduce), 2 parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .config import BudgetExceeded, Limits
from .io import ParseError, dumps, dump_instance, load
from .report import SECTIONS, RunReport, failing_entries, render_text
from .system import InvalidSystemError, StatePropertySystem, StructureError

EXIT_OK, EXIT_STRUCTURE, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3
FIXTURE_PREFIX = "fixture:"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        self.code = code
        super().__init__(message)


# ------------------------------------------------------------------ plumbing


def _limits(args) -> Limits:
    return Limits.from_env(budget=args.budget, seed=args.seed)


def _instance(spec: str) -> StatePropertySystem:
    """A file path, or ``fixture:NAME`` for a built-in fixture."""
    if spec.startswith(FIXTURE_PREFIX):
        from .generators import fixture

        try:
            return fixture(spec[len(FIXTURE_PREFIX):])
        except KeyError as err:
            raise CliError(str(err.args[0]), EXIT_PARSE) from None
    path = Path(spec)
    if not path.exists():
        raise CliError(f"{spec}: no such file", EXIT_PARSE)
    try:
        system = load(path)
    except ParseError as err:
        raise CliError(f"{spec}: parse error at {err}", EXIT_PARSE) from None
    if not system.name:
        system = system.replace(name=path.stem)
    return system


def _flags(args, *names: str) -> dict[str, Any]:
    out = {}
    for n in names:
        v = getattr(args, n, None)
        if v not in (None, False, []):
            out[n] = v
    return out


def _emit(args, rep: RunReport, dot: str | None = None) -> int:
    doc = rep.to_json()
    fmt = getattr(args, "format", "json")
    if fmt == "text":
        sys.stdout.write(render_text(doc))
    elif fmt == "dot":
        sys.stdout.write(dot if dot is not None else "")
    else:
        sys.stdout.write(rep.dumps())
    return EXIT_BUDGET if rep.budget_exceeded else EXIT_OK


def _start(args, command: str, system: StatePropertySystem, *flag_names: str) -> RunReport:
    if not system.is_valid:
        raise InvalidSystemError(system.report)
    return RunReport.start(command, system, _limits(args), _flags(args, *flag_names), timing=args.timing)


def _lattice_dot(system: StatePropertySystem, lim: Limits) -> str:
    from .closure import LAMBDA, SUPERPOSITION, enumerate_family
    from .dot import hasse

    parts = [hasse(system.lattice, f"{system.name} properties")]
    for kind in (LAMBDA, SUPERPOSITION):
        parts.append(hasse(enumerate_family(system, kind, lim).lattice, f"{system.name} {kind}"))
    return "".join(parts)


def _mask(system: StatePropertySystem, text: str) -> int:
    items = [x.strip() for x in text.split(",") if x.strip()]
    try:
        return system.states_mask(items)
    except (KeyError, ValueError, IndexError) as err:
        raise CliError(f"unknown state in {text!r}: {err}", EXIT_PARSE) from None


# ------------------------------------------------------------------ commands


def cmd_validate(args) -> int:
    system = _instance(args.instance)
    lim = _limits(args)
    rep = RunReport.start("validate", system, lim, timing=args.timing) if system.is_valid else \
        RunReport("validate", system.name, "", "none", timing={} if args.timing else None)
    rep.run("core", lambda: SECTIONS["core"](system, lim))
    if system.is_valid:
        rep.run("profile", lambda: profile(system, lim))
    code = _emit(args, rep)
    return code if system.is_valid else EXIT_STRUCTURE


def profile(system: StatePropertySystem, lim: Limits) -> dict[str, Any]:
    """Short axiom profile: one status per headline condition."""
    from .probability import check_axiom_B, check_axiom_C, validate_mu
    from .sectors import sectors
    from .superposition import check_msp, check_sp
    from .system import check_axiom_A

    out: dict[str, Any] = {"A": check_axiom_A(system).status}
    out["B"] = check_axiom_B(system).status
    out["C"] = check_axiom_C(system).status
    for v in validate_mu(system, lim):
        out[v.name] = v.status
    for lv in (2, 3, "finite"):
        v = check_msp(system, lv, lim)
        out[v.name] = v.status
    out["SP"] = check_sp(system).status
    dec = sectors(system, lim)
    out["sectors"] = len(dec.blocks) if dec.status != "precondition-unmet" else dec.status
    return out


def cmd_report(args) -> int:
    system = _instance(args.instance)
    lim = _limits(args)
    rep = _start(args, "report", system, "all", "closures", "geometry", "sectors", "classical", "ortho", "certify")
    chosen = []
    if args.all:
        chosen = list(SECTIONS)
    else:
        chosen.append("core")
        for flag, name in (("closures", "closure"), ("closures", "superposition"), ("geometry", "geometry"),
                           ("ortho", "probability"), ("sectors", "sectors"), ("classical", "classical")):
            if getattr(args, flag) and name not in chosen:
                chosen.append(name)
    for name in chosen:
        rep.run(name, lambda name=name: SECTIONS[name](system, lim))
    if args.certify and not args.all:
        from .report import section_certificates

        rep.run("certificates", lambda: section_certificates(system, lim, _structures(args.certify)))
    return _emit(args, rep, dot=_lattice_dot(system, lim) if args.format == "dot" else None)


def _structures(names: Sequence[str]) -> list[str]:
    from .mackey import CHECKS

    out = []
    for n in names:
        if n == "all":
            out.extend(CHECKS)
        elif n in CHECKS:
            out.append(n)
        else:
            raise CliError(f"unknown structure {n!r}; choose from all, {', '.join(CHECKS)}", EXIT_PARSE)
    return list(dict.fromkeys(out))


def cmd_close(args) -> int:
    from .closure import KINDS, enumerate_family, lambda_close, sup_close, sup_close0
    from .dot import hasse
    from .superposition import minimal_superpositions

    system = _instance(args.instance)
    lim = _limits(args)
    rep = _start(args, "close", system, "set", "family")
    names = system.state_names
    for text in args.set or []:
        S = _mask(system, text)
        rep.run(f"set {','.join(names(S))}", lambda S=S: {
            "lambda": names(lambda_close(system, S)),
            "bar": names(sup_close(system, S)),
            "bar0": names(sup_close0(system, S)),
            "minimal_superpositions": names(minimal_superpositions(system, S)),
        })
    dot = None
    if args.family:
        if args.family not in KINDS:
            raise CliError(f"unknown family {args.family!r}; choose from {', '.join(KINDS)}", EXIT_PARSE)
        fam = rep.run(f"family {args.family}", lambda: enumerate_family(system, args.family, lim))
        if isinstance(fam, dict):
            dot = ""
        else:
            rep.sections[f"family {args.family}"] = fam.as_names()
            dot = hasse(fam.lattice, f"{system.name} {args.family}")
    return _emit(args, rep, dot)


def cmd_axioms(args) -> int:
    from .probability import check_axiom_B, check_axiom_C
    from .report import section_superposition
    from .system import check_axiom_A

    system = _instance(args.instance)
    lim = _limits(args)
    rep = _start(args, "axioms", system, "msp")
    levels = [int(x) if x.isdigit() else x for x in (args.msp or ["2", "3", "finite"])]
    rep.run("A", lambda: check_axiom_A(system).to_json())
    rep.run("B", lambda: check_axiom_B(system).to_json())
    rep.run("C", lambda: check_axiom_C(system).to_json())
    rep.run("superposition", lambda: section_superposition(system, lim, levels))
    return _emit(args, rep)


def cmd_geometry(args) -> int:
    from .dot import incidence
    from .geometry import ProjectiveGeometry

    system = _instance(args.instance)
    lim = _limits(args)
    rep = _start(args, "geometry", system)
    rep.run("geometry", lambda: SECTIONS["geometry"](system, lim))
    G = ProjectiveGeometry(system)
    dot = incidence(G.points, G.lines, f"{system.name} geometry")
    if args.dot:
        Path(args.dot).write_text(dot)
    return _emit(args, rep, dot)


def cmd_sectors(args) -> int:
    system = _instance(args.instance)
    lim = _limits(args)
    rep = _start(args, "sectors", system)
    rep.run("sectors", lambda: SECTIONS["sectors"](system, lim))
    return _emit(args, rep)


def cmd_classical(args) -> int:
    system = _instance(args.instance)
    lim = _limits(args)
    rep = _start(args, "classical", system)
    rep.run("classical", lambda: SECTIONS["classical"](system, lim))
    return _emit(args, rep)


def cmd_ortho(args) -> int:
    from .probability import ProbabilityError, comp0_table, extend_orthocomplement, perp_masks

    system = _instance(args.instance)
    lim = _limits(args)
    rep = _start(args, "ortho", system)
    L = system.lattice

    def tables():
        out: dict[str, Any] = {}
        try:
            out["comp0"] = {L.names[a]: L.names[b] for a, b in comp0_table(system).items()}
        except ProbabilityError as err:
            out["comp0"] = {"status": "precondition-unmet", "note": str(err)}
        comp, _ = extend_orthocomplement(system)
        out["compL"] = None if comp is None else {L.names[a]: L.names[comp[a]] for a in L.elements}
        rows = perp_masks(system)
        out["perp"] = [[system.states[p], system.states[q]]
                       for p in range(system.n) for q in range(system.n) if rows[p] >> q & 1]
        return out

    rep.run("tables", tables)
    rep.run("probability", lambda: SECTIONS["probability"](system, lim))
    return _emit(args, rep)


def cmd_certify(args) -> int:
    from .report import section_certificates

    system = _instance(args.instance)
    lim = _limits(args)
    rep = _start(args, "certify", system, "structure")
    rep.run("certificates", lambda: section_certificates(system, lim, _structures(args.structure or ["all"])))
    return _emit(args, rep)


def _read_form(text: str | None):
    if text is None or text == "identity":
        return text
    path = Path(text)
    if not path.exists():
        raise CliError(f"{text}: no such form file", EXIT_PARSE)
    try:
        matrix = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise CliError(f"{text}: parse error at line {err.lineno} column {err.colno}: {err.msg}", EXIT_PARSE) from None
    if not (isinstance(matrix, list) and all(isinstance(r, list) and all(isinstance(x, int) for x in r)
                                             for r in matrix)):
        raise CliError(f"{text}: a form is a JSON array of integer rows", EXIT_PARSE)
    return matrix


def cmd_generate(args) -> int:
    from .generators import fixture, from_vector_space
    from .generators.enumeration import enumerate_instances, measured_corpus

    lim = _limits(args)
    if args.fixture:
        try:
            text = dumps(fixture(args.fixture))
        except KeyError as err:
            raise CliError(str(err.args[0]), EXIT_PARSE) from None
    elif args.pg:
        q, n = args.pg
        try:
            system = from_vector_space(q, n, _read_form(args.form), sigma=args.sigma)
        except ValueError as err:
            raise CliError(str(err), EXIT_STRUCTURE) from None
        text = dumps(system)
    else:
        smax, pmax = args.enumerate
        gen = measured_corpus(smax, pmax, lim) if args.measured else enumerate_instances(smax, pmax, lim)
        text = json.dumps({"instances": [dump_instance(s) for s in gen]}, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_search(args) -> int:
    from .search import CONJECTURES, default_corpus, search_counterexample

    if args.list or not args.conjecture:
        for c in CONJECTURES.values():
            mark = "  (a witness is expected)" if c.expect_witness else ""
            sys.stdout.write(f"{c.name}: {c.statement}{mark}\n")
        return EXIT_OK
    if args.conjecture not in CONJECTURES:
        raise CliError(f"unknown conjecture {args.conjecture!r}; see --list", EXIT_PARSE)
    lim = _limits(args)
    corpus = default_corpus(lim, args.max_states, args.max_props, fixtures=not args.no_fixtures)
    result = search_counterexample(args.conjecture, corpus, lim)
    doc = {"schema": "spslab-search/1", "tool": {"name": "spslab", "version": __version__},
           "flags": {"max_states": args.max_states, "max_props": args.max_props, "fixtures": not args.no_fixtures},
           "result": result.to_json()}
    sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    return EXIT_BUDGET if result.skipped else EXIT_OK


def cmd_check_witness(args) -> int:
    """Re-evaluate failing verdicts pasted from a report against the instance."""
    from .witness import recheck

    system = _instance(args.instance)
    if not system.is_valid:
        raise InvalidSystemError(system.report)
    path = Path(args.witness)
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise CliError(f"{args.witness}: cannot read witness document: {err}", EXIT_PARSE) from None
    entries = failing_entries(doc)
    if not entries:
        raise CliError(f"{args.witness}: no failing verdicts found", EXIT_PARSE)
    lim = _limits(args)
    results = [dict(location=loc, **recheck(system, entry, lim)) for loc, entry in entries]
    ok = all(r["reproduced"] for r in results)
    out = {"schema": "spslab-witness/1", "instance": system.name, "reproduced": ok, "entries": results}
    sys.stdout.write(json.dumps(out, indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK if ok else EXIT_STRUCTURE


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="max subsets enumerated by exhaustive checks (default: $SPSLAB_BUDGET or 65536)")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled checks; without it checks are exhaustive or abort")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identical reruns)")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text", "dot"), default="json")

    parser = argparse.ArgumentParser(prog="spslab", description="Analyze finite state property systems.")
    parser.add_argument("--version", action="version", version=f"spslab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    inst = "instance JSON file, or fixture:NAME"

    p = sub.add_parser("validate", parents=[common, fmt], help="definition checks and axiom profile")
    p.add_argument("instance", help=inst)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", parents=[common, fmt], help="combined analysis report")
    p.add_argument("instance", help=inst)
    p.add_argument("--all", action="store_true", help="every section")
    p.add_argument("--closures", action="store_true")
    p.add_argument("--geometry", action="store_true")
    p.add_argument("--sectors", action="store_true")
    p.add_argument("--classical", action="store_true")
    p.add_argument("--ortho", action="store_true")
    p.add_argument("--certify", action="append", metavar="STRUCTURE")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("close", parents=[common, fmt], help="closures of state sets and closed families")
    p.add_argument("instance", help=inst)
    p.add_argument("--set", action="append", metavar="S1,S2,...", help="comma-separated states (repeatable)")
    p.add_argument("--family", metavar="KIND", help="list the closed family: lambda, superposition or superposition0")
    p.set_defaults(func=cmd_close)

    p = sub.add_parser("axioms", parents=[common, fmt], help="(A), (B), (C), MSP levels and SP")
    p.add_argument("instance", help=inst)
    p.add_argument("--msp", action="append", metavar="N|finite")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("geometry", parents=[common, fmt], help="projective geometry of the states")
    p.add_argument("instance", help=inst)
    p.add_argument("--dot", metavar="FILE", help="write the point-line incidence as DOT")
    p.set_defaults(func=cmd_geometry)

    for name, func, text in (("sectors", cmd_sectors, "sector decomposition"),
                             ("classical", cmd_classical, "classical and central properties"),
                             ("ortho", cmd_ortho, "orthocomplements and state orthogonality")):
        p = sub.add_parser(name, parents=[common, fmt], help=text)
        p.add_argument("instance", help=inst)
        p.set_defaults(func=func)

    p = sub.add_parser("certify", parents=[common, fmt], help="structure certificates")
    p.add_argument("instance", help=inst)
    p.add_argument("--structure", action="append", metavar="NAME", help="structure name or 'all' (repeatable)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("generate", parents=[common], help="emit instances in the interchange format")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fixture", metavar="NAME")
    g.add_argument("--pg", nargs=2, type=int, metavar=("Q", "N"), help="rays and subspaces of GF(Q)^N")
    g.add_argument("--enumerate", nargs=2, type=int, metavar=("SMAX", "PMAX"))
    p.add_argument("--form", metavar="identity|FILE", help="form for --pg: 'identity' or a JSON matrix file")
    p.add_argument("--sigma", default="identity", help="field involution for the form (default identity)")
    p.add_argument("--measured", action="store_true", help="with --enumerate: only measured variants")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("search", parents=[common], help="counterexample search over the corpus")
    p.add_argument("conjecture", nargs="?")
    p.add_argument("--list", action="store_true")
    p.add_argument("--max-states", type=int, default=4)
    p.add_argument("--max-props", type=int, default=8)
    p.add_argument("--no-fixtures", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("check-witness", parents=[common], help="re-evaluate failing verdicts from a report")
    p.add_argument("instance", help=inst)
    p.add_argument("witness", help="report JSON or a single failing verdict")
    p.set_defaults(func=cmd_check_witness)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        sys.stderr.write(f"spslab: {err}\n")
        return err.code
    except ParseError as err:
        sys.stderr.write(f"spslab: parse error at {err}\n")
        return EXIT_PARSE
    except StructureError as err:
        sys.stderr.write(f"spslab: structural error: {err}\n")
        return EXIT_STRUCTURE
    except InvalidSystemError as err:
        sys.stderr.write(f"spslab: invalid instance: {err}\n")
        return EXIT_STRUCTURE
    except BudgetExceeded as err:
        sys.stderr.write(f"spslab: budget exceeded: {err}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
