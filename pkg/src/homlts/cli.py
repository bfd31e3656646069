"""Command-line front end.

Exit codes: 0 every check passed, 1 a mathematical check failed (witnesses are
reported), 2 the input or the invocation was unusable.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .cochains import DEFAULT_MAX_DEGREE, DegreeCapError, cohomology, mc_pair_report, twisted_mc_report
from .core import (
    DEFAULT_WITNESS_LIMIT,
    AxiomReport,
    CompatibleHomLts,
    is_homomorphism,
    is_nijenhuis,
    nijenhuis_deformed_bracket,
    verify_compatible,
    verify_compatible_representation,
)
from .deformations import (
    check_deformation,
    check_equivalence,
    deformation_class,
    infinitesimal_is_cocycle,
    printed_equation_report,
    triviality_report,
    trivial_deformation_from_nijenhuis,
)
from .extensions import are_cohomologous, build_extension, classify_extension, equivalence_from_xi, extension_report, extract_cocycle
from .fixtures import FIXTURES, describe, fixture
from .io import (
    DocumentError,
    Problem,
    canonical_bytes,
    deformation_to_doc,
    digest,
    load_document,
    matrix_to_doc,
    parse_document,
)
from .linalg import format_rational

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class Run:
    """Collects sections of checks, results and notes for one command."""

    def __init__(self, command: str, limit: int):
        self.command = command
        self.limit = limit
        self.sections: list[tuple[str, AxiomReport]] = []
        self.results: dict = {}
        self.notes: list[str] = []
        self.timings: dict[str, float] = {}
        self.error: str | None = None

    def check(self, name: str, report: AxiomReport) -> bool:
        self.sections.append((name, report))
        return report.passed

    def timed(self, label: str, fn, *args, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kw)
        finally:
            self.timings[label] = round(time.perf_counter() - t0, 6)

    @property
    def passed(self) -> bool:
        return self.error is None and all(r.passed for _, r in self.sections) and not self.results.get("_failed")

    def fail(self, msg: str) -> None:
        self.results["_failed"] = True
        self.notes.append(msg)

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_ERROR
        return EXIT_PASS if self.passed else EXIT_FAIL

    @property
    def status(self) -> str:
        return {EXIT_PASS: "pass", EXIT_FAIL: "fail", EXIT_ERROR: "error"}[self.exit_code]


def _single(name: str, ok: bool) -> AxiomReport:
    rep = AxiomReport()
    rep.record(name, np.array(bool(ok), dtype=object), np.array(True, dtype=object), 0, 1)
    return rep


def _vector_doc(v) -> list[str]:
    return [format_rational(x) for x in np.asarray(v, dtype=object).reshape(-1)]


# ---------------------------------------------------------------------------
# commands


def _verify_base(run: Run, prob: Problem, need_rep: bool = False) -> bool:
    ok = run.check("algebra", run.timed("verify", verify_compatible, prob.algebra, run.limit))
    if prob.rep is not None:
        rep = run.timed("verify-rep", verify_compatible_representation, prob.algebra, prob.rep, run.limit)
        ok = run.check("representation", rep) and ok
    elif need_rep:
        raise UsageError("rep: this command needs a 'rep' section (a representation or \"adjoint\")")
    return ok


def cmd_verify(run: Run, prob: Problem, args) -> None:
    _verify_base(run, prob)
    if prob.phi is not None:
        run.check("phi", is_homomorphism(prob.algebra, prob.algebra, prob.phi, run.limit))


def cmd_cohomology(run: Run, prob: Problem, args) -> None:
    n = args.degree
    if n < 1:
        raise UsageError(f"--degree must be at least 1, got {n}")
    if n > args.max_degree:
        raise UsageError(f"degree {n} exceeds the cap {args.max_degree}; raise it with --max-degree")
    if not _verify_base(run, prob, need_rep=True):
        run.notes.append("structures do not verify; cohomology not computed")
        return
    try:
        rep = run.timed("cohomology", cohomology, prob.algebra, prob.rep, n, args.max_degree)
    except DegreeCapError as exc:
        raise UsageError(f"{exc}; raise it with --max-degree") from None
    run.results["cohomology"] = rep.to_dict()
    if n == 1:
        run.notes.append("B^1 = 0 by convention")


def cmd_mc(run: Run, prob: Problem, args) -> None:
    run.check("maurer-cartan", run.timed("mc", mc_pair_report, prob.algebra, run.limit))
    if prob.twist is not None:
        run.check("twisted", run.timed("twisted", twisted_mc_report, prob.algebra, *prob.twist, run.limit))


def _require(prob: Problem, *names: str) -> None:
    for name in names:
        if getattr(prob, name) is None:
            key = {"n": "N"}.get(name, name)
            raise UsageError(f"{key}: this command needs a '{key}' section")


def cmd_nijenhuis(run: Run, prob: Problem, args) -> None:
    _require(prob, "n")
    c = prob.algebra
    ok = run.check("algebra", verify_compatible(c, run.limit))
    if not run.check("nijenhuis", run.timed("nijenhuis", is_nijenhuis, c, prob.n, run.limit)):
        return
    for i in (1, 2):
        h = c.component(i)
        pair = CompatibleHomLts(c.space, h.bracket, nijenhuis_deformed_bracket(h, prob.n))
        run.check(f"deformed-pair{i}", verify_compatible(pair, run.limit))
    d = run.timed("generate", trivial_deformation_from_nijenhuis, c, prob.n)
    run.results["deformation"] = deformation_to_doc(d)
    if not ok:
        run.notes.append("base pair does not verify; deformation checks skipped")
        return
    run.check("deformation", run.timed("deformation", check_deformation, c, d, run.limit))
    run.check("triviality", triviality_report(c, d, prob.n, run.limit))


def cmd_deform(run: Run, prob: Problem, args) -> None:
    _require(prob, "deformation")
    c, d = prob.algebra, prob.deformation
    run.check("algebra", verify_compatible(c, run.limit))
    try:
        rep = run.timed("deformation", check_deformation, c, d, run.limit)
    except ValueError as exc:
        run.fail(f"deformation: {exc}")
        return
    run.check("deformation", rep)
    printed = printed_equation_report(c, d, run.limit)
    run.results["printed_equations"] = printed.to_dict()
    run.notes.append("printed_equations is informational and does not affect the status")
    if rep.passed:
        cocycle = infinitesimal_is_cocycle(c, None, d.mu)
        run.check("infinitesimal", _single("delta_c(mu1,mu2)=0", cocycle))
        if cocycle:
            run.results["class"] = _vector_doc(run.timed("class", deformation_class, c, d.mu))
    if prob.deformation_prime is not None:
        _require(prob, "n")
        try:
            run.check("equivalence", check_equivalence(c, d, prob.deformation_prime, prob.n, run.limit))
        except ValueError as exc:
            run.fail(f"equivalence: {exc}")
    elif prob.n is not None:
        run.check("triviality", triviality_report(c, d, prob.n, run.limit))


def cmd_extend(run: Run, prob: Problem, args) -> None:
    _require(prob, "mu")
    if prob.rep is None:
        raise UsageError("rep: this command needs a 'rep' section")
    if not _verify_base(run, prob):
        run.notes.append("structures do not verify; extension not built")
        return
    try:
        e = build_extension(prob.algebra, prob.rep, prob.mu)
    except ValueError as exc:
        run.fail(f"mu: {exc}")
        return
    ok = run.check("extension", run.timed("extension", extension_report, e, run.limit))
    if not ok:
        run.notes.append("the total space fails the axioms, so mu is not a 2-cocycle")
        return
    back = extract_cocycle(e)
    run.check("roundtrip", _single("extract(build(mu))=mu", all(a == b for a, b in zip(back, prob.mu))))
    coh = run.timed("cohomology", cohomology, e.base, prob.rep, 2)
    run.results["class"] = _vector_doc(classify_extension(e, report=coh))
    run.results["H2_dim"] = coh.dim_H


def cmd_cohomologous(run: Run, prob: Problem, args) -> None:
    _require(prob, "mu", "nu")
    if prob.rep is None:
        raise UsageError("rep: this command needs a 'rep' section")
    if not _verify_base(run, prob):
        run.notes.append("structures do not verify; nothing compared")
        return
    try:
        xi = run.timed("solve", are_cohomologous, prob.algebra, prob.rep, prob.mu, prob.nu)
    except ValueError as exc:
        run.fail(str(exc))
        return
    run.results["cohomologous"] = xi is not None
    if xi is None:
        run.fail("mu and nu lie in different classes: no xi with delta_c(xi) = mu - nu")
        return
    run.results["xi"] = matrix_to_doc(xi.as_map())
    e1 = build_extension(prob.algebra, prob.rep, prob.mu)
    e2 = build_extension(prob.algebra, prob.rep, prob.nu)
    eq = equivalence_from_xi(e1, e2, xi)
    run.results["zeta"] = matrix_to_doc(eq.zeta)
    run.check("zeta", eq.report)
    if prob.xi is not None:
        run.check("zeta-given", equivalence_from_xi(e1, e2, prob.xi).report)


COMMANDS = {
    "verify": (cmd_verify, "check the Hom-Lts, compatibility and representation axioms"),
    "cohomology": (cmd_cohomology, "dimensions of Z^n, B^n, H^n with representatives"),
    "mc": (cmd_mc, "Maurer-Cartan equations (and twisted ones with a 'twist' section)"),
    "nijenhuis": (cmd_nijenhuis, "check N and emit the trivial deformation it generates"),
    "deform": (cmd_deform, "check a linear deformation, its class, and optional equivalence"),
    "extend": (cmd_extend, "build the abelian extension of mu and classify it"),
    "cohomologous": (cmd_cohomologous, "decide whether mu and nu are cohomologous and build zeta"),
}


# ---------------------------------------------------------------------------
# output


def _report_dict(run: Run, source: dict, with_timings: bool) -> dict:
    out = {
        "command": run.command,
        "status": run.status,
        "exit_code": run.exit_code,
        "tool": {"name": "homlts", "version": __version__},
        "input": source,
        "sections": [{"name": n, **r.to_dict()} for n, r in run.sections],
        "results": {k: v for k, v in run.results.items() if not k.startswith("_")},
        "notes": list(run.notes),
    }
    if run.error is not None:
        out["error"] = run.error
    if with_timings:
        out["timings"] = dict(run.timings)
    return out


def _fmt_vec(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_fmt_vec(x) for x in v) + "]"
    return str(v)


def _text(report: dict) -> str:
    lines = [f"homlts {report['tool']['version']} {report['command']}"]
    src = report["input"]
    lines.append(f"input: {src.get('fixture') or src.get('name') or 'document'} ({src['digest']})")
    if "error" in report:
        lines.append(f"error: {report['error']}")
    for sec in report["sections"]:
        for ax in sec["axioms"]:
            mark = "PASS" if ax["passed"] else "FAIL"
            extra = "" if ax["passed"] else f" ({ax['failing_tuples']} failing)"
            lines.append(f"[{sec['name']}] {mark} {ax['id']}{extra}")
        for f in sec["failures"]:
            w = "(" + ",".join(str(i) for i in f["witness"]) + ")"
            lines.append(f"[{sec['name']}]   {f['axiom']} witness {w}: lhs {_fmt_vec(f['lhs'])} rhs {_fmt_vec(f['rhs'])}")
    res = report["results"]
    if "cohomology" in res:
        h = res["cohomology"]
        n = h["degree"]
        lines.append(f"dim C^{n} = {h['dim_cochains']} ({n} x {h['cochain_basis']['dim']})")
        lines.append(f"dim Z^{n} = {h['dim_cocycles']}")
        conv = " (B^1 = 0 by convention)" if n == 1 else ""
        lines.append(f"dim B^{n} = {h['dim_coboundaries']}{conv}")
        lines.append(f"dim H^{n} = {h['dim_H']}")
        for k, rv in enumerate(h["representatives"]):
            lines.append(f"representative {k + 1}: " + " ".join(f"{i}:{v}" for i, v in rv))
    for key in sorted(res):
        if key == "cohomology":
            continue
        lines.append(f"{key}: {json.dumps(res[key], sort_keys=True)}")
    for note in report["notes"]:
        lines.append(f"note: {note}")
    if "timings" in report:
        lines.append("timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in sorted(report["timings"].items())))
    lines.append(f"status: {report['status'].upper()}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("document", nargs="?", help="path to a JSON problem document ('-' for stdin)")
    common.add_argument("--fixture", metavar="NAME", help="use a built-in document instead of a file")
    common.add_argument("--report", choices=("text", "json"), default="text")
    common.add_argument("--witness-limit", type=int, default=DEFAULT_WITNESS_LIMIT, metavar="K")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE, metavar="N", help="cochain degree cap")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings (not deterministic)")

    p = argparse.ArgumentParser(prog="homlts", description="Exact checks for compatible Hom-Lie triple systems.")
    p.add_argument("--version", action="version", version=f"homlts {__version__}")
    p.add_argument("--fixtures", action="store_true", help="list the built-in documents and exit")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_)
        if name == "cohomology":
            sp.add_argument("--degree", type=int, default=2, metavar="N")
    show = sub.add_parser("show", help="print a built-in document as JSON")
    show.add_argument("name")
    return p


def _load(args) -> tuple[dict, Problem]:
    if args.fixture and args.document:
        raise UsageError("give either a document path or --fixture, not both")
    if args.fixture:
        if args.fixture not in FIXTURES:
            raise UsageError(f"unknown fixture {args.fixture!r}; see --fixtures")
        doc = fixture(args.fixture)
        return {"fixture": args.fixture, "digest": digest(canonical_bytes(doc))}, parse_document(doc)
    if not args.document:
        raise UsageError("missing document path (or --fixture NAME)")
    try:
        data = sys.stdin.buffer.read() if args.document == "-" else Path(args.document).read_bytes()
    except OSError as exc:
        raise UsageError(f"{args.document}: {exc.strerror}") from None
    source = {"digest": digest(data)}
    raw, prob = load_document(data)
    if isinstance(raw.get("meta"), dict) and isinstance(raw["meta"].get("name"), str):
        source["name"] = raw["meta"]["name"]
    return source, prob


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(_text(report))


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    if args.fixtures:
        for name in FIXTURES:
            out.write(f"{name}\t{describe(name)}\n")
        return EXIT_PASS
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_ERROR
    if args.command == "show":
        if args.name not in FIXTURES:
            sys.stderr.write(f"homlts: unknown fixture {args.name!r}; see --fixtures\n")
            return EXIT_ERROR
        out.write(json.dumps(fixture(args.name), indent=2) + "\n")
        return EXIT_PASS
    if args.witness_limit < 1:
        parser.error("--witness-limit must be at least 1")
    if args.max_degree < 1:
        parser.error("--max-degree must be at least 1")

    run = Run(args.command, args.witness_limit)
    source = {"digest": ""}
    try:
        source, prob = _load(args)
        COMMANDS[args.command][0](run, prob, args)
    except (UsageError, DocumentError) as exc:
        run.error = str(exc)
    report = _report_dict(run, source, args.timings)
    _emit(report, args.report, out)
    if run.error is not None and args.report == "text":
        sys.stderr.write(f"homlts: {run.error}\n")
    return run.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
