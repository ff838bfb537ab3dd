"""Command-line entry points.

Exit codes: 0 ok, 2 input error, 3 state mismatch, 4 internal invariant breach.
The default detection config can also come from the SMELLVET_CONFIG env var.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections import Counter
from pathlib import Path

from smellvet.agreement import DisjointCandidateSets, agreement_by_smell
from smellvet.catalog import evaluate_evidence, export_catalog, items_for
from smellvet.codebook import frequency_table, load_codebook
from smellvet.detector import (
    DetectionConfig,
    SmellCandidate,
    detect,
    explain,
    load_candidates,
    save_candidates,
)
from smellvet.project import ProjectModel, dump_model_json, load_project
from smellvet.sessions import (
    InvalidVerdict,
    ReviewSession,
    create_session,
    load_session,
    record_answer,
    record_verdict,
    save_session,
    session_stats,
)
from smellvet.smells import DISPLAY_NAMES, Smell

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_STATE = 3
EXIT_INTERNAL = 4

CONFIG_ENV_VAR = "SMELLVET_CONFIG"


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _load_config(path: str | None) -> DetectionConfig:
    path = path or os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return DetectionConfig()
    try:
        return DetectionConfig.from_file(path)
    except FileNotFoundError:
        raise CliError(f"config file not found: {path}")
    except (ValueError, json.JSONDecodeError) as exc:
        raise CliError(f"bad config {path}: {exc}")


def _load_sessions(paths: list[str]) -> list[ReviewSession]:
    sessions = []
    for p in paths:
        try:
            sessions.append(load_session(p))
        except FileNotFoundError:
            raise CliError(f"session file not found: {p}")
        except (ValueError, KeyError) as exc:
            raise CliError(f"bad session file {p}: {exc}")
    return sessions


# -- scan ---------------------------------------------------------------------

def cmd_scan(args: argparse.Namespace, out: io.TextIOBase) -> int:
    cfg = _load_config(args.config)
    for p in args.paths:
        if not Path(p).exists():
            raise CliError(f"unreadable path: {p}")
    model = load_project(args.paths)
    candidates = detect(model, cfg)
    if args.model_out:
        dump_model_json(model, args.model_out)
    if args.out:
        save_candidates(candidates, args.out, [str(p) for p in args.paths], cfg)
    if args.format == "json":
        payload = {
            "schemaVersion": 1,
            "roots": [str(p) for p in args.paths],
            "config": cfg.as_dict(),
            "candidates": [c.as_dict() for c in candidates],
        }
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        counts = Counter(c.smell for c in candidates)
        out.write(f"{len(candidates)} candidate(s) across {len(model.units)} unit(s)\n")
        for smell in Smell:
            if counts[smell]:
                out.write(f"  {DISPLAY_NAMES[smell]:24s} {counts[smell]}\n")
        for c in candidates:
            out.write(
                f"{c.path}:{c.span.start}-{c.span.end} "
                f"{DISPLAY_NAMES[c.smell]}: {c.entity} [{explain(c)}]\n"
            )
    return EXIT_OK


# -- review -------------------------------------------------------------------

def _candidate_header(index: int, total: int, c: SmellCandidate) -> str:
    return (
        f"[{index}/{total}] {DISPLAY_NAMES[c.smell]} - {c.entity}\n"
        f"  at {c.path}:{c.span.start}-{c.span.end}\n"
        f"  rule: {explain(c)}\n"
    )


def _source_slice(path: str, start: int, end: int) -> str:
    try:
        lines = Path(path).read_text(encoding="utf-8", errors="replace").splitlines()
    except OSError:
        return "  (source unavailable)\n"
    out = []
    for ln in range(max(1, start), min(len(lines), end) + 1):
        out.append(f"  {ln:4d} | {lines[ln - 1]}")
    return "\n".join(out) + "\n"


def cmd_review(args: argparse.Namespace, out: io.TextIOBase, stdin: io.TextIOBase) -> int:
    try:
        candidates, roots, cfg = load_candidates(args.candidates)
    except FileNotFoundError:
        raise CliError(f"candidates file not found: {args.candidates}")
    except (ValueError, KeyError) as exc:
        raise CliError(f"bad candidates file: {exc}")
    if not candidates:
        out.write("nothing to review: candidate list is empty\n")
        return EXIT_OK
    model = load_project(roots) if roots else None

    session_path = Path(args.session)
    if session_path.exists():
        session = load_session(session_path)
        expected = [c.id for c in candidates]
        if session.candidate_set != expected:
            raise CliError(
                "session does not match the candidates file "
                f"({len(session.candidate_set)} vs {len(expected)} candidates)",
                EXIT_STATE,
            )
        out.write(f"resuming session {session.session_id}\n")
    else:
        session = create_session(
            [(c.id, c.smell) for c in candidates], args.reviewer
        )
        save_session(session, session_path)

    by_id = {c.id: c for c in candidates}
    pending = session.pending_candidates()
    total = len(session.candidate_set)
    if not pending:
        out.write("session already complete\n")
        return EXIT_OK

    def ask(prompt: str) -> str | None:
        out.write(prompt)
        out.flush()
        line = stdin.readline()
        if line == "":
            return None
        return line.strip()

    for cid in pending:
        c = by_id[cid]
        index = session.candidate_set.index(cid) + 1
        out.write("\n" + _candidate_header(index, total, c))
        out.write(_source_slice(c.path, c.span.start, c.span.end))
        for item in items_for(c.smell):
            out.write(f"\n  {item.id} [{item.mode}] {item.text}\n")
            if model is not None and model.has_entity(c.entity):
                ev = evaluate_evidence(model, c, item, cfg)
                if ev.finding not in ("humanOnly",):
                    out.write(f"       tool finding: {ev.finding}\n")
                for label, value in ev.facts:
                    out.write(f"       - {label}: {value}\n")
            answer = ask("       your answer [y/n/u/s]: ")
            if answer is None:
                out.write("\ninput closed; session saved\n")
                return EXIT_OK
            mapped = {"y": "yes", "n": "no", "u": "unsure", "s": "skip", "": "skip"}.get(
                answer.lower()
            )
            if mapped is None:
                mapped = "skip"
            record_answer(session, cid, item.id, mapped)
            save_session(session, session_path)
        decision_raw = ask("  verdict [a=accept / r=reject / s=skip / q=quit]: ")
        if decision_raw is None or decision_raw.lower() == "q":
            save_session(session, session_path)
            out.write("session saved; resume with the same --session path\n")
            return EXIT_OK
        decision = {"a": "accept", "r": "reject", "s": "skip"}.get(decision_raw.lower(), "skip")
        arguments: list[str] = []
        if decision in ("accept", "reject"):
            while True:
                arg = ask("  argument (empty line to finish): ")
                if arg is None or arg == "":
                    break
                arguments.append(arg)
        try:
            record_verdict(
                session, cid, decision, arguments, unjustified=not arguments and decision != "skip"
            )
        except InvalidVerdict as exc:
            raise CliError(str(exc), EXIT_INTERNAL)
        save_session(session, session_path)
        out.write(f"  recorded {decision} with {len(arguments)} argument(s)\n")
    out.write("\nreview complete\n")
    return EXIT_OK


# -- report -------------------------------------------------------------------

def cmd_report(args: argparse.Namespace, out: io.TextIOBase) -> int:
    sessions = _load_sessions(args.sessions)
    stats = session_stats(sessions)
    tables = []
    if args.codebook:
        try:
            book = load_codebook(args.codebook, sessions)
        except FileNotFoundError:
            raise CliError(f"codebook not found: {args.codebook}")
        smells_present: list[Smell] = []
        for s in sessions:
            for smell in s.candidate_smells.values():
                if smell not in smells_present:
                    smells_present.append(smell)
        for smell in sorted(smells_present, key=lambda s: s.value):
            table = frequency_table(book, sessions, smell)
            if table.accepting or table.rejecting:
                tables.append(table)
    if args.format == "json":
        payload = {
            "schemaVersion": 1,
            "stats": stats.as_dict(),
            "frequencyTables": [t.as_dict() for t in tables],
        }
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        writer = csv.writer(out)
        writer.writerow(["smell", "stance", "label", "frequency"])
        for table in tables:
            for label, f in table.accepting:
                writer.writerow([table.smell.value, "accepting", label, f])
            writer.writerow([table.smell.value, "accepting", "Total", table.accepting_total])
            for label, f in table.rejecting:
                writer.writerow([table.smell.value, "rejecting", label, f])
            writer.writerow([table.smell.value, "rejecting", "Total", table.rejecting_total])
    else:
        s = stats.as_dict()
        out.write(f"validations       {s['validations']}\n")
        out.write(f"arguments total   {s['argumentsTotal']}\n")
        out.write(f"discarded         {s['discarded']} ({s['discardRatePct']:.2f}% of remaining)\n")
        out.write(f"accepting share   {s['acceptSharePct']:.2f}%\n")
        out.write(f"rejecting share   {s['rejectSharePct']:.2f}%\n")
        if s["unjustifiedVerdicts"]:
            out.write(f"unjustified       {s['unjustifiedVerdicts']}\n")
        for table in tables:
            out.write(f"\n{DISPLAY_NAMES[table.smell]} heuristics\n")
            out.write("  accepting:\n")
            for label, f in table.accepting:
                out.write(f"    {f:3d}  {label}\n")
            out.write(f"    sum  {table.accepting_total}\n")
            out.write("  rejecting:\n")
            for label, f in table.rejecting:
                out.write(f"    {f:3d}  {label}\n")
            out.write(f"    sum  {table.rejecting_total}\n")
    return EXIT_OK


# -- agree --------------------------------------------------------------------

def cmd_agree(args: argparse.Namespace, out: io.TextIOBase) -> int:
    from smellvet.agreement import ratings_matrix

    sessions = _load_sessions(args.sessions)
    try:
        reports = agreement_by_smell(sessions)
        if args.matrix_out:
            rows, subjects = ratings_matrix(sessions)
            with open(args.matrix_out, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["subject", "accept", "reject"])
                for cid, row in zip(subjects, rows):
                    writer.writerow([cid, row[0], row[1]])
    except DisjointCandidateSets as exc:
        raise CliError(str(exc), EXIT_STATE)
    if args.format == "json":
        out.write(
            json.dumps(
                {"schemaVersion": 1, "reports": [r.as_dict() for r in reports]},
                indent=2,
                sort_keys=True,
            )
            + "\n"
        )
    elif args.format == "csv":
        writer = csv.writer(out)
        writer.writerow(["smell", "raters", "subjects", "kappa", "acceptShare", "rejectShare"])
        for r in reports:
            writer.writerow(
                [
                    r.smell,
                    r.raters,
                    r.subjects,
                    "" if r.kappa is None else f"{r.kappa:.9f}",
                    f"{r.category_shares.get('accept', 0.0):.6f}",
                    f"{r.category_shares.get('reject', 0.0):.6f}",
                ]
            )
    else:
        for r in reports:
            kappa = "undefined" if r.kappa is None else f"{r.kappa:.6f}"
            out.write(
                f"{r.smell:24s} raters {r.raters:3d}  subjects {r.subjects:3d}  kappa {kappa}\n"
            )
    return EXIT_OK


# -- export-catalog -------------------------------------------------------------

def cmd_export_catalog(args: argparse.Namespace, out: io.TextIOBase) -> int:
    text = export_catalog(args.out)
    if not args.out:
        out.write(text)
    return EXIT_OK


# -- serve ----------------------------------------------------------------------

def cmd_serve(args: argparse.Namespace, out: io.TextIOBase) -> int:
    import uvicorn

    from smellvet.server import create_app

    app = create_app(
        candidates_path=args.candidates,
        session_dir=args.session_dir,
        config_path=args.config,
        ui_dir=args.ui_dir,
    )
    if args.open:
        import webbrowser

        webbrowser.open(f"http://{args.host}:{args.port}/")
    out.write(f"serving on http://{args.host}:{args.port}\n")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


# -- wiring ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smellvet",
        description="Detect code smell candidates and guide their human validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_scan = sub.add_parser("scan", help="detect candidates under source roots")
    p_scan.add_argument("paths", nargs="+", help="files or directories with .java sources")
    p_scan.add_argument("--config", help="detection config JSON")
    p_scan.add_argument("--out", help="write candidates JSON here")
    p_scan.add_argument("--model-out", help="write the structural model dump here")
    p_scan.add_argument("--format", choices=["text", "json"], default="text")

    p_review = sub.add_parser("review", help="interactively validate candidates")
    p_review.add_argument("--candidates", required=True, help="candidates JSON from scan")
    p_review.add_argument("--session", required=True, help="session file (created or resumed)")
    p_review.add_argument("--reviewer", default="reviewer", help="reviewer identity")
    p_review.add_argument("--resume", action="store_true",
                          help="accepted for compatibility; resuming is automatic")
    p_review.add_argument("--config", help="detection config JSON")

    p_report = sub.add_parser("report", help="session statistics and heuristic frequencies")
    p_report.add_argument("sessions", nargs="+", help="session JSON files")
    p_report.add_argument("--codebook", help="codebook JSON for frequency tables")
    p_report.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p_agree = sub.add_parser("agree", help="inter-reviewer agreement (Fleiss kappa)")
    p_agree.add_argument("sessions", nargs="+", help="session JSON files (>= 2)")
    p_agree.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p_agree.add_argument("--matrix-out", help="write the subjects x categories count matrix CSV")

    p_cat = sub.add_parser("export-catalog", help="emit the validation item catalog")
    p_cat.add_argument("--out", help="write catalog JSON here instead of stdout")

    p_serve = sub.add_parser("serve", help="serve the review HTTP API and UI")
    p_serve.add_argument("--candidates", required=True)
    p_serve.add_argument("--session-dir", required=True)
    p_serve.add_argument("--config", help="detection config JSON")
    p_serve.add_argument("--ui-dir", help="built UI bundle to serve at /")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.add_argument("--open", action="store_true", help="open a browser tab")

    return parser


def main(argv: list[str] | None = None, stdout=None, stderr=None, stdin=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    inp = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse errors exit with 2 already
        return int(exc.code or 0) and EXIT_INPUT
    try:
        if args.command == "scan":
            return cmd_scan(args, out)
        if args.command == "review":
            return cmd_review(args, out, inp)
        if args.command == "report":
            return cmd_report(args, out)
        if args.command == "agree":
            return cmd_agree(args, out)
        if args.command == "export-catalog":
            return cmd_export_catalog(args, out)
        if args.command == "serve":
            return cmd_serve(args, out)
        raise CliError(f"unknown command {args.command!r}")
    except CliError as exc:
        err.write(f"error: {exc}\n")
        return exc.code
    except FileNotFoundError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except Exception as exc:  # invariant breach: anything unexpected
        err.write(f"internal error: {exc.__class__.__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
