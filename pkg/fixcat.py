#!/usr/bin/env python3
"""
fixcat.py - Finite category workbench

Loads a workbench document (JSON or YAML), runs one of the command scripts
in commands/ against it and prints a report. Every command answers one
question about fixed points of endofunctors, nerves and their homology,
limits and slices, sites, or Čech cohomology of presheaves.

Features:
  - One command script per construction, discovered from commands/
  - Per-command constant overrides and named chains from fixcat.ini
  - Text reports, or one canonical JSON object with --json
  - Activity log in SQLite, browsable with `fixcat log`

Usage:
    python fixcat.py <command> --doc fixtures/hexagon.fixcat.json [--json]
                     [--functor rot] [--max-degree 3] [--config fixcat.ini]
    python fixcat.py chain <name> --doc ...
    python fixcat.py log [--since 2026-10-01] [--tag err]
    python fixcat.py log [<command>] --runs [--verdict fail]

Command script API:
    def run(doc, args) -> Outcome: ...
    Module-level docstring first line is the command's description.
    NEEDS_DOCUMENT = False for commands that run without a document.

fixcat.ini format:
    [command:cech]
    max_degree = 2

    [chain:homotopy]
    description = Nerve, homology and Lefschetz number
    steps = nerve, homology, lefschetz

    [logging]
    db_dir = .
    retain_days = 30

Exit codes: 0 every verdict passes, 1 a checked property fails,
2 the input is unusable.
"""

import argparse
import configparser
import importlib.util
import json
import sys
import traceback
from pathlib import Path
from typing import Optional

try:
    import pyperclip
    CLIPBOARD_AVAILABLE = True
except ImportError:
    CLIPBOARD_AVAILABLE = False

ROOT         = Path(__file__).resolve().parent
COMMANDS_DIR = ROOT / "commands"
INI_NAME     = "fixcat.ini"

sys.path.insert(0, str(ROOT))
sys.path.insert(0, str(COMMANDS_DIR))

from _render import render_error, render_error_json, render_json, render_text  # noqa: E402
from db_logger import RETAIN_DAYS, DBLogger  # noqa: E402
from log_browser import LogBrowserError  # noqa: E402
from log_browser import render as render_log  # noqa: E402
from workbench.document import load  # noqa: E402
from workbench.errors import (  # noqa: E402
    DocumentReferenceError,
    MissingEntity,
    ParseError,
    UnknownCommand,
    ValidationError,
    WorkbenchError,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
VERDICT_OF = {EXIT_PASS: "pass", EXIT_FAIL: "fail", EXIT_INPUT: "error"}
INPUT_ERRORS = (ParseError, DocumentReferenceError, MissingEntity, UnknownCommand)
BUILTINS = {"chain": "Run a named command chain from fixcat.ini",
            "log": "Browse the activity log (optionally filtered to one command)"}


# ─── INI loader ───────────────────────────────────────────────────────────────

def load_ini(doc_path: Optional[str] = None, explicit: Optional[str] = None) -> configparser.ConfigParser:
    cfg = configparser.ConfigParser()
    if explicit:
        if not Path(explicit).exists():
            raise ParseError(f"config file not found: {explicit}")
        cfg.read(explicit, encoding="utf-8-sig")
        return cfg
    candidates = [ROOT / INI_NAME]
    if doc_path:
        candidates.insert(0, Path(doc_path).resolve().parent / INI_NAME)
    for ini_path in candidates:
        if ini_path.exists():
            cfg.read(ini_path, encoding="utf-8-sig")
            break
    return cfg


def get_command_overrides(cfg, stem: str) -> dict:
    for section in (f"command:{stem}", f"command:{command_name(stem)}"):
        if cfg.has_section(section):
            return dict(cfg[section])
    return {}


def get_chains(cfg) -> list:
    chains = []
    for section in cfg.sections():
        if section.startswith("chain:"):
            name  = section[len("chain:"):]
            label = f"⛓ {name.replace('_', ' ').title()}"
            desc  = cfg.get(section, "description", fallback="")
            raw   = cfg.get(section, "steps", fallback="")
            steps = [s.strip() for s in raw.split(",") if s.strip()]
            chains.append({
                "name": name, "label": label, "description": desc,
                "steps": steps, "is_chain": True,
            })
    return chains


# ─── Command loader ───────────────────────────────────────────────────────────

def command_name(stem: str) -> str:
    return stem.replace("_", "-")


def coerce(value: str):
    for cast in (int, float):
        try:
            return cast(value)
        except (ValueError, TypeError):
            pass
    return value


def load_command(script_path: str, overrides: Optional[dict] = None):
    path = Path(script_path).resolve()
    if not path.exists():
        raise FileNotFoundError(f"Script not found: {path}")
    spec   = importlib.util.spec_from_file_location(f"fixcat_command_{path.stem}", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    if not hasattr(module, "run"):
        raise AttributeError("Command script must define a 'run(doc, args)' function")
    for key, value in (overrides or {}).items():
        setattr(module, key.upper(), coerce(value))
    description = (
        (module.__doc__ or "").strip()
        or (module.run.__doc__ or "").strip()
        or "No description."
    )
    short_desc = next(
        (ln.strip() for ln in description.splitlines() if ln.strip()), description
    )
    # "name.py — what it does" → "what it does"
    if " — " in short_desc:
        short_desc = short_desc.split(" — ", 1)[1]
    return module, str(path), short_desc


def scan_commands(folder, cfg) -> list:
    results = []
    p = Path(folder)
    if not p.is_dir():
        return results
    for pyfile in sorted(p.glob("*.py")):
        if pyfile.name.startswith("_"):
            continue
        overrides = get_command_overrides(cfg, pyfile.stem)
        try:
            module, path, desc = load_command(str(pyfile), overrides)
            results.append({
                "name": command_name(pyfile.stem),
                "label": command_name(pyfile.stem),
                "path": path, "description": desc,
                "module": module, "is_chain": False, "steps": [],
            })
        except Exception as exc:
            results.append({
                "name": command_name(pyfile.stem),
                "label": f"⚠ {command_name(pyfile.stem)}",
                "path": str(pyfile),
                "description": f"Load error: {exc}",
                "module": None, "is_chain": False, "steps": [],
            })
    for chain in get_chains(cfg):
        results.append(chain)
    return results


def find_command(commands: list, name: str) -> dict:
    for entry in commands:
        if entry["name"] == name and not entry["is_chain"]:
            if entry["module"] is None:
                raise UnknownCommand(f"command {name!r} failed to load: {entry['description']}")
            return entry
    known = sorted(e["name"] for e in commands if not e["is_chain"])
    raise UnknownCommand(f"unknown command {name!r}; known: {', '.join(known + sorted(BUILTINS))}",
                         (name,))


def find_chain(commands: list, name: Optional[str]) -> dict:
    chains = [e for e in commands if e["is_chain"]]
    for chain in chains:
        if chain["name"] == name:
            return chain
    raise UnknownCommand(
        f"unknown chain {name!r}; known: {', '.join(c['name'] for c in chains) or 'none'}", (name,))


# ─── Runner ───────────────────────────────────────────────────────────────────

class Session:
    """One CLI invocation: its config, commands, document and log."""

    def __init__(self, args, cfg, commands: list, logger: Optional[DBLogger] = None):
        self.args = args
        self.cfg = cfg
        self.commands = commands
        self.logger = logger
        self._doc = None

    def log(self, message: str, tag: str = "info", command: str = ""):
        if self.logger is not None:
            self.logger.log(message, tag, command)

    def record(self, name: str, code: int, detail: str = ""):
        if self.logger is not None:
            self.logger.record_run(name, VERDICT_OF[code], code, detail)

    def document(self):
        if self._doc is None:
            if not self.args.doc:
                raise MissingEntity("this command needs a document: pass --doc PATH")
            self._doc = load(self.args.doc)
        return self._doc

    def run_one(self, name: str) -> tuple:
        """(exit code, rendered output) for one command."""
        as_json = self.args.json
        self.log(f"{name} started" + (f" on {self.args.doc}" if self.args.doc else ""), "info", name)
        try:
            entry = find_command(self.commands, name)
            module = entry["module"]
            doc = self.document() if getattr(module, "NEEDS_DOCUMENT", True) else None
            result = module.run(doc, self.args)
        except WorkbenchError as exc:
            code = EXIT_INPUT if isinstance(exc, INPUT_ERRORS) or self._loading(exc) else EXIT_FAIL
            self.log(f"{exc.kind}: {exc}\n{traceback.format_exc()}", "err", name)
            self.record(name, code, exc.kind)
            return code, (render_error_json(name, exc) if as_json else render_error(name, exc))
        code = EXIT_PASS if result.passed else EXIT_FAIL
        for warning in result.warnings:
            self.log(warning, "warn", name)
        self.log(f"{name}: {result.verdict}", "ok" if result.passed else "warn", name)
        self.record(name, code, result.summary[0] if result.summary else "")
        document = self.args.doc or ""
        return code, (render_json(name, result, document) if as_json
                      else render_text(name, result, not self.args.brief))

    def _loading(self, exc: WorkbenchError) -> bool:
        # a ValidationError before the document is cached came from load()
        return isinstance(exc, ValidationError) and self._doc is None

    def run_chain(self, name: Optional[str]) -> tuple:
        chain = find_chain(self.commands, name)
        self.log(f"chain {chain['name']}: {', '.join(chain['steps'])}", "chain", "chain")
        codes, outputs = [], []
        for step in chain["steps"]:
            code, out = self.run_one(step)
            codes.append(code)
            outputs.append(out)
        code = max(codes, default=EXIT_PASS)
        if self.args.json:
            steps = [json.loads(o) for o in outputs]
            return code, json.dumps({"command": "chain", "chain": chain["name"], "verdict": VERDICT_OF[code],
                                     "steps": steps}, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        head = f"{chain['label']}" + (f" — {chain['description']}" if chain["description"] else "")
        return code, head + "\n\n" + "\n".join(outputs)


def list_commands(commands: list) -> str:
    lines = ["commands:"]
    for entry in commands:
        if not entry["is_chain"]:
            lines.append(f"  {entry['label']:<14} {entry['description']}")
    for name, desc in BUILTINS.items():
        lines.append(f"  {name:<14} {desc}")
    chains = [e for e in commands if e["is_chain"]]
    if chains:
        lines.append("chains:")
        lines += [f"  {c['label']:<14} {', '.join(c['steps'])}" for c in chains]
    return "\n".join(lines) + "\n"


def open_logger(args, cfg) -> Optional[DBLogger]:
    if args.no_log:
        return None
    db_dir = cfg.get("logging", "db_dir", fallback=str(ROOT))
    if not Path(db_dir).is_absolute():
        db_dir = str(ROOT / db_dir)
    retain = cfg.getint("logging", "retain_days", fallback=RETAIN_DAYS)
    return DBLogger(db_dir, document=args.doc or "", retain_days=retain)


# ─── Entry point ──────────────────────────────────────────────────────────────

def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog="fixcat",
        description="Finite category workbench: fixed points, nerves, sites and Čech cohomology."
    )
    parser.add_argument("command", nargs="?", default=None)
    parser.add_argument("target", nargs="?", default=None, help="chain name for `fixcat chain`")
    parser.add_argument("--doc",       "-d", default=None)
    parser.add_argument("--config",    "-c", default=None)
    parser.add_argument("--json",      action="store_true")
    parser.add_argument("--brief",     action="store_true", help="verdict and summary only")
    parser.add_argument("--no-log",    action="store_true")
    parser.add_argument("--copy",      action="store_true")

    limits = parser.add_argument_group("limits and modes")
    limits.add_argument("--seed",        type=int, default=None)
    limits.add_argument("--max-degree",  type=int, default=None)
    limits.add_argument("--degree",      type=int, default=None)
    limits.add_argument("--strict-membership", action="store_true")
    limits.add_argument("--suite",       default=None)
    limits.add_argument("--trials",      type=int, default=None)

    select = parser.add_argument_group("entity selection")
    for name in ("category", "functor", "functor2", "transformation", "object", "morphism",
                 "morphism2", "sigma", "left", "right", "site", "cover", "presheaf",
                 "presheaves", "sequence", "enrichment"):
        select.add_argument(f"--{name}", default=None)

    browse = parser.add_argument_group("log browsing")
    browse.add_argument("--session",  default=None)
    browse.add_argument("--tag",      default=None)
    browse.add_argument("--since",    default=None)
    browse.add_argument("--limit",    type=int, default=200)
    browse.add_argument("--sessions", action="store_true")
    browse.add_argument("--runs",     action="store_true", help="recorded runs and verdict counts")
    browse.add_argument("--verdict",  default=None, help="runs with this verdict: pass, fail, error")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        cfg = load_ini(args.doc, args.config)
    except (WorkbenchError, configparser.Error) as exc:
        print(f"⚠ config: {exc}", file=sys.stderr)
        return EXIT_INPUT
    commands = scan_commands(COMMANDS_DIR, cfg)
    if args.command is None:
        sys.stdout.write(list_commands(commands))
        return EXIT_PASS

    logger = open_logger(args, cfg)
    session = Session(args, cfg, commands, logger)
    try:
        if args.command == "log":
            if logger is None:
                print("⚠ log: the activity log is disabled (--no-log)", file=sys.stderr)
                return EXIT_INPUT
            try:
                code, output = EXIT_PASS, render_log(logger, args.session, args.tag, args.since,
                                                     args.target, args.limit, args.sessions,
                                                     runs=args.runs, verdict=args.verdict)
            except LogBrowserError as exc:
                code, output = EXIT_INPUT, f"⚠ log: {exc}\n"
        elif args.command == "chain":
            try:
                code, output = session.run_chain(args.target)
            except UnknownCommand as exc:
                code, output = EXIT_INPUT, render_error("chain", exc)
        else:
            code, output = session.run_one(args.command)
    except Exception:
        session.log(traceback.format_exc(), "err", args.command)
        raise
    finally:
        if logger is not None:
            logger.stop()

    sys.stdout.write(output)
    if args.copy:
        if CLIPBOARD_AVAILABLE:
            pyperclip.copy(output)
        else:
            print("⚠ --copy needs pyperclip (pip install pyperclip)", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
