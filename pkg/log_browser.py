"""
log_browser.py — text browser for the fixcat activity log.

Prints log entries from the SQLite DB with session, tag, command and date
filters, or with --runs the recorded command runs and their verdict counts.
Dates for --since go through python-dateutil, so "2026-10-01",
"2026-10-01 14:00" and "Oct 3 2026" are all accepted.
"""

from datetime import datetime
from typing import Optional

try:
    from dateutil.parser import parse as dateutil_parse
    DATEUTIL_AVAILABLE = True
except ImportError:
    DATEUTIL_AVAILABLE = False

TAG_MARKS = {
    "ok":      "✓",
    "err":     "✗",
    "warn":    "⚠",
    "info":    "·",
    "chain":   "⛓",
    "preview": "»",
}


class LogBrowserError(ValueError):
    pass


def parse_since(text: Optional[str]) -> Optional[datetime]:
    if not text:
        return None
    if DATEUTIL_AVAILABLE:
        try:
            return dateutil_parse(text)
        except (ValueError, OverflowError) as exc:
            raise LogBrowserError(f"cannot read date {text!r}: {exc}") from exc
    try:
        return datetime.fromisoformat(text)
    except ValueError as exc:
        raise LogBrowserError(f"cannot read date {text!r} (install python-dateutil "
                              f"for free-form dates)") from exc


def format_entry(entry: dict) -> str:
    ts = entry["timestamp"][:19].replace("T", " ")
    mark = TAG_MARKS.get(entry["tag"], "·")
    command = f"[{entry['command']}] " if entry.get("command") else ""
    first, *rest = entry["message"].splitlines() or [""]
    lines = [f"{ts}  {entry['session_id']}  {mark} {command}{first}"]
    lines += [f"{'':>30}{line}" for line in rest]
    return "\n".join(lines)


VERDICT_MARKS = {
    "pass":  "✓",
    "fail":  "✗",
    "error": "⚠",
}


def format_run(run: dict) -> str:
    ts = run["timestamp"][:19].replace("T", " ")
    mark = VERDICT_MARKS.get(run["verdict"], "·")
    detail = f"  {run['detail']}" if run.get("detail") else ""
    document = f"  ({run['document']})" if run.get("document") else ""
    return f"{ts}  {run['session_id']}  {mark} {run['command']:<14} exit {run['exit_code']}{detail}{document}"


def format_tally(tally: dict) -> str:
    if not tally:
        return ""
    width = max(len(c) for c in tally)
    lines = [f"{command:<{width}}  " + "  ".join(f"{counts[v]} {v}" for v in VERDICT_MARKS)
             for command, counts in tally.items()]
    return "\n".join(lines) + "\n"


def format_sessions(sessions: list) -> str:
    if not sessions:
        return "no sessions recorded\n"
    return "".join(f"{s['id']}  {s['started_at'][:19].replace('T', ' ')}  "
                   f"{s['runs']} runs, {s['not_passed']} not passed  {s['document'] or '-'}\n"
                   for s in sessions)


def render(db, session: Optional[str] = None, tag: Optional[str] = None,
           since: Optional[str] = None, command: Optional[str] = None,
           limit: int = 200, sessions: bool = False, runs: bool = False,
           verdict: Optional[str] = None) -> str:
    """The browser's whole output as one string."""
    if sessions:
        return format_sessions(db.get_sessions(limit))
    if runs or verdict is not None:
        return render_runs(db, session, since, command, limit, verdict)
    if tag is not None and tag not in TAG_MARKS:
        raise LogBrowserError(f"unknown tag {tag!r}; known: {', '.join(TAG_MARKS)}")
    entries = db.get_entries(session_id=session, tag=tag, since=parse_since(since),
                             command=command, limit=limit)
    if not entries:
        return "no matching log entries\n"
    return "\n".join(format_entry(e) for e in entries) + "\n"


def render_runs(db, session: Optional[str] = None, since: Optional[str] = None,
                command: Optional[str] = None, limit: int = 200,
                verdict: Optional[str] = None) -> str:
    """Recorded runs, then per-command verdict counts over the same period."""
    if verdict is not None and verdict not in VERDICT_MARKS:
        raise LogBrowserError(f"unknown verdict {verdict!r}; known: {', '.join(VERDICT_MARKS)}")
    when = parse_since(since)
    found = db.get_runs(command=command, verdict=verdict, session_id=session, since=when, limit=limit)
    if not found:
        return "no matching runs\n"
    tally = db.verdict_tally(since=when)
    if command:
        tally = {c: n for c, n in tally.items() if c == command}
    return "\n".join(format_run(r) for r in found) + "\n\n" + format_tally(tally)
