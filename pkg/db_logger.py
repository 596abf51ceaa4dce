#!/usr/bin/env python3
"""
db_logger.py — SQLite activity log for fixcat.

Creates fixcat.db in the configured directory (default: next to fixcat.py).
Thread-safe via a dedicated writer thread and queue; stop() drains the
queue before returning, so a short CLI run loses nothing.

Schema:
    sessions(id, started_at, document)
    log_entries(id, session_id, timestamp, tag, message, command)
    runs(id, session_id, timestamp, command, document, verdict, exit_code, detail)

A run is one command invocation and its verdict: pass, fail, or error for
unusable input. Log entries carry the free-text trail around it.

Auto-purges entries and runs older than RETAIN_DAYS (default 30).
"""

import queue
import sqlite3
import threading
import uuid
from collections import defaultdict
from datetime import datetime, timedelta
from pathlib import Path
from typing import Optional

RETAIN_DAYS = 30
DB_NAME     = "fixcat.db"
TAGS        = ("info", "ok", "err", "warn", "chain", "preview")
VERDICTS    = ("pass", "fail", "error")

_INSERT_ENTRY = ("INSERT INTO log_entries(session_id, timestamp, tag, message, command)"
                 " VALUES(?,?,?,?,?)")
_INSERT_RUN   = ("INSERT INTO runs(session_id, timestamp, command, document, verdict, exit_code, detail)"
                 " VALUES(?,?,?,?,?,?,?)")


def _where(clauses: list) -> str:
    return ("WHERE " + " AND ".join(clauses)) if clauses else ""


class DBLogger:
    def __init__(self, db_dir: str, document: str = "", retain_days: int = RETAIN_DAYS):
        Path(db_dir).mkdir(parents=True, exist_ok=True)
        self._db_path  = str(Path(db_dir) / DB_NAME)
        self._queue    = queue.Queue()
        self._session  = str(uuid.uuid4())[:8]
        self._document = document
        self._retain   = retain_days

        self._init_db()
        self._start_session()
        self._purge_old()

        self._writer = threading.Thread(target=self._writer_loop, daemon=True)
        self._writer.start()

    # ── Setup ─────────────────────────────────────────────────────────────────

    def _connect(self) -> sqlite3.Connection:
        conn = sqlite3.connect(self._db_path, timeout=10)
        conn.execute("PRAGMA journal_mode=WAL")
        return conn

    def _init_db(self):
        with self._connect() as conn:
            conn.executescript("""
                CREATE TABLE IF NOT EXISTS sessions (
                    id          TEXT PRIMARY KEY,
                    started_at  TEXT NOT NULL,
                    document    TEXT
                );
                CREATE TABLE IF NOT EXISTS log_entries (
                    id          INTEGER PRIMARY KEY AUTOINCREMENT,
                    session_id  TEXT NOT NULL,
                    timestamp   TEXT NOT NULL,
                    tag         TEXT NOT NULL,
                    message     TEXT NOT NULL,
                    command     TEXT
                );
                CREATE TABLE IF NOT EXISTS runs (
                    id          INTEGER PRIMARY KEY AUTOINCREMENT,
                    session_id  TEXT NOT NULL,
                    timestamp   TEXT NOT NULL,
                    command     TEXT NOT NULL,
                    document    TEXT,
                    verdict     TEXT NOT NULL,
                    exit_code   INTEGER NOT NULL,
                    detail      TEXT
                );
                CREATE INDEX IF NOT EXISTS idx_log_ts
                    ON log_entries(timestamp);
                CREATE INDEX IF NOT EXISTS idx_log_session
                    ON log_entries(session_id);
                CREATE INDEX IF NOT EXISTS idx_log_tag
                    ON log_entries(tag);
                CREATE INDEX IF NOT EXISTS idx_runs_command
                    ON runs(command, verdict);
            """)

    def _start_session(self):
        with self._connect() as conn:
            conn.execute(
                "INSERT INTO sessions(id, started_at, document) VALUES(?,?,?)",
                (self._session, datetime.now().isoformat(), self._document)
            )

    def _purge_old(self):
        cutoff = (datetime.now() - timedelta(days=self._retain)).isoformat()
        with self._connect() as conn:
            conn.execute("DELETE FROM log_entries WHERE timestamp < ?", (cutoff,))
            conn.execute("DELETE FROM runs WHERE timestamp < ?", (cutoff,))
            conn.execute(
                "DELETE FROM sessions WHERE started_at < ? "
                "AND id NOT IN (SELECT DISTINCT session_id FROM log_entries) "
                "AND id NOT IN (SELECT DISTINCT session_id FROM runs)",
                (cutoff,)
            )

    # ── Writer thread ─────────────────────────────────────────────────────────

    def _writer_loop(self):
        conn = self._connect()
        while True:
            item = self._queue.get()
            if item is None:
                self._queue.task_done()
                break
            sql, params = item
            try:
                conn.execute(sql, params)
                conn.commit()
            except sqlite3.Error:
                pass
            finally:
                self._queue.task_done()
        conn.close()

    # ── Writing ───────────────────────────────────────────────────────────────

    def log(self, message: str, tag: str = "info", command: str = ""):
        if tag not in TAGS:
            tag = "info"
        self._queue.put((_INSERT_ENTRY,
                         (self._session, datetime.now().isoformat(), tag, message, command)))

    def record_run(self, command: str, verdict: str, exit_code: int, detail: str = "",
                   document: Optional[str] = None):
        """One finished command with its verdict; document defaults to the session's."""
        if verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {verdict!r}; known: {', '.join(VERDICTS)}")
        doc = self._document if document is None else document
        self._queue.put((_INSERT_RUN,
                         (self._session, datetime.now().isoformat(), command, doc,
                          verdict, int(exit_code), detail)))

    # ── Queries ───────────────────────────────────────────────────────────────

    def _rows(self, sql: str, params) -> list:
        with self._connect() as conn:
            conn.row_factory = sqlite3.Row
            return [dict(r) for r in conn.execute(sql, params).fetchall()]

    def get_entries(self, session_id: Optional[str] = None, tag: Optional[str] = None,
                    since: Optional[datetime] = None, command: Optional[str] = None,
                    limit: int = 500) -> list:
        """
        Fetch log entries, oldest first. Returns list of dicts:
            {id, session_id, timestamp, tag, message, command}
        """
        clauses, params = [], []
        for column, value in (("session_id", session_id), ("tag", tag), ("command", command)):
            if value:
                clauses.append(f"{column} = ?")
                params.append(value)
        if since is not None:
            clauses.append("timestamp >= ?")
            params.append(since.isoformat())
        rows = self._rows(
            "SELECT id, session_id, timestamp, tag, message, command "
            f"FROM log_entries {_where(clauses)} ORDER BY id DESC LIMIT ?",
            params + [limit])
        return list(reversed(rows))

    def get_runs(self, command: Optional[str] = None, verdict: Optional[str] = None,
                 document: Optional[str] = None, session_id: Optional[str] = None,
                 since: Optional[datetime] = None, limit: int = 500) -> list:
        """Recorded runs, oldest first, newest ``limit`` of them."""
        clauses, params = [], []
        for column, value in (("command", command), ("verdict", verdict),
                              ("document", document), ("session_id", session_id)):
            if value:
                clauses.append(f"{column} = ?")
                params.append(value)
        if since is not None:
            clauses.append("timestamp >= ?")
            params.append(since.isoformat())
        rows = self._rows(
            "SELECT id, session_id, timestamp, command, document, verdict, exit_code, detail "
            f"FROM runs {_where(clauses)} ORDER BY id DESC LIMIT ?",
            params + [limit])
        return list(reversed(rows))

    def verdict_tally(self, since: Optional[datetime] = None, document: Optional[str] = None) -> dict:
        """{command: {"pass": n, "fail": n, "error": n}} over the recorded runs."""
        clauses, params = [], []
        if since is not None:
            clauses.append("timestamp >= ?")
            params.append(since.isoformat())
        if document:
            clauses.append("document = ?")
            params.append(document)
        tally = defaultdict(lambda: dict.fromkeys(VERDICTS, 0))
        for row in self._rows(
                f"SELECT command, verdict, COUNT(*) AS n FROM runs {_where(clauses)} "
                "GROUP BY command, verdict", params):
            tally[row["command"]][row["verdict"]] = row["n"]
        return dict(sorted(tally.items()))

    def get_sessions(self, limit: int = 50) -> list:
        """Sessions, newest first, with how many runs each recorded and how many did not pass."""
        return self._rows(
            "SELECT s.id, s.started_at, s.document, COUNT(r.id) AS runs, "
            "COALESCE(SUM(r.verdict != 'pass'), 0) AS not_passed "
            "FROM sessions s LEFT JOIN runs r ON r.session_id = s.id "
            "GROUP BY s.id ORDER BY s.started_at DESC LIMIT ?",
            (limit,))

    @property
    def session_id(self) -> str:
        return self._session

    @property
    def db_path(self) -> str:
        return self._db_path

    def stop(self):
        self._queue.put(None)
        self._writer.join(timeout=5)
