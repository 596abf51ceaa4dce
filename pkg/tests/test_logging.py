from datetime import datetime

import pytest

from db_logger import DB_NAME, DBLogger
from log_browser import LogBrowserError, format_entry, parse_since, render


@pytest.fixture
def logger(tmp_path):
    db = DBLogger(str(tmp_path), document="fixtures/hexagon.fixcat.json")
    yield db
    db.stop()


def flushed(db: DBLogger) -> DBLogger:
    """Stop the writer so every queued entry is on disk; reads still work."""
    db.stop()
    return db


def test_entries_are_written_in_order(logger, tmp_path):
    logger.log("nerve started", "info", "nerve")
    logger.log("nerve: pass", "ok", "nerve")
    logger.log("cech: NoPullback", "err", "cech")
    entries = flushed(logger).get_entries()
    assert [e["message"] for e in entries] == ["nerve started", "nerve: pass", "cech: NoPullback"]
    assert all(e["session_id"] == logger.session_id for e in entries)
    assert (tmp_path / DB_NAME).exists()


def test_filters(logger):
    logger.log("a", "ok", "nerve")
    logger.log("b", "err", "cech")
    logger.log("c", "ok", "cech")
    flushed(logger)
    assert [e["message"] for e in logger.get_entries(tag="ok")] == ["a", "c"]
    assert [e["message"] for e in logger.get_entries(command="cech")] == ["b", "c"]
    assert [e["message"] for e in logger.get_entries(limit=1)] == ["c"]
    assert logger.get_entries(since=datetime(2999, 1, 1)) == []


def test_unknown_tags_fall_back_to_info(logger):
    logger.log("odd", "shout")
    assert flushed(logger).get_entries()[0]["tag"] == "info"


def test_sessions_are_recorded(tmp_path):
    first = DBLogger(str(tmp_path), document="one.json")
    first.stop()
    second = DBLogger(str(tmp_path), document="two.json")
    sessions = second.get_sessions()
    second.stop()
    assert {s["document"] for s in sessions} == {"one.json", "two.json"}
    assert first.session_id != second.session_id


def test_render_entries_and_sessions(logger):
    logger.log("L(flip) = 2", "ok", "lefschetz")
    flushed(logger)
    text = render(logger, command="lefschetz")
    assert "✓ [lefschetz] L(flip) = 2" in text
    assert logger.session_id in render(logger, sessions=True)
    assert render(logger, tag="err") == "no matching log entries\n"


def test_render_rejects_unknown_tag(logger):
    with pytest.raises(LogBrowserError):
        render(logger, tag="loud")


def test_parse_since():
    assert parse_since(None) is None
    assert parse_since("2026-10-01") == datetime(2026, 10, 1)
    assert parse_since("Oct 3 2026 14:00") == datetime(2026, 10, 3, 14, 0)
    with pytest.raises(LogBrowserError):
        parse_since("not a date at all")


def test_multiline_messages_are_indented():
    entry = {"timestamp": "2026-10-19T10:00:00.123", "session_id": "abcd1234", "tag": "err",
             "command": "cech", "message": "NoPullback\ntraceback line"}
    first, second = format_entry(entry).splitlines()
    assert first == "2026-10-19 10:00:00  abcd1234  ✗ [cech] NoPullback"
    assert second.strip() == "traceback line"


# ─── Runs ─────────────────────────────────────────────────────────────────────

def record_three(db: DBLogger) -> DBLogger:
    db.record_run("lefschetz", "pass", 0, "L(flip) = 2")
    db.record_run("cech", "error", 2, "MissingEntity")
    db.record_run("lefschetz", "fail", 1, document="other.fixcat.json")
    return flushed(db)


def test_runs_carry_verdict_and_document(logger):
    runs = record_three(logger).get_runs()
    assert [(r["command"], r["verdict"], r["exit_code"]) for r in runs] == [
        ("lefschetz", "pass", 0), ("cech", "error", 2), ("lefschetz", "fail", 1)]
    assert [r["document"] for r in runs] == ["fixtures/hexagon.fixcat.json"] * 2 + ["other.fixcat.json"]
    assert [r["command"] for r in logger.get_runs(verdict="error")] == ["cech"]
    assert [r["verdict"] for r in logger.get_runs(document="other.fixcat.json")] == ["fail"]
    assert [r["detail"] for r in logger.get_runs(command="lefschetz", limit=1)] == [""]


def test_verdict_tally(logger):
    record_three(logger)
    assert logger.verdict_tally() == {"cech": {"pass": 0, "fail": 0, "error": 1},
                                      "lefschetz": {"pass": 1, "fail": 1, "error": 0}}
    assert logger.verdict_tally(document="other.fixcat.json") == {
        "lefschetz": {"pass": 0, "fail": 1, "error": 0}}
    assert logger.verdict_tally(since=datetime(2999, 1, 1)) == {}


def test_sessions_count_their_runs(logger):
    record_three(logger)
    session, = logger.get_sessions()
    assert (session["runs"], session["not_passed"]) == (3, 2)
    assert "3 runs, 2 not passed" in render(logger, sessions=True)


def test_unknown_verdict_is_refused(logger):
    with pytest.raises(ValueError):
        logger.record_run("cech", "maybe", 0)


def test_render_runs(logger):
    assert render(logger, runs=True) == "no matching runs\n"
    record_three(logger)
    text = render(logger, runs=True, command="lefschetz")
    assert "✓ lefschetz" in text and "exit 0  L(flip) = 2  (fixtures/hexagon.fixcat.json)" in text
    assert "✗ lefschetz" in text
    assert text.endswith("lefschetz  1 pass  1 fail  0 error\n")
    assert "cech" not in text
    errors = render(logger, verdict="error")
    assert "⚠ cech" in errors and "exit 2  MissingEntity" in errors
    with pytest.raises(LogBrowserError):
        render(logger, verdict="loud")
