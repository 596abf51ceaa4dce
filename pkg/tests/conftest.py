"""Shared fixtures: fixture documents, catalog categories and a CLI runner."""

from pathlib import Path

import pytest

import fixcat
from workbench import catalog
from workbench.document import load

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.fixcat.json")


@pytest.fixture
def doc_of():
    return lambda name: load(fixture_path(name))


@pytest.fixture
def arrow():
    return catalog.walking_arrow()


@pytest.fixture
def hexagon():
    return catalog.hexagon_poset()


@pytest.fixture
def lattice_ab():
    return catalog.subset_lattice("ab")


@pytest.fixture
def pseudocircle():
    return catalog.pseudocircle()


@pytest.fixture
def contractible():
    return catalog.contractible_site()


@pytest.fixture
def cli(capsys):
    """Run fixcat.main with logging off; returns (exit code, stdout)."""
    def run(*argv):
        code = fixcat.main([*argv, "--no-log"])
        return code, capsys.readouterr().out
    return run
