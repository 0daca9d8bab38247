from pathlib import Path

import pytest

from ontocdm.cdm import model_from_json
from ontocdm.engine import TransformOptions, transform
from ontocdm.ontoclean import load_annotations
from ontocdm.owl_reader import read_json

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "ontocdm" / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

MINI_TAMBIS_JSON = FIXTURES / "mini_tambis.json"
MINI_TAMBIS_OWL = FIXTURES / "mini_tambis.owl"
MINI_TAMBIS_ANNOTATIONS = FIXTURES / "mini_tambis_annotations.json"
MINI_LEXICON = FIXTURES / "mini_lexicon.txt"


@pytest.fixture(scope="session")
def mini_tambis():
    return read_json(MINI_TAMBIS_JSON.read_bytes()).ontology


@pytest.fixture(scope="session")
def mini_tambis_model(mini_tambis):
    model, _ = transform(mini_tambis, TransformOptions(roots={"protein"}))
    return model


@pytest.fixture(scope="session")
def mini_tambis_annotations():
    return load_annotations(MINI_TAMBIS_ANNOTATIONS)


@pytest.fixture(scope="session")
def golden_model():
    return model_from_json((GOLDEN / "mini_tambis_model.json").read_bytes())


def run_cli(argv):
    """Invoke the CLI entry point in-process, returning the exit code."""
    from ontocdm.cli import main
    return main(argv)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
