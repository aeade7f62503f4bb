from pathlib import Path

from click.testing import CliRunner
import numpy as np
import pytest

from table_reward.reference import TABLE, TBODY, TD, THEAD, TR
from table_reward.table import TableNode, TableTree

FILES = Path(__file__).parent / 'files'


@pytest.fixture
def files():
    """Provides the directory of test input files."""
    return FILES


@pytest.fixture
def cli():
    """Provides a CliRunner that keeps stdout and stderr apart."""
    return CliRunner(mix_stderr=False)


@pytest.fixture
def rng():
    """Provides a seeded numpy random generator."""
    return np.random.default_rng(20240517)


@pytest.fixture
def simple_tree():
    """Provides a two by two table with one header row."""
    header = TableNode(TR, children=[TableNode(TD, text='Name'), TableNode(TD, text='Score')])
    body = TableNode(TR, children=[TableNode(TD, text='Ann'), TableNode(TD, text='3')])
    return TableTree(
        TableNode(TABLE, children=[TableNode(THEAD, children=[header]), TableNode(TBODY, children=[body])])
    )


@pytest.fixture
def spanned_tree():
    """Provides a table whose first cell spans two columns."""
    first = TableNode(TR, children=[TableNode(TD, text='Total', colspan=2)])
    second = TableNode(TR, children=[TableNode(TD, text='a'), TableNode(TD, text='b')])
    return TableTree(TableNode(TABLE, children=[first, second]))


@pytest.fixture
def config_file(tmp_path):
    """Provides a valid config file in a temp directory."""
    config = tmp_path / 'config.yaml'
    config.write_text((FILES / 'config.yaml').read_text())
    return config


@pytest.fixture
def invalid_config_file(tmp_path):
    """Provides an invalid config file in a temp directory."""
    config = tmp_path / 'invalid.yaml'
    config.write_text((FILES / 'invalid.yaml').read_text())
    return config
