import pytest

from src.models.grammar import Grammar
from src.utils.config import set_config
from src.utils.resources import get_sample_grammar_path
from tests.helper import grammar, random_corpus


@pytest.fixture(autouse=True)
def default_config():
    """Every test starts from the bundled config.yaml; --config in CLI tests must not leak"""
    set_config(None)
    yield
    set_config(None)


@pytest.fixture
def worked_example() -> Grammar:
    return Grammar.load(get_sample_grammar_path("worked_example"))


@pytest.fixture
def anbn() -> Grammar:
    return Grammar.load(get_sample_grammar_path("anbn"))


@pytest.fixture
def anb2n() -> Grammar:
    return Grammar.load(get_sample_grammar_path("anb2n"))


@pytest.fixture
def astar_bstar() -> Grammar:
    return Grammar.load(get_sample_grammar_path("astar_bstar"))


@pytest.fixture
def anbn_plus() -> Grammar:
    return grammar("""\
        start: S
        terminals: a b
        S -> a S b | a b
        """)


@pytest.fixture(scope="session")
def corpus():
    """The hundred-grammar random corpus"""
    return random_corpus(100)


@pytest.fixture(scope="session")
def small_corpus():
    return random_corpus(20, first_seed=1000)
