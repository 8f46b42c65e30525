import logging

import pytest
import yaml

from src.models.grammar import parse_word
from src.models.results import (Direction, InequivConfig, InequivReport, InequivStatus, Side, Verdict,
                                VerdictKind)
from src.utils.config import DEFAULTS, Config, get_config, set_config
from src.utils.log import configure_logging
from src.utils.resources import get_sample_grammar_path, list_sample_grammars


class TestConfig:
    def test_defaults_when_missing(self, tmp_path):
        config = Config(tmp_path / "absent.yaml")
        assert config.max_nfa_states == DEFAULTS["closure"]["max_nfa_states"]
        assert config.growth_constant == 12
        assert config.empty_word == "ε"
        assert config.get("inequiv.max_depth") == 3
        assert config.get("no.such.key", "fallback") == "fallback"

    def test_deep_merge(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text(yaml.safe_dump({"inequiv": {"max_depth": 5}, "output": {"word_separator": " "}}),
                        encoding="utf-8")
        config = Config(path)
        assert config.get("inequiv.max_depth") == 5
        assert config.get("inequiv.budget_seconds") == 30
        assert config.word_separator == " "
        assert DEFAULTS["inequiv"]["max_depth"] == 3

    def test_invalid_yaml_falls_back(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("inequiv: [unclosed", encoding="utf-8")
        assert Config(path).get("inequiv.max_depth") == 3

    def test_set_save_reload(self, tmp_path):
        path = tmp_path / "config.yaml"
        config = Config(path)
        config.set("closure.max_nfa_states", 1234)
        config.set("extra.nested.value", "x")
        config.save()
        reloaded = Config(path)
        assert reloaded.max_nfa_states == 1234
        assert reloaded.get("extra.nested.value") == "x"

    def test_shipped_file(self):
        config = Config()
        assert config.get("inequiv.short_scan_max_len") == 8

    def test_global_instance(self, tmp_path):
        first = get_config()
        assert get_config() is first
        replacement = Config(tmp_path / "absent.yaml")
        set_config(replacement)
        assert get_config() is replacement


class TestInequivConfig:
    def test_from_config(self, tmp_path):
        config = Config(tmp_path / "absent.yaml")
        cfg = InequivConfig.from_config(config, max_depth=6, budget_seconds=None)
        assert cfg.max_depth == 6
        assert cfg.budget_seconds == 30
        assert cfg.node_budget == config.max_product_pairs
        assert cfg.scan_short_words

    def test_override_scan(self, tmp_path):
        cfg = InequivConfig.from_config(Config(tmp_path / "absent.yaml"), scan_short_words=False)
        assert cfg.scan_short_words is False

    @pytest.mark.parametrize("field, value", [("max_depth", -1), ("budget_seconds", 0), ("node_budget", 0),
                                              ("short_scan_max_len", -2), ("parallel_tasks", 0)])
    def test_validation(self, field, value):
        with pytest.raises(ValueError):
            InequivConfig(**{field: value})

    def test_unlimited_budget(self):
        assert InequivConfig(budget_seconds=None).budget_seconds is None


class TestResultModels:
    def test_side_flipped(self):
        assert Side.LEFT_ONLY.flipped() is Side.RIGHT_ONLY
        assert Side.RIGHT_ONLY.flipped() is Side.LEFT_ONLY

    def test_enum_values(self):
        assert Direction("up") is Direction.UP
        assert Side("left-only") is Side.LEFT_ONLY

    def test_verdict_validation(self):
        with pytest.raises(ValueError):
            Verdict(VerdictKind.EQUAL, witness=("a",), side=Side.LEFT_ONLY)
        with pytest.raises(ValueError):
            Verdict(VerdictKind.SEPARATED, witness=("a",))
        assert Verdict.equal(3).is_equal
        assert Verdict.separated(["a"], Side.LEFT_ONLY).witness == ("a",)

    def test_maybe_equal_report(self):
        report = InequivReport(InequivStatus.MAYBE_EQUAL)
        assert not report.is_inequivalent
        data = report.to_dict()
        assert data["status"] == "maybe-equal"
        assert data["witness"] is None and data["side"] is None

    def test_empty_witness_report(self):
        report = InequivReport(InequivStatus.INEQUIVALENT, witness=(), side=Side.LEFT_ONLY, prefix=())
        assert report.to_dict()["witness"] == "ε"
        assert parse_word(report.to_dict()["witness"]) == ()


class TestLogging:
    def test_single_handler(self, tmp_path):
        config = Config(tmp_path / "absent.yaml")
        configure_logging(config)
        logger = configure_logging(config)
        assert len(logger.handlers) == 1
        assert logger.level == logging.WARNING
        assert not logger.propagate

    def test_verbose(self, tmp_path):
        assert configure_logging(Config(tmp_path / "absent.yaml"), verbose=True).level == logging.DEBUG

    def test_configured_level(self, tmp_path):
        config = Config(tmp_path / "absent.yaml")
        config.set("logging.level", "info")
        assert configure_logging(config).level == logging.INFO


class TestResources:
    def test_samples(self):
        names = list_sample_grammars()
        assert {"worked_example", "anbn", "anb2n", "astar_bstar", "mutation_base"} <= set(names)

    def test_suffix_optional(self):
        assert get_sample_grammar_path("anbn") == get_sample_grammar_path("anbn.cfg")

    def test_missing(self):
        with pytest.raises(FileNotFoundError):
            get_sample_grammar_path("no_such_grammar")
