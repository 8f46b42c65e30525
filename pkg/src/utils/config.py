"""
Subclosure - Configuration Utilities
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, Any] = {
    'qnf': {'growth_constant': 12},
    'closure': {'max_nfa_states': 2_000_000, 'naive_max_states': 500_000},
    'automata': {'max_subset_states': 1_000_000},
    'equivalence': {'max_product_pairs': 1_000_000},
    'inequiv': {
        'max_depth': 3,
        'budget_seconds': 30,
        'scan_short_words': True,
        'short_scan_max_len': 8,
        'parallel_tasks': 1,
    },
    'logging': {'level': 'WARNING', 'format': '%(levelname)s %(name)s: %(message)s'},
    'output': {'word_separator': '·', 'empty_word': 'ε'},
}


class Config:
    """Toolkit configuration manager"""

    def __init__(self, config_path: Optional[Path] = None):
        if config_path is None:
            config_path = Path(__file__).parent.parent.parent / "config.yaml"

        self.config_path = Path(config_path)
        self._config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from YAML file, fall back to the built-in defaults"""
        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            logger.debug("using default configuration (%s)", e)
            loaded = {}
        return _merge(DEFAULTS, loaded)

    def save(self):
        """Save current configuration to file"""
        with open(self.config_path, 'w', encoding='utf-8') as f:
            yaml.safe_dump(self._config, f, default_flow_style=False, allow_unicode=True)

    def get(self, key_path: str, default: Any = None) -> Any:
        """Get configuration value using dot notation"""
        keys = key_path.split('.')
        value = self._config
        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default
        return value

    def set(self, key_path: str, value: Any):
        """Set configuration value using dot notation"""
        keys = key_path.split('.')
        config = self._config
        for key in keys[:-1]:
            if key not in config:
                config[key] = {}
            config = config[key]
        config[keys[-1]] = value

    @property
    def growth_constant(self) -> int:
        return int(self.get('qnf.growth_constant', 12))

    @property
    def max_nfa_states(self) -> int:
        return int(self.get('closure.max_nfa_states', 2_000_000))

    @property
    def naive_max_states(self) -> int:
        return int(self.get('closure.naive_max_states', 500_000))

    @property
    def max_subset_states(self) -> int:
        return int(self.get('automata.max_subset_states', 1_000_000))

    @property
    def max_product_pairs(self) -> int:
        return int(self.get('equivalence.max_product_pairs', 1_000_000))

    @property
    def word_separator(self) -> str:
        return self.get('output.word_separator', '·')

    @property
    def empty_word(self) -> str:
        return self.get('output.empty_word', 'ε')


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = {k: (dict(v) if isinstance(v, dict) else v) for k, v in base.items()}
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


_config = None

def get_config(config_path: Optional[Path] = None) -> Config:
    """Get global configuration instance"""
    global _config
    if _config is None:
        _config = Config(config_path)
    return _config


def set_config(config: Optional[Config]):
    """Replace the global instance (the CLI does this for --config)"""
    global _config
    _config = config
