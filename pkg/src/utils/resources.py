"""
Subclosure - Bundled Grammars
Sample grammars shipped in grammars/ next to the package
"""

from pathlib import Path
from typing import List

GRAMMAR_DIR = Path(__file__).resolve().parent.parent.parent / 'grammars'

# prefix naming a bundled grammar on the command line, e.g. sample:anbn
SAMPLE_PREFIX = 'sample:'


def get_sample_grammar_path(name: str) -> Path:
    """Path of a bundled grammar; name may omit the .cfg suffix"""
    path = GRAMMAR_DIR / name
    if not path.suffix:
        path = path.with_suffix('.cfg')
    if not path.exists():
        raise FileNotFoundError(f"no bundled grammar {name!r} (available: {', '.join(list_sample_grammars())})")
    return path


def list_sample_grammars() -> List[str]:
    return sorted(p.stem for p in GRAMMAR_DIR.glob('*.cfg'))
