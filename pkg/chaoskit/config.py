"""Run configuration: defaults, an optional key = value file, and command-line flags.

Precedence is flags > config file > defaults.
"""

import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Optional

from .errors import ChaosKitError
from .hermite import DEFAULT_DEGREE_CAP
from .utils import MIN_MC_SAMPLES

logger = logging.getLogger(__name__)


class ConfigError(ChaosKitError):
    """Unreadable or malformed configuration (CLI exit code 2)."""


# Per-suite pass thresholds; --tol overrides all of them.
DEFAULT_TOLERANCES: Dict[str, float] = {
    'hermite': 1e-10,
    'isometry': 1e-10,
    'product': 1e-10,
    'stroock': 1e-10,
    'humeyer': 1e-12,
    'ou': 1e-12,
    'wick': 1e-10,
    'independence': 1e-10,
    'moments': 1e-9,
    'clark-ocone': 1e-10,
    'fmt': 1e-9,
    'estimator': 1e-8,
}

DEFAULTS = {
    'seed': None,
    'workers': 1,
    'out': None,
    'tol': None,
    'degree_cap': DEFAULT_DEGREE_CAP,
    'cases': None,
    'samples': 100000,
}

STOCHASTIC_COMMANDS = ('verify', 'fmt', 'ou')

CONFIG_KEYS = {
    'seed': int,
    'workers': int,
    'out': str,
    'tol': float,
    'degree_cap': int,
    'cases': int,
    'samples': int,
}


@dataclass
class RunConfig:
    command: str
    seed: Optional[int] = None
    workers: int = 1
    out: Optional[str] = None
    tol: Optional[float] = None
    degree_cap: int = DEFAULT_DEGREE_CAP
    cases: Optional[int] = None
    samples: int = 100000
    suite: Optional[str] = None
    extra: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.workers < 1:
            raise ConfigError(f"worker count must be >= 1, got {self.workers}")
        if self.seed is not None and not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.samples < MIN_MC_SAMPLES:
            raise ConfigError(f"samples must be >= {MIN_MC_SAMPLES}, got {self.samples}")
        if self.cases is not None and self.cases < 1:
            raise ConfigError(f"cases must be positive, got {self.cases}")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tol}")

    def tolerance(self, suite: str) -> float:
        if self.tol is not None:
            return self.tol
        return DEFAULT_TOLERANCES.get(suite, 1e-10)

    def echo(self) -> Dict[str, object]:
        """Deterministic view of the settings that affect results (no workers, no paths)."""
        data = asdict(self)
        data.pop('workers')
        data.pop('out')
        extra = data.pop('extra')
        data.update(sorted(extra.items()))
        return data


def load_config_file(path: str) -> Dict[str, object]:
    """Parse a `key = value` file; `#` starts a comment."""
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}")

    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split('=', 1))
        key = key.replace('-', '_')
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")
        try:
            values[key] = CONFIG_KEYS[key](value)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}")
    logger.debug("loaded %d settings from %s", len(values), path)
    return values


def resolve_config(args) -> RunConfig:
    """Merge argparse flags over the config file over DEFAULTS.

    Commands in STOCHASTIC_COMMANDS need a seed from the flags or the file.
    """
    merged = dict(DEFAULTS)
    config_path = getattr(args, 'config', None)
    if config_path:
        merged.update(load_config_file(config_path))
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if args.command in STOCHASTIC_COMMANDS and merged['seed'] is None:
        raise ConfigError(f"'{args.command}' needs a seed: pass --seed S or set seed in --config")
    return RunConfig(command=args.command, suite=getattr(args, 'suite', None), **merged)
