"""
Configuration management for the error-correcting Gray code toolkit.
"""
import os
import yaml
from pathlib import Path
from typing import Dict, Any, List, Optional

SEED_ENV_VAR = 'ECGRAY_SEED'
SECTIONS = ('simulate', 'hist', 'expander')


class Config:
    """Configuration manager for codec experiments and histogram sketches."""

    def __init__(self, config_path: str = None):
        """
        Initialize configuration.

        Args:
            config_path: Path to custom config file. If None, uses default.
        """
        self.config_data = self._load_config(config_path)
        self._validate_config()

    def _load_config(self, config_path: str = None) -> Dict[str, Any]:
        """
        Load configuration from YAML file.

        Args:
            config_path: Path to config file

        Returns:
            Configuration dictionary
        """
        default_config_path = Path(__file__).parent / "default_config.yaml"
        with open(default_config_path, 'r') as f:
            config = yaml.safe_load(f)

        if config_path and os.path.exists(config_path):
            with open(config_path, 'r') as f:
                custom_config = yaml.safe_load(f) or {}
            for key, value in custom_config.items():
                if key in SECTIONS and isinstance(value, dict):
                    config.setdefault(key, {}).update(value)
                else:
                    config[key] = value

        env_seed = os.environ.get(SEED_ENV_VAR)
        if env_seed is not None:
            try:
                config['seed'] = int(env_seed)
            except ValueError:
                raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env_seed!r}")

        return config

    def _validate_config(self):
        """Validate configuration values."""
        if self.workers < 1 or self.workers > 64:
            raise ValueError("workers must be between 1 and 64")

        if self.chunk_size < 1:
            raise ValueError("chunk_size must be at least 1")

        if not 0 <= self.simulate_p < 0.5:
            raise ValueError("simulate.p must lie in [0, 1/2)")

        if self.simulate_trials < 1:
            raise ValueError("simulate.trials must be at least 1")

        if any(t < 0 for t in self.t_values):
            raise ValueError("simulate.t_values must be non-negative")

        if self.output_format not in ('csv', 'json'):
            raise ValueError("simulate.output_format must be 'csv' or 'json'")

        if not 0 <= self.hist_q <= 1 / 20:
            raise ValueError("hist.q must lie in [0, 1/20]")

        if self.hist_width_factor < 20:
            raise ValueError("hist.width_factor must be at least 20 (n/s <= 1/20)")

        if not 0 < self.expander_settings.get('alpha', 0.2) < 0.25:
            raise ValueError("expander.alpha must lie in (0, 1/4)")
        if self.expander_settings.get('decoder', 'sumproduct') not in ('sumproduct', 'bitflip'):
            raise ValueError("expander.decoder must be 'sumproduct' or 'bitflip'")

    def _section(self, name: str) -> Dict[str, Any]:
        return self.config_data.get(name) or {}

    @property
    def seed(self) -> int:
        """Get default experiment seed."""
        return self.config_data.get('seed', 0)

    @property
    def log_level(self) -> str:
        """Get logging level."""
        return self.config_data.get('log_level', 'INFO')

    @property
    def log_file(self) -> Optional[str]:
        """Get log file path (None disables file logging)."""
        return self.config_data.get('log_file')

    @property
    def workers(self) -> int:
        """Get number of Monte Carlo worker threads."""
        return self.config_data.get('workers', 1)

    @property
    def chunk_size(self) -> int:
        """Get trials per chunk."""
        return self.config_data.get('chunk_size', 1000)

    @property
    def show_progress(self) -> bool:
        """Get whether to display progress bars."""
        return self.config_data.get('show_progress', False)

    @property
    def simulate_p(self) -> float:
        return self._section('simulate').get('p', 0.05)

    @property
    def simulate_trials(self) -> int:
        return self._section('simulate').get('trials', 100000)

    @property
    def t_values(self) -> List[int]:
        return list(self._section('simulate').get('t_values', [1, 2, 4, 8]))

    @property
    def output_format(self) -> str:
        return self._section('simulate').get('output_format', 'csv')

    @property
    def simulate_output(self) -> Optional[str]:
        return self._section('simulate').get('output')

    @property
    def hist_q(self) -> float:
        return self._section('hist').get('q', 0.05)

    @property
    def hist_width_factor(self) -> int:
        return self._section('hist').get('width_factor', 20)

    @property
    def hist_ell(self) -> Optional[int]:
        return self._section('hist').get('ell')

    @property
    def hist_inner_matrix(self) -> Optional[str]:
        return self._section('hist').get('inner_matrix')

    @property
    def expander_settings(self) -> Dict[str, Any]:
        """Get expander graph settings as ExpanderConfig keyword arguments."""
        return dict(self._section('expander'))

    def __repr__(self) -> str:
        """String representation of config."""
        return f"Config(seed={self.seed}, workers={self.workers}, chunk_size={self.chunk_size})"
