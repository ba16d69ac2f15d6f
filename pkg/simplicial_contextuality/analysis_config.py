"""Handle the analysis configuration file."""

import logging
from pathlib import Path
from typing import Any, MutableMapping, Optional, Union

import toml

from simplicial_contextuality.exceptions import ModelFileError
from simplicial_contextuality.local_config import NUM_WORKERS, SHOW_FLOATS, VERTEX_CAP
from simplicial_contextuality.semiring import SEMIRINGS

log = logging.getLogger(__name__)

FORMATS = ('table', 'json')
LAYOUTS = ('auto', 'cone', 'decalage')


class AnalysisConfig:
    """Analysis settings from the `[analysis]` table of a toml file, defaulting to the environment settings.

    A semiring given here (or on the command line) overrides the one declared in model files; command line
    flags take precedence over these values.
    """

    def __init__(self, config: Optional[Union[str, Path]] = None):
        """Create a new AnalysisConfig object."""
        self._config_file = config
        self.config: MutableMapping[str, Any] = {'analysis': {}}
        if config:
            try:
                self.config = toml.load(config)
            except toml.TomlDecodeError as err:
                raise ModelFileError(f"{config}: {err}")
            log.debug('using analysis settings in %s', config)
        analysis = self.config.get('analysis', {})

        self.semiring = analysis.get('semiring')
        self.format = analysis.get('format', 'table')
        self.cap = analysis.get('cap', VERTEX_CAP)
        self.float = analysis.get('float', SHOW_FLOATS)
        self.num_workers = analysis.get('num_workers', NUM_WORKERS)
        self.layout = analysis.get('layout', 'auto')
        try:
            self.validate()
        except AssertionError as err:
            raise ModelFileError(f"{config}: invalid [analysis] settings: {err}")

    def validate(self):
        """Check the configuration is valid."""
        assert self.semiring is None or self.semiring in SEMIRINGS, f"semiring {self.semiring!r}"
        assert self.format in FORMATS, f"format {self.format!r}"
        assert type(self.cap) is int and self.cap > 0, f"cap {self.cap!r}"
        assert type(self.num_workers) is int and self.num_workers > 0, f"num_workers {self.num_workers!r}"
        assert type(self.float) is bool, f"float {self.float!r}"
        assert self.layout in LAYOUTS, f"layout {self.layout!r}"
