"""This module exports configuration for the current system."""

import os


def boolean_env(environ_name):
    """Allow a few ways to configure boolean via ENV variables."""
    return bool(os.getenv(environ_name, '').upper() in ["1", "Y", "YES", "TRUE"])


LOGGING_CFG = os.getenv('LOGGING_CFG', 'simplicial_contextuality/logging.yaml')

VERTEX_CAP = int(os.getenv('SCX_VERTEX_CAP', 32))
NUM_WORKERS = int(os.getenv('SCX_NUM_WORKERS', 1))
DEFAULT_SEMIRING = os.getenv('SCX_DEFAULT_SEMIRING', 'rational').lower()
FLOAT_DIGITS = int(os.getenv('SCX_FLOAT_DIGITS', 6))
SHOW_FLOATS = boolean_env('SCX_SHOW_FLOATS')
