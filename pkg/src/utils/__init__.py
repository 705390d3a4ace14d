# Utility modules
from .colors import bold, green, red, set_color_enabled, status, verdict_label, yellow
from .logging_setup import setup_logging

__all__ = [
    'bold', 'green', 'red', 'set_color_enabled', 'status', 'verdict_label', 'yellow',
    'setup_logging',
]
