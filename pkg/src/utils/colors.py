"""
Color Utilities - verdict and PASS/FAIL highlighting for report tables

Green marks passing rows and non-detections, red marks failures, yellow
marks detections and informational notes. Colors switch off when stdout is
not a terminal or when a command asks for plain output (--json).
"""

import sys

GREEN = '\033[92m'
YELLOW = '\033[93m'
RED = '\033[91m'
BOLD = '\033[1m'
RESET = '\033[0m'


def _stdout_is_terminal() -> bool:
    return hasattr(sys.stdout, 'isatty') and sys.stdout.isatty()


_COLOR_ENABLED = _stdout_is_terminal()


def set_color_enabled(enabled: bool) -> None:
    """Force colors on or off (the CLI turns them off for --json)."""
    global _COLOR_ENABLED
    _COLOR_ENABLED = enabled


def _paint(code: str, text: str) -> str:
    if not _COLOR_ENABLED:
        return text
    return f"{code}{text}{RESET}"


def green(text: str) -> str:
    return _paint(GREEN, text)


def yellow(text: str) -> str:
    return _paint(YELLOW, text)


def red(text: str) -> str:
    return _paint(RED, text)


def bold(text: str) -> str:
    return _paint(BOLD, text)


def status(passed: bool) -> str:
    """PASS in green or FAIL in red."""
    return green("PASS") if passed else red("FAIL")


def verdict_label(verdict: str) -> str:
    """Color a criterion verdict string."""
    if verdict == "detected":
        return yellow(verdict)
    if verdict == "boundary":
        return bold(verdict)
    return green(verdict)
