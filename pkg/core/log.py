"""
core/log.py
Tagged progress lines: `[SUITE] sound4: 88 posets`.
Goes to stderr through rich so stdout stays clean for JSON.
"""

import os

from rich.console import Console
from rich.markup import escape

QUIET = os.environ.get("ORDKIT_QUIET", "") not in ("", "0")

console = Console(stderr=True, highlight=False)


def log(tag: str, message: str):
    if QUIET:
        return
    console.print(f"[dim]{escape(f'[{tag}]')}[/dim] {escape(message)}")


def warn(tag: str, message: str):
    console.print(f"[yellow]{escape(f'[{tag}]')}[/yellow] {escape(message)}")
