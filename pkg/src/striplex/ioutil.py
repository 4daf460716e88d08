"""Deterministic text output helpers shared by the exporters and the CLI."""

from __future__ import annotations

from pathlib import Path

# fixed precision so exports are usable as golden files
SIGNIFICANT_DIGITS = 17


def fmt_real(v: float) -> str:
    """Format a real with 17 significant digits (exact float round trip)."""
    return format(float(v), f".{SIGNIFICANT_DIGITS}g")


def write_text(path: str | Path, text: str) -> None:
    """Write text with '\\n' newlines regardless of platform."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
