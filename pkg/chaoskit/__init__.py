"""chaoskit - complex Wiener-Ito chaos calculus over finite-dimensional Gaussian spaces."""

from pathlib import Path

__version__ = (Path(__file__).parent / "VERSION").read_text().strip()
