"""Valenced Temperley-Lieb calculus and type-one U_q(sl_2) modules in exact arithmetic."""
from __future__ import annotations

__version__ = "0.1.0"
