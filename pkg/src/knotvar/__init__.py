"""Exact point counts and motives of AGL1/AGL2 representation varieties of torus knots."""

from __future__ import annotations

__version__ = "0.1.0"
