"""Twisted cohomology and Weitzenboeck-operator checks for SL(2,C) holonomies."""

__version__ = "0.1.0"
