"""Twisted conjugacy and Reidemeister numbers in 2-step nilpotent groups."""

__version__ = "0.1.0"
