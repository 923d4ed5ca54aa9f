"""Segre-MacPherson classes of Schubert, Richardson and positroid varieties."""

__version__ = "0.1.0"
