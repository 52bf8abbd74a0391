"""Operadic suspension of coalgebras over the Barratt-Eccles operad, with exact integer checks."""

__version__ = "0.1.0"
