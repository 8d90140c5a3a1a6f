"""Wreath products C_q wr C_r and strongly real Beauville quotients."""

__version__ = "0.1.0"
