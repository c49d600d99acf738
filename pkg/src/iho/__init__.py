"""Analytic and numerical solutions of the quantum inverted harmonic oscillator."""

__version__ = "0.1.0"
