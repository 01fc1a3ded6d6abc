"""Simulation and verification toolkit for windings and crossings of stable processes."""

__version__ = "0.1.0"
