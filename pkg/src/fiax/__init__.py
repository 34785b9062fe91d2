"""Exact verification of bilax-unital 2-categories of projective bimodules."""

__version__ = "0.1.0"
