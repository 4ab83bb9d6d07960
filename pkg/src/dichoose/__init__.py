"""Dichromatic number, dichoosability and desk-scale checks of the list
version of the Erdos--Neumann-Lara conjecture."""

__version__ = "0.1.0"
