"""Random Schreier graphs: sampling, directed diameters and growth verifiers."""

__version__ = "0.1.0"
