"""Flag triangulations of S^3 with isolated squares and their combinatorial verifiers."""
__version__ = "0.1.0"
