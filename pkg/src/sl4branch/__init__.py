"""Branching multiplicities of SL_4 irreducibles restricted to finite subgroups."""
__version__ = "0.1.0"
