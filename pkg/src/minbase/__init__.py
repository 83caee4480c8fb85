"""Permutation-group toolkit: minimal bases for partition actions, subgroup
lattices, intersection/base numbers, classical-group base certificates and
exact-rational probabilistic bounds."""

__version__ = "0.1.0"
