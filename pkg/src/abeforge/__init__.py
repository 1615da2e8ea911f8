"""Proof-replay kernel and finite-model workbench for implicative aBE algebras."""

__version__ = "0.1.0"
