"""Simulation of a three-level Lambda atom with a pseudo-Hermitian, PT-symmetric Hamiltonian."""

__version__ = "1.0.0"
