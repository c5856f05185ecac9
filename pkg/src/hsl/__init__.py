"""Exact verification toolkit for the higher spin Laplace operator and its operator calculus."""

__version__ = "0.1.0"
