"""Exact invariants of negative definite plumbed 3-manifolds."""

__version__ = "0.1.0"
