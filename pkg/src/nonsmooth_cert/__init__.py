"""Nonsmoothability certificates for locally linear Z_p-actions on spin 4-manifolds."""

__version__ = "0.1.0"
