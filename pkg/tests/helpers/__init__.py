"""Test helpers for nonsmooth-cert tests."""

from .matching_oracle import brute_force_max_matching, cancelling_edges, networkx_max_matching

__all__ = ["brute_force_max_matching", "cancelling_edges", "networkx_max_matching"]
