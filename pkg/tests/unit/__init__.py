"""Unit tests for nonsmooth-cert."""
