"""Exact q-Bernoulli / q-Euler / Bernstein identity auditing."""

__version__ = "0.1.0"
