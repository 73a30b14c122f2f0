"""Finite groupoids, their limits, families and equivalences."""
