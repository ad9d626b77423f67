"""Exact floating-point factorization and interval propagation for x * y = z."""
