"""Exact tools for deciding exceptionality of quotient singularities."""
