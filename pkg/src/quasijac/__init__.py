"""Exact arithmetic for quasi-Jacobi forms, operators and fermionic traces."""
