"""Quantum matrices, Grassmannians, cocycle twists and their groupoid of maps."""
