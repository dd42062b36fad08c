"""Dihedral combinatorics and the totally nonnegative Grassmannian."""
